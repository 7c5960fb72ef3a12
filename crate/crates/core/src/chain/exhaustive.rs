//! Plain depth-first enumeration of limit series on a chain, without the
//! node DP. Exponential in the number of bridges; meant for cross-checking
//! [`super::search`] on small instances.

use itertools::Itertools;

use super::{compatible, ChainError, ChainSpec, Criterion, LimitWitness, Mode};
use crate::bn::{eh_exists, GrdParams, VanishingSeq};
use crate::elliptic::{feasible_necessary, feasible_sufficient, EllipticAspect};

struct Ctx<'a> {
    seqs: Vec<VanishingSeq>,
    chain: &'a ChainSpec,
    params: GrdParams,
    mode: Mode,
    criterion: Criterion,
}

impl Ctx<'_> {
    fn bridge_ok(&self, a: &VanishingSeq, b: &VanishingSeq, k: u32) -> bool {
        let (t, d) = (self.chain.torsion(), self.params.d);
        match self.criterion {
            Criterion::Sufficient => feasible_sufficient(a, b, k, t, d),
            Criterion::Necessary => feasible_necessary(a, b, k, t, d),
        }
    }

    // picks (R_i, L_{i+1}, ...) in order; classes chosen after all sequences
    fn extend(&self, node: usize, lefts: &mut Vec<usize>, rights: &mut Vec<usize>) -> Option<Vec<u32>> {
        let last = self.chain.bridges();
        let (_, g2) = self.chain.tail_genera();
        let d = self.params.d;
        let left = &self.seqs[lefts[node]];
        for (ri, right) in self.seqs.iter().enumerate() {
            if !compatible(left, right, d, self.mode) {
                continue;
            }
            rights.push(ri);
            if node == last {
                if eh_exists(g2, self.params.r, d, &right.ramification()).unwrap_or(false) {
                    if let Some(ks) = self.classes(lefts, rights) {
                        return Some(ks);
                    }
                }
            } else {
                for (ui, next) in self.seqs.iter().enumerate() {
                    if !(0..self.chain.torsion()).any(|k| self.bridge_ok(right, next, k)) {
                        continue;
                    }
                    lefts.push(ui);
                    if let Some(ks) = self.extend(node + 1, lefts, rights) {
                        return Some(ks);
                    }
                    lefts.pop();
                }
            }
            rights.pop();
        }
        None
    }

    fn classes(&self, lefts: &[usize], rights: &[usize]) -> Option<Vec<u32>> {
        (0..self.chain.bridges())
            .map(|i| {
                let (a, b) = (&self.seqs[rights[i]], &self.seqs[lefts[i + 1]]);
                (0..self.chain.torsion()).find(|&k| self.bridge_ok(a, b, k))
            })
            .collect()
    }
}

/// Lexicographically smallest witness, found by trying every assignment of
/// node sequences in order. `None` when no assignment satisfies the
/// constraints.
pub fn exhaustive_search(
    chain: &ChainSpec,
    params: &GrdParams,
    mode: Mode,
    criterion: Criterion,
) -> Result<Option<LimitWitness>, ChainError> {
    let params = GrdParams::new(params.g, params.r, params.d)?;
    if chain.genus() != params.g {
        return Err(ChainError::Malformed(format!(
            "chain genus {} does not match g = {}",
            chain.genus(),
            params.g
        )));
    }
    let seqs: Vec<VanishingSeq> = (0..=params.d)
        .combinations(params.r as usize + 1)
        .map(|c| VanishingSeq::new(c, params.d).expect("increasing by construction"))
        .collect();
    let ctx = Ctx {
        seqs,
        chain,
        params,
        mode,
        criterion,
    };
    let (g1, _) = chain.tail_genera();
    for l0 in 0..ctx.seqs.len() {
        if !eh_exists(g1, params.r, params.d, &ctx.seqs[l0].ramification())? {
            continue;
        }
        let mut lefts = vec![l0];
        let mut rights = Vec::new();
        if let Some(ks) = ctx.extend(0, &mut lefts, &mut rights) {
            let t = chain.torsion();
            let bridges = ks
                .iter()
                .enumerate()
                .map(|(i, &k)| {
                    EllipticAspect::new(
                        t,
                        k,
                        ctx.seqs[rights[i]].clone(),
                        ctx.seqs[lefts[i + 1]].clone(),
                    )
                    .expect("checked above")
                })
                .collect();
            return Ok(Some(LimitWitness {
                params,
                chain: chain.clone(),
                mode,
                criterion,
                tail_left: ctx.seqs[l0].clone(),
                bridges,
                tail_right: ctx.seqs[*rights.last().unwrap()].clone(),
            }));
        }
    }
    Ok(None)
}
