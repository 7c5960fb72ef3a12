//! Chains `[tail] - [elliptic bridge]^n - [tail]` and limit linear series on
//! them.
//!
//! Nodes are numbered `0..=n` from left to right; node `i` joins component
//! `i` and component `i + 1`. At every node the left component presents a
//! sequence `L_i` and the right component a sequence `R_i`, and the node
//! slack is `eta_{ij} = L_i[j] + R_i[r - j] - d`.

mod exhaustive;
mod search;
mod stats;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bn::{self, GrdParams, VanishingSeq};
use crate::elliptic::EllipticAspect;

pub use exhaustive::exhaustive_search;
pub use search::{decide, search, SearchOptions};
pub use stats::{
    check_additivity, check_eq35, check_lemma31, check_lemma32, lemma31_bound_holds, stats,
    Lemma32Branches, Lemma32Report, WitnessStats,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChainError {
    #[error("malformed chain: {0}")]
    Malformed(String),
    #[error("tail genus must be at least 2, got {0}")]
    TailGenus(u32),
    #[error("torsion order must be at least 2, got {0}")]
    Torsion(u32),
    #[error("bridges carry different torsion orders ({0} and {1})")]
    MixedTorsion(u32, u32),
    #[error("invalid series type: {0}")]
    Params(#[from] bn::BnError),
    #[error("witness does not fit the chain: {0}")]
    Witness(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Component {
    Tail { genus: u32 },
    Bridge { torsion: u32 },
}

/// Two general pointed tails at the ends, `n >= 1` elliptic bridges in
/// between, all with the same torsion order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ChainSpec {
    components: Vec<Component>,
}

impl ChainSpec {
    pub fn new(components: Vec<Component>) -> Result<Self, ChainError> {
        if components.len() < 3 {
            return Err(ChainError::Malformed(
                "need two tails and at least one bridge".into(),
            ));
        }
        let last = components.len() - 1;
        let mut torsion = None;
        for (i, c) in components.iter().enumerate() {
            match (*c, i == 0 || i == last) {
                (Component::Tail { genus }, true) => {
                    if genus < 2 {
                        return Err(ChainError::TailGenus(genus));
                    }
                }
                (Component::Tail { .. }, false) => {
                    return Err(ChainError::Malformed(format!(
                        "tail at interior position {i}"
                    )))
                }
                (Component::Bridge { .. }, true) => {
                    return Err(ChainError::Malformed(format!(
                        "bridge at end position {i}"
                    )))
                }
                (Component::Bridge { torsion: t }, false) => {
                    if t < 2 {
                        return Err(ChainError::Torsion(t));
                    }
                    match torsion {
                        Some(prev) if prev != t => return Err(ChainError::MixedTorsion(prev, t)),
                        _ => torsion = Some(t),
                    }
                }
            }
        }
        Ok(ChainSpec { components })
    }

    /// `TCBE(g1, g2; n, t)`.
    pub fn tcbe(g1: u32, g2: u32, n: usize, t: u32) -> Result<Self, ChainError> {
        let mut comps = vec![Component::Tail { genus: g1 }];
        comps.extend(std::iter::repeat(Component::Bridge { torsion: t }).take(n));
        comps.push(Component::Tail { genus: g2 });
        ChainSpec::new(comps)
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn bridges(&self) -> usize {
        self.components.len() - 2
    }

    pub fn torsion(&self) -> u32 {
        match self.components[1] {
            Component::Bridge { torsion } => torsion,
            Component::Tail { .. } => unreachable!("validated shape"),
        }
    }

    pub fn tail_genera(&self) -> (u32, u32) {
        let genus = |c: &Component| match *c {
            Component::Tail { genus } => genus,
            Component::Bridge { .. } => unreachable!("validated shape"),
        };
        (
            genus(&self.components[0]),
            genus(self.components.last().unwrap()),
        )
    }

    /// Arithmetic genus: tails plus one per bridge.
    pub fn genus(&self) -> u32 {
        let (g1, g2) = self.tail_genera();
        g1 + g2 + self.bridges() as u32
    }

    /// Canonical text form, e.g. `tail:16,ell:9,ell:9,tail:16`.
    pub fn render(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for ChainSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.components.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            match c {
                Component::Tail { genus } => write!(f, "tail:{genus}")?,
                Component::Bridge { torsion } => write!(f, "ell:{torsion}")?,
            }
        }
        Ok(())
    }
}

impl FromStr for ChainSpec {
    type Err = ChainError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut comps = Vec::new();
        for part in s.split(',') {
            let part = part.trim();
            let (kind, value) = part
                .split_once(':')
                .ok_or_else(|| ChainError::Malformed(format!("expected kind:value, got {part:?}")))?;
            let value: u32 = value
                .trim()
                .parse()
                .map_err(|_| ChainError::Malformed(format!("bad number in {part:?}")))?;
            comps.push(match kind.trim() {
                "tail" => Component::Tail { genus: value },
                "ell" => Component::Bridge { torsion: value },
                other => return Err(ChainError::Malformed(format!("unknown component {other:?}"))),
            });
        }
        ChainSpec::new(comps)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// `a_j + a'_{r-j} >= d` at every node.
    Crude,
    /// Equality at every node.
    Refined,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Criterion {
    Sufficient,
    Necessary,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Crude => "crude",
            Mode::Refined => "refined",
        })
    }
}

impl fmt::Display for Criterion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Criterion::Sufficient => "sufficient",
            Criterion::Necessary => "necessary",
        })
    }
}

/// A candidate limit `g^r_d`: the tail sequences at their nodes and one
/// elliptic aspect per bridge (`seq_left` at the bridge's left node).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LimitWitness {
    pub params: GrdParams,
    pub chain: ChainSpec,
    pub mode: Mode,
    pub criterion: Criterion,
    pub tail_left: VanishingSeq,
    pub bridges: Vec<EllipticAspect>,
    pub tail_right: VanishingSeq,
}

impl LimitWitness {
    pub fn nodes(&self) -> usize {
        self.bridges.len() + 1
    }

    /// `(L_i, R_i)` at node `i`.
    pub fn node(&self, i: usize) -> (&VanishingSeq, &VanishingSeq) {
        let n = self.bridges.len();
        let left = if i == 0 {
            &self.tail_left
        } else {
            &self.bridges[i - 1].seq_right
        };
        let right = if i == n {
            &self.tail_right
        } else {
            &self.bridges[i].seq_left
        };
        (left, right)
    }

    /// `eta_{ij}` at node `i`, indexed by the left component's index `j`.
    pub fn node_slack(&self, i: usize) -> Vec<i64> {
        let (l, r) = self.node(i);
        slack(l.values(), r.values(), self.params.d)
    }

    pub fn tail_gammas(&self) -> (i64, i64) {
        let (g1, g2) = self.chain.tail_genera();
        let gamma =
            |g: u32, s: &VanishingSeq| bn::rho(g, self.params.r, self.params.d) - s.ramification_weight();
        (gamma(g1, &self.tail_left), gamma(g2, &self.tail_right))
    }

    /// Serializable view with stable field names.
    pub fn document(&self) -> WitnessDocument {
        let (g1, g2) = self.chain.tail_genera();
        let mut components = vec![ComponentDoc::Tail {
            genus: g1,
            seq: self.tail_left.values().to_vec(),
        }];
        components.extend(self.bridges.iter().map(|b| ComponentDoc::Bridge {
            torsion: b.t,
            seq_left: b.seq_left.values().to_vec(),
            seq_right: b.seq_right.values().to_vec(),
            class_k: b.k,
        }));
        components.push(ComponentDoc::Tail {
            genus: g2,
            seq: self.tail_right.values().to_vec(),
        });
        WitnessDocument {
            chain: self.chain.render(),
            g: self.params.g,
            r: self.params.r,
            d: self.params.d,
            mode: self.mode,
            criterion: self.criterion,
            components,
            stats: stats(self),
        }
    }
}

fn slack(left: &[u32], right: &[u32], d: u32) -> Vec<i64> {
    let r = left.len() - 1;
    (0..=r)
        .map(|j| left[j] as i64 + right[r - j] as i64 - d as i64)
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum ComponentDoc {
    Tail {
        genus: u32,
        seq: Vec<u32>,
    },
    Bridge {
        torsion: u32,
        seq_left: Vec<u32>,
        seq_right: Vec<u32>,
        class_k: u32,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessDocument {
    pub chain: String,
    pub g: u32,
    pub r: u32,
    pub d: u32,
    pub mode: Mode,
    pub criterion: Criterion,
    pub components: Vec<ComponentDoc>,
    pub stats: WitnessStats,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    Exists(LimitWitness),
    NotExists,
    Undetermined {
        reason: String,
        /// Lexicographically smallest configuration passing the necessary
        /// conditions, when one was found.
        candidate: Option<LimitWitness>,
    },
}

/// Result of a search, with the mode and criterion that produced it.
/// `Exists` is only ever produced under [`Criterion::Sufficient`] and
/// `NotExists` only under [`Criterion::Necessary`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub outcome: Outcome,
    pub mode: Mode,
    pub criterion: Criterion,
}

impl Verdict {
    pub fn label(&self) -> &'static str {
        match self.outcome {
            Outcome::Exists(_) => "Exists",
            Outcome::NotExists => "NotExists",
            Outcome::Undetermined { .. } => "Undetermined",
        }
    }

    pub fn is_exists(&self) -> bool {
        matches!(self.outcome, Outcome::Exists(_))
    }

    pub fn is_not_exists(&self) -> bool {
        matches!(self.outcome, Outcome::NotExists)
    }

    pub fn witness(&self) -> Option<&LimitWitness> {
        match &self.outcome {
            Outcome::Exists(w) => Some(w),
            Outcome::Undetermined { candidate, .. } => candidate.as_ref(),
            Outcome::NotExists => None,
        }
    }
}

/// Re-checks every constraint of a witness from scratch: sequence shapes,
/// the Eisenbud-Harris criterion on both tails, the bridge test named by the
/// witness's criterion, and node compatibility for its mode.
pub fn validate(w: &LimitWitness) -> bool {
    validate_detail(w).is_ok()
}

pub fn validate_detail(w: &LimitWitness) -> Result<(), ChainError> {
    let bad = |m: String| Err(ChainError::Witness(m));
    let GrdParams { r, d, .. } = w.params;
    if w.chain.genus() != w.params.g {
        return bad(format!("chain genus {} != g {}", w.chain.genus(), w.params.g));
    }
    if w.bridges.len() != w.chain.bridges() {
        return bad("bridge count differs from the chain".into());
    }
    let t = w.chain.torsion();
    let seq_ok = |s: &VanishingSeq| s.r() == r && s.d() == d;
    if !seq_ok(&w.tail_left) || !seq_ok(&w.tail_right) {
        return bad("tail sequence has wrong r or d".into());
    }
    for (i, b) in w.bridges.iter().enumerate() {
        if b.t != t || b.k >= t || b.d != d || b.r != r {
            return bad(format!("bridge {i} has inconsistent t, k, r or d"));
        }
        if !seq_ok(&b.seq_left) || !seq_ok(&b.seq_right) {
            return bad(format!("bridge {i} sequence has wrong r or d"));
        }
        let ok = match w.criterion {
            Criterion::Sufficient => b.is_sufficient(),
            Criterion::Necessary => b.is_necessary(),
        };
        if !ok {
            return bad(format!("bridge {i} fails the {} test", w.criterion));
        }
    }
    let (g1, g2) = w.chain.tail_genera();
    for (g, s, side) in [(g1, &w.tail_left, "left"), (g2, &w.tail_right, "right")] {
        if !bn::eh_exists(g, r, d, &s.ramification()).map_err(ChainError::from)? {
            return bad(format!("{side} tail violates the Eisenbud-Harris bound"));
        }
    }
    for i in 0..w.nodes() {
        let eta = w.node_slack(i);
        let ok = match w.mode {
            Mode::Crude => eta.iter().all(|&e| e >= 0),
            Mode::Refined => eta.iter().all(|&e| e == 0),
        };
        if !ok {
            return bad(format!("node {i} slack {eta:?} incompatible with {} mode", w.mode));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(v: &[u32], d: u32) -> VanishingSeq {
        VanishingSeq::new(v.to_vec(), d).unwrap()
    }

    #[test]
    fn chain_shapes() {
        let c: ChainSpec = "tail:16,ell:9,ell:9,tail:16".parse().unwrap();
        assert_eq!(c, ChainSpec::tcbe(16, 16, 2, 9).unwrap());
        assert_eq!(c.genus(), 34);
        assert_eq!(c.render(), "tail:16,ell:9,ell:9,tail:16");
        assert!("ell:3,tail:2,tail:2".parse::<ChainSpec>().is_err());
        assert!(matches!(
            "tail:1,ell:3,tail:2".parse::<ChainSpec>(),
            Err(ChainError::TailGenus(1))
        ));
        assert!(matches!(
            "tail:2,ell:3,ell:4,tail:2".parse::<ChainSpec>(),
            Err(ChainError::MixedTorsion(3, 4))
        ));
        assert!(matches!(
            "tail:2,ell:1,tail:2".parse::<ChainSpec>(),
            Err(ChainError::Torsion(1))
        ));
        assert!("tail:2,tail:2".parse::<ChainSpec>().is_err());
        assert!("tail:2,ell:3,tail:2,tail:2".parse::<ChainSpec>().is_err());
        assert!("tail:2,ell:x,tail:2".parse::<ChainSpec>().is_err());
    }

    #[test]
    fn compatibility_examples() {
        let eta = slack(&[1, 3], &[0, 2], 3);
        assert_eq!(eta, vec![0, 0]);
        let eta = slack(&[1, 3], &[1, 2], 3);
        assert!(eta.iter().all(|&e| e >= 0));
        assert!(!eta.iter().all(|&e| e == 0));
        assert!(slack(&[0, 1], &[0, 1], 3).iter().any(|&e| e < 0));
        assert!(compatible(&seq(&[1, 3], 3), &seq(&[0, 2], 3), 3, Mode::Refined));
        assert!(compatible(&seq(&[1, 3], 3), &seq(&[1, 2], 3), 3, Mode::Crude));
        assert!(!compatible(&seq(&[1, 3], 3), &seq(&[1, 2], 3), 3, Mode::Refined));
        assert!(!compatible(&seq(&[0, 1], 3), &seq(&[0, 1], 3), 3, Mode::Crude));
        assert!(!compatible(&seq(&[0, 1], 3), &seq(&[0, 1], 3), 3, Mode::Refined));
    }
}

/// Node compatibility of the left component's sequence with the right one's.
pub fn compatible(left: &VanishingSeq, right: &VanishingSeq, d: u32, mode: Mode) -> bool {
    if left.values().len() != right.values().len() {
        return false;
    }
    let eta = slack(left.values(), right.values(), d);
    match mode {
        Mode::Crude => eta.iter().all(|&e| e >= 0),
        Mode::Refined => eta.iter().all(|&e| e == 0),
    }
}
