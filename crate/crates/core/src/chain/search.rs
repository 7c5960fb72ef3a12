use std::sync::atomic::{AtomicBool, Ordering};
use std::time::{Duration, Instant};

use itertools::Itertools;
use rayon::prelude::*;

use super::{ChainError, ChainSpec, Criterion, LimitWitness, Mode, Outcome, Verdict};
use crate::bn::{eh_exists_vanishing, GrdParams, VanishingSeq};
use crate::elliptic::{min_necessary_class, min_sufficient_class, EllipticAspect};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchOptions {
    /// Largest node slack explored in crude mode. `None` means `d`, which
    /// covers every compatible pair.
    pub slack_cap: Option<u32>,
    /// Upper bound on the number of vanishing sequences per node.
    pub candidate_cap: usize,
    pub time_budget: Option<Duration>,
    /// Worker threads; `None` uses the global rayon pool.
    pub jobs: Option<usize>,
    /// Run the crude necessary search without reducing it to refined
    /// matchings.
    pub unreduced: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            slack_cap: None,
            candidate_cap: 20_000,
            time_budget: None,
            jobs: None,
            unreduced: false,
        }
    }
}

/// All strictly increasing sequences in `[0, d]` of length `r + 1`, in
/// lexicographic order.
struct SeqSpace {
    len: usize,
    d: u32,
    data: Vec<u16>,
    comp: Vec<u32>,
    binom: Vec<Vec<u64>>,
}

impl SeqSpace {
    fn count(r: u32, d: u32) -> u128 {
        let (n, k) = (d as u128 + 1, r as u128 + 1);
        if k > n {
            return 0;
        }
        let mut c: u128 = 1;
        for i in 0..k {
            c = c * (n - i) / (i + 1);
        }
        c
    }

    fn new(r: u32, d: u32) -> Self {
        let len = r as usize + 1;
        let data: Vec<u16> = (0..=d as u16).combinations(len).flatten().collect();
        let top = d as usize + 1;
        let mut binom = vec![vec![0u64; len + 1]; top + 1];
        for row in binom.iter_mut() {
            row[0] = 1;
        }
        for n in 1..=top {
            for k in 1..=len {
                binom[n][k] = binom[n - 1][k - 1] + binom[n - 1][k];
            }
        }
        let mut space = SeqSpace {
            len,
            d,
            data,
            comp: Vec::new(),
            binom,
        };
        let n = space.size();
        let mut buf = vec![0u16; len];
        space.comp = (0..n)
            .map(|i| {
                let s = space.get(i);
                for j in 0..len {
                    buf[j] = d as u16 - s[len - 1 - j];
                }
                space.rank(&buf) as u32
            })
            .collect();
        space
    }

    fn size(&self) -> usize {
        self.data.len() / self.len
    }

    fn get(&self, i: usize) -> &[u16] {
        &self.data[i * self.len..(i + 1) * self.len]
    }

    fn rank(&self, s: &[u16]) -> usize {
        let top = self.d as usize;
        let mut rank = 0u64;
        let mut next = 0usize;
        for (j, &c) in s.iter().enumerate() {
            let rest = self.len - 1 - j;
            for v in next..c as usize {
                rank += self.binom[top - v][rest];
            }
            next = c as usize + 1;
        }
        rank as usize
    }

    fn vanishing(&self, i: usize) -> VanishingSeq {
        VanishingSeq::new(self.get(i).iter().map(|&v| v as u32).collect(), self.d)
            .expect("enumerated sequences are valid")
    }
}

struct Guard {
    start: Instant,
    budget: Option<Duration>,
    tripped: AtomicBool,
}

impl Guard {
    fn expired(&self) -> bool {
        if self.tripped.load(Ordering::Relaxed) {
            return true;
        }
        match self.budget {
            Some(b) if self.start.elapsed() > b => {
                self.tripped.store(true, Ordering::Relaxed);
                true
            }
            _ => false,
        }
    }
}

struct Aborted;

struct Raw {
    lefts: Vec<usize>,
    rights: Vec<usize>,
    classes: Vec<u32>,
}

struct Dp<'a> {
    space: &'a SeqSpace,
    mode: Mode,
    criterion: Criterion,
    cap: u32,
    t: u32,
    d: u32,
    g1: u32,
    g2: u32,
    nodes: usize,
    guard: &'a Guard,
}

impl Dp<'_> {
    fn bridge(&self, s: usize, u: usize) -> Option<u32> {
        let (s, u) = (self.space.get(s), self.space.get(u));
        match self.criterion {
            Criterion::Sufficient => min_sufficient_class(s, u, self.t, self.d),
            Criterion::Necessary => min_necessary_class(s, u, self.t, self.d),
        }
    }

    fn compatible(&self, l: usize, r: usize) -> bool {
        let c = self.space.comp[l] as usize;
        match self.mode {
            Mode::Refined => r == c,
            Mode::Crude => {
                let (lo, x) = (self.space.get(c), self.space.get(r));
                lo.iter()
                    .zip(x)
                    .all(|(&a, &b)| b >= a && (b - a) as u32 <= self.cap)
            }
        }
    }

    fn tail(&self, genus: u32, i: usize) -> bool {
        eh_exists_vanishing(genus, self.d, self.space.get(i))
    }

    /// Elements lying below some member of `set`.
    fn down_closure(&self, set: &[bool]) -> Vec<bool> {
        let mut down = set.to_vec();
        let len = self.space.len;
        let mut buf = vec![0u16; len];
        for x in (0..set.len()).rev() {
            if down[x] {
                continue;
            }
            let s = self.space.get(x);
            for j in 0..len {
                let up = s[j] + 1;
                let fits = if j + 1 < len { up < s[j + 1] } else { up as u32 <= self.d };
                if !fits {
                    continue;
                }
                buf.copy_from_slice(s);
                buf[j] = up;
                if down[self.space.rank(&buf)] {
                    down[x] = true;
                    break;
                }
            }
        }
        down
    }

    /// Left sequences at a node admitting a compatible right sequence in
    /// `good_right`.
    fn left_preimage(&self, good_right: &[bool]) -> Result<Vec<bool>, Aborted> {
        let n = good_right.len();
        let comp = &self.space.comp;
        match self.mode {
            Mode::Refined => Ok((0..n).map(|x| good_right[comp[x] as usize]).collect()),
            Mode::Crude if self.cap >= self.d => {
                let down = self.down_closure(good_right);
                Ok((0..n).map(|x| down[comp[x] as usize]).collect())
            }
            Mode::Crude => {
                let members: Vec<usize> = (0..n).filter(|&y| good_right[y]).collect();
                let out: Vec<bool> = (0..n)
                    .into_par_iter()
                    .map(|x| !self.guard.expired() && members.iter().any(|&y| self.compatible(x, y)))
                    .collect();
                if self.guard.expired() {
                    Err(Aborted)
                } else {
                    Ok(out)
                }
            }
        }
    }

    /// Right sequences at a node admitting a bridge to some member of
    /// `good_left` at the next node.
    fn bridge_preimage(&self, good_left: &[bool]) -> Result<Vec<bool>, Aborted> {
        let n = good_left.len();
        let members: Vec<usize> = (0..n).filter(|&u| good_left[u]).collect();
        let out: Vec<bool> = (0..n)
            .into_par_iter()
            .map(|s| {
                if self.guard.expired() {
                    return false;
                }
                // nu >= 0 forces u[0] <= d - s[r]; members are sorted by u[0]
                let bound = self.d as u16 - self.space.get(s)[self.space.len - 1];
                members
                    .iter()
                    .take_while(|&&u| self.space.get(u)[0] <= bound)
                    .any(|&u| self.bridge(s, u).is_some())
            })
            .collect();
        if self.guard.expired() {
            Err(Aborted)
        } else {
            Ok(out)
        }
    }

    fn run(&self) -> Result<Option<Raw>, Aborted> {
        let n = self.space.size();
        let last = self.nodes - 1;
        let mut good_r: Vec<Vec<bool>> = vec![Vec::new(); self.nodes];
        let mut good_l: Vec<Vec<bool>> = vec![Vec::new(); self.nodes];
        good_r[last] = (0..n).into_par_iter().map(|i| self.tail(self.g2, i)).collect();
        for i in (0..self.nodes).rev() {
            good_l[i] = self.left_preimage(&good_r[i])?;
            if i > 0 {
                good_r[i - 1] = self.bridge_preimage(&good_l[i])?;
            }
        }
        let Some(l0) = (0..n).find(|&x| good_l[0][x] && self.tail(self.g1, x)) else {
            return Ok(None);
        };
        let mut raw = Raw {
            lefts: vec![l0],
            rights: Vec::new(),
            classes: Vec::new(),
        };
        for i in 0..self.nodes {
            let l = raw.lefts[i];
            let r = (0..n)
                .find(|&y| good_r[i][y] && self.compatible(l, y))
                .expect("left sequence was marked good");
            raw.rights.push(r);
            if i < last {
                let (u, k) = (0..n)
                    .filter(|&u| good_l[i + 1][u])
                    .find_map(|u| self.bridge(r, u).map(|k| (u, k)))
                    .expect("right sequence was marked good");
                raw.lefts.push(u);
                raw.classes.push(k);
            }
        }
        Ok(Some(raw))
    }
}

fn check_input(chain: &ChainSpec, params: &GrdParams) -> Result<(), ChainError> {
    GrdParams::new(params.g, params.r, params.d)?;
    if chain.genus() != params.g {
        return Err(ChainError::Malformed(format!(
            "chain genus {} does not match g = {}",
            chain.genus(),
            params.g
        )));
    }
    Ok(())
}

fn build_witness(
    space: &SeqSpace,
    chain: &ChainSpec,
    params: &GrdParams,
    mode: Mode,
    criterion: Criterion,
    raw: &Raw,
) -> LimitWitness {
    let t = chain.torsion();
    let bridges = raw
        .classes
        .iter()
        .enumerate()
        .map(|(i, &k)| {
            EllipticAspect::new(
                t,
                k,
                space.vanishing(raw.rights[i]),
                space.vanishing(raw.lefts[i + 1]),
            )
            .expect("search produces consistent aspects")
        })
        .collect();
    LimitWitness {
        params: *params,
        chain: chain.clone(),
        mode,
        criterion,
        tail_left: space.vanishing(raw.lefts[0]),
        bridges,
        tail_right: space.vanishing(*raw.rights.last().unwrap()),
    }
}

fn with_pool<T: Send>(jobs: Option<usize>, f: impl FnOnce() -> T + Send) -> T {
    let pool = jobs.and_then(|j| rayon::ThreadPoolBuilder::new().num_threads(j).build().ok());
    match pool {
        Some(p) => p.install(f),
        None => f(),
    }
}

/// Searches for a limit `g^r_d` on `chain` whose bridges pass `criterion`.
///
/// Under [`Criterion::Sufficient`] the answer is `Exists` or `Undetermined`;
/// under [`Criterion::Necessary`] it is `NotExists` or `Undetermined`, the
/// latter carrying the lexicographically smallest candidate.
pub fn search(
    chain: &ChainSpec,
    params: &GrdParams,
    mode: Mode,
    criterion: Criterion,
    opts: &SearchOptions,
) -> Result<Verdict, ChainError> {
    check_input(chain, params)?;
    let verdict = |outcome| Verdict {
        outcome,
        mode,
        criterion,
    };
    let undetermined = |reason: String| {
        verdict(Outcome::Undetermined {
            reason,
            candidate: None,
        })
    };
    let count = SeqSpace::count(params.r, params.d);
    if count > opts.candidate_cap as u128 {
        return Ok(undetermined(format!(
            "candidate cap exceeded: {count} sequences per node, cap {}",
            opts.candidate_cap
        )));
    }
    let cap = opts.slack_cap.unwrap_or(params.d).min(params.d);
    // Lowering a right-hand sequence to the exact complement only raises nu
    // and drops congruence constraints, so the crude necessary search can
    // run on refined matchings.
    let reduce = criterion == Criterion::Necessary && mode == Mode::Crude && !opts.unreduced;
    let dp_mode = if reduce { Mode::Refined } else { mode };
    let complete = dp_mode == Mode::Refined || cap >= params.d;

    let guard = Guard {
        start: Instant::now(),
        budget: opts.time_budget,
        tripped: AtomicBool::new(false),
    };
    let (g1, g2) = chain.tail_genera();
    let space = SeqSpace::new(params.r, params.d);
    let dp = Dp {
        space: &space,
        mode: dp_mode,
        criterion,
        cap,
        t: chain.torsion(),
        d: params.d,
        g1,
        g2,
        nodes: chain.bridges() + 1,
        guard: &guard,
    };
    let found = match with_pool(opts.jobs, || dp.run()) {
        Err(Aborted) => {
            return Ok(undetermined(format!(
                "time budget of {:?} exhausted",
                opts.time_budget.unwrap_or_default()
            )))
        }
        Ok(found) => found.map(|raw| build_witness(&space, chain, params, mode, criterion, &raw)),
    };
    Ok(match (criterion, found) {
        (Criterion::Sufficient, Some(w)) => verdict(Outcome::Exists(w)),
        (Criterion::Sufficient, None) => {
            undetermined("no configuration passes the sufficient bridge test".into())
        }
        (Criterion::Necessary, Some(w)) => verdict(Outcome::Undetermined {
            reason: "a configuration passes the necessary conditions".into(),
            candidate: Some(w),
        }),
        (Criterion::Necessary, None) if complete => verdict(Outcome::NotExists),
        (Criterion::Necessary, None) => {
            undetermined(format!("slack cap {cap} below d leaves the crude space incomplete"))
        }
    })
}

/// Runs the sufficient search, then the necessary one if needed.
pub fn decide(
    chain: &ChainSpec,
    params: &GrdParams,
    mode: Mode,
    opts: &SearchOptions,
) -> Result<Verdict, ChainError> {
    let first = search(chain, params, mode, Criterion::Sufficient, opts)?;
    if first.is_exists() {
        return Ok(first);
    }
    let second = search(chain, params, mode, Criterion::Necessary, opts)?;
    Ok(match second.outcome {
        Outcome::Undetermined {
            candidate: Some(c), ..
        } => Verdict {
            outcome: Outcome::Undetermined {
                reason: "necessary conditions hold but no configuration passes the sufficient test"
                    .into(),
                candidate: Some(c),
            },
            ..second
        },
        _ => second,
    })
}
