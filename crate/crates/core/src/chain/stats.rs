use serde::{Deserialize, Serialize};

use super::LimitWitness;

/// Numerical invariants of a witness.
///
/// `eta[i][j]` is the slack at node `i` indexed by the left component
/// (`L_i[j] + R_i[r - j] - d`). `nu[i][j]` is measured from the left node of
/// bridge `i`. With two bridges `beta` repeats the middle node's slack.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessStats {
    pub eta: Vec<Vec<i64>>,
    pub nu: Vec<Vec<i64>>,
    pub beta: Option<Vec<i64>>,
    pub m: Vec<i64>,
    pub gamma: [i64; 2],
    pub bridge_rho: Vec<i64>,
}

pub fn stats(w: &LimitWitness) -> WitnessStats {
    let eta: Vec<Vec<i64>> = (0..w.nodes()).map(|i| w.node_slack(i)).collect();
    let nu: Vec<Vec<i64>> = w.bridges.iter().map(|b| b.nu().0).collect();
    let bridge_rho: Vec<i64> = w.bridges.iter().map(|b| b.adjusted_rho()).collect();
    let m = nu
        .iter()
        .zip(&bridge_rho)
        .map(|(nu, rho)| -rho + nu.iter().map(|&v| (v - 1).max(0)).sum::<i64>())
        .collect();
    let (g1, g2) = w.tail_gammas();
    let beta = (w.bridges.len() == 2).then(|| eta[1].clone());
    WitnessStats {
        eta,
        nu,
        beta,
        m,
        gamma: [g1, g2],
        bridge_rho,
    }
}

/// Sum of adjusted Brill-Noether numbers of all aspects against
/// `rho(g, r, d)` minus the total node slack.
pub fn check_additivity(w: &LimitWitness) -> (i64, i64) {
    let (g1, g2) = w.tail_gammas();
    let lhs = g1 + g2 + w.bridges.iter().map(|b| b.adjusted_rho()).sum::<i64>();
    let slack: i64 = (0..w.nodes()).map(|i| w.node_slack(i).iter().sum::<i64>()).sum();
    (lhs, w.params.rho() - slack)
}

/// `m_1 + m_2` against `-rho + sum eta + sum beta + gamma_1 + gamma_2 +
/// sum (nu - 1)_+` on a two-bridge chain.
pub fn check_eq35(w: &LimitWitness) -> Option<(i64, i64)> {
    let s = stats(w);
    let beta = s.beta.as_ref()?;
    let excess: i64 = s.nu.iter().flatten().map(|&v| (v - 1).max(0)).sum();
    let rhs = -w.params.rho()
        + s.eta[0].iter().sum::<i64>()
        + s.eta[2].iter().sum::<i64>()
        + beta.iter().sum::<i64>()
        + s.gamma[0]
        + s.gamma[1]
        + excess;
    Some((s.m.iter().sum(), rhs))
}

/// `a_r <= g + r + gamma + eta` for the top vanishing order of the bridge
/// next to a tail of genus `g`.
pub fn lemma31_bound_holds(a_r: i64, g_tail: u32, r: u32, gamma: i64, eta: i64) -> bool {
    a_r <= g_tail as i64 + r as i64 + gamma + eta
}

/// The bound on the top vanishing order of each end bridge at its tail node:
/// `[left end, right end]`.
pub fn check_lemma31(w: &LimitWitness) -> Vec<bool> {
    let r = w.params.r;
    let ri = r as usize;
    let (g1, g2) = w.chain.tail_genera();
    let (gamma1, gamma2) = w.tail_gammas();
    let last = w.nodes() - 1;
    let (_, right0) = w.node(0);
    let (left_n, _) = w.node(last);
    vec![
        lemma31_bound_holds(right0.values()[ri] as i64, g1, r, gamma1, w.node_slack(0)[0]),
        lemma31_bound_holds(left_n.values()[ri] as i64, g2, r, gamma2, w.node_slack(last)[ri]),
    ]
}

/// Which side of a disjunction holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Lemma32Branches {
    pub first: bool,
    pub second: bool,
}

impl Lemma32Branches {
    pub fn holds(&self) -> bool {
        self.first || self.second
    }
}

/// Branches of the torsion inequalities for `m_1 >= 1` and `m_2 >= 1`;
/// `None` where `m_i < 1` and the statement is vacuous.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Lemma32Report {
    pub m1: i64,
    pub m2: i64,
    pub part1: Option<Lemma32Branches>,
    pub part2: Option<Lemma32Branches>,
}

impl Lemma32Report {
    pub fn holds(&self) -> bool {
        self.part1.map_or(true, |b| b.holds()) && self.part2.map_or(true, |b| b.holds())
    }
}

/// Evaluated in doubled integers. `nu_1r` is read from the outer node of the
/// first bridge and `nu_2r` from the outer node of the second, so the latter
/// is the first entry of the second bridge's left-node profile.
pub fn check_lemma32(w: &LimitWitness) -> Option<Lemma32Report> {
    let s = stats(w);
    let beta = s.beta.as_ref()?;
    let r = w.params.r as usize;
    let d = w.params.d as i64;
    let t = w.chain.torsion() as i64;
    let (g1, g2) = w.chain.tail_genera();
    let (m1, m2) = (s.m[0], s.m[1]);
    let nu1r = s.nu[0][r];
    let nu2r = s.nu[1][0];
    let ind = |v: i64| i64::from(v >= 1);
    let side1 = 2 * (g1 as i64 + r as i64 + s.gamma[0] + s.eta[0][0]);
    let side2 = 2 * (g2 as i64 + r as i64 + s.gamma[1] + s.eta[2][r]);
    let part1 = (m1 >= 1).then(|| Lemma32Branches {
        first: d + m1 * t + 2 * ind(nu1r) <= side1,
        second: d + m1 * t - 2 * beta[r] - 2 * nu2r < side2,
    });
    let part2 = (m2 >= 1).then(|| Lemma32Branches {
        first: d + m2 * t <= side2,
        second: d + m2 * t - 2 * beta[0] - 2 * nu1r + 2 * ind(nu2r) < side1,
    });
    Some(Lemma32Report {
        m1,
        m2,
        part1,
        part2,
    })
}
