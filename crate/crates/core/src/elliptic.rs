//! A `g^r_d` on an elliptic curve `E` with two marked points `x`, `y` such
//! that `x - y` has exact order `t` in `Pic^0(E)`.
//!
//! Line bundles are restricted to classes supported on the two nodes:
//! `L ~ d*y + k*(x - y)` with `k` taken mod `t`. For such `L`, a divisor
//! `a*x + b*y` with `a + b = d` is linearly equivalent to `L` exactly when
//! `a = k (mod t)`. That congruence is all the torsion ever contributes.
//!
//! Existence of an aspect with prescribed vanishing sequences is bracketed by
//! two tests: [`feasible_sufficient`] builds one section per index with
//! exact orders (so a `true` answer is a construction), while
//! [`feasible_necessary`] only checks `nu_j >= 0` and the congruence forced at
//! indices with `nu_j = 0`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bn::{self, GrdParams, VanishingSeq};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EllipticError {
    #[error("sequences have different lengths ({0} vs {1})")]
    LengthMismatch(usize, usize),
    #[error("sequence degree {seq} does not match d={d}")]
    DegreeMismatch { seq: u32, d: u32 },
    #[error("nu_{index} = {value} is negative")]
    NegativeNu { index: usize, value: i64 },
    #[error("torsion order must be at least 2, got {0}")]
    InvalidTorsion(u32),
    #[error("class k={k} is not reduced mod t={t}")]
    ClassOutOfRange { k: u32, t: u32 },
}

/// One elliptic aspect: sequences at `x` (left) and `y` (right) plus the
/// bundle class `k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EllipticAspect {
    pub t: u32,
    pub k: u32,
    pub d: u32,
    pub r: u32,
    pub seq_left: VanishingSeq,
    pub seq_right: VanishingSeq,
}

impl EllipticAspect {
    pub fn new(
        t: u32,
        k: u32,
        seq_left: VanishingSeq,
        seq_right: VanishingSeq,
    ) -> Result<Self, EllipticError> {
        if t < 2 {
            return Err(EllipticError::InvalidTorsion(t));
        }
        if k >= t {
            return Err(EllipticError::ClassOutOfRange { k, t });
        }
        check_pair(&seq_left, &seq_right, seq_left.d())?;
        Ok(EllipticAspect {
            t,
            k,
            d: seq_left.d(),
            r: seq_left.r(),
            seq_left,
            seq_right,
        })
    }

    pub fn nu(&self) -> NuProfile {
        nu_raw(self.seq_left.values(), self.seq_right.values(), self.d)
    }

    pub fn is_sufficient(&self) -> bool {
        feasible_sufficient(&self.seq_left, &self.seq_right, self.k, self.t, self.d)
    }

    pub fn is_necessary(&self) -> bool {
        feasible_necessary(&self.seq_left, &self.seq_right, self.k, self.t, self.d)
    }

    /// Adjusted Brill-Noether number with respect to both marked points.
    pub fn adjusted_rho(&self) -> i64 {
        let params = GrdParams {
            g: 1,
            r: self.r,
            d: self.d,
        };
        bn::adjusted_rho(&params, &[self.seq_left.clone(), self.seq_right.clone()])
            .expect("aspect sequences share r and d")
    }
}

/// `nu_j = d - a_j - b_{r-j}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct NuProfile(pub Vec<i64>);

impl NuProfile {
    pub fn values(&self) -> &[i64] {
        &self.0
    }

    pub fn zeros(&self) -> usize {
        self.0.iter().filter(|&&v| v == 0).count()
    }

    pub fn excess(&self) -> i64 {
        self.0.iter().map(|&v| (v - 1).max(0)).sum()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|&v| v >= 0)
    }
}

fn check_pair(a: &VanishingSeq, b: &VanishingSeq, d: u32) -> Result<(), EllipticError> {
    if a.values().len() != b.values().len() {
        return Err(EllipticError::LengthMismatch(
            a.values().len(),
            b.values().len(),
        ));
    }
    for s in [a, b] {
        if s.d() != d {
            return Err(EllipticError::DegreeMismatch { seq: s.d(), d });
        }
    }
    Ok(())
}

fn nu_raw(a: &[u32], b: &[u32], d: u32) -> NuProfile {
    let r = a.len() - 1;
    NuProfile(
        (0..=r)
            .map(|j| d as i64 - a[j] as i64 - b[r - j] as i64)
            .collect(),
    )
}

pub fn nu_profile(a: &VanishingSeq, b: &VanishingSeq, d: u32) -> Result<NuProfile, EllipticError> {
    check_pair(a, b, d)?;
    Ok(nu_raw(a.values(), b.values(), d))
}

/// Both sides of the zero-count identity on an elliptic curve:
/// `#{j : nu_j = 0}` and `-rho(L, x, y) + 1 + sum_j (nu_j - 1)_+`.
pub fn lemma24_check(
    a: &VanishingSeq,
    b: &VanishingSeq,
    d: u32,
) -> Result<(i64, i64), EllipticError> {
    let nu = nu_profile(a, b, d)?;
    if let Some((index, &value)) = nu.0.iter().enumerate().find(|(_, &v)| v < 0) {
        return Err(EllipticError::NegativeNu { index, value });
    }
    let params = GrdParams { g: 1, r: a.r(), d };
    let adj = bn::adjusted_rho(&params, &[a.clone(), b.clone()]).expect("checked pair");
    Ok((nu.zeros() as i64, -adj + 1 + nu.excess()))
}

#[inline]
fn congruent(a: i64, k: u32, t: u32) -> bool {
    a.rem_euclid(t as i64) == k as i64 % t as i64
}

/// `h^0(L(-alpha*x - beta*y))` for `L ~ d*y + k*(x-y)`.
pub fn dim_f(alpha: u32, beta: u32, k: u32, t: u32, d: u32) -> i64 {
    let deg = d as i64 - alpha as i64 - beta as i64;
    if deg >= 1 {
        deg
    } else if deg == 0 && congruent(alpha as i64, k, t) {
        1
    } else {
        0
    }
}

/// Whether some section vanishes to order exactly `alpha` at `x` and exactly
/// `beta` at `y`.
pub fn pair_exact_exists(alpha: u32, beta: u32, k: u32, t: u32, d: u32) -> bool {
    let nu = d as i64 - alpha as i64 - beta as i64;
    let a = alpha as i64;
    match nu {
        n if n >= 2 => true,
        1 => !congruent(a, k, t) && !congruent(a + 1, k, t),
        0 => congruent(a, k, t),
        _ => false,
    }
}

pub fn feasible_sufficient(a: &VanishingSeq, b: &VanishingSeq, k: u32, t: u32, d: u32) -> bool {
    if check_pair(a, b, d).is_err() {
        return false;
    }
    let (a, b) = (a.values(), b.values());
    let r = a.len() - 1;
    (0..=r).all(|j| pair_exact_exists(a[j], b[r - j], k, t, d))
}

pub fn feasible_necessary(a: &VanishingSeq, b: &VanishingSeq, k: u32, t: u32, d: u32) -> bool {
    if check_pair(a, b, d).is_err() {
        return false;
    }
    let (a, b) = (a.values(), b.values());
    let r = a.len() - 1;
    (0..=r).all(|j| {
        let nu = d as i64 - a[j] as i64 - b[r - j] as i64;
        nu > 0 || (nu == 0 && congruent(a[j] as i64, k, t))
    })
}

/// Smallest class `k` for which the sufficient test passes, on raw slices.
pub(crate) fn min_sufficient_class(s: &[u16], u: &[u16], t: u32, d: u32) -> Option<u32> {
    let r = s.len() - 1;
    let t64 = t as i64;
    // At most one residue is forced by a nu = 0 pair.
    let mut forced: Option<i64> = None;
    for j in 0..=r {
        let nu = d as i64 - s[j] as i64 - u[r - j] as i64;
        if nu < 0 {
            return None;
        }
        if nu == 0 {
            let res = (s[j] as i64).rem_euclid(t64);
            match forced {
                Some(f) if f != res => return None,
                _ => forced = Some(res),
            }
        }
    }
    let ok = |k: i64| {
        (0..=r).all(|j| {
            let nu = d as i64 - s[j] as i64 - u[r - j] as i64;
            if nu != 1 {
                return true;
            }
            let a = s[j] as i64;
            a.rem_euclid(t64) != k && (a + 1).rem_euclid(t64) != k
        })
    };
    match forced {
        Some(k) => ok(k).then_some(k as u32),
        None => (0..t64).find(|&k| ok(k)).map(|k| k as u32),
    }
}

/// Smallest class `k` for which the necessary test passes, on raw slices.
pub(crate) fn min_necessary_class(s: &[u16], u: &[u16], t: u32, d: u32) -> Option<u32> {
    let r = s.len() - 1;
    let mut forced: Option<u32> = None;
    for j in 0..=r {
        let nu = d as i64 - s[j] as i64 - u[r - j] as i64;
        if nu < 0 {
            return None;
        }
        if nu == 0 {
            let res = s[j] as u32 % t;
            match forced {
                Some(f) if f != res => return None,
                _ => forced = Some(res),
            }
        }
    }
    Some(forced.unwrap_or(0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use itertools::Itertools;
    use proptest::prelude::*;

    fn seq(v: &[u32], d: u32) -> VanishingSeq {
        VanishingSeq::new(v.to_vec(), d).unwrap()
    }

    fn all_seqs(r: u32, d: u32) -> Vec<VanishingSeq> {
        (0..=d)
            .combinations(r as usize + 1)
            .map(|c| seq(&c, d))
            .collect()
    }

    #[test]
    fn nu_examples() {
        assert_eq!(nu_profile(&seq(&[0, 2], 4), &seq(&[1, 3], 4), 4).unwrap().0, vec![1, 1]);
        for d in 1..10 {
            let nu = nu_profile(&seq(&[0, 1], d), &seq(&[d - 1, d], d), d).unwrap();
            assert_eq!(nu.0, vec![0, 0]);
        }
        assert_eq!(nu_profile(&seq(&[0, 3], 4), &seq(&[0, 3], 4), 4).unwrap().0, vec![1, 1]);
        assert!(matches!(
            nu_profile(&seq(&[0, 3], 4), &seq(&[0, 1, 3], 4), 4),
            Err(EllipticError::LengthMismatch(2, 3))
        ));
    }

    #[test]
    fn lemma24_examples() {
        assert_eq!(lemma24_check(&seq(&[0, 2], 4), &seq(&[1, 3], 4), 4).unwrap(), (0, 0));
        assert_eq!(lemma24_check(&seq(&[0, 1], 5), &seq(&[4, 5], 5), 5).unwrap(), (2, 2));
        assert!(matches!(
            lemma24_check(&seq(&[0, 2], 4), &seq(&[3, 4], 4), 4),
            Err(EllipticError::NegativeNu { index: 1, value: -1 })
        ));
    }

    #[test]
    fn lemma24_exhaustive_small() {
        for r in 0..=3u32 {
            for d in r..=12 {
                let seqs = all_seqs(r, d);
                for a in &seqs {
                    for b in &seqs {
                        if let Ok((lhs, rhs)) = lemma24_check(a, b, d) {
                            assert_eq!(lhs, rhs, "a={a:?} b={b:?}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn dim_f_examples() {
        for d in 1..8 {
            assert_eq!(dim_f(0, 0, 1, 3, d), d as i64);
        }
        assert_eq!(dim_f(2, 2, 2, 4, 4), 1);
        assert_eq!(dim_f(3, 1, 2, 4, 4), 0);
        assert_eq!(dim_f(3, 3, 0, 4, 4), 0);
    }

    #[test]
    fn pair_exact_examples() {
        for d in (0..20).step_by(3) {
            assert!(pair_exact_exists(0, d, 0, 3, d));
        }
        assert!(!pair_exact_exists(1, 3, 1, 5, 5));
        for d in 2..10 {
            for t in 2..6 {
                for k in 0..t {
                    assert!(pair_exact_exists(0, 0, k, t, d));
                }
            }
        }
    }

    #[test]
    fn feasibility_examples() {
        let a = seq(&[0, 2], 4);
        let b = seq(&[2, 4], 4);
        assert!(feasible_sufficient(&a, &b, 0, 2, 4));
        for k in 0..4 {
            assert!(!feasible_sufficient(&a, &b, k, 4, 4));
        }
        for t in 2..7 {
            for k in 0..t {
                assert!(feasible_sufficient(&seq(&[0, 1], 4), &seq(&[0, 1], 4), k, t, 4));
                assert!(!feasible_necessary(&a, &seq(&[3, 4], 4), k, t, 4));
            }
        }
        assert!(feasible_necessary(&a, &b, 0, 2, 4));
        assert!(feasible_necessary(&seq(&[1, 2], 4), &seq(&[1, 2], 4), 1, 3, 4));
    }

    #[test]
    fn aspect_rejects_small_torsion() {
        let a = seq(&[0, 1], 3);
        assert_eq!(
            EllipticAspect::new(1, 0, a.clone(), a.clone()),
            Err(EllipticError::InvalidTorsion(1))
        );
        assert!(matches!(
            EllipticAspect::new(3, 3, a.clone(), a.clone()),
            Err(EllipticError::ClassOutOfRange { .. })
        ));
        assert!(EllipticAspect::new(2, 1, a.clone(), a).is_ok());
    }

    #[test]
    fn raw_class_search_matches_predicates() {
        for r in 0..=2u32 {
            for d in r..=6 {
                let seqs = all_seqs(r, d);
                for t in 2..=5 {
                    for a in &seqs {
                        for b in &seqs {
                            let s: Vec<u16> = a.values().iter().map(|&v| v as u16).collect();
                            let u: Vec<u16> = b.values().iter().map(|&v| v as u16).collect();
                            let suff = (0..t).find(|&k| feasible_sufficient(a, b, k, t, d));
                            assert_eq!(min_sufficient_class(&s, &u, t, d), suff);
                            let nec = (0..t).find(|&k| feasible_necessary(a, b, k, t, d));
                            assert_eq!(min_necessary_class(&s, &u, t, d), nec);
                        }
                    }
                }
            }
        }
    }

    fn pair_strategy() -> impl Strategy<Value = (VanishingSeq, VanishingSeq, u32, u32, u32)> {
        (0u32..5, 0u32..20, 2u32..9).prop_flat_map(|(r, extra, t)| {
            let d = r + extra;
            let s = move || {
                proptest::sample::subsequence((0..=d).collect::<Vec<_>>(), r as usize + 1)
                    .prop_map(move |v| VanishingSeq::new(v, d).unwrap())
            };
            (s(), s(), 0..t, Just(t), Just(d))
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(10_000))]

        #[test]
        fn lemma24_identity_random((a, b, _k, _t, d) in pair_strategy()) {
            if let Ok((lhs, rhs)) = lemma24_check(&a, &b, d) {
                prop_assert_eq!(lhs, rhs);
            }
        }

        #[test]
        fn sufficient_implies_necessary((a, b, k, t, d) in pair_strategy()) {
            if feasible_sufficient(&a, &b, k, t, d) {
                prop_assert!(feasible_necessary(&a, &b, k, t, d));
            }
        }

        #[test]
        fn dim_f_monotone(alpha in 0u32..15, beta in 0u32..15, t in 2u32..8, k in 0u32..8, d in 0u32..15) {
            let k = k % t;
            prop_assert!(dim_f(alpha + 1, beta, k, t, d) <= dim_f(alpha, beta, k, t, d));
            prop_assert!(dim_f(alpha, beta + 1, k, t, d) <= dim_f(alpha, beta, k, t, d));
        }

        #[test]
        fn exact_pair_consistent_with_flags(alpha in 0u32..15, beta in 0u32..15, t in 2u32..8, k in 0u32..8, d in 0u32..15) {
            let k = k % t;
            if pair_exact_exists(alpha, beta, k, t, d) {
                let here = dim_f(alpha, beta, k, t, d);
                prop_assert!(here >= 1);
                prop_assert!(here > dim_f(alpha + 1, beta, k, t, d));
                prop_assert!(here > dim_f(alpha, beta + 1, k, t, d));
            }
        }
    }
}
