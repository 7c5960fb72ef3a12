//! Exact Riemann-Roch computations on an explicit elliptic curve over a
//! prime field, used to check the combinatorial rules in
//! [`crate::elliptic`].
//!
//! The curve is `y^2 = x^3 + A x + B` over `F_p`. The marked points are a
//! point `P` of exact order `t` and the identity `O`, so `P - O` has order
//! `t` in `Pic^0`. Functions with poles only at `O` are polynomials in the
//! monomials `x^i y^e` (`e` in `{0, 1}`), of pole order `2i + 3e`; these pole
//! orders are pairwise distinct, so the order at `O` of any polynomial is
//! read off its leading monomial.
//!
//! For `D = aP + bO` with `c = max(a, 0)`,
//!
//! ```text
//! L(D) = { u / (x - x_P)^c : pole_O(u) <= b + 2c, ord_{-P}(u) >= c, ord_P(u) >= max(-a, 0) }
//! ```
//!
//! since `div(x - x_P) = P + (-P) - 2O`. Orders at `P` and `-P` come from
//! power series in the uniformizer `x - x_P` (valid because `y_P != 0`).

use std::cell::RefCell;
use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::elliptic;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("torsion order {0} is not supported by the oracle (need t >= 3)")]
    UnsupportedTorsion(u32),
    #[error("no curve with a point of order {t} found within {budget} candidate curves; raise the budget")]
    BudgetExhausted { t: u32, budget: usize },
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    a * b % p
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(a % p != 0);
    pow_mod(a, p - 2, p)
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    (2..).take_while(|i| i * i <= n).all(|i| n % i != 0)
}

fn sqrt_mod(a: u64, p: u64) -> Option<u64> {
    // p is small; a linear scan keeps this obviously correct.
    (0..p).find(|&y| mul_mod(y, y, p) == a % p)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Point {
    Infinity,
    Affine(u64, u64),
}

/// An elliptic curve over `F_p` with a marked point of exact order `t`.
///
/// Carries a cache of local expansions and is therefore not `Sync`; share
/// an instance across threads only behind external serialization.
#[derive(Debug)]
pub struct CurveInstance {
    pub p: u64,
    pub a: u64,
    pub b: u64,
    pub t: u32,
    pub point: (u64, u64),
    pub group_order: u64,
    expansions: RefCell<HashMap<(bool, usize), Vec<u64>>>,
}

impl CurveInstance {
    fn rhs(&self, x: u64) -> u64 {
        curve_rhs(x, self.a, self.b, self.p)
    }

    pub fn contains(&self, pt: Point) -> bool {
        match pt {
            Point::Infinity => true,
            Point::Affine(x, y) => mul_mod(y, y, self.p) == self.rhs(x),
        }
    }

    pub fn add(&self, p1: Point, p2: Point) -> Point {
        ec_add(p1, p2, self.a, self.p)
    }

    pub fn mul(&self, n: u64, pt: Point) -> Point {
        ec_mul(n, pt, self.a, self.p)
    }

    pub fn marked(&self) -> Point {
        Point::Affine(self.point.0, self.point.1)
    }

    /// Power series of `y` at `(x_P, +-y_P)` in the uniformizer
    /// `tau = x - x_P`, truncated to `len` terms.
    fn y_series(&self, negate: bool, len: usize) -> Vec<u64> {
        if let Some(s) = self.expansions.borrow().get(&(negate, len)) {
            return s.clone();
        }
        let p = self.p;
        let x0 = self.point.0;
        let y0 = if negate { (p - self.point.1) % p } else { self.point.1 };
        // y^2 = F(tau) with F = (x0 + tau)^3 + A(x0 + tau) + B
        let f = [
            self.rhs(x0),
            (3 * mul_mod(x0, x0, p) + self.a) % p,
            3 * x0 % p,
            1,
        ];
        let inv2y = inv_mod(2 * y0 % p, p);
        let mut ys = vec![0u64; len];
        if len > 0 {
            ys[0] = y0;
        }
        for n in 1..len {
            let mut acc = if n < 4 { f[n] } else { 0 };
            for i in 1..n {
                acc = (acc + p - mul_mod(ys[i], ys[n - i], p)) % p;
            }
            ys[n] = mul_mod(acc, inv2y, p);
        }
        self.expansions
            .borrow_mut()
            .insert((negate, len), ys.clone());
        ys
    }

    /// Expansion of the monomial `x^i y^e` at `+-P`.
    fn monomial_series(&self, mono: Monomial, negate: bool, len: usize) -> Vec<u64> {
        let p = self.p;
        let x0 = self.point.0;
        // (x0 + tau)^i
        let mut xs = vec![0u64; len];
        if len > 0 {
            xs[0] = 1;
        }
        for _ in 0..mono.i {
            let mut next = vec![0u64; len];
            for n in 0..len {
                next[n] = (next[n] + mul_mod(xs[n], x0, p)) % p;
                if n + 1 < len {
                    next[n + 1] = (next[n + 1] + xs[n]) % p;
                }
            }
            xs = next;
        }
        if mono.e == 0 {
            return xs;
        }
        series_mul(&xs, &self.y_series(negate, len), p)
    }

    fn series_of(&self, u: &[u64], monos: &[Monomial], negate: bool, len: usize) -> Vec<u64> {
        let p = self.p;
        let mut out = vec![0u64; len];
        for (c, &m) in u.iter().zip(monos) {
            if *c == 0 {
                continue;
            }
            for (o, s) in out.iter_mut().zip(self.monomial_series(m, negate, len)) {
                *o = (*o + mul_mod(*c, s, p)) % p;
            }
        }
        out
    }

    /// Order of vanishing at `P` (or `-P`) of a polynomial; `None` for zero.
    fn order_at(&self, u: &[u64], monos: &[Monomial], negate: bool) -> Option<u32> {
        let len = max_pole(monos) as usize + 2;
        self.series_of(u, monos, negate, len)
            .iter()
            .position(|&c| c != 0)
            .map(|i| i as u32)
    }
}

fn curve_rhs(x: u64, a: u64, b: u64, p: u64) -> u64 {
    (mul_mod(mul_mod(x, x, p), x, p) + mul_mod(a, x, p) + b) % p
}

fn ec_add(p1: Point, p2: Point, a: u64, p: u64) -> Point {
    match (p1, p2) {
        (Point::Infinity, q) | (q, Point::Infinity) => q,
        (Point::Affine(x1, y1), Point::Affine(x2, y2)) => {
            if x1 == x2 && (y1 + y2) % p == 0 {
                return Point::Infinity;
            }
            let lambda = if x1 == x2 {
                mul_mod(
                    (3 * mul_mod(x1, x1, p) + a) % p,
                    inv_mod(2 * y1 % p, p),
                    p,
                )
            } else {
                mul_mod((y2 + p - y1) % p, inv_mod((x2 + p - x1) % p, p), p)
            };
            let x3 = (mul_mod(lambda, lambda, p) + 2 * p - x1 - x2) % p;
            let y3 = (mul_mod(lambda, (x1 + p - x3) % p, p) + p - y1) % p;
            Point::Affine(x3, y3)
        }
    }
}

fn ec_mul(mut n: u64, pt: Point, a: u64, p: u64) -> Point {
    let mut acc = Point::Infinity;
    let mut base = pt;
    while n > 0 {
        if n & 1 == 1 {
            acc = ec_add(acc, base, a, p);
        }
        base = ec_add(base, base, a, p);
        n >>= 1;
    }
    acc
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut q = 2;
    while q * q <= n {
        if n % q == 0 {
            out.push(q);
            while n % q == 0 {
                n /= q;
            }
        }
        q += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn has_exact_order(pt: Point, t: u64, a: u64, p: u64) -> bool {
    pt != Point::Infinity
        && ec_mul(t, pt, a, p) == Point::Infinity
        && prime_factors(t)
            .iter()
            .all(|q| ec_mul(t / q, pt, a, p) != Point::Infinity)
}

/// Smallest prime the search starts from.
pub const MIN_PRIME: u64 = 101;

/// Finds a curve with a point of exact order `t`, scanning primes from
/// [`MIN_PRIME`] upward and then `(A, B)` and the point's `x` in increasing
/// order. Deterministic for fixed `t`. `search_budget` bounds the number of
/// candidate `(p, A, B)` examined.
pub fn make_curve(t: u32, search_budget: usize) -> Result<CurveInstance, OracleError> {
    if t < 3 {
        return Err(OracleError::UnsupportedTorsion(t));
    }
    let t64 = t as u64;
    let mut tried = 0usize;
    let mut p = MIN_PRIME;
    loop {
        while !is_prime(p) {
            p += 1;
        }
        for a in 0..p {
            for b in 0..p {
                if tried >= search_budget {
                    return Err(OracleError::BudgetExhausted {
                        t,
                        budget: search_budget,
                    });
                }
                tried += 1;
                let disc = (4 * mul_mod(mul_mod(a, a, p), a, p) + 27 * mul_mod(b, b, p)) % p;
                if disc == 0 {
                    continue;
                }
                let order = count_points(a, b, p);
                if order % t64 != 0 {
                    continue;
                }
                for x in 0..p {
                    let Some(y) = sqrt_mod(curve_rhs(x, a, b, p), p) else {
                        continue;
                    };
                    let cand = ec_mul(order / t64, Point::Affine(x, y), a, p);
                    if let Point::Affine(px, py) = cand {
                        if py != 0 && has_exact_order(cand, t64, a, p) {
                            return Ok(CurveInstance {
                                p,
                                a,
                                b,
                                t,
                                point: (px, py),
                                group_order: order,
                                expansions: RefCell::new(HashMap::new()),
                            });
                        }
                    }
                }
            }
        }
        p += 1;
    }
}

fn count_points(a: u64, b: u64, p: u64) -> u64 {
    let mut n = 1; // identity
    for x in 0..p {
        let v = curve_rhs(x, a, b, p);
        if v == 0 {
            n += 1;
        } else if pow_mod(v, (p - 1) / 2, p) == 1 {
            n += 2;
        }
    }
    n
}

/// `x^i y^e` with `e` in `{0, 1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Monomial {
    pub i: u32,
    pub e: u32,
}

impl Monomial {
    pub fn pole(&self) -> u32 {
        2 * self.i + 3 * self.e
    }
}

fn monomials_up_to(max_pole: i64) -> Vec<Monomial> {
    if max_pole < 0 {
        return Vec::new();
    }
    let mut out: Vec<Monomial> = (0..=max_pole as u32 / 2)
        .map(|i| Monomial { i, e: 0 })
        .chain((0..).map(|i| Monomial { i, e: 1 }).take_while(|m| m.pole() as i64 <= max_pole))
        .collect();
    out.sort_by_key(|m| m.pole());
    out
}

fn max_pole(monos: &[Monomial]) -> u32 {
    monos.iter().map(|m| m.pole()).max().unwrap_or(0)
}

fn series_mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let len = a.len().min(b.len());
    let mut out = vec![0u64; len];
    for i in 0..len {
        if a[i] == 0 {
            continue;
        }
        for j in 0..len - i {
            out[i + j] = (out[i + j] + mul_mod(a[i], b[j], p)) % p;
        }
    }
    out
}

/// Reduced row echelon form in place; returns the pivot columns.
fn rref(rows: &mut [Vec<u64>], ncols: usize, p: u64) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        if row == rows.len() {
            break;
        }
        let Some(sel) = (row..rows.len()).find(|&i| rows[i][col] != 0) else {
            continue;
        };
        rows.swap(row, sel);
        let inv = inv_mod(rows[row][col], p);
        for v in rows[row].iter_mut() {
            *v = mul_mod(*v, inv, p);
        }
        for i in 0..rows.len() {
            if i != row && rows[i][col] != 0 {
                let f = rows[i][col];
                for c in 0..ncols {
                    let sub = mul_mod(f, rows[row][c], p);
                    rows[i][c] = (rows[i][c] + p - sub) % p;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    pivots
}

/// Basis of the null space of `rows` (each of length `ncols`).
fn kernel(mut rows: Vec<Vec<u64>>, ncols: usize, p: u64) -> Vec<Vec<u64>> {
    let pivots = rref(&mut rows, ncols, p);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![0u64; ncols];
            v[f] = 1;
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = (p - rows[r][f]) % p;
            }
            v
        })
        .collect()
}

/// `{u in span(monos) : ord_P(u) >= at_p, ord_{-P}(u) >= at_minus_p}`.
fn constrained_space(
    curve: &CurveInstance,
    monos: &[Monomial],
    at_p: u32,
    at_minus_p: u32,
) -> Vec<Vec<u64>> {
    if monos.is_empty() {
        return Vec::new();
    }
    let mut rows = Vec::new();
    for (negate, count) in [(false, at_p), (true, at_minus_p)] {
        if count == 0 {
            continue;
        }
        let len = count as usize;
        let cols: Vec<Vec<u64>> = monos
            .iter()
            .map(|&m| curve.monomial_series(m, negate, len))
            .collect();
        for n in 0..len {
            rows.push(cols.iter().map(|c| c[n]).collect());
        }
    }
    if rows.is_empty() {
        return (0..monos.len())
            .map(|i| {
                let mut v = vec![0u64; monos.len()];
                v[i] = 1;
                v
            })
            .collect();
    }
    kernel(rows, monos.len(), curve.p)
}

/// A basis of `L(aP + bO)`: numerators over the common denominator
/// `(x - x_P)^denom_power`.
#[derive(Debug, Clone)]
pub struct RRBasis {
    pub a: i64,
    pub b: i64,
    pub denom_power: u32,
    pub monomials: Vec<Monomial>,
    pub numerators: Vec<Vec<u64>>,
}

impl RRBasis {
    pub fn dimension(&self) -> usize {
        self.numerators.len()
    }

    /// `(ord_P f, ord_O f)` for the `idx`-th basis function.
    pub fn orders(&self, curve: &CurveInstance, idx: usize) -> (i64, i64) {
        let u = &self.numerators[idx];
        let at_p = curve
            .order_at(u, &self.monomials, false)
            .expect("basis vectors are nonzero") as i64;
        (
            at_p - self.denom_power as i64,
            -(leading_pole(u, &self.monomials) as i64) + 2 * self.denom_power as i64,
        )
    }
}

fn leading_pole(u: &[u64], monos: &[Monomial]) -> u32 {
    u.iter()
        .zip(monos)
        .filter(|(c, _)| **c != 0)
        .map(|(_, m)| m.pole())
        .max()
        .unwrap_or(0)
}

pub fn rr_space(curve: &CurveInstance, a: i64, b: i64) -> RRBasis {
    let c = a.max(0);
    let monomials = monomials_up_to(b + 2 * c);
    let numerators = constrained_space(curve, &monomials, (-a).max(0) as u32, c as u32);
    RRBasis {
        a,
        b,
        denom_power: c as u32,
        monomials,
        numerators,
    }
}

/// `h^0` of the sections of `L = kP + (d-k)O` vanishing to order at least
/// `alpha` at `P` and `beta` at `O`.
pub fn section_dim(curve: &CurveInstance, d: u32, k: u32, alpha: u32, beta: u32) -> i64 {
    let a = k as i64 - alpha as i64;
    let b = d as i64 - k as i64 - beta as i64;
    rr_space(curve, a, b).dimension() as i64
}

/// Checks the closed-form dimension rule against exact ranks on every cell
/// `0 <= alpha, beta <= d`.
pub fn verify_dim_table(curve: &CurveInstance, d: u32, k: u32) -> bool {
    dim_table_mismatches(curve, d, k).is_empty()
}

/// Cells `(alpha, beta, exact, closed_form)` where the two disagree.
pub fn dim_table_mismatches(curve: &CurveInstance, d: u32, k: u32) -> Vec<(u32, u32, i64, i64)> {
    let mut out = Vec::new();
    for alpha in 0..=d {
        for beta in 0..=d {
            let exact = section_dim(curve, d, k, alpha, beta);
            let formula = elliptic::dim_f(alpha, beta, k, curve.t, d);
            if exact != formula {
                out.push((alpha, beta, exact, formula));
            }
        }
    }
    out
}

/// Whether a section of `L = kP + (d-k)O` with orders exactly `alpha` at
/// `P` and `beta` at `O` exists. A vector space is never the union of two
/// proper subspaces, so this is three rank comparisons.
pub fn exact_pair_oracle(curve: &CurveInstance, d: u32, k: u32, alpha: u32, beta: u32) -> bool {
    let here = section_dim(curve, d, k, alpha, beta);
    here > section_dim(curve, d, k, alpha + 1, beta) && here > section_dim(curve, d, k, alpha, beta + 1)
}

/// An explicit `g^r_d`: numerators of `r + 1` sections of `L = kP + (d-k)O`
/// over the denominator `(x - x_P)^k`, and the vanishing sequences of their
/// span computed independently of how they were built.
#[derive(Debug, Clone)]
pub struct Realization {
    pub monomials: Vec<Monomial>,
    pub sections: Vec<Vec<u64>>,
    pub seq_at_p: Vec<u32>,
    pub seq_at_o: Vec<u32>,
}

/// Builds a `g^r_d` with vanishing sequence `a` at `P` and `b` at `O` by
/// taking, for each `j`, a section with orders exactly `(a_j, b_{r-j})`.
/// Returns `None` when some pair has no exact section or the span's
/// sequences come out different from `(a, b)`.
pub fn realize(curve: &CurveInstance, d: u32, k: u32, a: &[u32], b: &[u32]) -> Option<Realization> {
    if a.len() != b.len() || a.is_empty() {
        return None;
    }
    let r = a.len() - 1;
    let top = (d + k) as i64;
    let monomials = monomials_up_to(top);
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed ^ ((d as u64) << 32) ^ k as u64);
    let mut sections = Vec::with_capacity(r + 1);
    for j in 0..=r {
        let (alpha, beta) = (a[j], b[r - j]);
        if !exact_pair_oracle(curve, d, k, alpha, beta) {
            return None;
        }
        let limit = top - beta as i64;
        let monos: Vec<Monomial> = monomials
            .iter()
            .copied()
            .filter(|m| m.pole() as i64 <= limit)
            .collect();
        let basis = constrained_space(curve, &monos, alpha, k);
        let target_pole = limit as u32;
        let mut found = None;
        for _ in 0..256 {
            let mut u = vec![0u64; monos.len()];
            for v in &basis {
                let c = rng.gen_range(0..curve.p);
                for (ui, vi) in u.iter_mut().zip(v) {
                    *ui = (*ui + mul_mod(c, *vi, curve.p)) % curve.p;
                }
            }
            if u.iter().all(|&c| c == 0) {
                continue;
            }
            if curve.order_at(&u, &monos, false) == Some(alpha) && leading_pole(&u, &monos) == target_pole {
                found = Some(u);
                break;
            }
        }
        let mut u = found?;
        u.resize(monomials.len(), 0);
        sections.push(u);
    }
    let seq_at_p = span_orders_at_p(curve, &sections, &monomials);
    let seq_at_o = span_orders_at_o(&sections, &monomials, d + k, curve.p);
    if seq_at_p != a || seq_at_o != b {
        return None;
    }
    Some(Realization {
        monomials,
        sections,
        seq_at_p,
        seq_at_o,
    })
}

/// Distinct orders at `P` attained by the span of `sections`.
pub fn span_orders_at_p(curve: &CurveInstance, sections: &[Vec<u64>], monos: &[Monomial]) -> Vec<u32> {
    let len = max_pole(monos) as usize + 2;
    let mut rows: Vec<Vec<u64>> = sections
        .iter()
        .map(|u| curve.series_of(u, monos, false, len))
        .collect();
    rref(&mut rows, len, curve.p)
        .into_iter()
        .map(|c| c as u32)
        .collect()
}

/// Distinct orders at `O` attained by the span, for sections of a bundle
/// whose numerators have pole order at most `top`.
pub fn span_orders_at_o(sections: &[Vec<u64>], monos: &[Monomial], top: u32, p: u64) -> Vec<u32> {
    // columns by decreasing pole order, so pivots are leading monomials
    let mut order: Vec<usize> = (0..monos.len()).collect();
    order.sort_by_key(|&i| std::cmp::Reverse(monos[i].pole()));
    let mut rows: Vec<Vec<u64>> = sections
        .iter()
        .map(|u| order.iter().map(|&i| u[i]).collect())
        .collect();
    let mut out: Vec<u32> = rref(&mut rows, order.len(), p)
        .into_iter()
        .map(|c| top - monos[order[c]].pole())
        .collect();
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const BUDGET: usize = 200_000;

    #[test]
    fn torsion_two_is_rejected() {
        assert_eq!(make_curve(2, BUDGET).unwrap_err(), OracleError::UnsupportedTorsion(2));
    }

    #[test]
    fn budget_is_reported() {
        assert!(matches!(
            make_curve(3, 0),
            Err(OracleError::BudgetExhausted { t: 3, budget: 0 })
        ));
    }

    #[test]
    fn marked_point_has_exact_order() {
        for t in 3..=9 {
            let c = make_curve(t, BUDGET).unwrap();
            assert!(c.p >= MIN_PRIME);
            assert!(c.contains(c.marked()));
            assert_ne!(c.point.1, 0);
            assert_eq!(c.mul(t as u64, c.marked()), Point::Infinity);
            for m in 1..t as u64 {
                assert_ne!(c.mul(m, c.marked()), Point::Infinity, "t={t} m={m}");
            }
            assert_eq!(c.mul(c.group_order, c.marked()), Point::Infinity);
        }
    }

    #[test]
    fn make_curve_is_deterministic() {
        let a = make_curve(5, BUDGET).unwrap();
        let b = make_curve(5, BUDGET).unwrap();
        assert_eq!((a.p, a.a, a.b, a.point), (b.p, b.a, b.b, b.point));
    }

    #[test]
    fn polar_spaces_have_expected_dimension() {
        let c = make_curve(5, BUDGET).unwrap();
        for d in 1..10 {
            assert_eq!(rr_space(&c, 0, d).dimension(), d as usize);
            for k in 0..=d {
                assert_eq!(rr_space(&c, k, d - k).dimension(), d as usize, "k={k} d={d}");
            }
        }
        assert_eq!(rr_space(&c, 0, 0).dimension(), 1);
        assert_eq!(rr_space(&c, 0, -1).dimension(), 0);
    }

    #[test]
    fn degree_zero_follows_triviality() {
        for t in 3..=6u32 {
            let c = make_curve(t, BUDGET).unwrap();
            for a in -12i64..=12 {
                let dim = rr_space(&c, a, -a).dimension();
                assert_eq!(dim, (a.rem_euclid(t as i64) == 0) as usize, "t={t} a={a}");
            }
        }
    }

    #[test]
    fn division_function_has_the_right_divisor() {
        let c = make_curve(4, BUDGET).unwrap();
        let basis = rr_space(&c, 4, -4);
        assert_eq!(basis.dimension(), 1);
        assert_eq!(basis.orders(&c, 0), (-4, 4));
    }

    #[test]
    fn basis_orders_respect_the_divisor() {
        for t in [3u32, 4, 5] {
            let c = make_curve(t, BUDGET).unwrap();
            for a in -3i64..8 {
                for b in -3i64..8 {
                    let basis = rr_space(&c, a, b);
                    for i in 0..basis.dimension() {
                        let (op, oo) = basis.orders(&c, i);
                        assert!(op + a >= 0 && oo + b >= 0);
                        let total = op + a + oo + b;
                        assert!(total <= a + b);
                        if total == a + b {
                            // divisor supported on {P, O}: principal, so t | ord_P
                            assert_eq!(op.rem_euclid(t as i64), 0, "a={a} b={b}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn dim_table_examples() {
        let c4 = make_curve(4, BUDGET).unwrap();
        assert!(verify_dim_table(&c4, 4, 2));
        assert_eq!(section_dim(&c4, 4, 2, 2, 2), 1);
        assert_eq!(section_dim(&c4, 4, 2, 3, 1), 0);
        let c5 = make_curve(5, BUDGET).unwrap();
        assert!(verify_dim_table(&c5, 3, 4));
        for d in 1..6 {
            assert_eq!(section_dim(&c5, d, 1, 0, 0), d as i64);
        }
    }

    #[test]
    fn exact_pair_examples() {
        let c5 = make_curve(5, BUDGET).unwrap();
        assert!(!exact_pair_oracle(&c5, 5, 1, 1, 3));
        assert!(exact_pair_oracle(&c5, 5, 1, 0, 0));
        assert!(exact_pair_oracle(&c5, 5, 0, 0, 5));
    }

    #[test]
    fn realize_builds_exact_sequences() {
        let c = make_curve(3, BUDGET).unwrap();
        // nu = (0, 0) needs both orders at P congruent to k
        let real = realize(&c, 6, 0, &[0, 3], &[3, 6]).expect("feasible");
        assert_eq!(real.seq_at_p, vec![0, 3]);
        assert_eq!(real.seq_at_o, vec![3, 6]);
        assert_eq!(real.sections.len(), 2);
        assert!(realize(&c, 6, 1, &[0, 3], &[3, 6]).is_none());
        let real = realize(&c, 4, 2, &[0, 1, 2], &[0, 1, 2]).expect("all nu >= 2");
        assert_eq!(real.seq_at_o, vec![0, 1, 2]);
    }
}
