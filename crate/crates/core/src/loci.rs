//! Torsion thresholds and existence ranges for two-bridge chains, and the
//! Brill-Noether loci of a fixed genus they separate.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bn::{self, BnError, GrdParams};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LociError {
    #[error(transparent)]
    Params(#[from] BnError),
    #[error("g = {g} but g1 + g2 + 2 = {}", g1 + g2 + 2)]
    GenusSplit { g: u32, g1: u32, g2: u32 },
    #[error("need g1 >= g2 >= 2, got ({g1}, {g2})")]
    SplitOrder { g1: u32, g2: u32 },
    #[error("torsion order must be at least 2, got {0}")]
    Torsion(u32),
    #[error("rho = {0} is outside the supported range")]
    Rho(i64),
    #[error("hypothesis not met: {0}")]
    Hypothesis(String),
}

/// A Brill-Noether locus `M^r_{g,d}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LocusId {
    pub g: u32,
    pub r: u32,
    pub d: u32,
}

impl LocusId {
    pub fn new(g: u32, r: u32, d: u32) -> Result<Self, LociError> {
        GrdParams::new(g, r, d)?;
        Ok(LocusId { g, r, d })
    }

    pub fn rho(&self) -> i64 {
        bn::rho(self.g, self.r, self.d)
    }

    /// Replaces a series of degree above `g - 1` by its residual.
    pub fn normalize(self) -> Self {
        if self.d + 1 <= self.g || self.d > 2 * self.g - 2 || self.g + self.r <= self.d {
            return self;
        }
        LocusId {
            g: self.g,
            r: self.g + self.r - self.d - 1,
            d: 2 * self.g - 2 - self.d,
        }
    }
}

impl fmt::Display for LocusId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "M^{}_{{{},{}}}", self.r, self.g, self.d)
    }
}

/// The locus of `TCBE(g1, g2; 2, t)` curves.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TcbeFamily {
    pub g1: u32,
    pub g2: u32,
    pub t: u32,
}

impl TcbeFamily {
    pub fn new(g1: u32, g2: u32, t: u32) -> Result<Self, LociError> {
        if g2 < 2 || g1 < g2 {
            return Err(LociError::SplitOrder { g1, g2 });
        }
        if t < 2 {
            return Err(LociError::Torsion(t));
        }
        Ok(TcbeFamily { g1, g2, t })
    }

    pub fn g(&self) -> u32 {
        self.g1 + self.g2 + 2
    }
}

impl fmt::Display for TcbeFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Δ({},{};2,{})", self.g1, self.g2, self.t)
    }
}

/// A set of torsion orders: an interval, optionally restricted to one
/// residue mod 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorsionSet {
    pub lo: u32,
    pub hi: u32,
    pub parity: Option<u32>,
}

impl TorsionSet {
    fn interval(lo: i64, hi: i64) -> Self {
        let lo = lo.max(0) as u32;
        TorsionSet {
            lo,
            hi: hi.max(-1).max(lo as i64 - 1) as u32,
            parity: None,
        }
        .tighten()
    }

    fn with_parity(lo: i64, hi: i64, residue: u32) -> Self {
        let mut s = TorsionSet::interval(lo, hi);
        s.parity = Some(residue % 2);
        s.tighten()
    }

    // Moves the ends onto members so equal sets compare equal.
    fn tighten(mut self) -> Self {
        if let Some(p) = self.parity {
            if self.lo % 2 != p {
                self.lo += 1;
            }
            if self.hi % 2 != p && self.hi > 0 {
                self.hi -= 1;
            }
        }
        if self.hi < self.lo {
            return TorsionSet {
                lo: 1,
                hi: 0,
                parity: None,
            };
        }
        self
    }

    pub fn is_empty(&self) -> bool {
        self.hi < self.lo
    }

    pub fn contains(&self, t: u32) -> bool {
        t >= self.lo && t <= self.hi && self.parity.map_or(true, |p| t % 2 == p)
    }

    pub fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        (self.lo..=self.hi).filter(move |&t| self.contains(t))
    }

    pub fn min(&self) -> Option<u32> {
        (!self.is_empty()).then_some(self.lo)
    }

    pub fn max(&self) -> Option<u32> {
        (!self.is_empty()).then_some(self.hi)
    }
}

impl fmt::Display for TorsionSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("none");
        }
        write!(f, "{} <= t <= {}", self.lo, self.hi)?;
        match self.parity {
            Some(0) => f.write_str(", t even"),
            Some(_) => f.write_str(", t odd"),
            None => Ok(()),
        }
    }
}

fn check_split(g: u32, g1: u32, g2: u32) -> Result<(), LociError> {
    if g2 < 2 || g1 < g2 {
        return Err(LociError::SplitOrder { g1, g2 });
    }
    if g1 + g2 + 2 != g {
        return Err(LociError::GenusSplit { g, g1, g2 });
    }
    Ok(())
}

fn setup(g: u32, r: u32, d: u32, g1: u32, g2: u32) -> Result<(i64, i64, i64), LociError> {
    GrdParams::new(g, r, d)?;
    check_split(g, g1, g2)?;
    let delta = (g1 - g2) as i64;
    let kron = i64::from(g1 == g2);
    Ok((bn::rho(g, r, d), delta, kron))
}

/// Smallest `T` such that no limit `g^r_d` exists on `TCBE(g1, g2; 2, t)`
/// for `t >= T`. Only meaningful for `t >= 4`.
pub fn nonexistence_threshold(g: u32, r: u32, d: u32, g1: u32, g2: u32) -> Result<u32, LociError> {
    let (rho, delta, kron) = setup(g, r, d, g1, g2)?;
    let base = g as i64 - d as i64 + 2 * r as i64 + delta + kron;
    let t = match rho {
        -1 => base,
        rho if rho <= -2 => {
            let num = 2 * (base - 2);
            let den = -rho;
            // ceiling of num / den, exact
            num.div_euclid(den) + i64::from(num.rem_euclid(den) != 0)
        }
        rho => return Err(LociError::Rho(rho)),
    };
    Ok(t.max(0) as u32)
}

/// The threshold in the closed form `g - d + 2r + 2(1 + rho) + (g1 - g2) +
/// delta`, valid for `rho` in `{-1, -2}`.
pub fn threshold_closed_form(g: u32, r: u32, d: u32, g1: u32, g2: u32) -> Result<u32, LociError> {
    let (rho, delta, kron) = setup(g, r, d, g1, g2)?;
    if rho != -1 && rho != -2 {
        return Err(LociError::Rho(rho));
    }
    Ok((g as i64 - d as i64 + 2 * r as i64 + 2 * (1 + rho) + delta + kron) as u32)
}

/// Pencil threshold in the form `g - d + (g1 - g2) + delta` (`r = 1`,
/// `rho = -2`).
pub fn pencil_threshold(g: u32, d: u32, g1: u32, g2: u32) -> Result<u32, LociError> {
    let (rho, delta, kron) = setup(g, 1, d, g1, g2)?;
    if rho != -2 {
        return Err(LociError::Rho(rho));
    }
    Ok((g as i64 - d as i64 + delta + kron) as u32)
}

/// Torsion orders for which a smoothable limit `g^r_d` exists, for
/// `rho` in `{-1, -2}`.
pub fn existence_range(g: u32, r: u32, d: u32, g1: u32, g2: u32) -> Result<TorsionSet, LociError> {
    let (rho, delta, _) = setup(g, r, d, g1, g2)?;
    if rho != -1 && rho != -2 {
        return Err(LociError::Rho(rho));
    }
    Ok(if r == 1 {
        TorsionSet::with_parity(2, g2 as i64 + 3 + rho, g1 + 1)
    } else {
        TorsionSet::interval(
            r as i64 + 3 + delta,
            g as i64 - d as i64 + 2 * r as i64 + rho,
        )
    })
}

/// The pencil range written as `t <= g - d + 3 + 3 rho / 2 - (g1 - g2) / 2`
/// with the parity condition; evaluated in doubled integers.
pub fn pencil_range(g: u32, d: u32, g1: u32, g2: u32) -> Result<TorsionSet, LociError> {
    let (rho, delta, _) = setup(g, 1, d, g1, g2)?;
    if rho != -1 && rho != -2 {
        return Err(LociError::Rho(rho));
    }
    let twice = 2 * (g as i64 - d as i64 + 3) + 3 * rho - delta;
    Ok(TorsionSet::with_parity(2, twice.div_euclid(2), g1 + 1))
}

/// Lower end of the older existence range for `r >= 2`.
pub fn tmin(r: u32, g1: u32, g2: u32, d: u32, h: u32) -> Result<u32, LociError> {
    if h > 1 {
        return Err(LociError::Hypothesis(format!("h = {h} not in {{0, 1}}")));
    }
    if g2 < 2 || g1 < g2 + h {
        return Err(LociError::Hypothesis(format!(
            "need g1 - h >= g2 >= 2, got ({g1}, {g2}), h = {h}"
        )));
    }
    let delta = g1 - g2;
    if r % 2 == 0 {
        return Ok(r + 2 + delta);
    }
    if (delta + h) % 2 != 0 {
        return Err(LociError::Hypothesis(format!(
            "odd r needs g1 - g2 + h even, got {}",
            delta + h
        )));
    }
    let half = (delta + h) / 2;
    Ok(if (d + 2 + half) % 2 == 1 {
        r + 2 + half
    } else {
        r + 3 + half
    })
}

/// The older existence range, for `rho = -2 + h` with `h` in `{0, 1}` and
/// `g1 - h >= g2 >= 2`.
pub fn existence_range_sk(g: u32, r: u32, d: u32, g1: u32, g2: u32) -> Result<TorsionSet, LociError> {
    let (rho, _, _) = setup(g, r, d, g1, g2)?;
    if rho != -1 && rho != -2 {
        return Err(LociError::Rho(rho));
    }
    let h = (rho + 2) as u32;
    if g1 < g2 + h {
        return Err(LociError::Hypothesis(format!(
            "need g1 - h >= g2, got ({g1}, {g2}), h = {h}"
        )));
    }
    Ok(if r == 1 {
        TorsionSet::with_parity(2, (g2 + h + 1) as i64, g1 + 1)
    } else {
        TorsionSet::interval(
            tmin(r, g1, g2, d, h)? as i64,
            g as i64 - d as i64 + 2 * r as i64 - 2 + h as i64,
        )
    })
}

/// All loci `M^r_{g,d}` with `r >= 1`, `d <= g - 1` and `rho` in
/// `rho_targets`, ordered by `r`.
pub fn enumerate_loci(g: u32, rho_targets: &[i64]) -> Vec<LocusId> {
    let mut out = Vec::new();
    for r in 1..g {
        for d in r..g {
            if rho_targets.contains(&bn::rho(g, r, d)) {
                out.push(LocusId { g, r, d });
            }
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Membership {
    /// `t` lies in the existence range.
    In,
    /// `t >= 4` and `t` is at or above the nonexistence threshold.
    Out,
    /// Neither formula applies.
    Gap,
}

pub fn classify(locus: &LocusId, family: &TcbeFamily) -> Result<Membership, LociError> {
    let LocusId { g, r, d } = *locus;
    let TcbeFamily { g1, g2, t } = *family;
    if existence_range(g, r, d, g1, g2)?.contains(t) {
        return Ok(Membership::In);
    }
    if t >= 4 && t >= nonexistence_threshold(g, r, d, g1, g2)? {
        return Ok(Membership::Out);
    }
    Ok(Membership::Gap)
}

/// `members ⊂ ∩ inside − ∪ outside`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Statement {
    pub members: Vec<TcbeFamily>,
    pub inside: Vec<LocusId>,
    pub outside: Vec<LocusId>,
}

impl fmt::Display for Statement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let same_split = self
            .members
            .windows(2)
            .all(|w| (w[0].g1, w[0].g2) == (w[1].g1, w[1].g2));
        if same_split && self.members.len() > 1 {
            let m = self.members[0];
            let ts: Vec<String> = self.members.iter().map(|m| m.t.to_string()).collect();
            write!(f, "Δ({},{};2,t), t ∈ {{{}}}", m.g1, m.g2, ts.join(","))?;
        } else {
            let ms: Vec<String> = self.members.iter().map(|m| m.to_string()).collect();
            f.write_str(&ms.join(" ∪ "))?;
        }
        let join = |v: &[LocusId], sep: &str| {
            v.iter().map(|l| l.to_string()).collect::<Vec<_>>().join(sep)
        };
        write!(f, " ⊂ ")?;
        if self.inside.len() == 1 {
            write!(f, "{}", self.inside[0])?;
        } else {
            write!(f, "({})", join(&self.inside, " ∩ "))?;
        }
        match self.outside.len() {
            0 => Ok(()),
            1 => write!(f, " − {}", self.outside[0]),
            _ => write!(f, " − ({})", join(&self.outside, " ∪ ")),
        }
    }
}

/// What the formulas assert about a union of families: the loci containing
/// every member and the loci excluding every member. `None` when no locus
/// contains all members.
pub fn union_statement(g: u32, members: &[TcbeFamily]) -> Result<Option<Statement>, LociError> {
    if members.is_empty() {
        return Ok(None);
    }
    for m in members {
        check_split(g, m.g1, m.g2)?;
    }
    let loci = enumerate_loci(g, &[-1, -2]);
    let mut inside = Vec::new();
    let mut outside = Vec::new();
    for l in &loci {
        let marks: Vec<Membership> = members
            .iter()
            .map(|m| classify(l, m))
            .collect::<Result<_, _>>()?;
        if marks.iter().all(|&m| m == Membership::In) {
            inside.push(*l);
        } else if marks.iter().all(|&m| m == Membership::Out) {
            outside.push(*l);
        }
    }
    if inside.is_empty() {
        return Ok(None);
    }
    let mut members = members.to_vec();
    members.sort_by_key(|m| (m.g1, m.t));
    members.dedup();
    Ok(Some(Statement {
        members,
        inside,
        outside,
    }))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationRow {
    pub t: u32,
    pub marks: Vec<Membership>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationReport {
    pub g: u32,
    pub g1: u32,
    pub g2: u32,
    pub loci: Vec<LocusId>,
    pub rows: Vec<RelationRow>,
    pub statements: Vec<Statement>,
}

/// Classifies every locus with `rho` in `{-1, -2}` for each torsion order up
/// to the largest threshold, and merges orders with identical in/out sets
/// into one statement.
pub fn relation_report(g: u32, g1: u32, g2: u32) -> Result<RelationReport, LociError> {
    check_split(g, g1, g2)?;
    let loci = enumerate_loci(g, &[-1, -2]);
    let mut top = 4;
    for l in &loci {
        top = top.max(nonexistence_threshold(g, l.r, l.d, g1, g2)?);
        if let Some(hi) = existence_range(g, l.r, l.d, g1, g2)?.max() {
            top = top.max(hi);
        }
    }
    let mut rows = Vec::new();
    let mut groups: Vec<(BTreeSet<LocusId>, BTreeSet<LocusId>, Vec<TcbeFamily>)> = Vec::new();
    for t in 2..=top {
        let fam = TcbeFamily::new(g1, g2, t)?;
        let marks: Vec<Membership> = loci
            .iter()
            .map(|l| classify(l, &fam))
            .collect::<Result<_, _>>()?;
        let pick = |want| {
            loci.iter()
                .zip(&marks)
                .filter(|(_, &m)| m == want)
                .map(|(l, _)| *l)
                .collect::<BTreeSet<_>>()
        };
        let (inside, outside) = (pick(Membership::In), pick(Membership::Out));
        if !inside.is_empty() {
            match groups
                .iter_mut()
                .find(|(i, o, _)| *i == inside && *o == outside)
            {
                Some(group) => group.2.push(fam),
                None => groups.push((inside, outside, vec![fam])),
            }
        }
        rows.push(RelationRow { t, marks });
    }
    let order = |s: &BTreeSet<LocusId>| {
        let mut v: Vec<LocusId> = s.iter().copied().collect();
        v.sort_by_key(|l| (l.rho(), l.r));
        v.reverse();
        v.sort_by_key(|l| l.r);
        v
    };
    let statements = groups
        .into_iter()
        .map(|(i, o, members)| Statement {
            members,
            inside: order(&i),
            outside: order(&o),
        })
        .collect();
    Ok(RelationReport {
        g,
        g1,
        g2,
        loci,
        rows,
        statements,
    })
}

/// `(ceil((g - 2) / 2), floor((g - 2) / 2))`.
pub fn balanced_split(g: u32) -> (u32, u32) {
    let h = g - 2;
    (h - h / 2, h / 2)
}

/// A torsion order at which the balanced two-bridge family lies in one
/// locus and outside another.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeparationCertificate {
    pub t: u32,
    pub g1: u32,
    pub g2: u32,
    /// `r + 4`, the smallest order the existence side covers.
    pub lower_bound: u32,
    /// Nonexistence threshold of the excluded locus.
    pub threshold: u32,
    pub certified: bool,
}

fn separation(g: u32, r: u32, s: u32, e: u32, t: u32) -> Result<SeparationCertificate, LociError> {
    let (g1, g2) = balanced_split(g);
    let threshold = nonexistence_threshold(g, s, e, g1, g2)?;
    let lower_bound = r + 4;
    Ok(SeparationCertificate {
        t,
        g1,
        g2,
        lower_bound,
        threshold,
        certified: t >= lower_bound && t >= threshold,
    })
}

/// For `rho(g, r, d) = rho(g, s, e) = -2` with `s > r >= 2` and
/// `d, e <= g - 1`: the order `t = g - d + 2r - 2` at which the balanced
/// family lies in `M^r_{g,d}` but not in `M^s_{g,e}`.
pub fn distinct_support_pair(
    g: u32,
    r: u32,
    d: u32,
    s: u32,
    e: u32,
) -> Result<Option<SeparationCertificate>, LociError> {
    GrdParams::new(g, r, d)?;
    GrdParams::new(g, s, e)?;
    if bn::rho(g, r, d) != -2 || bn::rho(g, s, e) != -2 {
        return Err(LociError::Hypothesis("both loci need rho = -2".into()));
    }
    if r < 2 || s <= r {
        return Err(LociError::Hypothesis(format!("need s > r >= 2, got r = {r}, s = {s}")));
    }
    if d + 1 > g || e + 1 > g {
        return Err(LociError::Hypothesis("need d, e <= g - 1".into()));
    }
    if e == d || e + d == 2 * g - 2 {
        return Ok(None);
    }
    let t = g - d + 2 * r - 2;
    separation(g, r, s, e, t).map(Some)
}

/// For `rho(g, r, d) = -2`, `rho(g, s, e) = -1` and `r >= 2`: the order at
/// which the balanced family lies in `M^r_{g,d}` but not in the divisor
/// `M^s_{g,e}`. Applies when `e - 2s >= d - 2r + 3`, or when `r = 2`,
/// `s >= 2` and `g >= 34` (order `g - d + 2`).
pub fn not_in_divisor(
    g: u32,
    r: u32,
    d: u32,
    s: u32,
    e: u32,
) -> Result<Option<SeparationCertificate>, LociError> {
    GrdParams::new(g, r, d)?;
    GrdParams::new(g, s, e)?;
    if bn::rho(g, r, d) != -2 || bn::rho(g, s, e) != -1 {
        return Err(LociError::Hypothesis(
            "need rho(g,r,d) = -2 and rho(g,s,e) = -1".into(),
        ));
    }
    if r < 2 {
        return Err(LociError::Hypothesis(format!("need r >= 2, got {r}")));
    }
    let gap = e as i64 - 2 * s as i64 - (d as i64 - 2 * r as i64);
    if gap >= 3 {
        return separation(g, r, s, e, g - d + 2 * r - 2).map(Some);
    }
    if r == 2 && s >= 2 && g >= 34 {
        return separation(g, r, s, e, g - d + 2).map(Some);
    }
    Ok(None)
}

/// Dimension of the family of two-bridge chains of genus `g`.
pub fn family_dimension(g: u32) -> Result<u32, LociError> {
    if g < 4 {
        return Err(LociError::Hypothesis(format!("need g >= 4, got {g}")));
    }
    Ok(3 * g - 8)
}

/// `dim M_{g,n} = 3g - 3 + n`.
pub fn moduli_dimension(g: u32, n: u32) -> i64 {
    3 * g as i64 - 3 + n as i64
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    pub locus: LocusId,
    pub g1: u32,
    pub g2: u32,
    pub range: TorsionSet,
    pub threshold: u32,
}

/// Existence range and threshold of every locus with `rho` in `{-1, -2}` at
/// each split; `r >= 2` loci first, then pencils.
pub fn table_rows(g: u32, splits: &[(u32, u32)]) -> Result<(Vec<TableRow>, Vec<TableRow>), LociError> {
    let loci = enumerate_loci(g, &[-1, -2]);
    let mut nets = Vec::new();
    let mut pencils = Vec::new();
    for l in &loci {
        for &(g1, g2) in splits {
            let row = TableRow {
                locus: *l,
                g1,
                g2,
                range: existence_range(g, l.r, l.d, g1, g2)?,
                threshold: nonexistence_threshold(g, l.r, l.d, g1, g2)?,
            };
            if l.r == 1 {
                pencils.push(row);
            } else {
                nets.push(row);
            }
        }
    }
    Ok((nets, pencils))
}

fn md_table(out: &mut String, rows: &[TableRow]) {
    let header = ["locus", "(g1,g2)", "existence range", "nonexistence threshold"];
    let cells: Vec<[String; 4]> = rows
        .iter()
        .map(|r| {
            [
                r.locus.to_string(),
                format!("({},{})", r.g1, r.g2),
                r.range.to_string(),
                r.threshold.to_string(),
            ]
        })
        .collect();
    let mut width = header.map(|h| h.chars().count());
    for c in &cells {
        for (w, s) in width.iter_mut().zip(c) {
            *w = (*w).max(s.chars().count());
        }
    }
    let line = |out: &mut String, c: &[String]| {
        out.push('|');
        for (s, w) in c.iter().zip(width) {
            let pad = w - s.chars().count();
            out.push_str(&format!(" {s}{} |", " ".repeat(pad)));
        }
        out.push('\n');
    };
    line(out, &header.map(String::from));
    out.push('|');
    for w in width {
        out.push_str(&format!("{}|", "-".repeat(w + 2)));
    }
    out.push('\n');
    for c in &cells {
        line(out, c);
    }
}

/// Markdown rendering of [`table_rows`].
pub fn render_tables_md(g: u32, splits: &[(u32, u32)]) -> Result<String, LociError> {
    let (nets, pencils) = table_rows(g, splits)?;
    let mut out = String::new();
    out.push_str(&format!("Table 1: genus {g}, r >= 2\n\n"));
    md_table(&mut out, &nets);
    out.push_str(&format!("\nTable 2: genus {g}, r = 1\n\n"));
    md_table(&mut out, &pencils);
    Ok(out)
}

/// CSV rendering of [`table_rows`]. Empty ranges leave `t_min` and `t_max`
/// blank.
pub fn render_tables_csv(g: u32, splits: &[(u32, u32)]) -> Result<String, LociError> {
    let (nets, pencils) = table_rows(g, splits)?;
    let mut out = String::from("table,g,r,d,rho,g1,g2,t_min,t_max,parity,threshold\n");
    for (table, rows) in [(1, &nets), (2, &pencils)] {
        for row in rows {
            let l = row.locus;
            let (lo, hi) = match (row.range.min(), row.range.max()) {
                (Some(a), Some(b)) => (a.to_string(), b.to_string()),
                _ => (String::new(), String::new()),
            };
            let parity = match row.range.parity {
                None => "any",
                Some(0) => "even",
                Some(_) => "odd",
            };
            out.push_str(&format!(
                "{table},{},{},{},{},{},{},{lo},{hi},{parity},{}\n",
                l.g,
                l.r,
                l.d,
                l.rho(),
                row.g1,
                row.g2,
                row.threshold
            ));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn set(v: &TorsionSet) -> Vec<u32> {
        v.iter().collect()
    }

    #[test]
    fn thresholds_at_34() {
        let cases = [
            ((2, 24), (13, 14)),
            ((3, 28), (11, 12)),
            ((4, 31), (12, 13)),
            ((5, 33), (10, 11)),
            ((1, 17), (18, 19)),
        ];
        for ((r, d), (a, b)) in cases {
            assert_eq!(nonexistence_threshold(34, r, d, 16, 16).unwrap(), a, "{r} {d}");
            assert_eq!(nonexistence_threshold(34, r, d, 17, 15).unwrap(), b, "{r} {d}");
            assert_eq!(threshold_closed_form(34, r, d, 16, 16).unwrap(), a);
            assert_eq!(threshold_closed_form(34, r, d, 17, 15).unwrap(), b);
        }
        assert_eq!(pencil_threshold(34, 17, 16, 16).unwrap(), 18);
        assert_eq!(pencil_threshold(34, 17, 17, 15).unwrap(), 19);
        assert!(matches!(
            nonexistence_threshold(10, 1, 6, 4, 4),
            Err(LociError::Rho(_))
        ));
        assert!(nonexistence_threshold(34, 2, 24, 15, 16).is_err());
        assert!(nonexistence_threshold(34, 2, 24, 16, 15).is_err());
    }

    #[test]
    fn ranges_at_34() {
        let r = |r, d, g1, g2| existence_range(34, r, d, g1, g2).unwrap();
        assert_eq!(set(&r(2, 24, 16, 16)), (5..=12).collect::<Vec<_>>());
        assert_eq!(set(&r(3, 28, 16, 16)), (6..=10).collect::<Vec<_>>());
        assert_eq!(set(&r(4, 31, 16, 16)), (7..=10).collect::<Vec<_>>());
        assert_eq!(set(&r(5, 33, 16, 16)), vec![8, 9]);
        assert_eq!(set(&r(2, 24, 17, 15)), (7..=12).collect::<Vec<_>>());
        assert_eq!(set(&r(3, 28, 17, 15)), (8..=10).collect::<Vec<_>>());
        assert_eq!(set(&r(4, 31, 17, 15)), (9..=10).collect::<Vec<_>>());
        assert!(r(5, 33, 17, 15).is_empty());
        assert_eq!(set(&r(1, 17, 16, 16)), (3..=17).step_by(2).collect::<Vec<_>>());
        assert_eq!(set(&r(1, 17, 17, 15)), (2..=16).step_by(2).collect::<Vec<_>>());
        assert_eq!(set(&existence_range(6, 1, 3, 2, 2).unwrap()), vec![3]);
        assert_eq!(r(1, 17, 16, 16).to_string(), "3 <= t <= 17, t odd");
        assert_eq!(r(5, 33, 17, 15).to_string(), "none");
    }

    #[test]
    fn older_range() {
        assert_eq!(tmin(2, 16, 16, 24, 0).unwrap(), 4);
        // r = 3, g1 - g2 = 2, h = 0: d + 2 + 1 odd picks r + 2 + 1
        assert_eq!(tmin(3, 17, 15, 28, 0).unwrap(), 6);
        assert_eq!(tmin(3, 17, 15, 27, 0).unwrap(), 7);
        assert!(tmin(3, 16, 15, 28, 0).is_err());
        let sk = existence_range_sk(34, 2, 24, 16, 16).unwrap();
        assert_eq!((sk.min(), sk.max()), (Some(4), Some(12)));
        assert!(existence_range_sk(34, 4, 31, 16, 16).is_err());
    }

    #[test]
    fn loci_of_34() {
        let m2 = enumerate_loci(34, &[-2]);
        let pairs: Vec<(u32, u32)> = m2.iter().map(|l| (l.r, l.d)).collect();
        assert_eq!(pairs, vec![(1, 17), (2, 24), (3, 28), (5, 33)]);
        let m1: Vec<(u32, u32)> = enumerate_loci(34, &[-1]).iter().map(|l| (l.r, l.d)).collect();
        assert_eq!(m1, vec![(4, 31)]);
        let small: Vec<(u32, u32)> = enumerate_loci(6, &[-2]).iter().map(|l| (l.r, l.d)).collect();
        assert_eq!(small, vec![(1, 3)]);
    }

    #[test]
    fn normalize_dual() {
        let l = LocusId::new(34, 12, 42).unwrap();
        let n = l.normalize();
        assert_eq!(n.rho(), l.rho());
        assert!(n.d <= 33);
        assert_eq!(LocusId::new(34, 2, 24).unwrap().normalize().d, 24);
    }

    #[test]
    fn separation_examples() {
        let c = distinct_support_pair(34, 2, 24, 3, 28).unwrap().unwrap();
        assert_eq!((c.t, c.threshold, c.certified), (12, 11, true));
        let c = distinct_support_pair(34, 2, 24, 5, 33).unwrap().unwrap();
        assert_eq!((c.t, c.threshold, c.certified), (12, 10, true));
        assert!(distinct_support_pair(34, 2, 24, 2, 24).is_err());
        assert!(distinct_support_pair(34, 1, 17, 2, 24).is_err());
        let c = not_in_divisor(34, 2, 24, 4, 31).unwrap().unwrap();
        assert_eq!((c.t, c.threshold, c.certified), (12, 12, true));
        assert!(not_in_divisor(34, 2, 24, 2, 24).is_err());
        // e - 2s = d - 2r + 2 below genus 34
        assert_eq!(not_in_divisor(31, 2, 22, 3, 26).unwrap(), None);
        assert_eq!(not_in_divisor(34, 3, 28, 4, 31).unwrap(), None);
        let c = not_in_divisor(34, 2, 24, 4, 31).unwrap().unwrap();
        assert_eq!(c.t, 34 - 24 + 2);
    }

    #[test]
    fn dimensions() {
        assert_eq!(family_dimension(34).unwrap(), 94);
        assert_eq!(family_dimension(4).unwrap(), 4);
        assert!(family_dimension(3).is_err());
        assert_eq!(2 * moduli_dimension(16, 1) + 2 * (moduli_dimension(1, 2) - 1), 94);
    }

    #[test]
    fn relations_per_t() {
        let rep = relation_report(34, 16, 16).unwrap();
        let text: Vec<String> = rep.statements.iter().map(|s| s.to_string()).collect();
        let want = [
            "Δ(16,16;2,9) ⊂ (M^1_{34,17} ∩ M^2_{34,24} ∩ M^3_{34,28} ∩ M^4_{34,31} ∩ M^5_{34,33})",
            "Δ(16,16;2,10) ⊂ (M^2_{34,24} ∩ M^3_{34,28} ∩ M^4_{34,31}) − M^5_{34,33}",
            "Δ(16,16;2,11) ⊂ (M^1_{34,17} ∩ M^2_{34,24}) − (M^3_{34,28} ∪ M^5_{34,33})",
            "Δ(16,16;2,12) ⊂ M^2_{34,24} − (M^3_{34,28} ∪ M^4_{34,31} ∪ M^5_{34,33})",
            "Δ(16,16;2,t), t ∈ {13,15,17} ⊂ M^1_{34,17} − (M^2_{34,24} ∪ M^3_{34,28} ∪ M^4_{34,31} ∪ M^5_{34,33})",
        ];
        for w in want {
            assert!(text.iter().any(|s| s == w), "missing {w}\n{text:#?}");
        }
    }

    #[test]
    fn relations_pooled() {
        let f = |g1, g2, t| TcbeFamily::new(g1, g2, t).unwrap();
        let s = union_statement(34, &[f(16, 16, 11), f(16, 16, 12), f(17, 15, 12)])
            .unwrap()
            .unwrap();
        assert_eq!(
            s.to_string(),
            "Δ(16,16;2,11) ∪ Δ(16,16;2,12) ∪ Δ(17,15;2,12) ⊂ M^2_{34,24} − (M^3_{34,28} ∪ M^5_{34,33})"
        );
        let s = union_statement(34, &[f(16, 16, 11), f(16, 16, 12), f(17, 15, 11), f(17, 15, 12)])
            .unwrap()
            .unwrap();
        assert_eq!(s.inside.len(), 1);
        assert_eq!(s.outside, vec![LocusId::new(34, 5, 33).unwrap()]);
        assert!(union_statement(34, &[f(16, 16, 30)]).unwrap().is_none());
    }

    #[test]
    fn table_forms_agree_at_34() {
        for (g1, g2) in [(16, 16), (17, 15)] {
            assert_eq!(
                existence_range(34, 1, 17, g1, g2).unwrap(),
                pencil_range(34, 17, g1, g2).unwrap()
            );
        }
    }

    fn rho_loci(max_g: u32) -> Vec<(u32, u32, u32, u32, u32)> {
        let mut out = Vec::new();
        for g in 6..=max_g {
            for l in enumerate_loci(g, &[-1, -2]) {
                for g2 in 2..=(g - 2) / 2 {
                    let g1 = g - 2 - g2;
                    out.push((g, l.r, l.d, g1, g2));
                }
            }
        }
        out
    }

    #[test]
    fn sharpness_balanced() {
        let mut seen = 0;
        for g in 6..=60 {
            let (g1, g2) = balanced_split(g);
            for l in enumerate_loci(g, &[-2]) {
                if l.r < 2 {
                    continue;
                }
                let th = nonexistence_threshold(g, l.r, l.d, g1, g2).unwrap();
                let upper = g - l.d + 2 * l.r - 2;
                assert_eq!(upper + 1, th);
                match existence_range(g, l.r, l.d, g1, g2).unwrap().max() {
                    Some(top) => {
                        assert_eq!(top + 1, th);
                        seen += 1;
                    }
                    // only when g - d + r < 6, outside the t >= r + 4 clause
                    None => assert!(g + l.r < l.d + 6, "{g} {} {}", l.r, l.d),
                }
            }
        }
        assert!(seen > 10);
    }

    #[test]
    fn formulas_never_collide() {
        for (g, r, d, g1, g2) in rho_loci(60) {
            let range = existence_range(g, r, d, g1, g2).unwrap();
            let th = nonexistence_threshold(g, r, d, g1, g2).unwrap();
            assert!(range.max().map_or(true, |m| m < th), "{g} {r} {d} {g1} {g2}");
            assert_eq!(th, threshold_closed_form(g, r, d, g1, g2).unwrap());
            if r == 1 {
                assert_eq!(range, pencil_range(g, d, g1, g2).unwrap());
                if bn::rho(g, r, d) == -2 {
                    assert_eq!(th, pencil_threshold(g, d, g1, g2).unwrap());
                }
            }
        }
    }

    #[test]
    fn newer_range_inside_older() {
        let mut checked = 0;
        for (g, r, d, g1, g2) in rho_loci(40) {
            if r < 2 {
                continue;
            }
            let Ok(old) = existence_range_sk(g, r, d, g1, g2) else {
                continue;
            };
            let new = existence_range(g, r, d, g1, g2).unwrap();
            assert!(new.iter().all(|t| old.contains(t)), "{g} {r} {d} {g1} {g2}");
            checked += 1;
        }
        assert!(checked > 50);
    }

    #[test]
    fn tables_render() {
        let md = render_tables_md(34, &[(16, 16), (17, 15)]).unwrap();
        assert!(md.contains("| M^2_{34,24} | (16,16) | 5 <= t <= 12"));
        let csv = render_tables_csv(34, &[(16, 16), (17, 15)]).unwrap();
        assert!(csv.contains("1,34,5,33,-2,17,15,,,any,11\n"));
        assert!(csv.contains("2,34,1,17,-2,16,16,3,17,odd,18\n"));
    }

    proptest! {
        #[test]
        fn enumerated_loci_are_exact(g in 3u32..80, target in -3i64..0) {
            for l in enumerate_loci(g, &[target]) {
                prop_assert_eq!(l.rho(), target);
                prop_assert!(l.d <= g - 1 && l.r >= 1);
            }
        }

        #[test]
        fn normalize_keeps_rho(g in 3u32..60, r in 1u32..10, d in 1u32..120) {
            prop_assume!(r <= d && d <= 2 * g - 2);
            let l = LocusId::new(g, r, d).unwrap();
            let n = l.normalize();
            prop_assert_eq!(n.rho(), l.rho());
            prop_assert!(n.d <= g - 1 || d == n.d);
        }
    }
}
