//! Brill-Noether arithmetic and the Eisenbud-Harris criterion.
//!
//! Everything here is exact integer arithmetic. Inputs are bounded by
//! [`MAX_PARAM`] so that every intermediate fits comfortably in an `i64`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Upper bound accepted for genus and degree.
pub const MAX_PARAM: u32 = 10_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BnError {
    #[error("parameter out of range: {0}")]
    OutOfRange(String),
    #[error("invalid vanishing sequence {values:?} for r={r}, d={d}: {reason}")]
    InvalidSequence {
        values: Vec<u32>,
        r: u32,
        d: u32,
        reason: &'static str,
    },
    #[error("invalid ramification sequence {values:?} for r={r}, d={d}: {reason}")]
    InvalidRamification {
        values: Vec<u32>,
        r: u32,
        d: u32,
        reason: &'static str,
    },
    #[error("sequence belongs to (r={seq_r}, d={seq_d}) but params are (r={r}, d={d})")]
    Mismatch { seq_r: u32, seq_d: u32, r: u32, d: u32 },
}

/// The type `(g, r, d)` of a linear series `g^r_d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GrdParams {
    pub g: u32,
    pub r: u32,
    pub d: u32,
}

impl GrdParams {
    pub fn new(g: u32, r: u32, d: u32) -> Result<Self, BnError> {
        if g > MAX_PARAM || d > MAX_PARAM {
            return Err(BnError::OutOfRange(format!(
                "g={g}, d={d} exceed the bound {MAX_PARAM}"
            )));
        }
        if r > d {
            return Err(BnError::OutOfRange(format!("r={r} exceeds d={d}")));
        }
        Ok(GrdParams { g, r, d })
    }

    pub fn rho(&self) -> i64 {
        rho(self.g, self.r, self.d)
    }
}

/// Brill-Noether number `g - (r+1)(g-d+r)`.
pub fn rho(g: u32, r: u32, d: u32) -> i64 {
    let (g, r, d) = (g as i64, r as i64, d as i64);
    g - (r + 1) * (g - d + r)
}

/// Strictly increasing vanishing orders `a_0 < ... < a_r` in `[0, d]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct VanishingSeq {
    values: Vec<u32>,
    d: u32,
}

impl VanishingSeq {
    pub fn new(values: Vec<u32>, d: u32) -> Result<Self, BnError> {
        let r = values.len().saturating_sub(1) as u32;
        let bad = |reason| BnError::InvalidSequence {
            values: values.clone(),
            r,
            d,
            reason,
        };
        if values.is_empty() {
            return Err(bad("empty"));
        }
        if values.windows(2).any(|w| w[0] >= w[1]) {
            return Err(bad("not strictly increasing"));
        }
        if *values.last().unwrap() > d {
            return Err(bad("order exceeds degree"));
        }
        Ok(VanishingSeq { values, d })
    }

    /// Builds `a_j = alpha_j + j`.
    pub fn from_ramification(alpha: &[u32], d: u32) -> Result<Self, BnError> {
        let r = alpha.len().saturating_sub(1) as u32;
        validate_ramification(alpha, r, d)?;
        let values = alpha
            .iter()
            .enumerate()
            .map(|(j, &a)| a + j as u32)
            .collect();
        VanishingSeq::new(values, d)
    }

    pub fn values(&self) -> &[u32] {
        &self.values
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn r(&self) -> u32 {
        self.values.len() as u32 - 1
    }

    /// `alpha_j = a_j - j`.
    pub fn ramification(&self) -> Vec<u32> {
        ramification_of(&self.values)
    }

    pub fn ramification_weight(&self) -> i64 {
        self.ramification().iter().map(|&a| a as i64).sum()
    }

    /// The sequence a neighbouring component must carry for the node to be
    /// refined: `d - a_{r-j}`.
    pub fn complement(&self) -> VanishingSeq {
        let values = self.values.iter().rev().map(|&a| self.d - a).collect();
        VanishingSeq { values, d: self.d }
    }

    pub fn check_params(&self, params: &GrdParams) -> Result<(), BnError> {
        if self.r() != params.r || self.d != params.d {
            return Err(BnError::Mismatch {
                seq_r: self.r(),
                seq_d: self.d,
                r: params.r,
                d: params.d,
            });
        }
        Ok(())
    }
}

pub(crate) fn ramification_of(values: &[u32]) -> Vec<u32> {
    values
        .iter()
        .enumerate()
        .map(|(j, &a)| a - j as u32)
        .collect()
}

fn validate_ramification(alpha: &[u32], r: u32, d: u32) -> Result<(), BnError> {
    let bad = |reason| BnError::InvalidRamification {
        values: alpha.to_vec(),
        r,
        d,
        reason,
    };
    if alpha.len() as u32 != r + 1 {
        return Err(bad("length is not r+1"));
    }
    if r > d {
        return Err(bad("r exceeds d"));
    }
    if alpha.windows(2).any(|w| w[0] > w[1]) {
        return Err(bad("not nondecreasing"));
    }
    if alpha[r as usize] > d - r {
        return Err(bad("alpha_r exceeds d-r"));
    }
    Ok(())
}

/// `rho(g,r,d)` minus the total ramification at every marked point.
pub fn adjusted_rho(params: &GrdParams, seqs: &[VanishingSeq]) -> Result<i64, BnError> {
    let mut total = params.rho();
    for s in seqs {
        s.check_params(params)?;
        total -= s.ramification_weight();
    }
    Ok(total)
}

/// Eisenbud-Harris: a general one-pointed curve of genus `g_tail` carries a
/// `g^r_d` with ramification `alpha` at the point iff
/// `sum_j (alpha_j + g - d + r)_+ <= g`.
pub fn eh_exists(g_tail: u32, r: u32, d: u32, alpha: &[u32]) -> Result<bool, BnError> {
    validate_ramification(alpha, r, d)?;
    Ok(eh_sum_unchecked(g_tail, r, d, alpha) <= g_tail as i64)
}

/// Dimension of the locus of `g^r_d`'s with exactly this ramification on a
/// general pointed curve, `rho(g,r,d) - sum alpha_j`. Negative when empty.
pub fn eh_dimension(g_tail: u32, r: u32, d: u32, alpha: &[u32]) -> Result<i64, BnError> {
    validate_ramification(alpha, r, d)?;
    Ok(rho(g_tail, r, d) - alpha.iter().map(|&a| a as i64).sum::<i64>())
}

fn eh_sum_unchecked(g_tail: u32, r: u32, d: u32, alpha: &[u32]) -> i64 {
    let shift = g_tail as i64 - d as i64 + r as i64;
    alpha.iter().map(|&a| (a as i64 + shift).max(0)).sum()
}

/// EH criterion evaluated directly on a vanishing sequence. Used by the
/// search hot loop; the caller guarantees validity.
pub(crate) fn eh_exists_vanishing(g_tail: u32, d: u32, seq: &[u16]) -> bool {
    let r = seq.len() as i64 - 1;
    let shift = g_tail as i64 - d as i64 + r;
    let sum: i64 = seq
        .iter()
        .enumerate()
        .map(|(j, &a)| (a as i64 - j as i64 + shift).max(0))
        .sum();
    sum <= g_tail as i64
}
