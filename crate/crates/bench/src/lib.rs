//! Fixtures shared by the benchmarks.

use bnchain::{ChainSpec, GrdParams};

/// The two-bridge chain with tails of genus `g1`, `g2` and torsion `t`,
/// together with parameters for a `g^r_d` on it.
pub fn instance(g1: u32, g2: u32, t: u32, r: u32, d: u32) -> (ChainSpec, GrdParams) {
    let chain = ChainSpec::tcbe(g1, g2, 2, t).expect("valid chain");
    let params = GrdParams::new(chain.genus(), r, d).expect("valid parameters");
    (chain, params)
}
