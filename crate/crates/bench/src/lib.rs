//! Shared fixtures for the engine benchmarks.

use flagchess::{BundleDescriptor, ExtQuery, Space};

/// Parameter pairs covering both parities.
pub const GAMES: [(usize, usize); 4] = [(4, 0), (4, 1), (8, 0), (8, 1)];

/// Every `Ext_M(O(t,0), Sym^r U^vee(-1,1))` query of the A4 grid at `n`.
pub fn a4_queries(n: usize, eps: usize) -> Vec<ExtQuery> {
    let big_n = 2 * n + eps;
    let t_max = 2 * n as i64 - 3 + eps as i64;
    let mut out = Vec::new();
    for t in 1..=t_max {
        for r in 0..=(t - 1).min(n as i64 - 1) {
            let src = BundleDescriptor::line(big_n, t, 0).unwrap();
            let tgt = BundleDescriptor::new(big_n, r as u32, -1, 1).unwrap();
            out.push(ExtQuery::new(src, tgt, Space::HyperplaneM).unwrap());
        }
    }
    out
}
