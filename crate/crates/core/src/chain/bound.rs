//! The closed-form mixing-time bound for comb-free hypergraphs.

use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;

/// `ln` of `Φ_lb = 1/(4 n^k |E|)`.
fn ln_conductance_lower_bound(h: &Hypergraph) -> f64 {
    let (n, k, m) = (h.n() as f64, h.k() as f64, h.num_edges().max(1) as f64);
    -(4f64.ln() + k * n.ln() + m.ln())
}

/// Lower bound `1/(4 n^k |E|)` on the conductance of the chain: `p_min = 1/(2|E|)` times
/// `|cut(S)|/|S| >= 1/(2 n^k)`. May underflow to 0 for very large instances.
pub fn conductance_lower_bound(h: &Hypergraph) -> f64 {
    ln_conductance_lower_bound(h).exp()
}

/// An upper bound on `ln |Ω(H)|` that needs no enumeration: a matching has at most
/// `d = min(⌊n/k⌋, m)` edges, so `|Ω| <= Σ_{t<=d} C(m, t) <= min(2^m, (e m / d)^d)`.
pub fn ln_omega_upper_bound(h: &Hypergraph) -> f64 {
    let m = h.num_edges();
    if m == 0 {
        return 0.0;
    }
    let d = (h.n() / h.k()).min(m);
    let binary = m as f64 * std::f64::consts::LN_2;
    if d == 0 {
        return binary;
    }
    let d = d as f64;
    binary.min(d * (std::f64::consts::E * m as f64 / d).ln())
}

/// `⌈(2/Φ_lb²)(2 ln Ω_ub + ln ε⁻¹)⌉`, saturating at `u128::MAX`.
///
/// Requires a comb-free hypergraph and `0 < ε < 1`; an edgeless hypergraph needs 0 steps.
pub fn theoretical_mixing_bound(h: &Hypergraph, epsilon: f64) -> Result<u128> {
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(Error::BadParameters(format!("epsilon must lie in (0, 1), got {epsilon}")));
    }
    h.require_comb_free()?;
    if h.num_edges() == 0 {
        return Ok(0);
    }
    let ln_bound = 2f64.ln() - 2.0 * ln_conductance_lower_bound(h)
        + (2.0 * ln_omega_upper_bound(h) + (1.0 / epsilon).ln()).ln();
    if ln_bound >= 128.0 * std::f64::consts::LN_2 {
        return Ok(u128::MAX);
    }
    Ok(ln_bound.exp().ceil() as u128)
}
