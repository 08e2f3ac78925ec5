//! Exact analysis of a materialized chain: conductance by cut enumeration, spectral gap,
//! and the total-variation trajectory from the empty matching.

use std::fmt::Write as _;

use nalgebra::{DMatrix, SymmetricEigen};
use num_bigint::BigUint;
use num_rational::Ratio;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::chain::TransitionMatrix;
use crate::error::{Error, Result};
use crate::exec::{self, Execution};

/// Largest state space for exhaustive cut enumeration (2^24 cuts).
pub const CONDUCTANCE_STATE_LIMIT: usize = 24;
/// Largest state space for the dense eigendecomposition and TV trajectory.
pub const SPECTRAL_STATE_LIMIT: usize = 2000;
/// Up to this many states the TV trajectory is propagated in exact integer arithmetic.
pub const EXACT_TV_STATE_LIMIT: usize = 64;

/// Slack in natural-log units below which an envelope comparison is re-done exactly.
const LOG_SLACK: f64 = 1e-6;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TvPoint {
    pub t: usize,
    /// `d_TV(P_t, uniform)`.
    pub tv: f64,
    /// `|Ω|² (1 - Φ²/2)^t`, when the conductance is known.
    pub bound: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChainAnalysis {
    pub states: usize,
    /// Exact conductance `(numerator, denominator)`, present when `states` is at most
    /// [`CONDUCTANCE_STATE_LIMIT`].
    pub conductance: Option<(u64, u64)>,
    pub spectral_gap: f64,
    pub epsilon: f64,
    pub tv_curve: Vec<TvPoint>,
    /// First `t` with `d_TV <= epsilon`, if reached within the curve.
    pub t_mix_exact: Option<usize>,
    /// Whether the TV values came from exact integer propagation.
    pub exact_tv: bool,
}

impl ChainAnalysis {
    pub fn conductance_f64(&self) -> Option<f64> {
        self.conductance.map(|(a, b)| a as f64 / b as f64)
    }

    /// CSV with columns `t,tv_distance,bound_eq2`; the bound column is empty when the
    /// conductance was not computed.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("t,tv_distance,bound_eq2\n");
        for p in &self.tv_curve {
            let bound = p.bound.map(|b| b.to_string()).unwrap_or_default();
            let _ = writeln!(out, "{},{},{}", p.t, p.tv, bound);
        }
        out
    }
}

/// Exact conductance `min_{0<|S|<=|Ω|/2} Σ_{i∈S, j∉S} P_ij / |S|`.
///
/// A single-state chain has no admissible cut and reports 1 by convention.
pub fn conductance(t: &TransitionMatrix, exec: Execution) -> Result<Ratio<u64>> {
    let n = t.len();
    if n > CONDUCTANCE_STATE_LIMIT {
        return Err(Error::StateSpaceTooLarge {
            states: n,
            cap: CONDUCTANCE_STATE_LIMIT,
        });
    }
    if n <= 1 {
        return Ok(Ratio::from_integer(1));
    }
    let weights: Vec<Vec<(usize, u64)>> = (0..n)
        .map(|i| t.row(i).iter().copied().filter(|&(j, w)| j != i && w > 0).collect())
        .collect();
    let half = n / 2;
    // Top bits fix a block; the low bits are walked in Gray-code order inside it.
    let high_bits = n.min(6);
    let low_bits = n - high_bits;
    let best = exec::map_indexed(exec, 1 << high_bits, |block| {
        let mut set: u32 = (block as u32) << low_bits;
        let mut size = set.count_ones() as usize;
        let mut cut: u64 = 0;
        for (i, row) in weights.iter().enumerate() {
            if set >> i & 1 == 1 {
                cut += row.iter().filter(|&&(j, _)| set >> j & 1 == 0).map(|&(_, w)| w).sum::<u64>();
            }
        }
        let mut best: Option<(u64, usize)> = None;
        let mut consider = |cut: u64, size: usize| {
            if size == 0 || size > half {
                return;
            }
            match best {
                Some((bc, bs)) if cut as u128 * bs as u128 >= bc as u128 * size as u128 => {}
                _ => best = Some((cut, size)),
            }
        };
        consider(cut, size);
        for g in 1u32..(1u32 << low_bits) {
            let v = g.trailing_zeros() as usize;
            let adding = set >> v & 1 == 0;
            let (mut inside, mut outside) = (0u64, 0u64);
            for &(j, w) in &weights[v] {
                if set >> j & 1 == 1 {
                    inside += w;
                } else {
                    outside += w;
                }
            }
            if adding {
                cut = cut + outside - inside;
                size += 1;
            } else {
                cut = cut + inside - outside;
                size -= 1;
            }
            set ^= 1 << v;
            consider(cut, size);
        }
        best
    });
    let (cut, size) = best
        .into_iter()
        .flatten()
        .min_by(|a, b| (a.0 as u128 * b.1 as u128).cmp(&(b.0 as u128 * a.1 as u128)))
        .expect("some admissible cut exists");
    Ok(Ratio::new(cut, t.denominator() * size as u64))
}

/// `1 - λ₂` from a dense symmetric eigendecomposition.
pub fn spectral_gap(t: &TransitionMatrix) -> Result<f64> {
    let n = t.len();
    if n > SPECTRAL_STATE_LIMIT {
        return Err(Error::StateSpaceTooLarge {
            states: n,
            cap: SPECTRAL_STATE_LIMIT,
        });
    }
    if n <= 1 {
        return Ok(1.0);
    }
    let dense = t.to_dense();
    let m = DMatrix::from_fn(n, n, |i, j| dense[i][j]);
    let mut eig: Vec<f64> = SymmetricEigen::new(m).eigenvalues.iter().copied().collect();
    eig.sort_by(|a, b| b.total_cmp(a));
    Ok(1.0 - eig[1])
}

/// `ln` of a big unsigned integer (`-inf` for zero).
fn ln_big(x: &BigUint) -> f64 {
    if x.is_zero() {
        return f64::NEG_INFINITY;
    }
    let bits = x.bits();
    if bits <= 1000 {
        return x.to_f64().unwrap().ln();
    }
    let shift = bits - 64;
    (x >> shift).to_f64().unwrap().ln() + shift as f64 * std::f64::consts::LN_2
}

/// Distribution after `t` steps from the empty matching, kept as integer numerators over
/// `denominator^t`.
struct ExactWalk<'a> {
    t: &'a TransitionMatrix,
    v: Vec<BigUint>,
    scale: BigUint,
    steps: usize,
}

impl<'a> ExactWalk<'a> {
    fn new(t: &'a TransitionMatrix) -> Self {
        let mut v = vec![BigUint::zero(); t.len()];
        v[0] = BigUint::from(1u32);
        Self {
            t,
            v,
            scale: BigUint::from(1u32),
            steps: 0,
        }
    }

    fn advance(&mut self) {
        let mut next = vec![BigUint::zero(); self.v.len()];
        // P is symmetric, so row i doubles as column i.
        for (i, slot) in next.iter_mut().enumerate() {
            for &(j, w) in self.t.row(i) {
                if !self.v[j].is_zero() {
                    *slot += &self.v[j] * w;
                }
            }
        }
        self.v = next;
        self.scale *= self.t.denominator();
        self.steps += 1;
    }

    /// Numerator of the TV distance over `2 N scale`.
    fn tv_numerator(&self) -> BigUint {
        let n = self.v.len() as u64;
        let mut total = BigUint::zero();
        for x in &self.v {
            let nx = x * n;
            if nx >= self.scale {
                total += nx - &self.scale;
            } else {
                total += &self.scale - nx;
            }
        }
        total
    }

    /// TV as a float, by direct division while both sides fit comfortably in an f64.
    fn tv(&self, numerator: &BigUint) -> f64 {
        let denom = &self.scale * (2 * self.v.len() as u64);
        if denom.bits() < 1000 {
            numerator.to_f64().unwrap() / denom.to_f64().unwrap()
        } else {
            self.ln_tv(numerator).exp()
        }
    }

    fn ln_tv(&self, numerator: &BigUint) -> f64 {
        let n = self.v.len() as f64;
        ln_big(numerator) - (2.0 * n).ln() - ln_big(&self.scale)
    }

    /// Exact test of `tv <= N² (c/d)^t` where `1 - Φ²/2 = c/d`.
    fn exact_within(&self, numerator: &BigUint, c: u128, d: u128) -> bool {
        let n = BigUint::from(self.v.len());
        let t = self.steps as u32;
        let lhs = numerator * BigUint::from(d).pow(t);
        let rhs = BigUint::from(2u32) * &n * &n * &n * &self.scale * BigUint::from(c).pow(t);
        lhs <= rhs
    }
}

/// TV trajectory `d_TV(P_t, uniform)` for `t = 0..=t_max` from the empty matching, with
/// optional envelope check against the conductance bound.
fn trajectory(t: &TransitionMatrix, t_max: usize, phi: Option<Ratio<u64>>) -> Result<(Vec<TvPoint>, bool)> {
    let n = t.len();
    let ln_n = (n as f64).ln();
    let envelope = phi.map(|p| {
        let (a, b) = (*p.numer() as u128, *p.denom() as u128);
        let (c, d) = (2 * b * b - a * a, 2 * b * b);
        (c, d, (c as f64).ln() - (d as f64).ln())
    });
    let bound_at = |step: usize| envelope.map(|(_, _, ln_ratio)| (2.0 * ln_n + step as f64 * ln_ratio).exp());
    let mut points = Vec::with_capacity(t_max + 1);

    if n <= EXACT_TV_STATE_LIMIT {
        let mut walk = ExactWalk::new(t);
        for step in 0..=t_max {
            if step > 0 {
                walk.advance();
            }
            let numerator = walk.tv_numerator();
            let ln_tv = walk.ln_tv(&numerator);
            if let Some((c, d, ln_ratio)) = envelope {
                let ln_bound = 2.0 * ln_n + step as f64 * ln_ratio;
                if ln_tv > ln_bound - LOG_SLACK && !walk.exact_within(&numerator, c, d) {
                    return Err(Error::EnvelopeViolation {
                        t: step,
                        tv: walk.tv(&numerator),
                        bound: ln_bound.exp(),
                    });
                }
            }
            points.push(TvPoint {
                t: step,
                tv: walk.tv(&numerator),
                bound: bound_at(step),
            });
        }
        return Ok((points, true));
    }

    let dense = t.to_dense();
    let mut p = vec![0.0; n];
    p[0] = 1.0;
    let u = 1.0 / n as f64;
    for step in 0..=t_max {
        if step > 0 {
            p = (0..n).map(|i| (0..n).map(|j| dense[i][j] * p[j]).sum()).collect();
        }
        let tv = 0.5 * p.iter().map(|x| (x - u).abs()).sum::<f64>();
        points.push(TvPoint {
            t: step,
            tv,
            bound: bound_at(step),
        });
    }
    Ok((points, false))
}

/// Full analysis: exact conductance when `|Ω| <= 24`, spectral gap, and the TV curve for
/// `t <= t_max`, which is checked against `|Ω|² (1 - Φ²/2)^t` whenever Φ is known.
pub fn analyze(t: &TransitionMatrix, epsilon: f64, t_max: usize) -> Result<ChainAnalysis> {
    if epsilon.is_nan() || epsilon <= 0.0 {
        return Err(Error::BadParameters(format!("epsilon must be positive, got {epsilon}")));
    }
    let n = t.len();
    if n > SPECTRAL_STATE_LIMIT {
        return Err(Error::StateSpaceTooLarge {
            states: n,
            cap: SPECTRAL_STATE_LIMIT,
        });
    }
    let phi = if n <= CONDUCTANCE_STATE_LIMIT {
        Some(conductance(t, Execution::default())?)
    } else {
        None
    };
    let spectral_gap = spectral_gap(t)?;
    let (tv_curve, exact_tv) = trajectory(t, t_max, phi)?;
    let t_mix_exact = tv_curve.iter().find(|p| p.tv <= epsilon).map(|p| p.t);
    Ok(ChainAnalysis {
        states: n,
        conductance: phi.map(|p| (*p.numer(), *p.denom())),
        spectral_gap,
        epsilon,
        tv_curve,
        t_mix_exact,
        exact_tv,
    })
}

/// Smallest `t <= t_max` with `d_TV(P_t, uniform) <= epsilon` from the empty matching.
pub fn mixing_time(t: &TransitionMatrix, epsilon: f64, t_max: usize) -> Result<Option<usize>> {
    let n = t.len();
    if n > SPECTRAL_STATE_LIMIT {
        return Err(Error::StateSpaceTooLarge {
            states: n,
            cap: SPECTRAL_STATE_LIMIT,
        });
    }
    if n <= EXACT_TV_STATE_LIMIT {
        let mut walk = ExactWalk::new(t);
        let ln_eps = epsilon.ln();
        for step in 0..=t_max {
            if step > 0 {
                walk.advance();
            }
            if walk.ln_tv(&walk.tv_numerator()) <= ln_eps {
                return Ok(Some(step));
            }
        }
        return Ok(None);
    }
    let (curve, _) = trajectory(t, t_max, None)?;
    Ok(curve.iter().find(|p| p.tv <= epsilon).map(|p| p.t))
}
