//! Almost-uniform sampling by running the chain from the empty matching.

use rand::RngCore;
use serde::{Deserialize, Serialize};

use crate::chain::{theoretical_mixing_bound, ChainRunner, TransitionMatrix};
use crate::error::{Error, Result};
use crate::hypergraph::{Hypergraph, Matching};

/// How many chain steps each sample takes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind", content = "steps")]
pub enum SamplingMode {
    /// The proven mixing-time bound; needs a comb-free hypergraph.
    TheoreticalBound,
    /// A caller-supplied step count with no guarantee attached.
    EmpiricalBurnIn(u64),
}

/// Step count for one sample at total-variation target `epsilon`.
pub fn steps_for(h: &Hypergraph, epsilon: f64, mode: SamplingMode) -> Result<u64> {
    match mode {
        SamplingMode::EmpiricalBurnIn(t) => Ok(t),
        SamplingMode::TheoreticalBound => {
            let t = theoretical_mixing_bound(h, epsilon)?;
            u64::try_from(t).map_err(|_| {
                Error::BadParameters(format!("mixing bound {t} does not fit in 64 bits"))
            })
        }
    }
}

/// Reusable sampler: a chain runner plus a fixed run length.
#[derive(Clone, Debug)]
pub struct Sampler<'a> {
    runner: ChainRunner<'a>,
    steps: u64,
}

impl<'a> Sampler<'a> {
    pub fn new(h: &'a Hypergraph, epsilon: f64, mode: SamplingMode) -> Result<Self> {
        Ok(Self::with_steps(h, steps_for(h, epsilon, mode)?))
    }

    pub fn with_steps(h: &'a Hypergraph, steps: u64) -> Self {
        Self {
            runner: ChainRunner::new(h),
            steps,
        }
    }

    pub fn steps(&self) -> u64 {
        self.steps
    }

    /// Runs a fresh chain from `∅` and leaves it in place for inspection.
    fn run<R: RngCore + ?Sized>(&mut self, rng: &mut R) {
        self.runner.reset();
        self.runner.run(self.steps, rng);
    }

    pub fn sample<R: RngCore + ?Sized>(&mut self, rng: &mut R) -> Matching {
        self.run(rng);
        self.runner.matching()
    }

    /// Draws a sample and reports only whether it contains `edge`.
    pub fn sample_contains<R: RngCore + ?Sized>(&mut self, edge: usize, rng: &mut R) -> bool {
        self.run(rng);
        self.runner.contains(edge)
    }
}

/// One sample from `Ω(H)`: `X_t` of the chain started at `X_0 = ∅`.
///
/// Under [`SamplingMode::TheoreticalBound`] the output is `epsilon`-close to uniform in
/// total variation.
pub fn sample_matching<R: RngCore + ?Sized>(
    h: &Hypergraph,
    epsilon: f64,
    mode: SamplingMode,
    rng: &mut R,
) -> Result<Matching> {
    Ok(Sampler::new(h, epsilon, mode)?.sample(rng))
}

/// Exact mixing time of a small reference instance: the least `t <= t_max` with
/// `d_TV(P_t, uniform) <= target_tv` from `∅`.
pub fn calibrate_burn_in(reference: &TransitionMatrix, target_tv: f64, t_max: usize) -> Result<u64> {
    crate::chain::mixing_time(reference, target_tv, t_max)?
        .map(|t| t as u64)
        .ok_or_else(|| {
            Error::BadParameters(format!("reference chain did not reach tv {target_tv} within {t_max} steps"))
        })
}

/// Transfers a burn-in calibrated on a reference instance with `reference_edges` edges to
/// one with `target_edges` edges: `2 t_ref m_target / m_ref`, rounded up.
pub fn scale_burn_in(t_ref: u64, reference_edges: usize, target_edges: usize) -> u64 {
    if reference_edges == 0 {
        return 2 * t_ref;
    }
    (2 * t_ref * target_edges as u64).div_ceil(reference_edges as u64)
}
