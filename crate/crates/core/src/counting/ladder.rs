//! Approximate counting through the edge-addition ladder.
//!
//! With `H_i` holding the first `i` edges, `|Ω(H)| = Π_i |Ω(H_i)| / |Ω(H_{i-1})|`. Each
//! ratio `r_i = |Ω(H_{i-1})| / |Ω(H_i)|` lies in `[1/2, 1]` and is estimated as the
//! fraction of samples from `Ω(H_i)` that avoid edge `e_i`.
//!
//! Constants: `s = ⌈48 m / ε²⌉` samples per level, each at total-variation target
//! `ε / (8m)`; the product is repeated `R = ⌈12 ln(1/δ)⌉` times and the lower median
//! reported. Work item `(repetition, level)` draws from stream
//! `stream_id(repetition, level)` of the master seed, so results do not depend on
//! scheduling.

use serde::{Deserialize, Serialize};

use crate::counting::sampler::{steps_for, Sampler, SamplingMode};
use crate::error::{Error, Result};
use crate::exec::{self, Execution};
use crate::hypergraph::Hypergraph;
use crate::rng::{stream_id, stream_rng};

/// Stream bit used for the one retry of a level whose ratio came out zero.
const RETRY_BIT: u64 = 1 << 63;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct EstimateConfig {
    pub epsilon: f64,
    pub delta: f64,
    pub mode: SamplingMode,
    pub seed: u64,
    #[serde(default)]
    pub execution: Execution,
}

impl EstimateConfig {
    pub fn new(epsilon: f64, delta: f64, mode: SamplingMode, seed: u64) -> Self {
        Self {
            epsilon,
            delta,
            mode,
            seed,
            execution: Execution::default(),
        }
    }

    pub fn samples_per_level(&self, num_edges: usize) -> u64 {
        (48.0 * num_edges as f64 / (self.epsilon * self.epsilon)).ceil() as u64
    }

    pub fn repetitions(&self) -> usize {
        ((12.0 * (1.0 / self.delta).ln()).ceil() as usize).max(1)
    }

    fn check(&self) -> Result<()> {
        if !(self.epsilon > 0.0 && self.epsilon < 1.0) || !(self.delta > 0.0 && self.delta < 1.0) {
            return Err(Error::BadParameters(format!(
                "need 0 < epsilon < 1 and 0 < delta < 1, got epsilon={} delta={}",
                self.epsilon, self.delta
            )));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EstimateResult {
    /// `1 / Π r̂_i` of the reported repetition.
    pub estimate: f64,
    pub epsilon: f64,
    pub delta: f64,
    pub mode: SamplingMode,
    /// Per-level `r̂_i` of the reported repetition, one per edge.
    pub ratios: Vec<f64>,
    /// Chain length per sample, one per level.
    pub steps_per_sample: Vec<u64>,
    pub samples_per_level: u64,
    pub repetitions: usize,
    /// Chain steps over all repetitions, retries included.
    pub total_steps: u64,
    pub seed: u64,
    /// Product estimate of every repetition, in repetition order.
    pub repetition_estimates: Vec<f64>,
}

/// Counts samples from `Ω(H_level)` avoiding the level's new edge, retrying once on a
/// fresh stream if none did.
fn level_hits(level_graph: &Hypergraph, level: usize, steps: u64, samples: u64, seed: u64, rep: usize) -> Result<(u64, u64)> {
    let edge = level - 1;
    let mut sampler = Sampler::with_steps(level_graph, steps);
    let mut spent = 0u64;
    for retry in [0, RETRY_BIT] {
        let mut rng = stream_rng(seed, stream_id(rep as u64, level as u64) | retry);
        let avoid = (0..samples).filter(|_| !sampler.sample_contains(edge, &mut rng)).count() as u64;
        spent = spent.saturating_add(samples.saturating_mul(steps));
        if avoid > 0 {
            return Ok((avoid, spent));
        }
    }
    Err(Error::ZeroRatio { level })
}

/// `(ε, δ)`-estimate of `|Ω(H)|` for a comb-free `H`.
pub fn estimate_count(h: &Hypergraph, config: &EstimateConfig) -> Result<EstimateResult> {
    config.check()?;
    h.require_comb_free()?;
    let m = h.num_edges();
    let samples = config.samples_per_level(m);
    let reps = config.repetitions();
    if m == 0 {
        return Ok(EstimateResult {
            estimate: 1.0,
            epsilon: config.epsilon,
            delta: config.delta,
            mode: config.mode,
            ratios: Vec::new(),
            steps_per_sample: Vec::new(),
            samples_per_level: samples,
            repetitions: reps,
            total_steps: 0,
            seed: config.seed,
            repetition_estimates: vec![1.0; reps],
        });
    }
    let levels: Vec<Hypergraph> = (1..=m).map(|i| h.prefix(i)).collect();
    let per_sample_tv = config.epsilon / (8.0 * m as f64);
    let steps: Vec<u64> = levels
        .iter()
        .map(|g| steps_for(g, per_sample_tv, config.mode))
        .collect::<Result<_>>()?;

    let outcomes = exec::map_indexed(config.execution, reps * m, |item| {
        let (rep, idx) = (item / m, item % m);
        level_hits(&levels[idx], idx + 1, steps[idx], samples, config.seed, rep)
    });
    let mut hits = Vec::with_capacity(outcomes.len());
    let mut total_steps = 0u64;
    for outcome in outcomes {
        let (avoid, spent) = outcome?;
        hits.push(avoid);
        total_steps = total_steps.saturating_add(spent);
    }

    let ratios: Vec<Vec<f64>> = hits
        .chunks(m)
        .map(|row| row.iter().map(|&a| a as f64 / samples as f64).collect())
        .collect();
    let repetition_estimates: Vec<f64> = ratios
        .iter()
        .map(|r| (-r.iter().map(|x| x.ln()).sum::<f64>()).exp())
        .collect();
    let mut order: Vec<usize> = (0..reps).collect();
    order.sort_by(|&a, &b| repetition_estimates[a].total_cmp(&repetition_estimates[b]).then(a.cmp(&b)));
    let median = order[(reps - 1) / 2];

    Ok(EstimateResult {
        estimate: repetition_estimates[median],
        epsilon: config.epsilon,
        delta: config.delta,
        mode: config.mode,
        ratios: ratios[median].clone(),
        steps_per_sample: steps,
        samples_per_level: samples,
        repetitions: reps,
        total_steps,
        seed: config.seed,
        repetition_estimates,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::counting::count_exact;

    #[test]
    fn edgeless_is_exactly_one() {
        let h = Hypergraph::validate(vec![], 4, 2).unwrap();
        let r = estimate_count(&h, &EstimateConfig::new(0.2, 0.1, SamplingMode::TheoreticalBound, 1)).unwrap();
        assert_eq!(r.estimate, 1.0);
        assert_eq!(r.total_steps, 0);
    }

    #[test]
    fn constants() {
        let c = EstimateConfig::new(0.2, 0.1, SamplingMode::EmpiricalBurnIn(5), 0);
        assert_eq!(c.samples_per_level(2), 2400);
        assert_eq!(c.repetitions(), 28);
        assert_eq!(EstimateConfig::new(0.2, 0.99, SamplingMode::EmpiricalBurnIn(5), 0).repetitions(), 1);
    }

    #[test]
    fn rejects_bad_parameters_and_combs() {
        let h = Hypergraph::validate(vec![vec![1, 2]], 2, 2).unwrap();
        let mut c = EstimateConfig::new(0.0, 0.1, SamplingMode::EmpiricalBurnIn(5), 0);
        assert!(matches!(estimate_count(&h, &c), Err(Error::BadParameters(_))));
        c.epsilon = 0.2;
        c.delta = 1.5;
        assert!(matches!(estimate_count(&h, &c), Err(Error::BadParameters(_))));
        let comb = Hypergraph::validate(
            vec![vec![1, 2, 3], vec![4, 5, 6], vec![7, 8, 9], vec![3, 6, 9]],
            9,
            3,
        )
        .unwrap();
        let c = EstimateConfig::new(0.2, 0.1, SamplingMode::EmpiricalBurnIn(5), 0);
        assert!(matches!(estimate_count(&comb, &c), Err(Error::NotCombFree(_))));
    }

    #[test]
    fn no_burn_in_estimates_one() {
        // Every sample is ∅, so each ratio is 1.
        let h = Hypergraph::validate(vec![vec![1, 2]], 2, 2).unwrap();
        let r = estimate_count(&h, &EstimateConfig::new(0.5, 0.5, SamplingMode::EmpiricalBurnIn(0), 3)).unwrap();
        assert_eq!(r.estimate, 1.0);
    }

    #[test]
    fn two_intersecting_edges() {
        let h = Hypergraph::validate(vec![vec![1, 2, 3], vec![3, 4, 5]], 5, 3).unwrap();
        let truth: f64 = count_exact(&h).to_string().parse().unwrap();
        let mut c = EstimateConfig::new(0.2, 0.1, SamplingMode::EmpiricalBurnIn(12), 0);
        let mut good = 0;
        for seed in 0..20 {
            c.seed = seed;
            let r = estimate_count(&h, &c).unwrap();
            assert_eq!(r.ratios.len(), 2);
            assert!(r.ratios.iter().all(|&x| x > 0.0 && x <= 1.0));
            if (r.estimate - truth).abs() <= 0.2 * truth {
                good += 1;
            }
        }
        assert!(good >= 18, "{good}/20");
    }

    #[test]
    fn execution_mode_does_not_change_result() {
        let h = Hypergraph::validate(vec![vec![1, 2, 3], vec![3, 4, 5], vec![5, 6, 7]], 7, 3).unwrap();
        let mut c = EstimateConfig::new(0.3, 0.3, SamplingMode::EmpiricalBurnIn(10), 42);
        c.execution = Execution::Sequential;
        let a = estimate_count(&h, &c).unwrap();
        c.execution = Execution::Parallel;
        let b = estimate_count(&h, &c).unwrap();
        assert_eq!(a, b);
    }
}
