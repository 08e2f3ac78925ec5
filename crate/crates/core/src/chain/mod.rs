//! The lazy edge-flip Markov chain on the matchings of a hypergraph.
//!
//! From a matching `M`, with probability 1/2 the chain holds. Otherwise it draws an edge
//! `h` uniformly and, writing `S_h` for the edges of `M` meeting `h`:
//!
//! * `h ∈ M`: remove `h`;
//! * `S_h = ∅`: add `h`;
//! * `S_h = {g}`: swap, `M + h - g`;
//! * `|S_h| >= 2`: stay.
//!
//! Every off-diagonal transition therefore has probability exactly `1/(2|E|)`.

mod analysis;
mod bound;
mod matrix;

use num_rational::Ratio;
use rand::RngCore;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypergraph::{Hypergraph, Matching};
use crate::sets;

pub use analysis::{analyze, conductance, mixing_time, spectral_gap, ChainAnalysis, TvPoint, CONDUCTANCE_STATE_LIMIT, EXACT_TV_STATE_LIMIT, SPECTRAL_STATE_LIMIT};
pub use bound::{conductance_lower_bound, ln_omega_upper_bound, theoretical_mixing_bound};
pub use matrix::{build_transition_matrix, TransitionMatrix};

/// What a single step did.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TransitionKind {
    Remove,
    Add,
    Swap,
    Null,
    Lazy,
}

/// One draw of the step randomness: `None` for the lazy hold, otherwise the edge index.
///
/// A single 64-bit word is consumed: the low bit is the coin, the remaining 63 bits pick
/// the edge by multiply-shift.
#[inline]
pub(crate) fn draw_edge<R: RngCore + ?Sized>(num_edges: usize, rng: &mut R) -> Option<usize> {
    let x = rng.next_u64();
    if x & 1 == 0 {
        None
    } else {
        Some((((x >> 1) as u128 * num_edges as u128) >> 63) as usize)
    }
}

/// Applies the non-lazy move for edge `edge` to `m`.
pub fn apply_edge(h: &Hypergraph, m: &Matching, edge: usize) -> (Matching, TransitionKind) {
    if m.contains(edge) {
        return (m.without(edge), TransitionKind::Remove);
    }
    let mut hits = m.edges().iter().copied().filter(|&g| h.intersects(g, edge));
    match (hits.next(), hits.next()) {
        (None, _) => (m.with(edge), TransitionKind::Add),
        (Some(g), None) => (m.without(g).with(edge), TransitionKind::Swap),
        _ => (m.clone(), TransitionKind::Null),
    }
}

/// One step of the lazy chain.
pub fn step<R: RngCore + ?Sized>(h: &Hypergraph, m: &Matching, rng: &mut R) -> Result<(Matching, TransitionKind)> {
    if h.num_edges() == 0 {
        return Err(Error::EmptyEdgeSet);
    }
    m.check(h)?;
    Ok(match draw_edge(h.num_edges(), rng) {
        None => (m.clone(), TransitionKind::Lazy),
        Some(edge) => apply_edge(h, m, edge),
    })
}

/// Exact one-step probability `P(M, M')` of the lazy chain.
pub fn transition_probability(h: &Hypergraph, from: &Matching, to: &Matching) -> Result<Ratio<u64>> {
    from.check(h)?;
    to.check(h)?;
    let m = h.num_edges() as u64;
    if m == 0 {
        return Ok(Ratio::from_integer(1));
    }
    let denom = 2 * m;
    if from == to {
        let moves = (0..h.num_edges())
            .filter(|&e| apply_edge(h, from, e).1 != TransitionKind::Null)
            .count() as u64;
        return Ok(Ratio::new(denom - moves, denom));
    }
    let gone = sets::difference(from.edges(), to.edges());
    let came = sets::difference(to.edges(), from.edges());
    let adjacent = match (gone.as_slice(), came.as_slice()) {
        ([_], []) | ([], [_]) => true,
        ([g], [e]) => h.intersects(*g, *e),
        _ => false,
    };
    Ok(if adjacent { Ratio::new(1, denom) } else { Ratio::from_integer(0) })
}

/// Allocation-free runner for many steps of the chain, reused across samples.
///
/// Hypergraphs with at most 64 edges keep the state as a bitmask over edges with
/// precomputed neighbor masks; larger ones track a vertex-owner table.
#[derive(Clone, Debug)]
pub struct ChainRunner<'a> {
    h: &'a Hypergraph,
    repr: Repr,
}

#[derive(Clone, Debug)]
enum Repr {
    Small {
        neighbors: Vec<u64>,
        state: u64,
    },
    General {
        in_matching: Vec<bool>,
        owner: Vec<usize>,
        members: Vec<usize>,
    },
}

const FREE: usize = usize::MAX;

impl<'a> ChainRunner<'a> {
    pub fn new(h: &'a Hypergraph) -> Self {
        let repr = if h.num_edges() <= 64 {
            let l = h.intersection_graph();
            let neighbors = (0..h.num_edges())
                .map(|e| l.neighbors(e).iter().fold(0u64, |acc, &f| acc | 1 << f))
                .collect();
            Repr::Small { neighbors, state: 0 }
        } else {
            Repr::General {
                in_matching: vec![false; h.num_edges()],
                owner: vec![FREE; h.n() + 1],
                members: Vec::new(),
            }
        };
        Self { h, repr }
    }

    pub fn hypergraph(&self) -> &'a Hypergraph {
        self.h
    }

    /// Back to the empty matching.
    pub fn reset(&mut self) {
        match &mut self.repr {
            Repr::Small { state, .. } => *state = 0,
            Repr::General { in_matching, owner, members } => {
                for e in members.drain(..) {
                    in_matching[e] = false;
                    for &v in self.h.edge(e) {
                        owner[v] = FREE;
                    }
                }
            }
        }
    }

    pub fn contains(&self, edge: usize) -> bool {
        match &self.repr {
            Repr::Small { state, .. } => state >> edge & 1 == 1,
            Repr::General { in_matching, .. } => in_matching[edge],
        }
    }

    pub fn matching(&self) -> Matching {
        let v = (0..self.h.num_edges()).filter(|&e| self.contains(e)).collect();
        Matching::from_sorted_unchecked(v)
    }

    /// Runs `steps` steps of the lazy chain from the current state.
    pub fn run<R: RngCore + ?Sized>(&mut self, steps: u64, rng: &mut R) {
        let m = self.h.num_edges();
        if m == 0 {
            return;
        }
        match &mut self.repr {
            Repr::Small { neighbors, state } => {
                let mut s = *state;
                for _ in 0..steps {
                    let Some(e) = draw_edge(m, rng) else { continue };
                    let bit = 1u64 << e;
                    if s & bit != 0 {
                        s ^= bit;
                    } else {
                        let hit = neighbors[e] & s;
                        if hit == 0 {
                            s |= bit;
                        } else if hit & (hit - 1) == 0 {
                            s = (s ^ hit) | bit;
                        }
                    }
                }
                *state = s;
            }
            Repr::General { in_matching, owner, members } => {
                for _ in 0..steps {
                    let Some(e) = draw_edge(m, rng) else { continue };
                    let edge = self.h.edge(e);
                    if in_matching[e] {
                        in_matching[e] = false;
                        edge.iter().for_each(|&v| owner[v] = FREE);
                        let pos = members.iter().position(|&x| x == e).unwrap();
                        members.swap_remove(pos);
                        continue;
                    }
                    let mut first = FREE;
                    let mut crowded = false;
                    for &v in edge {
                        let o = owner[v];
                        if o != FREE && o != first {
                            if first == FREE {
                                first = o;
                            } else {
                                crowded = true;
                                break;
                            }
                        }
                    }
                    if crowded {
                        continue;
                    }
                    if first != FREE {
                        in_matching[first] = false;
                        self.h.edge(first).iter().for_each(|&v| owner[v] = FREE);
                        let pos = members.iter().position(|&x| x == first).unwrap();
                        members.swap_remove(pos);
                    }
                    in_matching[e] = true;
                    edge.iter().for_each(|&v| owner[v] = e);
                    members.push(e);
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;
    use crate::rng::stream_rng;

    fn comb3() -> Hypergraph {
        Hypergraph::validate(
            vec![vec![1, 2, 3], vec![4, 5, 6], vec![7, 8, 9], vec![3, 6, 9]],
            9,
            3,
        )
        .unwrap()
    }

    #[test]
    fn moves_from_empty_and_singleton() {
        let h = Hypergraph::validate(vec![vec![1, 2, 3]], 3, 3).unwrap();
        let (m, kind) = apply_edge(&h, &Matching::empty(), 0);
        assert_eq!(kind, TransitionKind::Add);
        assert_eq!(m.edges(), &[0]);
        let (back, kind) = apply_edge(&h, &m, 0);
        assert_eq!(kind, TransitionKind::Remove);
        assert!(back.is_empty());
    }

    #[test]
    fn crowded_spine_is_null() {
        let h = comb3();
        let m = Matching::new(&h, [0, 1, 2]).unwrap();
        let (same, kind) = apply_edge(&h, &m, 3);
        assert_eq!(kind, TransitionKind::Null);
        assert_eq!(same, m);
    }

    #[test]
    fn step_rejects_edgeless() {
        let h = Hypergraph::validate(vec![], 3, 3).unwrap();
        let mut rng = stream_rng(1, 1);
        assert_eq!(step(&h, &Matching::empty(), &mut rng), Err(Error::EmptyEdgeSet));
    }

    #[test]
    fn step_is_lazy_about_half_the_time() {
        let h = comb3();
        let mut rng = stream_rng(3, 0);
        let mut m = Matching::empty();
        let mut lazy = 0;
        for _ in 0..20_000 {
            let (next, kind) = step(&h, &m, &mut rng).unwrap();
            if kind == TransitionKind::Lazy {
                lazy += 1;
            }
            assert!(h.is_matching(next.edges()).unwrap());
            m = next;
        }
        assert!((9_500..10_500).contains(&lazy), "{lazy}");
    }

    #[test]
    fn probabilities_of_two_state_chain() {
        let h = Hypergraph::validate(vec![vec![1, 2, 3]], 3, 3).unwrap();
        let e = Matching::empty();
        let one = Matching::new(&h, [0]).unwrap();
        let half = Ratio::new(1, 2);
        assert_eq!(transition_probability(&h, &e, &one).unwrap(), half);
        assert_eq!(transition_probability(&h, &one, &e).unwrap(), half);
        assert_eq!(transition_probability(&h, &e, &e).unwrap(), half);
        assert_eq!(transition_probability(&h, &one, &one).unwrap(), half);
    }

    #[test]
    fn far_apart_matchings_have_zero_probability() {
        let h = generators::gen_overlap_cycle(12, 3, 1).unwrap();
        let a = Matching::new(&h, [0, 2, 4]).unwrap();
        let b = Matching::new(&h, [1, 3, 5]).unwrap();
        assert_eq!(transition_probability(&h, &a, &b).unwrap(), Ratio::from_integer(0));
        let c = Matching::new(&h, [0]).unwrap();
        let d = Matching::new(&h, [2]).unwrap();
        // Two disjoint edges swapped: not a single move.
        assert_eq!(transition_probability(&h, &c, &d).unwrap(), Ratio::from_integer(0));
    }

    #[test]
    fn runner_agrees_with_reference_step() {
        // Same stream drives both; every step must land on the same matching.
        for h in [
            generators::gen_hex_3graph(2, 2).unwrap(),
            generators::gen_enriched_tight_cycle(50, 3).unwrap(),
        ] {
            let mut runner = ChainRunner::new(&h);
            let mut rng_a = stream_rng(11, 4);
            let mut rng_b = stream_rng(11, 4);
            let mut m = Matching::empty();
            for _ in 0..5_000 {
                runner.run(1, &mut rng_a);
                m = step(&h, &m, &mut rng_b).unwrap().0;
                assert_eq!(runner.matching(), m);
            }
            runner.reset();
            assert!(runner.matching().is_empty());
        }
    }
}
