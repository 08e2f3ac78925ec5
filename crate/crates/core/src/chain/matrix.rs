use std::collections::HashMap;
use std::fmt::Write as _;

use num_rational::Ratio;

use crate::chain::{apply_edge, TransitionKind};
use crate::counting::enumerate_matchings;
use crate::error::{Error, Result};
use crate::hypergraph::{Hypergraph, Matching};

/// The exact transition matrix of the lazy chain over every matching of a hypergraph.
///
/// All entries share the denominator `2|E|` (or 1 for an edgeless hypergraph), so rows
/// are stored sparsely as integer numerators over [`TransitionMatrix::denominator`].
#[derive(Clone, Debug)]
pub struct TransitionMatrix {
    states: Vec<Matching>,
    index: HashMap<Matching, usize>,
    denominator: u64,
    // (column, numerator), sorted by column, diagonal included.
    rows: Vec<Vec<(usize, u64)>>,
}

/// Materializes the chain over `Ω(H)`, failing if there are more than `state_cap`
/// matchings.
pub fn build_transition_matrix(h: &Hypergraph, state_cap: usize) -> Result<TransitionMatrix> {
    let states = enumerate_matchings(h, state_cap).map_err(|e| match e {
        Error::CapExceeded { reached } => Error::StateSpaceTooLarge {
            states: reached,
            cap: state_cap,
        },
        other => other,
    })?;
    let index: HashMap<Matching, usize> = states.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
    let m = h.num_edges() as u64;
    let denominator = if m == 0 { 1 } else { 2 * m };
    let rows = states
        .iter()
        .enumerate()
        .map(|(i, state)| {
            let mut row: Vec<(usize, u64)> = (0..h.num_edges())
                .filter_map(|e| {
                    let (next, kind) = apply_edge(h, state, e);
                    (kind != TransitionKind::Null).then(|| (index[&next], 1))
                })
                .collect();
            let moves: u64 = row.iter().map(|&(_, w)| w).sum();
            row.push((i, denominator - moves));
            row.sort_unstable();
            row
        })
        .collect();
    Ok(TransitionMatrix {
        states,
        index,
        denominator,
        rows,
    })
}

impl TransitionMatrix {
    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    /// States in canonical order: by size, then lexicographic.
    pub fn states(&self) -> &[Matching] {
        &self.states
    }

    pub fn index_of(&self, m: &Matching) -> Option<usize> {
        self.index.get(m).copied()
    }

    pub fn denominator(&self) -> u64 {
        self.denominator
    }

    /// Nonzero entries of row `i` as `(column, numerator)`.
    pub fn row(&self, i: usize) -> &[(usize, u64)] {
        &self.rows[i]
    }

    pub fn numerator(&self, i: usize, j: usize) -> u64 {
        self.rows[i]
            .binary_search_by_key(&j, |&(c, _)| c)
            .map(|pos| self.rows[i][pos].1)
            .unwrap_or(0)
    }

    pub fn probability(&self, i: usize, j: usize) -> Ratio<u64> {
        Ratio::new(self.numerator(i, j), self.denominator)
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.len()).all(|i| self.rows[i].iter().all(|&(j, w)| self.numerator(j, i) == w))
    }

    pub fn rows_sum_to_one(&self) -> bool {
        self.rows
            .iter()
            .all(|row| row.iter().map(|&(_, w)| w).sum::<u64>() == self.denominator)
    }

    /// Column sums equal one, i.e. the uniform vector is stationary.
    pub fn uniform_is_stationary(&self) -> bool {
        let mut col = vec![0u64; self.len()];
        for row in &self.rows {
            for &(j, w) in row {
                col[j] += w;
            }
        }
        col.iter().all(|&c| c == self.denominator)
    }

    pub fn diagonal_at_least_half(&self) -> bool {
        (0..self.len()).all(|i| 2 * self.numerator(i, i) >= self.denominator)
    }

    /// Every state reaches every other through positive-probability moves.
    pub fn is_irreducible(&self) -> bool {
        if self.is_empty() {
            return true;
        }
        let mut seen = vec![false; self.len()];
        seen[0] = true;
        let mut stack = vec![0];
        while let Some(i) = stack.pop() {
            for &(j, w) in &self.rows[i] {
                if w > 0 && !std::mem::replace(&mut seen[j], true) {
                    stack.push(j);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// A positive diagonal entry makes an irreducible chain aperiodic.
    pub fn is_aperiodic(&self) -> bool {
        self.is_irreducible() && (0..self.len()).any(|i| self.numerator(i, i) > 0)
    }

    /// Smallest positive off-diagonal probability.
    pub fn p_min(&self) -> Option<Ratio<u64>> {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(i, row)| row.iter().filter(move |&&(j, w)| j != i && w > 0))
            .map(|&(_, w)| w)
            .min()
            .map(|w| Ratio::new(w, self.denominator))
    }

    /// Undirected edges `{i, j}`, `i < j`, of the transition graph.
    pub fn transitions(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(i, row)| row.iter().filter(move |&&(j, w)| j > i && w > 0).map(move |&(j, _)| (i, j)))
    }

    pub fn to_dense(&self) -> Vec<Vec<f64>> {
        let d = self.denominator as f64;
        let mut out = vec![vec![0.0; self.len()]; self.len()];
        for (i, row) in self.rows.iter().enumerate() {
            for &(j, w) in row {
                out[i][j] = w as f64 / d;
            }
        }
        out
    }

    /// Text dump with exact reduced rationals `p/q`, one nonzero entry per line.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "states {}", self.len());
        for (i, s) in self.states.iter().enumerate() {
            let _ = writeln!(out, "state {i} {s}");
        }
        for (i, row) in self.rows.iter().enumerate() {
            for &(j, w) in row {
                let p = Ratio::new(w, self.denominator);
                let _ = writeln!(out, "p {i} {j} {}/{}", p.numer(), p.denom());
            }
        }
        out
    }
}
