//! Exhaustive enumeration and exact counting of matchings.

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::hypergraph::{Hypergraph, Matching};

/// Include/exclude backtracking over edge indices with a vertex-occupancy table.
struct Backtrack<'a> {
    h: &'a Hypergraph,
    edges: &'a [usize],
    used: Vec<bool>,
    current: Vec<usize>,
}

impl<'a> Backtrack<'a> {
    fn new(h: &'a Hypergraph, edges: &'a [usize]) -> Self {
        Self {
            h,
            edges,
            used: vec![false; h.n() + 1],
            current: Vec::new(),
        }
    }

    fn free(&self, e: usize) -> bool {
        self.h.edge(e).iter().all(|&v| !self.used[v])
    }

    fn set(&mut self, e: usize, value: bool) {
        for &v in self.h.edge(e) {
            self.used[v] = value;
        }
    }

    /// Calls `visit` on every matching; stops early when `visit` returns false.
    fn visit(&mut self, pos: usize, visit: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        if pos == self.edges.len() {
            return visit(&self.current);
        }
        if !self.visit(pos + 1, visit) {
            return false;
        }
        let e = self.edges[pos];
        if self.free(e) {
            self.set(e, true);
            self.current.push(e);
            let go_on = self.visit(pos + 1, visit);
            self.current.pop();
            self.set(e, false);
            return go_on;
        }
        true
    }

    fn count(&mut self, pos: usize) -> u128 {
        if pos == self.edges.len() {
            return 1;
        }
        let mut total = self.count(pos + 1);
        let e = self.edges[pos];
        if self.free(e) {
            self.set(e, true);
            total += self.count(pos + 1);
            self.set(e, false);
        }
        total
    }
}

/// All matchings of `h`, including the empty one, in canonical order (by size, then
/// lexicographic). Fails with [`Error::CapExceeded`] once more than `cap` are found.
pub fn enumerate_matchings(h: &Hypergraph, cap: usize) -> Result<Vec<Matching>> {
    let edges: Vec<usize> = (0..h.num_edges()).collect();
    let mut out = Vec::new();
    let mut over = false;
    Backtrack::new(h, &edges).visit(0, &mut |m| {
        if out.len() == cap {
            over = true;
            return false;
        }
        let mut v = m.to_vec();
        v.sort_unstable();
        out.push(Matching::from_sorted_unchecked(v));
        true
    });
    if over {
        return Err(Error::CapExceeded { reached: cap + 1 });
    }
    out.sort_unstable();
    Ok(out)
}

/// Connected components of the intersection graph, each as sorted edge indices.
fn intersection_components(h: &Hypergraph) -> Vec<Vec<usize>> {
    let l = h.intersection_graph();
    let mut seen = vec![false; h.num_edges()];
    let mut out = Vec::new();
    for start in 0..h.num_edges() {
        if std::mem::replace(&mut seen[start], true) {
            continue;
        }
        let mut comp = vec![start];
        let mut stack = vec![start];
        while let Some(e) = stack.pop() {
            for &f in l.neighbors(e) {
                if !std::mem::replace(&mut seen[f], true) {
                    comp.push(f);
                    stack.push(f);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

/// Exact `|Ω(H)|`: the product over connected components of the intersection graph of
/// the per-component backtracking counts.
pub fn count_exact(h: &Hypergraph) -> BigUint {
    intersection_components(h)
        .iter()
        .fold(BigUint::from(1u32), |acc, comp| {
            acc * BigUint::from(Backtrack::new(h, comp).count(0))
        })
}
