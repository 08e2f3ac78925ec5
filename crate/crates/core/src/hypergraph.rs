//! Uniform hypergraphs, matchings, intersection graphs and 3-comb detection.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sets;

/// A k-uniform hypergraph on vertices `1..=n`.
///
/// Edges are stored sorted, and an edge's position in [`Hypergraph::edges`] is its
/// identity for every downstream structure (matchings, transition matrices, paths).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hypergraph {
    n: usize,
    k: usize,
    edges: Vec<Vec<usize>>,
    // incidence[v] lists the edges through vertex v; slot 0 is unused.
    incidence: Vec<Vec<usize>>,
}

impl Hypergraph {
    /// Builds a hypergraph, rejecting malformed input instead of repairing it.
    pub fn validate(raw_edges: Vec<Vec<usize>>, n: usize, k: usize) -> Result<Self> {
        if k < 2 {
            return Err(Error::InvalidUniformity(k));
        }
        let mut edges = Vec::with_capacity(raw_edges.len());
        let mut seen: HashMap<Vec<usize>, usize> = HashMap::with_capacity(raw_edges.len());
        for (idx, mut edge) in raw_edges.into_iter().enumerate() {
            if edge.len() != k {
                return Err(Error::WrongEdgeSize {
                    edge: idx,
                    expected: k,
                    found: edge.len(),
                });
            }
            if let Some(&vertex) = edge.iter().find(|&&v| v == 0 || v > n) {
                return Err(Error::VertexOutOfRange {
                    edge: idx,
                    vertex,
                    n,
                });
            }
            edge.sort_unstable();
            if let Some(w) = edge.windows(2).find(|w| w[0] == w[1]) {
                return Err(Error::DuplicateVertexInEdge {
                    edge: idx,
                    vertex: w[0],
                });
            }
            if let Some(&first) = seen.get(&edge) {
                return Err(Error::DuplicateEdge { first, second: idx });
            }
            seen.insert(edge.clone(), idx);
            edges.push(edge);
        }
        let mut incidence = vec![Vec::new(); n + 1];
        for (idx, edge) in edges.iter().enumerate() {
            for &v in edge {
                incidence[v].push(idx);
            }
        }
        Ok(Self {
            n,
            k,
            edges,
            incidence,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Vec<usize>] {
        &self.edges
    }

    pub fn edge(&self, idx: usize) -> &[usize] {
        &self.edges[idx]
    }

    /// Edges containing vertex `v` (1-based), in index order.
    pub fn edges_through(&self, v: usize) -> &[usize] {
        &self.incidence[v]
    }

    pub fn intersects(&self, a: usize, b: usize) -> bool {
        sets::sorted_intersect(&self.edges[a], &self.edges[b])
    }

    /// Maximum number of edges through a single vertex.
    pub fn max_vertex_degree(&self) -> usize {
        self.incidence.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Sub-hypergraph on the same vertex set keeping only the first `len` edges.
    pub fn prefix(&self, len: usize) -> Self {
        let len = len.min(self.edges.len());
        let edges = self.edges[..len].to_vec();
        Self::validate(edges, self.n, self.k).expect("prefix of a valid hypergraph is valid")
    }

    /// Sub-hypergraph keeping the given edges (renumbered in the given order).
    pub fn restrict(&self, keep: &[usize]) -> Result<Self> {
        let mut edges = Vec::with_capacity(keep.len());
        for &i in keep {
            self.check_index(i)?;
            edges.push(self.edges[i].clone());
        }
        Self::validate(edges, self.n, self.k)
    }

    pub(crate) fn check_index(&self, idx: usize) -> Result<()> {
        if idx < self.edges.len() {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange {
                index: idx,
                edges: self.edges.len(),
            })
        }
    }

    /// True iff the referenced edges are pairwise disjoint.
    pub fn is_matching(&self, indices: &[usize]) -> Result<bool> {
        let mut used = vec![false; self.n + 1];
        for &i in indices {
            self.check_index(i)?;
        }
        let mut sorted = indices.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        for i in sorted {
            for &v in &self.edges[i] {
                if std::mem::replace(&mut used[v], true) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    pub fn intersection_graph(&self) -> IntersectionGraph {
        IntersectionGraph::new(self)
    }

    /// Searches for a 3-comb: three pairwise disjoint edges all meeting a fourth.
    ///
    /// Spines are tried in index order and teeth triples lexicographically, so the
    /// witness returned is deterministic.
    pub fn find_three_comb(&self) -> Option<ThreeComb> {
        let graph = self.intersection_graph();
        for spine in 0..self.edges.len() {
            let nbrs = graph.neighbors(spine);
            if nbrs.len() < 3 {
                continue;
            }
            for (ai, &a) in nbrs.iter().enumerate() {
                for (bi, &b) in nbrs.iter().enumerate().skip(ai + 1) {
                    if graph.adjacent(a, b) {
                        continue;
                    }
                    for &c in &nbrs[bi + 1..] {
                        if !graph.adjacent(a, c) && !graph.adjacent(b, c) {
                            return Some(ThreeComb {
                                teeth: [a, b, c],
                                spine,
                            });
                        }
                    }
                }
            }
        }
        None
    }

    pub fn is_comb_free(&self) -> bool {
        self.find_three_comb().is_none()
    }

    pub(crate) fn require_comb_free(&self) -> Result<()> {
        match self.find_three_comb() {
            None => Ok(()),
            Some(comb) => Err(Error::NotCombFree(comb)),
        }
    }
}

/// Witness of a 3-comb: `teeth` are pairwise disjoint, each meets `spine`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ThreeComb {
    pub teeth: [usize; 3],
    pub spine: usize,
}

impl ThreeComb {
    /// The witness as `(i1, i2, i3, i4)` with `i4` the spine.
    pub fn as_tuple(&self) -> (usize, usize, usize, usize) {
        (self.teeth[0], self.teeth[1], self.teeth[2], self.spine)
    }
}

/// Graph on the edges of a hypergraph, adjacent iff the edges share a vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntersectionGraph {
    adjacency: Vec<Vec<usize>>,
}

impl IntersectionGraph {
    pub fn new(h: &Hypergraph) -> Self {
        let mut adjacency = vec![Vec::new(); h.num_edges()];
        for through in h.incidence.iter().skip(1) {
            for (i, &a) in through.iter().enumerate() {
                for &b in &through[i + 1..] {
                    adjacency[a].push(b);
                    adjacency[b].push(a);
                }
            }
        }
        for list in &mut adjacency {
            list.sort_unstable();
            list.dedup();
        }
        Self { adjacency }
    }

    pub fn node_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn neighbors(&self, node: usize) -> &[usize] {
        &self.adjacency[node]
    }

    pub fn degree(&self, node: usize) -> usize {
        self.adjacency[node].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adjacency.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn adjacent(&self, a: usize, b: usize) -> bool {
        self.adjacency[a].binary_search(&b).is_ok()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }
}

/// A set of pairwise disjoint edges, stored as sorted edge indices.
///
/// The ordering is by size first and then lexicographic, which is the canonical state
/// order used by the chain and the enumerator.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Matching(Vec<usize>);

impl Matching {
    pub fn empty() -> Self {
        Self(Vec::new())
    }

    /// Validates that `indices` are in range and pairwise disjoint.
    pub fn new(h: &Hypergraph, indices: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut v: Vec<usize> = indices.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        if !h.is_matching(&v)? {
            return Err(Error::NotAMatching);
        }
        Ok(Self(v))
    }

    /// Wraps indices that the caller knows to be a sorted, duplicate-free matching.
    pub(crate) fn from_sorted_unchecked(v: Vec<usize>) -> Self {
        debug_assert!(v.windows(2).all(|w| w[0] < w[1]));
        Self(v)
    }

    pub fn edges(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, edge: usize) -> bool {
        self.0.binary_search(&edge).is_ok()
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.0
    }

    /// Checks the matching property against `h`.
    pub fn check(&self, h: &Hypergraph) -> Result<()> {
        if h.is_matching(&self.0)? {
            Ok(())
        } else {
            Err(Error::NotAMatching)
        }
    }

    pub(crate) fn with(&self, edge: usize) -> Self {
        let mut v = self.0.clone();
        if let Err(pos) = v.binary_search(&edge) {
            v.insert(pos, edge);
        }
        Self(v)
    }

    pub(crate) fn without(&self, edge: usize) -> Self {
        let mut v = self.0.clone();
        if let Ok(pos) = v.binary_search(&edge) {
            v.remove(pos);
        }
        Self(v)
    }
}

impl PartialOrd for Matching {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Matching {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl fmt::Display for Matching {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}}")
    }
}
