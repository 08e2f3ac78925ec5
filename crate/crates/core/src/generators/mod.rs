//! Constructors for the hypergraph families used as fixtures: 3-comb-free families,
//! 3-comb-containing negatives, and the graph-to-k-graph hardness reduction.
//!
//! Every constructor is deterministic in its parameters (including the seed for the
//! random families) and returns a validated [`Hypergraph`].

mod lattice;
mod triangles;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::rng::stream_rng;

pub use lattice::{gen_heilmann_lattice, gen_hex_3graph};
pub use triangles::{find_windmill, gen_triangle_3graph, Windmill};

fn bad(msg: impl Into<String>) -> Error {
    Error::BadParameters(msg.into())
}

/// The ℓ-overlapping k-cycle `C_n^{(k)}(ℓ)` on cyclically ordered vertices `1..=n`.
///
/// Edge `j` is the segment of `k` consecutive vertices starting at `j(k-ℓ)`, so there
/// are `n/(k-ℓ)` edges and consecutive edges share exactly `ℓ` vertices.
pub fn gen_overlap_cycle(n: usize, k: usize, ell: usize) -> Result<Hypergraph> {
    if k < 2 || ell == 0 || ell >= k {
        return Err(bad(format!("need 1 <= l <= k-1, got k={k}, l={ell}")));
    }
    let step = k - ell;
    if !n.is_multiple_of(step) || n / step < 3 {
        return Err(bad(format!("need (k-l) | n and n/(k-l) >= 3, got n={n}, k-l={step}")));
    }
    // Two consecutive segments must not wrap onto each other.
    if 2 * k - ell > n {
        return Err(bad(format!("need 2k-l <= n, got n={n}, k={k}, l={ell}")));
    }
    let edges = (0..n / step)
        .map(|j| (0..k).map(|t| (j * step + t) % n + 1).collect())
        .collect();
    Hypergraph::validate(edges, n, k)
}

/// The tight cycle `C_n^{(k)}(k-1)`, with `n` edges.
pub fn gen_tight_cycle(n: usize, k: usize) -> Result<Hypergraph> {
    gen_overlap_cycle(n, k, k - 1)
}

/// The enriched tight cycle `D_n^{(k)}`: every edge of `C_n^{(k+1)}(k-1)` is replaced by
/// all of its `k`-subsets, giving `(k+1)n/2` edges.
pub fn gen_enriched_tight_cycle(n: usize, k: usize) -> Result<Hypergraph> {
    if k < 3 || !n.is_multiple_of(2) || n < 2 * (k + 1) {
        return Err(bad(format!("need k >= 3, even n >= 2(k+1), got n={n}, k={k}")));
    }
    let base = gen_overlap_cycle(n, k + 1, k - 1)?;
    let mut edges = Vec::with_capacity(base.num_edges() * (k + 1));
    for e in base.edges() {
        for sub in combinations(e, k) {
            edges.push(sub);
        }
    }
    Hypergraph::validate(edges, n, k)
}

/// Binomial random k-graph `H^{(k)}(n, p)`: each k-subset of `1..=n`, visited in
/// lexicographic order, becomes an edge independently with probability `p`.
pub fn gen_random_kgraph(n: usize, k: usize, p: f64, seed: u64) -> Result<Hypergraph> {
    if !(0.0..=1.0).contains(&p) {
        return Err(bad(format!("probability {p} outside [0, 1]")));
    }
    if k < 2 {
        return Err(Error::InvalidUniformity(k));
    }
    let mut rng = stream_rng(seed, 0x6b67_7261_7068);
    let vertices: Vec<usize> = (1..=n).collect();
    let edges = combinations(&vertices, k)
        .filter(|_| rng.random::<f64>() < p)
        .collect();
    Hypergraph::validate(edges, n, k)
}

/// Erdős–Rényi graph `G(n, p)` as a 2-uniform hypergraph.
pub fn gen_random_graph(n: usize, p: f64, seed: u64) -> Result<Hypergraph> {
    gen_random_kgraph(n, 2, p, seed)
}

/// The subdivided 3-graph `H'_ν`: edge `e = {v1, v2, v3}` gets `ν_e` fresh vertices and
/// is replaced by every triple `{v_i, v_j, v}` with `i < j` and `v` fresh for `e`.
///
/// A single multiplicity is broadcast to all edges.
pub fn gen_subdivided(h3: &Hypergraph, nu: &[usize]) -> Result<Hypergraph> {
    if h3.k() != 3 {
        return Err(bad(format!("subdivision needs a 3-graph, got k={}", h3.k())));
    }
    let m = h3.num_edges();
    let nu: Vec<usize> = match nu.len() {
        1 => vec![nu[0]; m],
        len if len == m => nu.to_vec(),
        len => return Err(bad(format!("{len} multiplicities for {m} edges"))),
    };
    if nu.contains(&0) {
        return Err(bad("multiplicities must be >= 1"));
    }
    let mut next = h3.n();
    let mut edges = Vec::with_capacity(3 * nu.iter().sum::<usize>());
    for (e, &count) in h3.edges().iter().zip(&nu) {
        for _ in 0..count {
            next += 1;
            for (a, b) in [(0, 1), (0, 2), (1, 2)] {
                edges.push(vec![e[a], e[b], next]);
            }
        }
    }
    Hypergraph::validate(edges, next, 3)
}

/// Rooted blow-up: parts `V_1, ..., V_p` of the given sizes (consecutive ids, the first
/// vertex of each part is its root) and, for every pair `i < j`, all k-subsets of
/// `V_i ∪ V_j` containing both roots.
pub fn gen_rooted_blowup(sizes: &[usize], k: usize) -> Result<Hypergraph> {
    if k < 2 {
        return Err(Error::InvalidUniformity(k));
    }
    if sizes.len() < 2 || sizes.contains(&0) {
        return Err(bad("need at least two parts, each of size >= 1"));
    }
    let mut parts = Vec::with_capacity(sizes.len());
    let mut next = 1;
    for &s in sizes {
        parts.push((next..next + s).collect::<Vec<usize>>());
        next += s;
    }
    let n = next - 1;
    let mut edges = Vec::new();
    for i in 0..parts.len() {
        for j in i + 1..parts.len() {
            let others: Vec<usize> = parts[i][1..].iter().chain(&parts[j][1..]).copied().collect();
            if others.len() + 2 < k {
                continue;
            }
            for chosen in combinations(&others, k - 2) {
                let mut e = chosen;
                e.push(parts[i][0]);
                e.push(parts[j][0]);
                edges.push(e);
            }
        }
    }
    if edges.is_empty() {
        return Err(bad(format!("no pair of parts has |V_i| + |V_j| >= k = {k}")));
    }
    Hypergraph::validate(edges, n, k)
}

/// Replaces each graph edge `uv` by the k-tuple `(v, x_1, ..., x_{k-2}, u)` with fresh
/// vertices; matchings of the result correspond one-to-one to matchings of the graph.
pub fn reduce_graph_to_kgraph(g: &Hypergraph, k: usize) -> Result<Hypergraph> {
    if g.k() != 2 {
        return Err(bad(format!("input must be a graph (k=2), got k={}", g.k())));
    }
    if k < 3 {
        return Err(bad(format!("target uniformity must be >= 3, got {k}")));
    }
    let n = g.n() + (k - 2) * g.num_edges();
    let edges = g
        .edges()
        .iter()
        .enumerate()
        .map(|(idx, e)| {
            let fresh = g.n() + (k - 2) * idx;
            let mut t: Vec<usize> = (1..=k - 2).map(|x| fresh + x).collect();
            t.extend_from_slice(e);
            t
        })
        .collect();
    Hypergraph::validate(edges, n, k)
}

/// All `r`-subsets of `items` in lexicographic order of positions.
pub(crate) fn combinations(items: &[usize], r: usize) -> impl Iterator<Item = Vec<usize>> + '_ {
    let n = items.len();
    let mut idx: Option<Vec<usize>> = (r <= n).then(|| (0..r).collect());
    std::iter::from_fn(move || {
        let cur = idx.as_mut()?;
        let out: Vec<usize> = cur.iter().map(|&i| items[i]).collect();
        // Advance to the next combination.
        let mut pos = r;
        loop {
            if pos == 0 {
                idx = None;
                break;
            }
            pos -= 1;
            if cur[pos] < n - r + pos {
                cur[pos] += 1;
                for q in pos + 1..r {
                    cur[q] = cur[q - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    })
}

/// Where a graph-based family takes its graph from.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "source")]
pub enum GraphSource {
    /// `G(n, p)` drawn from the seed.
    Random { n: usize, p: f64, seed: u64 },
    /// The graph passed to [`GeneratorSpec::build`].
    Input,
}

/// A family tag with its parameters.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "family")]
pub enum GeneratorSpec {
    OverlapCycle { n: usize, k: usize, ell: usize },
    TightCycle { n: usize, k: usize },
    EnrichedCycle { n: usize, k: usize },
    Random { n: usize, k: usize, p: f64, seed: u64 },
    Triangle { graph: GraphSource },
    Subdivided { nu: Vec<usize> },
    Blowup { sizes: Vec<usize>, k: usize },
    Hex { rows: usize, cols: usize },
    Heilmann { rows: usize, cols: usize },
    Reduce { k: usize },
}

impl GeneratorSpec {
    /// Family name as used on the command line.
    pub fn family(&self) -> &'static str {
        match self {
            GeneratorSpec::OverlapCycle { .. } => "overlap-cycle",
            GeneratorSpec::TightCycle { .. } => "tight-cycle",
            GeneratorSpec::EnrichedCycle { .. } => "enriched-cycle",
            GeneratorSpec::Random { .. } => "random",
            GeneratorSpec::Triangle { .. } => "triangle",
            GeneratorSpec::Subdivided { .. } => "subdivided",
            GeneratorSpec::Blowup { .. } => "blowup",
            GeneratorSpec::Hex { .. } => "hex",
            GeneratorSpec::Heilmann { .. } => "heilmann",
            GeneratorSpec::Reduce { .. } => "reduce",
        }
    }

    /// Whether the family is guaranteed free of 3-combs.
    pub fn is_comb_free_family(&self) -> bool {
        !matches!(
            self,
            GeneratorSpec::Heilmann { .. } | GeneratorSpec::Random { .. } | GeneratorSpec::Triangle { .. }
        )
    }

    /// Builds the hypergraph. `input` is required by `subdivided`, `reduce` and
    /// `triangle` with [`GraphSource::Input`].
    pub fn build(&self, input: Option<&Hypergraph>) -> Result<Hypergraph> {
        let need_input = || input.ok_or_else(|| bad(format!("family `{}` needs an input hypergraph", self.family())));
        match self {
            GeneratorSpec::OverlapCycle { n, k, ell } => gen_overlap_cycle(*n, *k, *ell),
            GeneratorSpec::TightCycle { n, k } => gen_tight_cycle(*n, *k),
            GeneratorSpec::EnrichedCycle { n, k } => gen_enriched_tight_cycle(*n, *k),
            GeneratorSpec::Random { n, k, p, seed } => gen_random_kgraph(*n, *k, *p, *seed),
            GeneratorSpec::Triangle { graph } => match graph {
                GraphSource::Random { n, p, seed } => gen_triangle_3graph(&gen_random_graph(*n, *p, *seed)?),
                GraphSource::Input => gen_triangle_3graph(need_input()?),
            },
            GeneratorSpec::Subdivided { nu } => gen_subdivided(need_input()?, nu),
            GeneratorSpec::Blowup { sizes, k } => gen_rooted_blowup(sizes, *k),
            GeneratorSpec::Hex { rows, cols } => gen_hex_3graph(*rows, *cols),
            GeneratorSpec::Heilmann { rows, cols } => gen_heilmann_lattice(*rows, *cols),
            GeneratorSpec::Reduce { k } => reduce_graph_to_kgraph(need_input()?, *k),
        }
    }
}
