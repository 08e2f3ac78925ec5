//! Triangle 3-graphs of graphs and the windmill obstruction.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;

/// Four triangles of a graph: a central one and three pairwise vertex-disjoint blades,
/// blade `i` sharing exactly the vertex `center[i]` with the center.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Windmill {
    pub center: [usize; 3],
    pub blades: [[usize; 3]; 3],
}

impl Windmill {
    /// The nine vertices, sorted.
    pub fn vertices(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.blades.iter().flatten().copied().collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    /// The twelve graph edges, each as a sorted pair, sorted.
    pub fn graph_edges(&self) -> Vec<[usize; 2]> {
        let mut out = Vec::with_capacity(12);
        for t in std::iter::once(&self.center).chain(&self.blades) {
            for (a, b) in [(0, 1), (0, 2), (1, 2)] {
                out.push([t[a], t[b]]);
            }
        }
        out.sort_unstable();
        out.dedup();
        out
    }
}

fn adjacency_matrix(g: &Hypergraph) -> Result<Vec<Vec<bool>>> {
    if g.k() != 2 {
        return Err(Error::BadParameters(format!("expected a graph (k=2), got k={}", g.k())));
    }
    let mut adj = vec![vec![false; g.n() + 1]; g.n() + 1];
    for e in g.edges() {
        adj[e[0]][e[1]] = true;
        adj[e[1]][e[0]] = true;
    }
    Ok(adj)
}

fn triangles(g: &Hypergraph) -> Result<Vec<[usize; 3]>> {
    let adj = adjacency_matrix(g)?;
    let mut out = Vec::new();
    for e in g.edges() {
        let (a, b) = (e[0], e[1]);
        out.extend((b + 1..=g.n()).filter(|&c| adj[a][c] && adj[b][c]).map(|c| [a, b, c]));
    }
    out.sort_unstable();
    Ok(out)
}

/// The triangle 3-graph `T(G)`: one hyperedge per triangle of `G`, in lexicographic
/// order. Its matchings are exactly the vertex-disjoint triangle packings of `G`.
pub fn gen_triangle_3graph(g: &Hypergraph) -> Result<Hypergraph> {
    let edges = triangles(g)?.into_iter().map(|t| t.to_vec()).collect();
    Hypergraph::validate(edges, g.n(), 3)
}

/// Finds a windmill subgraph (not necessarily induced), or `None` if `G` is
/// windmill-free, in which case `T(G)` has no 3-comb.
pub fn find_windmill(g: &Hypergraph) -> Result<Option<Windmill>> {
    let tris = triangles(g)?;
    let disjoint = |x: &[usize; 3], y: &[usize; 3]| x.iter().all(|v| !y.contains(v));
    for center in &tris {
        let blades_at = |pos: usize| -> Vec<&[usize; 3]> {
            tris.iter()
                .filter(|t| {
                    t.contains(&center[pos])
                        && (0..3).filter(|&q| q != pos).all(|q| !t.contains(&center[q]))
                })
                .collect()
        };
        let (xs, ys, zs) = (blades_at(0), blades_at(1), blades_at(2));
        for x in &xs {
            for y in ys.iter().filter(|y| disjoint(x, y)) {
                if let Some(z) = zs.iter().find(|z| disjoint(x, z) && disjoint(y, z)) {
                    return Ok(Some(Windmill {
                        center: *center,
                        blades: [**x, **y, **z],
                    }));
                }
            }
        }
    }
    Ok(None)
}
