//! Finite patches of decorated lattices with open boundaries.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;

type Point = (usize, usize);

/// Honeycomb patch of `rows x cols` hexagons where each lattice edge `uv` becomes the
/// triple `{u, w_uv, v}` with a fresh midpoint `w_uv`.
///
/// The honeycomb is laid out as a brick wall: hexagon `(i, j)` spans columns
/// `2j + (i mod 2) ..= 2j + (i mod 2) + 2` on rows `i` and `i + 1`.
pub fn gen_hex_3graph(rows: usize, cols: usize) -> Result<Hypergraph> {
    if rows == 0 || cols == 0 {
        return Err(Error::BadParameters("hex patch needs rows, cols >= 1".into()));
    }
    let mut lattice_edges: BTreeSet<(Point, Point)> = BTreeSet::new();
    for i in 0..rows {
        for j in 0..cols {
            let a = 2 * j + i % 2;
            for y in [i, i + 1] {
                lattice_edges.insert(((y, a), (y, a + 1)));
                lattice_edges.insert(((y, a + 1), (y, a + 2)));
            }
            lattice_edges.insert(((i, a), (i + 1, a)));
            lattice_edges.insert(((i, a + 2), (i + 1, a + 2)));
        }
    }
    let points: BTreeSet<Point> = lattice_edges.iter().flat_map(|&(u, v)| [u, v]).collect();
    let id: BTreeMap<Point, usize> = points.iter().enumerate().map(|(i, &p)| (p, i + 1)).collect();
    let mut next = points.len();
    let edges = lattice_edges
        .iter()
        .map(|(u, v)| {
            next += 1;
            vec![id[u], next, id[v]]
        })
        .collect();
    Hypergraph::validate(edges, next, 3)
}

/// Heilmann's decorated square lattice on a patch of `rows x cols` square cells.
///
/// Every lattice point (there are `(rows+1)(cols+1)`) is a branching point carrying a
/// horizontal triple `{left midpoint, point, right midpoint}` and a vertical triple
/// `{lower midpoint, point, upper midpoint}`. Midpoints sit on lattice edges; on the
/// boundary they sit on dangling half-edges. Intersection graph degree is at most 3 and
/// any patch of at least 1x2 cells contains a 3-comb.
pub fn gen_heilmann_lattice(rows: usize, cols: usize) -> Result<Hypergraph> {
    if rows == 0 || cols == 0 {
        return Err(Error::BadParameters("lattice patch needs rows, cols >= 1".into()));
    }
    let (pr, pc) = (rows + 1, cols + 1);
    let point = |r: usize, c: usize| r * pc + c + 1;
    let base_h = pr * pc;
    // Horizontal midpoint left of point (r, c) is h(r, c); right is h(r, c + 1).
    let hmid = |r: usize, c: usize| base_h + r * (pc + 1) + c + 1;
    let base_v = base_h + pr * (pc + 1);
    // Vertical midpoint below point (r, c) is v(r, c); above is v(r + 1, c).
    let vmid = |r: usize, c: usize| base_v + r * pc + c + 1;
    let n = base_v + (pr + 1) * pc;
    let mut edges = Vec::with_capacity(2 * pr * pc);
    for r in 0..pr {
        for c in 0..pc {
            edges.push(vec![hmid(r, c), point(r, c), hmid(r, c + 1)]);
            edges.push(vec![vmid(r, c), point(r, c), vmid(r + 1, c)]);
        }
    }
    Hypergraph::validate(edges, n, 3)
}
