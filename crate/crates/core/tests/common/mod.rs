//! Independent oracles shared by the integration tests. Nothing here calls the library
//! code it is used to check.

#![allow(dead_code)]

use hypermatch::generators;
use hypermatch::Hypergraph;
use statrs::distribution::{ChiSquared, ContinuousCDF};

/// Induced `K_{1,3}` in the intersection graph, found by trying every 4-subset of edges
/// directly on vertex sets.
pub fn brute_force_claw(h: &Hypergraph) -> bool {
    let m = h.num_edges();
    let meets = |a: usize, b: usize| h.edge(a).iter().any(|v| h.edge(b).contains(v));
    for a in 0..m {
        for b in a + 1..m {
            for c in b + 1..m {
                for d in c + 1..m {
                    let four = [a, b, c, d];
                    for centre in 0..4 {
                        let leaves: Vec<usize> = (0..4).filter(|&i| i != centre).map(|i| four[i]).collect();
                        let star = leaves.iter().all(|&l| meets(four[centre], l));
                        let independent = !meets(leaves[0], leaves[1])
                            && !meets(leaves[0], leaves[2])
                            && !meets(leaves[1], leaves[2]);
                        if star && independent {
                            return true;
                        }
                    }
                }
            }
        }
    }
    false
}

/// Matchings of a hypergraph by subset enumeration over edges (at most 24 edges).
pub fn brute_force_matchings(h: &Hypergraph) -> Vec<Vec<usize>> {
    let m = h.num_edges();
    assert!(m <= 24, "subset enumeration too large");
    let mut out = Vec::new();
    for mask in 0u32..(1 << m) {
        let set: Vec<usize> = (0..m).filter(|&i| mask >> i & 1 == 1).collect();
        let mut seen = std::collections::HashSet::new();
        if set.iter().all(|&e| h.edge(e).iter().all(|&v| seen.insert(v))) {
            out.push(set);
        }
    }
    out
}

/// Matchings of a simple graph given as vertex pairs, counted by recursion on the first
/// edge (include it and drop its neighbours, or drop it).
pub fn graph_matching_count(edges: &[(usize, usize)]) -> u64 {
    match edges.split_first() {
        None => 1,
        Some((&(u, v), rest)) => {
            let without = graph_matching_count(rest);
            let remaining: Vec<(usize, usize)> = rest
                .iter()
                .copied()
                .filter(|&(a, b)| a != u && a != v && b != u && b != v)
                .collect();
            without + graph_matching_count(&remaining)
        }
    }
}

pub fn graph_pairs(g: &Hypergraph) -> Vec<(usize, usize)> {
    g.edges().iter().map(|e| (e[0], e[1])).collect()
}

/// Pearson χ² p-value of observed counts against equal expected counts.
pub fn chi_square_uniform_p(counts: &[u64]) -> f64 {
    let total: u64 = counts.iter().sum();
    let expected = total as f64 / counts.len() as f64;
    chi_square_p(counts, &vec![expected; counts.len()])
}

/// Pearson χ² p-value of observed counts against expected counts, merging no cells.
pub fn chi_square_p(observed: &[u64], expected: &[f64]) -> f64 {
    let cells: Vec<(f64, f64)> = observed
        .iter()
        .zip(expected)
        .filter(|(_, &e)| e > 0.0)
        .map(|(&o, &e)| (o as f64, e))
        .collect();
    if cells.len() < 2 {
        return 1.0;
    }
    let stat: f64 = cells.iter().map(|(o, e)| (o - e).powi(2) / e).sum();
    let dist = ChiSquared::new((cells.len() - 1) as f64).unwrap();
    1.0 - dist.cdf(stat)
}

/// A spread of small comb-free instances from every positive family.
pub fn comb_free_zoo() -> Vec<(String, Hypergraph)> {
    let mut out: Vec<(String, Hypergraph)> = Vec::new();
    let mut add = |name: String, h: hypermatch::Result<Hypergraph>| out.push((name, h.unwrap()));
    for (n, k, l) in [(8, 3, 1), (10, 3, 1), (12, 3, 1), (12, 4, 2), (9, 4, 1), (10, 4, 2)] {
        add(format!("overlap-cycle({n},{k},{l})"), generators::gen_overlap_cycle(n, k, l));
    }
    for (n, k) in [(6, 3), (7, 3), (8, 3), (8, 4)] {
        add(format!("tight-cycle({n},{k})"), generators::gen_tight_cycle(n, k));
    }
    add("enriched-cycle(8,3)".into(), generators::gen_enriched_tight_cycle(8, 3));
    for (r, c) in [(1, 1), (1, 2)] {
        add(format!("hex({r},{c})"), generators::gen_hex_3graph(r, c));
    }
    add("heilmann(1,1)".into(), generators::gen_heilmann_lattice(1, 1));
    add("blowup([1,1,1,1],2)".into(), generators::gen_rooted_blowup(&[1, 1, 1, 1], 2));
    add("blowup([2,1,1],3)".into(), generators::gen_rooted_blowup(&[2, 1, 1], 3));
    let edge = Hypergraph::validate(vec![vec![1, 2, 3]], 3, 3).unwrap();
    add("subdivided(edge,2)".into(), generators::gen_subdivided(&edge, &[2]));
    let path = Hypergraph::validate(vec![vec![1, 2], vec![2, 3], vec![3, 4]], 4, 2).unwrap();
    add("reduce(P4,3)".into(), generators::reduce_graph_to_kgraph(&path, 3));
    let k4 = generators::gen_rooted_blowup(&[1, 1, 1, 1], 2).unwrap();
    add("triangle(K4)".into(), generators::gen_triangle_3graph(&k4));
    out
}
