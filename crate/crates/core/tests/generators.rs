mod common;

use std::collections::HashSet;

use num_bigint::BigUint;

use hypermatch::counting::count_exact;
use hypermatch::generators::{
    find_windmill, gen_enriched_tight_cycle, gen_heilmann_lattice, gen_hex_3graph, gen_overlap_cycle,
    gen_random_graph, gen_random_kgraph, gen_rooted_blowup, gen_subdivided, gen_tight_cycle, gen_triangle_3graph,
    reduce_graph_to_kgraph,
};
use hypermatch::Hypergraph;

fn h(n: usize, k: usize, edges: &[&[usize]]) -> Hypergraph {
    Hypergraph::validate(edges.iter().map(|e| e.to_vec()).collect(), n, k).unwrap()
}

#[test]
fn intersection_graph_examples() {
    let two = h(6, 3, &[&[1, 2, 3], &[4, 5, 6]]);
    assert_eq!(two.intersection_graph().edge_count(), 0);

    let comb = h(10, 3, &[&[1, 2, 3], &[4, 5, 6], &[7, 8, 9], &[3, 6, 9]]);
    let l = comb.intersection_graph();
    assert_eq!(l.degree(3), 3);
    assert!((0..3).all(|i| l.degree(i) == 1));

    let c8 = gen_overlap_cycle(8, 3, 1).unwrap();
    let l = c8.intersection_graph();
    assert_eq!(l.node_count(), 4);
    assert_eq!(l.edge_count(), 4);
    assert!((0..4).all(|i| l.degree(i) == 2));
}

#[test]
fn four_uniform_comb_is_found() {
    let comb = h(13, 4, &[&[1, 2, 3, 4], &[5, 6, 7, 8], &[9, 10, 11, 12], &[4, 8, 12, 13]]);
    let found = comb.find_three_comb().expect("comb");
    assert_eq!(found.spine, 3);
    assert_eq!(found.teeth, [0, 1, 2]);
    assert!(common::brute_force_claw(&comb));
}

#[test]
fn cycle_families() {
    assert_eq!(gen_overlap_cycle(8, 3, 1).unwrap().num_edges(), 4);
    for (n, k) in [(7, 3), (9, 4), (10, 5)] {
        let t = gen_overlap_cycle(n, k, k - 1).unwrap();
        assert_eq!(t.num_edges(), n);
        assert_eq!(t, gen_tight_cycle(n, k).unwrap());
    }
    for (n, k, l) in [(12, 4, 2), (12, 3, 1), (18, 4, 1), (15, 6, 3)] {
        assert!(gen_overlap_cycle(n, k, l).unwrap().max_vertex_degree() <= 2);
    }
}

#[test]
fn enriched_cycles() {
    let d = gen_enriched_tight_cycle(12, 3).unwrap();
    assert_eq!(d.num_edges(), 24);
    assert!(d.find_three_comb().is_none());
    assert_eq!(gen_enriched_tight_cycle(16, 4).unwrap().num_edges(), 40);
    for (n, k) in [(12, 3), (16, 4), (14, 3)] {
        let d = gen_enriched_tight_cycle(n, k).unwrap();
        let edges: HashSet<Vec<usize>> = d.edges().iter().cloned().collect();
        let tight = gen_tight_cycle(n, k).unwrap();
        assert!(tight.edges().iter().all(|e| edges.contains(e)));
    }
}

#[test]
fn random_kgraph_edge_cases() {
    assert_eq!(gen_random_kgraph(8, 3, 0.0, 1).unwrap().num_edges(), 0);
    assert_eq!(gen_random_kgraph(4, 4, 1.0, 1).unwrap().num_edges(), 1);
    assert_eq!(gen_random_kgraph(9, 3, 0.3, 77).unwrap(), gen_random_kgraph(9, 3, 0.3, 77).unwrap());
    let n = 30usize;
    let p = (n as f64).powf(-3.0 + 0.7);
    let free = (0..100).filter(|&s| gen_random_kgraph(n, 3, p, s).unwrap().is_comb_free()).count();
    assert!(free >= 90, "{free}/100");
}

fn triangles_of(edges: &[(usize, usize)], n: usize) -> Vec<[usize; 3]> {
    let adj: HashSet<(usize, usize)> = edges.iter().flat_map(|&(a, b)| [(a, b), (b, a)]).collect();
    let mut out = Vec::new();
    for a in 1..=n {
        for b in a + 1..=n {
            for c in b + 1..=n {
                if adj.contains(&(a, b)) && adj.contains(&(a, c)) && adj.contains(&(b, c)) {
                    out.push([a, b, c]);
                }
            }
        }
    }
    out
}

fn packings(tris: &[[usize; 3]]) -> u64 {
    match tris.split_first() {
        None => 1,
        Some((t, rest)) => {
            let disjoint: Vec<[usize; 3]> = rest.iter().copied().filter(|r| r.iter().all(|v| !t.contains(v))).collect();
            packings(rest) + packings(&disjoint)
        }
    }
}

#[test]
fn triangle_matchings_are_triangle_packings() {
    for seed in 0..30 {
        let n = 7 + (seed as usize % 6);
        let g = gen_random_graph(n, 0.5, seed).unwrap();
        let t = gen_triangle_3graph(&g).unwrap();
        let tris = triangles_of(&common::graph_pairs(&g), n);
        assert_eq!(t.num_edges(), tris.len());
        assert_eq!(count_exact(&t), BigUint::from(packings(&tris)), "seed {seed}");
        if find_windmill(&g).unwrap().is_none() {
            assert!(t.is_comb_free(), "windmill-free graph gave a comb, seed {seed}");
        }
    }
}

/// Weighted matching count of a graph whose edges carry multiplicities.
fn weighted_matchings(edges: &[((usize, usize), u64)]) -> u64 {
    match edges.split_first() {
        None => 1,
        Some((&((u, v), w), rest)) => {
            let disjoint: Vec<((usize, usize), u64)> = rest
                .iter()
                .copied()
                .filter(|&((a, b), _)| a != u && a != v && b != u && b != v)
                .collect();
            weighted_matchings(rest) + w * weighted_matchings(&disjoint)
        }
    }
}

#[test]
fn subdivisions() {
    let one = h(3, 3, &[&[1, 2, 3]]);
    let s = gen_subdivided(&one, &[1]).unwrap();
    assert_eq!((s.n(), s.num_edges()), (4, 3));

    let comb = h(10, 3, &[&[1, 2, 3], &[4, 5, 6], &[7, 8, 9], &[3, 6, 9]]);
    for nu in [vec![1], vec![2, 1, 3, 1]] {
        let s = gen_subdivided(&comb, &nu).unwrap();
        assert!(s.is_comb_free());
        let total: usize = if nu.len() == 1 { nu[0] * 4 } else { nu.iter().sum() };
        assert_eq!(s.n(), 10 + total);
        assert_eq!(s.num_edges(), 3 * total);
    }

    // Simple 3-graphs: matchings of H'_ν are weighted matchings of the shadow graph.
    let simple = [
        h(7, 3, &[&[1, 2, 3], &[3, 4, 5], &[5, 6, 7]]),
        h(9, 3, &[&[1, 2, 3], &[3, 4, 5], &[5, 6, 1], &[2, 7, 8]]),
        h(7, 3, &[&[1, 2, 3], &[1, 4, 5], &[1, 6, 7], &[2, 4, 6]]),
    ];
    for g in &simple {
        let nu: Vec<usize> = (0..g.num_edges()).map(|i| 1 + i % 3).collect();
        let shadow: Vec<((usize, usize), u64)> = g
            .edges()
            .iter()
            .zip(&nu)
            .flat_map(|(e, &w)| [((e[0], e[1]), w as u64), ((e[0], e[2]), w as u64), ((e[1], e[2]), w as u64)])
            .collect();
        let s = gen_subdivided(g, &nu).unwrap();
        assert_eq!(count_exact(&s), BigUint::from(weighted_matchings(&shadow)));
    }
}

fn binom(n: usize, r: usize) -> usize {
    if r > n {
        return 0;
    }
    (0..r).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

#[test]
fn rooted_blowups() {
    for parts in 3..7 {
        let kn = gen_rooted_blowup(&vec![1; parts], 2).unwrap();
        assert_eq!(kn.num_edges(), binom(parts, 2));
        assert_eq!(kn.max_vertex_degree(), parts - 1);
    }
    assert!(gen_rooted_blowup(&[2, 2, 2, 2], 3).unwrap().is_comb_free());
    for (sizes, k) in [(vec![2, 3, 1], 3), (vec![3, 3, 2, 1], 4), (vec![2, 2, 2], 3)] {
        let b = gen_rooted_blowup(&sizes, k).unwrap();
        let mut expected = 0;
        for i in 0..sizes.len() {
            for j in i + 1..sizes.len() {
                expected += binom(sizes[i] + sizes[j] - 2, k - 2);
            }
        }
        assert_eq!(b.num_edges(), expected);
        assert!(b.is_comb_free());
    }
}

#[test]
fn lattices() {
    for (r, c) in [(1, 1), (2, 2), (2, 3), (3, 4)] {
        let hex = gen_hex_3graph(r, c).unwrap();
        assert!(hex.find_three_comb().is_none());
        assert!(hex.intersection_graph().max_degree() <= 4);
    }
    for (r, c) in [(2, 2), (3, 2), (4, 4)] {
        assert!(gen_heilmann_lattice(r, c).unwrap().find_three_comb().is_some());
    }
}

#[test]
fn reduction_examples() {
    let path = h(3, 2, &[&[1, 2], &[2, 3]]);
    let r = reduce_graph_to_kgraph(&path, 3).unwrap();
    assert_eq!(r.num_edges(), 2);
    assert_eq!(r.intersection_graph().edge_count(), 1);
    assert_eq!(count_exact(&r), BigUint::from(3u32));
    assert_eq!(common::graph_matching_count(&common::graph_pairs(&path)), 3);

    let k4_minus = h(4, 2, &[&[1, 2], &[1, 3], &[1, 4], &[2, 3], &[3, 4]]);
    let r = reduce_graph_to_kgraph(&k4_minus, 4).unwrap();
    assert_eq!(r.n(), 4 + 2 * 5);
    assert_eq!(count_exact(&r), BigUint::from(common::graph_matching_count(&common::graph_pairs(&k4_minus))));
    assert!(r.is_comb_free());
    assert!(r.max_vertex_degree() <= k4_minus.max_vertex_degree());
}

#[test]
fn zoo_is_comb_free() {
    for (name, g) in common::comb_free_zoo() {
        assert!(g.is_comb_free(), "{name}");
    }
}
