mod common;

use std::collections::HashSet;

use num_bigint::BigUint;
use num_rational::Ratio;
use proptest::prelude::*;

use hypermatch::chain::{apply_edge, build_transition_matrix, step, transition_probability, ChainRunner, TransitionKind};
use hypermatch::counting::{count_exact, enumerate_matchings};
use hypermatch::decompose::{decompose, ComponentKind, Owner};
use hypermatch::generators::gen_random_kgraph;
use hypermatch::paths::{canonical_path, decode, eta, in_omega_prime};
use hypermatch::rng::stream_rng;
use hypermatch::{Hypergraph, Matching};

/// Small random k-graphs, comb-free or not.
fn any_small() -> impl Strategy<Value = Hypergraph> {
    (5usize..=9, 2usize..=4, 0.05f64..0.5, any::<u64>()).prop_filter_map("too many edges", |(n, k, p, seed)| {
        let k = k.min(n - 1);
        let h = gen_random_kgraph(n, k, p, seed).ok()?;
        (h.num_edges() <= 14).then_some(h)
    })
}

fn comb_free_small() -> impl Strategy<Value = Hypergraph> {
    any_small().prop_filter("contains a 3-comb", |h| h.is_comb_free())
}

fn sets_meet(h: &Hypergraph, a: usize, b: usize) -> bool {
    h.edge(a).iter().any(|v| h.edge(b).contains(v))
}

fn sym_diff(a: &[usize], b: &[usize]) -> Vec<usize> {
    let x: HashSet<usize> = a.iter().copied().collect();
    let y: HashSet<usize> = b.iter().copied().collect();
    let mut v: Vec<usize> = x.symmetric_difference(&y).copied().collect();
    v.sort_unstable();
    v
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn comb_search_matches_claw_search(h in any_small()) {
        prop_assert_eq!(h.find_three_comb().is_none(), !common::brute_force_claw(&h));
        if let Some(c) = h.find_three_comb() {
            let [a, b, d] = c.teeth;
            prop_assert!(!sets_meet(&h, a, b) && !sets_meet(&h, a, d) && !sets_meet(&h, b, d));
            prop_assert!(c.teeth.iter().all(|&t| sets_meet(&h, t, c.spine)));
        }
    }

    #[test]
    fn deleting_edges_keeps_comb_freeness(h in comb_free_small(), drop in any::<prop::sample::Index>()) {
        prop_assume!(h.num_edges() > 0);
        let gone = drop.index(h.num_edges());
        let keep: Vec<usize> = (0..h.num_edges()).filter(|&e| e != gone).collect();
        prop_assert!(h.restrict(&keep).unwrap().is_comb_free());
    }

    #[test]
    fn decomposition_is_an_ordered_partition(h in comb_free_small(), a in any::<prop::sample::Index>(), b in any::<prop::sample::Index>()) {
        let all = enumerate_matchings(&h, 100_000).unwrap();
        let (i, f) = (&all[a.index(all.len())], &all[b.index(all.len())]);
        let d = decompose(&h, i, f).unwrap();
        let mut seen: Vec<usize> = d.components.iter().flat_map(|c| c.edges.clone()).collect();
        seen.sort_unstable();
        prop_assert_eq!(seen, sym_diff(i.edges(), f.edges()));
        for c in &d.components {
            let s = c.len();
            for x in 0..s {
                for y in x + 1..s {
                    let consecutive = y == x + 1 || (c.kind == ComponentKind::Cycle && x == 0 && y == s - 1);
                    prop_assert_eq!(sets_meet(&h, c.edges[x], c.edges[y]), consecutive);
                }
            }
            prop_assert!(c.owners.windows(2).all(|w| w[0] != w[1]));
            for (&e, &o) in c.edges.iter().zip(&c.owners) {
                let expected = if i.contains(e) { Owner::Initial } else { Owner::Final };
                prop_assert_eq!(o, expected);
            }
            if c.kind == ComponentKind::Cycle {
                prop_assert!(s >= 4 && s % 2 == 0);
            }
        }
        let mins: Vec<usize> = d.components.iter().map(|c| c.edges.iter().map(|&e| h.edge(e)[0]).min().unwrap()).collect();
        prop_assert!(mins.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn canonical_paths_and_encodings(h in comb_free_small(), a in any::<prop::sample::Index>(), b in any::<prop::sample::Index>()) {
        let all = enumerate_matchings(&h, 100_000).unwrap();
        let (i, f) = (&all[a.index(all.len())], &all[b.index(all.len())]);
        let p = canonical_path(&h, i, f).unwrap();
        prop_assert_eq!(&p, &canonical_path(&h, i, f).unwrap());
        prop_assert_eq!(p.matchings.first().unwrap(), i);
        prop_assert_eq!(p.matchings.last().unwrap(), f);
        prop_assert!(p.len() <= i.len() + f.len());
        prop_assert!(i.len() + f.len() <= 2 * h.n() / h.k());
        let lo: HashSet<usize> = i.edges().iter().filter(|e| f.contains(**e)).copied().collect();
        let hi: HashSet<usize> = i.edges().iter().chain(f.edges()).copied().collect();
        for m in &p.matchings {
            prop_assert!(lo.iter().all(|&e| m.contains(e)));
            prop_assert!(m.edges().iter().all(|e| hi.contains(e)));
        }
        for (from, to) in p.transitions() {
            prop_assert!(*transition_probability(&h, from, to).unwrap().numer() > 0);
            let img = eta(&h, i, f, from, to).unwrap();
            prop_assert!(in_omega_prime(&h, img.edges()).unwrap());
            prop_assert_eq!(decode(&h, from, to, &img), Some((i.clone(), f.clone())));
        }
    }

    #[test]
    fn matrix_is_symmetric_doubly_stochastic_and_lazy(h in any_small()) {
        let t = build_transition_matrix(&h, 5_000).unwrap();
        prop_assert!(t.is_symmetric() && t.rows_sum_to_one() && t.uniform_is_stationary());
        prop_assert!(t.diagonal_at_least_half());
        if h.num_edges() > 0 {
            prop_assert_eq!(t.p_min(), Some(Ratio::new(1, 2 * h.num_edges() as u64)));
        }
        let states = t.states();
        for x in 0..states.len().min(12) {
            for y in 0..states.len().min(12) {
                prop_assert_eq!(t.probability(x, y), transition_probability(&h, &states[x], &states[y]).unwrap());
            }
        }
    }

    #[test]
    fn swaps_are_exactly_the_intersecting_pairs(h in any_small()) {
        let all = enumerate_matchings(&h, 2_000).unwrap();
        for m in all.iter().take(30) {
            for m2 in all.iter().take(30) {
                let gone = sym_diff(m.edges(), m2.edges());
                let out: Vec<usize> = gone.iter().copied().filter(|&e| m.contains(e)).collect();
                let inn: Vec<usize> = gone.iter().copied().filter(|&e| m2.contains(e)).collect();
                if let ([g], [e]) = (out.as_slice(), inn.as_slice()) {
                    let realized = apply_edge(&h, m, *e);
                    let meets = sets_meet(&h, *g, *e);
                    prop_assert_eq!(meets, realized == (m2.clone(), TransitionKind::Swap));
                }
            }
        }
    }

    #[test]
    fn exact_counts_agree(h in any_small()) {
        let all = enumerate_matchings(&h, 100_000).unwrap();
        let brute = common::brute_force_matchings(&h);
        prop_assert_eq!(all.len(), brute.len());
        prop_assert_eq!(count_exact(&h), BigUint::from(all.len()));
        let mut as_sets: Vec<Vec<usize>> = all.iter().map(|m| m.edges().to_vec()).collect();
        as_sets.sort();
        let mut brute = brute;
        brute.sort();
        prop_assert_eq!(as_sets, brute);
    }

    #[test]
    fn ladder_levels_at_most_double_and_telescope(h in any_small()) {
        let counts: Vec<BigUint> = (0..=h.num_edges()).map(|i| count_exact(&h.prefix(i))).collect();
        let mut product = Ratio::from_integer(BigUint::from(1u32));
        for w in counts.windows(2) {
            prop_assert!(w[0] <= w[1]);
            prop_assert!(w[1] <= (&w[0] * 2u32));
            product *= Ratio::new(w[0].clone(), w[1].clone());
        }
        prop_assert_eq!(product, Ratio::new(BigUint::from(1u32), counts.last().unwrap().clone()));
    }

    #[test]
    fn runner_tracks_reference_steps(h in any_small(), seed in any::<u64>()) {
        prop_assume!(h.num_edges() > 0);
        let mut runner = ChainRunner::new(&h);
        let (mut ra, mut rb) = (stream_rng(seed, 0), stream_rng(seed, 0));
        let mut m = Matching::empty();
        for _ in 0..300 {
            runner.run(1, &mut ra);
            m = step(&h, &m, &mut rb).unwrap().0;
            prop_assert_eq!(runner.matching(), m.clone());
        }
    }
}

#[test]
fn a_million_steps_stay_matchings() {
    let zoo = common::comb_free_zoo();
    let per = 1_000_000usize.div_ceil(zoo.len());
    for (seed, (name, h)) in zoo.iter().enumerate() {
        let mut rng = stream_rng(seed as u64, 1);
        let mut m = Matching::empty();
        for _ in 0..per {
            m = step(h, &m, &mut rng).unwrap().0;
            assert!(h.is_matching(m.edges()).unwrap(), "{name}");
        }
    }
}

#[test]
fn symmetric_difference_degree_is_at_most_two_on_comb_free_instances() {
    for (name, h) in common::comb_free_zoo() {
        let all = enumerate_matchings(&h, 2_000).unwrap();
        for i in &all {
            for f in &all {
                let diff = sym_diff(i.edges(), f.edges());
                for &e in &diff {
                    let deg = diff.iter().filter(|&&g| g != e && sets_meet(&h, e, g)).count();
                    assert!(deg <= 2, "{name}: edge {e} meets {deg}");
                }
            }
        }
    }
}
