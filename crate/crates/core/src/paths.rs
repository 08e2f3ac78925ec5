//! Canonical paths between matchings, the encoding `η`, its inverse, and an exhaustive
//! congestion report for small hypergraphs.

use std::collections::{HashMap, HashSet};
use std::fmt::Write as _;

use rand::seq::index::sample;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::chain::{build_transition_matrix, TransitionKind, TransitionMatrix};
use crate::decompose::{decompose, untagged_components, ComponentDecomposition, ComponentKind, Owner};
use crate::error::{Error, Result};
use crate::exec::{self, Execution};
use crate::hypergraph::{Hypergraph, Matching};
use crate::rng::stream_rng;
use crate::sets;

/// The path `γ(I, F) = (M_0, ..., M_t)` with, for every transition, its kind and the
/// index of the component of `I ⊕ F` it happens in.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CanonicalPath {
    pub matchings: Vec<Matching>,
    pub venues: Vec<usize>,
    pub kinds: Vec<TransitionKind>,
}

impl CanonicalPath {
    /// Number of transitions `t`.
    pub fn len(&self) -> usize {
        self.venues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.venues.is_empty()
    }

    pub fn transitions(&self) -> impl Iterator<Item = (&Matching, &Matching)> + '_ {
        self.matchings.windows(2).map(|w| (&w[0], &w[1]))
    }

    /// Position `j` with `(M_j, M_{j+1}) = (from, to)`.
    pub fn position_of(&self, from: &Matching, to: &Matching) -> Option<usize> {
        self.transitions().position(|(a, b)| a == from && b == to)
    }

    /// One line per transition: index, kind, edges added and removed, venue, result.
    pub fn step_log(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "start {}", self.matchings[0]);
        for (j, (a, b)) in self.transitions().enumerate() {
            let mut change = String::new();
            for e in sets::difference(b.edges(), a.edges()) {
                let _ = write!(change, " +{e}");
            }
            for e in sets::difference(a.edges(), b.edges()) {
                let _ = write!(change, " -{e}");
            }
            let _ = writeln!(out, "{j} {:?}{change} venue {} -> {b}", self.kinds[j], self.venues[j]);
        }
        out
    }
}

/// A set of edges, the value of `η`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct EncodingImage(pub Vec<usize>);

impl EncodingImage {
    pub fn edges(&self) -> &[usize] {
        &self.0
    }
}

/// `γ(I, F)` together with the decomposition it was built from. No comb check.
fn build_path(h: &Hypergraph, initial: &Matching, fin: &Matching) -> Result<(CanonicalPath, ComponentDecomposition)> {
    let d = decompose(h, initial, fin)?;
    let mut current = initial.clone();
    let mut path = CanonicalPath {
        matchings: vec![current.clone()],
        venues: Vec::new(),
        kinds: Vec::new(),
    };
    let push = |m: Matching, kind: TransitionKind, venue: usize, path: &mut CanonicalPath| {
        path.matchings.push(m);
        path.kinds.push(kind);
        path.venues.push(venue);
    };
    for (r, q) in d.components.iter().enumerate() {
        let e = &q.edges;
        let s = e.len();
        let swaps = |from: usize, to: usize, current: &mut Matching, path: &mut CanonicalPath| {
            let mut j = from;
            while j + 1 < to {
                *current = current.without(e[j + 1]).with(e[j]);
                push(current.clone(), TransitionKind::Swap, r, path);
                j += 2;
            }
        };
        match (q.kind, q.owners[0]) {
            (ComponentKind::EvenPath, _) => swaps(0, s, &mut current, &mut path),
            (ComponentKind::OddPath, Owner::Initial) => {
                current = current.without(e[0]);
                push(current.clone(), TransitionKind::Remove, r, &mut path);
                swaps(1, s, &mut current, &mut path);
            }
            (ComponentKind::OddPath, Owner::Final) => {
                swaps(0, s - 1, &mut current, &mut path);
                current = current.with(e[s - 1]);
                push(current.clone(), TransitionKind::Add, r, &mut path);
            }
            (ComponentKind::Cycle, _) => {
                current = current.without(e[0]);
                push(current.clone(), TransitionKind::Remove, r, &mut path);
                swaps(1, s - 1, &mut current, &mut path);
                current = current.with(e[s - 1]);
                push(current.clone(), TransitionKind::Add, r, &mut path);
            }
        }
    }
    Ok((path, d))
}

/// The canonical path from `initial` to `fin`.
pub fn canonical_path(h: &Hypergraph, initial: &Matching, fin: &Matching) -> Result<CanonicalPath> {
    initial.check(h)?;
    fin.check(h)?;
    h.require_comb_free()?;
    Ok(build_path(h, initial, fin)?.0)
}

fn encode(initial: &Matching, fin: &Matching, from: &Matching, to: &Matching) -> EncodingImage {
    let diff = sets::symmetric_difference(initial.edges(), fin.edges());
    let union = sets::union(from.edges(), to.edges());
    EncodingImage(sets::symmetric_difference(&diff, &union))
}

/// `η_{M,M'}(I, F) = (I ⊕ F) ⊕ (M ∪ M')`, for `(M, M')` a transition of `γ(I, F)`.
pub fn eta(h: &Hypergraph, initial: &Matching, fin: &Matching, from: &Matching, to: &Matching) -> Result<EncodingImage> {
    let path = canonical_path(h, initial, fin)?;
    path.position_of(from, to).ok_or(Error::TransitionNotOnPath)?;
    Ok(encode(initial, fin, from, to))
}

/// Whether `edges` is a matching or becomes one after deleting a single edge.
///
/// Matchings themselves, the empty set included, count as members.
pub fn in_omega_prime(h: &Hypergraph, edges: &[usize]) -> Result<bool> {
    let mut conflicts: Option<(usize, usize)> = None;
    let mut all = edges.to_vec();
    all.sort_unstable();
    all.dedup();
    for &e in &all {
        h.check_index(e)?;
    }
    'outer: for (a, &x) in all.iter().enumerate() {
        for &y in &all[a + 1..] {
            if h.intersects(x, y) {
                conflicts = Some((x, y));
                break 'outer;
            }
        }
    }
    let Some((x, y)) = conflicts else { return Ok(true) };
    for drop in [x, y] {
        let rest: Vec<usize> = all.iter().copied().filter(|&e| e != drop).collect();
        if h.is_matching(&rest)? {
            return Ok(true);
        }
    }
    Ok(false)
}

fn omega_prime_from_states(h: &Hypergraph, states: &[Matching]) -> usize {
    let mut seen: HashSet<Vec<usize>> = states.iter().map(|m| m.edges().to_vec()).collect();
    for m in states {
        for e in (0..h.num_edges()).filter(|&e| !m.contains(e)) {
            seen.insert(m.with(e).into_vec());
        }
    }
    seen.len()
}

/// Exact `|Ω'(H)|`, with `Ω'` taken as `Ω ∪ {M + e}`.
pub fn omega_prime_count(h: &Hypergraph, state_cap: usize) -> Result<usize> {
    let states = crate::counting::enumerate_matchings(h, state_cap).map_err(|e| match e {
        Error::CapExceeded { reached } => Error::StateSpaceTooLarge {
            states: reached,
            cap: state_cap,
        },
        other => other,
    })?;
    Ok(omega_prime_from_states(h, &states))
}

/// Recovers `(I, F)` from a transition `(M, M')` and an image `η`, or `None` if `η` is
/// not `η_{M,M'}` of any pair whose canonical path uses the transition.
///
/// `I ⊕ F = η ⊕ (M ∪ M')` and `I ∩ F = M \ (I ⊕ F)`. Components before the venue hold
/// their `F` edges in `M`, components after it their `I` edges. On the venue, an edge
/// leaving (`M \ M' = {e}`) is in `I`; otherwise the edge arriving is in `F`, and owners
/// alternate from there.
pub fn decode(h: &Hypergraph, from: &Matching, to: &Matching, img: &EncodingImage) -> Option<(Matching, Matching)> {
    if from.check(h).is_err() || to.check(h).is_err() || img.0.iter().any(|&e| e >= h.num_edges()) {
        return None;
    }
    let gone = sets::difference(from.edges(), to.edges());
    let came = sets::difference(to.edges(), from.edges());
    let anchor = match (gone.as_slice(), came.as_slice()) {
        ([e], []) => (*e, Owner::Initial),
        ([], [f]) => (*f, Owner::Final),
        ([e], [f]) if h.intersects(*e, *f) => (*e, Owner::Initial),
        _ => return None,
    };
    let mut image = img.0.clone();
    image.sort_unstable();
    image.dedup();
    let union = sets::union(from.edges(), to.edges());
    let diff = sets::symmetric_difference(&image, &union);
    let common = sets::difference(from.edges(), &diff);
    let components = untagged_components(h, &diff)?;
    let venue = components.iter().position(|(c, _)| c.contains(&anchor.0))?;

    let mut initial = common.clone();
    let mut fin = common;
    for (r, (edges, _)) in components.iter().enumerate() {
        let owners: Vec<Owner> = if r == venue {
            let at = edges.iter().position(|&e| e == anchor.0).unwrap();
            (0..edges.len())
                .map(|i| if (i + at) % 2 == 0 { anchor.1 } else { anchor.1.other() })
                .collect()
        } else {
            let in_m = if r < venue { Owner::Final } else { Owner::Initial };
            edges
                .iter()
                .map(|&e| if from.contains(e) { in_m } else { in_m.other() })
                .collect()
        };
        for (&e, owner) in edges.iter().zip(owners) {
            match owner {
                Owner::Initial => initial.push(e),
                Owner::Final => fin.push(e),
            }
        }
    }
    let initial = Matching::new(h, initial).ok()?;
    let fin = Matching::new(h, fin).ok()?;
    let (path, _) = build_path(h, &initial, &fin).ok()?;
    path.position_of(from, to)?;
    (encode(&initial, &fin, from, to) == EncodingImage(image)).then_some((initial, fin))
}

/// Congestion of one directed transition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransitionCongestion {
    pub id: usize,
    pub from: usize,
    pub to: usize,
    /// `|Π_{M,M'}|`: ordered pairs `(I, F)` whose canonical path uses this transition.
    pub paths: u64,
    /// `paths <= |Ω'|`.
    pub certificate: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CongestionReport {
    pub states: usize,
    pub omega_prime: usize,
    /// `n^k`, absent if it overflows.
    pub n_pow_k: Option<u128>,
    /// `|Ω'| <= n^k |Ω|`.
    pub omega_prime_within_bound: bool,
    pub transitions: Vec<TransitionCongestion>,
    pub max_congestion: u64,
    pub pairs_checked: u64,
    /// Paths breaking one of: endpoints, moves are transitions, `I ∩ F ⊆ M_j ⊆ I ∪ F`,
    /// the before/after-venue containments, or `t <= |I| + |F|`.
    pub property_violations: u64,
    /// Images `η` outside `Ω'`.
    pub eta_outside: u64,
    /// Images that did not decode back to their pair.
    pub decode_failures: u64,
    pub cuts_sampled: usize,
    /// Sampled cuts with `|cut(S)| n^k |Ω| < |S| (|Ω| - |S|)`.
    pub cut_violations: usize,
}

impl CongestionReport {
    pub fn certificate_failures(&self) -> usize {
        self.transitions.iter().filter(|t| !t.certificate).count()
    }

    /// No violation of any kind.
    pub fn all_ok(&self) -> bool {
        self.omega_prime_within_bound
            && self.property_violations == 0
            && self.eta_outside == 0
            && self.decode_failures == 0
            && self.cut_violations == 0
            && self.certificate_failures() == 0
    }

    /// CSV with columns `transition_id,from,to,paths,omega_prime,certificate`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("transition_id,from,to,paths,omega_prime,certificate\n");
        for t in &self.transitions {
            let _ = writeln!(out, "{},{},{},{},{},{}", t.id, t.from, t.to, t.paths, self.omega_prime, t.certificate);
        }
        out
    }
}

#[derive(Clone, Default)]
struct Tally {
    counts: Vec<u64>,
    pairs: u64,
    property: u64,
    eta_outside: u64,
    decode: u64,
}

impl Tally {
    fn merge(mut self, other: Tally) -> Tally {
        if self.counts.is_empty() {
            return other;
        }
        for (a, b) in self.counts.iter_mut().zip(&other.counts) {
            *a += b;
        }
        self.pairs += other.pairs;
        self.property += other.property;
        self.eta_outside += other.eta_outside;
        self.decode += other.decode;
        self
    }
}

/// Checks a path against the four structural properties and the length bound.
fn path_is_sound(
    t: &TransitionMatrix,
    ids: &HashMap<(usize, usize), usize>,
    initial: &Matching,
    fin: &Matching,
    path: &CanonicalPath,
    d: &ComponentDecomposition,
) -> bool {
    if path.matchings.first() != Some(initial) || path.matchings.last() != Some(fin) {
        return false;
    }
    if path.len() > initial.len() + fin.len() {
        return false;
    }
    let lo = sets::intersection(initial.edges(), fin.edges());
    let hi = sets::union(initial.edges(), fin.edges());
    for m in &path.matchings {
        if !sets::difference(&lo, m.edges()).is_empty() || !sets::difference(m.edges(), &hi).is_empty() {
            return false;
        }
    }
    for (j, (a, b)) in path.transitions().enumerate() {
        let (Some(x), Some(y)) = (t.index_of(a), t.index_of(b)) else { return false };
        if !ids.contains_key(&(x, y)) {
            return false;
        }
        let r = path.venues[j];
        let moved = sets::symmetric_difference(a.edges(), b.edges());
        if !moved.iter().all(|&e| d.components[r].contains(e)) {
            return false;
        }
        let before_ok = d.components[..r]
            .iter()
            .all(|q| q.edges_owned_by(Owner::Final).all(|e| a.contains(e)));
        let after_ok = d.components[r + 1..]
            .iter()
            .all(|q| q.edges_owned_by(Owner::Initial).all(|e| a.contains(e)));
        if !before_ok || !after_ok {
            return false;
        }
    }
    true
}

/// Builds every canonical path of a comb-free hypergraph with at most `state_cap`
/// matchings and reports per-transition congestion, the structural properties of every
/// path, membership of every `η` in `Ω'`, decoding of every `η`, and `cut_samples`
/// random cuts against `|cut(S)| >= |S| (|Ω| - |S|) / (n^k |Ω|)`.
pub fn congestion_report(
    h: &Hypergraph,
    state_cap: usize,
    cut_samples: usize,
    seed: u64,
    execution: Execution,
) -> Result<CongestionReport> {
    h.require_comb_free()?;
    let t = build_transition_matrix(h, state_cap)?;
    let states = t.states();
    let n_states = states.len();
    let mut directed: Vec<(usize, usize)> = t.transitions().flat_map(|(i, j)| [(i, j), (j, i)]).collect();
    directed.sort_unstable();
    let ids: HashMap<(usize, usize), usize> = directed.iter().enumerate().map(|(id, &p)| (p, id)).collect();
    let omega_prime = omega_prime_from_states(h, states);

    let tally = exec::fold_indexed(
        execution,
        n_states,
        Tally::default,
        |mut acc, i| {
            if acc.counts.is_empty() {
                acc.counts = vec![0; directed.len()];
            }
            let initial = &states[i];
            for fin in states {
                acc.pairs += 1;
                let Ok((path, d)) = build_path(h, initial, fin) else {
                    acc.property += 1;
                    continue;
                };
                if !path_is_sound(&t, &ids, initial, fin, &path, &d) {
                    acc.property += 1;
                    continue;
                }
                for (a, b) in path.transitions() {
                    let key = (t.index_of(a).unwrap(), t.index_of(b).unwrap());
                    acc.counts[ids[&key]] += 1;
                    let img = encode(initial, fin, a, b);
                    if !in_omega_prime(h, img.edges()).unwrap_or(false) {
                        acc.eta_outside += 1;
                    }
                    if decode(h, a, b, &img).as_ref() != Some(&(initial.clone(), fin.clone())) {
                        acc.decode += 1;
                    }
                }
            }
            acc
        },
        Tally::merge,
    );
    let counts = if tally.counts.is_empty() { vec![0; directed.len()] } else { tally.counts };

    let n_pow_k = (h.n() as u128).checked_pow(h.k() as u32);
    let omega_prime_within_bound = match n_pow_k.and_then(|p| p.checked_mul(n_states as u128)) {
        Some(b) => omega_prime as u128 <= b,
        None => true,
    };

    let mut rng = stream_rng(seed, 0x6375_7473);
    let mut cut_violations = 0;
    let cuts_sampled = if n_states >= 2 { cut_samples } else { 0 };
    for _ in 0..cuts_sampled {
        let size = rng.random_range(1..=n_states / 2);
        let mut inside = vec![false; n_states];
        for x in sample(&mut rng, n_states, size) {
            inside[x] = true;
        }
        let cut = directed.iter().filter(|&&(a, b)| inside[a] && !inside[b]).count() as u128;
        let need = (size * (n_states - size)) as u128;
        let have = n_pow_k.and_then(|p| p.checked_mul(cut * n_states as u128));
        if matches!(have, Some(v) if v < need) {
            cut_violations += 1;
        }
    }

    let transitions: Vec<TransitionCongestion> = directed
        .iter()
        .zip(&counts)
        .enumerate()
        .map(|(id, (&(from, to), &paths))| TransitionCongestion {
            id,
            from,
            to,
            paths,
            certificate: paths <= omega_prime as u64,
        })
        .collect();
    Ok(CongestionReport {
        states: n_states,
        omega_prime,
        n_pow_k,
        omega_prime_within_bound,
        max_congestion: counts.iter().copied().max().unwrap_or(0),
        transitions,
        pairs_checked: tally.pairs,
        property_violations: tally.property,
        eta_outside: tally.eta_outside,
        decode_failures: tally.decode,
        cuts_sampled,
        cut_violations,
    })
}
