//! Decomposition of the symmetric difference of two matchings into loose paths and
//! cycles, with the traversal orientation used by canonical paths.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypergraph::{Hypergraph, Matching};
use crate::sets;

/// Which of the two matchings an edge of `I ⊕ F` comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Owner {
    #[serde(rename = "I")]
    Initial,
    #[serde(rename = "F")]
    Final,
}

impl Owner {
    pub fn other(self) -> Self {
        match self {
            Owner::Initial => Owner::Final,
            Owner::Final => Owner::Initial,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ComponentKind {
    /// Path whose end edges lie in different matchings.
    EvenPath,
    /// Path whose end edges lie in the same matching.
    OddPath,
    Cycle,
}

/// One component `Q = (e_1, ..., e_s)` of `I ⊕ F`, already oriented.
///
/// Orientation: an even path starts at its `F` end; an odd path satisfies
/// `min(e_1 ∩ e_2) < min(e_{s-1} ∩ e_s)`; a cycle starts at the `I` edge holding the
/// smallest `I`-covered vertex and runs so that `min(e_2 ∩ e_3) > min(e_{s-1} ∩ e_s)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Component {
    pub edges: Vec<usize>,
    pub owners: Vec<Owner>,
    pub kind: ComponentKind,
    pub min_vertex: usize,
}

impl Component {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn contains(&self, edge: usize) -> bool {
        self.edges.contains(&edge)
    }

    pub fn edges_owned_by(&self, owner: Owner) -> impl Iterator<Item = usize> + '_ {
        self.edges
            .iter()
            .zip(&self.owners)
            .filter(move |(_, &o)| o == owner)
            .map(|(&e, _)| e)
    }
}

/// Components of `I ⊕ F` ordered by their smallest vertex, plus `I ∩ F`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentDecomposition {
    pub components: Vec<Component>,
    pub common: Vec<usize>,
}

impl ComponentDecomposition {
    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    /// Index of the component containing `edge`, if any.
    pub fn component_of(&self, edge: usize) -> Option<usize> {
        self.components.iter().position(|c| c.contains(edge))
    }
}

/// Splits `I ⊕ F` into its path and cycle components.
///
/// Fails with [`Error::DegreeViolation`] when an edge of `I ⊕ F` meets three or more
/// others, which can only happen when the hypergraph contains a 3-comb.
pub fn decompose(h: &Hypergraph, initial: &Matching, fin: &Matching) -> Result<ComponentDecomposition> {
    initial.check(h)?;
    fin.check(h)?;
    let only_i = sets::difference(initial.edges(), fin.edges());
    let only_f = sets::difference(fin.edges(), initial.edges());
    let common = sets::intersection(initial.edges(), fin.edges());
    let diff = sets::union(&only_i, &only_f);
    let owner_of = |e: usize| {
        if only_i.binary_search(&e).is_ok() {
            Owner::Initial
        } else {
            Owner::Final
        }
    };

    let adjacency = local_adjacency(h, &diff).ok_or(Error::NotAMatching)?;
    if let Some((local, nbrs)) = adjacency.iter().enumerate().find(|(_, n)| n.len() > 2) {
        return Err(Error::DegreeViolation {
            edge: diff[local],
            degree: nbrs.len(),
        });
    }

    let mut components = Vec::new();
    for raw in connected_components(&adjacency) {
        let order = walk(&adjacency, &raw);
        let edges: Vec<usize> = order.iter().map(|&l| diff[l]).collect();
        let is_cycle = raw.iter().all(|&l| adjacency[l].len() == 2);
        let owners: Vec<Owner> = edges.iter().map(|&e| owner_of(e)).collect();
        components.push(orient(h, edges, owners, is_cycle));
    }
    components.sort_by_key(|c| c.min_vertex);
    Ok(ComponentDecomposition { components, common })
}

/// Components of an arbitrary edge set whose intersection graph has maximum degree two,
/// as edge lists in walk order, sorted by smallest vertex. `None` if some vertex lies in
/// three edges or some edge meets three others.
pub(crate) fn untagged_components(h: &Hypergraph, set: &[usize]) -> Option<Vec<(Vec<usize>, bool)>> {
    let adjacency = local_adjacency(h, set)?;
    if adjacency.iter().any(|n| n.len() > 2) {
        return None;
    }
    let mut out: Vec<(usize, Vec<usize>, bool)> = connected_components(&adjacency)
        .into_iter()
        .map(|raw| {
            let is_cycle = raw.iter().all(|&l| adjacency[l].len() == 2);
            let edges: Vec<usize> = walk(&adjacency, &raw).iter().map(|&l| set[l]).collect();
            let min_vertex = edges.iter().map(|&e| h.edge(e)[0]).min().unwrap();
            (min_vertex, edges, is_cycle)
        })
        .collect();
    out.sort_by_key(|c| c.0);
    Some(out.into_iter().map(|(_, e, c)| (e, c)).collect())
}

/// Adjacency among `set` (by local position). `None` when a vertex is covered three
/// or more times, which no union of two matchings allows.
fn local_adjacency(h: &Hypergraph, set: &[usize]) -> Option<Vec<Vec<usize>>> {
    let mut at_vertex: Vec<[usize; 2]> = vec![[usize::MAX; 2]; h.n() + 1];
    for (local, &e) in set.iter().enumerate() {
        for &v in h.edge(e) {
            let slot = &mut at_vertex[v];
            if slot[0] == usize::MAX {
                slot[0] = local;
            } else if slot[1] == usize::MAX {
                slot[1] = local;
            } else {
                return None;
            }
        }
    }
    let mut adjacency = vec![Vec::new(); set.len()];
    for slot in at_vertex.iter().filter(|s| s[1] != usize::MAX) {
        adjacency[slot[0]].push(slot[1]);
        adjacency[slot[1]].push(slot[0]);
    }
    for list in &mut adjacency {
        list.sort_unstable();
        list.dedup();
    }
    Some(adjacency)
}

fn connected_components(adjacency: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; adjacency.len()];
    let mut out = Vec::new();
    for start in 0..adjacency.len() {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut stack = vec![start];
        let mut comp = Vec::new();
        while let Some(x) = stack.pop() {
            comp.push(x);
            for &y in &adjacency[x] {
                if !std::mem::replace(&mut seen[y], true) {
                    stack.push(y);
                }
            }
        }
        out.push(comp);
    }
    out
}

/// Orders a component with max degree two: from an end for paths, from its smallest
/// local node for cycles.
fn walk(adjacency: &[Vec<usize>], comp: &[usize]) -> Vec<usize> {
    let start = comp
        .iter()
        .copied()
        .filter(|&l| adjacency[l].len() < 2)
        .min()
        .unwrap_or_else(|| *comp.iter().min().unwrap());
    let mut order = vec![start];
    let mut prev = usize::MAX;
    let mut cur = start;
    loop {
        let next = adjacency[cur].iter().copied().find(|&y| y != prev && y != start);
        match next {
            Some(y) if order.len() < comp.len() => {
                order.push(y);
                prev = cur;
                cur = y;
            }
            _ => break,
        }
    }
    order
}

fn orient(h: &Hypergraph, mut edges: Vec<usize>, mut owners: Vec<Owner>, is_cycle: bool) -> Component {
    let s = edges.len();
    let min_vertex = edges.iter().map(|&e| h.edge(e)[0]).min().unwrap();
    let meet = |a: usize, b: usize| sets::min_common(h.edge(a), h.edge(b)).expect("consecutive edges meet");

    let kind = if is_cycle {
        // Start at the I edge holding the smallest I-covered vertex.
        let start = (0..s)
            .filter(|&i| owners[i] == Owner::Initial)
            .min_by_key(|&i| h.edge(edges[i])[0])
            .unwrap();
        edges.rotate_left(start);
        owners.rotate_left(start);
        if meet(edges[1], edges[2]) < meet(edges[s - 2], edges[s - 1]) {
            edges[1..].reverse();
            owners[1..].reverse();
        }
        ComponentKind::Cycle
    } else if s.is_multiple_of(2) {
        if owners[0] != Owner::Final {
            edges.reverse();
            owners.reverse();
        }
        ComponentKind::EvenPath
    } else {
        if s >= 3 && meet(edges[0], edges[1]) > meet(edges[s - 2], edges[s - 1]) {
            edges.reverse();
            owners.reverse();
        }
        ComponentKind::OddPath
    };
    Component {
        edges,
        owners,
        kind,
        min_vertex,
    }
}
