//! Flow functions on the Cayley graph of a base group.
//!
//! The flow of a word counts signed traversals of each directed edge
//! `b -> b·x_i`. Two words have equal flows iff they are equal modulo `N'`,
//! so flows serve as normal forms for `F/N'`.

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, BTreeSet};

use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::group::BaseGroup;
use crate::word::{Letter, Word};

/// The directed edge `base -> base·x_gen` (`gen` zero-based).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeKey<E> {
    pub base: E,
    pub gen: usize,
}

impl<E> EdgeKey<E> {
    pub fn new(base: E, gen: usize) -> Self {
        EdgeKey { base, gen }
    }
}

/// Finitely supported integer function on directed edges; zeros are never stored.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Flow<E: Ord> {
    values: BTreeMap<EdgeKey<E>, i64>,
}

impl<E: Ord> Default for Flow<E> {
    fn default() -> Self {
        Flow {
            values: BTreeMap::new(),
        }
    }
}

impl<E: Ord + Clone> Flow<E> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, edge: &EdgeKey<E>) -> i64 {
        self.values.get(edge).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&EdgeKey<E>, i64)> {
        self.values.iter().map(|(k, &v)| (k, v))
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Adds `delta` to one edge. Overflow panics rather than wrapping.
    pub fn add_at(&mut self, edge: EdgeKey<E>, delta: i64) {
        if delta == 0 {
            return;
        }
        match self.values.entry(edge) {
            Entry::Vacant(e) => {
                e.insert(delta);
            }
            Entry::Occupied(mut e) => {
                let v = e.get().checked_add(delta).expect("flow value overflow");
                if v == 0 {
                    e.remove();
                } else {
                    *e.get_mut() = v;
                }
            }
        }
    }

    pub fn add(&self, other: &Flow<E>) -> Flow<E> {
        let mut out = self.clone();
        for (k, v) in other.iter() {
            out.add_at(k.clone(), v);
        }
        out
    }

    pub fn neg(&self) -> Flow<E> {
        Flow {
            values: self.values.iter().map(|(k, v)| (k.clone(), -v)).collect(),
        }
    }

    /// `Σ_e |f(e)|`.
    pub fn total_variation(&self) -> u64 {
        self.values.values().map(|v| v.unsigned_abs()).sum()
    }

    /// Tails of support edges: the vertex set `V` that carries lamps under
    /// the Magnus embedding.
    pub fn tails(&self) -> BTreeSet<E> {
        self.values.keys().map(|k| k.base.clone()).collect()
    }
}

impl<E: Ord + Clone> FromIterator<(EdgeKey<E>, i64)> for Flow<E> {
    fn from_iter<I: IntoIterator<Item = (EdgeKey<E>, i64)>>(iter: I) -> Self {
        let mut f = Flow::new();
        for (k, v) in iter {
            f.add_at(k, v);
        }
        f
    }
}

/// Records one traversal of `letter` starting at `at`, returning the new position.
pub(crate) fn trace_letter<G: BaseGroup>(
    group: &G,
    flow: &mut Flow<G::Element>,
    at: &G::Element,
    letter: Letter,
) -> G::Element {
    let next = group.mul_letter(at, letter);
    if letter.inverse {
        flow.add_at(EdgeKey::new(next.clone(), letter.gen), -1);
    } else {
        flow.add_at(EdgeKey::new(at.clone(), letter.gen), 1);
    }
    next
}

/// The flow `π_w` of the path traced by `w` from the identity.
pub fn flow_of_word<G: BaseGroup>(w: &Word, group: &G) -> Flow<G::Element> {
    let mut flow = Flow::new();
    let mut at = group.identity();
    for &l in w.free_reduce().letters() {
        at = trace_letter(group, &mut flow, &at, l);
    }
    flow
}

/// Outflow minus inflow at `b`.
pub fn divergence<G: BaseGroup>(f: &Flow<G::Element>, b: &G::Element, group: &G) -> i64 {
    let mut total = 0i64;
    for gen in 0..group.rank() {
        total += f.get(&EdgeKey::new(b.clone(), gen));
        let prev = group.mul_letter(b, Letter::neg(gen));
        total -= f.get(&EdgeKey::new(prev, gen));
    }
    total
}

/// Every vertex with nonzero divergence, with its divergence.
pub fn sources_and_sinks<G: BaseGroup>(f: &Flow<G::Element>, group: &G) -> BTreeMap<G::Element, i64> {
    let mut div: BTreeMap<G::Element, i64> = BTreeMap::new();
    for (k, v) in f.iter() {
        *div.entry(k.base.clone()).or_insert(0) += v;
        let head = group.mul_letter(&k.base, Letter::pos(k.gen));
        *div.entry(head).or_insert(0) -= v;
    }
    div.retain(|_, v| *v != 0);
    div
}

/// Word problem in `F/N'`: equal flows.
pub fn equal_mod_nprime<G: BaseGroup>(u: &Word, v: &Word, group: &G) -> bool {
    flow_of_word(u, group) == flow_of_word(v, group)
}

/// Left translation `g·f`: every edge base `b` moves to `g·b`.
pub fn translate_flow<G: BaseGroup>(g: &G::Element, f: &Flow<G::Element>, group: &G) -> Flow<G::Element> {
    f.iter()
        .map(|(k, v)| (EdgeKey::new(group.mul(g, &k.base), k.gen), v))
        .collect()
}

/// The support graph `Γ` of a flow: endpoints of nonzero edges, undirected
/// adjacency, and connected components.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SupportGraph<E: Ord> {
    pub vertices: BTreeSet<E>,
    pub adjacency: BTreeMap<E, BTreeSet<E>>,
    /// Components, each sorted, ordered by their least vertex.
    pub components: Vec<Vec<E>>,
}

pub fn support_graph<G: BaseGroup>(f: &Flow<G::Element>, group: &G) -> SupportGraph<G::Element> {
    let mut adjacency: BTreeMap<G::Element, BTreeSet<G::Element>> = BTreeMap::new();
    for (k, _) in f.iter() {
        let head = group.mul_letter(&k.base, Letter::pos(k.gen));
        adjacency.entry(k.base.clone()).or_default().insert(head.clone());
        adjacency.entry(head).or_default().insert(k.base.clone());
    }
    let vertices: BTreeSet<G::Element> = adjacency.keys().cloned().collect();
    let index: BTreeMap<&G::Element, usize> = vertices.iter().enumerate().map(|(i, v)| (v, i)).collect();
    let mut uf = UnionFind::new(vertices.len());
    for (v, ns) in &adjacency {
        for n in ns {
            uf.union(index[v], index[n]);
        }
    }
    let mut groups: BTreeMap<usize, Vec<G::Element>> = BTreeMap::new();
    for (i, v) in vertices.iter().enumerate() {
        groups.entry(uf.find(i)).or_default().push(v.clone());
    }
    let mut components: Vec<Vec<G::Element>> = groups.into_values().collect();
    components.sort();
    SupportGraph {
        vertices,
        adjacency,
        components,
    }
}

/// Plain union-find with path halving.
#[derive(Debug, Clone)]
pub struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra.max(rb)] = ra.min(rb);
        true
    }
}

#[derive(Serialize)]
struct FlowEntry<'a, E> {
    base: &'a E,
    gen: usize,
    flow: i64,
}

/// JSON: `[{"base": .., "gen": k, "flow": v}, ..]` in canonical edge order, `gen` one-based.
impl<E: Ord + Clone + Serialize> Serialize for Flow<E> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.len()))?;
        for (k, v) in self.iter() {
            seq.serialize_element(&FlowEntry {
                base: &k.base,
                gen: k.gen + 1,
                flow: v,
            })?;
        }
        seq.end()
    }
}
