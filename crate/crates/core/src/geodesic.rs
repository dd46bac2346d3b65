//! Geodesic length in the free metabelian group `F/F'` (base `Z^r`) and an
//! explicit geodesic word.
//!
//! The support graph of the flow is joined into one piece by a minimal
//! lattice forest `Q`; doubling `Q` and taking `|π(e)|` copies of every flow
//! edge gives a multigraph whose Euler trail from the identity to `w̄` spells
//! a geodesic. Its length is `Σ|π(e)| + 2|Q|`.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::flow::{flow_of_word, sources_and_sinks, support_graph, Flow};
use crate::group::{BaseGroup, Lattice, LatticePoint};
use crate::kernels::{minimal_connecting_forest, ForestResult, KernelCaps};
use crate::word::{Letter, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdgeOrigin {
    /// A support edge, repeated `|π(e)|` times.
    Flow(i64),
    /// A forest edge, repeated twice.
    Forest,
}

/// One undirected edge of the lattice with its multiplicity in `Δ*`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiEdge {
    pub tail: LatticePoint,
    pub gen: usize,
    pub origin: EdgeOrigin,
}

impl MultiEdge {
    pub fn head(&self) -> LatticePoint {
        self.tail.step(self.gen, 1)
    }

    pub fn multiplicity(&self) -> u64 {
        match self.origin {
            EdgeOrigin::Flow(k) => k.unsigned_abs(),
            EdgeOrigin::Forest => 2,
        }
    }

    /// Directed traversals: flow copies all follow the sign of the flow,
    /// forest copies go once each way.
    fn arcs(&self) -> Vec<(LatticePoint, Letter, LatticePoint)> {
        let (a, b) = (self.tail.clone(), self.head());
        let fwd = (a.clone(), Letter::pos(self.gen), b.clone());
        let back = (b, Letter::neg(self.gen), a);
        match self.origin {
            EdgeOrigin::Flow(k) if k > 0 => vec![fwd; k as usize],
            EdgeOrigin::Flow(k) => vec![back; k.unsigned_abs() as usize],
            EdgeOrigin::Forest => vec![fwd, back],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeltaStar {
    pub vertices: BTreeSet<LatticePoint>,
    pub edges: Vec<MultiEdge>,
    pub forest: ForestResult,
    pub start: LatticePoint,
    pub end: LatticePoint,
}

impl DeltaStar {
    pub fn edge_count(&self) -> u64 {
        self.edges.iter().map(MultiEdge::multiplicity).sum()
    }

    pub fn sum_flow(&self) -> u64 {
        self.edges
            .iter()
            .filter_map(|e| match e.origin {
                EdgeOrigin::Flow(k) => Some(k.unsigned_abs()),
                EdgeOrigin::Forest => None,
            })
            .sum()
    }
}

/// Start and end of the path a flow came from, checked against the
/// divergence law.
pub fn flow_endpoints(f: &Flow<LatticePoint>, base: &Lattice) -> Result<LatticePoint> {
    let origin = base.identity();
    let div = sources_and_sinks(f, base);
    match div.len() {
        0 => Ok(origin),
        2 if div.get(&origin) == Some(&1) => {
            let (end, d) = div.iter().find(|(v, _)| **v != origin).unwrap();
            if *d == -1 {
                Ok(end.clone())
            } else {
                Err(Error::Structure("flow is not the flow of a path from the identity".into()))
            }
        }
        _ => Err(Error::Structure("flow is not the flow of a path from the identity".into())),
    }
}

pub fn build_delta_star(f: &Flow<LatticePoint>, base: &Lattice, caps: &KernelCaps) -> Result<DeltaStar> {
    let start = base.identity();
    let end = flow_endpoints(f, base)?;
    if f.is_empty() {
        return Ok(DeltaStar {
            vertices: BTreeSet::new(),
            edges: Vec::new(),
            forest: ForestResult::default(),
            start,
            end,
        });
    }
    let gamma = support_graph(f, base);
    let forest = minimal_connecting_forest(&gamma.components, &[start.clone(), end.clone()], caps)?;
    let mut edges: Vec<MultiEdge> = f
        .iter()
        .map(|(k, v)| MultiEdge {
            tail: k.base.clone(),
            gen: k.gen,
            origin: EdgeOrigin::Flow(v),
        })
        .collect();
    edges.extend(forest.edges.iter().map(|(p, gen)| MultiEdge {
        tail: p.clone(),
        gen: *gen,
        origin: EdgeOrigin::Forest,
    }));
    let mut vertices = gamma.vertices;
    for e in &edges {
        vertices.insert(e.tail.clone());
        vertices.insert(e.head());
    }
    vertices.insert(start.clone());
    vertices.insert(end.clone());
    Ok(DeltaStar {
        vertices,
        edges,
        forest,
        start,
        end,
    })
}

/// `‖w‖` in `F/F'` together with its two summands.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct GeodesicLength {
    pub length: u64,
    pub sum_flow: u64,
    pub q_edges: u64,
}

pub fn geodesic_length_fn(w: &Word, base: &Lattice, caps: &KernelCaps) -> Result<GeodesicLength> {
    let ds = build_delta_star(&flow_of_word(w, base), base, caps)?;
    let sum_flow = ds.sum_flow();
    let q_edges = ds.forest.cost as u64;
    Ok(GeodesicLength {
        length: sum_flow + 2 * q_edges,
        sum_flow,
        q_edges,
    })
}

fn check_degrees(ds: &DeltaStar, arcs: &[(LatticePoint, Letter, LatticePoint)]) -> Result<()> {
    let mut balance: BTreeMap<&LatticePoint, i64> = BTreeMap::new();
    let mut degree: BTreeMap<&LatticePoint, u64> = BTreeMap::new();
    for (a, _, b) in arcs {
        *balance.entry(a).or_default() += 1;
        *balance.entry(b).or_default() -= 1;
        *degree.entry(a).or_default() += 1;
        *degree.entry(b).or_default() += 1;
    }
    let open = ds.start != ds.end;
    for (v, d) in &degree {
        let endpoint = open && (**v == ds.start || **v == ds.end);
        if (d % 2 == 1) != endpoint {
            return Err(Error::Invariant(format!("vertex {:?} has degree {d} in Δ*", v.0)));
        }
        let expected = match () {
            _ if open && **v == ds.start => 1,
            _ if open && **v == ds.end => -1,
            _ => 0,
        };
        if balance[v] != expected {
            return Err(Error::Invariant(format!("vertex {:?} is unbalanced in Δ*", v.0)));
        }
    }
    Ok(())
}

/// The label of an Euler trail of `Δ*` from the identity to `w̄`
/// (Hierholzer, always taking the least remaining letter).
pub fn euler_trail_word(ds: &DeltaStar) -> Result<Word> {
    let arcs: Vec<(LatticePoint, Letter, LatticePoint)> = ds.edges.iter().flat_map(MultiEdge::arcs).collect();
    if arcs.is_empty() {
        return Ok(Word::identity());
    }
    check_degrees(ds, &arcs)?;
    let mut out: BTreeMap<LatticePoint, Vec<(Letter, LatticePoint)>> = BTreeMap::new();
    for (a, l, b) in &arcs {
        out.entry(a.clone()).or_default().push((*l, b.clone()));
    }
    for list in out.values_mut() {
        // popped from the back, so sort descending
        list.sort_by(|x, y| y.cmp(x));
    }
    let mut stack: Vec<(LatticePoint, Option<Letter>)> = vec![(ds.start.clone(), None)];
    let mut trail: Vec<Letter> = Vec::with_capacity(arcs.len());
    while let Some((v, _)) = stack.last() {
        match out.get_mut(v).and_then(Vec::pop) {
            Some((l, next)) => stack.push((next, Some(l))),
            None => {
                let (_, l) = stack.pop().unwrap();
                trail.extend(l);
            }
        }
    }
    if trail.len() != arcs.len() {
        return Err(Error::Invariant("Δ* is not connected".into()));
    }
    trail.reverse();
    Ok(Word::from_letters(trail))
}

pub fn euler_geodesic_word(w: &Word, base: &Lattice, caps: &KernelCaps) -> Result<Word> {
    let ds = build_delta_star(&flow_of_word(w, base), base, caps)?;
    euler_trail_word(&ds)
}

/// JSON report for one word.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct GeodesicReport {
    pub input: Word,
    pub length: u64,
    pub sum_flow: u64,
    pub q_edges: u64,
    pub geodesic: Word,
}

pub fn geodesic_report(w: &Word, base: &Lattice, caps: &KernelCaps) -> Result<GeodesicReport> {
    let ds = build_delta_star(&flow_of_word(w, base), base, caps)?;
    let geodesic = euler_trail_word(&ds)?;
    Ok(GeodesicReport {
        input: w.clone(),
        length: ds.edge_count(),
        sum_flow: ds.sum_flow(),
        q_edges: ds.forest.cost as u64,
        geodesic,
    })
}
