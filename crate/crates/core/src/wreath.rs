//! The wreath product `Z^r ≀ B` and the Magnus embedding of `F/N'` into it.
//!
//! An element is a pair (shadow, lamps): the cursor position in `B` and a
//! finitely supported map `B -> Z^r`. Products follow
//! `(s, L)(t, M) = (st, L + s·M)`, where `s·M` moves the lamp at `b` to `s·b`.
//! With this convention `x_i ↦ (x_i, a_i at 1)` extends to a homomorphism on
//! `F/N'` whose lamps are the projected Fox derivatives.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use num_traits::ToPrimitive;
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::error::Result;
use crate::flow::flow_of_word;
use crate::fox::fox_jacobian;
use crate::group::{BaseGroup, LatticePoint};
use crate::kernels::{shortest_closed_tour, shortest_walk};
use crate::word::{Letter, Word};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WreathElement<E: Ord> {
    pub shadow: E,
    lamps: BTreeMap<E, LatticePoint>,
}

impl<E: Ord + Clone> WreathElement<E> {
    /// Standard-form data, sorted by base point.
    pub fn lamps(&self) -> impl Iterator<Item = (&E, &LatticePoint)> {
        self.lamps.iter()
    }

    pub fn lamp(&self, at: &E) -> Option<&LatticePoint> {
        self.lamps.get(at)
    }

    pub fn lamp_count(&self) -> usize {
        self.lamps.len()
    }

    /// `Σ ‖A_b‖` with the L1 norm on `Z^r`.
    pub fn sum_lamp_costs(&self) -> u64 {
        self.lamps.values().map(LatticePoint::l1_norm).sum()
    }

    fn add_lamp(&mut self, at: E, value: &LatticePoint) {
        match self.lamps.entry(at) {
            Entry::Vacant(e) => {
                if !value.is_zero() {
                    e.insert(value.clone());
                }
            }
            Entry::Occupied(mut e) => {
                let sum = e.get() + value;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }
}

/// `Z^r ≀ B` for a base group `B` of rank `r`.
#[derive(Debug, Clone, Copy)]
pub struct WreathGroup<G> {
    base: G,
}

impl<G: BaseGroup> WreathGroup<G> {
    pub fn new(base: G) -> Self {
        WreathGroup { base }
    }

    pub fn base(&self) -> &G {
        &self.base
    }

    pub fn identity(&self) -> WreathElement<G::Element> {
        WreathElement {
            shadow: self.base.identity(),
            lamps: BTreeMap::new(),
        }
    }

    /// An element with the given lamp values; zero lamps are dropped.
    pub fn element(
        &self,
        shadow: G::Element,
        lamps: impl IntoIterator<Item = (G::Element, LatticePoint)>,
    ) -> WreathElement<G::Element> {
        let mut e = WreathElement {
            shadow,
            lamps: BTreeMap::new(),
        };
        for (at, v) in lamps {
            e.add_lamp(at, &v);
        }
        e
    }

    pub fn multiply(
        &self,
        e: &WreathElement<G::Element>,
        f: &WreathElement<G::Element>,
    ) -> WreathElement<G::Element> {
        let mut out = e.clone();
        out.shadow = self.base.mul(&e.shadow, &f.shadow);
        for (at, v) in &f.lamps {
            out.add_lamp(self.base.mul(&e.shadow, at), v);
        }
        out
    }

    pub fn inverse(&self, e: &WreathElement<G::Element>) -> WreathElement<G::Element> {
        let inv = self.base.inverse(&e.shadow);
        let lamps = e
            .lamps
            .iter()
            .map(|(at, v)| (self.base.mul(&inv, at), -v))
            .collect::<Vec<_>>();
        self.element(inv, lamps)
    }

    /// Right multiplication by the base generator `x_i^{±1}`: move the cursor.
    pub fn mul_base_letter(&self, e: &WreathElement<G::Element>, l: Letter) -> WreathElement<G::Element> {
        WreathElement {
            shadow: self.base.mul_letter(&e.shadow, l),
            lamps: e.lamps.clone(),
        }
    }

    /// Right multiplication by the lamp generator `a_i^{±1}`: change the lamp
    /// under the cursor.
    pub fn mul_lamp_letter(&self, e: &WreathElement<G::Element>, l: Letter) -> WreathElement<G::Element> {
        let mut out = e.clone();
        let step = LatticePoint::zero(self.base.rank()).step(l.gen, l.sign());
        out.add_lamp(e.shadow.clone(), &step);
        out
    }
}

/// The Magnus embedding `φ(w) = w̄ · Π_b A_b^b`: shadow `w̄`, and the lamp at
/// `b` collects the coefficient of `b` in each projected Fox derivative.
pub fn magnus_embed<G: BaseGroup>(w: &Word, base: &G) -> WreathElement<G::Element> {
    let rank = base.rank();
    let jac = fox_jacobian(w, base).expect("word checked against base rank");
    let mut lamps: BTreeMap<G::Element, LatticePoint> = BTreeMap::new();
    for (i, d) in jac.iter().enumerate() {
        for (b, c) in d.iter() {
            let coeff = c.to_i64().expect("Fox coefficient bounded by word length");
            lamps.entry(b.clone()).or_insert_with(|| LatticePoint::zero(rank)).0[i] = coeff;
        }
    }
    WreathGroup::new(base).element(base.evaluate(w), lamps)
}

/// The same lamps read straight off the flow: lamp coordinate `i` at `b` is
/// the flow through `b -> b·x_i`.
pub fn magnus_embed_from_flow<G: BaseGroup>(w: &Word, base: &G) -> WreathElement<G::Element> {
    let rank = base.rank();
    let flow = flow_of_word(w, base);
    let lamps = flow.iter().map(|(k, v)| {
        let mut p = LatticePoint::zero(rank);
        p.0[k.gen] = v;
        (k.base.clone(), p)
    });
    WreathGroup::new(base).element(base.evaluate(w), lamps)
}

fn tour_points(e: &WreathElement<LatticePoint>) -> Vec<LatticePoint> {
    let mut pts: Vec<LatticePoint> = e.lamps.keys().cloned().collect();
    pts.push(LatticePoint::zero(e.shadow.rank()));
    pts
}

/// Length by the closed-circuit formula:
/// `‖shadow‖ + Σ‖A_b‖ + (shortest circuit through {1} ∪ supp)`.
pub fn wreath_length_circuit(e: &WreathElement<LatticePoint>, tour_cap: usize) -> Result<u64> {
    let tour = shortest_closed_tour(&tour_points(e), LatticePoint::l1_distance, tour_cap)?;
    Ok(e.shadow.l1_norm() + e.sum_lamp_costs() + tour.length)
}

/// Length by the open-walk formula:
/// `Σ‖A_b‖ + (shortest walk from 1 through supp ending at the shadow)`.
pub fn wreath_length_walk(e: &WreathElement<LatticePoint>, tour_cap: usize) -> Result<u64> {
    let origin = LatticePoint::zero(e.shadow.rank());
    let walk = shortest_walk(&origin, &e.shadow, &tour_points(e), LatticePoint::l1_distance, tour_cap)?;
    Ok(e.sum_lamp_costs() + walk.length)
}

#[derive(Serialize)]
struct LampEntry<'a, E> {
    at: &'a E,
    value: &'a LatticePoint,
}

struct Lamps<'a, E: Ord>(&'a BTreeMap<E, LatticePoint>);

impl<E: Ord + Serialize> Serialize for Lamps<'_, E> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.0.len()))?;
        for (at, value) in self.0 {
            seq.serialize_element(&LampEntry { at, value })?;
        }
        seq.end()
    }
}

/// JSON: `{"shadow": .., "lamps": [{"at": .., "value": [..]}, ..]}`.
impl<E: Ord + Serialize> Serialize for WreathElement<E> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("WreathElement", 2)?;
        st.serialize_field("shadow", &self.shadow)?;
        st.serialize_field("lamps", &Lamps(&self.lamps))?;
        st.end()
    }
}
