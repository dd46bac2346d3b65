//! Free solvable groups `S_{d,r}` as a tower of flow extensions.
//!
//! `S_{1,r} = Z^r`, and an element of `S_{d,r}` for `d >= 2` is its image in
//! `S_{d-1,r}` together with its flow on the Cayley graph of `S_{d-1,r}`.

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::flow::{flow_of_word, translate_flow, trace_letter, Flow};
use crate::group::{BaseGroup, Config, Lattice, LatticePoint};
use crate::oracle::cayley_distance;
use crate::word::{Letter, Word};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SolvableElement {
    Abelian(LatticePoint),
    Extension {
        shadow: Box<SolvableElement>,
        flow: Flow<SolvableElement>,
    },
}

impl SolvableElement {
    pub fn degree(&self) -> usize {
        match self {
            SolvableElement::Abelian(_) => 1,
            SolvableElement::Extension { shadow, .. } => shadow.degree() + 1,
        }
    }

    /// Image in `S_{d-1,r}`; `None` at degree 1.
    pub fn shadow(&self) -> Option<&SolvableElement> {
        match self {
            SolvableElement::Abelian(_) => None,
            SolvableElement::Extension { shadow, .. } => Some(shadow),
        }
    }

    pub fn flow(&self) -> Option<&Flow<SolvableElement>> {
        match self {
            SolvableElement::Abelian(_) => None,
            SolvableElement::Extension { flow, .. } => Some(flow),
        }
    }

    /// Image in `Z^r` at the bottom of the tower.
    pub fn abelianization(&self) -> &LatticePoint {
        match self {
            SolvableElement::Abelian(p) => p,
            SolvableElement::Extension { shadow, .. } => shadow.abelianization(),
        }
    }
}

impl Serialize for SolvableElement {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            SolvableElement::Abelian(p) => p.serialize(s),
            SolvableElement::Extension { shadow, flow } => {
                let mut st = s.serialize_struct("SolvableElement", 2)?;
                st.serialize_field("shadow", shadow)?;
                st.serialize_field("flow", flow)?;
                st.end()
            }
        }
    }
}

/// Default radius for the bounded word-metric search in `S_{d,r}`, `d >= 2`.
pub const DEFAULT_SEARCH_RADIUS: usize = 8;

/// `S_{d,r}` with multiplication through the flow extension at each level.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolvableGroup {
    rank: usize,
    degree: usize,
    search_radius: usize,
}

impl SolvableGroup {
    pub fn new(cfg: Config) -> Self {
        SolvableGroup {
            rank: cfg.rank,
            degree: cfg.degree,
            search_radius: DEFAULT_SEARCH_RADIUS,
        }
    }

    pub fn with_search_radius(mut self, radius: usize) -> Self {
        self.search_radius = radius;
        self
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn search_radius(&self) -> usize {
        self.search_radius
    }

    /// `S_{d-1,r}`. Panics at degree 1.
    pub fn lower(&self) -> SolvableGroup {
        assert!(self.degree > 1, "S_(1,r) has no lower level");
        SolvableGroup {
            degree: self.degree - 1,
            ..*self
        }
    }

    fn lattice(&self) -> Lattice {
        Lattice::new(self.rank).expect("rank validated by Config")
    }

    fn unwrap_ext(g: &SolvableElement) -> (&SolvableElement, &Flow<SolvableElement>) {
        match g {
            SolvableElement::Extension { shadow, flow } => (shadow, flow),
            SolvableElement::Abelian(_) => panic!("element degree does not match group degree"),
        }
    }
}

impl BaseGroup for SolvableGroup {
    type Element = SolvableElement;

    fn rank(&self) -> usize {
        self.rank
    }

    fn identity(&self) -> SolvableElement {
        if self.degree == 1 {
            SolvableElement::Abelian(LatticePoint::zero(self.rank))
        } else {
            SolvableElement::Extension {
                shadow: Box::new(self.lower().identity()),
                flow: Flow::new(),
            }
        }
    }

    fn mul_letter(&self, g: &SolvableElement, letter: Letter) -> SolvableElement {
        match g {
            SolvableElement::Abelian(p) => SolvableElement::Abelian(self.lattice().mul_letter(p, letter)),
            SolvableElement::Extension { shadow, flow } => {
                let mut flow = flow.clone();
                let next = trace_letter(&self.lower(), &mut flow, shadow, letter);
                SolvableElement::Extension {
                    shadow: Box::new(next),
                    flow,
                }
            }
        }
    }

    fn mul(&self, a: &SolvableElement, b: &SolvableElement) -> SolvableElement {
        if let (SolvableElement::Abelian(p), SolvableElement::Abelian(q)) = (a, b) {
            return SolvableElement::Abelian(p + q);
        }
        let lower = self.lower();
        let (sa, fa) = Self::unwrap_ext(a);
        let (sb, fb) = Self::unwrap_ext(b);
        SolvableElement::Extension {
            shadow: Box::new(lower.mul(sa, sb)),
            flow: fa.add(&translate_flow(sa, fb, &lower)),
        }
    }

    fn inverse(&self, g: &SolvableElement) -> SolvableElement {
        match g {
            SolvableElement::Abelian(p) => SolvableElement::Abelian(-p),
            SolvableElement::Extension { shadow, flow } => {
                let lower = self.lower();
                let inv = lower.inverse(shadow);
                let flow = translate_flow(&inv, &flow.neg(), &lower);
                SolvableElement::Extension {
                    shadow: Box::new(inv),
                    flow,
                }
            }
        }
    }

    fn distance(&self, a: &SolvableElement, b: &SolvableElement) -> Result<u64> {
        if let (SolvableElement::Abelian(p), SolvableElement::Abelian(q)) = (a, b) {
            return Ok(p.l1_distance(q));
        }
        cayley_distance(self, a, b, self.search_radius)
            .map(|d| d as u64)
            .ok_or(Error::RadiusExceeded {
                radius: self.search_radius,
            })
    }

    fn metric_is_exact(&self) -> bool {
        self.degree == 1
    }
}

/// Normal form of `w` in `S_{d,r}`, built level by level: the abelianization
/// at degree 1, otherwise the degree `d-1` form paired with the flow of `w`
/// over the Cayley graph of `S_{d-1,r}`.
pub fn solvable_from_word(w: &Word, cfg: Config) -> SolvableElement {
    if cfg.degree <= 1 {
        let z = Lattice::new(cfg.rank).expect("rank validated by Config");
        return SolvableElement::Abelian(z.evaluate(w));
    }
    let lower_cfg = Config {
        degree: cfg.degree - 1,
        ..cfg
    };
    let lower = SolvableGroup::new(lower_cfg);
    SolvableElement::Extension {
        shadow: Box::new(solvable_from_word(w, lower_cfg)),
        flow: flow_of_word(w, &lower),
    }
}

/// Word problem in `S_{d,r}`.
pub fn equal_in_solvable(u: &Word, v: &Word, cfg: Config) -> bool {
    solvable_from_word(u, cfg) == solvable_from_word(v, cfg)
}
