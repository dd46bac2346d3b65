//! Sparse group-ring arithmetic over a base group and Fox derivatives
//! projected into it.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::group::BaseGroup;
use crate::word::{Letter, Word};

/// A finitely supported `Z`-combination of base-group elements. Zero
/// coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RingElement<K: Ord> {
    coeffs: BTreeMap<K, BigInt>,
}

impl<K: Ord> Default for RingElement<K> {
    fn default() -> Self {
        RingElement {
            coeffs: BTreeMap::new(),
        }
    }
}

impl<K: Ord + Clone> RingElement<K> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn term(at: K, coeff: impl Into<BigInt>) -> Self {
        let mut p = Self::zero();
        p.add_term(at, coeff.into());
        p
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coefficient(&self, at: &K) -> BigInt {
        self.coeffs.get(at).cloned().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&K, &BigInt)> {
        self.coeffs.iter()
    }

    pub fn add_term(&mut self, at: K, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        match self.coeffs.entry(at) {
            Entry::Vacant(e) => {
                e.insert(coeff);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in other.iter() {
            out.add_term(k.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        RingElement {
            coeffs: self.coeffs.iter().map(|(k, c)| (k.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// Sum of coefficients.
    pub fn augmentation(&self) -> BigInt {
        self.coeffs.values().sum()
    }

    /// Sum of absolute values of coefficients.
    pub fn l1_norm(&self) -> BigInt {
        self.coeffs.values().map(|c| c.magnitude().clone()).map(BigInt::from).sum()
    }
}

/// `g·p`: left multiplication shifts every support element.
pub fn ring_translate<G: BaseGroup>(
    g: &G::Element,
    p: &RingElement<G::Element>,
    group: &G,
) -> RingElement<G::Element> {
    let mut out = RingElement::zero();
    for (k, c) in p.iter() {
        out.add_term(group.mul(g, k), c.clone());
    }
    out
}

/// Full group-ring product `p·q`.
pub fn ring_mul<G: BaseGroup>(
    p: &RingElement<G::Element>,
    q: &RingElement<G::Element>,
    group: &G,
) -> RingElement<G::Element> {
    let mut out = RingElement::zero();
    for (a, ca) in p.iter() {
        for (b, cb) in q.iter() {
            out.add_term(group.mul(a, b), ca * cb);
        }
    }
    out
}

/// Image in `Z[B]` of the Fox derivative `∂w/∂x_gen` (`gen` zero-based).
///
/// Single left-to-right pass: with `p` the image of the prefix read so far,
/// `x_gen` contributes `+p` and `x_gen^-1` contributes `-p·x_gen^-1`.
pub fn fox_derivative<G: BaseGroup>(w: &Word, gen: usize, group: &G) -> Result<RingElement<G::Element>> {
    if gen >= group.rank() {
        return Err(Error::Rank {
            gen: gen + 1,
            rank: group.rank(),
        });
    }
    w.check_rank(group.rank())?;
    let mut out = RingElement::zero();
    let mut prefix = group.identity();
    for &l in w.free_reduce().letters() {
        let next = group.mul_letter(&prefix, l);
        if l.gen == gen {
            if l.inverse {
                out.add_term(next.clone(), BigInt::from(-1));
            } else {
                out.add_term(prefix.clone(), BigInt::from(1));
            }
        }
        prefix = next;
    }
    Ok(out)
}

/// All `r` projected Fox derivatives.
pub fn fox_jacobian<G: BaseGroup>(w: &Word, group: &G) -> Result<Vec<RingElement<G::Element>>> {
    (0..group.rank()).map(|i| fox_derivative(w, i, group)).collect()
}

/// Checks `Σ_i ∂w/∂x_i · (x_i - 1) = w̄ - 1` in `Z[B]`.
pub fn fundamental_identity_check<G: BaseGroup>(w: &Word, group: &G) -> bool {
    let Ok(jac) = fox_jacobian(w, group) else {
        return false;
    };
    let one = group.identity();
    let mut lhs = RingElement::zero();
    for (i, d) in jac.iter().enumerate() {
        let xi = group.mul_letter(&one, Letter::pos(i));
        let factor = RingElement::term(xi, 1).sub(&RingElement::term(one.clone(), 1));
        lhs = lhs.add(&ring_mul(d, &factor, group));
    }
    let rhs = RingElement::term(group.evaluate(w), 1).sub(&RingElement::term(one, 1));
    lhs == rhs
}

fn coeff_json<S: Serializer>(c: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    match c.to_i64() {
        Some(v) => s.serialize_i64(v),
        None => s.serialize_str(&c.to_string()),
    }
}

#[derive(Serialize)]
struct RingEntry<'a, K> {
    at: &'a K,
    #[serde(serialize_with = "coeff_json")]
    coeff: &'a BigInt,
}

/// JSON: `[{"at": .., "coeff": n}, ..]` sorted by canonical key. Coefficients
/// beyond `i64` are written as decimal strings.
impl<K: Ord + Clone + Serialize> Serialize for RingElement<K> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.len()))?;
        for (at, coeff) in self.iter() {
            seq.serialize_element(&RingEntry { at, coeff })?;
        }
        seq.end()
    }
}
