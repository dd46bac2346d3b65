//! The base-group contract and the free abelian group `Z^r`.

use std::fmt::Debug;
use std::hash::Hash;
use std::ops::{Add, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::word::{Letter, Word};

/// Rank and solvability degree of `S_{d,r}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Config {
    pub rank: usize,
    pub degree: usize,
}

impl Config {
    pub fn new(rank: usize, degree: usize) -> Result<Self> {
        if rank == 0 {
            return Err(Error::ZeroRank);
        }
        if degree == 0 {
            return Err(Error::Degree { degree, min: 1 });
        }
        Ok(Config { rank, degree })
    }
}

/// A group given by its right Cayley graph on `x_1..x_r`.
///
/// Elements double as their own canonical keys: `Ord` and `Hash` agree with
/// group equality.
pub trait BaseGroup: Sync {
    type Element: Clone + Eq + Ord + Hash + Debug + Send + Sync;

    fn rank(&self) -> usize;

    fn identity(&self) -> Self::Element;

    /// `g · x_i^{±1}`, i.e. one step along a Cayley-graph edge.
    fn mul_letter(&self, g: &Self::Element, letter: Letter) -> Self::Element;

    fn mul(&self, a: &Self::Element, b: &Self::Element) -> Self::Element;

    fn inverse(&self, g: &Self::Element) -> Self::Element;

    /// Word-metric distance. Only exact when [`BaseGroup::metric_is_exact`];
    /// otherwise it is a bounded search that fails past its radius.
    fn distance(&self, a: &Self::Element, b: &Self::Element) -> Result<u64>;

    fn metric_is_exact(&self) -> bool;

    fn is_identity(&self, g: &Self::Element) -> bool {
        *g == self.identity()
    }

    /// Image of `w` under the canonical map from the free group.
    fn evaluate(&self, w: &Word) -> Self::Element {
        w.letters()
            .iter()
            .fold(self.identity(), |g, &l| self.mul_letter(&g, l))
    }
}

impl<G: BaseGroup> BaseGroup for &G {
    type Element = G::Element;
    fn rank(&self) -> usize {
        (*self).rank()
    }
    fn identity(&self) -> G::Element {
        (*self).identity()
    }
    fn mul_letter(&self, g: &G::Element, l: Letter) -> G::Element {
        (*self).mul_letter(g, l)
    }
    fn mul(&self, a: &G::Element, b: &G::Element) -> G::Element {
        (*self).mul(a, b)
    }
    fn inverse(&self, g: &G::Element) -> G::Element {
        (*self).inverse(g)
    }
    fn distance(&self, a: &G::Element, b: &G::Element) -> Result<u64> {
        (*self).distance(a, b)
    }
    fn metric_is_exact(&self) -> bool {
        (*self).metric_is_exact()
    }
}

/// A point of `Z^r`, compared lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LatticePoint(pub Vec<i64>);

impl LatticePoint {
    pub fn zero(rank: usize) -> Self {
        LatticePoint(vec![0; rank])
    }

    pub fn unit(rank: usize, gen: usize) -> Self {
        let mut p = LatticePoint::zero(rank);
        p.0[gen] = 1;
        p
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn l1_norm(&self) -> u64 {
        self.0.iter().map(|c| c.unsigned_abs()).sum()
    }

    pub fn l1_distance(&self, other: &LatticePoint) -> u64 {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.abs_diff(*b))
            .sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    /// `self + sign · e_gen`.
    pub fn step(&self, gen: usize, sign: i64) -> LatticePoint {
        let mut p = self.clone();
        p.0[gen] += sign;
        p
    }
}

impl Add for &LatticePoint {
    type Output = LatticePoint;
    fn add(self, rhs: &LatticePoint) -> LatticePoint {
        LatticePoint(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &LatticePoint {
    type Output = LatticePoint;
    fn sub(self, rhs: &LatticePoint) -> LatticePoint {
        LatticePoint(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &LatticePoint {
    type Output = LatticePoint;
    fn neg(self) -> LatticePoint {
        LatticePoint(self.0.iter().map(|a| -a).collect())
    }
}

/// `Z^r` with the L1 word metric.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Lattice {
    rank: usize,
}

impl Lattice {
    pub fn new(rank: usize) -> Result<Self> {
        if rank == 0 {
            return Err(Error::ZeroRank);
        }
        Ok(Lattice { rank })
    }
}

impl BaseGroup for Lattice {
    type Element = LatticePoint;

    fn rank(&self) -> usize {
        self.rank
    }

    fn identity(&self) -> LatticePoint {
        LatticePoint::zero(self.rank)
    }

    fn mul_letter(&self, g: &LatticePoint, letter: Letter) -> LatticePoint {
        g.step(letter.gen, letter.sign())
    }

    fn mul(&self, a: &LatticePoint, b: &LatticePoint) -> LatticePoint {
        a + b
    }

    fn inverse(&self, g: &LatticePoint) -> LatticePoint {
        -g
    }

    fn distance(&self, a: &LatticePoint, b: &LatticePoint) -> Result<u64> {
        Ok(a.l1_distance(b))
    }

    fn metric_is_exact(&self) -> bool {
        true
    }
}
