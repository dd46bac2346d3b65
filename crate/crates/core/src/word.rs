//! Free-group words over `x1..xr` and their text syntax.
//!
//! A word is written as whitespace-separated tokens `x<k>` or `x<k>^-1`,
//! `k` counted from 1. The empty string is the identity.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// One letter `x_i^{±1}`. `gen` is zero-based internally and printed one-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    pub gen: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn new(gen: usize, inverse: bool) -> Self {
        Letter { gen, inverse }
    }

    pub fn pos(gen: usize) -> Self {
        Letter::new(gen, false)
    }

    pub fn neg(gen: usize) -> Self {
        Letter::new(gen, true)
    }

    pub fn inv(self) -> Self {
        Letter::new(self.gen, !self.inverse)
    }

    pub fn sign(self) -> i64 {
        if self.inverse {
            -1
        } else {
            1
        }
    }

    /// All `2r` letters, positive before negative, by generator.
    pub fn all(rank: usize) -> impl Iterator<Item = Letter> {
        (0..rank).flat_map(|g| [Letter::pos(g), Letter::neg(g)])
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.inverse {
            write!(f, "x{}^-1", self.gen + 1)
        } else {
            write!(f, "x{}", self.gen + 1)
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn identity() -> Self {
        Word::default()
    }

    pub fn from_letters(letters: Vec<Letter>) -> Self {
        Word { letters }
    }

    /// `x_gen^power` for a signed power.
    pub fn power(gen: usize, power: i64) -> Self {
        let l = Letter::new(gen, power < 0);
        Word::from_letters(vec![l; power.unsigned_abs() as usize])
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Parses the text syntax and checks every generator against `rank`.
    pub fn parse(text: &str, rank: usize) -> Result<Self> {
        let w: Word = text.parse()?;
        w.check_rank(rank)?;
        Ok(w)
    }

    pub fn check_rank(&self, rank: usize) -> Result<()> {
        if rank == 0 {
            return Err(Error::ZeroRank);
        }
        match self.letters.iter().find(|l| l.gen >= rank) {
            Some(l) => Err(Error::Rank {
                gen: l.gen + 1,
                rank,
            }),
            None => Ok(()),
        }
    }

    /// Largest generator index used, plus one.
    pub fn min_rank(&self) -> usize {
        self.letters.iter().map(|l| l.gen + 1).max().unwrap_or(0)
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Word { letters }
    }

    pub fn inverse(&self) -> Word {
        Word {
            letters: self.letters.iter().rev().map(|l| l.inv()).collect(),
        }
    }

    /// `[u, v] = u v u^-1 v^-1`.
    pub fn commutator(u: &Word, v: &Word) -> Word {
        u.concat(v).concat(&u.inverse()).concat(&v.inverse())
    }

    /// The unique freely reduced word equal to `self` in the free group.
    pub fn free_reduce(&self) -> Word {
        let mut out: Vec<Letter> = Vec::with_capacity(self.letters.len());
        for &l in &self.letters {
            if out.last() == Some(&l.inv()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word { letters: out }
    }

    pub fn is_reduced(&self) -> bool {
        self.letters.windows(2).all(|p| p[0] != p[1].inv())
    }

    /// Uniform random freely reduced word of exactly `len` letters: the first
    /// letter is uniform over all `2r`, every later one over the `2r - 1`
    /// letters that do not cancel the previous one.
    pub fn random_reduced<R: Rng + ?Sized>(rng: &mut R, rank: usize, len: usize) -> Word {
        let mut letters: Vec<Letter> = Vec::with_capacity(len);
        for _ in 0..len {
            let next = match letters.last() {
                None => {
                    let k = rng.random_range(0..2 * rank);
                    Letter::new(k / 2, k % 2 == 1)
                }
                Some(prev) => {
                    let forbidden = prev.inv();
                    let fidx = 2 * forbidden.gen + forbidden.inverse as usize;
                    let mut k = rng.random_range(0..2 * rank - 1);
                    if k >= fidx {
                        k += 1;
                    }
                    Letter::new(k / 2, k % 2 == 1)
                }
            };
            letters.push(next);
        }
        Word { letters }
    }

    /// Every freely reduced word of length exactly `len` in rank `rank`, in
    /// lexicographic letter order.
    pub fn all_reduced(rank: usize, len: usize) -> Vec<Word> {
        let mut layer = vec![Word::identity()];
        for _ in 0..len {
            let mut next = Vec::with_capacity(layer.len() * (2 * rank));
            for w in &layer {
                for l in Letter::all(rank) {
                    if w.letters.last() == Some(&l.inv()) {
                        continue;
                    }
                    let mut letters = w.letters.clone();
                    letters.push(l);
                    next.push(Word { letters });
                }
            }
            layer = next;
        }
        layer
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut letters = Vec::new();
        for (position, token) in s.split_whitespace().enumerate() {
            letters.push(parse_token(position, token)?);
        }
        Ok(Word { letters })
    }
}

fn parse_token(position: usize, token: &str) -> Result<Letter> {
    let err = |reason: &str| Error::Parse {
        position,
        token: token.to_string(),
        reason: reason.to_string(),
    };
    let body = token
        .strip_prefix('x')
        .ok_or_else(|| err("expected x<k> or x<k>^-1"))?;
    let (digits, inverse) = match body.strip_suffix("^-1") {
        Some(d) => (d, true),
        None => (body, false),
    };
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(err("generator index must be a positive integer"));
    }
    let k: usize = digits.parse().map_err(|_| err("generator index overflows"))?;
    if k == 0 {
        return Err(err("generator indices start at 1"));
    }
    Ok(Letter::new(k - 1, inverse))
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
