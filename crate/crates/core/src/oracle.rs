//! Breadth-first geodesic oracles.
//!
//! These search the Cayley graph directly, deduplicating by canonical group
//! elements, and share no code with the flow/Steiner and tour formulas they
//! are used to check.

use std::collections::HashMap;
use std::hash::Hash;

use serde::{Serialize, Serializer};

use crate::group::{BaseGroup, Config, LatticePoint};
use crate::solvable::SolvableGroup;
use crate::word::{Letter, Word};
use crate::wreath::{WreathElement, WreathGroup};

/// Outcome of a bounded search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OracleLength {
    Exact(u64),
    ExceedsRadius(usize),
}

impl OracleLength {
    pub fn exact(self) -> Option<u64> {
        match self {
            OracleLength::Exact(n) => Some(n),
            OracleLength::ExceedsRadius(_) => None,
        }
    }
}

impl From<(Option<usize>, usize)> for OracleLength {
    fn from((found, radius): (Option<usize>, usize)) -> Self {
        match found {
            Some(d) => OracleLength::Exact(d as u64),
            None => OracleLength::ExceedsRadius(radius),
        }
    }
}

/// JSON: the integer length, or the string `"exceeds radius"`.
impl Serialize for OracleLength {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            OracleLength::Exact(n) => s.serialize_u64(*n),
            OracleLength::ExceedsRadius(_) => s.serialize_str("exceeds radius"),
        }
    }
}

/// Graph distance between `start` and `goal` in an undirected graph given by
/// `neighbors`, or `None` if it exceeds `radius`.
///
/// Grows the smaller frontier one full level at a time. When a level meets
/// the other side, the least combined depth among the meeting nodes is exact.
pub fn bidirectional_bfs<N, F>(start: N, goal: N, radius: usize, neighbors: F) -> Option<usize>
where
    N: Clone + Eq + Hash,
    F: Fn(&N) -> Vec<N>,
{
    if start == goal {
        return Some(0);
    }
    let mut seen = [HashMap::new(), HashMap::new()];
    seen[0].insert(start.clone(), 0usize);
    seen[1].insert(goal.clone(), 0usize);
    let mut frontier = [vec![start], vec![goal]];
    let mut depth = [0usize, 0usize];
    while depth[0] + depth[1] < radius {
        let side = if frontier[0].len() <= frontier[1].len() { 0 } else { 1 };
        if frontier[side].is_empty() {
            return None;
        }
        let other = 1 - side;
        depth[side] += 1;
        let mut next = Vec::new();
        let mut best: Option<usize> = None;
        for node in &frontier[side] {
            for n in neighbors(node) {
                if seen[side].contains_key(&n) {
                    continue;
                }
                if let Some(&d) = seen[other].get(&n) {
                    let total = depth[side] + d;
                    best = Some(best.map_or(total, |b| b.min(total)));
                }
                seen[side].insert(n.clone(), depth[side]);
                next.push(n);
            }
        }
        if let Some(b) = best {
            return (b <= radius).then_some(b);
        }
        frontier[side] = next;
    }
    None
}

/// Word-metric distance between two elements of any base group, by search.
pub fn cayley_distance<G: BaseGroup>(
    group: &G,
    a: &G::Element,
    b: &G::Element,
    radius: usize,
) -> Option<usize> {
    let letters: Vec<Letter> = Letter::all(group.rank()).collect();
    bidirectional_bfs(a.clone(), b.clone(), radius, |g| {
        letters.iter().map(|&l| group.mul_letter(g, l)).collect()
    })
}

/// Geodesic length of `w` in the free metabelian group `F/F''` of rank
/// `rank`, by search over flow normal forms.
pub fn bfs_geodesic_oracle_fn(w: &Word, rank: usize, radius: usize) -> OracleLength {
    let cfg = Config { rank, degree: 2 };
    let g = SolvableGroup::new(cfg);
    let target = g.evaluate(w);
    (cayley_distance(&g, &g.identity(), &target, radius), radius).into()
}

/// Geodesic length of a wreath element over `Z^r` with generators
/// `{x_i} ∪ {a_i}`.
pub fn bfs_geodesic_oracle_wreath(
    e: &WreathElement<LatticePoint>,
    group: &WreathGroup<crate::group::Lattice>,
    radius: usize,
) -> OracleLength {
    let rank = group.base().rank();
    let found = bidirectional_bfs(group.identity(), e.clone(), radius, |g| {
        let mut out = Vec::with_capacity(4 * rank);
        for l in Letter::all(rank) {
            out.push(group.mul_base_letter(g, l));
            out.push(group.mul_lamp_letter(g, l));
        }
        out
    });
    (found, radius).into()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::Lattice;
    use crate::solvable::solvable_from_word;
    use crate::wreath::magnus_embed;
    use std::collections::HashMap;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn fn_oracle_examples() {
        assert_eq!(bfs_geodesic_oracle_fn(&w("x1 x2 x1^-1 x2^-1"), 2, 6), OracleLength::Exact(4));
        assert_eq!(bfs_geodesic_oracle_fn(&Word::identity(), 2, 6), OracleLength::Exact(0));
        assert_eq!(bfs_geodesic_oracle_fn(&w("x1 x2"), 2, 1), OracleLength::ExceedsRadius(1));
        assert_eq!(bfs_geodesic_oracle_fn(&w("x1 x2"), 2, 2), OracleLength::Exact(2));
    }

    #[test]
    fn fn_oracle_matches_word_enumeration() {
        // shortest spelling over all (not necessarily reduced) words of length <= 6
        let cfg = Config { rank: 2, degree: 2 };
        let mut best: HashMap<_, usize> = HashMap::new();
        let mut layer = vec![Word::identity()];
        for len in 0..=6 {
            for u in &layer {
                best.entry(solvable_from_word(u, cfg)).or_insert(len);
            }
            if len == 6 {
                break;
            }
            layer = layer
                .iter()
                .flat_map(|u| Letter::all(2).map(move |l| u.concat(&Word::from_letters(vec![l]))))
                .collect();
        }
        for len in 0..=6 {
            for u in Word::all_reduced(2, len) {
                let key = solvable_from_word(&u, cfg);
                let got = bfs_geodesic_oracle_fn(&u, 2, 6);
                assert_eq!(got.exact(), best.get(&key).map(|&d| d as u64), "word {u}");
            }
        }
    }

    #[test]
    fn wreath_oracle_examples() {
        let z2 = Lattice::new(2).unwrap();
        let wg = WreathGroup::new(z2);
        let e = magnus_embed(&w("x1 x1"), &z2);
        assert_eq!(bfs_geodesic_oracle_wreath(&e, &wg, 6), OracleLength::Exact(4));
        assert_eq!(bfs_geodesic_oracle_wreath(&wg.identity(), &wg, 6), OracleLength::Exact(0));
        let c = magnus_embed(&w("x1 x2 x1^-1 x2^-1"), &z2);
        assert_eq!(bfs_geodesic_oracle_wreath(&c, &wg, 8), OracleLength::Exact(8));
        assert_eq!(bfs_geodesic_oracle_wreath(&c, &wg, 7), OracleLength::ExceedsRadius(7));
    }

    #[test]
    fn bidirectional_matches_plain_bfs_on_a_path_graph() {
        // a cycle of length 11
        let nb = |n: &i32| vec![(n + 1).rem_euclid(11), (n - 1).rem_euclid(11)];
        for goal in 0..11 {
            let d = bidirectional_bfs(0, goal, 20, nb).unwrap();
            assert_eq!(d as i32, goal.min(11 - goal));
        }
        assert_eq!(bidirectional_bfs(0, 5, 4, nb), None);
    }

    #[test]
    fn oracle_json() {
        assert_eq!(serde_json::to_string(&OracleLength::Exact(4)).unwrap(), "4");
        assert_eq!(
            serde_json::to_string(&OracleLength::ExceedsRadius(3)).unwrap(),
            "\"exceeds radius\""
        );
    }
}
