//! Independent oracles shared by the integration tests. None of these call
//! into the routines they are used to check.
#![allow(dead_code)]

use std::collections::{BTreeMap, HashMap};

use magnus_core::{BaseGroup, LatticePoint, Word};

/// Element of the free group ring `Z[F]`, keyed by freely reduced words.
pub type FreeRing = BTreeMap<Word, i64>;

fn add_into(acc: &mut FreeRing, other: &FreeRing, scale: i64) {
    for (k, v) in other {
        let e = acc.entry(k.clone()).or_insert(0);
        *e += scale * v;
    }
    acc.retain(|_, v| *v != 0);
}

fn left_mul(u: &Word, p: &FreeRing) -> FreeRing {
    let mut out = FreeRing::new();
    for (k, v) in p {
        *out.entry(u.concat(k).free_reduce()).or_insert(0) += v;
    }
    out.retain(|_, v| *v != 0);
    out
}

/// `∂w/∂x_gen` in `Z[F]` by the split rule `∂(uv) = ∂u + u·∂v`, recursing on
/// halves of the word.
pub fn free_fox(w: &Word, gen: usize) -> FreeRing {
    let letters = w.letters();
    match letters.len() {
        0 => FreeRing::new(),
        1 => {
            let l = letters[0];
            let mut out = FreeRing::new();
            if l.gen == gen {
                if l.inverse {
                    out.insert(Word::from_letters(vec![l]), -1);
                } else {
                    out.insert(Word::identity(), 1);
                }
            }
            out
        }
        n => {
            let u = Word::from_letters(letters[..n / 2].to_vec());
            let v = Word::from_letters(letters[n / 2..].to_vec());
            let mut out = free_fox(&u, gen);
            add_into(&mut out, &left_mul(&u, &free_fox(&v, gen)), 1);
            out
        }
    }
}

/// Projection `Z[F] -> Z[B]`.
pub fn project<G: BaseGroup>(p: &FreeRing, group: &G) -> BTreeMap<G::Element, i64> {
    let mut out = BTreeMap::new();
    for (k, v) in p {
        *out.entry(group.evaluate(k)).or_insert(0) += v;
    }
    out.retain(|_, v| *v != 0);
    out
}

/// Flow by walking the path letter by letter, keyed by (tail, gen).
pub fn traced_flow(w: &Word, rank: usize) -> BTreeMap<(Vec<i64>, usize), i64> {
    let mut at = vec![0i64; rank];
    let mut out = BTreeMap::new();
    for l in w.letters() {
        if l.inverse {
            at[l.gen] -= 1;
            *out.entry((at.clone(), l.gen)).or_insert(0) -= 1;
        } else {
            *out.entry((at.clone(), l.gen)).or_insert(0) += 1;
            at[l.gen] += 1;
        }
    }
    out.retain(|_, v| *v != 0);
    out
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for perm in permutations(n - 1) {
        for pos in 0..=perm.len() {
            let mut q = perm.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

fn dedup(points: &[LatticePoint]) -> Vec<LatticePoint> {
    let mut v = points.to_vec();
    v.sort();
    v.dedup();
    v
}

/// Shortest closed tour by trying every visiting order.
pub fn brute_closed_tour(points: &[LatticePoint]) -> u64 {
    let pts = dedup(points);
    if pts.len() <= 1 {
        return 0;
    }
    permutations(pts.len() - 1)
        .into_iter()
        .map(|perm| {
            let order: Vec<&LatticePoint> = std::iter::once(&pts[0]).chain(perm.iter().map(|&i| &pts[i + 1])).collect();
            (0..order.len()).map(|i| order[i].l1_distance(order[(i + 1) % order.len()])).sum()
        })
        .min()
        .unwrap()
}

/// Shortest walk `start -> all points -> end` by trying every order.
pub fn brute_walk(start: &LatticePoint, end: &LatticePoint, points: &[LatticePoint]) -> u64 {
    let pts = dedup(points);
    permutations(pts.len())
        .into_iter()
        .map(|perm| {
            let mut at = start;
            let mut total = 0;
            for i in perm {
                total += at.l1_distance(&pts[i]);
                at = &pts[i];
            }
            total + at.l1_distance(end)
        })
        .min()
        .unwrap()
}

struct Dsu(Vec<usize>);

impl Dsu {
    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }
    fn union(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        self.0[a] = b;
    }
}

/// Least number of unit lattice edges joining all groups (each group counts
/// as already connected), searching every edge subset of size `<= max_cost`
/// inside the bounding box. `None` if more than `max_cost` edges are needed.
pub fn brute_forest(groups: &[Vec<LatticePoint>], max_cost: usize) -> Option<usize> {
    let rank = groups[0][0].rank();
    let all: Vec<&LatticePoint> = groups.iter().flatten().collect();
    let lo: Vec<i64> = (0..rank).map(|d| all.iter().map(|p| p.coords()[d]).min().unwrap()).collect();
    let hi: Vec<i64> = (0..rank).map(|d| all.iter().map(|p| p.coords()[d]).max().unwrap()).collect();

    let mut points: Vec<Vec<i64>> = vec![vec![]];
    for d in 0..rank {
        points = points
            .into_iter()
            .flat_map(|p| {
                (lo[d]..=hi[d]).map(move |c| {
                    let mut q = p.clone();
                    q.push(c);
                    q
                })
            })
            .collect();
    }
    let index: HashMap<Vec<i64>, usize> = points.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
    let mut edges = Vec::new();
    for p in &points {
        for d in 0..rank {
            let mut q = p.clone();
            q[d] += 1;
            if let Some(&j) = index.get(&q) {
                edges.push((index[p], j));
            }
        }
    }
    let group_idx: Vec<Vec<usize>> = groups
        .iter()
        .map(|g| g.iter().map(|p| index[p.coords()]).collect())
        .collect();

    let connected = |chosen: &[usize]| {
        let mut dsu = Dsu((0..points.len()).collect());
        for g in &group_idx {
            for w in g.windows(2) {
                dsu.union(w[0], w[1]);
            }
        }
        for &e in chosen {
            dsu.union(edges[e].0, edges[e].1);
        }
        let r = dsu.find(group_idx[0][0]);
        group_idx.iter().all(|g| dsu.find(g[0]) == r)
    };

    fn combos(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, f: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        if cur.len() == k {
            return f(cur);
        }
        for i in start..n {
            cur.push(i);
            if combos(n, k, i + 1, cur, f) {
                return true;
            }
            cur.pop();
        }
        false
    }

    for k in 0..=max_cost {
        let mut cur = Vec::new();
        if combos(edges.len(), k, 0, &mut cur, &mut |c| connected(c)) {
            return Some(k);
        }
    }
    None
}
