use crate::error::{Error, Result};

/// A minimum tour. `order` lists the visited points; for walks, points equal
/// to the start or end are dropped since they are visited for free.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TourResult<P> {
    pub length: u64,
    pub order: Vec<P>,
}

const INF: u64 = u64::MAX / 4;

fn check_cap(n: usize, cap: usize) -> Result<()> {
    let cap = cap.min(super::MAX_TOUR_POINTS);
    if n > cap {
        return Err(Error::Capacity {
            kernel: "held-karp",
            size: n,
            cap,
        });
    }
    Ok(())
}

/// `cost[mask][j]`: cheapest way to stand at `j` having visited `mask`, visit
/// all remaining points and finish with `finish(j)`. Filled for decreasing masks.
fn completion_table(dist: &[Vec<u64>], finish: &[u64]) -> Vec<u64> {
    let n = dist.len();
    let full = (1usize << n) - 1;
    let mut cost = vec![INF; (1usize << n) * n];
    for j in 0..n {
        cost[full * n + j] = finish[j];
    }
    for mask in (1..full).rev() {
        for j in 0..n {
            if mask & (1 << j) == 0 {
                continue;
            }
            let mut best = INF;
            for k in 0..n {
                if mask & (1 << k) != 0 {
                    continue;
                }
                let c = dist[j][k] + cost[(mask | 1 << k) * n + k];
                if c < best {
                    best = c;
                }
            }
            cost[mask * n + j] = best;
        }
    }
    cost
}

/// Walks the table forward, taking the lowest-index optimal successor.
fn reconstruct(dist: &[Vec<u64>], cost: &[u64], first: usize) -> Vec<usize> {
    let n = dist.len();
    let mut order = vec![first];
    let mut mask = 1usize << first;
    let mut at = first;
    while order.len() < n {
        let here = cost[mask * n + at];
        let k = (0..n)
            .find(|&k| mask & (1 << k) == 0 && dist[at][k] + cost[(mask | 1 << k) * n + k] == here)
            .expect("completion table is consistent");
        order.push(k);
        mask |= 1 << k;
        at = k;
    }
    order
}

fn prepare<P: Ord + Clone>(points: &[P]) -> Vec<P> {
    let mut pts = points.to_vec();
    pts.sort();
    pts.dedup();
    pts
}

/// Exact shortest closed tour through `points` under `metric`.
///
/// The tour starts at the least point; among optimal tours the visiting order
/// is the lexicographically least in point order.
pub fn shortest_closed_tour<P, M>(points: &[P], metric: M, cap: usize) -> Result<TourResult<P>>
where
    P: Ord + Clone,
    M: Fn(&P, &P) -> u64,
{
    let pts = prepare(points);
    check_cap(pts.len(), cap)?;
    if pts.len() <= 1 {
        return Ok(TourResult { length: 0, order: pts });
    }
    // DP over the points other than pts[0], which anchors the tour.
    let rest = &pts[1..];
    let dist: Vec<Vec<u64>> = rest
        .iter()
        .map(|a| rest.iter().map(|b| metric(a, b)).collect())
        .collect();
    let home: Vec<u64> = rest.iter().map(|p| metric(p, &pts[0])).collect();
    let cost = completion_table(&dist, &home);
    let m = rest.len();
    let (first, length) = (0..m)
        .map(|j| (j, metric(&pts[0], &rest[j]) + cost[(1usize << j) * m + j]))
        .min_by_key(|&(j, c)| (c, j))
        .unwrap();
    let mut order = vec![pts[0].clone()];
    order.extend(reconstruct(&dist, &cost, first).into_iter().map(|i| rest[i].clone()));
    Ok(TourResult { length, order })
}

/// Exact shortest walk from `start` to `end` visiting every point.
pub fn shortest_walk<P, M>(start: &P, end: &P, points: &[P], metric: M, cap: usize) -> Result<TourResult<P>>
where
    P: Ord + Clone,
    M: Fn(&P, &P) -> u64,
{
    let pts: Vec<P> = prepare(points)
        .into_iter()
        .filter(|p| p != start && p != end)
        .collect();
    check_cap(pts.len(), cap)?;
    if pts.is_empty() {
        return Ok(TourResult {
            length: metric(start, end),
            order: pts,
        });
    }
    let n = pts.len();
    let dist: Vec<Vec<u64>> = pts
        .iter()
        .map(|a| pts.iter().map(|b| metric(a, b)).collect())
        .collect();
    let finish: Vec<u64> = pts.iter().map(|p| metric(p, end)).collect();
    let cost = completion_table(&dist, &finish);
    let (first, length) = (0..n)
        .map(|j| (j, metric(start, &pts[j]) + cost[(1usize << j) * n + j]))
        .min_by_key(|&(j, c)| (c, j))
        .unwrap();
    let order = reconstruct(&dist, &cost, first)
        .into_iter()
        .map(|i| pts[i].clone())
        .collect();
    Ok(TourResult { length, order })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::LatticePoint;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn p(c: &[i64]) -> LatticePoint {
        LatticePoint(c.to_vec())
    }

    fn l1(a: &LatticePoint, b: &LatticePoint) -> u64 {
        a.l1_distance(b)
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

    fn brute_closed(pts: &[LatticePoint]) -> u64 {
        if pts.len() <= 1 {
            return 0;
        }
        permutations(pts.len())
            .iter()
            .map(|o| (0..o.len()).map(|i| l1(&pts[o[i]], &pts[o[(i + 1) % o.len()]])).sum())
            .min()
            .unwrap()
    }

    fn brute_walk(s: &LatticePoint, e: &LatticePoint, pts: &[LatticePoint]) -> u64 {
        permutations(pts.len())
            .iter()
            .map(|o| {
                let mut at = s;
                let mut total = 0;
                for &i in o {
                    total += l1(at, &pts[i]);
                    at = &pts[i];
                }
                total + l1(at, e)
            })
            .min()
            .unwrap()
    }

    #[test]
    fn closed_tour_examples() {
        assert_eq!(shortest_closed_tour(&[p(&[0, 0])], l1, 18).unwrap().length, 0);
        let t = shortest_closed_tour(&[p(&[0, 0]), p(&[1, 0]), p(&[0, 1])], l1, 18).unwrap();
        assert_eq!(t.length, 4);
        assert_eq!(t.order, vec![p(&[0, 0]), p(&[0, 1]), p(&[1, 0])]);
        assert_eq!(shortest_closed_tour(&[p(&[0, 0]), p(&[3, 0])], l1, 18).unwrap().length, 6);
        assert_eq!(shortest_closed_tour::<LatticePoint, _>(&[], l1, 18).unwrap().length, 0);
    }

    #[test]
    fn walk_examples() {
        let o = p(&[0, 0]);
        let w = shortest_walk(&o, &o, &[p(&[0, 0]), p(&[1, 0]), p(&[0, 1])], l1, 18).unwrap();
        assert_eq!(w.length, 4);
        let w = shortest_walk(&o, &p(&[2, 0]), &[p(&[0, 0]), p(&[1, 0])], l1, 18).unwrap();
        assert_eq!(w.length, 2);
        let w = shortest_walk(&o, &p(&[2, -3]), &[], l1, 18).unwrap();
        assert_eq!(w.length, 5);
    }

    #[test]
    fn capacity_error() {
        let pts: Vec<LatticePoint> = (0..5).map(|i| p(&[i, 0])).collect();
        assert_eq!(
            shortest_closed_tour(&pts, l1, 4),
            Err(Error::Capacity { kernel: "held-karp", size: 5, cap: 4 })
        );
        assert!(shortest_closed_tour(&pts, l1, 5).is_ok());
    }

    #[test]
    fn agrees_with_permutations() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..120 {
            let n = rng.random_range(1..=7);
            let pts: Vec<LatticePoint> = (0..n)
                .map(|_| p(&[rng.random_range(-4..=4), rng.random_range(-4..=4)]))
                .collect();
            let mut uniq = pts.clone();
            uniq.sort();
            uniq.dedup();
            let t = shortest_closed_tour(&pts, l1, 18).unwrap();
            assert_eq!(t.length, brute_closed(&uniq));
            let recomputed: u64 = (0..t.order.len())
                .map(|i| l1(&t.order[i], &t.order[(i + 1) % t.order.len()]))
                .sum();
            assert_eq!(recomputed, t.length);

            let s = p(&[rng.random_range(-4..=4), rng.random_range(-4..=4)]);
            let e = p(&[rng.random_range(-4..=4), rng.random_range(-4..=4)]);
            let w = shortest_walk(&s, &e, &pts, l1, 18).unwrap();
            assert_eq!(w.length, brute_walk(&s, &e, &uniq));
            let mut at = &s;
            let mut total = 0;
            for q in &w.order {
                total += l1(at, q);
                at = q;
            }
            assert_eq!(total + l1(at, &e), w.length);
        }
    }

    #[test]
    fn adding_points_never_shortens() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let mut pts = vec![p(&[0, 0, 0])];
        let mut last = 0;
        for _ in 0..10 {
            pts.push(p(&[rng.random_range(-3..=3), rng.random_range(-3..=3), rng.random_range(-3..=3)]));
            let t = shortest_closed_tour(&pts, l1, 18).unwrap().length;
            assert!(t >= last);
            last = t;
        }
    }
}
