use std::cmp::Reverse;
use std::collections::{BTreeSet, BinaryHeap, HashMap};

use crate::error::{Error, Result};
use crate::flow::UnionFind;
use crate::group::LatticePoint;

use super::KernelCaps;

/// A minimum set `Q` of unit lattice edges joining all terminal groups.
/// Each edge is stored as `(p, gen)`, meaning `p -> p + e_gen`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ForestResult {
    pub edges: BTreeSet<(LatticePoint, usize)>,
    pub cost: usize,
}

const NONE: u32 = u32::MAX;

/// The Hanan grid of a point set with its Cayley-graph structure.
struct HananGrid {
    axes: Vec<Vec<i64>>,
    strides: Vec<usize>,
    len: usize,
}

impl HananGrid {
    fn new(points: &[&LatticePoint], cap: usize) -> Result<Self> {
        let rank = points[0].rank();
        let mut axes: Vec<Vec<i64>> = vec![Vec::new(); rank];
        for p in points {
            for (d, &c) in p.coords().iter().enumerate() {
                axes[d].push(c);
            }
        }
        let mut len = 1usize;
        let mut strides = Vec::with_capacity(rank);
        for axis in axes.iter_mut() {
            axis.sort_unstable();
            axis.dedup();
            strides.push(len);
            len = len.saturating_mul(axis.len());
        }
        if len > cap {
            return Err(Error::Capacity {
                kernel: "hanan-grid",
                size: len,
                cap,
            });
        }
        Ok(HananGrid { axes, strides, len })
    }

    fn index(&self, p: &LatticePoint) -> usize {
        p.coords()
            .iter()
            .enumerate()
            .map(|(d, c)| self.axes[d].binary_search(c).expect("point on grid") * self.strides[d])
            .sum()
    }

    fn position(&self, idx: usize, d: usize) -> usize {
        (idx / self.strides[d]) % self.axes[d].len()
    }

    fn point(&self, idx: usize) -> LatticePoint {
        LatticePoint((0..self.axes.len()).map(|d| self.axes[d][self.position(idx, d)]).collect())
    }

    /// Axis neighbours of a grid vertex with their lattice distance.
    fn neighbors(&self, idx: usize, out: &mut Vec<(usize, u64)>) {
        for d in 0..self.axes.len() {
            let pos = self.position(idx, d);
            if pos > 0 {
                let gap = (self.axes[d][pos] - self.axes[d][pos - 1]) as u64;
                out.push((idx - self.strides[d], gap));
            }
            if pos + 1 < self.axes[d].len() {
                let gap = (self.axes[d][pos + 1] - self.axes[d][pos]) as u64;
                out.push((idx + self.strides[d], gap));
            }
        }
    }
}

/// Grid graph plus one zero-cost hub per terminal group.
struct SteinerGraph {
    grid: HananGrid,
    members: Vec<Vec<usize>>,
    owner: Vec<u32>,
}

impl SteinerGraph {
    fn node_count(&self) -> usize {
        self.grid.len + self.members.len()
    }

    fn neighbors(&self, v: usize, out: &mut Vec<(usize, u64)>) {
        out.clear();
        if v >= self.grid.len {
            out.extend(self.members[v - self.grid.len].iter().map(|&m| (m, 0)));
        } else {
            self.grid.neighbors(v, out);
            if self.owner[v] != NONE {
                out.push((self.grid.len + self.owner[v] as usize, 0));
            }
        }
    }

    /// Dijkstra relaxation of `dist` in place, recording predecessors.
    fn relax(&self, dist: &mut [u64], pred: &mut [u32]) {
        let mut heap: BinaryHeap<Reverse<(u64, usize)>> = dist
            .iter()
            .enumerate()
            .filter(|(_, &d)| d != u64::MAX)
            .map(|(v, &d)| Reverse((d, v)))
            .collect();
        let mut scratch = Vec::new();
        while let Some(Reverse((d, v))) = heap.pop() {
            if d > dist[v] {
                continue;
            }
            self.neighbors(v, &mut scratch);
            for &(u, w) in &scratch {
                let nd = d + w;
                if nd < dist[u] {
                    dist[u] = nd;
                    pred[u] = v as u32;
                    heap.push(Reverse((nd, u)));
                }
            }
        }
    }
}

/// Exact minimum number of unit lattice edges that, added to the given
/// components and mandatory terminals, make everything one connected set.
///
/// Components are contracted to zero-cost hubs; terminals not already inside
/// a component become singleton groups. Steiner vertices are drawn from the
/// Hanan grid of all group vertices and the tree is found by the
/// Dreyfus–Wagner subset DP with Dijkstra relaxation.
pub fn minimal_connecting_forest(
    components: &[Vec<LatticePoint>],
    terminals: &[LatticePoint],
    caps: &KernelCaps,
) -> Result<ForestResult> {
    let mut groups: Vec<Vec<LatticePoint>> = components.iter().filter(|c| !c.is_empty()).cloned().collect();
    let covered: BTreeSet<&LatticePoint> = components.iter().flatten().collect();
    let extra: BTreeSet<&LatticePoint> = terminals.iter().filter(|t| !covered.contains(t)).collect();
    groups.extend(extra.into_iter().map(|t| vec![t.clone()]));
    if groups.len() <= 1 {
        return Ok(ForestResult::default());
    }
    if groups.len() > caps.forest_groups {
        return Err(Error::Capacity {
            kernel: "dreyfus-wagner",
            size: groups.len(),
            cap: caps.forest_groups,
        });
    }

    let all: Vec<&LatticePoint> = groups.iter().flatten().collect();
    let grid = HananGrid::new(&all, caps.hanan_vertices)?;
    let mut owner = vec![NONE; grid.len];
    let mut members = Vec::with_capacity(groups.len());
    for (g, group) in groups.iter().enumerate() {
        let idx: Vec<usize> = group.iter().map(|p| grid.index(p)).collect();
        for &i in &idx {
            if owner[i] != NONE && owner[i] != g as u32 {
                return Err(Error::Structure(format!("vertex {:?} lies in two groups", grid.point(i))));
            }
            owner[i] = g as u32;
        }
        members.push(idx);
    }
    let graph = SteinerGraph { grid, members, owner };

    let k = groups.len();
    let m = k - 1;
    let hub = |t: usize| graph.grid.len + t;
    let nodes = graph.node_count();
    let subsets = 1usize << m;
    let mut dp = vec![u64::MAX; subsets * nodes];
    let mut pred = vec![NONE; subsets * nodes];
    let mut split = vec![0u32; subsets * nodes];

    for t in 0..m {
        let s = 1usize << t;
        let row = s * nodes;
        dp[row + hub(t)] = 0;
        graph.relax(&mut dp[row..row + nodes], &mut pred[row..row + nodes]);
    }
    for s in 1..subsets {
        if s.count_ones() < 2 {
            continue;
        }
        let row = s * nodes;
        let low = s & s.wrapping_neg();
        // proper subsets containing the lowest bit
        let mut sub = (s - 1) & s;
        while sub > 0 {
            if sub & low != 0 {
                let rest = s ^ sub;
                for v in 0..nodes {
                    let a = dp[sub * nodes + v];
                    let b = dp[rest * nodes + v];
                    if a != u64::MAX && b != u64::MAX && a + b < dp[row + v] {
                        dp[row + v] = a + b;
                        split[row + v] = sub as u32;
                    }
                }
            }
            sub = (sub - 1) & s;
        }
        let (dp_row, pred_row) = (&mut dp[row..row + nodes], &mut pred[row..row + nodes]);
        graph.relax(dp_row, pred_row);
    }

    let full = subsets - 1;
    let best = dp[full * nodes + hub(m)];
    if best == u64::MAX {
        return Err(Error::Invariant("terminal groups are disconnected in the Hanan grid".into()));
    }

    // unwind the DP into grid edges
    let mut edges = BTreeSet::new();
    let mut stack = vec![(full, hub(m))];
    while let Some((s, v)) = stack.pop() {
        let at = s * nodes + v;
        if pred[at] != NONE {
            let u = pred[at] as usize;
            if u < graph.grid.len && v < graph.grid.len {
                expand_grid_edge(&graph.grid, u, v, &mut edges);
            }
            stack.push((s, u));
        } else if split[at] != 0 {
            let sub = split[at] as usize;
            stack.push((sub, v));
            stack.push((s ^ sub, v));
        }
    }
    if edges.len() as u64 != best {
        return Err(Error::Invariant(format!(
            "forest has {} edges but the DP optimum is {best}",
            edges.len()
        )));
    }
    let result = ForestResult {
        cost: edges.len(),
        edges,
    };
    if !connects(&groups, &result) {
        return Err(Error::Invariant("forest does not connect all groups".into()));
    }
    Ok(result)
}

fn expand_grid_edge(grid: &HananGrid, u: usize, v: usize, edges: &mut BTreeSet<(LatticePoint, usize)>) {
    let (a, b) = (grid.point(u), grid.point(v));
    let d = (0..a.rank()).find(|&d| a.coords()[d] != b.coords()[d]).expect("distinct grid points");
    let (lo, hi) = if a.coords()[d] < b.coords()[d] { (a, b) } else { (b, a) };
    let mut p = lo;
    while p.coords()[d] < hi.coords()[d] {
        let next = p.step(d, 1);
        edges.insert((p, d));
        p = next;
    }
}

/// Union-find check that the groups plus `Q` form one connected set.
pub fn connects(groups: &[Vec<LatticePoint>], forest: &ForestResult) -> bool {
    let mut index: HashMap<&LatticePoint, usize> = HashMap::new();
    let mut heads = Vec::new();
    for (p, gen) in &forest.edges {
        heads.push(p.step(*gen, 1));
    }
    let all = groups
        .iter()
        .flatten()
        .chain(forest.edges.iter().map(|(p, _)| p))
        .chain(heads.iter());
    for p in all {
        let n = index.len();
        index.entry(p).or_insert(n);
    }
    let mut uf = UnionFind::new(index.len());
    for g in groups {
        for w in g.windows(2) {
            uf.union(index[&w[0]], index[&w[1]]);
        }
    }
    for ((p, _), h) in forest.edges.iter().zip(&heads) {
        uf.union(index[p], index[h]);
    }
    let mut roots = groups.iter().filter(|g| !g.is_empty()).map(|g| uf.find(index[&g[0]]));
    match roots.next() {
        Some(r) => roots.all(|x| x == r),
        None => true,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> LatticePoint {
        LatticePoint(c.to_vec())
    }

    fn square(x: i64, y: i64) -> Vec<LatticePoint> {
        vec![p(&[x, y]), p(&[x + 1, y]), p(&[x, y + 1]), p(&[x + 1, y + 1])]
    }

    fn caps() -> KernelCaps {
        KernelCaps::default()
    }

    #[test]
    fn single_component_is_free() {
        let f = minimal_connecting_forest(&[square(0, 0)], &[p(&[1, 1])], &caps()).unwrap();
        assert_eq!(f.cost, 0);
        assert!(f.edges.is_empty());
    }

    #[test]
    fn two_squares() {
        let f = minimal_connecting_forest(&[square(0, 0), square(3, 0)], &[], &caps()).unwrap();
        assert_eq!(f.cost, 2);
        let y = f.edges.iter().next().unwrap().0.coords()[1];
        assert!(f.edges.iter().all(|(q, gen)| *gen == 0 && q.coords()[1] == y));
    }

    #[test]
    fn component_and_two_terminals() {
        let f = minimal_connecting_forest(&[vec![p(&[0, 0])]], &[p(&[2, 0]), p(&[0, 2])], &caps()).unwrap();
        assert_eq!(f.cost, 4);
    }

    #[test]
    fn classic_steiner_cross() {
        // four arms of a plus sign: the centre is a Steiner point
        let ts = [p(&[0, 2]), p(&[4, 2]), p(&[2, 0]), p(&[2, 4])];
        let f = minimal_connecting_forest(&[], &ts, &caps()).unwrap();
        assert_eq!(f.cost, 8);
    }

    #[test]
    fn steiner_in_three_dimensions() {
        let ts = [p(&[1, 0, 0]), p(&[0, 1, 0]), p(&[0, 0, 1])];
        let f = minimal_connecting_forest(&[], &ts, &caps()).unwrap();
        assert_eq!(f.cost, 3);
    }

    #[test]
    fn path_through_component_is_free() {
        // a long component lets two far terminals meet through it
        let bar: Vec<LatticePoint> = (0..=6).map(|x| p(&[x, 0])).collect();
        let f = minimal_connecting_forest(&[bar], &[p(&[0, 1]), p(&[6, 1])], &caps()).unwrap();
        assert_eq!(f.cost, 2);
    }

    #[test]
    fn capacity_errors() {
        let ts: Vec<LatticePoint> = (0..5).map(|i| p(&[3 * i, 0])).collect();
        let tight = KernelCaps { forest_groups: 4, ..caps() };
        assert!(matches!(
            minimal_connecting_forest(&[], &ts, &tight),
            Err(Error::Capacity { kernel: "dreyfus-wagner", .. })
        ));
        let tiny = KernelCaps { hanan_vertices: 3, ..caps() };
        assert!(matches!(
            minimal_connecting_forest(&[], &ts, &tiny),
            Err(Error::Capacity { kernel: "hanan-grid", .. })
        ));
    }

    #[test]
    fn merging_components_never_costs_more() {
        let a = square(0, 0);
        let b = square(4, 1);
        let c = vec![p(&[2, 5])];
        let sep = minimal_connecting_forest(&[a.clone(), b.clone(), c.clone()], &[], &caps()).unwrap();
        let merged: Vec<LatticePoint> = a.into_iter().chain(b).collect();
        let joined = minimal_connecting_forest(&[merged, c], &[], &caps()).unwrap();
        assert!(joined.cost <= sep.cost);
    }
}
