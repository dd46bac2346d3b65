mod common;

use magnus_core::kernels::{shortest_closed_tour, shortest_walk};
use magnus_core::{
    bfs_geodesic_oracle_fn, euler_geodesic_word, fox_derivative, geodesic_length_fn, magnus_embed,
    wreath_length_walk, KernelCaps, Lattice, LatticePoint, Letter, Word,
};
use proptest::prelude::*;

fn word(rank: usize, max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec((0..rank, any::<bool>()), 0..=max_len)
        .prop_map(|ls| Word::from_letters(ls.into_iter().map(|(g, i)| Letter::new(g, i)).collect()))
}

fn point(rank: usize) -> impl Strategy<Value = LatticePoint> {
    prop::collection::vec(-5i64..=5, rank).prop_map(LatticePoint)
}

proptest! {
    #[test]
    fn fox_matches_free_calculus(w in word(3, 16), gen in 0usize..3) {
        let base = Lattice::new(3).unwrap();
        let d = fox_derivative(&w, gen, &base).unwrap();
        let free = common::project(&common::free_fox(&w, gen), &base);
        let got: std::collections::BTreeMap<LatticePoint, i64> =
            d.iter().map(|(k, v)| (k.clone(), i64::try_from(v).unwrap())).collect();
        prop_assert_eq!(got, free);
    }

    #[test]
    fn embedding_lamps_match_traced_flow(w in word(2, 16)) {
        let e = magnus_embed(&w, &Lattice::new(2).unwrap());
        for ((b, gen), v) in common::traced_flow(&w, 2) {
            prop_assert_eq!(e.lamp(&LatticePoint(b)).unwrap().coords()[gen], v);
        }
    }

    #[test]
    fn tours_match_brute_force(pts in prop::collection::vec(point(2), 1..=7), a in point(2), b in point(2)) {
        let closed = shortest_closed_tour(&pts, LatticePoint::l1_distance, 18).unwrap();
        prop_assert_eq!(closed.length, common::brute_closed_tour(&pts));
        let walk = shortest_walk(&a, &b, &pts, LatticePoint::l1_distance, 18).unwrap();
        prop_assert_eq!(walk.length, common::brute_walk(&a, &b, &pts));
    }

    #[test]
    fn geodesic_matches_bfs(w in word(2, 8)) {
        let base = Lattice::new(2).unwrap();
        let caps = KernelCaps::default();
        let len = geodesic_length_fn(&w, &base, &caps).unwrap().length;
        prop_assert_eq!(bfs_geodesic_oracle_fn(&w, 2, 8).exact(), Some(len));
        let g = euler_geodesic_word(&w, &base, &caps).unwrap();
        prop_assert_eq!(g.len() as u64, len);
        prop_assert_eq!(common::traced_flow(&g, 2), common::traced_flow(&w, 2));
    }

    #[test]
    fn walk_length_at_most_twice_geodesic(w in word(3, 14)) {
        let base = Lattice::new(3).unwrap();
        let caps = KernelCaps::default();
        let len = geodesic_length_fn(&w, &base, &caps).unwrap().length;
        let walk = wreath_length_walk(&magnus_embed(&w, &base), caps.tour_points).unwrap();
        prop_assert!(walk <= 2 * len);
    }
}

#[test]
fn steiner_small_cases_match_brute_force() {
    use magnus_core::kernels::minimal_connecting_forest;
    let p = |c: &[i64]| LatticePoint(c.to_vec());
    let cases = vec![
        vec![vec![p(&[0, 0]), p(&[1, 0])], vec![p(&[0, 2]), p(&[1, 2])]],
        vec![vec![p(&[0, 0])], vec![p(&[2, 0])], vec![p(&[0, 2])]],
        vec![vec![p(&[1, 0])], vec![p(&[0, 1])], vec![p(&[2, 1])], vec![p(&[1, 2])]],
        vec![vec![p(&[1, 0, 0])], vec![p(&[0, 1, 0])], vec![p(&[0, 0, 1])]],
    ];
    for groups in cases {
        let best = common::brute_forest(&groups, 4).unwrap();
        let got = minimal_connecting_forest(&groups, &[], &KernelCaps::default()).unwrap();
        assert_eq!(got.cost, best, "{groups:?}");
    }
}
