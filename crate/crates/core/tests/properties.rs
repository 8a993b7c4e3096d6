mod common;

use std::collections::BTreeSet;

use common::{brute_automorphisms, complete_fan, curve, even_subgraphs, ray_set};
use num_bigint::BigInt;
use proptest::prelude::*;
use troplog::lattice_geom::common_refinement;
use troplog::tropical_curves::{ExtraLabels, Leg, TropicalCurve};

/// Connected multigraph: a random spanning tree plus extra edges (loops and parallels allowed).
fn connected_graph(max_v: usize, max_e: usize) -> impl Strategy<Value = (usize, Vec<(usize, usize)>, Vec<u32>)> {
    (1..=max_v).prop_flat_map(move |n| {
        let tree = (1..n).map(|i| (0..i).prop_map(move |p| (p, i))).collect::<Vec<_>>();
        let extra = prop::collection::vec((0..n, 0..n), 0..=max_e.saturating_sub(n - 1));
        let genera = prop::collection::vec(0u32..3, n);
        (Just(n), tree, extra, genera).prop_map(|(n, t, x, g)| (n, t.into_iter().chain(x).collect(), g))
    })
}

fn directions() -> impl Strategy<Value = Vec<(i64, i64)>> {
    prop::collection::vec((-5i64..=5, -5i64..=5), 3..8)
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 200, ..ProptestConfig::default() })]

    #[test]
    fn genus_is_cycle_rank_plus_vertex_genera((n, edges, genera) in connected_graph(8, 12)) {
        let c = curve(n, &edges, &genera);
        let b1 = even_subgraphs(n, &edges).trailing_zeros() as u64;
        prop_assert_eq!(c.cycle_rank().unwrap() as u64, b1);
        prop_assert_eq!(c.genus().unwrap(), b1 + genera.iter().map(|&g| u64::from(g)).sum::<u64>());
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 60, ..ProptestConfig::default() })]

    #[test]
    fn common_refinement_is_idempotent_and_commutative(a in directions(), b in directions()) {
        let (Some((fa, ra)), Some((fb, rb))) = (complete_fan(&a), complete_fan(&b)) else {
            return Err(TestCaseError::reject("not complete"));
        };
        prop_assert_eq!(&common_refinement(&fa, &fa).unwrap(), &fa);
        let ab = common_refinement(&fa, &fb).unwrap();
        let ba = common_refinement(&fb, &fa).unwrap();
        prop_assert_eq!(&ab, &ba);
        // In the plane the refinement of two complete fans has exactly the union of their rays.
        prop_assert_eq!(ray_set(&ab), ra.union(&rb).copied().collect::<BTreeSet<_>>());
        prop_assert!(ab.is_complete());
    }

    #[test]
    fn automorphism_orders_match_permutation_search(
        (n, edges, genera) in connected_graph(7, 10),
        legs in prop::collection::vec((0usize..7, 0usize..2), 0..3),
    ) {
        let mut c = curve(n, &edges, &genera);
        c.legs = legs.iter().map(|&(v, l)| Leg { vertex: v % n, label: format!("l{l}") }).collect();
        prop_assert_eq!(c.automorphism_group_order(&ExtraLabels::default()), brute_automorphisms(&c));
    }
}

#[test]
fn automorphism_brute_force_on_known_graphs() {
    // Triangle: the dihedral group of order 6.
    let tri = TropicalCurve::from_edges(3, &[(0, 1), (1, 2), (2, 0)]);
    assert_eq!(brute_automorphisms(&tri), BigInt::from(6));
    // Banana with three edges: swap the vertices, permute the edges.
    let banana = TropicalCurve::from_edges(2, &[(0, 1), (0, 1), (0, 1)]);
    assert_eq!(brute_automorphisms(&banana), BigInt::from(12));
    assert_eq!(even_subgraphs(2, &[(0, 1), (0, 1), (0, 1)]), 4);
}
