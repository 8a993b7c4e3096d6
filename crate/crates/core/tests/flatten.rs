mod common;

use common::{matrix, random_map, v};
use num_bigint::BigInt;
use troplog::lattice_geom::{Cone, ConeComplex};
use troplog::tropical_maps::{flatten, is_flat_map, ConeComplexMap, MapComplexJson};
use troplog::LatticeVector;

#[test]
fn random_plane_maps_flatten() {
    let mut rng = common::rng(2024);
    let mut nontrivial = 0;
    for n in 0..50 {
        let f = random_map(&mut rng);
        assert!(f.domain.maximal_cones().len() <= 6);
        let r = flatten(&f, 16).unwrap_or_else(|e| panic!("map {n}: {e}"));
        assert!(is_flat_map(&r.map), "map {n}");
        if r.iterations > 0 {
            nontrivial += 1;
            // The flattened map refines both sides.
            assert!(r.map.codomain.cones().len() >= f.codomain.cones().len());
        }
        // Round trip through JSON.
        let back = ConeComplexMap::from_json(&r.map.to_json()).unwrap();
        assert_eq!(back, r.map);
    }
    assert!(nontrivial > 10, "only {nontrivial} maps needed flattening");
}

#[test]
fn identity_needs_nothing() {
    let fan = troplog::lattice_geom::projective_space_fan(2);
    let f = ConeComplexMap::linear(fan.clone(), fan, vec![v(1, 0), v(0, 1)]).unwrap();
    let r = flatten(&f, 4).unwrap();
    assert_eq!(r.iterations, 0);
    assert!(!r.domain_subdivided && !r.codomain_subdivided);
}

#[test]
fn iteration_cap_is_reported() {
    let dom = ConeComplex::from_cones(1, [Cone::from_i64(&[&[1]], 1).unwrap()]);
    let quad = ConeComplex::from_cones(2, [Cone::from_i64(&[&[1, 0], &[0, 1]], 2).unwrap()]);
    let f = ConeComplexMap::linear(dom, quad, vec![LatticeVector::from_i64(&[1]), LatticeVector::from_i64(&[2])]).unwrap();
    assert_eq!(flatten(&f, 0).unwrap_err(), troplog::Error::IterationLimit(0));
    assert!(flatten(&f, 1).is_ok());
}

fn fixture(name: &str) -> ConeComplexMap {
    let path = format!("{}/fixtures/{name}", env!("CARGO_MANIFEST_DIR"));
    let j: MapComplexJson = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    ConeComplexMap::from_json(&j).unwrap()
}

#[test]
fn evaluation_fixtures_have_trivial_domain_subdivision() {
    for name in ["eval_point.json", "eval_weight_two.json", "eval_chain.json"] {
        let f = fixture(name);
        let r = flatten(&f, 8).unwrap();
        assert!(is_flat_map(&r.map), "{name}");
        assert!(!r.domain_subdivided, "{name}");
        assert_eq!(r.map.domain, f.domain, "{name}");
    }
    // The chain fixture is not flat before refining the target.
    assert!(!is_flat_map(&fixture("eval_chain.json")));
}

#[test]
fn matrix_helper_is_exact() {
    let m = matrix((1, 1), (0, 1), (2, 3), (-1, 0));
    let apply = |r: (i64, i64)| -> Vec<BigInt> { m.iter().map(|row| row.dot(&v(r.0, r.1))).collect() };
    assert_eq!(apply((1, 1)), vec![BigInt::from(2), BigInt::from(3)]);
    assert_eq!(apply((0, 1)), vec![BigInt::from(-1), BigInt::from(0)]);
}
