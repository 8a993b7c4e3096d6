//! Evaluation strata and tropical evaluation maps.

use super::flatten::ConeComplexMap;
use super::moduli::moduli_cone;
use super::{CombinatorialType, ContactMatrix, DiscreteData};
use crate::error::{Error, Result};
use crate::lattice_geom::{linalg, quotient_map, star_fan, Cone, ConeComplex, HCone};
use crate::num::{primitive_from_rationals, LatticeVector};

/// Cone spanned by the rays with positive contact in row `i`, and its star fan.
pub fn evaluation_stratum(lambda: &DiscreteData, i: usize, fan: &ConeComplex) -> Result<(Cone, ConeComplex)> {
    let row = lambda.contacts.rows.get(i).ok_or_else(|| Error::invalid(format!("no leg {i}")))?;
    stratum_of_row(row, fan)
}

pub(crate) fn stratum_of_row(row: &[u64], fan: &ConeComplex) -> Result<(Cone, ConeComplex)> {
    let rays = fan.rays();
    if row.len() != rays.len() {
        return Err(Error::RankMismatch { expected: rays.len(), found: row.len() });
    }
    let gens: Vec<LatticeVector> = row.iter().zip(&rays).filter(|(c, _)| **c > 0).map(|(_, r)| r.clone()).collect();
    let cone = Cone::from_generators(gens, fan.rank()).map_err(|_| Error::NoSuchStratum)?;
    if !fan.contains_cone(&cone) {
        return Err(Error::NoSuchStratum);
    }
    let star = star_fan(fan, &cone)?;
    Ok((cone, star))
}

/// Product of complexes in the direct sum of their lattices.
pub fn product_complex(parts: &[ConeComplex]) -> ConeComplex {
    let total: usize = parts.iter().map(|p| p.rank()).sum();
    let mut acc: Vec<Vec<LatticeVector>> = vec![vec![]];
    let mut offset = 0;
    for p in parts {
        let mut next = Vec::new();
        for gens in &acc {
            for c in p.maximal_cones() {
                let mut g = gens.clone();
                for r in c.rays() {
                    let mut v = LatticeVector::zero(total);
                    for (k, x) in r.0.iter().enumerate() {
                        v.0[offset + k] = x.clone();
                    }
                    g.push(v);
                }
                next.push(g);
            }
        }
        acc = next;
        offset += p.rank();
    }
    ConeComplex::from_cones(total, acc.into_iter().map(|g| Cone::from_generators(g, total).expect("product of pointed cones")))
}

/// The evaluation map of one type: domain is the moduli cone in lattice coordinates on
/// its span (`basis` gives those coordinates as parameter-space vectors); codomain is the
/// product over legs of the star fans of their evaluation strata.
#[derive(Debug, Clone)]
pub struct EvaluationMap {
    pub map: ConeComplexMap,
    pub basis: Vec<LatticeVector>,
    pub strata: Vec<Cone>,
}

pub fn tropical_evaluation(t: &CombinatorialType, contacts: &ContactMatrix) -> Result<EvaluationMap> {
    let fan = t.target.as_ref().ok_or_else(|| Error::invalid("evaluation needs a target fan"))?;
    if contacts.rows.len() != t.curve.legs.len() {
        return Err(Error::invalid("one contact row per leg required"));
    }
    let cell = moduli_cone(t, None, &[])?;
    let np = cell.point.len();
    let n = t.rank;
    let ri = cell.polyhedron.relative_interior().ok_or(Error::Infeasible)?;
    let mut hull: Vec<LatticeVector> = cell.polyhedron.eq.iter().map(|r| primitive_from_rationals(r)).collect();
    hull.extend(ri.implicit.iter().map(|&i| primitive_from_rationals(&cell.polyhedron.ge[i])));
    hull.retain(|v| !v.is_zero());
    let red = linalg::unimodular_reduction(&hull, np);
    let basis: Vec<LatticeVector> = red.u[red.rank..].to_vec();
    let d = basis.len();
    let to_y = |row: &LatticeVector| LatticeVector(basis.iter().map(|k| row.dot(k)).collect());
    let ineqs: Vec<LatticeVector> = cell.polyhedron.ge.iter().map(|r| to_y(&primitive_from_rationals(r))).filter(|v| !v.is_zero()).collect();
    let dom_cone = HCone { rank: d, eqs: vec![], ineqs }.to_cone()?;
    let domain = ConeComplex::from_cones(d, [dom_cone]);
    let mut rows = Vec::new();
    let mut stars = Vec::new();
    let mut strata = Vec::new();
    for (l, leg) in t.curve.legs.iter().enumerate() {
        let (sigma, star) = stratum_of_row(&contacts.rows[l], fan)?;
        let q = quotient_map(sigma.rays(), n);
        for qr in &q {
            let mut prow = LatticeVector::zero(np);
            for i in 0..n {
                prow.0[leg.vertex * n + i] = qr[i].clone();
            }
            rows.push(to_y(&prow));
        }
        stars.push(star);
        strata.push(sigma);
    }
    let codomain = product_complex(&stars);
    let map = ConeComplexMap::linear(domain, codomain, rows)?;
    Ok(EvaluationMap { map, basis, strata })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice_geom::{product_p1_fan, projective_space_fan};
    use crate::tropical_curves::{Leg, TropicalCurve};
    use crate::tropical_maps::DiscreteData;

    fn contacts(rows: Vec<Vec<u64>>) -> ContactMatrix {
        ContactMatrix { rows }
    }

    #[test]
    fn strata() {
        let fan = projective_space_fan(2);
        let lam = DiscreteData { genus: 0, legs: 3, class: vec![1], contacts: contacts(vec![vec![0, 0, 0], vec![0, 1, 0], vec![1, 0, 1]]) };
        let (c0, s0) = evaluation_stratum(&lam, 0, &fan).unwrap();
        assert!(c0.is_zero());
        assert_eq!(s0, fan);
        let (c1, s1) = evaluation_stratum(&lam, 1, &fan).unwrap();
        assert_eq!(c1.dim(), 1);
        assert_eq!(s1, projective_space_fan(1));
        let p1 = product_p1_fan(2);
        // Rays (-1,0) and (1,0) span no cone.
        let bad = DiscreteData { genus: 0, legs: 1, class: vec![], contacts: contacts(vec![vec![1, 0, 0, 1]]) };
        assert_eq!(evaluation_stratum(&bad, 0, &p1).unwrap_err(), Error::NoSuchStratum);
    }

    fn one_vertex_type(fan: ConeComplex) -> CombinatorialType {
        let top = fan.index_of(&Cone::from_i64(&[&[1, 0], &[0, 1]], 2).unwrap()).unwrap();
        let mut curve = TropicalCurve::from_edges(1, &[]);
        curve.legs = vec![Leg { vertex: 0, label: "p".into() }];
        CombinatorialType {
            curve,
            rank: 2,
            target: Some(fan),
            vertex_cones: vec![top],
            edge_cones: vec![],
            slopes: vec![],
            leg_slopes: vec![LatticeVector::zero(2)],
        }
    }

    #[test]
    fn contracted_leg_evaluates_to_vertex_position() {
        let fan = projective_space_fan(2);
        let t = one_vertex_type(fan);
        let ev = tropical_evaluation(&t, &contacts(vec![vec![0, 0, 0]])).unwrap();
        // Parameters are exactly the vertex position, so the map is an isomorphism onto the cone.
        assert_eq!(ev.map.domain.rank(), 2);
        assert!(crate::tropical_maps::is_flat_map(&ev.map));
        let m = &ev.map.matrices[0];
        let det = linalg::det_int(m);
        assert_eq!(det.magnitude(), &1u32.into());
    }

    #[test]
    fn weight_two_leg_scales_distance() {
        // Vertex 0 at the apex, edge of slope (2,1) into the open quadrant; a leg at vertex 1
        // with contact along (0,1) evaluates to the first coordinate, 2 * length.
        let fan = projective_space_fan(2);
        let mut curve = TropicalCurve::from_edges(2, &[(0, 1)]);
        curve.legs = vec![Leg { vertex: 1, label: "q".into() }];
        let t = CombinatorialType {
            curve,
            rank: 2,
            target: Some(fan.clone()),
            vertex_cones: vec![0, fan.index_of(&Cone::from_i64(&[&[1, 0], &[0, 1]], 2).unwrap()).unwrap()],
            edge_cones: vec![fan.index_of(&Cone::from_i64(&[&[1, 0], &[0, 1]], 2).unwrap()).unwrap()],
            slopes: vec![LatticeVector::from_i64(&[2, 1])],
            leg_slopes: vec![LatticeVector::from_i64(&[0, 1])],
        };
        let ev = tropical_evaluation(&t, &contacts(vec![vec![0, 1, 0]])).unwrap();
        // Domain: the edge length (vertex 0 pinned at the apex). Evaluation: first coordinate of
        // vertex 1 modulo the ray (0,1), i.e. 2 * length up to sign.
        assert_eq!(ev.map.domain.rank(), 1);
        let m = &ev.map.matrices[0];
        let l = ev.basis[0].0[4].clone();
        let val = m[0][0].clone();
        assert_eq!(num_traits::Signed::abs(&val), num_traits::Signed::abs(&(l * 2)));
    }
}
