//! Refinements, stars and quotient fans.

use std::collections::BTreeSet;

use super::chamber::{chamber_complex, pieces_cover};
use super::complex::ConeComplex;
use super::cone::{apply, hrep_of_generators, Cone};
use super::linalg;
use crate::error::{Error, Result};
use crate::num::LatticeVector;

/// Whether every cone of `a` is covered by cones of `b`.
fn covered_by(a: &ConeComplex, b: &ConeComplex) -> bool {
    a.maximal_cones().into_iter().all(|s| {
        let pieces: BTreeSet<Cone> = b.maximal_cones().into_iter().map(|t| s.intersect(t)).collect();
        let pieces: Vec<Cone> = pieces.into_iter().collect();
        pieces_cover(s, &pieces)
    })
}

pub fn same_support(a: &ConeComplex, b: &ConeComplex) -> bool {
    a.rank() == b.rank() && covered_by(a, b) && covered_by(b, a)
}

fn check_same_support(a: &ConeComplex, b: &ConeComplex) -> Result<()> {
    if a.rank() != b.rank() {
        return Err(Error::RankMismatch { expected: a.rank(), found: b.rank() });
    }
    if !same_support(a, b) {
        return Err(Error::SupportMismatch);
    }
    Ok(())
}

/// Fan of all pairwise intersections.
pub fn common_refinement(a: &ConeComplex, b: &ConeComplex) -> Result<ConeComplex> {
    check_same_support(a, b)?;
    let mut cones = BTreeSet::new();
    for s in a.maximal_cones() {
        for t in b.maximal_cones() {
            cones.insert(s.intersect(t));
        }
    }
    Ok(ConeComplex::from_cones(a.rank(), cones))
}

/// True iff every cone of `a` lies in some cone of `b`.
pub fn is_refinement(a: &ConeComplex, b: &ConeComplex) -> Result<bool> {
    check_same_support(a, b)?;
    let bm = b.maximal_cones();
    Ok(a.maximal_cones().into_iter().all(|s| bm.iter().any(|t| t.contains_cone(s))))
}

/// Projection `Z^n -> Z^n / saturate(span(vs))` as integer rows.
pub fn quotient_map(vs: &[LatticeVector], n: usize) -> Vec<LatticeVector> {
    let red = linalg::unimodular_reduction(vs, n);
    red.u[red.rank..].to_vec()
}

/// Fan in `N / span(sigma)` formed by images of the cones containing `sigma`.
pub fn star_fan(fan: &ConeComplex, sigma: &Cone) -> Result<ConeComplex> {
    if !fan.contains_cone(sigma) {
        return Err(Error::ConeNotInComplex);
    }
    let q = quotient_map(sigma.rays(), fan.rank());
    let cones = fan.cones().iter().filter(|t| sigma.is_face_of(t)).map(|t| t.image(&q)).collect::<Result<Vec<_>>>()?;
    Ok(ConeComplex::from_cones(q.len(), cones))
}

/// Chow-quotient style fan: common refinement of the projections of all cones to `N / <v>`.
pub fn quotient_fan(fan: &ConeComplex, v: &LatticeVector) -> Result<ConeComplex> {
    if v.rank() != fan.rank() {
        return Err(Error::RankMismatch { expected: fan.rank(), found: v.rank() });
    }
    if v.is_zero() {
        return Err(Error::ZeroVector);
    }
    let q = quotient_map(std::slice::from_ref(v), fan.rank());
    let m = q.len();
    let family: Vec<_> = fan
        .cones()
        .iter()
        .map(|c| {
            let imgs: Vec<LatticeVector> = c.rays().iter().map(|r| apply(&q, r)).collect();
            hrep_of_generators(&imgs, m)
        })
        .collect();
    chamber_complex(m, &family)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice_geom::complex::{product_p1_fan, projective_space_fan};

    #[test]
    fn p2_and_p1xp1_refinement() {
        let r = common_refinement(&projective_space_fan(2), &product_p1_fan(2)).unwrap();
        assert_eq!(r.maximal_cones().len(), 5);
        assert_eq!(r.rays().len(), 5);
        assert!(is_refinement(&r, &projective_space_fan(2)).unwrap());
        assert!(!is_refinement(&projective_space_fan(2), &product_p1_fan(2)).unwrap());
    }

    #[test]
    fn support_mismatch() {
        let half = ConeComplex::from_maximal_i64(2, &[&[&[1, 0], &[0, 1]]]).unwrap();
        assert_eq!(common_refinement(&half, &projective_space_fan(2)).unwrap_err(), Error::SupportMismatch);
    }

    #[test]
    fn quotient_of_p2_by_diagonal() {
        let q = quotient_fan(&projective_space_fan(2), &LatticeVector::from_i64(&[1, 1])).unwrap();
        assert_eq!(q, projective_space_fan(1));
    }

    #[test]
    fn quotient_of_p1xp1() {
        let q = quotient_fan(&product_p1_fan(2), &LatticeVector::from_i64(&[1, 0])).unwrap();
        assert_eq!(q, projective_space_fan(1));
    }

    #[test]
    fn quotient_of_p1_is_point() {
        let q = quotient_fan(&projective_space_fan(1), &LatticeVector::from_i64(&[1])).unwrap();
        assert_eq!(q, ConeComplex::point(0));
    }

    #[test]
    fn star_of_ray_in_p2() {
        let f = projective_space_fan(2);
        let ray = Cone::from_i64(&[&[1, 0]], 2).unwrap();
        let s = star_fan(&f, &ray).unwrap();
        assert_eq!(s, projective_space_fan(1));
        assert_eq!(star_fan(&f, &Cone::zero(2)).unwrap(), f);
    }

    #[test]
    fn p3_quotient_by_diagonal_is_complete_2d() {
        let q = quotient_fan(&projective_space_fan(3), &LatticeVector::from_i64(&[1, 1, 1])).unwrap();
        assert_eq!(q.rank(), 2);
        assert!(q.is_complete());
        q.check_fan().unwrap();
    }
}
