//! Maps of cone complexes, flatness, and flattening by refine-and-pullback.

use std::collections::BTreeSet;

use num_traits::{Signed, Zero};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice_geom::cone::apply;
use crate::lattice_geom::{ComplexJson, Cone, ConeComplex, HCone};
use crate::num::LatticeVector;

/// A map of embedded cone complexes, linear on each maximal domain cone.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConeComplexMap {
    pub domain: ConeComplex,
    pub codomain: ConeComplex,
    /// One integer matrix (rows = codomain coordinates) per maximal domain cone, in the
    /// order of `domain.maximal_cones()`.
    pub matrices: Vec<Vec<LatticeVector>>,
    /// For each domain cone, the smallest codomain cone containing its image.
    pub cone_assignment: Vec<usize>,
}

impl ConeComplexMap {
    pub fn new(domain: ConeComplex, codomain: ConeComplex, matrices: Vec<Vec<LatticeVector>>) -> Result<Self> {
        let maxc: Vec<Cone> = domain.maximal_cones().into_iter().cloned().collect();
        if matrices.len() != maxc.len() {
            return Err(Error::invalid("one matrix per maximal domain cone required"));
        }
        for m in &matrices {
            if m.len() != codomain.rank() || m.iter().any(|r| r.rank() != domain.rank()) {
                return Err(Error::invalid("matrix shape does not match the lattices"));
            }
        }
        let mut cone_assignment = Vec::with_capacity(domain.cones().len());
        for (ci, c) in domain.cones().iter().enumerate() {
            let owners: Vec<usize> = (0..maxc.len()).filter(|&k| c.is_face_of(&maxc[k])).collect();
            let imgs: Vec<Vec<LatticeVector>> = owners.iter().map(|&k| c.rays().iter().map(|r| apply(&matrices[k], r)).collect()).collect();
            if imgs.windows(2).any(|w| w[0] != w[1]) {
                return Err(Error::invalid(format!("maps disagree on domain cone {ci}")));
            }
            let img = &imgs[0];
            let p = img.iter().fold(LatticeVector::zero(codomain.rank()), |s, r| &s + r);
            let carrier = codomain
                .carrier(&p.to_rationals())
                .filter(|k| img.iter().all(|r| k.contains_lattice_point(r)))
                .ok_or_else(|| Error::invalid(format!("image of domain cone {ci} lies in no codomain cone")))?;
            cone_assignment.push(codomain.index_of(carrier).expect("member"));
        }
        Ok(ConeComplexMap { domain, codomain, matrices, cone_assignment })
    }

    /// Map given by one global matrix.
    pub fn linear(domain: ConeComplex, codomain: ConeComplex, matrix: Vec<LatticeVector>) -> Result<Self> {
        let k = domain.maximal_cones().len();
        ConeComplexMap::new(domain, codomain, vec![matrix; k])
    }

    pub fn matrix_for(&self, c: &Cone) -> &[LatticeVector] {
        let k = self.domain.maximal_cones().iter().position(|m| c.is_face_of(m)).expect("cone of the domain");
        &self.matrices[k]
    }

    pub fn image(&self, c: &Cone) -> Result<Cone> {
        c.image(self.matrix_for(c))
    }

    pub fn to_json(&self) -> MapComplexJson {
        MapComplexJson { domain: self.domain.to_json(), codomain: self.codomain.to_json(), matrix: None, matrices: Some(self.matrices.clone()) }
    }

    pub fn from_json(j: &MapComplexJson) -> Result<Self> {
        let domain = ConeComplex::from_json(&j.domain)?;
        let codomain = ConeComplex::from_json(&j.codomain)?;
        match (&j.matrix, &j.matrices) {
            (Some(m), None) => ConeComplexMap::linear(domain, codomain, m.clone()),
            (None, Some(ms)) => ConeComplexMap::new(domain, codomain, ms.clone()),
            _ => Err(Error::invalid("give exactly one of matrix or matrices")),
        }
    }
}

/// JSON form: either one global `matrix` or per-maximal-cone `matrices`.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct MapComplexJson {
    pub domain: ComplexJson,
    pub codomain: ComplexJson,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix: Option<Vec<LatticeVector>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrices: Option<Vec<Vec<LatticeVector>>>,
}

/// Every domain cone maps onto (not merely into) a codomain cone.
pub fn is_flat_map(f: &ConeComplexMap) -> bool {
    f.domain.cones().iter().all(|c| match f.image(c) {
        Ok(img) => f.codomain.contains_cone(&img),
        Err(_) => false,
    })
}

#[derive(Debug, Clone)]
pub struct FlattenResult {
    pub map: ConeComplexMap,
    pub iterations: usize,
    pub domain_subdivided: bool,
    pub codomain_subdivided: bool,
}

fn normalize(h: &LatticeVector) -> LatticeVector {
    let p = h.primitive().1;
    match p.0.iter().find(|c| !c.is_zero()) {
        Some(c) if c.is_negative() => -&p,
        _ => p,
    }
}

/// Common refinement of `fan` with the arrangement of `hyper`: every cone is cut by each
/// hyperplane crossing its relative interior.
fn split_by(fan: &ConeComplex, hyper: &BTreeSet<LatticeVector>) -> Result<ConeComplex> {
    let mut pieces: Vec<Cone> = fan.maximal_cones().into_iter().cloned().collect();
    for h in hyper {
        let mut next = Vec::with_capacity(pieces.len());
        for c in pieces {
            let vals: Vec<_> = c.rays().iter().map(|r| h.dot(r)).collect();
            if vals.iter().all(|v| !v.is_negative()) || vals.iter().all(|v| !v.is_positive()) {
                next.push(c);
                continue;
            }
            for side in [h.clone(), -h] {
                let mut hc = c.hrep().clone();
                hc.ineqs.push(side);
                next.push(hc.to_cone()?);
            }
        }
        pieces = next;
    }
    Ok(ConeComplex::from_cones(fan.rank(), pieces))
}

fn pullback(h: &HCone, m: &[LatticeVector], n: usize) -> HCone {
    let pull = |w: &LatticeVector| -> LatticeVector {
        let mut out = LatticeVector::zero(n);
        for (c, row) in w.0.iter().zip(m) {
            out = &out + &row.scale(c);
        }
        out
    };
    HCone { rank: n, eqs: h.eqs.iter().map(pull).collect(), ineqs: h.ineqs.iter().map(pull).collect() }
}

/// Refines the codomain by the images of all domain cones, pulls the refinement back to
/// the domain, and repeats until the map is flat or `max_iter` rounds have run.
pub fn flatten(f: &ConeComplexMap, max_iter: usize) -> Result<FlattenResult> {
    let mut cur = f.clone();
    for it in 0..=max_iter {
        if is_flat_map(&cur) {
            return Ok(FlattenResult { domain_subdivided: cur.domain != f.domain, codomain_subdivided: cur.codomain != f.codomain, map: cur, iterations: it });
        }
        if it == max_iter {
            break;
        }
        let q = cur.codomain.rank();
        let mut hyper: BTreeSet<LatticeVector> = BTreeSet::new();
        for c in cur.domain.cones() {
            let img = cur.image(c)?;
            for h in img.hrep().eqs.iter().chain(&img.hrep().ineqs) {
                if !h.is_zero() {
                    hyper.insert(normalize(h));
                }
            }
        }
        let codomain = split_by(&cur.codomain, &hyper)?;
        debug_assert_eq!(codomain.rank(), q);
        let p = cur.domain.rank();
        let dmax: Vec<Cone> = cur.domain.maximal_cones().into_iter().cloned().collect();
        let mut pieces: BTreeSet<Cone> = BTreeSet::new();
        for (k, tau) in dmax.iter().enumerate() {
            for c in codomain.maximal_cones() {
                let h = tau.hrep().intersect(&pullback(c.hrep(), &cur.matrices[k], p));
                pieces.insert(h.to_cone()?);
            }
        }
        let domain = ConeComplex::from_cones(p, pieces);
        let matrices = domain
            .maximal_cones()
            .iter()
            .map(|c| {
                let k = dmax.iter().position(|t| t.contains_cone(c)).expect("piece lies in a domain cone");
                cur.matrices[k].clone()
            })
            .collect();
        cur = ConeComplexMap::new(domain, codomain, matrices)?;
    }
    Err(Error::IterationLimit(max_iter))
}
