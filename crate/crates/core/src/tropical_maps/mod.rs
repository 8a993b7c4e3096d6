//! Piecewise-linear maps from tropical curves to cone complexes.

mod evaluation;
mod flatten;
mod moduli;

pub use evaluation::{evaluation_stratum, product_complex, tropical_evaluation, EvaluationMap};
pub use flatten::{flatten, is_flat_map, ConeComplexMap, FlattenResult, MapComplexJson};
pub use moduli::{is_rigid, moduli_cone, ModuliCell, PointCondition};

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice_geom::{quotient_map, Cone, ConeComplex};
use crate::num::{rat_int, serde_rational_mat, serde_rational_vec, LatticeVector, Rational};
use crate::tropical_curves::{CurveJson, TropicalCurve};

/// Discrete shadow of a tropical map: graph, cone assignments and slopes.
/// `target = None` means the map goes to the whole vector space `R^rank`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CombinatorialType {
    pub curve: TropicalCurve,
    pub rank: usize,
    pub target: Option<ConeComplex>,
    /// Index into `target.cones()` per vertex.
    pub vertex_cones: Vec<usize>,
    /// Index into `target.cones()` per edge (the cone containing the edge's relative interior).
    pub edge_cones: Vec<usize>,
    /// Slope of edge `e` oriented from `edges[e].0` to `edges[e].1`.
    pub slopes: Vec<LatticeVector>,
    pub leg_slopes: Vec<LatticeVector>,
}

/// A tropical map: a combinatorial type with vertex positions and edge lengths.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TropicalMap {
    pub ty: CombinatorialType,
    pub positions: Vec<Vec<Rational>>,
    pub lengths: Vec<Rational>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    Edge(usize),
    Vertex(usize),
    Leg(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckReport {
    pub ok: bool,
    pub first_violation: Option<Violation>,
}

impl CheckReport {
    fn pass() -> Self {
        CheckReport { ok: true, first_violation: None }
    }
    fn fail(v: Violation) -> Self {
        CheckReport { ok: false, first_violation: Some(v) }
    }
}

impl CombinatorialType {
    /// Type mapping to the whole space `R^rank` (no cone constraints).
    pub fn in_vector_space(curve: TropicalCurve, rank: usize, slopes: Vec<LatticeVector>, leg_slopes: Vec<LatticeVector>) -> Self {
        CombinatorialType { curve, rank, target: None, vertex_cones: vec![], edge_cones: vec![], slopes, leg_slopes }
    }

    pub fn validate(&self) -> Result<()> {
        let c = &self.curve;
        if self.slopes.len() != c.edges.len() || self.leg_slopes.len() != c.legs.len() {
            return Err(Error::invalid("one slope per edge and per leg required"));
        }
        for s in self.slopes.iter().chain(&self.leg_slopes) {
            if s.rank() != self.rank {
                return Err(Error::RankMismatch { expected: self.rank, found: s.rank() });
            }
        }
        for (e, &(a, b)) in c.edges.iter().enumerate() {
            if a == b && !self.slopes[e].is_zero() {
                return Err(Error::invalid(format!("loop {e} must have zero slope")));
            }
        }
        if let Some(t) = &self.target {
            if t.rank() != self.rank {
                return Err(Error::RankMismatch { expected: self.rank, found: t.rank() });
            }
            if self.vertex_cones.len() != c.vertices.len() || self.edge_cones.len() != c.edges.len() {
                return Err(Error::invalid("cone assignment per vertex and edge required"));
            }
            let n = t.cones().len();
            if self.vertex_cones.iter().chain(&self.edge_cones).any(|&i| i >= n) {
                return Err(Error::ConeNotInComplex);
            }
            for (e, &(a, b)) in c.edges.iter().enumerate() {
                let ec = &t.cones()[self.edge_cones[e]];
                for v in [a, b] {
                    if !t.cones()[self.vertex_cones[v]].is_face_of(ec) {
                        return Err(Error::invalid(format!("edge {e} cone does not contain the cone of vertex {v}")));
                    }
                }
                if !ec.hrep().eqs.iter().all(|w| w.dot(&self.slopes[e]).is_zero()) {
                    return Err(Error::invalid(format!("slope of edge {e} leaves its cone")));
                }
            }
        }
        Ok(())
    }

    pub fn vertex_cone(&self, v: usize) -> Option<&Cone> {
        self.target.as_ref().map(|t| &t.cones()[self.vertex_cones[v]])
    }

    /// Sum of outgoing edge slopes and leg slopes at `v`.
    pub fn outgoing_sum(&self, v: usize) -> LatticeVector {
        let mut s = LatticeVector::zero(self.rank);
        for (e, &(a, b)) in self.curve.edges.iter().enumerate() {
            if a == b {
                continue;
            }
            if a == v {
                s = &s + &self.slopes[e];
            }
            if b == v {
                s = &s - &self.slopes[e];
            }
        }
        for (l, leg) in self.curve.legs.iter().enumerate() {
            if leg.vertex == v {
                s = &s + &self.leg_slopes[l];
            }
        }
        s
    }

    /// Incident slopes at `v`, oriented outward: edges first, then legs.
    pub fn incident_slopes(&self, v: usize) -> Vec<LatticeVector> {
        let mut out = Vec::new();
        for (e, &(a, b)) in self.curve.edges.iter().enumerate() {
            if a == v {
                out.push(self.slopes[e].clone());
            }
            if b == v {
                out.push(-&self.slopes[e]);
            }
        }
        for (l, leg) in self.curve.legs.iter().enumerate() {
            if leg.vertex == v {
                out.push(self.leg_slopes[l].clone());
            }
        }
        out
    }

    /// Balancing at every vertex with optional per-vertex degree contributions. Vertices
    /// assigned to a nonzero cone are balanced modulo the span of that cone.
    pub fn check_balancing(&self, degree: Option<&[LatticeVector]>) -> CheckReport {
        for v in 0..self.curve.vertices.len() {
            let mut s = self.outgoing_sum(v);
            if let Some(d) = degree {
                s = &s + &d[v];
            }
            let ok = match self.vertex_cone(v) {
                Some(c) if !c.is_zero() => {
                    let q = quotient_map(c.rays(), self.rank);
                    q.iter().all(|row| row.dot(&s).is_zero())
                }
                _ => s.is_zero(),
            };
            if !ok {
                return CheckReport::fail(Violation::Vertex(v));
            }
        }
        CheckReport::pass()
    }
}

impl TropicalMap {
    /// Edge equations `pos(v) - pos(u) = length * slope` and cone membership.
    pub fn check_continuity(&self) -> CheckReport {
        let t = &self.ty;
        for (e, &(a, b)) in t.curve.edges.iter().enumerate() {
            if !self.lengths[e].is_positive() {
                return CheckReport::fail(Violation::Edge(e));
            }
            let ok = (0..t.rank).all(|i| &self.positions[b][i] - &self.positions[a][i] == &self.lengths[e] * rat_int(&t.slopes[e][i]));
            if !ok {
                return CheckReport::fail(Violation::Edge(e));
            }
        }
        if let Some(target) = &t.target {
            for v in 0..t.curve.vertices.len() {
                if !target.cones()[t.vertex_cones[v]].contains_point(&self.positions[v]) {
                    return CheckReport::fail(Violation::Vertex(v));
                }
            }
            for (e, &(a, b)) in t.curve.edges.iter().enumerate() {
                let c = &target.cones()[t.edge_cones[e]];
                if !c.contains_point(&self.positions[a]) || !c.contains_point(&self.positions[b]) {
                    return CheckReport::fail(Violation::Edge(e));
                }
            }
        }
        CheckReport::pass()
    }

    /// All vertices at one height for the functional `h`; returns that height.
    pub fn check_vertical(&self, h: &LatticeVector) -> Option<Rational> {
        let mut it = self.positions.iter().map(|p| h.dot_rat(p));
        let first = it.next()?;
        it.all(|x| x == first).then_some(first)
    }
}

/// Height functional summing coordinates.
pub fn sum_functional(rank: usize) -> LatticeVector {
    LatticeVector(vec![1.into(); rank])
}

/// Contact orders of legs (rows) against the rays of a fan (columns).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContactMatrix {
    pub rows: Vec<Vec<u64>>,
}

/// Discrete data of a pair: genus, number of legs, class, contact orders.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiscreteData {
    pub genus: u32,
    pub legs: usize,
    pub class: Vec<u64>,
    pub contacts: ContactMatrix,
}

/// Weighted sum of ray generators, returned as `(weight, primitive direction)`.
/// The rays are taken in the fan's canonical order.
pub fn leg_direction_from_contacts(row: &[u64], fan: &ConeComplex) -> Result<(num_bigint::BigInt, LatticeVector)> {
    let rays = fan.rays();
    if row.len() != rays.len() {
        return Err(Error::RankMismatch { expected: rays.len(), found: row.len() });
    }
    let mut s = LatticeVector::zero(fan.rank());
    for (c, r) in row.iter().zip(&rays) {
        s = &s + &r.scale(&(*c).into());
    }
    Ok(s.primitive())
}

/// JSON form of a tropical map or type.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct MapJson {
    #[serde(flatten)]
    pub curve: CurveJson,
    pub rank: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target: Option<crate::lattice_geom::ComplexJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cone_assignment: Option<ConeAssignmentJson>,
    pub slopes: Vec<LatticeVector>,
    #[serde(default)]
    pub leg_slopes: Vec<LatticeVector>,
    #[serde(default, skip_serializing_if = "Option::is_none", with = "opt_mat")]
    pub positions: Option<Vec<Vec<Rational>>>,
    #[serde(default, skip_serializing_if = "Option::is_none", with = "opt_vec")]
    pub lengths: Option<Vec<Rational>>,
}

/// Cone assignment by ray lists.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct ConeAssignmentJson {
    pub vertices: Vec<crate::lattice_geom::ConeJson>,
    pub edges: Vec<crate::lattice_geom::ConeJson>,
}

mod opt_mat {
    use super::*;
    pub fn serialize<S: serde::Serializer>(v: &Option<Vec<Vec<Rational>>>, s: S) -> std::result::Result<S::Ok, S::Error> {
        match v {
            Some(m) => serde_rational_mat::serialize(m, s),
            None => s.serialize_none(),
        }
    }
    pub fn deserialize<'de, D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Option<Vec<Vec<Rational>>>, D::Error> {
        serde_rational_mat::deserialize(d).map(Some)
    }
}

mod opt_vec {
    use super::*;
    pub fn serialize<S: serde::Serializer>(v: &Option<Vec<Rational>>, s: S) -> std::result::Result<S::Ok, S::Error> {
        match v {
            Some(m) => serde_rational_vec::serialize(m, s),
            None => s.serialize_none(),
        }
    }
    pub fn deserialize<'de, D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Option<Vec<Rational>>, D::Error> {
        serde_rational_vec::deserialize(d).map(Some)
    }
}

impl CombinatorialType {
    pub fn to_json(&self) -> MapJson {
        let cone_assignment = self.target.as_ref().map(|t| ConeAssignmentJson {
            vertices: self.vertex_cones.iter().map(|&i| crate::lattice_geom::ConeJson { rays: t.cones()[i].rays().to_vec() }).collect(),
            edges: self.edge_cones.iter().map(|&i| crate::lattice_geom::ConeJson { rays: t.cones()[i].rays().to_vec() }).collect(),
        });
        MapJson {
            curve: self.curve.to_json(),
            rank: self.rank,
            target: self.target.as_ref().map(|t| t.to_json()),
            cone_assignment,
            slopes: self.slopes.clone(),
            leg_slopes: self.leg_slopes.clone(),
            positions: None,
            lengths: None,
        }
    }

    pub fn from_json(j: &MapJson) -> Result<CombinatorialType> {
        let curve = TropicalCurve::from_json(&j.curve)?;
        let target = j.target.as_ref().map(ConeComplex::from_json).transpose()?;
        let (vertex_cones, edge_cones) = match (&target, &j.cone_assignment) {
            (Some(t), Some(a)) => {
                let look = |c: &crate::lattice_geom::ConeJson| -> Result<usize> {
                    let cone = Cone::from_generators(c.rays.clone(), t.rank())?;
                    t.index_of(&cone).ok_or(Error::ConeNotInComplex)
                };
                (a.vertices.iter().map(look).collect::<Result<Vec<_>>>()?, a.edges.iter().map(look).collect::<Result<Vec<_>>>()?)
            }
            (None, None) => (vec![], vec![]),
            _ => return Err(Error::invalid("target and cone_assignment must be given together")),
        };
        let leg_slopes = if j.leg_slopes.is_empty() { vec![LatticeVector::zero(j.rank); curve.legs.len()] } else { j.leg_slopes.clone() };
        let ty = CombinatorialType { curve, rank: j.rank, target, vertex_cones, edge_cones, slopes: j.slopes.clone(), leg_slopes };
        ty.validate()?;
        Ok(ty)
    }
}

impl TropicalMap {
    pub fn to_json(&self) -> MapJson {
        let mut j = self.ty.to_json();
        j.positions = Some(self.positions.clone());
        j.lengths = Some(self.lengths.clone());
        j
    }

    pub fn from_json(j: &MapJson) -> Result<TropicalMap> {
        let ty = CombinatorialType::from_json(j)?;
        let positions = j.positions.clone().ok_or_else(|| Error::invalid("positions missing"))?;
        let lengths = j.lengths.clone().ok_or_else(|| Error::invalid("lengths missing"))?;
        if positions.len() != ty.curve.vertices.len() || lengths.len() != ty.curve.edges.len() {
            return Err(Error::invalid("one position per vertex and one length per edge required"));
        }
        Ok(TropicalMap { ty, positions, lengths })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice_geom::projective_space_fan;
    use crate::num::rat;
    use crate::tropical_curves::Leg;

    fn r(x: i64) -> Rational {
        rat(x, 1)
    }

    fn segment(len: i64) -> TropicalMap {
        let curve = TropicalCurve::from_edges(2, &[(0, 1)]);
        let ty = CombinatorialType::in_vector_space(curve, 2, vec![LatticeVector::from_i64(&[1, 0])], vec![]);
        TropicalMap { ty, positions: vec![vec![r(0), r(0)], vec![r(2), r(0)]], lengths: vec![r(len)] }
    }

    #[test]
    fn continuity_examples() {
        assert!(segment(2).check_continuity().ok);
        assert_eq!(segment(3).check_continuity().first_violation, Some(Violation::Edge(0)));
        let single = TropicalMap {
            ty: CombinatorialType::in_vector_space(TropicalCurve::from_edges(1, &[]), 2, vec![], vec![]),
            positions: vec![vec![r(1), r(1)]],
            lengths: vec![],
        };
        assert!(single.check_continuity().ok);
    }

    #[test]
    fn verticality() {
        let m = segment(2);
        assert_eq!(m.check_vertical(&LatticeVector::from_i64(&[0, 1])), Some(r(0)));
        assert_eq!(m.check_vertical(&LatticeVector::from_i64(&[1, 1])), None);
    }

    fn tripod(dirs: &[[i64; 2]]) -> CombinatorialType {
        let mut curve = TropicalCurve::from_edges(1, &[]);
        curve.legs = (0..dirs.len()).map(|i| Leg { vertex: 0, label: format!("e{i}") }).collect();
        CombinatorialType::in_vector_space(curve, 2, vec![], dirs.iter().map(|d| LatticeVector::from_i64(d)).collect())
    }

    #[test]
    fn balancing_examples() {
        assert!(tripod(&[[-1, 0], [0, -1], [1, 1]]).check_balancing(None).ok);
        assert!(!tripod(&[[-2, 0], [0, -1], [1, 1]]).check_balancing(None).ok);
    }

    #[test]
    fn boundary_balancing_modulo_span() {
        let fan = projective_space_fan(2);
        let ray = fan.index_of(&Cone::from_i64(&[&[1, 0]], 2).unwrap()).unwrap();
        let mut t = tripod(&[[1, 0], [0, 1], [0, -1]]);
        t.target = Some(fan);
        t.vertex_cones = vec![ray];
        assert!(t.check_balancing(None).ok);
        assert!(!tripod(&[[1, 0], [0, 1], [0, -1]]).check_balancing(None).ok);
    }

    #[test]
    fn contact_directions() {
        let fan = crate::lattice_geom::product_p1_fan(2);
        // Canonical ray order: (-1,0), (0,-1), (0,1), (1,0).
        let (w, d) = leg_direction_from_contacts(&[0, 0, 0, 0], &fan).unwrap();
        assert!(w.is_zero() && d.is_zero());
        let (w, d) = leg_direction_from_contacts(&[0, 0, 3, 0], &fan).unwrap();
        assert_eq!((w, d), (3.into(), LatticeVector::from_i64(&[0, 1])));
        let (w, d) = leg_direction_from_contacts(&[0, 0, 1, 1], &fan).unwrap();
        assert_eq!((w, d), (1.into(), LatticeVector::from_i64(&[1, 1])));
    }

    #[test]
    fn map_json_round_trip() {
        let m = segment(2);
        let s = serde_json::to_string(&m.to_json()).unwrap();
        let back = TropicalMap::from_json(&serde_json::from_str(&s).unwrap()).unwrap();
        assert_eq!(back, m);
    }
}
