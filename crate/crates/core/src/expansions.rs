//! Polyhedral decompositions of dilated simplices, their 1-skeleta and dual expansions.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::canon;
use crate::error::{Error, Result};
use crate::lattice_geom::{self, Cone, ConeComplex};
use crate::num::{self, primitive_from_rationals, rat_int, serde_rational, serde_rational_mat, LatticeVector, Rational};

/// A decomposition of `dilation * Δ` where `Δ` is the standard simplex in `R^r`
/// (coordinates non-negative, summing to one). `r` is the number of components of
/// the special fiber.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyhedralDecomposition {
    pub r: usize,
    #[serde(with = "serde_rational")]
    pub dilation: Rational,
    #[serde(with = "serde_rational_mat")]
    pub vertices: Vec<Vec<Rational>>,
    /// Maximal cells as vertex index sets.
    pub cells: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OneComplexEdge {
    pub ends: (usize, usize),
    /// Primitive direction from the first end to the second.
    pub direction: LatticeVector,
    #[serde(with = "serde_rational")]
    pub length: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OneComplex {
    #[serde(with = "serde_rational_mat")]
    pub vertices: Vec<Vec<Rational>>,
    pub edges: Vec<OneComplexEdge>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    pub vertex: usize,
    pub star_fan: ConeComplex,
    pub p1_bundle: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DoubleLocus {
    pub edge: usize,
    pub ends: (usize, usize),
    pub direction: LatticeVector,
    pub length: Rational,
    pub star_fan: ConeComplex,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExpansionCombinatorics {
    pub r: usize,
    pub components: Vec<Component>,
    pub double_loci: Vec<DoubleLocus>,
    pub tube_flags: Vec<bool>,
    pub one_complex: OneComplex,
}

fn ray_of(v: &[Rational]) -> LatticeVector {
    primitive_from_rationals(v)
}

impl PolyhedralDecomposition {
    /// Validates coordinates, then that the cones over the cells form a fan with
    /// support the positive orthant (cells cover the simplex and meet face to face).
    pub fn new(r: usize, dilation: Rational, vertices: Vec<Vec<Rational>>, cells: Vec<Vec<usize>>) -> Result<Self> {
        let p = PolyhedralDecomposition { r, dilation, vertices, cells };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if self.r == 0 {
            return Err(Error::invalid("r must be positive"));
        }
        if !self.dilation.is_positive() {
            return Err(Error::invalid("dilation must be positive"));
        }
        for (i, v) in self.vertices.iter().enumerate() {
            if v.len() != self.r {
                return Err(Error::RankMismatch { expected: self.r, found: v.len() });
            }
            if v.iter().any(|c| c.is_negative()) {
                return Err(Error::invalid(format!("vertex {i} has a negative coordinate")));
            }
            let s = v.iter().fold(Rational::zero(), |a, b| a + b);
            if s != self.dilation {
                return Err(Error::invalid(format!("vertex {i} coordinates sum to {s}, not the dilation")));
            }
        }
        let fan = self.cone_over_fan()?;
        for (ci, cell) in self.cells.iter().enumerate() {
            let c = self.cell_cone(cell)?;
            if c.dim() != self.r || c.rays().len() != cell.len() {
                return Err(Error::invalid(format!("cell {ci} is degenerate or lists non-vertices")));
            }
        }
        fan.check_fan()?;
        let orthant = ConeComplex::from_cones(self.r, [Cone::from_generators((0..self.r).map(|i| LatticeVector::unit(self.r, i)).collect(), self.r)?]);
        if !lattice_geom::same_support(&fan, &orthant) {
            return Err(Error::invalid("cells do not cover the simplex"));
        }
        let fan_rays: BTreeSet<LatticeVector> = fan.rays().into_iter().collect();
        for (i, v) in self.vertices.iter().enumerate() {
            if !fan_rays.contains(&ray_of(v)) {
                return Err(Error::invalid(format!("vertex {i} is not a vertex of any cell")));
            }
        }
        Ok(())
    }

    fn cell_cone(&self, cell: &[usize]) -> Result<Cone> {
        let gens = cell
            .iter()
            .map(|&i| self.vertices.get(i).map(|v| ray_of(v)).ok_or_else(|| Error::invalid(format!("no vertex {i}"))))
            .collect::<Result<Vec<_>>>()?;
        Cone::from_generators(gens, self.r)
    }

    /// Fan of cones over the cells.
    pub fn cone_over_fan(&self) -> Result<ConeComplex> {
        let cones = self.cells.iter().map(|c| self.cell_cone(c)).collect::<Result<Vec<_>>>()?;
        Ok(ConeComplex::from_cones(self.r, cones))
    }

    /// The undivided simplex at the given dilation.
    pub fn trivial(r: usize, dilation: Rational) -> Self {
        let vertices = (0..r).map(|i| (0..r).map(|j| if i == j { dilation.clone() } else { Rational::zero() }).collect()).collect();
        PolyhedralDecomposition { r, dilation, vertices, cells: vec![(0..r).collect()] }
    }

    fn vertex_of_ray(&self) -> BTreeMap<LatticeVector, usize> {
        self.vertices.iter().enumerate().map(|(i, v)| (ray_of(v), i)).collect()
    }

    pub fn one_skeleton(&self) -> OneComplex {
        let fan = self.cone_over_fan().expect("validated");
        let idx = self.vertex_of_ray();
        let mut edges = Vec::new();
        for c in fan.cones().iter().filter(|c| c.dim() == 2) {
            let (a, b) = (idx[&c.rays()[0]], idx[&c.rays()[1]]);
            let (a, b) = (a.min(b), a.max(b));
            let diff: Vec<Rational> = self.vertices[b].iter().zip(&self.vertices[a]).map(|(x, y)| x - y).collect();
            let direction = primitive_from_rationals(&diff);
            let k = direction.0.iter().position(|c| !c.is_zero()).expect("distinct vertices");
            let length = &diff[k] / rat_int(&direction[k]);
            edges.push(OneComplexEdge { ends: (a, b), direction, length });
        }
        edges.sort_by(|x, y| x.ends.cmp(&y.ends));
        OneComplex { vertices: self.vertices.clone(), edges }
    }

    pub fn dilate(&self, m: u64) -> PolyhedralDecomposition {
        let f = Rational::from_integer(m.into());
        PolyhedralDecomposition {
            r: self.r,
            dilation: &self.dilation * &f,
            vertices: self.vertices.iter().map(|v| v.iter().map(|c| c * &f).collect()).collect(),
            cells: self.cells.clone(),
        }
    }

    /// Least common multiple of all coordinate denominators.
    pub fn denominator_lcm(&self) -> BigInt {
        num::lcm_all(self.vertices.iter().flatten().map(|c| c.denom()))
    }

    /// Canonical encoding of the face lattice with vertex supports and edge directions.
    pub fn combinatorial_type(&self) -> canon::Encoding<String, ()> {
        let fan = self.cone_over_fan().expect("validated");
        let faces: Vec<&Cone> = fan.cones().iter().filter(|c| c.dim() > 0).collect();
        let labels: Vec<String> = faces
            .iter()
            .map(|c| match c.dim() {
                1 => {
                    let support: Vec<usize> = (0..self.r).filter(|&i| !c.rays()[0][i].is_zero()).collect();
                    format!("v{support:?}")
                }
                2 => {
                    let d = &c.rays()[1] - &c.rays()[0];
                    let d = d.primitive().1;
                    let d = if d.0.iter().find(|x| !x.is_zero()).map_or(false, |x| x.is_negative()) { -&d } else { d };
                    format!("e{d}")
                }
                k => format!("c{k}"),
            })
            .collect();
        let mut inc = Vec::new();
        for (i, a) in faces.iter().enumerate() {
            for (j, b) in faces.iter().enumerate() {
                if b.dim() == a.dim() + 1 && a.is_face_of(b) {
                    inc.push((i, j, ()));
                }
            }
        }
        canon::canonical_form(&labels, &inc)
    }

    /// Dual expansion; `tubes` designates tube components and is validated.
    pub fn to_expansion(&self, tubes: Option<Vec<bool>>) -> Result<ExpansionCombinatorics> {
        let fan = self.cone_over_fan()?;
        let oc = self.one_skeleton();
        let mut components = Vec::new();
        for (i, v) in self.vertices.iter().enumerate() {
            let ray = Cone::from_generators(vec![ray_of(v)], self.r)?;
            let star = lattice_geom::star_fan(&fan, &ray)?;
            let p1_bundle = is_p1_bundle_fan(&star);
            components.push(Component { vertex: i, star_fan: star, p1_bundle });
        }
        let mut double_loci = Vec::new();
        for (ei, e) in oc.edges.iter().enumerate() {
            let c = Cone::from_generators(vec![ray_of(&self.vertices[e.ends.0]), ray_of(&self.vertices[e.ends.1])], self.r)?;
            double_loci.push(DoubleLocus {
                edge: ei,
                ends: e.ends,
                direction: e.direction.clone(),
                length: e.length.clone(),
                star_fan: lattice_geom::star_fan(&fan, &c)?,
            });
        }
        let tube_flags = tubes.unwrap_or_else(|| vec![false; components.len()]);
        if tube_flags.len() != components.len() {
            return Err(Error::invalid("one tube flag per component required"));
        }
        for (i, (&t, c)) in tube_flags.iter().zip(&components).enumerate() {
            if t && !c.p1_bundle {
                return Err(Error::invalid(format!("component {i} is flagged as a tube but is not a P1-bundle component")));
            }
        }
        Ok(ExpansionCombinatorics { r: self.r, components, double_loci, tube_flags, one_complex: oc })
    }
}

/// A fan is treated as a P1-bundle fan when it has opposite rays `u, -u`, every maximal
/// cone contains one of them, and the stars of `u` and `-u` agree.
pub fn is_p1_bundle_fan(fan: &ConeComplex) -> bool {
    let rays = fan.rays();
    let maxc = fan.maximal_cones();
    rays.iter().any(|u| {
        let nu = -u;
        if !rays.contains(&nu) {
            return false;
        }
        let (cu, cn) = (Cone::from_generators(vec![u.clone()], fan.rank()).expect("ray"), Cone::from_generators(vec![nu], fan.rank()).expect("ray"));
        maxc.iter().all(|m| cu.is_face_of(m) || cn.is_face_of(m)) && lattice_geom::star_fan(fan, &cu).ok() == lattice_geom::star_fan(fan, &cn).ok()
    })
}

/// Interior vertex positions `1 - 2^-i`, nested so that longer chains refine shorter ones.
fn chain_parameter(i: usize) -> Rational {
    Rational::one() - Rational::new(BigInt::one(), BigInt::from(2u32).pow(i as u32))
}

/// Chain decomposition of the segment `Δ` in `R^2` with `k` interior vertices.
pub fn junli_decomposition(k: usize) -> PolyhedralDecomposition {
    let mut ts: Vec<Rational> = vec![Rational::zero()];
    ts.extend((1..=k).map(chain_parameter));
    ts.push(Rational::one());
    let vertices: Vec<Vec<Rational>> = ts.iter().map(|t| vec![Rational::one() - t, t.clone()]).collect();
    let cells = (0..=k).map(|i| vec![i, i + 1]).collect();
    PolyhedralDecomposition { r: 2, dilation: Rational::one(), vertices, cells }
}

/// Expansion `Y1 ∪ P1 ∪ ... ∪ Pk ∪ Y2` with the inserted bundles flagged as tubes.
pub fn junli_expansion(k: usize) -> ExpansionCombinatorics {
    let p = junli_decomposition(k);
    let tubes: Vec<bool> = (0..k + 2).map(|i| i > 0 && i <= k).collect();
    p.to_expansion(Some(tubes)).expect("chain expansion is valid")
}

impl ExpansionCombinatorics {
    fn chain_order(&self) -> Option<Vec<usize>> {
        if self.r != 2 {
            return None;
        }
        let n = self.components.len();
        let mut deg = vec![0usize; n];
        for d in &self.double_loci {
            deg[d.ends.0] += 1;
            deg[d.ends.1] += 1;
        }
        if self.double_loci.len() + 1 != n || deg.iter().filter(|&&d| d == 1).count() != 2.min(n) {
            return None;
        }
        Some(deg)
    }

    /// Rank of the automorphism torus: one fiberwise scaling per inserted bundle.
    /// Only defined for chains over a segment.
    pub fn automorphism_torus_rank(&self) -> Result<usize> {
        self.chain_order()
            .map(|_| self.components.len() - 2)
            .ok_or_else(|| Error::UnsupportedGeometry("automorphism torus rank is only available for chain expansions".into()))
    }
}

/// Whether `p1` refines `p2` (after rescaling to a common dilation).
pub fn specialization_leq(p1: &PolyhedralDecomposition, p2: &PolyhedralDecomposition) -> Result<bool> {
    if p1.r != p2.r {
        return Err(Error::RankMismatch { expected: p1.r, found: p2.r });
    }
    lattice_geom::is_refinement(&p1.cone_over_fan()?, &p2.cone_over_fan()?)
}

/// A polyhedral decomposition of the plane with bounded and unbounded cells.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlaneDecomposition {
    #[serde(with = "serde_rational_mat")]
    pub vertices: Vec<Vec<Rational>>,
    /// Recession directions of unbounded cells.
    pub rays: Vec<LatticeVector>,
    pub cells: Vec<PlaneCell>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlaneCell {
    pub vertices: Vec<usize>,
    #[serde(default)]
    pub rays: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointDecompositionReport {
    pub points_are_vertices: bool,
    pub rays_parallel: bool,
    pub cone_smooth: bool,
    pub missing_points: Vec<LatticeVector>,
    pub bad_rays: Vec<usize>,
    pub bad_cells: Vec<usize>,
}

/// Ray directions of the plane model fan.
pub fn plane_fan_rays() -> Vec<LatticeVector> {
    vec![LatticeVector::from_i64(&[-1, 0]), LatticeVector::from_i64(&[0, -1]), LatticeVector::from_i64(&[1, 1])]
}

/// Checks the three conditions making a plane decomposition a degeneration adapted to
/// the given points: the points are vertices, unbounded rays follow the fan rays, and
/// the cone over every cell is unimodular.
pub fn validate_point_decomposition(p: &PlaneDecomposition, pts: &[LatticeVector]) -> PointDecompositionReport {
    let missing_points: Vec<LatticeVector> =
        pts.iter().filter(|q| !p.vertices.iter().any(|v| v.len() == 2 && v[0] == rat_int(&q[0]) && v[1] == rat_int(&q[1]))).cloned().collect();
    let fan_rays = plane_fan_rays();
    let bad_rays: Vec<usize> = (0..p.rays.len()).filter(|&i| !fan_rays.contains(&p.rays[i].primitive().1)).collect();
    let mut bad_cells = Vec::new();
    for (ci, cell) in p.cells.iter().enumerate() {
        let mut gens: Vec<LatticeVector> = Vec::new();
        let mut ok = true;
        for &vi in &cell.vertices {
            match p.vertices.get(vi) {
                Some(v) if v.len() == 2 => gens.push(primitive_from_rationals(&[v[0].clone(), v[1].clone(), Rational::one()])),
                _ => ok = false,
            }
        }
        for &ri in &cell.rays {
            match p.rays.get(ri) {
                Some(r) if r.rank() == 2 => gens.push(LatticeVector(vec![r[0].clone(), r[1].clone(), BigInt::zero()])),
                _ => ok = false,
            }
        }
        let smooth = ok
            && match Cone::from_generators(gens.clone(), 3) {
                Ok(c) => c.rays().len() == gens.len() && c.is_unimodular(),
                Err(_) => false,
            };
        if !smooth {
            bad_cells.push(ci);
        }
    }
    PointDecompositionReport {
        points_are_vertices: missing_points.is_empty(),
        rays_parallel: bad_rays.is_empty(),
        cone_smooth: bad_cells.is_empty(),
        missing_points,
        bad_rays,
        bad_cells,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::rat;

    #[test]
    fn trivial_segment() {
        let p = PolyhedralDecomposition::trivial(2, rat(1, 1));
        p.validate().unwrap();
        let oc = p.one_skeleton();
        assert_eq!(oc.vertices.len(), 2);
        assert_eq!(oc.edges.len(), 1);
        assert_eq!(oc.edges[0].length, rat(1, 1));
    }

    #[test]
    fn midpoint_subdivision() {
        let p = PolyhedralDecomposition::new(
            2,
            rat(2, 1),
            vec![vec![rat(2, 1), rat(0, 1)], vec![rat(1, 1), rat(1, 1)], vec![rat(0, 1), rat(2, 1)]],
            vec![vec![0, 1], vec![1, 2]],
        )
        .unwrap();
        let oc = p.one_skeleton();
        assert_eq!(oc.edges.len(), 2);
        assert!(oc.edges.iter().all(|e| e.length == rat(1, 1)));
    }

    #[test]
    fn overlapping_cells_rejected() {
        let r = PolyhedralDecomposition::new(
            2,
            rat(2, 1),
            vec![vec![rat(2, 1), rat(0, 1)], vec![rat(1, 1), rat(1, 1)], vec![rat(0, 1), rat(2, 1)]],
            vec![vec![0, 2], vec![1, 2]],
        );
        assert!(r.is_err());
    }

    #[test]
    fn junli_counts() {
        for k in 0..4 {
            let e = junli_expansion(k);
            assert_eq!(e.components.len(), k + 2);
            assert_eq!(e.double_loci.len(), k + 1);
            assert_eq!(e.automorphism_torus_rank().unwrap(), k);
            for (i, c) in e.components.iter().enumerate() {
                assert_eq!(c.p1_bundle, i > 0 && i <= k);
            }
        }
    }

    #[test]
    fn longer_chains_specialize() {
        let (a, b) = (junli_decomposition(2), junli_decomposition(1));
        assert!(specialization_leq(&a, &b).unwrap());
        assert!(!specialization_leq(&b, &a).unwrap());
    }

    #[test]
    fn bad_tube_flag() {
        let p = junli_decomposition(1);
        assert!(p.to_expansion(Some(vec![true, false, false])).is_err());
    }
}
