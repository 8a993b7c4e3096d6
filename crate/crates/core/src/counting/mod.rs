//! Counting plane tropical curves of given degree and genus through generic points.

mod search;
mod types;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::num::{int, rat, serde_rational_mat, LatticeVector, Rational};
use crate::tropical_curves::{Leg, TropicalCurve, Vertex};
use crate::tropical_maps::{moduli_cone, PointCondition};
use crate::tropical_maps::{CombinatorialType, MapJson, TropicalMap};

pub use types::{count_by_types, enumerate_types, plane_type_key, stabilize, MAX_ENUM_DEGREE};

use search::{assemble_curve, Search, ENDS, END_LABELS};

/// Degree `d` in the plane: `d` ends in each of the directions (-1,0), (0,-1), (1,1).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PlaneDegreeData {
    pub d: u32,
}

impl PlaneDegreeData {
    pub fn new(d: u32) -> Result<Self> {
        if d == 0 {
            return Err(Error::invalid("degree must be positive"));
        }
        Ok(PlaneDegreeData { d })
    }

    pub fn directions(&self) -> Vec<LatticeVector> {
        ENDS.iter().flat_map(|&(x, y)| std::iter::repeat_n(LatticeVector::from_i64(&[x, y]), self.d as usize)).collect()
    }

    pub fn num_points(&self, g: u32) -> usize {
        3 * self.d as usize - 1 + g as usize
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointConfiguration {
    #[serde(with = "serde_rational_mat")]
    pub points: Vec<Vec<Rational>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

/// Points near a coarse integer grid, each coordinate nudged by a fraction with a large
/// random denominator.
pub fn random_generic_points(n: usize, seed: u64) -> PointConfiguration {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let spread = 8 * n.max(1) as i64;
    let mut points: Vec<Vec<Rational>> = Vec::with_capacity(n);
    while points.len() < n {
        let p: Vec<Rational> = (0..2)
            .map(|_| {
                let den: i64 = rng.gen_range(1_000_003..9_000_000);
                let num: i64 = rng.gen_range(1..den);
                Rational::from(int(rng.gen_range(-spread..=spread))) + rat(num, den)
            })
            .collect();
        if !points.contains(&p) {
            points.push(p);
        }
    }
    PointConfiguration { points, seed: Some(seed) }
}

/// Number of rational plane curves of degree `d` through `3d - 1` general points.
pub fn kontsevich_oracle(d: u32) -> BigInt {
    let d = d as usize;
    let mut n = vec![BigInt::zero(); d.max(1) + 1];
    n[1] = BigInt::one();
    let binom = |a: usize, b: usize| -> BigInt {
        if b > a {
            return BigInt::zero();
        }
        (0..b).fold(BigInt::one(), |acc, i| acc * BigInt::from(a - i) / BigInt::from(i + 1))
    };
    for k in 2..=d {
        let mut sum = BigInt::zero();
        for d1 in 1..k {
            let d2 = k - d1;
            let a = BigInt::from(d2) * binom(3 * k - 4, 3 * d1 - 2);
            let b = BigInt::from(d1) * binom(3 * k - 4, 3 * d1 - 1);
            sum += &n[d1] * &n[d2] * BigInt::from(d1 * d1 * d2) * (a - b);
        }
        n[k] = sum;
    }
    n[d].clone()
}

/// `|det|` of two of the three nonzero slopes at a trivalent vertex.
pub fn vertex_multiplicity(t: &CombinatorialType, v: usize) -> Result<BigInt> {
    if t.rank != 2 {
        return Err(Error::RankMismatch { expected: 2, found: t.rank });
    }
    let slopes: Vec<LatticeVector> = t.incident_slopes(v).into_iter().filter(|s| !s.is_zero()).collect();
    if slopes.len() != 3 {
        return Err(Error::NotTrivalent(v));
    }
    let (a, b) = (&slopes[0], &slopes[1]);
    let det: BigInt = &a[0] * &b[1] - &a[1] * &b[0];
    if det.is_zero() {
        return Err(Error::NotTrivalent(v));
    }
    Ok(num_traits::Signed::abs(&det))
}

/// Product of vertex multiplicities over the trivalent vertices; vertices with two nonzero
/// slopes (marked points on an edge) contribute 1.
pub fn type_multiplicity(t: &CombinatorialType) -> Result<BigInt> {
    let mut m = BigInt::one();
    for v in 0..t.curve.num_vertices() {
        let nonzero = t.incident_slopes(v).iter().filter(|s| !s.is_zero()).count();
        match nonzero {
            3 => m *= vertex_multiplicity(t, v)?,
            2 => {}
            _ => return Err(Error::NotTrivalent(v)),
        }
    }
    Ok(m)
}

/// One counted curve.
#[derive(Debug, Clone)]
pub struct Solution {
    pub type_id: String,
    pub multiplicity: BigInt,
    pub map: TropicalMap,
}

#[derive(Debug, Clone)]
pub struct CountReport {
    pub d: u32,
    pub g: u32,
    pub seed: Option<u64>,
    pub count: BigInt,
    pub solutions: Vec<Solution>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SolutionJson {
    pub type_id: String,
    #[serde(with = "crate::num::serde_bigint")]
    pub multiplicity: BigInt,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub solution: Option<MapJson>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CountReportJson {
    pub d: u32,
    pub g: u32,
    pub seed: Option<u64>,
    #[serde(with = "crate::num::serde_bigint")]
    pub count: BigInt,
    pub per_type: Vec<SolutionJson>,
}

impl CountReport {
    pub fn to_json(&self, with_solutions: bool) -> CountReportJson {
        CountReportJson {
            d: self.d,
            g: self.g,
            seed: self.seed,
            count: self.count.clone(),
            per_type: self
                .solutions
                .iter()
                .map(|s| SolutionJson { type_id: s.type_id.clone(), multiplicity: s.multiplicity.clone(), solution: with_solutions.then(|| s.map.to_json()) })
                .collect(),
        }
    }
}

/// Largest degree the search accepts.
pub const MAX_COUNT_DEGREE: u32 = 5;

/// Weighted number of genus-`g` degree-`d` plane tropical curves through the points.
///
/// Every curve found is re-solved from its combinatorial type with the point conditions and
/// must be the unique point of its moduli cell; a degenerate solve means the points are not
/// generic.
pub fn count_through_points(d: u32, g: u32, pts: &PointConfiguration) -> Result<CountReport> {
    let deg = PlaneDegreeData::new(d)?;
    if g > 1 {
        return Err(Error::BoundsExceeded(format!("genus {g} is not supported")));
    }
    if d > MAX_COUNT_DEGREE {
        return Err(Error::BoundsExceeded(format!("degree {d} exceeds {MAX_COUNT_DEGREE}")));
    }
    let n = deg.num_points(g);
    if pts.points.len() != n {
        return Err(Error::invalid(format!("expected {n} points, got {}", pts.points.len())));
    }
    if let Some(p) = pts.points.iter().find(|p| p.len() != 2) {
        return Err(Error::RankMismatch { expected: 2, found: p.len() });
    }
    let coords: Vec<search::Pt> = pts.points.iter().map(|p| [p[0].clone(), p[1].clone()]).collect();
    for i in 0..n {
        if coords[i + 1..].contains(&coords[i]) {
            return Err(Error::NonGenericConfiguration("repeated point".into()));
        }
    }
    let mut s = Search::new(d, &coords);
    let found = if g == 0 { s.genus_zero()? } else { s.genus_one()? };
    let mut solutions = found
        .par_iter()
        .map(|f| {
            let a = assemble_curve(&coords, f)?;
            let map = to_map(&a);
            verify(&map, &pts.points, g)?;
            let multiplicity = type_multiplicity(&map.ty)?;
            if multiplicity != BigInt::from(f.mult) {
                return Err(Error::NonGenericConfiguration("multiplicity mismatch".into()));
            }
            Ok(Solution { type_id: type_id(&map.ty), multiplicity, map })
        })
        .collect::<Result<Vec<_>>>()?;
    solutions.sort_by(|a, b| (&a.type_id, position_key(&a.map)).cmp(&(&b.type_id, position_key(&b.map))));
    let count = solutions.iter().map(|s| s.multiplicity.clone()).sum();
    Ok(CountReport { d, g, seed: pts.seed, count, solutions })
}

/// Draws points from `seed` and retries with derived seeds while the configuration is
/// found degenerate.
pub fn count_with_reseed(d: u32, g: u32, seed: u64, max_reseeds: usize) -> Result<CountReport> {
    let n = PlaneDegreeData::new(d)?.num_points(g);
    let mut last = None;
    for k in 0..=max_reseeds as u64 {
        let pts = random_generic_points(n, seed.wrapping_add(k.wrapping_mul(0x9E37_79B9_7F4A_7C15)));
        match count_through_points(d, g, &pts) {
            Err(Error::NonGenericConfiguration(m)) => last = Some(m),
            other => return other,
        }
    }
    Err(Error::NonGenericConfiguration(format!("still degenerate after {max_reseeds} reseeds: {}", last.unwrap_or_default())))
}

fn position_key(m: &TropicalMap) -> Vec<Vec<Rational>> {
    m.positions.clone()
}

fn to_map(a: &search::Assembled) -> TropicalMap {
    let np = a.point_vertex.len();
    let vertices: Vec<Vertex> =
        (0..a.positions.len()).map(|i| Vertex { id: if i < np { format!("p{i}") } else { format!("v{}", i - np) }, genus: 0, class: vec![] }).collect();
    let mut legs: Vec<Leg> = (0..np).map(|i| Leg { vertex: a.point_vertex[i], label: format!("p{i}") }).collect();
    let mut leg_slopes = vec![LatticeVector::zero(2); np];
    for &(v, e) in &a.ends {
        legs.push(Leg { vertex: v, label: END_LABELS[e].to_string() });
        leg_slopes.push(LatticeVector::from_i64(&[ENDS[e].0, ENDS[e].1]));
    }
    let slopes = a.slopes.iter().map(|&(x, y)| LatticeVector::from_i64(&[x, y])).collect();
    let curve = TropicalCurve::new(vertices, a.edges.clone(), legs);
    let ty = CombinatorialType::in_vector_space(curve, 2, slopes, leg_slopes);
    TropicalMap { ty, positions: a.positions.iter().map(|p| p.to_vec()).collect(), lengths: a.lengths.clone() }
}

fn verify(map: &TropicalMap, points: &[Vec<Rational>], g: u32) -> Result<()> {
    let bad = |m: &str| Error::NonGenericConfiguration(m.to_string());
    if map.ty.curve.genus()? != g as u64 || !map.ty.curve.is_connected() {
        return Err(bad("wrong topology"));
    }
    if !map.check_continuity().ok || !map.ty.check_balancing(None).ok {
        return Err(bad("continuity or balancing fails"));
    }
    let conds: Vec<PointCondition> = points.iter().enumerate().map(|(i, p)| PointCondition::Affine { leg: i, point: p.clone() }).collect();
    let cell = moduli_cone(&map.ty, None, &conds).map_err(|_| bad("point conditions infeasible"))?;
    if cell.dim != 0 {
        return Err(bad("positive-dimensional solution set"));
    }
    if cell.positions() != map.positions || cell.lengths() != map.lengths {
        return Err(bad("solution mismatch"));
    }
    Ok(())
}

/// Stable identifier of a plane type (FNV-1a of its canonical encoding).
pub fn type_id(t: &CombinatorialType) -> String {
    let key = plane_type_key(t);
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in key.bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    format!("{h:016x}")
}
