//! Rigid tropical types of a degeneration and the combinatorial data of the degeneration
//! formula: vertex data, edge multiplicities, automorphisms and coefficients.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::counting::{count_through_points, PointConfiguration};
use crate::error::{Error, Result};
use crate::expansions::{validate_point_decomposition, OneComplex, OneComplexEdge, PlaneDecomposition};
use crate::lattice_geom::{Cone, ConeComplex};
use crate::num::{lcm_all, primitive_from_rationals, rat_int, serde_rational_mat, LatticeVector, Rational};
use crate::tropical_curves::{ExtraLabels, Leg, TropicalCurve, Vertex};
use crate::tropical_maps::{is_rigid, leg_direction_from_contacts, CombinatorialType, ContactMatrix, DiscreteData, PointCondition};

/// Degeneration of a target into components indexed by the rays of `R^r_{>=0}`, with height
/// the coordinate sum. Vertices sit on rays (one component each) and carry a class `c`
/// whose contact with the divisors of component `i` is `c * pairing[i]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrthantSetup {
    pub r: usize,
    #[serde(default)]
    pub genus: u32,
    #[serde(default)]
    pub legs: usize,
    /// Total class per component.
    pub beta: Vec<u64>,
    /// `pairing[i][j]`: contact of a unit class on component `i` with its divisor towards `j`.
    pub pairing: Vec<Vec<i64>>,
    pub max_vertices: usize,
    pub max_weight: u64,
    #[serde(default = "default_max_candidates")]
    pub max_candidates: u64,
}

fn default_max_candidates() -> u64 {
    2_000_000
}

/// Input of [`enumerate_rigid_types`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DegenerationSetup {
    /// Degeneration of the plane adapted to point conditions: the cone over `R^2` with
    /// height the last coordinate, each point a ray condition.
    Plane {
        degree: u32,
        #[serde(default)]
        genus: u32,
        #[serde(with = "serde_rational_mat")]
        points: Vec<Vec<Rational>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        decomposition: Option<PlaneDecomposition>,
    },
    Orthant(OrthantSetup),
}

/// Which incident half-edge or leg a contact row describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Slot {
    /// Edge leaving the vertex (`outgoing`) or arriving at it.
    Edge {
        edge: usize,
        outgoing: bool,
    },
    Leg {
        leg: usize,
    },
}

/// Local data of a vertex: the star fan of its image vertex and a contact matrix with one
/// row per slot over the rays of that fan.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexData {
    pub vertex: usize,
    pub image: usize,
    pub star_fan: ConeComplex,
    pub slots: Vec<Slot>,
    pub data: DiscreteData,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RigidDatum {
    pub ty: CombinatorialType,
    pub height: LatticeVector,
    pub conditions: Vec<PointCondition>,
    /// Image at height one.
    pub one_complex: OneComplex,
    pub image_vertex: Vec<usize>,
    pub vertex_data: Vec<VertexData>,
    /// `None` for contracted edges.
    pub edge_multiplicities: Vec<Option<BigInt>>,
    pub aut_order: BigInt,
    pub coefficient: Rational,
    /// Point-count multiplicity, for plane setups.
    pub multiplicity: Option<BigInt>,
}

/// Lattice weight of the slope of `e`.
pub fn edge_multiplicity(t: &CombinatorialType, e: usize) -> Result<BigInt> {
    let s = t.slopes.get(e).ok_or(Error::EdgeNotFound(e))?;
    if s.is_zero() {
        return Err(Error::ContractedEdge(e));
    }
    Ok(s.content())
}

/// Product of edge multiplicities over non-contracted edges divided by the automorphism order.
pub fn degeneration_coefficient(g: &RigidDatum) -> Rational {
    let prod = g.edge_multiplicities.iter().flatten().fold(BigInt::one(), |a, m| a * m);
    Rational::new(prod, g.aut_order.clone())
}

pub fn vertex_data(g: &RigidDatum, v: usize) -> Result<&VertexData> {
    g.vertex_data.get(v).ok_or_else(|| Error::invalid(format!("no vertex {v}")))
}

/// The two vertex slots of an edge, with the common weight and direction (from the first end).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgePair {
    pub edge: usize,
    pub ends: [(usize, usize); 2],
    #[serde(with = "crate::num::serde_bigint")]
    pub weight: BigInt,
    pub direction: LatticeVector,
}

/// Matches the evaluation data at both ends of every non-contracted edge.
pub fn pair_evaluation_product(g: &RigidDatum) -> Result<Vec<EdgePair>> {
    let mut out = Vec::new();
    for (e, &(a, b)) in g.ty.curve.edges.iter().enumerate() {
        if a == b || g.ty.slopes[e].is_zero() {
            continue;
        }
        let side = |v: usize, outgoing: bool| -> Result<(usize, BigInt, LatticeVector)> {
            let vd = &g.vertex_data[v];
            let i = vd.slots.iter().position(|s| *s == Slot::Edge { edge: e, outgoing }).ok_or(Error::GluingMismatch(e))?;
            let (w, dir) = leg_direction_from_contacts(&vd.data.contacts.rows[i], &vd.star_fan)?;
            Ok((i, w, dir))
        };
        let (ia, wa, da) = side(a, true)?;
        let (ib, wb, db) = side(b, false)?;
        if wa != wb || wa.is_zero() || da != -&db {
            return Err(Error::GluingMismatch(e));
        }
        out.push(EdgePair { edge: e, ends: [(a, ia), (b, ib)], weight: wa, direction: da });
    }
    Ok(out)
}

/// All rigid types of the setup, in canonical order.
pub fn enumerate_rigid_types(s: &DegenerationSetup) -> Result<Vec<RigidDatum>> {
    match s {
        DegenerationSetup::Plane { degree, genus, points, decomposition } => plane_rigid_types(*degree, *genus, points, decomposition.as_ref()),
        DegenerationSetup::Orthant(o) => orthant_rigid_types(o),
    }
}

fn plane_rigid_types(d: u32, g: u32, points: &[Vec<Rational>], decomposition: Option<&PlaneDecomposition>) -> Result<Vec<RigidDatum>> {
    if let Some(p) = decomposition {
        let ints: Vec<LatticeVector> = points
            .iter()
            .map(|q| {
                if q.iter().all(|x| x.is_integer()) {
                    Ok(LatticeVector::new(q.iter().map(|x| x.to_integer()).collect()))
                } else {
                    Err(blowup_refusal("non-integral point conditions cannot be vertices of the model"))
                }
            })
            .collect::<Result<_>>()?;
        let rep = validate_point_decomposition(p, &ints);
        if !rep.points_are_vertices {
            return Err(blowup_refusal(&format!("points {:?} are not vertices of the model", rep.missing_points)));
        }
    }
    let report = count_through_points(d, g, &PointConfiguration { points: points.to_vec(), seed: None })?;
    let height = LatticeVector::from_i64(&[0, 0, 1]);
    let conditions: Vec<PointCondition> = points
        .iter()
        .enumerate()
        .map(|(leg, p)| {
            let l = lcm_all(&p.iter().map(|x| x.denom().clone()).collect::<Vec<_>>());
            let mut c: Vec<BigInt> = p.iter().map(|x| (x * rat_int(&l)).to_integer()).collect();
            c.push(l);
            PointCondition::Ray { leg, direction: LatticeVector::new(c) }
        })
        .collect();
    let mut out = Vec::new();
    for sol in &report.solutions {
        let t = &sol.map.ty;
        let lift = |v: &LatticeVector| {
            let mut c = v.coords().to_vec();
            c.push(BigInt::zero());
            LatticeVector::new(c)
        };
        let ty = CombinatorialType::in_vector_space(t.curve.clone(), 3, t.slopes.iter().map(lift).collect(), t.leg_slopes.iter().map(lift).collect());
        if !is_rigid(&ty, &height, &conditions)? {
            return Err(Error::NonGenericConfiguration("solution type is not rigid in the cone-over model".into()));
        }
        let images: Vec<Vec<Rational>> = sol.map.positions.iter().map(|p| [p.clone(), vec![Rational::one()]].concat()).collect();
        let extra = plane_labels(&ty);
        let mut datum = build_datum(ty, height.clone(), conditions.clone(), &images, &extra)?;
        datum.multiplicity = Some(sol.multiplicity.clone());
        out.push(datum);
    }
    Ok(out)
}

fn blowup_refusal(why: &str) -> Error {
    Error::UnsupportedGeometry(format!("{why}; vertices must map to vertices of the model, so replace the model by a blowup that makes them so"))
}

fn plane_labels(t: &CombinatorialType) -> ExtraLabels {
    let edge = t
        .slopes
        .iter()
        .map(|s| {
            let n = -s;
            format!("{:?}", if s < &n { s } else { &n })
        })
        .collect();
    ExtraLabels { vertex: None, edge: Some(edge) }
}

/// Image complex, vertex data, multiplicities and automorphisms of a rigid type whose
/// vertices sit at `images` (height one slice).
fn build_datum(
    ty: CombinatorialType,
    height: LatticeVector,
    conditions: Vec<PointCondition>,
    images: &[Vec<Rational>],
    extra: &ExtraLabels,
) -> Result<RigidDatum> {
    let c = &ty.curve;
    let points: BTreeSet<&Vec<Rational>> = images.iter().collect();
    let points: Vec<Vec<Rational>> = points.into_iter().cloned().collect();
    let image_vertex: Vec<usize> = images.iter().map(|p| points.binary_search(p).expect("image point")).collect();

    let mut segments: BTreeMap<(usize, usize), OneComplexEdge> = BTreeMap::new();
    let mut star_rays: Vec<BTreeSet<LatticeVector>> = vec![BTreeSet::new(); points.len()];
    for (e, &(a, b)) in c.edges.iter().enumerate() {
        if ty.slopes[e].is_zero() {
            continue;
        }
        let (ia, ib) = (image_vertex[a], image_vertex[b]);
        let (lo, hi) = (ia.min(ib), ia.max(ib));
        let diff: Vec<Rational> = points[hi].iter().zip(&points[lo]).map(|(x, y)| x - y).collect();
        let direction = primitive_from_rationals(&diff);
        let k = direction.0.iter().position(|x| !x.is_zero()).expect("distinct images");
        let length = &diff[k] / rat_int(&direction[k]);
        star_rays[lo].insert(direction.clone());
        star_rays[hi].insert(-&direction);
        segments.entry((lo, hi)).or_insert(OneComplexEdge { ends: (lo, hi), direction, length });
    }
    for (l, leg) in c.legs.iter().enumerate() {
        if !ty.leg_slopes[l].is_zero() {
            star_rays[image_vertex[leg.vertex]].insert(ty.leg_slopes[l].primitive().1);
        }
    }
    let one_complex = OneComplex { vertices: points, edges: segments.into_values().collect() };
    let fans: Vec<ConeComplex> = star_rays
        .iter()
        .map(|rays| {
            let cones = rays.iter().map(|r| Cone::from_generators(vec![r.clone()], ty.rank)).collect::<Result<Vec<_>>>()?;
            Ok(ConeComplex::from_cones(ty.rank, cones))
        })
        .collect::<Result<_>>()?;

    let mut vertex_data = Vec::new();
    for v in 0..c.vertices.len() {
        let mut slots = Vec::new();
        for (e, &(a, b)) in c.edges.iter().enumerate() {
            if a == v {
                slots.push(Slot::Edge { edge: e, outgoing: true });
            }
            if b == v {
                slots.push(Slot::Edge { edge: e, outgoing: false });
            }
        }
        slots.extend(c.legs.iter().enumerate().filter(|(_, l)| l.vertex == v).map(|(leg, _)| Slot::Leg { leg }));
        let fan = fans[image_vertex[v]].clone();
        let rays = fan.rays();
        let rows = slots
            .iter()
            .map(|s| {
                let slope = match *s {
                    Slot::Edge { edge, outgoing: true } => ty.slopes[edge].clone(),
                    Slot::Edge { edge, outgoing: false } => -&ty.slopes[edge],
                    Slot::Leg { leg } => ty.leg_slopes[leg].clone(),
                };
                let mut row = vec![0u64; rays.len()];
                if !slope.is_zero() {
                    let (w, u) = slope.primitive();
                    let i = rays.iter().position(|r| *r == u).expect("slope direction is a ray of the star");
                    row[i] = u64::try_from(w).map_err(|_| Error::invalid("contact order overflow"))?;
                }
                Ok(row)
            })
            .collect::<Result<Vec<_>>>()?;
        let vx = &c.vertices[v];
        vertex_data.push(VertexData {
            vertex: v,
            image: image_vertex[v],
            star_fan: fan,
            data: DiscreteData { genus: vx.genus, legs: slots.len(), class: vx.class.clone(), contacts: ContactMatrix { rows } },
            slots,
        });
    }
    let edge_multiplicities = (0..c.edges.len()).map(|e| edge_multiplicity(&ty, e).ok()).collect();
    let aut_order = c.automorphism_group_order(extra);
    let mut datum = RigidDatum {
        ty,
        height,
        conditions,
        one_complex,
        image_vertex,
        vertex_data,
        edge_multiplicities,
        aut_order,
        coefficient: Rational::zero(),
        multiplicity: None,
    };
    datum.coefficient = degeneration_coefficient(&datum);
    Ok(datum)
}

fn orthant_fan(r: usize) -> ConeComplex {
    let gens: Vec<LatticeVector> = (0..r).map(|i| LatticeVector::unit(r, i)).collect();
    ConeComplex::from_cones(r, [Cone::from_generators(gens, r).expect("orthant")])
}

/// Labeled trees on `k` vertices from Pruefer sequences.
fn labeled_trees(k: usize) -> Vec<Vec<(usize, usize)>> {
    if k == 1 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    let total = k.pow(k as u32 - 2);
    for mut code in 0..total {
        let mut seq = Vec::with_capacity(k - 2);
        for _ in 0..k - 2 {
            seq.push(code % k);
            code /= k;
        }
        let mut degree = vec![1usize; k];
        for &x in &seq {
            degree[x] += 1;
        }
        let mut edges = Vec::new();
        for &x in &seq {
            let leaf = (0..k).find(|&i| degree[i] == 1).expect("leaf");
            edges.push((leaf.min(x), leaf.max(x)));
            degree[leaf] -= 1;
            degree[x] -= 1;
        }
        let rest: Vec<usize> = (0..k).filter(|&i| degree[i] == 1).collect();
        edges.push((rest[0], rest[1]));
        out.push(edges);
    }
    out
}

/// Every tuple in `0..base^len`, as digit vectors.
fn tuples(base: usize, len: usize) -> impl Iterator<Item = Vec<usize>> {
    let total = base.checked_pow(len as u32).unwrap_or(usize::MAX);
    (0..total).map(move |mut x| {
        (0..len)
            .map(|_| {
                let d = x % base;
                x /= base;
                d
            })
            .collect()
    })
}

fn compositions(total: u64, parts: usize) -> Vec<Vec<u64>> {
    if parts == 0 {
        return if total == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in 0..=total {
        for mut rest in compositions(total - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn binomial(n: u64, k: u64) -> f64 {
    (0..k).fold(1.0, |a, i| a * (n - i) as f64 / (i + 1) as f64)
}

/// Upper bound on the number of raw candidates before filtering.
fn candidate_estimate(o: &OrthantSetup) -> f64 {
    let (r, w) = (o.r as f64, o.max_weight as f64);
    let mut total = 0.0;
    for k in 1..=o.max_vertices {
        let kf = k as f64;
        let trees = if k == 1 { 1.0 } else { kf.powi(k as i32 - 2) };
        let classes: f64 = o.beta.iter().map(|&b| binomial(b + k as u64 - 1, k as u64 - 1)).product();
        let genera = binomial(o.genus as u64 + k as u64 - 1, k as u64 - 1);
        total += trees * r.powi(k as i32) * w.powi(k as i32 - 1) * classes * genera * kf.powi(o.legs as i32);
    }
    total
}

fn orthant_rigid_types(o: &OrthantSetup) -> Result<Vec<RigidDatum>> {
    let r = o.r;
    if r == 0 || o.beta.len() != r || o.pairing.len() != r || o.pairing.iter().any(|p| p.len() != r) {
        return Err(Error::invalid("beta and pairing must match r"));
    }
    let est = candidate_estimate(o);
    if est > o.max_candidates as f64 {
        return Err(Error::TruncationTooLarge(format!("{est:.0} candidates exceed the bound {}", o.max_candidates)));
    }
    let fan = orthant_fan(r);
    let ray_cone: Vec<usize> = (0..r).map(|i| fan.index_of(&Cone::from_generators(vec![LatticeVector::unit(r, i)], r).expect("ray")).expect("face")).collect();
    let pair_cone = |i: usize, j: usize| {
        let c = Cone::from_generators(vec![LatticeVector::unit(r, i), LatticeVector::unit(r, j)], r).expect("face");
        fan.index_of(&c).expect("face")
    };

    // Shapes: tree, rays and weights, with classes forced by balancing.
    let mut shapes: Vec<(Vec<(usize, usize)>, Vec<usize>, Vec<u64>, Vec<u64>)> = Vec::new();
    for k in 1..=o.max_vertices {
        for edges in labeled_trees(k) {
            for rays in tuples(r, k) {
                if edges.iter().any(|&(a, b)| rays[a] == rays[b]) {
                    continue;
                }
                for ws in tuples(o.max_weight as usize, k - 1) {
                    let weights: Vec<u64> = ws.iter().map(|&w| w as u64 + 1).collect();
                    if let Some(classes) = forced_classes(o, &edges, &rays, &weights) {
                        shapes.push((edges.clone(), rays.clone(), weights, classes));
                    }
                }
            }
        }
    }

    let mut candidates = Vec::new();
    for (edges, rays, weights, classes) in &shapes {
        let k = rays.len();
        for genera in compositions(o.genus as u64, k) {
            for legs in tuples(k, o.legs) {
                candidates.push((edges, rays, weights, classes, genera.clone(), legs));
            }
        }
    }

    let height = crate::tropical_maps::sum_functional(r);
    let results: Vec<Option<(String, RigidDatum)>> = candidates
        .par_iter()
        .map(|(edges, rays, weights, classes, genera, legs)| -> Result<Option<(String, RigidDatum)>> {
            let k = rays.len();
            let vertices = (0..k)
                .map(|v| {
                    let mut class = vec![0; r];
                    class[rays[v]] = classes[v];
                    Vertex { id: format!("v{v}"), genus: genera[v] as u32, class }
                })
                .collect();
            let curve_legs = legs.iter().enumerate().map(|(i, &v)| Leg { vertex: v, label: format!("p{i}") }).collect();
            let curve = TropicalCurve::new(vertices, edges.to_vec(), curve_legs);
            let slopes = edges
                .iter()
                .zip(weights.iter())
                .map(|(&(a, b), &w)| {
                    let w = BigInt::from(w);
                    &LatticeVector::unit(r, rays[b]).scale(&w) - &LatticeVector::unit(r, rays[a]).scale(&w)
                })
                .collect();
            let ty = CombinatorialType {
                curve,
                rank: r,
                target: Some(fan.clone()),
                vertex_cones: rays.iter().map(|&i| ray_cone[i]).collect(),
                edge_cones: edges.iter().map(|&(a, b)| pair_cone(rays[a], rays[b])).collect(),
                slopes,
                leg_slopes: vec![LatticeVector::zero(r); o.legs],
            };
            let degree: Vec<LatticeVector> =
                (0..k).map(|v| LatticeVector::new(o.pairing[rays[v]].iter().map(|&p| BigInt::from(-p * classes[v] as i64)).collect())).collect();
            if !ty.check_balancing(Some(&degree)).ok || !is_rigid(&ty, &height, &[])? {
                return Ok(None);
            }
            let extra = ExtraLabels { vertex: Some(rays.iter().map(|i| i.to_string()).collect()), edge: Some(weights.iter().map(|w| w.to_string()).collect()) };
            let key = format!("{:?}", ty.curve.canonical_form(&extra));
            let images: Vec<Vec<Rational>> = rays.iter().map(|&i| LatticeVector::unit(r, i).to_rationals()).collect();
            Ok(Some((key, build_datum(ty, height.clone(), vec![], &images, &extra)?)))
        })
        .collect::<Result<_>>()?;
    let mut unique: BTreeMap<String, RigidDatum> = BTreeMap::new();
    for (key, d) in results.into_iter().flatten() {
        unique.entry(key).or_insert(d);
    }
    Ok(unique.into_values().collect())
}

/// Classes making every vertex balanced with the given tree, or `None`. A vertex on ray `i`
/// with class `c` needs contact `c * pairing[i][j]` towards each `j != i`.
fn forced_classes(o: &OrthantSetup, edges: &[(usize, usize)], rays: &[usize], weights: &[u64]) -> Option<Vec<u64>> {
    let r = o.r;
    let k = rays.len();
    let mut contact = vec![vec![0i64; r]; k];
    for (&(a, b), &w) in edges.iter().zip(weights) {
        contact[a][rays[b]] += w as i64;
        contact[b][rays[a]] += w as i64;
    }
    let mut classes = Vec::with_capacity(k);
    for v in 0..k {
        let i = rays[v];
        let p = &o.pairing[i];
        let candidates: Vec<u64> = (0..=o.beta[i]).filter(|&c| (0..r).filter(|&j| j != i).all(|j| p[j] * c as i64 == contact[v][j])).collect();
        classes.push(candidates);
    }
    let mut out = vec![0; k];
    let mut sums = vec![0u64; r];
    fn pick(v: usize, cands: &[Vec<u64>], rays: &[usize], beta: &[u64], sums: &mut [u64], out: &mut [u64]) -> bool {
        if v == cands.len() {
            return sums == beta;
        }
        for &c in &cands[v] {
            if sums[rays[v]] + c > beta[rays[v]] {
                continue;
            }
            sums[rays[v]] += c;
            out[v] = c;
            if pick(v + 1, cands, rays, beta, sums, out) {
                return true;
            }
            sums[rays[v]] -= c;
        }
        false
    }
    pick(0, &classes, rays, &o.beta, &mut sums, &mut out).then_some(out)
}

/// JSON report of one rigid datum.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RigidDatumJson {
    pub map: crate::tropical_maps::MapJson,
    pub one_complex: OneComplex,
    pub image_vertex: Vec<usize>,
    pub vertex_contacts: Vec<ContactMatrix>,
    pub edge_multiplicities: Vec<Option<String>>,
    pub aut_order: String,
    pub coefficient: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub multiplicity: Option<String>,
}

impl RigidDatum {
    pub fn to_json(&self) -> RigidDatumJson {
        RigidDatumJson {
            map: self.ty.to_json(),
            one_complex: self.one_complex.clone(),
            image_vertex: self.image_vertex.clone(),
            vertex_contacts: self.vertex_data.iter().map(|v| v.data.contacts.clone()).collect(),
            edge_multiplicities: self.edge_multiplicities.iter().map(|m| m.as_ref().map(|m| m.to_string())).collect(),
            aut_order: self.aut_order.to_string(),
            coefficient: crate::num::format_rational(&self.coefficient),
            multiplicity: self.multiplicity.as_ref().map(|m| m.to_string()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain_setup(beta: u64, max_vertices: usize) -> OrthantSetup {
        OrthantSetup {
            r: 2,
            genus: 0,
            legs: 0,
            beta: vec![beta, beta],
            pairing: vec![vec![0, 1], vec![1, 0]],
            max_vertices,
            max_weight: beta,
            max_candidates: 1_000_000,
        }
    }

    fn chain_setup_w(beta: u64, max_vertices: usize, max_weight: u64) -> OrthantSetup {
        OrthantSetup { max_weight, ..chain_setup(beta, max_vertices) }
    }

    #[test]
    fn multiplicities() {
        let curve = TropicalCurve::from_edges(2, &[(0, 1), (0, 1), (0, 1)]);
        let t = CombinatorialType::in_vector_space(
            curve,
            2,
            vec![LatticeVector::from_i64(&[2, 2]), LatticeVector::from_i64(&[1, 0]), LatticeVector::zero(2)],
            vec![],
        );
        assert_eq!(edge_multiplicity(&t, 0).unwrap(), BigInt::from(2));
        assert_eq!(edge_multiplicity(&t, 1).unwrap(), BigInt::from(1));
        assert_eq!(edge_multiplicity(&t, 2), Err(Error::ContractedEdge(2)));
    }

    #[test]
    fn trees_by_pruefer() {
        assert_eq!(labeled_trees(4).len(), 16);
        assert_eq!(labeled_trees(2), vec![vec![(0, 1)]]);
    }

    #[test]
    fn degree_one_chain() {
        let data = enumerate_rigid_types(&DegenerationSetup::Orthant(chain_setup(1, 3))).unwrap();
        assert_eq!(data.len(), 1);
        assert_eq!(data[0].coefficient, Rational::one());
        assert_eq!(data[0].vertex_data[0].data.contacts.rows, vec![vec![1]]);
    }

    #[test]
    fn degree_two_chain() {
        let data = enumerate_rigid_types(&DegenerationSetup::Orthant(chain_setup(2, 4))).unwrap();
        let mut coeffs: Vec<Rational> = data.iter().map(|d| d.coefficient.clone()).collect();
        coeffs.sort();
        assert_eq!(coeffs, vec![Rational::new(1.into(), 2.into()), Rational::new(1.into(), 2.into()), Rational::from_integer(2.into())]);
        for d in &data {
            assert!(pair_evaluation_product(d).is_ok());
        }
    }

    #[test]
    fn interchangeable_edges() {
        let data = enumerate_rigid_types(&DegenerationSetup::Orthant(chain_setup_w(6, 3, 3))).unwrap();
        let half = Rational::new(9.into(), 2.into());
        let d = data.iter().find(|d| d.coefficient == half).expect("two weight-3 edges");
        assert_eq!(d.aut_order, BigInt::from(2));
    }

    #[test]
    fn truncation_bound() {
        let mut s = chain_setup(3, 8);
        s.max_candidates = 1000;
        assert!(matches!(enumerate_rigid_types(&DegenerationSetup::Orthant(s)), Err(Error::TruncationTooLarge(_))));
    }
}
