//! Rational polyhedral cones: V- and H-representations and face structure.

use std::collections::BTreeSet;
use std::fmt;
use std::hash::{Hash, Hasher};

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::linalg::{self, Matrix};
use super::lp::{LpOutcome, Polyhedron};
use crate::error::{Error, Result};
use crate::num::{primitive_from_rationals, rat_int, LatticeVector, Rational};

/// A convex polyhedral cone `{x : eqs x = 0, ineqs x >= 0}`, possibly with lineality.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HCone {
    pub rank: usize,
    pub eqs: Vec<LatticeVector>,
    pub ineqs: Vec<LatticeVector>,
}

impl HCone {
    pub fn whole_space(rank: usize) -> Self {
        HCone { rank, eqs: vec![], ineqs: vec![] }
    }

    pub fn contains(&self, x: &[Rational]) -> bool {
        self.eqs.iter().all(|e| e.dot_rat(x).is_zero()) && self.ineqs.iter().all(|g| !g.dot_rat(x).is_negative())
    }

    pub fn contains_lattice(&self, x: &LatticeVector) -> bool {
        self.eqs.iter().all(|e| e.dot(x).is_zero()) && self.ineqs.iter().all(|g| !g.dot(x).is_negative())
    }

    pub fn intersect(&self, other: &HCone) -> HCone {
        let mut eqs = self.eqs.clone();
        eqs.extend(other.eqs.iter().cloned());
        let mut ineqs = self.ineqs.clone();
        ineqs.extend(other.ineqs.iter().cloned());
        HCone { rank: self.rank, eqs, ineqs }.simplified()
    }

    fn simplified(mut self) -> HCone {
        let norm = |v: &LatticeVector| v.primitive().1;
        let mut seen = BTreeSet::new();
        self.ineqs = self.ineqs.iter().map(norm).filter(|v| !v.is_zero() && seen.insert(v.clone())).collect();
        let rows = linalg::to_matrix(&self.eqs);
        let (r, _) = linalg::rref(rows, self.rank);
        self.eqs = r.iter().map(|row| primitive_from_rationals(row)).collect();
        self
    }

    /// Extremal rays of a pointed cone given in H-representation.
    pub fn to_cone(&self) -> Result<Cone> {
        let n = self.rank;
        let basis = linalg::nullspace(&linalg::to_matrix(&self.eqs), n);
        let p = basis.len();
        if p == 0 {
            return Ok(Cone::zero(n));
        }
        // Constraints in coordinates y with x = sum y_i basis_i.
        let g: Matrix = self.ineqs.iter().map(|row| basis.iter().map(|b| row.dot_rat(b)).collect::<Vec<Rational>>()).collect();
        if linalg::rank(&g, p) < p {
            return Err(Error::NotStronglyConvex);
        }
        let mut candidates: BTreeSet<LatticeVector> = BTreeSet::new();
        for subset in subsets(g.len(), p - 1) {
            let sub: Matrix = subset.iter().map(|&i| g[i].clone()).collect();
            if linalg::rank(&sub, p) != p - 1 {
                continue;
            }
            let ns = linalg::nullspace(&sub, p);
            let d = &ns[0];
            let vals: Vec<Rational> = g.iter().map(|row| dot(row, d)).collect();
            for sign in [1i64, -1] {
                if vals.iter().all(|v| !(v * Rational::from_integer(sign.into())).is_negative()) {
                    let x: Vec<Rational> =
                        (0..n).map(|j| basis.iter().zip(d).fold(Rational::zero(), |s, (b, c)| s + &b[j] * c) * Rational::from_integer(sign.into())).collect();
                    candidates.insert(primitive_from_rationals(&x));
                }
            }
        }
        Cone::from_generators(candidates.into_iter().collect(), n)
    }

    /// Is there a point satisfying every inequality strictly (relative to the equations)?
    pub fn is_full_in_span(&self) -> bool {
        let mut p = Polyhedron::new(self.rank);
        for e in &self.eqs {
            p.add_eq(e.to_rationals(), Rational::zero());
        }
        for g in &self.ineqs {
            p.add_ge(g.to_rationals(), Rational::from_integer(1.into()));
        }
        p.is_feasible()
    }
}

pub(crate) fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).fold(Rational::zero(), |s, (x, y)| s + x * y)
}

/// All `k`-element subsets of `0..n` in lexicographic order.
pub(crate) fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Whether `target` is a nonnegative combination of `gens`.
pub(crate) fn in_cone_of(gens: &[LatticeVector], target: &[Rational], n: usize) -> bool {
    let mut p = Polyhedron::new(gens.len());
    for j in 0..n {
        p.add_eq(gens.iter().map(|g| rat_int(&g[j])).collect(), target[j].clone());
    }
    for i in 0..gens.len() {
        let mut row = vec![Rational::zero(); gens.len()];
        row[i] = Rational::from_integer(1.into());
        p.add_ge(row, Rational::zero());
    }
    !matches!(p.maximize(&vec![Rational::zero(); gens.len()]), LpOutcome::Infeasible)
}

/// H-representation of the cone generated by arbitrary vectors (lineality allowed).
pub fn hrep_of_generators(gens: &[LatticeVector], n: usize) -> HCone {
    let gens: Vec<LatticeVector> = gens.iter().filter(|g| !g.is_zero()).map(|g| g.primitive().1).collect();
    let eqs = linalg::integer_nullspace(&gens, n);
    if gens.is_empty() {
        return HCone { rank: n, eqs, ineqs: vec![] };
    }
    let lineal: Vec<LatticeVector> = gens.iter().filter(|g| in_cone_of(&gens, &(-*g).to_rationals(), n)).cloned().collect();
    // Coordinates on span(gens) / span(lineal).
    let red_l = linalg::unimodular_reduction(&lineal, n);
    let q: Vec<LatticeVector> = red_l.u[red_l.rank..].to_vec();
    let proj = |v: &LatticeVector| LatticeVector(q.iter().map(|row| row.dot(v)).collect());
    let pg: Vec<LatticeVector> = gens.iter().map(proj).collect();
    let m1 = q.len();
    let red_s = linalg::unimodular_reduction(&pg, m1);
    let k = red_s.rank;
    if k == 0 {
        return HCone { rank: n, eqs, ineqs: vec![] };
    }
    // Composite map Z^n -> Z^k.
    let comp: Vec<LatticeVector> = (0..k)
        .map(|i| {
            let row = &red_s.u[i];
            let mut out = LatticeVector::zero(n);
            for (c, qrow) in row.0.iter().zip(&q) {
                out = &out + &qrow.scale(c);
            }
            out
        })
        .collect();
    let img: Vec<LatticeVector> = gens.iter().map(|g| LatticeVector(comp.iter().map(|r| r.dot(g)).collect())).collect();
    let mut uniq: Vec<LatticeVector> = img.iter().map(|v| v.primitive().1).filter(|v| !v.is_zero()).collect();
    uniq.sort();
    uniq.dedup();
    let mut normals: BTreeSet<LatticeVector> = BTreeSet::new();
    for subset in subsets(uniq.len(), k - 1) {
        let sub: Vec<LatticeVector> = subset.iter().map(|&i| uniq[i].clone()).collect();
        if linalg::rank_int(&sub, k) != k - 1 {
            continue;
        }
        let w = &linalg::integer_nullspace(&sub, k)[0];
        let signs: Vec<BigIntSign> = uniq.iter().map(|v| sign_of(&w.dot(v))).collect();
        let w = if signs.iter().all(|s| *s != BigIntSign::Neg) {
            w.clone()
        } else if signs.iter().all(|s| *s != BigIntSign::Pos) {
            -w
        } else {
            continue;
        };
        normals.insert(w);
    }
    let ineqs = normals
        .into_iter()
        .map(|w| {
            let mut out = LatticeVector::zero(n);
            for (c, row) in w.0.iter().zip(&comp) {
                out = &out + &row.scale(c);
            }
            out.primitive().1
        })
        .collect();
    HCone { rank: n, eqs, ineqs }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum BigIntSign {
    Neg,
    Zero,
    Pos,
}

fn sign_of(x: &num_bigint::BigInt) -> BigIntSign {
    if x.is_negative() {
        BigIntSign::Neg
    } else if x.is_zero() {
        BigIntSign::Zero
    } else {
        BigIntSign::Pos
    }
}

/// A strongly convex rational polyhedral cone in canonical form: primitive extremal
/// rays sorted lexicographically.
#[derive(Clone)]
pub struct Cone {
    rank: usize,
    rays: Vec<LatticeVector>,
    h: HCone,
}

impl PartialEq for Cone {
    fn eq(&self, o: &Cone) -> bool {
        self.rank == o.rank && self.rays == o.rays
    }
}
impl Eq for Cone {}

impl Hash for Cone {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.rank.hash(state);
        self.rays.hash(state);
    }
}

impl PartialOrd for Cone {
    fn partial_cmp(&self, o: &Cone) -> Option<std::cmp::Ordering> {
        Some(self.cmp(o))
    }
}

impl Ord for Cone {
    fn cmp(&self, o: &Cone) -> std::cmp::Ordering {
        (self.rank, self.dim(), &self.rays).cmp(&(o.rank, o.dim(), &o.rays))
    }
}

impl fmt::Debug for Cone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cone{:?}", self.rays)
    }
}

impl Cone {
    pub fn zero(rank: usize) -> Cone {
        Cone::from_generators(vec![], rank).expect("zero cone")
    }

    /// Canonical cone generated by `gens`.
    pub fn from_generators(gens: Vec<LatticeVector>, rank: usize) -> Result<Cone> {
        for g in &gens {
            if g.rank() != rank {
                return Err(Error::RankMismatch { expected: rank, found: g.rank() });
            }
        }
        let mut prim: Vec<LatticeVector> = gens.iter().filter(|g| !g.is_zero()).map(|g| g.primitive().1).collect();
        prim.sort();
        prim.dedup();
        let h = hrep_of_generators(&prim, rank);
        // Strong convexity: the lineality space is trivial iff eqs+ineqs have full rank.
        let mut all = h.eqs.clone();
        all.extend(h.ineqs.iter().cloned());
        if linalg::rank_int(&all, rank) < rank {
            return Err(Error::NotStronglyConvex);
        }
        let rays: Vec<LatticeVector> = prim
            .into_iter()
            .filter(|g| {
                let mut tight = h.eqs.clone();
                tight.extend(h.ineqs.iter().filter(|w| w.dot(g).is_zero()).cloned());
                rank - linalg::rank_int(&tight, rank) == 1
            })
            .collect();
        Ok(Cone { rank, rays, h })
    }

    pub fn from_i64(gens: &[&[i64]], rank: usize) -> Result<Cone> {
        Cone::from_generators(gens.iter().map(|g| LatticeVector::from_i64(g)).collect(), rank)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn rays(&self) -> &[LatticeVector] {
        &self.rays
    }

    pub fn hrep(&self) -> &HCone {
        &self.h
    }

    pub fn dim(&self) -> usize {
        self.rank - self.h.eqs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.rays.is_empty()
    }

    pub fn is_simplicial(&self) -> bool {
        self.rays.len() == self.dim()
    }

    /// Simplicial with rays forming part of a lattice basis.
    pub fn is_unimodular(&self) -> bool {
        self.is_simplicial() && (self.rays.is_empty() || linalg::lattice_index(&self.rays, self.rank) == 1u32.into())
    }

    pub fn contains_point(&self, x: &[Rational]) -> bool {
        self.h.contains(x)
    }

    pub fn contains_lattice_point(&self, x: &LatticeVector) -> bool {
        self.h.contains_lattice(x)
    }

    pub fn contains_cone(&self, other: &Cone) -> bool {
        other.rays.iter().all(|r| self.h.contains_lattice(r))
    }

    pub fn in_relative_interior(&self, x: &[Rational]) -> bool {
        self.h.contains(x) && self.h.ineqs.iter().all(|g| g.dot_rat(x).is_positive())
    }

    /// Sum of the rays, a lattice point in the relative interior.
    pub fn interior_point(&self) -> LatticeVector {
        self.rays.iter().fold(LatticeVector::zero(self.rank), |s, r| &s + r)
    }

    pub fn intersect(&self, other: &Cone) -> Cone {
        self.h.intersect(&other.h).to_cone().expect("intersection of pointed cones is pointed")
    }

    /// Codimension-one faces.
    pub fn facets(&self) -> Vec<Cone> {
        let mut out: Vec<Cone> = self
            .h
            .ineqs
            .iter()
            .map(|w| {
                let rays: Vec<LatticeVector> = self.rays.iter().filter(|r| w.dot(r).is_zero()).cloned().collect();
                Cone::from_generators(rays, self.rank).expect("face of pointed cone")
            })
            .collect();
        out.sort();
        out.dedup();
        out
    }

    /// All faces including the cone itself and the zero cone.
    pub fn faces(&self) -> Vec<Cone> {
        let mut seen: BTreeSet<Cone> = BTreeSet::new();
        let mut stack = vec![self.clone()];
        while let Some(c) = stack.pop() {
            if seen.contains(&c) {
                continue;
            }
            stack.extend(c.facets());
            seen.insert(c);
        }
        seen.into_iter().collect()
    }

    pub fn is_face_of(&self, other: &Cone) -> bool {
        if !other.contains_cone(self) {
            return false;
        }
        if self == other {
            return true;
        }
        other.facets().iter().any(|f| self.is_face_of(f))
    }

    /// Image under an integer matrix (rows = output coordinates).
    pub fn image(&self, m: &[LatticeVector]) -> Result<Cone> {
        let out = m.len();
        Cone::from_generators(self.rays.iter().map(|r| apply(m, r)).collect(), out)
    }
}

pub fn apply(m: &[LatticeVector], v: &LatticeVector) -> LatticeVector {
    LatticeVector(m.iter().map(|row| row.dot(v)).collect())
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct ConeJson {
    pub rays: Vec<LatticeVector>,
}

impl Serialize for Cone {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ConeJson { rays: self.rays.clone() }.serialize(s)
    }
}
