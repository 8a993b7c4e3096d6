//! Moduli cells of combinatorial types in the parameter space of positions and lengths.

use num_traits::{One, Signed, Zero};

use super::CombinatorialType;
use crate::error::{Error, Result};
use crate::lattice_geom::cone::dot;
use crate::lattice_geom::linalg;
use crate::lattice_geom::lp::Polyhedron;
use crate::num::{rat_int, LatticeVector, Rational};

/// A point condition on the vertex carrying a (contracted) leg.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PointCondition {
    /// The vertex sits at this point.
    Affine { leg: usize, point: Vec<Rational> },
    /// The vertex lies on the ray through this direction (homogeneous form of an
    /// affine condition in a cone-over model).
    Ray { leg: usize, direction: LatticeVector },
}

/// The cell of a type: unknowns are vertex positions (`V * rank` coordinates, vertex-major)
/// followed by edge lengths.
#[derive(Debug, Clone)]
pub struct ModuliCell {
    pub dim: usize,
    /// A point in the relative interior.
    pub point: Vec<Rational>,
    pub polyhedron: Polyhedron,
    pub num_vertices: usize,
    pub rank: usize,
}

impl ModuliCell {
    pub fn position(&self, v: usize) -> &[Rational] {
        &self.point[v * self.rank..(v + 1) * self.rank]
    }

    pub fn lengths(&self) -> &[Rational] {
        &self.point[self.num_vertices * self.rank..]
    }

    pub fn positions(&self) -> Vec<Vec<Rational>> {
        (0..self.num_vertices).map(|v| self.position(v).to_vec()).collect()
    }
}

fn unit_row(np: usize, entries: &[(usize, Rational)]) -> Vec<Rational> {
    let mut row = vec![Rational::zero(); np];
    for (i, x) in entries {
        row[*i] += x;
    }
    row
}

/// Builds the linear system of a type and returns its moduli cell.
///
/// Constraints: continuity along edges, vertex positions in their assigned cones, edge
/// interiors in their edge cones, non-negative lengths, equal height under `height` if
/// given, and the point conditions. The open cell (lengths positive, positions in
/// relative interiors) must be nonempty, otherwise `Infeasible`.
pub fn moduli_cone(t: &CombinatorialType, height: Option<&LatticeVector>, conditions: &[PointCondition]) -> Result<ModuliCell> {
    t.validate()?;
    let n = t.rank;
    let nv = t.curve.vertices.len();
    let ne = t.curve.edges.len();
    let np = nv * n + ne;
    let pos = |v: usize, i: usize| v * n + i;
    let len = |e: usize| nv * n + e;
    let mut p = Polyhedron::new(np);
    // Inequalities that must be strict on the open cell.
    let mut strict: Vec<usize> = Vec::new();
    for (e, &(a, b)) in t.curve.edges.iter().enumerate() {
        if a != b {
            for i in 0..n {
                p.add_eq(unit_row(np, &[(pos(b, i), Rational::one()), (pos(a, i), -Rational::one()), (len(e), -rat_int(&t.slopes[e][i]))]), Rational::zero());
            }
        }
        strict.push(p.ge.len());
        p.add_ge(unit_row(np, &[(len(e), Rational::one())]), Rational::zero());
    }
    if let Some(target) = &t.target {
        for v in 0..nv {
            let c = target.cones()[t.vertex_cones[v]].hrep();
            for w in &c.eqs {
                p.add_eq(unit_row(np, &(0..n).map(|i| (pos(v, i), rat_int(&w[i]))).collect::<Vec<_>>()), Rational::zero());
            }
            for w in &c.ineqs {
                strict.push(p.ge.len());
                p.add_ge(unit_row(np, &(0..n).map(|i| (pos(v, i), rat_int(&w[i]))).collect::<Vec<_>>()), Rational::zero());
            }
        }
        for (e, &(a, b)) in t.curve.edges.iter().enumerate() {
            let c = target.cones()[t.edge_cones[e]].hrep();
            let mid = |w: &LatticeVector| -> Vec<Rational> {
                let mut entries: Vec<(usize, Rational)> = (0..n).map(|i| (pos(a, i), rat_int(&w[i]))).collect();
                entries.extend((0..n).map(|i| (pos(b, i), rat_int(&w[i]))));
                unit_row(np, &entries)
            };
            for w in &c.ineqs {
                strict.push(p.ge.len());
                p.add_ge(mid(w), Rational::zero());
            }
        }
    }
    if let Some(h) = height {
        for v in 1..nv {
            let mut entries: Vec<(usize, Rational)> = (0..n).map(|i| (pos(v, i), rat_int(&h[i]))).collect();
            entries.extend((0..n).map(|i| (pos(0, i), -rat_int(&h[i]))));
            p.add_eq(unit_row(np, &entries), Rational::zero());
        }
    }
    for c in conditions {
        match c {
            PointCondition::Affine { leg, point } => {
                let v = t.curve.legs.get(*leg).ok_or_else(|| Error::invalid(format!("no leg {leg}")))?.vertex;
                if point.len() != n {
                    return Err(Error::RankMismatch { expected: n, found: point.len() });
                }
                for i in 0..n {
                    p.add_eq(unit_row(np, &[(pos(v, i), Rational::one())]), point[i].clone());
                }
            }
            PointCondition::Ray { leg, direction } => {
                let v = t.curve.legs.get(*leg).ok_or_else(|| Error::invalid(format!("no leg {leg}")))?.vertex;
                if direction.rank() != n {
                    return Err(Error::RankMismatch { expected: n, found: direction.rank() });
                }
                let k = direction.0.iter().position(|x| !x.is_zero()).ok_or(Error::ZeroVector)?;
                for i in (0..n).filter(|&i| i != k) {
                    p.add_eq(unit_row(np, &[(pos(v, i), rat_int(&direction[k])), (pos(v, k), -rat_int(&direction[i]))]), Rational::zero());
                }
                p.add_ge(unit_row(np, &(0..n).map(|i| (pos(v, i), rat_int(&direction[i]))).collect::<Vec<_>>()), Rational::zero());
            }
        }
    }
    if let Some(cell) = determined_cell(&p, &strict, nv, n) {
        return cell;
    }
    let ri = p.relative_interior().ok_or(Error::Infeasible)?;
    if ri.implicit.iter().any(|i| strict.contains(i)) {
        return Err(Error::Infeasible);
    }
    Ok(ModuliCell { dim: ri.dim, point: ri.point, polyhedron: p, num_vertices: nv, rank: n })
}

/// When the equations alone pin down a unique point, check the inequalities directly.
fn determined_cell(p: &Polyhedron, strict: &[usize], nv: usize, n: usize) -> Option<Result<ModuliCell>> {
    if linalg::rank(&p.eq, p.n) < p.n {
        return None;
    }
    let Some(x) = linalg::solve(&p.eq, &p.eq_rhs, p.n) else {
        return Some(Err(Error::Infeasible));
    };
    for (i, (row, rhs)) in p.ge.iter().zip(&p.ge_rhs).enumerate() {
        let v = dot(row, &x);
        if v < *rhs || (strict.contains(&i) && v == *rhs) {
            return Some(Err(Error::Infeasible));
        }
    }
    Some(Ok(ModuliCell { dim: 0, point: x, polyhedron: p.clone(), num_vertices: nv, rank: n }))
}

/// Rigid: the moduli cell is one-dimensional and the height is positive on it.
pub fn is_rigid(t: &CombinatorialType, height: &LatticeVector, conditions: &[PointCondition]) -> Result<bool> {
    let cell = moduli_cone(t, Some(height), conditions)?;
    Ok(cell.dim == 1 && height.dot_rat(cell.position(0)).is_positive())
}
