//! Coarse common refinement of a finite family of convex cones via a hyperplane arrangement.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Signed, Zero};

use super::complex::ConeComplex;
use super::cone::{Cone, HCone};
use super::lp::Polyhedron;
use crate::error::Result;
use crate::num::{LatticeVector, Rational};

#[derive(Debug, Clone)]
struct Cell {
    signs: Vec<i8>,
    point: Vec<Rational>,
    cone: Cone,
    pattern: BTreeSet<usize>,
}

fn normalize_hyperplane(v: &LatticeVector) -> LatticeVector {
    let p = v.primitive().1;
    match p.0.iter().find(|c| !c.is_zero()) {
        Some(c) if c.is_negative() => -&p,
        _ => p,
    }
}

fn cell_system(n: usize, hyper: &[LatticeVector], signs: &[i8]) -> Polyhedron {
    let mut p = Polyhedron::new(n);
    for (h, &s) in hyper.iter().zip(signs) {
        match s {
            0 => p.add_eq(h.to_rationals(), Rational::zero()),
            1 => p.add_ge(h.to_rationals(), Rational::one()),
            _ => p.add_ge((-h).to_rationals(), Rational::one()),
        }
    }
    p
}

fn enumerate_cells(n: usize, hyper: &[LatticeVector]) -> Vec<(Vec<i8>, Vec<Rational>)> {
    let mut out = Vec::new();
    let mut signs = Vec::new();
    fn rec(n: usize, hyper: &[LatticeVector], signs: &mut Vec<i8>, out: &mut Vec<(Vec<i8>, Vec<Rational>)>) {
        if signs.len() == hyper.len() {
            let p = cell_system(n, hyper, signs);
            let ri = p.relative_interior().expect("checked feasible");
            out.push((signs.clone(), ri.point));
            return;
        }
        for s in [0i8, 1, -1] {
            signs.push(s);
            if cell_system(n, &hyper[..signs.len()], signs).is_feasible() {
                rec(n, hyper, signs, out);
            }
            signs.pop();
        }
    }
    rec(n, hyper, &mut signs, &mut out);
    out
}

fn cell_cone(n: usize, hyper: &[LatticeVector], signs: &[i8]) -> Result<Cone> {
    let mut h = HCone::whole_space(n);
    for (v, &s) in hyper.iter().zip(signs) {
        match s {
            0 => h.eqs.push(v.clone()),
            1 => h.ineqs.push(v.clone()),
            _ => h.ineqs.push(-v),
        }
    }
    h.to_cone()
}

/// Whether the full-dimensional `pieces` cover the cone `c` (pieces assumed inside `c`
/// and meeting face to face).
pub(crate) fn pieces_cover(c: &Cone, pieces: &[Cone]) -> bool {
    if c.dim() == 0 {
        return true;
    }
    let full: Vec<&Cone> = pieces.iter().filter(|p| p.dim() == c.dim()).collect();
    if full.is_empty() {
        return false;
    }
    let boundary = c.facets();
    let mut count: BTreeMap<Cone, usize> = BTreeMap::new();
    for p in &full {
        for f in p.facets() {
            *count.entry(f).or_default() += 1;
        }
    }
    count.iter().all(|(f, &k)| k == 2 || boundary.iter().any(|b| b.contains_cone(f)))
}

/// Every cell on hyperplane `k` in the closure of the chamber with `signs` has the pattern
/// of its neighbours on both sides of the wall (where those exist).
fn wall_is_uniform(cells: &[Cell], by_signs: &BTreeMap<Vec<i8>, usize>, feasible: &BTreeSet<Vec<i8>>, signs: &[i8], k: usize) -> bool {
    cells.iter().all(|c| {
        let on_wall = c.signs[k] == 0 && c.signs.iter().zip(signs).enumerate().all(|(l, (&a, &b))| l == k || a == 0 || a == b);
        if !on_wall {
            return true;
        }
        let ok = [signs[k], -signs[k]].iter().all(|&side| {
            let mut up = c.signs.clone();
            up[k] = side;
            !feasible.contains(&up) || by_signs.get(&up).is_some_and(|&u| cells[u].pattern == c.pattern)
        });
        ok
    })
}

/// Cells lying in the relative interior of one face of `c` share a membership pattern
/// (`pattern` for the interior); otherwise merging would swallow a lower-dimensional member
/// of the family.
fn interior_cells_agree(c: &Cone, cells: &[Cell], pattern: &BTreeSet<usize>) -> bool {
    let facets = c.facets();
    let mut seen: BTreeMap<Vec<usize>, &BTreeSet<usize>> = BTreeMap::new();
    seen.insert(vec![], pattern);
    for cell in cells {
        if !c.contains_point(&cell.point) {
            continue;
        }
        let face: Vec<usize> = (0..facets.len()).filter(|&k| facets[k].contains_point(&cell.point)).collect();
        if *seen.entry(face).or_insert(&cell.pattern) != &cell.pattern {
            return false;
        }
    }
    true
}

/// Coarsest fan (up to the merge heuristic below) refining every cone of `family`
/// and supported on their union. Cells of the arrangement of all facet hyperplanes
/// are grouped by which members contain them; adjacent full-dimensional cells with
/// identical membership merge when their union is convex and the result stays a fan.
pub fn chamber_complex(n: usize, family: &[HCone]) -> Result<ConeComplex> {
    let mut hyper: BTreeSet<LatticeVector> = BTreeSet::new();
    for h in family {
        for v in h.eqs.iter().chain(&h.ineqs) {
            if !v.is_zero() {
                hyper.insert(normalize_hyperplane(v));
            }
        }
    }
    let hyper: Vec<LatticeVector> = hyper.into_iter().collect();
    let mut cells: Vec<Cell> = Vec::new();
    let all = enumerate_cells(n, &hyper);
    let feasible: BTreeSet<Vec<i8>> = all.iter().map(|(s, _)| s.clone()).collect();
    for (signs, point) in all {
        let pattern: BTreeSet<usize> = family.iter().enumerate().filter(|(_, h)| h.contains(&point)).map(|(i, _)| i).collect();
        if pattern.is_empty() {
            continue;
        }
        let cone = cell_cone(n, &hyper, &signs)?;
        cells.push(Cell { signs, point, cone, pattern });
    }
    let by_signs: BTreeMap<Vec<i8>, usize> = cells.iter().enumerate().map(|(i, c)| (c.signs.clone(), i)).collect();
    let full: Vec<usize> = (0..cells.len()).filter(|&i| cells[i].cone.dim() == n).collect();

    // Union-find over full-dimensional cells.
    let mut parent: Vec<usize> = (0..cells.len()).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        let mut y = x;
        while p[y] != r {
            let next = p[y];
            p[y] = r;
            y = next;
        }
        r
    }
    for &i in &full {
        for k in 0..hyper.len() {
            let mut s = cells[i].signs.clone();
            s[k] = -s[k];
            let Some(&j) = by_signs.get(&s) else { continue };
            if j < i || cells[j].pattern != cells[i].pattern {
                continue;
            }
            if wall_is_uniform(&cells, &by_signs, &feasible, &cells[i].signs, k) {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                parent[a] = b;
            }
        }
    }
    let mut classes: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for &i in &full {
        let r = find(&mut parent, i);
        classes.entry(r).or_default().push(i);
    }
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for (_, members) in classes {
        if members.len() == 1 {
            groups.push(members);
            continue;
        }
        let gens: Vec<LatticeVector> = members.iter().flat_map(|&i| cells[i].cone.rays().to_vec()).collect();
        let merged = Cone::from_generators(gens, n);
        let pieces: Vec<Cone> = members.iter().map(|&i| cells[i].cone.clone()).collect();
        match merged {
            Ok(c) if pieces_cover(&c, &pieces) && interior_cells_agree(&c, &cells, &cells[members[0]].pattern) => groups.push(members),
            _ => groups.extend(members.into_iter().map(|m| vec![m])),
        }
    }
    loop {
        let chambers: Vec<Cone> = groups
            .iter()
            .map(|g| {
                if g.len() == 1 {
                    cells[g[0]].cone.clone()
                } else {
                    Cone::from_generators(g.iter().flat_map(|&i| cells[i].cone.rays().to_vec()).collect(), n).expect("validated")
                }
            })
            .collect();
        let mut maximal = chambers.clone();
        for c in &cells {
            if c.cone.dim() < n && !chambers.iter().any(|ch| ch.contains_point(&c.point)) {
                maximal.push(c.cone.clone());
            }
        }
        let fan = ConeComplex::from_cones(n, maximal);
        // Dissolve merged chambers that break the fan property.
        // A conflicting pair is resolved by dissolving the side that is too coarse.
        let mut bad: Option<usize> = None;
        'outer: for (gi, g) in groups.iter().enumerate() {
            if g.len() == 1 {
                continue;
            }
            for other in fan.maximal_cones() {
                if other == &chambers[gi] {
                    continue;
                }
                let i = chambers[gi].intersect(other);
                if !i.is_face_of(&chambers[gi]) {
                    bad = Some(gi);
                    break 'outer;
                }
                if !i.is_face_of(other) {
                    bad = Some(chambers.iter().position(|c| c == other).filter(|&o| groups[o].len() > 1).unwrap_or(gi));
                    break 'outer;
                }
            }
        }
        match bad {
            None => return Ok(fan),
            Some(gi) => {
                let g = groups.remove(gi);
                groups.extend(g.into_iter().map(|m| vec![m]));
            }
        }
    }
}
