//! Enumeration of plane tropical curve types and the type-by-type count.

use std::collections::{BTreeSet, HashSet};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::search::{ENDS, END_LABELS};
use super::{type_multiplicity, PointConfiguration};
use crate::canon::{canonical_form, Encoding};
use crate::error::{Error, Result};
use crate::lattice_geom::lp::Polyhedron;
use crate::num::{rat_int, LatticeVector, Rational};
use crate::tropical_curves::{Leg, TropicalCurve, Vertex};
use crate::tropical_maps::CombinatorialType;
use crate::tropical_maps::{moduli_cone, PointCondition};

/// Largest degree for which types are enumerated, per genus.
pub const MAX_ENUM_DEGREE: [u32; 2] = [4, 3];

const INTERNAL: u8 = u8::MAX;
const GLUE: u8 = 3;

/// Canonical string of a plane type: edges become midpoint vertices so that slopes can be
/// recorded per half-edge.
pub fn plane_type_key(t: &CombinatorialType) -> String {
    let nv = t.curve.num_vertices();
    let mut labels: Vec<String> = (0..nv)
        .map(|v| {
            let mut legs: Vec<String> =
                t.curve.legs.iter().zip(&t.leg_slopes).filter(|(l, _)| l.vertex == v).map(|(l, s)| format!("{}{}", l.label, s)).collect();
            legs.sort();
            format!("v[{}]", legs.join(","))
        })
        .collect();
    let mut edges = Vec::new();
    for (e, &(a, b)) in t.curve.edges.iter().enumerate() {
        let m = labels.len();
        labels.push("e".into());
        edges.push((a, m, format!("{}", t.slopes[e])));
        edges.push((b, m, format!("{}", -&t.slopes[e])));
    }
    let (vl, es) = canonical_form(&labels, &edges);
    format!("{vl:?}{es:?}")
}

/// Forgets marked points: drops contracted legs and smooths the resulting bivalent vertices.
pub fn stabilize(t: &CombinatorialType) -> CombinatorialType {
    let mut edges: Vec<Option<(usize, usize, LatticeVector)>> = t.curve.edges.iter().zip(&t.slopes).map(|(&(a, b), s)| Some((a, b, s.clone()))).collect();
    let mut legs: Vec<(usize, String, LatticeVector)> =
        t.curve.legs.iter().zip(&t.leg_slopes).filter(|(_, s)| !s.is_zero()).map(|(l, s)| (l.vertex, l.label.clone(), s.clone())).collect();
    let nv = t.curve.num_vertices();
    let mut alive = vec![true; nv];
    loop {
        let mut changed = false;
        for v in 0..nv {
            if !alive[v] {
                continue;
            }
            let inc: Vec<usize> = (0..edges.len()).filter(|&e| edges[e].as_ref().is_some_and(|x| x.0 == v || x.1 == v)).collect();
            let lg: Vec<usize> = (0..legs.len()).filter(|&l| legs[l].0 == v).collect();
            if inc.len() + lg.len() != 2 {
                continue;
            }
            // Outgoing slope from v along an edge, and the other endpoint.
            let out = |e: &(usize, usize, LatticeVector)| {
                if e.0 == v {
                    (e.1, e.2.clone())
                } else {
                    (e.0, -&e.2)
                }
            };
            match (inc.len(), lg.len()) {
                (2, 0) => {
                    let (a, _) = out(edges[inc[0]].as_ref().unwrap());
                    let (b, sb) = out(edges[inc[1]].as_ref().unwrap());
                    if a == v || b == v {
                        continue;
                    }
                    edges[inc[0]] = Some((a, b, sb));
                    edges[inc[1]] = None;
                }
                (1, 1) => {
                    let (w, _) = out(edges[inc[0]].as_ref().unwrap());
                    if w == v {
                        continue;
                    }
                    legs[lg[0]].0 = w;
                    edges[inc[0]] = None;
                }
                _ => continue,
            }
            alive[v] = false;
            changed = true;
        }
        if !changed {
            break;
        }
    }
    let index: Vec<Option<usize>> = {
        let mut k = 0;
        alive
            .iter()
            .map(|&a| {
                a.then(|| {
                    k += 1;
                    k - 1
                })
            })
            .collect()
    };
    let vertices: Vec<Vertex> = (0..nv).filter(|&v| alive[v]).map(|v| t.curve.vertices[v].clone()).collect();
    let kept: Vec<(usize, usize, LatticeVector)> = edges.into_iter().flatten().collect();
    let curve = TropicalCurve::new(
        vertices,
        kept.iter().map(|e| (index[e.0].unwrap(), index[e.1].unwrap())).collect(),
        legs.iter().map(|l| Leg { vertex: index[l.0].unwrap(), label: l.1.clone() }).collect(),
    );
    CombinatorialType::in_vector_space(curve, 2, kept.into_iter().map(|e| e.2).collect(), legs.into_iter().map(|l| l.2).collect())
}

type Tree = Encoding<u8, ()>;

fn neighbors(t: &Tree) -> Vec<Vec<usize>> {
    let mut adj = vec![Vec::new(); t.0.len()];
    for &(a, b, ()) in &t.1 {
        adj[a].push(b);
        adj[b].push(a);
    }
    adj
}

/// Every way of attaching one more leaf of `color`, up to isomorphism.
fn grow(level: &BTreeSet<Tree>, color: u8) -> BTreeSet<Tree> {
    let mut out = BTreeSet::new();
    for t in level {
        for (i, &(a, b, ())) in t.1.iter().enumerate() {
            let mut labels = t.0.clone();
            let m = labels.len();
            labels.extend([INTERNAL, color]);
            let mut edges: Vec<(usize, usize, ())> = t.1.clone();
            edges[i] = (a, m, ());
            edges.extend([(m, b, ()), (m, m + 1, ())]);
            out.insert(canonical_form(&labels, &edges));
        }
    }
    out
}

fn tripod(colors: [u8; 3]) -> Tree {
    let labels = vec![INTERNAL, colors[0], colors[1], colors[2]];
    let edges = vec![(0, 1, ()), (0, 2, ()), (0, 3, ())];
    canonical_form(&labels, &edges)
}

/// Trees with leaf colors `counts` (extra entries are glue leaves).
fn colored_trees(counts: &[u32]) -> BTreeSet<Tree> {
    let mut seq: Vec<u8> = Vec::new();
    for (c, &k) in counts.iter().enumerate() {
        seq.extend(std::iter::repeat_n(c as u8, k as usize));
    }
    // Start from a tripod using one leaf of each of the first three colors.
    let mut level = BTreeSet::from([tripod([0, 1, 2])]);
    let mut start = [1u32, 1, 1];
    for &c in &seq {
        if (c as usize) < 3 && start[c as usize] > 0 {
            start[c as usize] -= 1;
            continue;
        }
        level = grow(&level, c);
    }
    level
}

fn within_degree(s: &LatticeVector, d: i64) -> bool {
    let Some(v) = s.to_i64() else { return false };
    let (x, y) = (v[0], v[1]);
    x.abs() <= d && y.abs() <= d && (x - y).abs() <= d
}

fn end_slope(c: u8) -> LatticeVector {
    LatticeVector::from_i64(&[ENDS[c as usize].0, ENDS[c as usize].1])
}

/// Builds the type of a tree whose glue leaves (if any) carry slopes `glue[0]`, `glue[1]`.
/// Returns `None` if some edge has zero slope or a vertex is degenerate.
fn tree_type(t: &Tree, glue: &[LatticeVector]) -> Option<(CombinatorialType, Vec<usize>)> {
    let adj = neighbors(t);
    let internal: Vec<usize> = (0..t.0.len()).filter(|&v| t.0[v] == INTERNAL).collect();
    let idx = |v: usize| internal.iter().position(|&x| x == v).unwrap();
    let mut glue_at = Vec::new();
    let mut gi = 0;
    let leaf_slope = |v: usize, gi: &mut usize| -> LatticeVector {
        if t.0[v] == GLUE {
            *gi += 1;
            glue[*gi - 1].clone()
        } else {
            end_slope(t.0[v])
        }
    };
    let mut leaf_slopes = vec![LatticeVector::zero(2); t.0.len()];
    for v in 0..t.0.len() {
        if t.0[v] != INTERNAL {
            leaf_slopes[v] = leaf_slope(v, &mut gi);
        }
    }
    // Flux out of `from` toward `to`: sum of leaf slopes on the far side.
    fn side(adj: &[Vec<usize>], leaf: &[LatticeVector], from: usize, to: usize) -> LatticeVector {
        let mut sum = LatticeVector::zero(2);
        let mut stack = vec![(to, from)];
        while let Some((v, p)) = stack.pop() {
            if adj[v].len() == 1 {
                sum = &sum + &leaf[v];
            }
            stack.extend(adj[v].iter().filter(|&&w| w != p).map(|&w| (w, v)));
        }
        sum
    }
    let mut edges = Vec::new();
    let mut slopes = Vec::new();
    let mut legs = Vec::new();
    let mut leg_slopes = Vec::new();
    for &(a, b, ()) in &t.1 {
        let (ia, ib) = (t.0[a] == INTERNAL, t.0[b] == INTERNAL);
        match (ia, ib) {
            (true, true) => {
                let s = side(&adj, &leaf_slopes, a, b);
                if s.is_zero() {
                    return None;
                }
                edges.push((idx(a), idx(b)));
                slopes.push(s);
            }
            _ => {
                let (v, l) = if ia { (a, b) } else { (b, a) };
                if t.0[l] == GLUE {
                    glue_at.push((idx(v), leaf_slopes[l].clone()));
                } else {
                    legs.push(Leg { vertex: idx(v), label: END_LABELS[t.0[l] as usize].to_string() });
                    leg_slopes.push(leaf_slopes[l].clone());
                }
            }
        }
    }
    // Glue leaves become one edge, oriented from the leaf with slope glue[0].
    let mut glued = Vec::new();
    if glue_at.len() == 2 {
        let (u, w) = if glue_at[0].1 == glue[0] { (glue_at[0].0, glue_at[1].0) } else { (glue_at[1].0, glue_at[0].0) };
        glued = vec![u, w];
        edges.push((u, w));
        slopes.push(glue[0].clone());
    }
    let vertices = (0..internal.len()).map(|i| Vertex { id: format!("v{i}"), genus: 0, class: vec![] }).collect();
    let ty = CombinatorialType::in_vector_space(TropicalCurve::new(vertices, edges, legs), 2, slopes, leg_slopes);
    for v in 0..internal.len() {
        let s = ty.incident_slopes(v);
        if s.len() != 3 || s.iter().any(|x| x.is_zero()) || (&s[0][0] * &s[1][1] - &s[0][1] * &s[1][0]).is_zero() {
            return None;
        }
    }
    Some((ty, glued))
}

/// Slopes of a tree with glue leaves carrying `c` and `-c` (in index order), as affine
/// functions `(base_x, base_y, k)` of `c`: every inner edge, then the cycle closed by the glue
/// edge, walked from the `-c` side to the `c` side.
fn glue_fluxes(t: &Tree) -> (Vec<(i64, i64, i64)>, Vec<(i64, i64, i64)>) {
    let adj = neighbors(t);
    let gl: Vec<usize> = (0..t.0.len()).filter(|&v| t.0[v] == GLUE).collect();
    // Flux out of `from` toward `to`: sum of leaf slopes beyond `to`.
    let flux = |from: usize, to: usize| {
        let (mut bx, mut by, mut k) = (0, 0, 0);
        let mut stack = vec![(to, from)];
        while let Some((v, p)) = stack.pop() {
            match t.0[v] {
                INTERNAL => stack.extend(adj[v].iter().filter(|&&w| w != p).map(|&w| (w, v))),
                GLUE => k += if v == gl[0] { 1 } else { -1 },
                c => {
                    bx += ENDS[c as usize].0;
                    by += ENDS[c as usize].1;
                }
            }
        }
        (bx, by, k)
    };
    let inner = t.1.iter().filter(|&&(a, b, ())| t.0[a] == INTERNAL && t.0[b] == INTERNAL).map(|&(a, b, ())| flux(a, b)).collect();
    let (u, w) = (adj[gl[0]][0], adj[gl[1]][0]);
    let mut prev = vec![usize::MAX; t.0.len()];
    let mut stack = vec![w];
    prev[w] = w;
    while let Some(v) = stack.pop() {
        for &x in &adj[v] {
            if prev[x] == usize::MAX && t.0[x] == INTERNAL {
                prev[x] = v;
                stack.push(x);
            }
        }
    }
    let mut cycle = vec![(0, 0, 1)];
    let mut v = u;
    while v != w {
        cycle.push(flux(prev[v], v));
        v = prev[v];
    }
    (inner, cycle)
}

/// Whether nonzero plane vectors admit a relation with all coefficients positive: no `w` is
/// nonnegative on all of them and positive on one, and such a `w` would be among `±v`, `±v^⊥`.
fn positively_dependent(vs: &[(i64, i64)]) -> bool {
    !vs.iter().flat_map(|&(x, y)| [(x, y), (-x, -y), (-y, x), (y, -x)]).any(|(wx, wy)| {
        let dots = vs.iter().map(|&(x, y)| wx * x + wy * y);
        dots.clone().all(|d| d >= 0) && dots.clone().any(|d| d > 0)
    })
}

/// Edges of the unique cycle with orientation signs (+1 if the stored orientation follows the cycle).
fn cycle_edges(ty: &CombinatorialType, start: usize, end: usize, closing: usize) -> Option<Vec<(usize, i64)>> {
    // Path from `end` back to `start` avoiding the closing edge, then the closing edge start->end.
    let nv = ty.curve.num_vertices();
    let mut prev: Vec<Option<(usize, usize)>> = vec![None; nv];
    let mut seen = vec![false; nv];
    let mut queue = std::collections::VecDeque::from([end]);
    seen[end] = true;
    while let Some(v) = queue.pop_front() {
        for (e, &(a, b)) in ty.curve.edges.iter().enumerate() {
            if e == closing || (a != v && b != v) {
                continue;
            }
            let w = if a == v { b } else { a };
            if !seen[w] {
                seen[w] = true;
                prev[w] = Some((v, e));
                queue.push_back(w);
            }
        }
    }
    if !seen[start] {
        return None;
    }
    let mut out = vec![(closing, 1)];
    let mut v = start;
    while v != end {
        let (p, e) = prev[v]?;
        // The cycle runs p -> v here.
        let (a, _) = ty.curve.edges[e];
        out.push((e, if a == p { 1 } else { -1 }));
        v = p;
    }
    Some(out)
}

fn closes_up(ty: &CombinatorialType, cycle: &[(usize, i64)]) -> bool {
    let k = cycle.len();
    let mut p = Polyhedron::new(k);
    for i in 0..2 {
        p.add_eq(cycle.iter().map(|&(e, sg)| rat_int(&(&ty.slopes[e][i] * BigInt::from(sg)))).collect(), Rational::zero());
    }
    for j in 0..k {
        let mut row = vec![Rational::zero(); k];
        row[j] = Rational::one();
        p.add_ge(row, Rational::one());
    }
    p.is_feasible()
}

/// All trivalent balanced types of genus `g` and degree `d` with nondegenerate vertices, up
/// to isomorphism. Ends are unlabeled apart from their direction.
pub fn enumerate_types(d: u32, g: u32) -> Result<Vec<CombinatorialType>> {
    if d == 0 {
        return Err(Error::invalid("degree must be positive"));
    }
    if g > 1 || d > MAX_ENUM_DEGREE[g as usize] {
        return Err(Error::BoundsExceeded(format!("type enumeration for d={d}, g={g}")));
    }
    let di = d as i64;
    let mut keys = HashSet::new();
    let mut out = Vec::new();
    let mut push = |ty: CombinatorialType, out: &mut Vec<CombinatorialType>| {
        if keys.insert(plane_type_key(&ty)) {
            out.push(ty);
        }
    };
    if g == 0 {
        for t in colored_trees(&[d, d, d]) {
            if let Some((ty, _)) = tree_type(&t, &[]) {
                if ty.slopes.iter().all(|s| within_degree(s, di)) {
                    push(ty, &mut out);
                }
            }
        }
    } else {
        let mut seen_graphs = HashSet::new();
        for t in colored_trees(&[d, d, d, 2]) {
            // Glue leaves adjacent to the same or to adjacent vertices give cycles of length < 3.
            let adj = neighbors(&t);
            let gl: Vec<usize> = (0..t.0.len()).filter(|&v| t.0[v] == GLUE).collect();
            let (u, w) = (adj[gl[0]][0], adj[gl[1]][0]);
            if u == w || adj[u].contains(&w) {
                continue;
            }
            let (fluxes, cycle) = glue_fluxes(&t);
            let at = |&(bx, by, k): &(i64, i64, i64), x: i64, y: i64| (bx + k * x, by + k * y);
            let glue_slopes: Vec<LatticeVector> = (-di..=di)
                .flat_map(|x| (-di..=di).map(move |y| (x, y)))
                .filter(|&(x, y)| {
                    (x, y) != (0, 0)
                        && (x - y).abs() <= di
                        && fluxes.iter().all(|f| {
                            let (sx, sy) = at(f, x, y);
                            (sx, sy) != (0, 0) && sx.abs() <= di && sy.abs() <= di && (sx - sy).abs() <= di
                        })
                        && positively_dependent(&cycle.iter().map(|f| at(f, x, y)).collect::<Vec<_>>())
                })
                .map(|(x, y)| LatticeVector::from_i64(&[x, y]))
                .collect();
            if glue_slopes.is_empty() {
                continue;
            }
            let mut labels = t.0.clone();
            labels[gl[0]] = INTERNAL;
            labels[gl[1]] = INTERNAL;
            let mut ge = t.1.clone();
            ge.push((gl[0], gl[1], ()));
            if !seen_graphs.insert(canonical_form(&labels, &ge)) {
                continue;
            }
            for c in glue_slopes {
                let Some((ty, glued)) = tree_type(&t, &[c.clone(), -&c]) else {
                    continue;
                };
                if !ty.slopes.iter().all(|s| within_degree(s, di)) {
                    continue;
                }
                let closing = ty.curve.edges.len() - 1;
                let Some(cycle) = cycle_edges(&ty, glued[0], glued[1], closing) else {
                    continue;
                };
                if closes_up(&ty, &cycle) {
                    push(ty, &mut out);
                }
            }
        }
    }
    out.sort_by_cached_key(plane_type_key);
    Ok(out)
}

/// The count taken literally type by type: every type, every placement of the labeled points
/// on distinct edges or ends, one exact solve each. Only feasible for small degree.
pub fn count_by_types(d: u32, g: u32, pts: &PointConfiguration) -> Result<BigInt> {
    if d > 2 || g > 0 {
        return Err(Error::BoundsExceeded(format!("type-by-type count for d={d}, g={g}")));
    }
    let n = 3 * d as usize - 1;
    if pts.points.len() != n {
        return Err(Error::invalid(format!("expected {n} points")));
    }
    let mut total = BigInt::zero();
    let mut seen = HashSet::new();
    for ty in enumerate_types(d, g)? {
        let slots = ty.curve.edges.len() + ty.curve.legs.len();
        let mut assign = vec![usize::MAX; n];
        let mut used = vec![false; slots];
        place(&ty, pts, 0, &mut assign, &mut used, &mut |marked| {
            if clearly_infeasible(marked, pts) {
                return Ok(());
            }
            let conds: Vec<PointCondition> =
                (0..n).map(|i| PointCondition::Affine { leg: marked.curve.legs.len() - n + i, point: pts.points[i].clone() }).collect();
            if let Ok(cell) = moduli_cone(marked, None, &conds) {
                if cell.dim == 0 && seen.insert(plane_type_key(marked)) {
                    total += type_multiplicity(marked)?;
                }
            }
            Ok(())
        })?;
    }
    Ok(total)
}

fn place(
    ty: &CombinatorialType,
    pts: &PointConfiguration,
    i: usize,
    assign: &mut Vec<usize>,
    used: &mut Vec<bool>,
    f: &mut dyn FnMut(&CombinatorialType) -> Result<()>,
) -> Result<()> {
    if i == assign.len() {
        if !one_end_per_piece(ty, assign) {
            return Ok(());
        }
        return f(&mark(ty, assign));
    }
    for s in 0..used.len() {
        if !used[s] {
            used[s] = true;
            assign[i] = s;
            place(ty, pts, i + 1, assign, used, f)?;
            used[s] = false;
        }
    }
    Ok(())
}

/// Floating-point screen of a marked type: solves the position equations and reports a
/// clearly negative edge length. Singular or borderline systems are left to the exact check.
fn clearly_infeasible(t: &CombinatorialType, pts: &PointConfiguration) -> bool {
    use num_traits::ToPrimitive;
    let nv = t.curve.vertices.len();
    let ne = t.curve.edges.len();
    let np = 2 * nv + ne;
    let mut rows: Vec<Vec<f64>> = Vec::new();
    for (e, &(a, b)) in t.curve.edges.iter().enumerate() {
        for i in 0..2 {
            let mut r = vec![0.0; np + 1];
            r[2 * b + i] += 1.0;
            r[2 * a + i] -= 1.0;
            r[2 * nv + e] = -t.slopes[e][i].to_f64().unwrap_or(f64::NAN);
            rows.push(r);
        }
    }
    let n = pts.points.len();
    for (k, p) in pts.points.iter().enumerate() {
        let v = t.curve.legs[t.curve.legs.len() - n + k].vertex;
        for i in 0..2 {
            let mut r = vec![0.0; np + 1];
            r[2 * v + i] = 1.0;
            r[np] = p[i].to_f64().unwrap_or(f64::NAN);
            rows.push(r);
        }
    }
    // Gaussian elimination with partial pivoting.
    let mut piv_row = 0;
    let mut pivots = Vec::new();
    for col in 0..np {
        let Some(best) = (piv_row..rows.len()).max_by(|&x, &y| rows[x][col].abs().total_cmp(&rows[y][col].abs())) else {
            return false;
        };
        if rows[best][col].abs() < 1e-9 {
            return false;
        }
        rows.swap(piv_row, best);
        for r in 0..rows.len() {
            if r != piv_row {
                let f = rows[r][col] / rows[piv_row][col];
                if f != 0.0 {
                    for c in col..=np {
                        rows[r][c] -= f * rows[piv_row][c];
                    }
                }
            }
        }
        pivots.push(col);
        piv_row += 1;
    }
    let scale = 1.0 + pts.points.iter().flatten().map(|x| x.to_f64().unwrap_or(0.0).abs()).fold(0.0, f64::max);
    // Inconsistent leftover equations.
    if rows[piv_row..].iter().any(|r| r[np].abs() > 1e-7 * scale) {
        return true;
    }
    (0..ne).any(|e| {
        let r = &rows[2 * nv + e];
        r[np] / r[2 * nv + e] < -1e-7 * scale
    })
}

/// A rigid curve through generic points falls apart, once cut at the marked points, into
/// pieces that each keep exactly one unmarked end.
fn one_end_per_piece(ty: &CombinatorialType, assign: &[usize]) -> bool {
    let ne = ty.curve.edges.len();
    let nv = ty.curve.vertices.len();
    let cut: HashSet<usize> = assign.iter().copied().collect();
    let mut parent: Vec<usize> = (0..nv).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for (s, &(a, b)) in ty.curve.edges.iter().enumerate() {
        if !cut.contains(&s) {
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            parent[ra] = rb;
        }
    }
    let mut ends = vec![0usize; nv];
    for (l, leg) in ty.curve.legs.iter().enumerate() {
        if !cut.contains(&(ne + l)) {
            ends[find(&mut parent, leg.vertex)] += 1;
        }
    }
    (0..nv).all(|v| find(&mut parent, v) != v || ends[v] == 1)
}

/// Subdivides the chosen edges and ends with marked vertices carrying contracted legs `p{i}`.
fn mark(ty: &CombinatorialType, assign: &[usize]) -> CombinatorialType {
    let ne = ty.curve.edges.len();
    let mut vertices = ty.curve.vertices.clone();
    let mut edges = ty.curve.edges.clone();
    let mut slopes = ty.slopes.clone();
    let mut legs = ty.curve.legs.clone();
    let mut leg_slopes = ty.leg_slopes.clone();
    let mut marked = Vec::new();
    for (i, &s) in assign.iter().enumerate() {
        let m = vertices.len();
        vertices.push(Vertex { id: format!("p{i}"), genus: 0, class: vec![] });
        if s < ne {
            let (a, b) = edges[s];
            edges[s] = (a, m);
            edges.push((m, b));
            slopes.push(slopes[s].clone());
        } else {
            let l = s - ne;
            let v = legs[l].vertex;
            edges.push((v, m));
            slopes.push(leg_slopes[l].clone());
            legs[l].vertex = m;
        }
        marked.push(Leg { vertex: m, label: format!("p{i}") });
    }
    legs.extend(marked);
    leg_slopes.extend(std::iter::repeat_n(LatticeVector::zero(2), assign.len()));
    CombinatorialType::in_vector_space(TropicalCurve::new(vertices, edges, legs), 2, slopes, leg_slopes)
}
