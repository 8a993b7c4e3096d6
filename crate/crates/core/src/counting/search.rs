//! Point-driven search for rigid plane curves.
//!
//! Removing the marked points from a rigid curve through generic points leaves trees,
//! each carrying exactly one unbounded end. A "hanging piece" at a marked point `q` is the
//! side of the curve beyond `q`: the tree containing one half-edge at `q`, together with
//! everything attached to it through its other marked points. Given the points it covers,
//! a hanging piece is rigid, so pieces are built bottom-up over point subsets.
//!
//! Within a tree, the half-edge at `q` (the link) runs along a path to the end. The path
//! absorbs subtrees hanging off it; those are built separately and shared.

use std::collections::HashMap;
use std::sync::Arc;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::num::{int, Rational};

pub(crate) type Slope = (i64, i64);
pub(crate) type Pt = [Rational; 2];

pub(crate) const ENDS: [Slope; 3] = [(-1, 0), (0, -1), (1, 1)];
pub(crate) const END_LABELS: [&str; 3] = ["W", "S", "NE"];

#[derive(Debug)]
pub(crate) enum Node {
    /// Half-edge at a marked point whose other half belongs to the parent piece.
    Link {
        point: usize,
        slope: Slope,
    },
    /// Half-edge at the cut point of the cycle.
    Free {
        point: usize,
        slope: Slope,
    },
    /// Half-edge at a marked point whose other half starts the hanging piece `entry`.
    Child {
        point: usize,
        entry: Arc<Entry>,
    },
    Merge {
        left: Arc<Node>,
        right: Arc<Node>,
        dir: Slope,
    },
}

impl Node {
    fn dir(&self) -> Slope {
        match self {
            Node::Link { slope, .. } | Node::Free { slope, .. } => *slope,
            Node::Child { entry, .. } => neg(entry.s),
            Node::Merge { dir, .. } => *dir,
        }
    }
}

/// A partial tree: its outgoing ray starts at `start` in direction `dir`. The start is
/// kept in floating point; exact coordinates are recomputed from `node` when needed.
#[derive(Debug, Clone)]
struct Ray {
    start: [f64; 2],
    dir: Slope,
    mult: u64,
    /// End counts of the hanging pieces below.
    triple: [u32; 3],
    node: Arc<Node>,
}

/// A hanging piece; `s` is the slope of the half-edge at the link point pointing into it.
#[derive(Debug)]
pub(crate) struct Entry {
    pub s: Slope,
    pub triple: [u32; 3],
    pub mult: u64,
    pub root: Arc<Node>,
    pub end: Slope,
}

/// A complete curve, given by the pieces at the root.
#[derive(Debug, Clone)]
pub(crate) struct Found {
    pub roots: Vec<Arc<Entry>>,
    pub mult: u64,
}

fn cross(a: Slope, b: Slope) -> i64 {
    a.0 * b.1 - a.1 * b.0
}

fn add(a: Slope, b: Slope) -> Slope {
    (a.0 + b.0, a.1 + b.1)
}

fn neg(a: Slope) -> Slope {
    (-a.0, -a.1)
}

fn lex_positive(a: Slope) -> bool {
    a.0 > 0 || (a.0 == 0 && a.1 > 0)
}

fn end_index(e: Slope) -> Option<usize> {
    ENDS.iter().position(|&x| x == e)
}

fn nongeneric(what: &str) -> Error {
    Error::NonGenericConfiguration(what.to_string())
}

/// Meeting point of the rays `x + t a` and `y + u b` with `t, u > 0`.
fn meet(x: &Pt, a: Slope, y: &Pt, b: Slope) -> Result<Option<(Pt, Rational, Rational)>> {
    let r = |v: i64| Rational::from(int(v));
    let d = [&y[0] - &x[0], &y[1] - &x[1]];
    let cr = |p: &Pt, q: Slope| &p[0] * r(q.1) - &p[1] * r(q.0);
    let det = cross(a, b);
    if det == 0 {
        if !cr(&d, a).is_zero() {
            return Ok(None);
        }
        // Collinear rays overlap unless they point away from each other.
        let along = &d[0] * r(a.0) + &d[1] * r(a.1);
        if a.0 * b.0 + a.1 * b.1 > 0 || along.is_positive() {
            return Err(nongeneric("collinear edges overlap"));
        }
        return Ok(None);
    }
    let det = r(det);
    let t = cr(&d, b) / &det;
    let u = cr(&d, a) / &det;
    if t.is_negative() || u.is_negative() {
        return Ok(None);
    }
    if t.is_zero() || u.is_zero() {
        return Err(nongeneric("vertex at a marked point or vertex"));
    }
    let at = [&x[0] + &t * r(a.0), &x[1] + &t * r(a.1)];
    Ok(Some((at, t, u)))
}

/// Floating-point meeting test with a safety margin.
enum Approx {
    Miss,
    Hit([f64; 2]),
    /// Too close to call; decide exactly.
    Unsure,
}

fn approx_meet(x: [f64; 2], a: Slope, y: [f64; 2], b: Slope) -> Approx {
    let d = [y[0] - x[0], y[1] - x[1]];
    let tol = 1e-7 * (1.0 + x[0].abs() + x[1].abs() + y[0].abs() + y[1].abs());
    let det = cross(a, b) as f64;
    if det == 0.0 {
        return if (d[0] * a.1 as f64 - d[1] * a.0 as f64).abs() > tol { Approx::Miss } else { Approx::Unsure };
    }
    let t = (d[0] * b.1 as f64 - d[1] * b.0 as f64) / det;
    let u = (d[0] * a.1 as f64 - d[1] * a.0 as f64) / det;
    if t < -tol || u < -tol {
        Approx::Miss
    } else if t > tol && u > tol {
        Approx::Hit([x[0] + t * a.0 as f64, x[1] + t * a.1 as f64])
    } else {
        Approx::Unsure
    }
}

fn approx(p: &Pt) -> [f64; 2] {
    use num_traits::ToPrimitive;
    [p[0].to_f64().unwrap_or(f64::NAN), p[1].to_f64().unwrap_or(f64::NAN)]
}

/// All submasks, largest first, ending with 0.
fn subsets(mask: u32) -> impl Iterator<Item = u32> {
    let mut next = Some(mask);
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur == 0 { None } else { Some((cur - 1) & mask) };
        Some(cur)
    })
}

fn bits(mask: u32) -> impl Iterator<Item = usize> {
    (0..32).filter(move |i| mask & (1 << i) != 0)
}

type Memo<K> = HashMap<K, Arc<Vec<Ray>>>;
type Pieces = HashMap<(usize, u32), Arc<Vec<Arc<Entry>>>>;

pub(crate) struct Search<'a> {
    d: u32,
    points: &'a [Pt],
    slopes: Vec<Slope>,
    pieces: Pieces,
    trees: Memo<u32>,
    chains: Memo<((usize, Slope, u32, bool), Slope)>,
    /// Plain paths that still have to absorb a cycle subtree, keyed also by the cycle slope.
    chains_off: Memo<((usize, Slope, u32, bool), Slope)>,
    /// Cut point and slope of the cycle edge through it, for genus one.
    cut: Option<(usize, Slope)>,
    pieces_c: Pieces,
    trees_c: Memo<u32>,
    chains_c: Memo<(usize, Slope, u32, bool)>,
}

impl<'a> Search<'a> {
    pub(crate) fn new(d: u32, points: &'a [Pt]) -> Self {
        let di = d as i64;
        let mut slopes = Vec::new();
        for x in -di..=di {
            for y in -di..=di {
                if (x, y) != (0, 0) && (x - y).abs() <= di {
                    slopes.push((x, y));
                }
            }
        }
        Search {
            d,
            points,
            slopes,
            pieces: HashMap::new(),
            trees: HashMap::new(),
            chains: HashMap::new(),
            chains_off: HashMap::new(),
            cut: None,
            pieces_c: HashMap::new(),
            trees_c: HashMap::new(),
            chains_c: HashMap::new(),
        }
    }

    /// Joins two rays at their meeting point. With `off` set, the result must stay closable.
    fn merge(&self, a: &Ray, b: &Ray, off: Option<Slope>) -> Result<Option<Ray>> {
        let triple = [a.triple[0] + b.triple[0], a.triple[1] + b.triple[1], a.triple[2] + b.triple[2]];
        let dir = add(a.dir, b.dir);
        if dir == (0, 0) || triple.iter().any(|&t| t > self.d) {
            return Ok(None);
        }
        if off.is_some_and(|o| !self.closable(dir, triple, o)) {
            return Ok(None);
        }
        let start = match approx_meet(a.start, a.dir, b.start, b.dir) {
            Approx::Miss => return Ok(None),
            Approx::Hit(p) => p,
            Approx::Unsure => {
                let (x, y) = (self.exact_start(&a.node)?, self.exact_start(&b.node)?);
                match meet(&x, a.dir, &y, b.dir)? {
                    Some((at, _, _)) => approx(&at),
                    None => return Ok(None),
                }
            }
        };
        let mult = a.mult * b.mult * cross(a.dir, b.dir).unsigned_abs();
        let node = Arc::new(Node::Merge { left: a.node.clone(), right: b.node.clone(), dir });
        Ok(Some(Ray { start, dir, mult, triple, node }))
    }

    fn exact_start(&self, node: &Node) -> Result<Pt> {
        exact_start(self.points, node)
    }

    fn merge_all(&self, l: &[Ray], r: &[Ray], off: Option<Slope>, out: &mut Vec<Ray>) -> Result<()> {
        for x in l {
            for y in r {
                out.extend(self.merge(x, y, off)?);
            }
        }
        Ok(())
    }

    fn child_ray(&self, q: usize, e: &Arc<Entry>) -> Ray {
        Ray { start: approx(&self.points[q]), dir: neg(e.s), mult: e.mult, triple: e.triple, node: Arc::new(Node::Child { point: q, entry: e.clone() }) }
    }

    fn origin(&self, q: usize, s: Slope, free: bool) -> Ray {
        let node = if free { Node::Free { point: q, slope: s } } else { Node::Link { point: q, slope: s } };
        Ray { start: approx(&self.points[q]), dir: s, mult: 1, triple: [0; 3], node: Arc::new(node) }
    }

    /// Subtrees hanging off a path, covering exactly the points of `a` (nonempty).
    fn tree(&mut self, a: u32) -> Result<Arc<Vec<Ray>>> {
        if let Some(v) = self.trees.get(&a) {
            return Ok(v.clone());
        }
        let mut out = Vec::new();
        for q in bits(a) {
            for e in self.hang(q, a & !(1 << q))?.iter() {
                out.push(self.child_ray(q, e));
            }
        }
        let low = a & a.wrapping_neg();
        for sub in subsets(a ^ low) {
            let (a1, a2) = (low | sub, a & !(low | sub));
            if a2 != 0 {
                let (l, r) = (self.tree(a1)?, self.tree(a2)?);
                self.merge_all(&l, &r, None, &mut out)?;
            }
        }
        let out = Arc::new(out);
        self.trees.insert(a, out.clone());
        Ok(out)
    }

    /// Paths starting with the half-edge `(q, s)` that have absorbed subtrees covering `a`.
    ///
    /// `off` is the extra flux still to be absorbed beyond that of plain subtrees (the cycle
    /// edge, when a cycle subtree is still missing); paths that can no longer end in an end
    /// direction are dropped.
    fn chain(&mut self, q: usize, s: Slope, a: u32, free: bool, off: Slope) -> Result<Arc<Vec<Ray>>> {
        let key = (q, s, a, free);
        let memo = if off == (0, 0) { &self.chains } else { &self.chains_off };
        let key = (key, off);
        if let Some(v) = memo.get(&key) {
            return Ok(v.clone());
        }
        let mut out = Vec::new();
        if a == 0 {
            out.push(self.origin(q, s, free));
        }
        for b in subsets(a).filter(|&b| b != 0) {
            let (l, r) = (self.chain(q, s, a & !b, free, off)?, self.tree(b)?);
            self.merge_all(&l, &r, Some(off), &mut out)?;
        }
        out.retain(|r| self.closable(r.dir, r.triple, off));
        let out = Arc::new(out);
        if off == (0, 0) {
            self.chains.insert(key, out.clone());
        } else {
            self.chains_off.insert(key, out.clone());
        }
        Ok(out)
    }

    /// Whether absorbing more plain subtrees (plus flux `off`) can turn `r` into an end
    /// within the degree budget. Plain subtrees with end counts `t` have direction `-t.ENDS`.
    fn closable(&self, dir: Slope, triple: [u32; 3], off: Slope) -> bool {
        let d = self.d as i64;
        ENDS.iter().enumerate().any(|(ei, &e)| {
            let mut budget = [d - triple[0] as i64, d - triple[1] as i64, d - triple[2] as i64];
            budget[ei] -= 1;
            if budget.iter().any(|&b| b < 0) {
                return false;
            }
            // r.dir - off - e = (z - x, z - y) with x, y, z within the budget.
            let v = (dir.0 - off.0 - e.0, dir.1 - off.1 - e.1);
            (0..=budget[2]).any(|z| (0..=budget[0]).contains(&(z - v.0)) && (0..=budget[1]).contains(&(z - v.1)))
        })
    }

    fn close(&self, s: Slope, rays: &[Ray], out: &mut Vec<Arc<Entry>>) {
        for r in rays {
            let Some(ei) = end_index(r.dir) else { continue };
            let mut triple = r.triple;
            triple[ei] += 1;
            if triple.iter().all(|&t| t <= self.d) {
                out.push(Arc::new(Entry { s, triple, mult: r.mult, root: r.node.clone(), end: r.dir }));
            }
        }
    }

    /// Whether `s` is a sum of `k` end directions with at most `d` of each.
    fn flux_possible(&self, s: Slope, k: u32) -> bool {
        // s = (c - a, c - b) with a + b + c = k.
        let (k, d) = (k as i64, self.d as i64);
        (0..=d.min(k)).any(|c| {
            let (a, b) = (c - s.0, c - s.1);
            a >= 0 && b >= 0 && a <= d && b <= d && a + b + c == k
        })
    }

    /// Hanging pieces at `q` covering exactly the points in `set`.
    pub(crate) fn hang(&mut self, q: usize, set: u32) -> Result<Arc<Vec<Arc<Entry>>>> {
        if let Some(v) = self.pieces.get(&(q, set)) {
            return Ok(v.clone());
        }
        let ends = set.count_ones() + 1;
        let mut out = Vec::new();
        for s in self.slopes.clone() {
            if self.flux_possible(s, ends) {
                let rays = self.chain(q, s, set, false, (0, 0))?;
                self.close(s, &rays, &mut out);
            }
        }
        let out = Arc::new(out);
        self.pieces.insert((q, set), out.clone());
        Ok(out)
    }

    // Genus one. Every structure below contains exactly one cycle element: either the free
    // half-edge `(c, -s_c)` or a hanging piece containing it.

    fn tree_c(&mut self, a: u32) -> Result<Arc<Vec<Ray>>> {
        if let Some(v) = self.trees_c.get(&a) {
            return Ok(v.clone());
        }
        let (c, sc) = self.cut.expect("cut point");
        let mut out = Vec::new();
        if a == 0 {
            out.push(self.origin(c, neg(sc), true));
        }
        for q in bits(a).filter(|&q| q > c) {
            for e in self.hang_c(q, a & !(1 << q))?.iter() {
                out.push(self.child_ray(q, e));
            }
        }
        // The cycle side comes first, so every tree is produced once.
        for a1 in subsets(a) {
            let a2 = a & !a1;
            if a2 != 0 {
                let (l, r) = (self.tree_c(a1)?, self.tree(a2)?);
                self.merge_all(&l, &r, None, &mut out)?;
            }
        }
        let out = Arc::new(out);
        self.trees_c.insert(a, out.clone());
        Ok(out)
    }

    fn chain_c(&mut self, q: usize, s: Slope, a: u32, free: bool) -> Result<Arc<Vec<Ray>>> {
        if let Some(v) = self.chains_c.get(&(q, s, a, free)) {
            return Ok(v.clone());
        }
        let mut out = Vec::new();
        for b in subsets(a) {
            if b != 0 {
                let (l, r) = (self.chain_c(q, s, a & !b, free)?, self.tree(b)?);
                self.merge_all(&l, &r, Some((0, 0)), &mut out)?;
            }
            let sc = self.cut.expect("cut point").1;
            let (l, r) = (self.chain(q, s, a & !b, free, sc)?, self.tree_c(b)?);
            self.merge_all(&l, &r, Some((0, 0)), &mut out)?;
        }
        let out = Arc::new(out);
        self.chains_c.insert((q, s, a, free), out.clone());
        Ok(out)
    }

    fn hang_c(&mut self, q: usize, set: u32) -> Result<Arc<Vec<Arc<Entry>>>> {
        if let Some(v) = self.pieces_c.get(&(q, set)) {
            return Ok(v.clone());
        }
        let (_, sc) = self.cut.expect("cut point");
        let ends = set.count_ones() + 1;
        let mut out = Vec::new();
        for s in self.slopes.clone() {
            // The link carries the flux of the ends plus that of the cycle edge.
            if self.flux_possible(add(s, neg(sc)), ends) {
                let rays = self.chain_c(q, s, set, false)?;
                self.close(s, &rays, &mut out);
            }
        }
        let out = Arc::new(out);
        self.pieces_c.insert((q, set), out.clone());
        Ok(out)
    }

    /// Rational curves: the two sides of the first point, glued along opposite slopes.
    pub(crate) fn genus_zero(&mut self) -> Result<Vec<Found>> {
        let n = self.points.len();
        let rest: u32 = (((1u64 << n) - 1) as u32) & !1;
        let mut found = Vec::new();
        for sub in subsets(rest) {
            let a = self.hang(0, sub)?;
            let b = self.hang(0, rest & !sub)?;
            for ea in a.iter().filter(|e| lex_positive(e.s)) {
                for eb in b.iter().filter(|e| e.s == neg(ea.s)) {
                    if (0..3).all(|i| ea.triple[i] + eb.triple[i] == self.d) {
                        found.push(Found { roots: vec![ea.clone(), eb.clone()], mult: ea.mult * eb.mult });
                    }
                }
            }
        }
        Ok(found)
    }

    /// Genus one: cut the cycle at its lowest marked point `c`; the cycle edge there has
    /// slope `s_c` (taken lexicographically positive), and the tree containing the half-edge
    /// `(c, s_c)` is the root.
    pub(crate) fn genus_one(&mut self) -> Result<Vec<Found>> {
        let n = self.points.len();
        let all: u32 = ((1u64 << n) - 1) as u32;
        let mut found = Vec::new();
        for c in 0..n {
            for sc in self.slopes.clone().into_iter().filter(|&s| lex_positive(s)) {
                self.cut = Some((c, sc));
                self.pieces_c.clear();
                self.trees_c.clear();
                self.chains_c.clear();
                let rays = self.chain_c(c, sc, all & !(1 << c), true)?;
                let mut roots = Vec::new();
                self.close((0, 0), &rays, &mut roots);
                for r in roots.into_iter().filter(|r| r.triple.iter().all(|&t| t == self.d)) {
                    found.push(Found { mult: r.mult, roots: vec![r] });
                }
            }
        }
        self.cut = None;
        Ok(found)
    }
}

/// Plane curve assembled from a search result: vertex positions, edges with slopes and lengths, legs.
#[derive(Debug, Clone, Default)]
pub(crate) struct Assembled {
    pub positions: Vec<Pt>,
    /// Vertex index of each marked point.
    pub point_vertex: Vec<usize>,
    pub edges: Vec<(usize, usize)>,
    pub slopes: Vec<Slope>,
    pub lengths: Vec<Rational>,
    /// (vertex, end index) of the unbounded ends.
    pub ends: Vec<(usize, usize)>,
}

/// Exact start of the ray of `node`.
fn exact_start(points: &[Pt], node: &Node) -> Result<Pt> {
    match node {
        Node::Link { point, .. } | Node::Free { point, .. } | Node::Child { point, .. } => Ok(points[*point].clone()),
        Node::Merge { left, right, .. } => {
            let (x, y) = (exact_start(points, left)?, exact_start(points, right)?);
            let (at, _, _) = meet(&x, left.dir(), &y, right.dir())?.ok_or_else(|| nongeneric("rays fail to meet exactly"))?;
            Ok(at)
        }
    }
}

/// Exact curve of a search result.
pub(crate) fn assemble_curve(points: &[Pt], f: &Found) -> Result<Assembled> {
    let mut a = Assembled { positions: points.to_vec(), point_vertex: (0..points.len()).collect(), ..Default::default() };
    for r in &f.roots {
        add_piece(&mut a, r)?;
    }
    Ok(a)
}

fn add_piece(a: &mut Assembled, e: &Entry) -> Result<()> {
    let (root, _) = build(a, &e.root)?;
    a.ends.push((root, end_index(e.end).expect("end direction")));
    Ok(())
}

/// Adds the subtree of `node`; returns its top vertex and position.
fn build(a: &mut Assembled, node: &Node) -> Result<(usize, Pt)> {
    match node {
        Node::Link { point, .. } | Node::Free { point, .. } => Ok((a.point_vertex[*point], a.positions[*point].clone())),
        Node::Child { point, entry } => {
            add_piece(a, entry)?;
            Ok((a.point_vertex[*point], a.positions[*point].clone()))
        }
        Node::Merge { left, right, .. } => {
            let (wl, xl) = build(a, left)?;
            let (wr, xr) = build(a, right)?;
            let (at, tl, tr) = meet(&xl, left.dir(), &xr, right.dir())?.ok_or_else(|| nongeneric("rays fail to meet exactly"))?;
            let v = a.positions.len();
            a.positions.push(at.clone());
            for (w, sub, len) in [(wl, left, tl), (wr, right, tr)] {
                a.edges.push((w, v));
                a.slopes.push(sub.dir());
                a.lengths.push(len);
            }
            Ok((v, at))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    #[ignore]
    fn profile() {
        for (d, g) in [(2u32, 0u32), (2, 1), (3, 0), (4, 0), (3, 1)] {
            let pts = crate::counting::random_generic_points((3 * d - 1 + g) as usize, 1);
            let coords: Vec<Pt> = pts.points.iter().map(|p| [p[0].clone(), p[1].clone()]).collect();
            let t = std::time::Instant::now();
            let mut s = Search::new(d, &coords);
            let f = if g == 0 { s.genus_zero().unwrap() } else { s.genus_one().unwrap() };
            let m: u64 = f.iter().map(|f| f.mult).sum();
            let trees: usize = s.trees.values().map(|v| v.len()).sum();
            let chains: usize = s.chains.values().map(|v| v.len()).sum();
            eprintln!("d={d} g={g} found={} mult={m} trees={trees} chains={chains} {:?}", f.len(), t.elapsed());
        }
    }

    #[test]
    fn approx_meet_defers_near_cases() {
        assert!(matches!(approx_meet([0.0, 0.0], (1, 0), [2.0, -1.0], (0, 1)), Approx::Hit(_)));
        assert!(matches!(approx_meet([0.0, 0.0], (1, 0), [2.0, 1.0], (0, 1)), Approx::Miss));
        assert!(matches!(approx_meet([0.0, 0.0], (1, 0), [2.0, 1e-12], (0, 1)), Approx::Unsure));
        assert!(matches!(approx_meet([0.0, 0.0], (1, 0), [3.0, 0.0], (-1, 0)), Approx::Unsure));
        assert!(matches!(approx_meet([0.0, 0.0], (1, 0), [3.0, 1.0], (-1, 0)), Approx::Miss));
    }

    #[test]
    fn meet_cases() {
        let p = |x: i64, y: i64| [Rational::from(int(x)), Rational::from(int(y))];
        let (at, t, u) = meet(&p(0, 0), (1, 0), &p(2, -1), (0, 1)).unwrap().unwrap();
        assert_eq!((at, t, u), (p(2, 0), Rational::from(int(2)), Rational::from(int(1))));
        assert!(meet(&p(0, 0), (1, 0), &p(2, 1), (0, 1)).unwrap().is_none());
        assert!(meet(&p(0, 0), (1, 0), &p(0, 0), (-1, 0)).unwrap().is_none());
        assert!(meet(&p(0, 0), (1, 0), &p(3, 0), (-1, 0)).is_err());
    }
}
