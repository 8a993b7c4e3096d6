//! Decorated dual graphs: genus, degree decorations, contraction and automorphisms.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Vertex {
    pub id: String,
    #[serde(default)]
    pub genus: u32,
    /// Abstract effective class coordinates.
    #[serde(default)]
    pub class: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Leg {
    pub vertex: usize,
    pub label: String,
}

/// A connected graph with vertex genera, class decorations and labeled legs.
/// Edges are unordered vertex pairs; loops and parallel edges are allowed.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TropicalCurve {
    pub vertices: Vec<Vertex>,
    pub edges: Vec<(usize, usize)>,
    pub legs: Vec<Leg>,
}

/// Optional extra labels that automorphisms must preserve.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ExtraLabels {
    pub vertex: Option<Vec<String>>,
    pub edge: Option<Vec<String>>,
}

/// A graph automorphism as a vertex permutation and an edge permutation.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Automorphism {
    pub vertex_perm: Vec<usize>,
    pub edge_perm: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AutomorphismGroup {
    pub order: BigInt,
    pub generators: Vec<Automorphism>,
}

impl TropicalCurve {
    pub fn new(vertices: Vec<Vertex>, edges: Vec<(usize, usize)>, legs: Vec<Leg>) -> Self {
        TropicalCurve { vertices, edges, legs }
    }

    /// Plain graph with genus-0, undecorated vertices named `v0, v1, ...`.
    pub fn from_edges(nv: usize, edges: &[(usize, usize)]) -> Self {
        let vertices = (0..nv).map(|i| Vertex { id: format!("v{i}"), genus: 0, class: vec![] }).collect();
        TropicalCurve { vertices, edges: edges.to_vec(), legs: vec![] }
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn is_connected(&self) -> bool {
        let n = self.vertices.len();
        if n == 0 {
            return false;
        }
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            if p[x] != x {
                let r = find(p, p[x]);
                p[x] = r;
            }
            p[x]
        }
        for &(u, v) in &self.edges {
            let (a, b) = (find(&mut parent, u), find(&mut parent, v));
            parent[a] = b;
        }
        let r = find(&mut parent, 0);
        (0..n).all(|v| find(&mut parent, v) == r)
    }

    /// First Betti number of the graph.
    pub fn cycle_rank(&self) -> Result<usize> {
        if !self.is_connected() {
            return Err(Error::Disconnected);
        }
        Ok(self.edges.len() + 1 - self.vertices.len())
    }

    /// `E - V + 1 + sum g_v`.
    pub fn genus(&self) -> Result<u64> {
        let b1 = self.cycle_rank()? as u64;
        Ok(b1 + self.vertices.iter().map(|v| u64::from(v.genus)).sum::<u64>())
    }

    pub fn valence(&self, v: usize) -> usize {
        let e: usize = self.edges.iter().map(|&(a, b)| usize::from(a == v) + usize::from(b == v)).sum();
        e + self.legs.iter().filter(|l| l.vertex == v).count()
    }

    /// Componentwise sum of the vertex classes.
    pub fn total_class(&self) -> Vec<u64> {
        let len = self.vertices.iter().map(|v| v.class.len()).max().unwrap_or(0);
        let mut out = vec![0; len];
        for v in &self.vertices {
            for (o, c) in out.iter_mut().zip(&v.class) {
                *o += c;
            }
        }
        out
    }

    /// Contracts edge `e`. A loop becomes one unit of vertex genus; otherwise the endpoints
    /// merge (the lower index survives) with genera and classes added.
    pub fn contract_edge(&self, e: usize) -> Result<TropicalCurve> {
        let &(a, b) = self.edges.get(e).ok_or(Error::EdgeNotFound(e))?;
        let mut out = self.clone();
        out.edges.remove(e);
        if a == b {
            out.vertices[a].genus += 1;
            return Ok(out);
        }
        let (keep, gone) = (a.min(b), a.max(b));
        let gv = out.vertices.remove(gone);
        let kv = &mut out.vertices[keep];
        kv.genus += gv.genus;
        if kv.class.len() < gv.class.len() {
            kv.class.resize(gv.class.len(), 0);
        }
        for (k, g) in kv.class.iter_mut().zip(&gv.class) {
            *k += g;
        }
        let remap = |v: usize| match v.cmp(&gone) {
            std::cmp::Ordering::Less => v,
            std::cmp::Ordering::Equal => keep,
            std::cmp::Ordering::Greater => v - 1,
        };
        for ed in out.edges.iter_mut() {
            *ed = (remap(ed.0), remap(ed.1));
        }
        for l in out.legs.iter_mut() {
            l.vertex = remap(l.vertex);
        }
        Ok(out)
    }

    fn vertex_keys(&self, extra: &ExtraLabels) -> Vec<(u32, Vec<u64>, Vec<String>, String, usize)> {
        (0..self.vertices.len())
            .map(|v| {
                let mut legs: Vec<String> = self.legs.iter().filter(|l| l.vertex == v).map(|l| l.label.clone()).collect();
                legs.sort();
                let x = extra.vertex.as_ref().map(|l| l[v].clone()).unwrap_or_default();
                let mut class = self.vertices[v].class.clone();
                while class.last() == Some(&0) {
                    class.pop();
                }
                (self.vertices[v].genus, class, legs, x, self.valence(v))
            })
            .collect()
    }

    fn edge_label(&self, extra: &ExtraLabels, e: usize) -> String {
        extra.edge.as_ref().map(|l| l[e].clone()).unwrap_or_default()
    }

    /// Edges grouped by unordered endpoint pair, then by label.
    fn parallel_classes(&self, extra: &ExtraLabels) -> BTreeMap<(usize, usize), BTreeMap<String, Vec<usize>>> {
        let mut out: BTreeMap<(usize, usize), BTreeMap<String, Vec<usize>>> = BTreeMap::new();
        for (i, &(a, b)) in self.edges.iter().enumerate() {
            out.entry((a.min(b), a.max(b))).or_default().entry(self.edge_label(extra, i)).or_default().push(i);
        }
        out
    }

    /// Vertex bijections that extend to decoration-preserving automorphisms.
    fn vertex_automorphisms(&self, extra: &ExtraLabels) -> Vec<Vec<usize>> {
        let n = self.vertices.len();
        let keys = self.vertex_keys(extra);
        let classes = self.parallel_classes(extra);
        let signature = |cls: &BTreeMap<String, Vec<usize>>| -> Vec<(String, usize)> { cls.iter().map(|(l, es)| (l.clone(), es.len())).collect() };
        let mut out = Vec::new();
        let mut perm = vec![usize::MAX; n];
        let mut used = vec![false; n];
        fn rec(
            v: usize,
            perm: &mut Vec<usize>,
            used: &mut Vec<bool>,
            ctx: &dyn Fn(&[usize], usize) -> bool,
            keys: &[(u32, Vec<u64>, Vec<String>, String, usize)],
            out: &mut Vec<Vec<usize>>,
        ) {
            let n = perm.len();
            if v == n {
                out.push(perm.clone());
                return;
            }
            for w in 0..n {
                if used[w] || keys[w] != keys[v] {
                    continue;
                }
                perm[v] = w;
                if ctx(perm, v) {
                    used[w] = true;
                    rec(v + 1, perm, used, ctx, keys, out);
                    used[w] = false;
                }
                perm[v] = usize::MAX;
            }
        }
        // Adjacency signatures between assigned vertices must match.
        let check = |perm: &[usize], v: usize| -> bool {
            for u in 0..=v {
                let src = (u.min(v), u.max(v));
                let (pu, pv) = (perm[u], perm[v]);
                let dst = (pu.min(pv), pu.max(pv));
                let a = classes.get(&src).map(&signature).unwrap_or_default();
                let b = classes.get(&dst).map(&signature).unwrap_or_default();
                if a != b {
                    return false;
                }
            }
            true
        };
        rec(0, &mut perm, &mut used, &check, &keys, &mut out);
        out
    }

    /// Order and a generating set of the group of decoration-preserving automorphisms.
    /// Legs are fixed pointwise; loops are not flipped.
    pub fn automorphism_group(&self, extra: &ExtraLabels) -> AutomorphismGroup {
        let classes = self.parallel_classes(extra);
        let vperms = self.vertex_automorphisms(extra);
        let mut kernel_order = BigInt::one();
        for labels in classes.values() {
            for es in labels.values() {
                for k in 2..=es.len() {
                    kernel_order *= k;
                }
            }
        }
        let order = kernel_order * vperms.len();

        // Lift a vertex permutation to an edge permutation by order-preserving matching of classes.
        let lift = |p: &[usize]| -> Vec<usize> {
            let mut ep = vec![0; self.edges.len()];
            for (&(a, b), labels) in &classes {
                let (x, y) = (p[a], p[b]);
                let dst = &classes[&(x.min(y), x.max(y))];
                for (l, es) in labels {
                    for (s, t) in es.iter().zip(&dst[l]) {
                        ep[*s] = *t;
                    }
                }
            }
            ep
        };
        let mut generators = Vec::new();
        let mut generated: Vec<Vec<usize>> = vec![(0..self.vertices.len()).collect()];
        for p in &vperms {
            if generated.contains(p) {
                continue;
            }
            generators.push(Automorphism { vertex_perm: p.clone(), edge_perm: lift(p) });
            generated = close_group(&generated, p);
        }
        let id: Vec<usize> = (0..self.vertices.len()).collect();
        for labels in classes.values() {
            for es in labels.values() {
                for w in es.windows(2) {
                    let mut ep: Vec<usize> = (0..self.edges.len()).collect();
                    ep.swap(w[0], w[1]);
                    generators.push(Automorphism { vertex_perm: id.clone(), edge_perm: ep });
                }
            }
        }
        AutomorphismGroup { order, generators }
    }

    pub fn automorphism_group_order(&self, extra: &ExtraLabels) -> BigInt {
        self.automorphism_group(extra).order
    }

    /// Canonical encoding invariant under relabeling of vertices, edges and leg order.
    pub fn canonical_form(&self, extra: &ExtraLabels) -> crate::canon::Encoding<String, String> {
        let keys = self.vertex_keys(extra);
        let vl: Vec<String> = keys.iter().map(|k| format!("{k:?}")).collect();
        let es: Vec<(usize, usize, String)> = self.edges.iter().enumerate().map(|(i, &(a, b))| (a, b, self.edge_label(extra, i))).collect();
        crate::canon::canonical_form(&vl, &es)
    }

    pub fn to_json(&self) -> CurveJson {
        CurveJson {
            vertices: self.vertices.clone(),
            edges: self.edges.iter().map(|&(a, b)| (self.vertices[a].id.clone(), self.vertices[b].id.clone())).collect(),
            legs: self.legs.iter().map(|l| LegJson { vertex: self.vertices[l.vertex].id.clone(), label: l.label.clone() }).collect(),
        }
    }

    pub fn from_json(j: &CurveJson) -> Result<TropicalCurve> {
        let mut idx: HashMap<&str, usize> = HashMap::new();
        for (i, v) in j.vertices.iter().enumerate() {
            if idx.insert(&v.id, i).is_some() {
                return Err(Error::invalid(format!("duplicate vertex id {:?}", v.id)));
            }
        }
        let look = |s: &str| idx.get(s).copied().ok_or_else(|| Error::invalid(format!("unknown vertex {s:?}")));
        let edges = j.edges.iter().map(|(a, b)| Ok((look(a)?, look(b)?))).collect::<Result<Vec<_>>>()?;
        let legs = j.legs.iter().map(|l| Ok(Leg { vertex: look(&l.vertex)?, label: l.label.clone() })).collect::<Result<Vec<_>>>()?;
        Ok(TropicalCurve { vertices: j.vertices.clone(), edges, legs })
    }
}

fn compose(a: &[usize], b: &[usize]) -> Vec<usize> {
    b.iter().map(|&x| a[x]).collect()
}

/// Closure of a permutation group under one more generator.
fn close_group(group: &[Vec<usize>], g: &[usize]) -> Vec<Vec<usize>> {
    let mut gens: Vec<Vec<usize>> = group.to_vec();
    gens.push(g.to_vec());
    let mut out: Vec<Vec<usize>> = group.to_vec();
    let mut frontier = out.clone();
    while let Some(x) = frontier.pop() {
        for s in &gens {
            let y = compose(s, &x);
            if !out.contains(&y) {
                out.push(y.clone());
                frontier.push(y);
            }
        }
    }
    out
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct LegJson {
    pub vertex: String,
    pub label: String,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct CurveJson {
    pub vertices: Vec<Vertex>,
    pub edges: Vec<(String, String)>,
    #[serde(default)]
    pub legs: Vec<LegJson>,
}

impl Serialize for TropicalCurve {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl<'de> Deserialize<'de> for TropicalCurve {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        TropicalCurve::from_json(&CurveJson::deserialize(d)?).map_err(serde::de::Error::custom)
    }
}
