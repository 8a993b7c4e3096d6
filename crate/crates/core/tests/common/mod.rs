//! Generators and brute-force oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeSet;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use troplog::lattice_geom::{Cone, ConeComplex};
use troplog::tropical_curves::{TropicalCurve, Vertex};
use troplog::tropical_maps::ConeComplexMap;
use troplog::LatticeVector;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn v(x: i64, y: i64) -> LatticeVector {
    LatticeVector::from_i64(&[x, y])
}

/// Rays of a unimodular complete fan in cyclic order: a start fan with random star subdivisions.
pub fn random_unimodular_rays(rng: &mut ChaCha8Rng, max_cones: usize) -> Vec<(i64, i64)> {
    let mut rays = if rng.gen_bool(0.5) { vec![(1, 0), (0, 1), (-1, -1)] } else { vec![(1, 0), (0, 1), (-1, 0), (0, -1)] };
    let target = rng.gen_range(rays.len()..=max_cones);
    while rays.len() < target {
        let i = rng.gen_range(0..rays.len());
        let (a, b) = (rays[i], rays[(i + 1) % rays.len()]);
        rays.insert(i + 1, (a.0 + b.0, a.1 + b.1));
    }
    rays
}

pub fn det(a: (i64, i64), b: (i64, i64)) -> i64 {
    a.0 * b.1 - a.1 * b.0
}

/// Integer matrix sending `r0 -> a0`, `r1 -> a1` where `det(r0, r1) = 1`.
pub fn matrix(r0: (i64, i64), r1: (i64, i64), a0: (i64, i64), a1: (i64, i64)) -> Vec<LatticeVector> {
    assert_eq!(det(r0, r1), 1);
    // inverse of [r0 r1] (columns) is [[r1.1, -r1.0], [-r0.1, r0.0]].
    let inv = [[r1.1, -r1.0], [-r0.1, r0.0]];
    let m = |row: usize| {
        let (x0, x1) = if row == 0 { (a0.0, a1.0) } else { (a0.1, a1.1) };
        v(x0 * inv[0][0] + x1 * inv[1][0], x0 * inv[0][1] + x1 * inv[1][1])
    };
    vec![m(0), m(1)]
}

/// A map of cone complexes must send every domain cone into a codomain cone, so ray images
/// are drawn as small combinations of adjacent codomain rays and invalid draws are retried.
pub fn random_map(rng: &mut ChaCha8Rng) -> ConeComplexMap {
    loop {
        let rays = random_unimodular_rays(rng, 6);
        let k = rays.len();
        let cod_rays = random_unimodular_rays(rng, 6);
        let m = cod_rays.len();
        let images: Vec<(i64, i64)> = (0..k)
            .map(|_| {
                let j = rng.gen_range(0..m);
                let (u, w) = (cod_rays[j], cod_rays[(j + 1) % m]);
                let (a, b) = (rng.gen_range(0..=2), rng.gen_range(0..=2));
                (a * u.0 + b * w.0, a * u.1 + b * w.1)
            })
            .collect();
        // Some cones are dropped so the domain need not be complete.
        let keep: Vec<usize> = (0..k).filter(|_| rng.gen_bool(0.8)).collect();
        if keep.is_empty() {
            continue;
        }
        let ray = |i: usize| v(rays[i % k].0, rays[i % k].1);
        let domain = ConeComplex::from_cones(2, keep.iter().map(|&i| Cone::from_generators(vec![ray(i), ray(i + 1)], 2).unwrap()));
        let codomain = ConeComplex::from_cones(
            2,
            (0..m).map(|i| Cone::from_generators(vec![v(cod_rays[i].0, cod_rays[i].1), v(cod_rays[(i + 1) % m].0, cod_rays[(i + 1) % m].1)], 2).unwrap()),
        );
        let matrices = domain
            .maximal_cones()
            .iter()
            .map(|c| {
                let i = (0..k).find(|&i| c.rays().contains(&ray(i)) && c.rays().contains(&ray(i + 1))).unwrap();
                matrix(rays[i], rays[(i + 1) % k], images[i], images[(i + 1) % k])
            })
            .collect();
        if let Ok(f) = ConeComplexMap::new(domain, codomain, matrices) {
            return f;
        }
    }
}

pub fn curve(n: usize, edges: &[(usize, usize)], genera: &[u32]) -> TropicalCurve {
    let vertices = (0..n).map(|i| Vertex { id: format!("v{i}"), genus: genera[i], class: vec![] }).collect();
    TropicalCurve::new(vertices, edges.to_vec(), vec![])
}

/// Size of the cycle space: edge subsets in which every vertex has even degree.
pub fn even_subgraphs(n: usize, edges: &[(usize, usize)]) -> u64 {
    let mut count = 0;
    for mask in 0u32..(1 << edges.len()) {
        let mut deg = vec![0u32; n];
        for (i, &(a, b)) in edges.iter().enumerate() {
            if mask >> i & 1 == 1 {
                deg[a] += 1;
                deg[b] += 1;
            }
        }
        if deg.iter().all(|d| d % 2 == 0) {
            count += 1;
        }
    }
    count
}

/// Exhaustive automorphism count: every vertex permutation preserving genera and legs, times
/// every edge bijection compatible with it (loops are not flipped, so each edge maps to one
/// edge and nothing more).
pub fn brute_automorphisms(c: &TropicalCurve) -> BigInt {
    let n = c.num_vertices();
    let legs_at = |v: usize| -> Vec<&str> {
        let mut l: Vec<&str> = c.legs.iter().filter(|l| l.vertex == v).map(|l| l.label.as_str()).collect();
        l.sort();
        l
    };
    let key = |e: (usize, usize)| (e.0.min(e.1), e.0.max(e.1));
    let mut total = BigInt::from(0);
    let mut perm: Vec<usize> = (0..n).collect();
    permutohedron_each(&mut perm, &mut |p| {
        if (0..n).any(|v| c.vertices[v].genus != c.vertices[p[v]].genus || legs_at(v) != legs_at(p[v])) {
            return;
        }
        // Count bijections edge -> edge with matching endpoints by backtracking.
        fn rec(i: usize, src: &[(usize, usize)], dst: &[(usize, usize)], used: &mut [bool]) -> u64 {
            if i == src.len() {
                return 1;
            }
            let mut s = 0;
            for j in 0..dst.len() {
                if !used[j] && dst[j] == src[i] {
                    used[j] = true;
                    s += rec(i + 1, src, dst, used);
                    used[j] = false;
                }
            }
            s
        }
        let src: Vec<(usize, usize)> = c.edges.iter().map(|&(a, b)| key((p[a], p[b]))).collect();
        let dst: Vec<(usize, usize)> = c.edges.iter().map(|&e| key(e)).collect();
        total += rec(0, &src, &dst, &mut vec![false; dst.len()]);
    });
    total
}

/// Calls `f` on every permutation of `xs` (Heap's algorithm).
pub fn permutohedron_each(xs: &mut [usize], f: &mut dyn FnMut(&[usize])) {
    fn heap(k: usize, xs: &mut [usize], f: &mut dyn FnMut(&[usize])) {
        if k <= 1 {
            f(xs);
            return;
        }
        for i in 0..k {
            heap(k - 1, xs, f);
            let j = if k % 2 == 0 { i } else { 0 };
            if i + 1 < k {
                xs.swap(j, k - 1);
            }
        }
    }
    heap(xs.len(), xs, f);
}

pub fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// Complete simplicial fan in the plane from a set of directions, if consecutive rays (by angle)
/// are less than a half-turn apart.
pub fn complete_fan(raw: &[(i64, i64)]) -> Option<(ConeComplex, BTreeSet<(i64, i64)>)> {
    let mut rays: Vec<(i64, i64)> = raw
        .iter()
        .filter(|&&v| v != (0, 0))
        .map(|&(x, y)| {
            let g = gcd(x, y);
            (x / g, y / g)
        })
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    rays.sort_by(|a, b| (a.1 as f64).atan2(a.0 as f64).total_cmp(&(b.1 as f64).atan2(b.0 as f64)));
    if rays.len() < 3 {
        return None;
    }
    let k = rays.len();
    let det = |a: (i64, i64), b: (i64, i64)| a.0 * b.1 - a.1 * b.0;
    if (0..k).any(|i| det(rays[i], rays[(i + 1) % k]) <= 0) {
        return None;
    }
    let v = |r: (i64, i64)| LatticeVector::from_i64(&[r.0, r.1]);
    let cones = (0..k).map(|i| Cone::from_generators(vec![v(rays[i]), v(rays[(i + 1) % k])], 2).unwrap());
    Some((ConeComplex::from_cones(2, cones), rays.into_iter().collect()))
}

pub fn ray_set(f: &ConeComplex) -> BTreeSet<(i64, i64)> {
    f.rays()
        .iter()
        .map(|r| {
            let v = r.to_i64().unwrap();
            (v[0], v[1])
        })
        .collect()
}

/// Connected multigraph on `1..=max_v` vertices: a random spanning tree plus extra edges
/// (loops and parallels allowed), with vertex genera in `0..3`.
pub fn random_connected_graph(rng: &mut ChaCha8Rng, max_v: usize, max_e: usize) -> (usize, Vec<(usize, usize)>, Vec<u32>) {
    let n = rng.gen_range(1..=max_v);
    let mut edges: Vec<(usize, usize)> = (1..n).map(|i| (rng.gen_range(0..i), i)).collect();
    let extra = rng.gen_range(0..=max_e.saturating_sub(n - 1));
    edges.extend((0..extra).map(|_| (rng.gen_range(0..n), rng.gen_range(0..n))));
    let genera = (0..n).map(|_| rng.gen_range(0..3)).collect();
    (n, edges, genera)
}

/// A complete plane fan from random short directions, retried until complete.
pub fn random_complete_fan(rng: &mut ChaCha8Rng) -> (ConeComplex, BTreeSet<(i64, i64)>) {
    loop {
        let k = rng.gen_range(3..8);
        let raw: Vec<(i64, i64)> = (0..k).map(|_| (rng.gen_range(-5..=5), rng.gen_range(-5..=5))).collect();
        if let Some(f) = complete_fan(&raw) {
            return f;
        }
    }
}
