//! Acceptance suite: one line per criterion, nonzero exit if any fails.
//!
//! The quartic count is slow and only runs with `TROPLOG_EXTENDED=1`.

mod common;

use std::time::{Duration, Instant};

use common::{brute_automorphisms, curve, even_subgraphs, random_complete_fan, random_connected_graph, random_map};
use num_bigint::BigInt;
use num_traits::Signed;
use rand::Rng;
use troplog::counting::{count_with_reseed, kontsevich_oracle};
use troplog::degeneration::{enumerate_rigid_types, pair_evaluation_product, DegenerationSetup};
use troplog::expansions::{junli_decomposition, junli_expansion, specialization_leq};
use troplog::lattice_geom::{common_refinement, projective_space_fan, quotient_fan};
use troplog::tropical_curves::{ExtraLabels, Leg};
use troplog::tropical_maps::{flatten, is_flat_map, ConeComplexMap, MapComplexJson};
use troplog::LatticeVector;

// Time limits, pinned.
const LINE_LIMIT: Duration = Duration::from_secs(1);
const CONIC_LIMIT: Duration = Duration::from_secs(10);
const CUBIC_LIMIT: Duration = Duration::from_secs(120);
const QUARTIC_LIMIT: Duration = Duration::from_secs(30 * 60);
const PROPERTY_LIMIT: Duration = Duration::from_secs(60);

const SEEDS: [u64; 3] = [1, 2, 3];
const MAX_RESEEDS: usize = 5;

type Outcome = Result<String, String>;

fn check(cond: bool, ok: String, bad: String) -> Outcome {
    if cond {
        Ok(ok)
    } else {
        Err(bad)
    }
}

/// Counts for every seed with the slowest single run.
fn counts(d: u32, g: u32) -> Result<(Vec<BigInt>, Duration), String> {
    let mut out = Vec::new();
    let mut slowest = Duration::ZERO;
    for s in SEEDS {
        let t = Instant::now();
        let r = count_with_reseed(d, g, s, MAX_RESEEDS).map_err(|e| format!("seed {s}: {e}"))?;
        slowest = slowest.max(t.elapsed());
        out.push(r.count);
    }
    Ok((out, slowest))
}

fn plane_count(d: u32, expected: BigInt, limit: Duration) -> Outcome {
    let (c, t) = counts(d, 0)?;
    check(
        c.iter().all(|x| *x == expected) && t < limit,
        format!("counts {c:?} over seeds {SEEDS:?}, slowest {t:.2?}"),
        format!("counts {c:?}, expected {expected}, slowest {t:.2?} (limit {limit:?})"),
    )
}

fn c4() -> Outcome {
    if std::env::var("TROPLOG_EXTENDED").as_deref() != Ok("1") {
        return Ok("skipped (extended suite; set TROPLOG_EXTENDED=1)".into());
    }
    let t = Instant::now();
    let r = count_with_reseed(4, 0, SEEDS[0], MAX_RESEEDS).map_err(|e| e.to_string())?;
    let t = t.elapsed();
    let k = kontsevich_oracle(4);
    check(r.count == k && t < QUARTIC_LIMIT, format!("count {} = oracle, {t:.1?}", r.count), format!("count {}, oracle {k}, {t:.1?}", r.count))
}

fn c5() -> Outcome {
    let t = Instant::now();
    let r = count_with_reseed(3, 1, SEEDS[0], MAX_RESEEDS).map_err(|e| e.to_string())?;
    check(r.count == BigInt::from(1), format!("count 1, {:.2?}", t.elapsed()), format!("count {}", r.count))
}

fn c6() -> Outcome {
    let mut lines = Vec::new();
    for d in 1..=3 {
        let (c, _) = counts(d, 0)?;
        if c.iter().any(|x| *x != c[0]) {
            return Err(format!("degree {d}: counts {c:?} differ across seeds"));
        }
        lines.push(format!("d={d}: {}", c[0]));
    }
    Ok(format!("{} on seeds {SEEDS:?}", lines.join(", ")))
}

fn c7() -> Outcome {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/conic_setup.json");
    let setup: DegenerationSetup = serde_json::from_str(&std::fs::read_to_string(path).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
    let data = enumerate_rigid_types(&setup).map_err(|e| e.to_string())?;
    if data.len() != 1 {
        return Err(format!("{} rigid data", data.len()));
    }
    let g = &data[0];
    let non_contracted = g.ty.slopes.iter().filter(|s| !s.is_zero()).count();
    let computed = g.edge_multiplicities.iter().flatten().count();
    if computed != non_contracted {
        return Err(format!("{computed} of {non_contracted} edge multiplicities"));
    }
    pair_evaluation_product(g).map_err(|e| format!("gluing: {e}"))?;
    check(g.coefficient.is_positive(), format!("1 datum, coefficient {}", g.coefficient), format!("coefficient {}", g.coefficient))
}

fn c8() -> Outcome {
    for k in 0..=10 {
        let e = junli_expansion(k);
        let rank = e.automorphism_torus_rank().map_err(|e| e.to_string())?;
        if e.components.len() != k + 2 || e.double_loci.len() != k + 1 || rank != k {
            return Err(format!("k={k}: {} components, {} double loci, torus rank {rank}", e.components.len(), e.double_loci.len()));
        }
    }
    for i in 0..=5 {
        for j in 0..=5 {
            let leq = specialization_leq(&junli_decomposition(i), &junli_decomposition(j)).map_err(|e| e.to_string())?;
            if leq != (i >= j) {
                return Err(format!("specialization {i} <= {j} is {leq}"));
            }
        }
    }
    Ok("k <= 10 shapes; specialization order exhaustive for k <= 5".into())
}

fn c9() -> Outcome {
    let q = quotient_fan(&projective_space_fan(2), &LatticeVector::from_i64(&[1, 1])).map_err(|e| e.to_string())?;
    let ok = q.rank() == 1 && q.dim() == 1 && q.rays().len() == 2 && q.is_complete();
    check(ok, format!("rank 1, rays {:?}", q.rays().iter().map(|r| r.to_string()).collect::<Vec<_>>()), format!("rank {}, dim {}, {} rays", q.rank(), q.dim(), q.rays().len()))
}

fn c10() -> Outcome {
    let mut rng = common::rng(2024);
    for n in 0..50 {
        let f = random_map(&mut rng);
        if f.domain.maximal_cones().len() > 6 {
            return Err(format!("map {n} has too many cones"));
        }
        let r = flatten(&f, 16).map_err(|e| format!("map {n}: {e}"))?;
        if !is_flat_map(&r.map) {
            return Err(format!("map {n} not flat"));
        }
    }
    for name in ["eval_point.json", "eval_weight_two.json", "eval_chain.json"] {
        let path = format!("{}/fixtures/{name}", env!("CARGO_MANIFEST_DIR"));
        let j: MapComplexJson = serde_json::from_str(&std::fs::read_to_string(path).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        let f = ConeComplexMap::from_json(&j).map_err(|e| e.to_string())?;
        let r = flatten(&f, 8).map_err(|e| format!("{name}: {e}"))?;
        if r.domain_subdivided || !is_flat_map(&r.map) {
            return Err(format!("{name}: domain subdivided {}", r.domain_subdivided));
        }
    }
    Ok("50 random maps flat; evaluation fixtures need no domain subdivision".into())
}

fn c11() -> Outcome {
    let t = Instant::now();
    let mut rng = common::rng(11);
    for i in 0..200 {
        let (n, edges, genera) = random_connected_graph(&mut rng, 8, 12);
        let c = curve(n, &edges, &genera);
        let b1 = even_subgraphs(n, &edges).trailing_zeros() as u64;
        let expect = b1 + genera.iter().map(|&g| u64::from(g)).sum::<u64>();
        if c.genus().map_err(|e| e.to_string())? != expect {
            return Err(format!("genus of graph {i}"));
        }
    }
    for i in 0..50 {
        let (a, _) = random_complete_fan(&mut rng);
        let (b, _) = random_complete_fan(&mut rng);
        let aa = common_refinement(&a, &a).map_err(|e| e.to_string())?;
        let ab = common_refinement(&a, &b).map_err(|e| e.to_string())?;
        let ba = common_refinement(&b, &a).map_err(|e| e.to_string())?;
        if aa != a || ab != ba {
            return Err(format!("refinement of fan pair {i}"));
        }
    }
    for i in 0..100 {
        let (n, edges, genera) = random_connected_graph(&mut rng, 7, 10);
        let mut c = curve(n, &edges, &genera);
        let legs = rng.gen_range(0..3);
        c.legs = (0..legs).map(|_| Leg { vertex: rng.gen_range(0..n), label: format!("l{}", rng.gen_range(0..2)) }).collect();
        if c.automorphism_group_order(&ExtraLabels::default()) != brute_automorphisms(&c) {
            return Err(format!("automorphisms of graph {i}"));
        }
    }
    let t = t.elapsed();
    check(t < PROPERTY_LIMIT, format!("genus 200, refinement 50, automorphisms 100 in {t:.2?}"), format!("took {t:.2?}"))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 11] = [
        ("line count", || plane_count(1, BigInt::from(1), LINE_LIMIT)),
        ("conic count", || plane_count(2, BigInt::from(1), CONIC_LIMIT)),
        ("cubic count", || plane_count(3, kontsevich_oracle(3), CUBIC_LIMIT)),
        ("quartic count", c4),
        ("genus-one cubic", c5),
        ("configuration invariance", c6),
        ("degeneration bookkeeping", c7),
        ("chain expansions", c8),
        ("quotient fan", c9),
        ("flattening", c10),
        ("property suites", c11),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let outcome = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(msg) => println!("criterion {:>2} {name}: PASS  {msg}", i + 1),
            Err(msg) => {
                failed += 1;
                println!("criterion {:>2} {name}: FAIL  {msg}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
