use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use troplog::counting::{count_through_points, count_with_reseed, PointConfiguration};
use troplog::degeneration::{enumerate_rigid_types, pair_evaluation_product, DegenerationSetup};
use troplog::expansions::{validate_point_decomposition, PlaneDecomposition, PolyhedralDecomposition};
use troplog::lattice_geom::{common_refinement, quotient_fan, ConeComplex};
use troplog::num::format_rational;
use troplog::tropical_maps::{flatten, is_flat_map, ConeComplexMap, MapComplexJson, MapJson, TropicalMap};
use troplog::{Error, LatticeVector, Rational};

mod svg;

#[derive(Parser)]
#[command(name = "troplog", version, about = "Tropical curve counts, rigid types and cone complex tools")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
    Svg,
}

#[derive(Subcommand)]
enum Cmd {
    /// Count plane tropical curves through generic points.
    Count {
        #[arg(long)]
        degree: u32,
        #[arg(long, default_value_t = 0)]
        genus: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Point configuration file; disables reseeding.
        #[arg(long)]
        points: Option<PathBuf>,
        /// Number of reseeds after a non-generic draw.
        #[arg(long, default_value_t = 5)]
        max_iter: usize,
        #[arg(long)]
        emit_solutions: bool,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Rigid types and degeneration coefficients of a setup file.
    Rigid {
        setup: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Flatten a map of cone complexes.
    Flatten {
        map: PathBuf,
        #[arg(long, default_value_t = 16)]
        max_iter: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Quotient of a fan by a one-parameter subgroup.
    QuotientFan {
        fan: PathBuf,
        /// Direction as comma-separated integers.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        direction: Vec<i64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Common refinement of two complexes with the same support.
    Refine {
        a: PathBuf,
        b: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Static SVG of a plane tropical curve, a count report or a decomposition of a dilated triangle.
    Plot {
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a tropical map, a decomposition, or points against a plane decomposition.
    Validate {
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> anyhow::Result<T> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

/// Writes to `out` through a temporary file and a rename, or to stdout.
fn emit(out: Option<&Path>, text: &str) -> anyhow::Result<()> {
    match out {
        Some(p) => {
            let tmp = p.with_extension("tmp~");
            std::fs::write(&tmp, text).with_context(|| format!("writing {}", tmp.display()))?;
            std::fs::rename(&tmp, p).with_context(|| format!("writing {}", p.display()))?;
        }
        None => {
            use std::io::Write;
            let mut o = std::io::stdout().lock();
            match writeln!(o, "{text}").and_then(|_| o.flush()) {
                Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => return Err(e.into()),
                _ => {}
            }
        }
    }
    Ok(())
}

fn to_json<T: Serialize>(v: &T) -> anyhow::Result<String> {
    Ok(serde_json::to_string_pretty(v)?)
}

fn run(cli: Cli) -> anyhow::Result<()> {
    match cli.cmd {
        Cmd::Count { degree, genus, seed, points, max_iter, emit_solutions, out, format } => {
            let report = match points {
                Some(p) => count_through_points(degree, genus, &read_json::<PointConfiguration>(&p)?)?,
                None => count_with_reseed(degree, genus, seed, max_iter)?,
            };
            let text = match format {
                Format::Text => {
                    let mut s = format!("degree {degree} genus {genus} count {}", report.count);
                    for sol in &report.solutions {
                        s.push_str(&format!("\n  type {} multiplicity {}", sol.type_id, sol.multiplicity));
                    }
                    s
                }
                Format::Json => to_json(&report.to_json(emit_solutions))?,
                Format::Svg => svg::count_report(&report.to_json(true))?,
            };
            emit(out.as_deref(), &text)
        }
        Cmd::Rigid { setup, out, format } => {
            let setup: DegenerationSetup = read_json(&setup)?;
            let data = enumerate_rigid_types(&setup)?;
            let mut total = Rational::from_integer(0.into());
            let mut items = Vec::new();
            for d in &data {
                pair_evaluation_product(d)?;
                total += &d.coefficient;
                items.push(d.to_json());
            }
            let text = match format {
                Format::Text => {
                    let mut s = format!("{} rigid data, total coefficient {}", data.len(), format_rational(&total));
                    for (i, d) in data.iter().enumerate() {
                        s.push_str(&format!("\n  #{i} coefficient {} aut {}", format_rational(&d.coefficient), d.aut_order));
                    }
                    s
                }
                _ => to_json(&json!({ "count": data.len(), "total_coefficient": format_rational(&total), "data": items }))?,
            };
            emit(out.as_deref(), &text)
        }
        Cmd::Flatten { map, max_iter, out } => {
            let j: MapComplexJson = read_json(&map)?;
            let f = ConeComplexMap::from_json(&j)?;
            let r = flatten(&f, max_iter)?;
            let v = json!({
                "map": r.map.to_json(),
                "iterations": r.iterations,
                "domain_subdivided": r.domain_subdivided,
                "codomain_subdivided": r.codomain_subdivided,
                "flat": is_flat_map(&r.map),
            });
            emit(out.as_deref(), &to_json(&v)?)
        }
        Cmd::QuotientFan { fan, direction, out } => {
            let fan: ConeComplex = read_json(&fan)?;
            if direction.is_empty() {
                bail!("--direction is required");
            }
            let q = quotient_fan(&fan, &LatticeVector::from_i64(&direction))?;
            emit(out.as_deref(), &to_json(&q.to_json())?)
        }
        Cmd::Refine { a, b, out } => {
            let (a, b): (ConeComplex, ConeComplex) = (read_json(&a)?, read_json(&b)?);
            emit(out.as_deref(), &to_json(&common_refinement(&a, &b)?.to_json())?)
        }
        Cmd::Plot { input, out } => {
            let v: Value = read_json(&input)?;
            let text = if v.get("per_type").is_some() {
                svg::count_report(&serde_json::from_value(v)?)?
            } else if v.get("slopes").is_some() {
                if let Some(r) = v.get("rank").and_then(Value::as_u64).filter(|&r| r != 2) {
                    return Err(Error::Unplottable(format!("map has rank {r}, need 2")).into());
                }
                let j: MapJson = serde_json::from_value(v)?;
                svg::plane_map(&TropicalMap::from_json(&j)?)?
            } else if v.get("cells").is_some() && v.get("dilation").is_some() {
                let p: PolyhedralDecomposition = serde_json::from_value(v)?;
                p.validate()?;
                svg::decomposition(&p)?
            } else {
                return Err(Error::Unplottable("unrecognised input".into()).into());
            };
            emit(out.as_deref(), &text)
        }
        Cmd::Validate { input, out } => {
            let v: Value = read_json(&input)?;
            let report = validate(v)?;
            emit(out.as_deref(), &to_json(&report)?)
        }
    }
}

fn validate(v: Value) -> anyhow::Result<Value> {
    if let (Some(d), Some(p)) = (v.get("decomposition"), v.get("points")) {
        let d: PlaneDecomposition = serde_json::from_value(d.clone())?;
        let pts: Vec<LatticeVector> = serde_json::from_value(p.clone())?;
        let rep = validate_point_decomposition(&d, &pts);
        let ok = rep.points_are_vertices && rep.rays_parallel && rep.cone_smooth;
        return Ok(json!({ "kind": "point_decomposition", "ok": ok, "report": rep }));
    }
    if v.get("slopes").is_some() {
        let j: MapJson = serde_json::from_value(v)?;
        let m = TropicalMap::from_json(&j)?;
        let (cont, bal) = (m.check_continuity(), m.ty.check_balancing(None));
        return Ok(json!({
            "kind": "map",
            "ok": cont.ok && bal.ok,
            "report": { "continuity": cont.ok, "balancing": bal.ok, "genus": m.ty.curve.genus()? },
        }));
    }
    if v.get("cells").is_some() && v.get("dilation").is_some() {
        let p: PolyhedralDecomposition = serde_json::from_value(v)?;
        let res = p.validate();
        return Ok(json!({
            "kind": "decomposition",
            "ok": res.is_ok(),
            "report": { "error": res.err().map(|e| e.to_string()) },
        }));
    }
    Err(Error::InvalidInput("unrecognised input".into()).into())
}

fn exit_code(e: &anyhow::Error) -> u8 {
    match e.downcast_ref::<Error>() {
        Some(Error::NonGenericConfiguration(_)) => 2,
        Some(Error::IterationLimit(_)) => 3,
        Some(Error::Unplottable(_)) => 4,
        _ => 1,
    }
}

fn main() -> ExitCode {
    if let Some(n) = std::env::var("TROPLOG_THREADS").ok().and_then(|s| s.parse::<usize>().ok()) {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
