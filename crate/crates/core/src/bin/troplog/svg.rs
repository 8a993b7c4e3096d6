//! Deterministic static SVG output: fixed canvas, fixed styles, fixed number formatting.

use std::fmt::Write;

use num_traits::ToPrimitive;

use troplog::counting::CountReportJson;
use troplog::expansions::PolyhedralDecomposition;
use troplog::tropical_maps::TropicalMap;
use troplog::{Error, Rational};

const SIZE: f64 = 600.0;
const MARGIN: f64 = 40.0;
const PALETTE: [&str; 6] = ["#1f4e79", "#a23b2a", "#2e7d32", "#6a1b9a", "#ef6c00", "#00838f"];

fn f(x: &Rational) -> f64 {
    x.to_f64().unwrap_or(0.0)
}

struct Frame {
    min: [f64; 2],
    scale: f64,
}

impl Frame {
    fn fit(pts: &[[f64; 2]]) -> Frame {
        let mut min = [f64::INFINITY; 2];
        let mut max = [f64::NEG_INFINITY; 2];
        for p in pts {
            for i in 0..2 {
                min[i] = min[i].min(p[i]);
                max[i] = max[i].max(p[i]);
            }
        }
        if pts.is_empty() {
            min = [0.0, 0.0];
            max = [1.0, 1.0];
        }
        let span = (max[0] - min[0]).max(max[1] - min[1]).max(1e-9);
        Frame { min, scale: (SIZE - 2.0 * MARGIN) / span }
    }

    fn map(&self, p: [f64; 2]) -> (f64, f64) {
        (MARGIN + (p[0] - self.min[0]) * self.scale, SIZE - MARGIN - (p[1] - self.min[1]) * self.scale)
    }
}

fn header() -> String {
    format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{SIZE}\" height=\"{SIZE}\" viewBox=\"0 0 {SIZE} {SIZE}\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
    )
}

fn line(s: &mut String, a: (f64, f64), b: (f64, f64), color: &str, width: f64) {
    let _ = writeln!(
        s,
        "<line x1=\"{:.2}\" y1=\"{:.2}\" x2=\"{:.2}\" y2=\"{:.2}\" stroke=\"{color}\" stroke-width=\"{width:.1}\" stroke-linecap=\"round\"/>",
        a.0, a.1, b.0, b.1
    );
}

fn dot(s: &mut String, p: (f64, f64), r: f64, color: &str) {
    let _ = writeln!(s, "<circle cx=\"{:.2}\" cy=\"{:.2}\" r=\"{r:.1}\" fill=\"{color}\"/>", p.0, p.1);
}

fn check_plane(m: &TropicalMap) -> Result<(), Error> {
    if m.ty.rank != 2 {
        return Err(Error::Unplottable(format!("map has rank {}, need 2", m.ty.rank)));
    }
    Ok(())
}

fn extent(maps: &[&TropicalMap]) -> (Vec<[f64; 2]>, f64) {
    let pts: Vec<[f64; 2]> = maps.iter().flat_map(|m| m.positions.iter().map(|p| [f(&p[0]), f(&p[1])])).collect();
    let fr = Frame::fit(&pts);
    let ray = 0.15 * (SIZE - 2.0 * MARGIN) / fr.scale;
    (pts, ray)
}

fn draw_map(s: &mut String, m: &TropicalMap, fr: &Frame, ray: f64, color: &str) {
    let pos = |v: usize| [f(&m.positions[v][0]), f(&m.positions[v][1])];
    for (e, &(a, b)) in m.ty.curve.edges.iter().enumerate() {
        let w = m.ty.slopes[e].content().to_f64().unwrap_or(1.0);
        line(s, fr.map(pos(a)), fr.map(pos(b)), color, 1.5 * w);
    }
    for (l, leg) in m.ty.curve.legs.iter().enumerate() {
        let sl = &m.ty.leg_slopes[l];
        if sl.is_zero() {
            continue;
        }
        let (w, u) = sl.primitive();
        let (ux, uy) = (u[0].to_f64().unwrap_or(0.0), u[1].to_f64().unwrap_or(0.0));
        let n = (ux * ux + uy * uy).sqrt();
        let p = pos(leg.vertex);
        let q = [p[0] + ray * ux / n, p[1] + ray * uy / n];
        line(s, fr.map(p), fr.map(q), color, 1.5 * w.to_f64().unwrap_or(1.0));
    }
    for (l, leg) in m.ty.curve.legs.iter().enumerate() {
        if m.ty.leg_slopes[l].is_zero() {
            dot(s, fr.map(pos(leg.vertex)), 4.0, "black");
        }
    }
}

/// One plane tropical curve; marked points (contracted legs) drawn as dots.
pub fn plane_map(m: &TropicalMap) -> Result<String, Error> {
    check_plane(m)?;
    let (pts, ray) = extent(&[m]);
    let mut fr_pts = pts.clone();
    for p in &pts {
        fr_pts.push([p[0] + ray, p[1] + ray]);
        fr_pts.push([p[0] - ray, p[1] - ray]);
    }
    let fr = Frame::fit(&fr_pts);
    let mut s = header();
    draw_map(&mut s, m, &fr, ray, PALETTE[0]);
    s.push_str("</svg>\n");
    Ok(s)
}

/// All solutions of a count report, overlaid.
pub fn count_report(r: &CountReportJson) -> anyhow::Result<String> {
    let maps = r
        .per_type
        .iter()
        .map(|t| {
            let j = t.solution.as_ref().ok_or_else(|| Error::Unplottable("report has no solutions; rerun with --emit-solutions".into()))?;
            TropicalMap::from_json(j).map_err(anyhow::Error::from)
        })
        .collect::<anyhow::Result<Vec<_>>>()?;
    if maps.is_empty() {
        return Err(Error::Unplottable("report has no solutions".into()).into());
    }
    for m in &maps {
        check_plane(m)?;
    }
    let refs: Vec<&TropicalMap> = maps.iter().collect();
    let (pts, ray) = extent(&refs);
    let mut fr_pts = pts.clone();
    for p in &pts {
        fr_pts.push([p[0] + ray, p[1] + ray]);
        fr_pts.push([p[0] - ray, p[1] - ray]);
    }
    let fr = Frame::fit(&fr_pts);
    let mut s = header();
    for (i, m) in maps.iter().enumerate() {
        draw_map(&mut s, m, &fr, ray, PALETTE[i % PALETTE.len()]);
    }
    s.push_str("</svg>\n");
    Ok(s)
}

/// A decomposition of a dilated triangle, in barycentric projection.
pub fn decomposition(p: &PolyhedralDecomposition) -> anyhow::Result<String> {
    if p.r != 3 {
        return Err(Error::Unplottable(format!("decomposition of a simplex in R^{}, need R^3", p.r)).into());
    }
    let l = f(&p.dilation);
    let proj = |v: &[Rational]| -> [f64; 2] {
        let (b, c) = (f(&v[1]) / l, f(&v[2]) / l);
        [b + c / 2.0, c * 3f64.sqrt() / 2.0]
    };
    let pts: Vec<[f64; 2]> = p.vertices.iter().map(|v| proj(v)).collect();
    let fr = Frame::fit(&pts);
    let mut s = header();
    for cell in &p.cells {
        let cx = cell.iter().map(|&i| pts[i][0]).sum::<f64>() / cell.len() as f64;
        let cy = cell.iter().map(|&i| pts[i][1]).sum::<f64>() / cell.len() as f64;
        let mut ring = cell.clone();
        ring.sort_by(|&a, &b| {
            let ta = (pts[a][1] - cy).atan2(pts[a][0] - cx);
            let tb = (pts[b][1] - cy).atan2(pts[b][0] - cx);
            ta.total_cmp(&tb).then(a.cmp(&b))
        });
        let coords: Vec<String> = ring
            .iter()
            .map(|&i| {
                let (x, y) = fr.map(pts[i]);
                format!("{x:.2},{y:.2}")
            })
            .collect();
        let _ = writeln!(s, "<polygon points=\"{}\" fill=\"#e8eef5\" stroke=\"{}\" stroke-width=\"1.5\"/>", coords.join(" "), PALETTE[0]);
    }
    for q in &pts {
        dot(&mut s, fr.map(*q), 3.0, "black");
    }
    s.push_str("</svg>\n");
    Ok(s)
}
