//! Plain-text artifacts: CSV tables and 2D SVG plots.
//!
//! Every table starts with `#` comment lines carrying the library version
//! and the caller's resolved configuration. Rationals are printed exactly
//! (`p/q`) next to a decimal rounded to [`DECIMAL_PLACES`] places.

use std::fmt::Write;

use crate::asymptotics::DensityReport;
use crate::cap::{RegionBoundary, ShapeSpec};
use crate::geometry::rational::{format_decimal, format_exact, to_f64};
use crate::geometry::{Point, Polytope, RationalScalar};
use crate::koszul::WeightCloud;

pub const DECIMAL_PLACES: usize = 12;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// `# key: value` lines, preceded by the version line.
pub fn comment_header(config: &[(String, String)]) -> String {
    let mut out = format!("# toric-syzygy {VERSION}\n");
    for (k, v) in config {
        writeln!(out, "# {k}: {v}").unwrap();
    }
    out
}

fn dec(x: &RationalScalar) -> String {
    format_decimal(x, DECIMAL_PLACES)
}

fn fdec(x: f64) -> String {
    let s = format!("{x:.DECIMAL_PLACES$}");
    if s.trim_start_matches('-').chars().all(|c| c == '0' || c == '.') {
        s.trim_start_matches('-').to_string()
    } else {
        s
    }
}

/// Header comments followed by a CSV table.
fn table(header: &str, cols: &[String], rows: &[Vec<String>]) -> String {
    let mut w = csv::WriterBuilder::new().flexible(false).from_writer(Vec::new());
    w.write_record(cols).expect("in-memory write");
    for row in rows {
        w.write_record(row).expect("in-memory write");
    }
    let body = String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 fields");
    format!("{header}{body}")
}

fn numbered(prefix: &str, n: usize) -> Vec<String> {
    (1..=n).map(|k| format!("{prefix}_{k}")).collect()
}

/// Columns `p,q,d,w_1..w_n,multiplicity,nw_1..nw_n,nw_1_dec..nw_n_dec`,
/// one row per weight, clouds in the given order. The normalized columns are
/// empty when `p = q = 0`.
pub fn cloud_csv(header: &str, clouds: &[WeightCloud]) -> String {
    let n = clouds.first().map_or(0, |c| c.dim);
    let mut cols = vec!["p".to_string(), "q".into(), "d".into()];
    cols.extend(numbered("w", n));
    cols.push("multiplicity".into());
    cols.extend(numbered("nw", n));
    cols.extend(numbered("nw", n).into_iter().map(|c| c + "_dec"));
    let mut rows = Vec::new();
    for c in clouds {
        for (w, m) in &c.entries {
            let mut row = vec![c.p.to_string(), c.q.to_string(), c.d.to_string()];
            row.extend(w.iter().map(i64::to_string));
            row.push(m.to_string());
            match c.normalize(w) {
                Some(x) => {
                    row.extend(x.0.iter().map(format_exact));
                    row.extend(x.0.iter().map(dec));
                }
                None => row.extend(std::iter::repeat(String::new()).take(2 * n)),
            }
            rows.push(row);
        }
    }
    table(header, &cols, &rows)
}

/// Columns `theta,v_1..v_n,c_v,xv_1..xv_n` (`theta` only in 2D), decimals
/// only: levels and cap centroids have long dyadic denominators.
pub fn region_csv(header: &str, region: &RegionBoundary) -> String {
    let n = region.samples.first().map_or(0, |s| s.point.dim());
    let mut cols = Vec::new();
    if n == 2 {
        cols.push("theta".to_string());
    }
    cols.extend(numbered("v", n));
    cols.push("c_v".into());
    cols.extend(numbered("xv", n));
    let rows: Vec<Vec<String>> = region
        .samples
        .iter()
        .map(|s| {
            let mut row = Vec::new();
            if n == 2 {
                row.push(fdec(s.direction.angle()));
            }
            row.extend(s.direction.unit.iter().map(|&c| fdec(c)));
            row.push(s.level.as_ref().map(dec).unwrap_or_default());
            row.extend(s.point.0.iter().map(dec));
            row
        })
        .collect();
    table(header, &cols, &rows)
}

/// One row per sample: `sample,x_1..x_n,nearest_1..nearest_n,p,d,distance`,
/// after comment lines with the covering radius and the weight count.
pub fn density_csv(header: &str, report: &DensityReport, dim: usize) -> String {
    let mut cols = vec!["sample".to_string()];
    cols.extend(numbered("x", dim));
    cols.extend(numbered("nearest", dim));
    cols.extend(["p".to_string(), "d".into(), "distance".into()]);
    let mut head = header.to_string();
    match report.covering_radius {
        Some(r) => writeln!(head, "# covering_radius: {}", fdec(r)).unwrap(),
        None => head.push_str("# covering_radius: none\n"),
    }
    writeln!(head, "# weights: {}", report.weights.len()).unwrap();
    let rows: Vec<Vec<String>> = report
        .samples
        .iter()
        .enumerate()
        .map(|(i, s)| {
            let mut row = vec![i.to_string()];
            row.extend(s.x.0.iter().map(dec));
            match s.nearest.map(|k| &report.weights[k]) {
                Some(w) => {
                    row.extend(w.point.0.iter().map(format_exact));
                    row.push(w.p.to_string());
                    row.push(w.d.to_string());
                    row.push(fdec(s.distance));
                }
                None => row.extend(std::iter::repeat(String::new()).take(dim + 3)),
            }
            row
        })
        .collect();
    table(&head, &cols, &rows)
}

/// Columns `center_1..center_n,side,side_dec`, after comment lines with the
/// exact volume and center of mass.
pub fn shape_csv(header: &str, shape: &ShapeSpec) -> String {
    let n = shape.center_of_mass.dim();
    let mut head = header.to_string();
    writeln!(head, "# volume: {} ({})", format_exact(&shape.volume), dec(&shape.volume)).unwrap();
    let com: Vec<String> = shape.center_of_mass.0.iter().map(dec).collect();
    writeln!(head, "# center_of_mass: {}", com.join(",")).unwrap();
    let mut cols = numbered("center", n);
    cols.extend(["side".to_string(), "side_dec".into()]);
    let rows: Vec<Vec<String>> = shape
        .cubes
        .iter()
        .map(|c| {
            let mut row: Vec<String> = c.center.0.iter().map(format_exact).collect();
            row.push(format_exact(&c.side));
            row.push(dec(&c.side));
            row
        })
        .collect();
    table(&head, &cols, &rows)
}

const CANVAS: f64 = 480.0;
const MARGIN: f64 = 24.0;

/// Affine map from the bounding box of a 2D polytope to SVG coordinates
/// (y pointing up on the page).
struct Frame {
    lo: [f64; 2],
    scale: f64,
}

impl Frame {
    fn new(delta: &Polytope) -> Self {
        let pts: Vec<Vec<f64>> = delta.vertices().iter().map(Point::to_f64).collect();
        let lo = [0, 1].map(|k| pts.iter().map(|p| p[k]).fold(f64::INFINITY, f64::min));
        let hi = [0, 1].map(|k| pts.iter().map(|p| p[k]).fold(f64::NEG_INFINITY, f64::max));
        let extent = (hi[0] - lo[0]).max(hi[1] - lo[1]).max(f64::MIN_POSITIVE);
        Frame { lo, scale: (CANVAS - 2.0 * MARGIN) / extent }
    }

    fn map(&self, p: &[f64]) -> (f64, f64) {
        let x = MARGIN + (p[0] - self.lo[0]) * self.scale;
        let y = CANVAS - MARGIN - (p[1] - self.lo[1]) * self.scale;
        (x, y)
    }

    fn path(&self, pts: &[Vec<f64>]) -> String {
        pts.iter()
            .map(|p| {
                let (x, y) = self.map(p);
                format!("{x:.3},{y:.3}")
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

fn svg_open(title: &str) -> String {
    let mut out = String::new();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{CANVAS}" height="{CANVAS}" viewBox="0 0 {CANVAS} {CANVAS}">"#
    )
    .unwrap();
    writeln!(out, "<title>{title}</title>").unwrap();
    writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#).unwrap();
    out
}

fn outline(frame: &Frame, delta: &Polytope) -> String {
    let pts: Vec<Vec<f64>> = delta.vertices().iter().map(Point::to_f64).collect();
    format!(r#"<polygon points="{}" fill="none" stroke="black" stroke-width="1.5"/>"#, frame.path(&pts)) + "\n"
}

/// Scatter of planar points inside the outline of Δ. `None` unless Δ is 2D.
pub fn scatter_svg(delta: &Polytope, points: &[Vec<f64>], title: &str) -> Option<String> {
    if delta.dim() != 2 {
        return None;
    }
    let frame = Frame::new(delta);
    let mut out = svg_open(title);
    out.push_str(&outline(&frame, delta));
    for p in points {
        let (x, y) = frame.map(p);
        writeln!(out, r#"<circle cx="{x:.3}" cy="{y:.3}" r="2" fill="steelblue"/>"#).unwrap();
    }
    out.push_str("</svg>\n");
    Some(out)
}

/// Outline of Δ with the sampled boundary of `Δ(a)`. `None` unless Δ is 2D.
pub fn region_svg(delta: &Polytope, region: &RegionBoundary, title: &str) -> Option<String> {
    if delta.dim() != 2 {
        return None;
    }
    let frame = Frame::new(delta);
    let mut out = svg_open(title);
    out.push_str(&outline(&frame, delta));
    let pts: Vec<Vec<f64>> = region.points().map(|p| p.0.iter().map(to_f64).collect()).collect();
    let tag = if region.closed { "polygon" } else { "polyline" };
    writeln!(out, r#"<{tag} points="{}" fill="none" stroke="firebrick" stroke-width="1"/>"#, frame.path(&pts)).unwrap();
    if let [only] = pts.as_slice() {
        let (x, y) = frame.map(only);
        writeln!(out, r#"<circle cx="{x:.3}" cy="{y:.3}" r="3" fill="firebrick"/>"#).unwrap();
    }
    out.push_str("</svg>\n");
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::builtin;
    use crate::koszul::{kpq_weights, SyzygyInput, SyzygyOptions};

    #[test]
    fn conic_row() {
        let input = SyzygyInput::new(builtin("segment").unwrap(), 2, 1, 1).unwrap();
        let cloud = kpq_weights(&input, &SyzygyOptions::default()).unwrap();
        let csv = cloud_csv(&comment_header(&[("command".into(), "syzygy".into())]), &[cloud]);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], format!("# toric-syzygy {VERSION}"));
        assert_eq!(lines[1], "# command: syzygy");
        assert_eq!(lines[2], "p,q,d,w_1,multiplicity,nw_1,nw_1_dec");
        assert_eq!(lines[3], "1,1,2,2,1,1/2,0.500000000000");
    }

    #[test]
    fn k00_has_blank_normalization() {
        let input = SyzygyInput::new(builtin("segment").unwrap(), 1, 0, 0).unwrap();
        let cloud = kpq_weights(&input, &SyzygyOptions::default()).unwrap();
        let csv = cloud_csv("", &[cloud]);
        assert_eq!(csv.lines().nth(1), Some("0,0,1,0,1,,"));
    }

    #[test]
    fn float_formatting() {
        assert_eq!(fdec(-1e-20), "0.000000000000");
        assert_eq!(fdec(0.25), "0.250000000000");
    }

    #[test]
    fn svg_only_in_the_plane() {
        let sq = builtin("square").unwrap();
        let svg = scatter_svg(&sq, &[vec![0.5, 0.5]], "t").unwrap();
        assert!(svg.contains("<circle cx=\"240.000\" cy=\"240.000\""));
        assert!(scatter_svg(&builtin("cube").unwrap(), &[], "t").is_none());
    }
}
