//! Polytope text format and named builtins.
//!
//! ```text
//! dim 2
//! v 0 0
//! v 1 0
//! v 0 1/2
//! h -1 0 0
//! ```
//!
//! `v` lines are vertices, `h a_1 ... a_n b` lines are facets `a · x <= b`.
//! When no `h` line is present the facets are derived from the vertices.
//! Blank lines and `#` comments are ignored.

use std::fmt::Write as _;

use super::rational::{format_exact, parse};
use super::{GeometryError, HalfSpace, Point, Polytope};

pub const BUILTIN_NAMES: &[&str] = &["segment", "square", "simplex2", "simplex3", "cube"];

/// Named polytopes: `segment` is `[0,1]`, `square` the unit square,
/// `simplexN` the standard N-simplex and `cube` the unit cube.
pub fn builtin(name: &str) -> Result<Polytope, GeometryError> {
    let pts: Vec<Vec<i64>> = match name {
        "segment" => vec![vec![0], vec![1]],
        "square" => vec![vec![0, 0], vec![1, 0], vec![1, 1], vec![0, 1]],
        "simplex2" => vec![vec![0, 0], vec![1, 0], vec![0, 1]],
        "simplex3" => vec![vec![0, 0, 0], vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]],
        "cube" => (0..8)
            .map(|i| vec![i & 1, (i >> 1) & 1, (i >> 2) & 1])
            .collect(),
        _ => return Err(GeometryError::UnknownBuiltin(name.to_string())),
    };
    let dim = pts[0].len();
    Polytope::from_vertices(dim, pts.iter().map(|c| Point::from_ints(c)).collect())
}

pub fn parse_polytope(text: &str) -> Result<Polytope, GeometryError> {
    let mut dim: Option<usize> = None;
    let mut vertices = Vec::new();
    let mut facets = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap().trim();
        if line.is_empty() {
            continue;
        }
        let err = |msg: &str| GeometryError::Parse(format!("line {}: {msg}", lineno + 1));
        let mut fields = line.split_whitespace();
        let tag = fields.next().unwrap();
        let values: Vec<&str> = fields.collect();
        match tag {
            "dim" => {
                if dim.is_some() {
                    return Err(err("repeated `dim` line"));
                }
                let [n] = values.as_slice() else {
                    return Err(err("expected `dim n`"));
                };
                let n: usize = n.parse().map_err(|_| err("dimension is not an integer"))?;
                if n == 0 {
                    return Err(err("dimension must be positive"));
                }
                dim = Some(n);
            }
            "v" | "h" => {
                let n = dim.ok_or_else(|| err("`dim` must come first"))?;
                let expected = if tag == "v" { n } else { n + 1 };
                if values.len() != expected {
                    return Err(err(&format!("expected {expected} entries, found {}", values.len())));
                }
                let nums = values
                    .iter()
                    .map(|s| parse(s).map_err(|e| err(&e.to_string())))
                    .collect::<Result<Vec<_>, _>>()?;
                if tag == "v" {
                    vertices.push(Point(nums));
                } else {
                    let mut nums = nums;
                    let offset = nums.pop().unwrap();
                    facets.push(HalfSpace::new(nums, offset).map_err(|e| err(&e.to_string()))?);
                }
            }
            other => return Err(err(&format!("unknown line tag {other:?}"))),
        }
    }
    let dim = dim.ok_or_else(|| GeometryError::Parse("missing `dim` line".into()))?;
    if facets.is_empty() {
        if vertices.is_empty() {
            return Err(GeometryError::Parse("no vertices".into()));
        }
        Polytope::from_vertices(dim, vertices)
    } else {
        Polytope::from_parts(dim, vertices, facets)
    }
}

pub fn write_polytope(p: &Polytope) -> String {
    let mut out = format!("dim {}\n", p.dim());
    for v in p.vertices() {
        out.push('v');
        for c in &v.0 {
            let _ = write!(out, " {}", format_exact(c));
        }
        out.push('\n');
    }
    for h in p.facets() {
        out.push('h');
        for c in h.normal() {
            let _ = write!(out, " {}", format_exact(c));
        }
        let _ = writeln!(out, " {}", format_exact(h.offset()));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::rational::ratio;

    #[test]
    fn roundtrip_through_text() {
        for name in BUILTIN_NAMES {
            let p = builtin(name).unwrap();
            assert_eq!(parse_polytope(&write_polytope(&p)).unwrap(), p, "{name}");
        }
    }

    #[test]
    fn derives_facets_and_reads_fractions() {
        let p = parse_polytope("# a thin rectangle\ndim 2\nv 0 0\nv 1 0\nv 1 1/2\nv 0 1/2\n").unwrap();
        assert_eq!(p.facets().len(), 4);
        assert_eq!(p.volume(), ratio(1, 2));
    }

    #[test]
    fn rejects_bad_input() {
        assert!(parse_polytope("v 0 0").is_err());
        assert!(parse_polytope("dim 2\nv 0").is_err());
        assert!(parse_polytope("dim 2\nq 0 0").is_err());
        assert!(parse_polytope("dim 2\nh 0 0 1\n").is_err());
        assert!(parse_polytope("dim 4\nv 0 0 0 0\nv 1 0 0 0\n").is_err());
        assert_eq!(builtin("hexagon"), Err(GeometryError::UnknownBuiltin("hexagon".into())));
    }
}
