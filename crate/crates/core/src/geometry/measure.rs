//! Volume and centroid.
//!
//! Polygons use the shoelace formulas. Everything else is triangulated by
//! fanning from the smallest vertex of each face, recursing through
//! (k-1)-faces found by facet incidence.

use num::{Signed, Zero};

use super::{linalg, GeometryError, Point, Polytope, RationalScalar};

pub(super) fn volume(p: &Polytope) -> RationalScalar {
    if p.is_degenerate() {
        return RationalScalar::zero();
    }
    match p.dim() {
        1 => segment_length(p),
        2 => polygon_area_moments(p.vertices()).0,
        _ => triangulate(p)
            .iter()
            .map(|s| simplex_volume(p, s))
            .sum(),
    }
}

pub(super) fn centroid(p: &Polytope) -> Result<Point, GeometryError> {
    mass_properties(p).map(|(_, c)| c)
}

pub(super) fn mass_properties(p: &Polytope) -> Result<(RationalScalar, Point), GeometryError> {
    if p.is_degenerate() {
        return Err(GeometryError::DegenerateCentroid);
    }
    match p.dim() {
        1 => {
            let (a, b) = (&p.vertices()[0], &p.vertices()[1]);
            let mid = a.add(b).scale(&RationalScalar::new(1.into(), 2.into()));
            Ok((segment_length(p), mid))
        }
        2 => {
            let (area, mx, my) = polygon_area_moments(p.vertices());
            if area.is_zero() {
                return Err(GeometryError::DegenerateCentroid);
            }
            let six_a = &area * RationalScalar::from_integer(6.into());
            Ok((area, Point(vec![mx / &six_a, my / six_a])))
        }
        n => {
            let mut total = RationalScalar::zero();
            let mut moment = vec![RationalScalar::zero(); n];
            let k = RationalScalar::from_integer((n as i64 + 1).into());
            for s in triangulate(p) {
                let vol = simplex_volume(p, &s);
                for i in &s {
                    for (m, c) in moment.iter_mut().zip(&p.vertices()[*i].0) {
                        *m += &vol * c / &k;
                    }
                }
                total += vol;
            }
            if total.is_zero() {
                return Err(GeometryError::DegenerateCentroid);
            }
            Ok((total.clone(), Point(moment.into_iter().map(|m| m / &total).collect())))
        }
    }
}

fn segment_length(p: &Polytope) -> RationalScalar {
    (&p.vertices()[1].0[0] - &p.vertices()[0].0[0]).abs()
}

/// Area and the unnormalized first moments `(Σ (x_i + x_j) c_ij, Σ (y_i + y_j) c_ij)`
/// of a counter-clockwise ring.
fn polygon_area_moments(ring: &[Point]) -> (RationalScalar, RationalScalar, RationalScalar) {
    let mut twice_area = RationalScalar::zero();
    let mut mx = RationalScalar::zero();
    let mut my = RationalScalar::zero();
    for i in 0..ring.len() {
        let (a, b) = (&ring[i].0, &ring[(i + 1) % ring.len()].0);
        let c = &a[0] * &b[1] - &b[0] * &a[1];
        mx += (&a[0] + &b[0]) * &c;
        my += (&a[1] + &b[1]) * &c;
        twice_area += c;
    }
    (twice_area / RationalScalar::from_integer(2.into()), mx, my)
}

fn simplex_volume(p: &Polytope, simplex: &[usize]) -> RationalScalar {
    let base = &p.vertices()[simplex[0]];
    let rows: Vec<Vec<RationalScalar>> = simplex[1..]
        .iter()
        .map(|&i| p.vertices()[i].sub(base).0)
        .collect();
    let fact: u64 = (1..=p.dim() as u64).product();
    linalg::determinant(&rows).abs() / RationalScalar::from_integer(fact.into())
}

/// Simplices (as vertex index lists) of a fan triangulation.
pub(super) fn triangulate(p: &Polytope) -> Vec<Vec<usize>> {
    let incidence: Vec<Vec<usize>> = p
        .facets()
        .iter()
        .map(|h| (0..p.vertices().len()).filter(|&i| h.is_tight(&p.vertices()[i])).collect())
        .collect();
    let all: Vec<usize> = (0..p.vertices().len()).collect();
    let mut out = Vec::new();
    fan(p, &incidence, &all, p.dim(), &mut Vec::new(), &mut out);
    out
}

fn fan(
    p: &Polytope,
    incidence: &[Vec<usize>],
    face: &[usize],
    k: usize,
    apexes: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    if k == 0 {
        let mut s = apexes.clone();
        s.push(face[0]);
        out.push(s);
        return;
    }
    let apex = face[0];
    let mut subfaces: Vec<Vec<usize>> = Vec::new();
    for tight in incidence {
        let sub: Vec<usize> = face.iter().copied().filter(|i| tight.contains(i)).collect();
        if sub.contains(&apex) || subfaces.contains(&sub) {
            continue;
        }
        let pts: Vec<&Point> = sub.iter().map(|&i| &p.vertices()[i]).collect();
        if linalg::affine_dimension(&pts) == Some(k - 1) {
            subfaces.push(sub);
        }
    }
    apexes.push(apex);
    for sub in subfaces {
        fan(p, incidence, &sub, k - 1, apexes, out);
    }
    apexes.pop();
}
