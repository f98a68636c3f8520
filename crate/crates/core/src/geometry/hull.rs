//! Facet derivation from vertex lists in dimensions 1 to 3.

use std::cmp::Ordering;

use num::{Signed, Zero};

use super::{linalg, GeometryError, HalfSpace, Point, Polytope, RationalScalar};

pub(super) fn convex_hull(dim: usize, mut points: Vec<Point>) -> Result<Polytope, GeometryError> {
    points.sort();
    points.dedup();
    match dim {
        1 => hull_1d(points),
        2 => hull_2d(points),
        3 => hull_3d(points),
        _ => Err(GeometryError::UnsupportedDimension(dim)),
    }
}

fn hull_1d(points: Vec<Point>) -> Result<Polytope, GeometryError> {
    if points.len() < 2 {
        return Err(GeometryError::NotFullDimensional);
    }
    let lo = points.first().unwrap().clone();
    let hi = points.last().unwrap().clone();
    let facets = vec![
        HalfSpace::new(vec![-RationalScalar::from_integer(1.into())], -lo.0[0].clone())?,
        HalfSpace::new(vec![RationalScalar::from_integer(1.into())], hi.0[0].clone())?,
    ];
    Ok(Polytope::raw(1, vec![lo, hi], facets, false))
}

/// `(b - a) × (c - a)`; positive for a counter-clockwise turn.
pub(super) fn cross(a: &Point, b: &Point, c: &Point) -> RationalScalar {
    (&b.0[0] - &a.0[0]) * (&c.0[1] - &a.0[1]) - (&b.0[1] - &a.0[1]) * (&c.0[0] - &a.0[0])
}

/// Outward facet of the counter-clockwise edge `a -> b`.
pub(super) fn edge_facet(a: &Point, b: &Point) -> HalfSpace {
    let normal = vec![&b.0[1] - &a.0[1], &a.0[0] - &b.0[0]];
    let offset = a.dot(&normal);
    HalfSpace::new(normal, offset).expect("distinct edge endpoints")
}

pub(super) fn polygon_facets(ring: &[Point]) -> Vec<HalfSpace> {
    (0..ring.len())
        .map(|i| edge_facet(&ring[i], &ring[(i + 1) % ring.len()]))
        .collect()
}

/// Andrew's monotone chain on sorted, deduplicated points. Collinear
/// boundary points are dropped; the ring is counter-clockwise.
pub(super) fn monotone_chain(points: &[Point]) -> Vec<Point> {
    if points.len() < 3 {
        return points.to_vec();
    }
    let mut lower: Vec<Point> = Vec::new();
    for p in points {
        while lower.len() >= 2 && !cross(&lower[lower.len() - 2], &lower[lower.len() - 1], p).is_positive() {
            lower.pop();
        }
        lower.push(p.clone());
    }
    let mut upper: Vec<Point> = Vec::new();
    for p in points.iter().rev() {
        while upper.len() >= 2 && !cross(&upper[upper.len() - 2], &upper[upper.len() - 1], p).is_positive() {
            upper.pop();
        }
        upper.push(p.clone());
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

fn hull_2d(points: Vec<Point>) -> Result<Polytope, GeometryError> {
    let ring = monotone_chain(&points);
    if ring.len() < 3 {
        return Err(GeometryError::NotFullDimensional);
    }
    let facets = polygon_facets(&ring);
    Ok(Polytope::raw(2, ring, facets, false))
}

fn cross3(u: &[RationalScalar], v: &[RationalScalar]) -> Vec<RationalScalar> {
    vec![
        &u[1] * &v[2] - &u[2] * &v[1],
        &u[2] * &v[0] - &u[0] * &v[2],
        &u[0] * &v[1] - &u[1] * &v[0],
    ]
}

fn hull_3d(points: Vec<Point>) -> Result<Polytope, GeometryError> {
    let refs: Vec<&Point> = points.iter().collect();
    if linalg::affine_dimension(&refs) != Some(3) {
        return Err(GeometryError::NotFullDimensional);
    }
    let mut facets: Vec<HalfSpace> = Vec::new();
    let n = points.len();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let u = points[j].sub(&points[i]);
                let v = points[k].sub(&points[i]);
                let normal = cross3(&u.0, &v.0);
                if normal.iter().all(Zero::is_zero) {
                    continue;
                }
                let offset = points[i].dot(&normal);
                let signs: Vec<Ordering> = points
                    .iter()
                    .map(|p| p.dot(&normal).cmp(&offset))
                    .collect();
                let facet = if signs.iter().all(|s| *s != Ordering::Greater) {
                    HalfSpace::new(normal, offset)?
                } else if signs.iter().all(|s| *s != Ordering::Less) {
                    HalfSpace::new(normal, offset)?.complement()
                } else {
                    continue;
                };
                let facet = facet.canonical();
                if !facets.contains(&facet) {
                    facets.push(facet);
                }
            }
        }
    }
    let vertices: Vec<Point> = points
        .into_iter()
        .filter(|p| {
            let tight: Vec<Vec<RationalScalar>> = facets
                .iter()
                .filter(|h| h.is_tight(p))
                .map(|h| h.normal().to_vec())
                .collect();
            linalg::rank(&tight) == 3
        })
        .collect();
    Ok(Polytope::raw(3, vertices, facets, false))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_with_interior_and_edge_points() {
        let pts = [[0, 0], [2, 0], [1, 0], [2, 2], [0, 2], [1, 1]]
            .iter()
            .map(|c| Point::from_ints(c))
            .collect();
        let p = convex_hull(2, pts).unwrap();
        assert_eq!(p.vertices().len(), 4);
        assert_eq!(p.facets().len(), 4);
        assert_eq!(p.volume(), RationalScalar::from_integer(4.into()));
    }

    #[test]
    fn cube_hull() {
        let mut pts = Vec::new();
        for x in 0..2 {
            for y in 0..2 {
                for z in 0..2 {
                    pts.push(Point::from_ints(&[x, y, z]));
                }
            }
        }
        pts.push(Point::from_ints(&[1, 0, 0]));
        let p = convex_hull(3, pts).unwrap();
        assert_eq!(p.vertices().len(), 8);
        assert_eq!(p.facets().len(), 6);
    }

    #[test]
    fn collinear_input_rejected() {
        let pts = vec![Point::from_ints(&[0, 0]), Point::from_ints(&[1, 1]), Point::from_ints(&[2, 2])];
        assert_eq!(convex_hull(2, pts), Err(GeometryError::NotFullDimensional));
        assert_eq!(
            convex_hull(4, vec![Point::origin(4)]),
            Err(GeometryError::UnsupportedDimension(4))
        );
    }
}
