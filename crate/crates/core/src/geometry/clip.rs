//! Half-space clipping.

use num::{Signed, Zero};

use super::hull::{cross, polygon_facets};
use super::{linalg, HalfSpace, Point, Polytope, RationalScalar};

pub(super) fn clip(poly: &Polytope, h: &HalfSpace) -> Polytope {
    if poly.is_empty() {
        return Polytope::empty(poly.dim());
    }
    if poly.vertices().iter().all(|v| h.contains(v)) {
        return poly.clone();
    }
    if poly.dim() == 2 && !poly.is_degenerate() {
        clip_polygon(poly, h)
    } else {
        clip_general(poly, h)
    }
}

/// Point where the segment `a -> b` meets the hyperplane of `h`, given the
/// slacks of both endpoints have opposite signs.
fn crossing(a: &Point, b: &Point, sa: &RationalScalar, sb: &RationalScalar) -> Point {
    let t = sa / (sa - sb);
    a.lerp(b, &t)
}

/// Sutherland-Hodgman against a single plane; keeps counter-clockwise order.
fn clip_polygon(poly: &Polytope, h: &HalfSpace) -> Polytope {
    let ring = poly.vertices();
    let slacks: Vec<RationalScalar> = ring.iter().map(|v| h.slack(v)).collect();
    let mut out: Vec<Point> = Vec::with_capacity(ring.len() + 1);
    for i in 0..ring.len() {
        let j = (i + 1) % ring.len();
        let (si, sj) = (&slacks[i], &slacks[j]);
        if !si.is_positive() {
            out.push(ring[i].clone());
        }
        if (si.is_negative() && sj.is_positive()) || (si.is_positive() && sj.is_negative()) {
            out.push(crossing(&ring[i], &ring[j], si, sj));
        }
    }
    let ring = simplify_ring(out);
    if ring.len() >= 3 {
        let facets = polygon_facets(&ring);
        return Polytope::raw(2, ring, facets, false);
    }
    let mut facets = poly.facets().to_vec();
    facets.push(h.clone());
    if ring.is_empty() {
        return Polytope::empty(2);
    }
    Polytope::raw(2, ring, facets, true)
}

/// Drops repeated and collinear ring vertices.
fn simplify_ring(mut ring: Vec<Point>) -> Vec<Point> {
    ring.dedup();
    while ring.len() > 1 && ring.first() == ring.last() {
        ring.pop();
    }
    let mut changed = true;
    while changed && ring.len() >= 3 {
        changed = false;
        for i in 0..ring.len() {
            let prev = &ring[(i + ring.len() - 1) % ring.len()];
            let next = &ring[(i + 1) % ring.len()];
            if cross(prev, &ring[i], next).is_zero() {
                ring.remove(i);
                changed = true;
                break;
            }
        }
    }
    if ring.len() == 2 && ring[0] == ring[1] {
        ring.pop();
    }
    ring
}

/// Dimension-independent clipping: candidate points are the kept vertices
/// plus every crossing of a vertex pair; the extreme ones (tight on a
/// rank-n set of constraints) are the new vertices.
fn clip_general(poly: &Polytope, h: &HalfSpace) -> Polytope {
    let n = poly.dim();
    let slacks: Vec<RationalScalar> = poly.vertices().iter().map(|v| h.slack(v)).collect();
    let mut candidates: Vec<Point> = Vec::new();
    for (v, s) in poly.vertices().iter().zip(&slacks) {
        if !s.is_positive() {
            candidates.push(v.clone());
        }
    }
    let pairs = poly.vertices().iter().zip(&slacks);
    for (a, sa) in pairs.clone().filter(|(_, s)| s.is_negative()) {
        for (b, sb) in pairs.clone().filter(|(_, s)| s.is_positive()) {
            candidates.push(crossing(a, b, sa, sb));
        }
    }
    if candidates.is_empty() {
        return Polytope::empty(n);
    }
    let mut constraints = poly.facets().to_vec();
    constraints.push(h.clone());
    let mut vertices: Vec<Point> = candidates
        .into_iter()
        .filter(|p| {
            let tight: Vec<Vec<RationalScalar>> = constraints
                .iter()
                .filter(|c| c.is_tight(p))
                .map(|c| c.normal().to_vec())
                .collect();
            linalg::rank(&tight) == n
        })
        .collect();
    vertices.sort();
    vertices.dedup();
    let refs: Vec<&Point> = vertices.iter().collect();
    if linalg::affine_dimension(&refs) != Some(n) {
        return Polytope::raw(n, vertices, constraints, true);
    }
    let mut facets: Vec<HalfSpace> = Vec::new();
    let mut seen: Vec<Vec<usize>> = Vec::new();
    for c in constraints {
        let tight: Vec<usize> = (0..vertices.len()).filter(|&i| c.is_tight(&vertices[i])).collect();
        let pts: Vec<&Point> = tight.iter().map(|&i| &vertices[i]).collect();
        if linalg::affine_dimension(&pts) == Some(n - 1) && !seen.contains(&tight) {
            seen.push(tight);
            facets.push(c);
        }
    }
    Polytope::raw(n, vertices, facets, false)
}
