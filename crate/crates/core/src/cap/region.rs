use num::Zero;
use rayon::prelude::*;

use super::{check_tol, sample_directions, CapBody, CapError, Direction};
use crate::geometry::rational::{from_f64, int};
use crate::geometry::{Point, Polytope, RationalScalar};

/// One boundary sample: the direction, the cap level (absent at `a = 0` and
/// `a = 1`) and the point `x_v`.
#[derive(Clone, Debug)]
pub struct RegionSample {
    pub direction: Direction,
    pub level: Option<RationalScalar>,
    pub point: Point,
}

/// Sampled boundary of `Δ(a)`, in direction order.
#[derive(Clone, Debug)]
pub struct RegionBoundary {
    pub a: f64,
    pub samples: Vec<RegionSample>,
    /// The samples form a closed polyline (2D with `a < 1`).
    pub closed: bool,
}

impl RegionBoundary {
    pub fn points(&self) -> impl Iterator<Item = &Point> {
        self.samples.iter().map(|s| &s.point)
    }
}

/// Samples the boundary of `Δ(a)` with `n_dirs` directions.
///
/// `a = 0` gives points on the boundary of Δ (the face minimizing each
/// direction, represented by the average of its vertices) and `a = 1` gives
/// the centroid for every direction.
pub fn region_boundary(delta: &Polytope, a: f64, n_dirs: usize, tol: f64) -> Result<RegionBoundary, CapError> {
    let body = CapBody::new(delta)?;
    body.region_boundary(a, n_dirs, tol)
}

/// Support-function membership test for `Δ(a)`: `x` is inside iff
/// `v·x >= v·x_v - tol` for every sampled direction, where the cap for `v`
/// is `{v·y <= c_v}`. Points outside Δ are never inside.
pub fn region_contains(delta: &Polytope, a: f64, x: &Point, n_dirs: usize, tol: f64) -> Result<bool, CapError> {
    let body = CapBody::new(delta)?;
    body.region_contains(a, x, n_dirs, tol)
}

fn check_fraction(a: f64) -> Result<(), CapError> {
    if (0.0..=1.0).contains(&a) {
        Ok(())
    } else {
        Err(CapError::FractionOutOfRange(a))
    }
}

fn check_dirs(n_dirs: usize) -> Result<(), CapError> {
    if n_dirs < 4 {
        return Err(CapError::InvalidParameter(format!("need at least 4 directions, got {n_dirs}")));
    }
    Ok(())
}

impl CapBody {
    /// Midpoint of the face of Δ minimizing `v`.
    fn low_face_point(&self, v: &Direction) -> Point {
        let values: Vec<RationalScalar> = self.polytope().vertices().iter().map(|p| p.dot(&v.exact)).collect();
        let min = values.iter().min().expect("nonempty polytope").clone();
        let face: Vec<&Point> = self
            .polytope()
            .vertices()
            .iter()
            .zip(&values)
            .filter(|(_, val)| **val == min)
            .map(|(p, _)| p)
            .collect();
        let mut sum = Point::origin(self.dim());
        for p in &face {
            sum = sum.add(p);
        }
        sum.scale(&(int(1) / int(face.len() as i64)))
    }

    pub fn region_sample(&self, v: &Direction, a: f64, tol: f64) -> Result<RegionSample, CapError> {
        check_fraction(a)?;
        self.check_direction(v)?;
        if a == 0.0 {
            return Ok(RegionSample { direction: v.clone(), level: None, point: self.low_face_point(v) });
        }
        if a == 1.0 {
            return Ok(RegionSample { direction: v.clone(), level: None, point: self.centroid().clone() });
        }
        let cut = self.cap_level(v, a, tol)?;
        Ok(RegionSample { direction: v.clone(), level: Some(cut.level), point: cut.centroid })
    }

    pub fn region_boundary(&self, a: f64, n_dirs: usize, tol: f64) -> Result<RegionBoundary, CapError> {
        check_fraction(a)?;
        check_dirs(n_dirs)?;
        check_tol(tol)?;
        let dirs = sample_directions(self.dim(), n_dirs);
        let samples = dirs
            .par_iter()
            .map(|v| self.region_sample(v, a, tol))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(RegionBoundary { a, samples, closed: self.dim() == 2 && a < 1.0 })
    }

    pub fn region_contains(&self, a: f64, x: &Point, n_dirs: usize, tol: f64) -> Result<bool, CapError> {
        check_fraction(a)?;
        check_dirs(n_dirs)?;
        check_tol(tol)?;
        if !self.check_point(x)? {
            return Ok(false);
        }
        if a == 0.0 {
            return Ok(true);
        }
        let boundary = self.region_boundary(a, n_dirs, tol)?;
        Ok(boundary.supports(x, tol))
    }
}

impl RegionBoundary {
    /// `v·x >= v·x_v - tol` for every sample. Does not check `x ∈ Δ`.
    pub fn supports(&self, x: &Point, tol: f64) -> bool {
        let slack = from_f64(tol);
        self.samples.iter().all(|s| {
            let gap = x.dot(&s.direction.exact) - s.point.dot(&s.direction.exact);
            gap + &slack >= RationalScalar::zero()
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::builtin;
    use crate::geometry::rational::ratio;

    #[test]
    fn full_fraction_is_centroid() {
        let sq = builtin("square").unwrap();
        let r = region_boundary(&sq, 1.0, 8, 1e-9).unwrap();
        assert_eq!(r.samples.len(), 8);
        assert!(r.points().all(|p| *p == Point(vec![ratio(1, 2), ratio(1, 2)])));
        assert!(!r.closed);
    }

    #[test]
    fn zero_fraction_is_boundary() {
        let sq = builtin("square").unwrap();
        let r = region_boundary(&sq, 0.0, 8, 1e-9).unwrap();
        // direction (1, 0) minimizes on the left edge
        assert_eq!(r.samples[0].point, Point(vec![ratio(0, 1), ratio(1, 2)]));
        // direction at 45 degrees minimizes at the origin only
        assert_eq!(r.samples[1].point, Point(vec![ratio(0, 1), ratio(0, 1)]));
        assert!(r.closed);
    }

    #[test]
    fn tenth_region_samples() {
        let sq = builtin("square").unwrap();
        let r = region_boundary(&sq, 0.1, 8, 1e-12).unwrap();
        let diag = r.samples[1].point.to_f64();
        let t = 0.2f64.sqrt();
        assert!((diag[0] - t / 3.0).abs() < 1e-9 && (diag[1] - t / 3.0).abs() < 1e-9);
        // direction (0, -1): the top slab of height 1/10
        let top = r.samples[6].point.to_f64();
        assert!((top[0] - 0.5).abs() < 1e-12 && (top[1] - 0.95).abs() < 1e-11);
    }

    #[test]
    fn containment_examples() {
        let sq = builtin("square").unwrap();
        let c = Point(vec![ratio(1, 2), ratio(1, 2)]);
        for a in [0.1, 0.5, 0.9] {
            assert!(region_contains(&sq, a, &c, 16, 1e-9).unwrap());
        }
        assert!(!region_contains(&sq, 0.1, &Point::from_ints(&[0, 0]), 16, 1e-9).unwrap());
        assert!(!region_contains(&sq, 0.1, &Point::from_ints(&[2, 0]), 16, 1e-9).unwrap());
        let b = Point::from_f64(&[0.149071, 0.149071]);
        assert!(region_contains(&sq, 0.0999, &b, 64, 1e-9).unwrap());
    }

    #[test]
    fn bad_parameters() {
        let sq = builtin("square").unwrap();
        assert!(region_boundary(&sq, 1.5, 8, 1e-9).is_err());
        assert!(region_boundary(&sq, 0.5, 3, 1e-9).is_err());
    }
}
