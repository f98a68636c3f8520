use std::f64::consts::PI;

use num::{BigInt, BigRational, Zero};

use crate::geometry::RationalScalar;

/// Denominator used for the exact companion of a float direction.
const DIRECTION_GRID: i64 = 1 << 30;

/// A sampling direction: float unit vector plus the exact rational vector
/// that is actually used to cut the polytope.
///
/// The rational vector is the float vector rounded to a `2^-30` grid, so the
/// two differ by about `1e-9`; `unit` is recomputed from the rational one so
/// that both describe the same direction.
#[derive(Clone, Debug, PartialEq)]
pub struct Direction {
    pub unit: Vec<f64>,
    pub exact: Vec<RationalScalar>,
}

impl Direction {
    /// Rounds a float vector to the exact grid. `None` for a (numerically)
    /// zero vector.
    pub fn from_f64(v: &[f64]) -> Option<Self> {
        let exact: Vec<RationalScalar> = v
            .iter()
            .map(|c| {
                let k = (c * DIRECTION_GRID as f64).round() as i64;
                BigRational::new(BigInt::from(k), BigInt::from(DIRECTION_GRID))
            })
            .collect();
        Self::from_exact(exact)
    }

    pub fn from_exact(exact: Vec<RationalScalar>) -> Option<Self> {
        if exact.iter().all(Zero::is_zero) {
            return None;
        }
        let f: Vec<f64> = exact.iter().map(crate::geometry::rational::to_f64).collect();
        let norm = f.iter().map(|c| c * c).sum::<f64>().sqrt();
        Some(Direction { unit: f.iter().map(|c| c / norm).collect(), exact })
    }

    pub fn dim(&self) -> usize {
        self.exact.len()
    }

    /// Angle in `[0, 2π)` for planar directions.
    pub fn angle(&self) -> f64 {
        let a = self.unit[1].atan2(self.unit[0]);
        if a < 0.0 {
            a + 2.0 * PI
        } else {
            a
        }
    }

    pub fn dot_f64(&self, x: &[f64]) -> f64 {
        self.unit.iter().zip(x).map(|(a, b)| a * b).sum()
    }
}

/// Evenly spread sampling directions: both signs in 1D, `count` equally
/// spaced angles in 2D (starting at angle 0) and a spherical Fibonacci set
/// in 3D. Panics for other dimensions.
pub fn sample_directions(dim: usize, count: usize) -> Vec<Direction> {
    match dim {
        1 => vec![
            Direction::from_f64(&[1.0]).unwrap(),
            Direction::from_f64(&[-1.0]).unwrap(),
        ],
        2 => (0..count)
            .map(|k| {
                let t = 2.0 * PI * k as f64 / count as f64;
                Direction::from_f64(&[t.cos(), t.sin()]).unwrap()
            })
            .collect(),
        3 => {
            let golden = PI * (3.0 - 5f64.sqrt());
            (0..count)
                .map(|k| {
                    let z = 1.0 - 2.0 * (k as f64 + 0.5) / count as f64;
                    let r = (1.0 - z * z).sqrt();
                    let t = golden * k as f64;
                    Direction::from_f64(&[r * t.cos(), r * t.sin(), z]).unwrap()
                })
                .collect()
        }
        _ => panic!("direction sampling is implemented for dimensions 1 to 3"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::rational::int;

    #[test]
    fn axis_directions_are_exact() {
        let dirs = sample_directions(2, 4);
        assert_eq!(dirs[0].exact, vec![int(1), int(0)]);
        assert_eq!(dirs[1].exact, vec![int(0), int(1)]);
        assert_eq!(dirs[2].exact, vec![int(-1), int(0)]);
        assert_eq!(dirs[3].exact, vec![int(0), int(-1)]);
        assert!((dirs[3].angle() - 1.5 * PI).abs() < 1e-12);
    }

    #[test]
    fn fibonacci_directions_are_unit() {
        for d in sample_directions(3, 50) {
            let n: f64 = d.unit.iter().map(|c| c * c).sum();
            assert!((n - 1.0).abs() < 1e-12);
        }
        assert!(Direction::from_f64(&[0.0, 1e-12]).is_none());
    }
}
