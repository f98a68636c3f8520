use num::{Signed, Zero};
use rayon::prelude::*;

use super::level::LevelSearch;
use super::{check_tol, sample_directions, CapBody, CapError, Direction};
use crate::geometry::rational::to_f64;
use crate::geometry::{Point, Polytope};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TauMethod {
    DirectionSweep,
    GridLp,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TauFlag {
    /// `x` is not in Δ.
    OutsideBody,
    /// The grid LP has no nonzero feasible point: `x` is outside the convex
    /// hull of the admissible cell centers.
    Infeasible,
}

/// An estimate of `τ_x / vol(Δ)`.
#[derive(Clone, Debug)]
pub struct TauEstimate {
    pub x: Point,
    pub tau_over_vol: f64,
    pub method: TauMethod,
    /// Number of directions or grid resolution `N`.
    pub resolution: usize,
    pub error_bound: f64,
    pub flag: Option<TauFlag>,
}

impl TauEstimate {
    pub(crate) fn outside(x: &Point, method: TauMethod, resolution: usize, flag: TauFlag) -> Self {
        TauEstimate { x: x.clone(), tau_over_vol: 0.0, method, resolution, error_bound: 0.0, flag: Some(flag) }
    }
}

/// `τ_x / vol(Δ)` as the minimum over sampled directions of the fraction
/// `a_v(x)` at which the cap centroid for `v` reaches the hyperplane through
/// `x` perpendicular to `v`.
///
/// `error_bound` is the half-width of the final bracket plus, in 2D, the spread of
/// `a_v` between the minimizing direction and its neighbours (how much the
/// minimum can move between two samples).
pub fn tau_direction_sweep(delta: &Polytope, x: &Point, n_dirs: usize, tol: f64) -> Result<TauEstimate, CapError> {
    CapBody::new(delta)?.tau_direction_sweep(x, n_dirs, tol)
}

impl CapBody {
    /// Bracket `(lo, hi)` of the largest fraction `a` with `v·x_v(a) <= v·x`.
    pub fn direction_fraction(&self, v: &Direction, x: &Point, tol: f64) -> Result<(f64, f64), CapError> {
        check_tol(tol)?;
        self.check_direction(v)?;
        let vx = x.dot(&v.exact);
        if vx >= self.centroid().dot(&v.exact) {
            return Ok((1.0, 1.0));
        }
        let (lo, hi) = self.polytope().support_range(&v.exact).ok_or(CapError::DegenerateBody)?;
        if vx <= lo {
            return Ok((0.0, 0.0));
        }
        let total = to_f64(self.volume());
        let f_lo = to_f64(&(&lo - &vx));
        let f_hi = to_f64(&(self.centroid().dot(&v.exact) - &vx));
        let mut search = LevelSearch::new(lo, hi, f_lo, f_hi);
        let (mut a_lo, mut a_hi) = (0.0, 1.0);
        while a_hi - a_lo > tol && search.lo < search.hi {
            let level = search.propose();
            let cap = self.cut(v, &level);
            let (vol, centroid) = cap.mass_properties()?;
            let a = to_f64(&vol) / total;
            let g = centroid.dot(&v.exact) - &vx;
            let above = g.is_positive();
            if above {
                a_hi = a;
            } else {
                a_lo = a;
            }
            search.update(level, to_f64(&g), above);
        }
        Ok((a_lo, a_hi))
    }

    pub fn tau_direction_sweep(&self, x: &Point, n_dirs: usize, tol: f64) -> Result<TauEstimate, CapError> {
        check_tol(tol)?;
        if n_dirs < 4 {
            return Err(CapError::InvalidParameter(format!("need at least 4 directions, got {n_dirs}")));
        }
        if !self.check_point(x)? {
            return Ok(TauEstimate::outside(x, TauMethod::DirectionSweep, n_dirs, TauFlag::OutsideBody));
        }
        let dirs = sample_directions(self.dim(), n_dirs);
        let brackets = dirs
            .par_iter()
            .map(|v| self.direction_fraction(v, x, tol))
            .collect::<Result<Vec<_>, _>>()?;
        let mids: Vec<f64> = brackets.iter().map(|(l, h)| (l + h) / 2.0).collect();
        let (arg, _) = mids
            .iter()
            .enumerate()
            .min_by(|a, b| a.1.total_cmp(b.1))
            .expect("at least one direction");
        let (lo, hi) = brackets[arg];
        let mut error_bound = (hi - lo) / 2.0;
        if self.dim() == 2 {
            let k = mids.len();
            let prev = mids[(arg + k - 1) % k];
            let next = mids[(arg + 1) % k];
            error_bound += (prev - mids[arg]).max(next - mids[arg]);
        }
        Ok(TauEstimate {
            x: x.clone(),
            tau_over_vol: mids[arg].clamp(0.0, 1.0),
            method: TauMethod::DirectionSweep,
            resolution: n_dirs,
            error_bound,
            flag: None,
        })
    }
}

impl TauEstimate {
    pub fn is_zero(&self) -> bool {
        self.tau_over_vol.is_zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::builtin;

    fn sweep(x: &[f64]) -> TauEstimate {
        tau_direction_sweep(&builtin("square").unwrap(), &Point::from_f64(x), 360, 1e-9).unwrap()
    }

    #[test]
    fn centroid_is_one() {
        let t = sweep(&[0.5, 0.5]);
        assert_eq!(t.tau_over_vol, 1.0);
        let tri = builtin("simplex2").unwrap();
        let c = tri.centroid().unwrap();
        assert_eq!(tau_direction_sweep(&tri, &c, 64, 1e-9).unwrap().tau_over_vol, 1.0);
    }

    #[test]
    fn known_values() {
        let t = sweep(&[0.5, 0.25]);
        assert!((t.tau_over_vol - 0.5).abs() < 1e-6, "{t:?}");
        let b = sweep(&[0.149071, 0.149071]);
        assert!((b.tau_over_vol - 0.1).abs() < 1e-5, "{b:?}");
        assert!(sweep(&[0.0, 0.0]).is_zero());
    }

    #[test]
    fn outside_is_flagged() {
        let t = sweep(&[1.5, 0.5]);
        assert_eq!(t.flag, Some(TauFlag::OutsideBody));
        assert!(t.is_zero());
    }
}
