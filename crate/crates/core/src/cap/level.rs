use num::{BigRational, Signed};

use super::{check_tol, CapBody, CapError, Direction};
use crate::geometry::rational::{from_f64, to_f64};
use crate::geometry::{Point, Polytope, RationalScalar};

/// A cap `Δ ∩ {v·x <= c_v}` holding a prescribed volume fraction.
#[derive(Clone, Debug)]
pub struct CapCut {
    pub direction: Direction,
    pub level: RationalScalar,
    pub cap: Polytope,
    pub cap_volume: RationalScalar,
    pub centroid: Point,
}

impl CapCut {
    pub fn level_f64(&self) -> f64 {
        to_f64(&self.level)
    }
}

/// Bisects the level `c` between the extreme values of `v` on Δ until the
/// cap volume is within `tol · vol(Δ)` of `a · vol(Δ)`.
pub fn cap_level(delta: &Polytope, v: &Direction, a: f64, tol: f64) -> Result<CapCut, CapError> {
    CapBody::new(delta)?.cap_level(v, a, tol)
}

impl CapBody {
    pub fn cap_level(&self, v: &Direction, a: f64, tol: f64) -> Result<CapCut, CapError> {
        if !(a > 0.0 && a < 1.0) {
            return Err(CapError::FractionOutOfRange(a));
        }
        check_tol(tol)?;
        self.check_direction(v)?;
        let target = from_f64(a) * self.volume();
        let slack = from_f64(tol) * self.volume();
        let (lo, hi) = self.polytope().support_range(&v.exact).ok_or(CapError::DegenerateBody)?;
        let total = to_f64(self.volume());
        let mut search = LevelSearch::new(lo, hi, -a * total, (1.0 - a) * total);
        loop {
            let level = search.propose();
            let cap = self.cut(v, &level);
            let vol = cap.volume();
            let err = &vol - &target;
            if err.abs() <= slack {
                let centroid = cap.centroid()?;
                return Ok(CapCut { direction: v.clone(), level, cap, cap_volume: vol, centroid });
            }
            search.update(level, to_f64(&err), err.is_positive());
        }
    }
}

/// Root bracketing for an increasing function of the cut level, by false
/// position with the Illinois modification. Iterates are exact rationals
/// rounded from the float interpolant; a midpoint step is taken whenever
/// rounding leaves the bracket or one end has been stuck for a while.
pub(crate) struct LevelSearch {
    pub lo: RationalScalar,
    pub hi: RationalScalar,
    f_lo: f64,
    f_hi: f64,
    side: i8,
    streak: u32,
}

impl LevelSearch {
    pub fn new(lo: RationalScalar, hi: RationalScalar, f_lo: f64, f_hi: f64) -> Self {
        LevelSearch { lo, hi, f_lo, f_hi, side: 0, streak: 0 }
    }

    pub fn propose(&self) -> RationalScalar {
        let mid = || (&self.lo + &self.hi) / BigRational::from_integer(2.into());
        if self.streak >= 3 || !(self.f_lo < 0.0 && self.f_hi > 0.0) {
            return mid();
        }
        let w = self.f_lo / (self.f_lo - self.f_hi);
        let (lo, hi) = (to_f64(&self.lo), to_f64(&self.hi));
        let guess = lo + (hi - lo) * w;
        if !guess.is_finite() {
            return mid();
        }
        let c = from_f64(guess);
        if c > self.lo && c < self.hi {
            c
        } else {
            mid()
        }
    }

    /// Records the value at `c`; `above` is the exact sign test `f(c) > 0`.
    pub fn update(&mut self, c: RationalScalar, f: f64, above: bool) {
        let side = if above { 1 } else { -1 };
        if side == self.side {
            self.streak += 1;
            if above {
                self.f_lo /= 2.0;
            } else {
                self.f_hi /= 2.0;
            }
        } else {
            self.streak = 0;
        }
        self.side = side;
        if above {
            self.hi = c;
            self.f_hi = f.max(f64::MIN_POSITIVE);
        } else {
            self.lo = c;
            self.f_lo = f.min(-f64::MIN_POSITIVE);
        }
    }
}
