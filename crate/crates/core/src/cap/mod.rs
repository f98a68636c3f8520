//! Caps, cap centroids and the regions `Δ(a)`.
//!
//! For a direction `v` and a volume fraction `a`, the cap level `c_v` is the
//! unique `c` with `vol(Δ ∩ {v·x <= c}) = a·vol(Δ)`. The centroid `x_v` of
//! that cap is where the water settles when Δ is tilted with `v` pointing
//! down and filled to fraction `a`. As `v` varies the points `x_v` trace the
//! boundary of `Δ(a)`, the set of points that are the center of mass of some
//! subset of Δ holding at least an `a` fraction of its volume.
//!
//! Directions are floats rounded to exact rationals (see [`Direction`]);
//! everything downstream of a chosen level is exact. Levels that are
//! irrational in truth are bracketed by dyadic bisection.
//!
//! [`tau_direction_sweep`] recovers `τ_x / vol(Δ) = sup{a : x ∈ Δ(a)}` from
//! cap centroids. [`tau_grid_lp`] is an independent lower bound from an exact
//! linear program over grid cells, and [`shape_for`] turns its solution into
//! an explicit union of cubes.

mod directions;
mod level;
mod lp;
mod region;
mod shape;
mod tau;

use thiserror::Error;

use crate::geometry::{GeometryError, Point, Polytope, RationalScalar};

pub use directions::{sample_directions, Direction};
pub use level::{cap_level, CapCut};
pub use lp::{tau_grid_lp, GridCell, GridLpSolution};
pub use region::{region_boundary, region_contains, RegionBoundary, RegionSample};
pub use shape::{shape_for, Cube, ShapeSpec};
pub use tau::{tau_direction_sweep, TauEstimate, TauFlag, TauMethod};

/// Default bisection tolerance (relative volume for caps, absolute fraction
/// for τ).
pub const DEFAULT_TOL: f64 = 1e-9;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CapError {
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error("volume fraction {0} is outside the open interval (0, 1)")]
    FractionOutOfRange(f64),
    #[error("direction is the zero vector")]
    ZeroDirection,
    #[error("Δ must be full-dimensional")]
    DegenerateBody,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("target volume {target} exceeds tau estimate {available}")]
    ExceedsTau { target: f64, available: f64 },
    #[error("empty shape: target volume must be positive")]
    EmptyShape,
}

/// Δ together with its volume and centroid, computed once.
#[derive(Clone, Debug)]
pub struct CapBody {
    polytope: Polytope,
    volume: RationalScalar,
    centroid: Point,
}

impl CapBody {
    pub fn new(polytope: &Polytope) -> Result<Self, CapError> {
        if polytope.is_degenerate() || polytope.dim() > 3 {
            return Err(CapError::DegenerateBody);
        }
        let (volume, centroid) = polytope.mass_properties()?;
        Ok(CapBody { polytope: polytope.clone(), volume, centroid })
    }

    pub fn polytope(&self) -> &Polytope {
        &self.polytope
    }

    pub fn volume(&self) -> &RationalScalar {
        &self.volume
    }

    pub fn centroid(&self) -> &Point {
        &self.centroid
    }

    pub fn dim(&self) -> usize {
        self.polytope.dim()
    }

    /// `Δ ∩ {v·x <= c}`.
    pub fn cut(&self, v: &Direction, c: &RationalScalar) -> Polytope {
        let h = crate::geometry::HalfSpace::new(v.exact.clone(), c.clone())
            .expect("directions are nonzero");
        self.polytope.clip(&h)
    }

    fn check_point(&self, x: &Point) -> Result<bool, CapError> {
        Ok(self.polytope.contains(x)?)
    }

    fn check_direction(&self, v: &Direction) -> Result<(), CapError> {
        if v.dim() != self.dim() {
            return Err(GeometryError::DimensionMismatch { expected: self.dim(), found: v.dim() }.into());
        }
        Ok(())
    }
}

pub(crate) fn check_tol(tol: f64) -> Result<(), CapError> {
    if tol.is_finite() && tol > 0.0 {
        Ok(())
    } else {
        Err(CapError::InvalidParameter(format!("tolerance must be positive, got {tol}")))
    }
}
