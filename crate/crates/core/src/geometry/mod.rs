//! Exact rational convex geometry.
//!
//! Everything here works on [`BigRational`](num::BigRational) coordinates;
//! there is no floating-point predicate anywhere in this module. A
//! [`Polytope`] carries both its vertices and its facet inequalities, and the
//! two descriptions always define the same set.
//!
//! Two-dimensional polytopes keep their vertices in counter-clockwise order,
//! which lets clipping, area and centroid use the polygon formulas directly.
//! Other dimensions go through a fan triangulation driven by facet incidence.

mod clip;
mod hull;
mod io;
mod lattice;
pub(crate) mod linalg;
mod measure;
pub mod rational;

use std::fmt;

use num::{BigRational, Signed, Zero};
use thiserror::Error;

pub use io::{builtin, parse_polytope, write_polytope, BUILTIN_NAMES};
pub use lattice::{lattice_points, LatticePoint, LatticePointSet};
pub use rational::RationalScalar;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GeometryError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("half-space normal is the zero vector")]
    ZeroNormal,
    #[error("polytope is unbounded or has no vertex description")]
    Unbounded,
    #[error("degenerate centroid: polytope has zero volume")]
    DegenerateCentroid,
    #[error("dimension {0} is not supported for this operation")]
    UnsupportedDimension(usize),
    #[error("polytope is not full-dimensional")]
    NotFullDimensional,
    #[error("invalid polytope: {0}")]
    Invalid(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unknown builtin polytope {0:?}")]
    UnknownBuiltin(String),
}

/// A point with exact rational coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point(pub Vec<RationalScalar>);

impl Point {
    pub fn new(coords: Vec<RationalScalar>) -> Self {
        Point(coords)
    }

    pub fn origin(dim: usize) -> Self {
        Point(vec![RationalScalar::zero(); dim])
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        Point(coords.iter().map(|&c| rational::int(c)).collect())
    }

    /// Exact binary value of each float coordinate.
    pub fn from_f64(coords: &[f64]) -> Self {
        Point(coords.iter().map(|&c| rational::from_f64(c)).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[RationalScalar] {
        &self.0
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.0.iter().map(rational::to_f64).collect()
    }

    pub fn dot(&self, v: &[RationalScalar]) -> RationalScalar {
        self.0.iter().zip(v).map(|(a, b)| a * b).sum()
    }

    pub fn add(&self, other: &Point) -> Point {
        Point(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Point) -> Point {
        Point(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, factor: &RationalScalar) -> Point {
        Point(self.0.iter().map(|a| a * factor).collect())
    }

    /// `self + t (other - self)`.
    pub fn lerp(&self, other: &Point, t: &RationalScalar) -> Point {
        Point(self.0.iter().zip(&other.0).map(|(a, b)| a + t * (b - a)).collect())
    }

    pub fn distance_f64(&self, other: &Point) -> f64 {
        self.to_f64()
            .iter()
            .zip(other.to_f64())
            .map(|(a, b)| (a - b).powi(2))
            .sum::<f64>()
            .sqrt()
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", rational::format_exact(c))?;
        }
        write!(f, ")")
    }
}

/// The closed half-space `{x : normal · x <= offset}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HalfSpace {
    normal: Vec<RationalScalar>,
    offset: RationalScalar,
}

impl HalfSpace {
    pub fn new(normal: Vec<RationalScalar>, offset: RationalScalar) -> Result<Self, GeometryError> {
        if normal.iter().all(Zero::is_zero) {
            return Err(GeometryError::ZeroNormal);
        }
        Ok(HalfSpace { normal, offset })
    }

    pub fn normal(&self) -> &[RationalScalar] {
        &self.normal
    }

    pub fn offset(&self) -> &RationalScalar {
        &self.offset
    }

    pub fn dim(&self) -> usize {
        self.normal.len()
    }

    /// `normal · x - offset`; nonpositive inside.
    pub fn slack(&self, x: &Point) -> RationalScalar {
        x.dot(&self.normal) - &self.offset
    }

    pub fn contains(&self, x: &Point) -> bool {
        !self.slack(x).is_positive()
    }

    pub fn is_tight(&self, x: &Point) -> bool {
        self.slack(x).is_zero()
    }

    /// The closed half-space on the other side of the same hyperplane.
    pub fn complement(&self) -> HalfSpace {
        HalfSpace {
            normal: self.normal.iter().map(|a| -a).collect(),
            offset: -&self.offset,
        }
    }

    pub(crate) fn scaled_offset(&self, factor: &RationalScalar) -> HalfSpace {
        HalfSpace {
            normal: self.normal.clone(),
            offset: &self.offset * factor,
        }
    }

    /// Same hyperplane and side, written with the first nonzero normal
    /// entry scaled to ±1.
    pub(crate) fn canonical(&self) -> HalfSpace {
        let lead = self.normal.iter().find(|a| !a.is_zero()).unwrap().abs();
        HalfSpace {
            normal: self.normal.iter().map(|a| a / &lead).collect(),
            offset: &self.offset / &lead,
        }
    }
}

/// A bounded convex polytope with matching vertex and facet descriptions.
///
/// An empty polytope has no vertices. A lower-dimensional one (possible as
/// a clipping result) is flagged [`degenerate`](Polytope::is_degenerate);
/// its facet list is then an inequality description of the set rather than
/// a list of true facets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polytope {
    dim: usize,
    vertices: Vec<Point>,
    facets: Vec<HalfSpace>,
    degenerate: bool,
}

impl Polytope {
    /// Convex hull of a point set in dimension 1, 2 or 3. Non-extreme points
    /// are dropped; the hull must be full-dimensional.
    pub fn from_vertices(dim: usize, points: Vec<Point>) -> Result<Self, GeometryError> {
        for p in &points {
            check_dim(dim, p.dim())?;
        }
        hull::convex_hull(dim, points)
    }

    /// Builds a polytope from both descriptions and validates that they
    /// agree: every vertex satisfies every facet and each facet is tight on
    /// an (n-1)-dimensional set of vertices.
    pub fn from_parts(
        dim: usize,
        vertices: Vec<Point>,
        facets: Vec<HalfSpace>,
    ) -> Result<Self, GeometryError> {
        if vertices.is_empty() {
            return Err(GeometryError::Unbounded);
        }
        for v in &vertices {
            check_dim(dim, v.dim())?;
        }
        for h in &facets {
            check_dim(dim, h.dim())?;
        }
        let hull = hull::convex_hull(dim, vertices.clone())?;
        if hull.vertices.len() != vertices.len() {
            return Err(GeometryError::Invalid(
                "vertex list contains non-extreme points".into(),
            ));
        }
        for (i, h) in facets.iter().enumerate() {
            if let Some(v) = hull.vertices.iter().find(|v| !h.contains(v)) {
                return Err(GeometryError::Invalid(format!("vertex {v} violates facet {i}")));
            }
            let tight: Vec<&Point> = hull.vertices.iter().filter(|v| h.is_tight(v)).collect();
            if tight.len() < dim || linalg::affine_dimension(&tight) != Some(dim - 1) {
                return Err(GeometryError::Invalid(format!("inequality {i} is not a facet")));
            }
        }
        let derived: Vec<HalfSpace> = hull.facets.iter().map(HalfSpace::canonical).collect();
        let given: Vec<HalfSpace> = facets.iter().map(HalfSpace::canonical).collect();
        if derived.iter().any(|h| !given.contains(h)) {
            return Err(GeometryError::Invalid("facet list is incomplete".into()));
        }
        Ok(Polytope {
            dim,
            vertices: hull.vertices,
            facets,
            degenerate: false,
        })
    }

    pub(crate) fn raw(
        dim: usize,
        vertices: Vec<Point>,
        facets: Vec<HalfSpace>,
        degenerate: bool,
    ) -> Self {
        Polytope {
            dim,
            vertices,
            facets,
            degenerate,
        }
    }

    pub fn empty(dim: usize) -> Self {
        Polytope {
            dim,
            vertices: Vec::new(),
            facets: Vec::new(),
            degenerate: true,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn facets(&self) -> &[HalfSpace] {
        &self.facets
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Lower-dimensional (including empty).
    pub fn is_degenerate(&self) -> bool {
        self.degenerate
    }

    /// `d · P`: vertices and facet offsets scaled by `d`.
    pub fn dilate(&self, d: u64) -> Polytope {
        self.scale(&BigRational::from_integer(d.into()))
    }

    /// Scaling by a positive rational factor.
    pub fn scale(&self, factor: &RationalScalar) -> Polytope {
        assert!(factor.is_positive(), "scale factor must be positive");
        Polytope {
            dim: self.dim,
            vertices: self.vertices.iter().map(|v| v.scale(factor)).collect(),
            facets: self.facets.iter().map(|h| h.scaled_offset(factor)).collect(),
            degenerate: self.degenerate,
        }
    }

    /// Image under `x ↦ x + t`.
    pub fn translate(&self, t: &Point) -> Polytope {
        Polytope {
            dim: self.dim,
            vertices: self.vertices.iter().map(|v| v.add(t)).collect(),
            facets: self
                .facets
                .iter()
                .map(|h| HalfSpace {
                    normal: h.normal.clone(),
                    offset: &h.offset + t.dot(&h.normal),
                })
                .collect(),
            degenerate: self.degenerate,
        }
    }

    /// Membership by facet inequalities; the boundary counts as inside.
    pub fn contains(&self, x: &Point) -> Result<bool, GeometryError> {
        check_dim(self.dim, x.dim())?;
        if self.is_empty() {
            return Ok(false);
        }
        Ok(self.facets.iter().all(|h| h.contains(x)))
    }

    /// Intersection with a half-space. Never fails: the result may be empty
    /// or flagged degenerate.
    pub fn clip(&self, h: &HalfSpace) -> Polytope {
        assert_eq!(self.dim, h.dim(), "half-space dimension mismatch");
        clip::clip(self, h)
    }

    /// Exact volume; zero for degenerate polytopes.
    pub fn volume(&self) -> RationalScalar {
        measure::volume(self)
    }

    /// Exact center of mass.
    pub fn centroid(&self) -> Result<Point, GeometryError> {
        measure::centroid(self)
    }

    /// Exact volume and centroid in one pass.
    pub fn mass_properties(&self) -> Result<(RationalScalar, Point), GeometryError> {
        measure::mass_properties(self)
    }

    /// Minimum and maximum of `v · x` over the polytope.
    pub fn support_range(&self, v: &[RationalScalar]) -> Option<(RationalScalar, RationalScalar)> {
        let mut values = self.vertices.iter().map(|p| p.dot(v));
        let first = values.next()?;
        Some(values.fold((first.clone(), first), |(lo, hi), x| {
            let lo = if x < lo { x.clone() } else { lo };
            let hi = if x > hi { x } else { hi };
            (lo, hi)
        }))
    }
}

pub(crate) fn check_dim(expected: usize, found: usize) -> Result<(), GeometryError> {
    if expected == found {
        Ok(())
    } else {
        Err(GeometryError::DimensionMismatch { expected, found })
    }
}
