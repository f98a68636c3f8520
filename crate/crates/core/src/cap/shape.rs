use num::{BigInt, BigRational, One, Signed, Zero};

use super::{CapBody, CapError};
use crate::geometry::rational::{from_f64, int, to_f64};
use crate::geometry::{Point, Polytope, RationalScalar};

type Q = RationalScalar;

/// An axis-aligned cube.
#[derive(Clone, Debug, PartialEq)]
pub struct Cube {
    pub center: Point,
    pub side: Q,
}

impl Cube {
    pub fn volume(&self) -> Q {
        num::pow(self.side.clone(), self.center.dim())
    }

    pub fn to_polytope(&self) -> Polytope {
        let n = self.center.dim();
        let half = &self.side / int(2);
        let corners = (0..1usize << n)
            .map(|mask| {
                Point(
                    (0..n)
                        .map(|k| {
                            let c = &self.center.0[k];
                            if mask >> k & 1 == 1 {
                                c + &half
                            } else {
                                c - &half
                            }
                        })
                        .collect(),
                )
            })
            .collect();
        Polytope::from_vertices(n, corners).expect("cube of positive side")
    }
}

/// A union of interior-disjoint cubes inside Δ.
#[derive(Clone, Debug)]
pub struct ShapeSpec {
    pub cubes: Vec<Cube>,
    pub volume: Q,
    pub center_of_mass: Point,
    pub target_volume: Q,
    pub resolution: usize,
}

impl ShapeSpec {
    /// Euclidean distance from the center of mass to `x`.
    pub fn balance_error(&self, x: &Point) -> f64 {
        self.center_of_mass.distance_f64(x)
    }
}

/// Builds a cube union of volume close to `target_volume` with center of
/// mass close to `x`, from the grid LP at resolution `n`.
///
/// The optimal fill is scaled by `target / mass`, which keeps its moment
/// about `x` at zero, and each cell with fill `f` becomes the cube about the
/// cell center with side `h·f^{1/dim}`. Sides are exact when the root is
/// rational and otherwise rounded to double precision, so the volume and
/// center of mass are reported exactly for the cubes actually produced.
pub fn shape_for(delta: &Polytope, x: &Point, target_volume: &Q, n: usize) -> Result<ShapeSpec, CapError> {
    CapBody::new(delta)?.shape_for(x, target_volume, n)
}

impl CapBody {
    pub fn shape_for(&self, x: &Point, target_volume: &Q, n: usize) -> Result<ShapeSpec, CapError> {
        if !target_volume.is_positive() {
            return Err(CapError::EmptyShape);
        }
        let sol = self.solve_grid_lp(x, n)?;
        if *target_volume > sol.mass {
            return Err(CapError::ExceedsTau { target: to_f64(target_volume), available: to_f64(&sol.mass) });
        }
        let dim = self.dim();
        let scale = target_volume / &sol.mass;
        let mut cubes = Vec::new();
        for (cell, fill) in sol.cells.iter().zip(&sol.fill) {
            if fill.is_zero() {
                continue;
            }
            let root = nth_root(&(fill * &scale), dim as u32).min(Q::one());
            cubes.push(Cube { center: cell.center.clone(), side: &sol.side * root });
        }
        let mut volume = Q::zero();
        let mut moment = Point::origin(dim);
        for c in &cubes {
            let v = c.volume();
            moment = moment.add(&c.center.scale(&v));
            volume += v;
        }
        let center_of_mass = moment.scale(&volume.recip());
        Ok(ShapeSpec { cubes, volume, center_of_mass, target_volume: target_volume.clone(), resolution: n })
    }
}

/// `q^{1/k}`: exact for perfect powers, otherwise the double-precision root.
fn nth_root(q: &Q, k: u32) -> Q {
    let num = q.numer().nth_root(k);
    let den = q.denom().nth_root(k);
    if num.pow(k) == *q.numer() && den.pow(k) == *q.denom() {
        return BigRational::new(num, den);
    }
    let r = to_f64(q).powf(1.0 / k as f64);
    if r > 0.0 {
        from_f64(r)
    } else {
        BigRational::new(BigInt::one(), BigInt::from(1u64 << 52))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::builtin;
    use crate::geometry::rational::ratio;

    #[test]
    fn roots() {
        assert_eq!(nth_root(&ratio(9, 4), 2), ratio(3, 2));
        assert_eq!(nth_root(&ratio(1, 8), 3), ratio(1, 2));
        assert!((to_f64(&nth_root(&ratio(1, 2), 2)) - 0.5f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn corner_shape_balances() {
        let sq = builtin("square").unwrap();
        let x = Point(vec![ratio(1, 4), ratio(1, 4)]);
        let s = shape_for(&sq, &x, &ratio(1, 5), 16).unwrap();
        assert!(s.balance_error(&x) < 1e-12);
        assert!((to_f64(&s.volume) - 0.2).abs() < 1e-12);
        // independent check through the polytope centroid routine
        let mut vol = Q::zero();
        let mut moment = Point::origin(2);
        for c in &s.cubes {
            let (v, g) = c.to_polytope().mass_properties().unwrap();
            assert!(sq.contains(&c.center).unwrap());
            moment = moment.add(&g.scale(&v));
            vol += v;
        }
        assert_eq!(vol, s.volume);
        assert_eq!(moment.scale(&vol.recip()), s.center_of_mass);
    }

    #[test]
    fn centroid_target_is_exact() {
        let sq = builtin("square").unwrap();
        let x = Point(vec![ratio(1, 2), ratio(1, 2)]);
        // full fill scaled by 1 - 1/N is not a perfect square; 1/4 is
        let s = shape_for(&sq, &x, &ratio(1, 4), 8).unwrap();
        assert_eq!(s.volume, ratio(1, 4));
        assert_eq!(s.center_of_mass, x);
        assert_eq!(s.cubes.len(), 64);
        let near_full = shape_for(&sq, &x, &ratio(7, 8), 8).unwrap();
        assert_eq!(near_full.cubes.len(), 64);
        assert!(near_full.balance_error(&x) < 1e-12);
    }

    #[test]
    fn errors() {
        let sq = builtin("square").unwrap();
        let x = Point(vec![ratio(1, 4), ratio(1, 4)]);
        assert_eq!(shape_for(&sq, &x, &int(0), 8).unwrap_err(), CapError::EmptyShape);
        assert!(matches!(shape_for(&sq, &x, &ratio(9, 10), 8), Err(CapError::ExceedsTau { .. })));
    }
}
