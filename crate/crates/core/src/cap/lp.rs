//! Grid relaxation of `τ_x`: the largest total mass of grid cells (each
//! filled to a fraction in `[0, 1]`) whose center of mass is `x`.

use std::cmp::Ordering;

use num::{One, Signed, Zero};

use super::tau::{TauEstimate, TauFlag, TauMethod};
use super::{CapBody, CapError};
use crate::geometry::rational::{int, to_f64};
use crate::geometry::{Point, Polytope, RationalScalar};

type Q = RationalScalar;

/// A grid cell lying entirely inside Δ.
#[derive(Clone, Debug, PartialEq)]
pub struct GridCell {
    /// Position of the cell in the bounding-box grid.
    pub index: Vec<usize>,
    pub center: Point,
}

/// Optimal fill fractions for every admissible cell.
#[derive(Clone, Debug)]
pub struct GridLpSolution {
    pub resolution: usize,
    /// Cell side length `h`.
    pub side: Q,
    pub cells: Vec<GridCell>,
    pub fill: Vec<Q>,
    /// `Σ fill · h^n`.
    pub mass: Q,
    /// `vol(Δ) - (number of cells) · h^n`.
    pub uncovered: Q,
}

impl GridLpSolution {
    pub fn cell_volume(&self) -> Q {
        num::pow(self.side.clone(), self.cells.first().map_or(0, |c| c.center.dim()))
    }
}

/// Grid-LP estimate of `τ_x / vol(Δ)` at resolution `n` (cell side is the
/// largest bounding-box extent divided by `n`).
///
/// Every feasible fill is an actual union of cubes with center of mass `x`
/// (shrink each cell's cube about its center), so the value is a lower bound
/// for `τ_x` up to the cells Δ could not hold. The reported error bound is
/// the uncovered fraction plus `h` over the smallest extent.
pub fn tau_grid_lp(delta: &Polytope, x: &Point, n: usize) -> Result<TauEstimate, CapError> {
    CapBody::new(delta)?.tau_grid_lp(x, n)
}

impl CapBody {
    pub fn grid_cells(&self, n: usize) -> (Q, Vec<GridCell>) {
        let dim = self.dim();
        let verts = self.polytope().vertices();
        let lo: Vec<Q> = (0..dim).map(|k| verts.iter().map(|v| v.0[k].clone()).min().unwrap()).collect();
        let hi: Vec<Q> = (0..dim).map(|k| verts.iter().map(|v| v.0[k].clone()).max().unwrap()).collect();
        let extent = (0..dim).map(|k| &hi[k] - &lo[k]).max().unwrap();
        let h = extent / int(n as i64);
        let counts: Vec<usize> = (0..dim)
            .map(|k| {
                let c = ((&hi[k] - &lo[k]) / &h).ceil();
                c.to_integer().try_into().unwrap_or(0)
            })
            .collect();
        let half = &h / int(2);
        let mut cells = Vec::new();
        let mut index = vec![0usize; dim];
        if counts.contains(&0) {
            return (h, cells);
        }
        'sweep: loop {
            let corner: Vec<Q> = (0..dim).map(|k| &lo[k] + &h * int(index[k] as i64)).collect();
            let inside = (0..1usize << dim).all(|mask| {
                let p = Point(
                    (0..dim)
                        .map(|k| if mask >> k & 1 == 1 { &corner[k] + &h } else { corner[k].clone() })
                        .collect(),
                );
                self.polytope().contains(&p).unwrap_or(false)
            });
            if inside {
                let center = Point(corner.iter().map(|c| c + &half).collect());
                cells.push(GridCell { index: index.clone(), center });
            }
            let mut k = dim;
            loop {
                if k == 0 {
                    break 'sweep;
                }
                k -= 1;
                index[k] += 1;
                if index[k] < counts[k] {
                    break;
                }
                index[k] = 0;
            }
        }
        (h, cells)
    }

    pub fn solve_grid_lp(&self, x: &Point, n: usize) -> Result<GridLpSolution, CapError> {
        if n < 4 {
            return Err(CapError::InvalidParameter(format!("grid resolution must be at least 4, got {n}")));
        }
        self.check_point(x)?;
        let (side, cells) = self.grid_cells(n);
        let columns: Vec<Vec<Q>> = cells.iter().map(|c| c.center.sub(x).0).collect();
        let fill = solve_fill(self.dim(), &columns);
        let cell_volume = num::pow(side.clone(), self.dim());
        let mass = fill.iter().fold(Q::zero(), |acc, f| acc + f) * &cell_volume;
        let uncovered = self.volume() - &cell_volume * int(cells.len() as i64);
        Ok(GridLpSolution { resolution: n, side, cells, fill, mass, uncovered })
    }

    pub fn tau_grid_lp(&self, x: &Point, n: usize) -> Result<TauEstimate, CapError> {
        if !self.check_point(x)? {
            return Ok(TauEstimate::outside(x, TauMethod::GridLp, n, TauFlag::OutsideBody));
        }
        let sol = self.solve_grid_lp(x, n)?;
        let verts = self.polytope().vertices();
        let min_extent = (0..self.dim())
            .map(|k| {
                let vals = verts.iter().map(|v| &v.0[k]);
                vals.clone().max().unwrap() - vals.min().unwrap()
            })
            .min()
            .unwrap();
        let vol = self.volume();
        let error_bound =
            to_f64(&(&sol.uncovered / vol)) + to_f64(&(&sol.side / min_extent));
        Ok(TauEstimate {
            x: x.clone(),
            tau_over_vol: to_f64(&(&sol.mass / vol)),
            method: TauMethod::GridLp,
            resolution: n,
            error_bound,
            flag: sol.mass.is_zero().then_some(TauFlag::Infeasible),
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum Var {
    /// Slack fixed at zero; only present in the starting basis.
    Fixed(usize),
    Cell(usize),
}

/// Scalars the simplex can run over: exact rationals, or floats with a
/// tolerance for the warm start.
trait LpScalar:
    Clone
    + PartialOrd
    + Zero
    + One
    + std::ops::Add<Output = Self>
    + std::ops::Sub<Output = Self>
    + std::ops::Mul<Output = Self>
    + std::ops::Div<Output = Self>
    + std::ops::Neg<Output = Self>
{
    fn positive(&self) -> bool;
    fn negative(&self) -> bool;
    fn magnitude(&self) -> Self;
}

impl LpScalar for Q {
    fn positive(&self) -> bool {
        self.is_positive()
    }
    fn negative(&self) -> bool {
        self.is_negative()
    }
    fn magnitude(&self) -> Self {
        self.abs()
    }
}

const FLOAT_EPS: f64 = 1e-11;

impl LpScalar for f64 {
    fn positive(&self) -> bool {
        *self > FLOAT_EPS
    }
    fn negative(&self) -> bool {
        *self < -FLOAT_EPS
    }
    fn magnitude(&self) -> Self {
        self.abs()
    }
}

/// Maximizes `Σ λ_j` subject to `Σ λ_j a_j = 0`, `0 <= λ_j <= 1`, by the
/// bounded-variable revised simplex method.
///
/// A cold start uses `m` artificial columns `e_k` fixed at zero as the basis;
/// they leave through degenerate pivots. Dantzig pricing with a fall-back to
/// Bland's rule after a run of degenerate pivots.
struct BoundedSimplex<'a, T> {
    m: usize,
    columns: &'a [Vec<T>],
    basis: Vec<Var>,
    binv: Vec<Vec<T>>,
    values: Vec<T>,
    basic: Vec<bool>,
    at_upper: Vec<bool>,
}

const DEGENERATE_RUN: usize = 50;

fn identity<T: LpScalar>(m: usize) -> Vec<Vec<T>> {
    (0..m).map(|i| (0..m).map(|k| if i == k { T::one() } else { T::zero() }).collect()).collect()
}

impl<'a, T: LpScalar> BoundedSimplex<'a, T> {
    fn new(m: usize, columns: &'a [Vec<T>]) -> Self {
        BoundedSimplex {
            m,
            columns,
            basis: (0..m).map(Var::Fixed).collect(),
            binv: identity(m),
            values: vec![T::zero(); m],
            basic: vec![false; columns.len()],
            at_upper: vec![false; columns.len()],
        }
    }

    /// Starts from a given basis and set of variables at their upper bound.
    /// `None` if the basis is singular or the resulting point is infeasible.
    fn with_basis(m: usize, columns: &'a [Vec<T>], basis: Vec<Var>, at_upper: Vec<bool>) -> Option<Self> {
        let mut s = BoundedSimplex { m, columns, basis: Vec::new(), binv: identity(m), values: vec![T::zero(); m], basic: vec![false; columns.len()], at_upper };
        // invert the basis matrix by Gauss-Jordan on [B | I]
        let mut b: Vec<Vec<T>> = (0..m).map(|i| basis.iter().map(|&v| s.entry(v, i)).collect()).collect();
        let mut inv = identity::<T>(m);
        for col in 0..m {
            let pivot = (col..m).find(|&r| b[r][col].positive() || b[r][col].negative())?;
            b.swap(pivot, col);
            inv.swap(pivot, col);
            let p = b[col][col].clone();
            for k in 0..m {
                b[col][k] = b[col][k].clone() / p.clone();
                inv[col][k] = inv[col][k].clone() / p.clone();
            }
            for r in 0..m {
                if r == col {
                    continue;
                }
                let f = b[r][col].clone();
                for k in 0..m {
                    b[r][k] = b[r][k].clone() - f.clone() * b[col][k].clone();
                    inv[r][k] = inv[r][k].clone() - f.clone() * inv[col][k].clone();
                }
            }
        }
        let mut rhs = vec![T::zero(); m];
        for (j, col) in columns.iter().enumerate() {
            if s.at_upper[j] {
                for i in 0..m {
                    rhs[i] = rhs[i].clone() - col[i].clone();
                }
            }
        }
        for (i, &v) in basis.iter().enumerate() {
            let value = dot(&inv[i], &rhs);
            if value.negative() || (value.clone() - Self::upper(v)).positive() {
                return None;
            }
            s.values[i] = value;
            if let Var::Cell(j) = v {
                s.basic[j] = true;
                s.at_upper[j] = false;
            }
        }
        s.basis = basis;
        s.binv = inv;
        Some(s)
    }

    fn entry(&self, v: Var, i: usize) -> T {
        match v {
            Var::Fixed(k) => if k == i { T::one() } else { T::zero() },
            Var::Cell(j) => self.columns[j][i].clone(),
        }
    }

    fn cost(v: Var) -> T {
        match v {
            Var::Fixed(_) => T::zero(),
            Var::Cell(_) => T::one(),
        }
    }

    fn upper(v: Var) -> T {
        Self::cost(v)
    }

    /// Runs to optimality, or gives up after `max_passes` pricing passes.
    fn run(&mut self, max_passes: usize) -> bool {
        let mut bland = false;
        let mut degenerate = 0usize;
        for _ in 0..max_passes {
            let duals: Vec<T> = (0..self.m)
                .map(|k| {
                    (0..self.m).fold(T::zero(), |acc, i| acc + Self::cost(self.basis[i]) * self.binv[i][k].clone())
                })
                .collect();
            let mut candidates: Vec<(usize, T)> = (0..self.columns.len())
                .filter(|&j| !self.basic[j])
                .filter_map(|j| {
                    let r = T::one() - dot(&duals, &self.columns[j]);
                    let improving = if self.at_upper[j] { r.negative() } else { r.positive() };
                    improving.then_some((j, r))
                })
                .collect();
            if candidates.is_empty() {
                return true;
            }
            if !bland {
                candidates.sort_by(|a, b| {
                    b.1.magnitude().partial_cmp(&a.1.magnitude()).unwrap_or(Ordering::Equal).then(a.0.cmp(&b.0))
                });
            }
            for (j, _) in candidates {
                match self.step(j, bland) {
                    Step::Flip => continue,
                    Step::Pivot { degenerate: d } => {
                        degenerate = if d { degenerate + 1 } else { 0 };
                        if degenerate > DEGENERATE_RUN {
                            bland = true;
                        }
                        break;
                    }
                }
            }
        }
        false
    }

    fn fill(&self) -> Vec<T> {
        let mut fill: Vec<T> = self.at_upper.iter().map(|&u| if u { T::one() } else { T::zero() }).collect();
        for (i, v) in self.basis.iter().enumerate() {
            if let Var::Cell(j) = v {
                fill[*j] = self.values[i].clone();
            }
        }
        fill
    }

    fn step(&mut self, j: usize, bland: bool) -> Step {
        let col = &self.columns[j];
        let alpha: Vec<T> = (0..self.m).map(|i| dot(&self.binv[i], col)).collect();
        let increasing = !self.at_upper[j];
        // basic values move by `delta * t` as the entering variable moves by t
        let delta: Vec<T> = alpha.iter().map(|a| if increasing { -a.clone() } else { a.clone() }).collect();
        let mut best_t = T::one();
        let mut leave: Option<usize> = None;
        for i in 0..self.m {
            let t = if delta[i].negative() {
                self.values[i].clone() / -delta[i].clone()
            } else if delta[i].positive() {
                (Self::upper(self.basis[i]) - self.values[i].clone()) / delta[i].clone()
            } else {
                continue;
            };
            let better = match t.partial_cmp(&best_t) {
                Some(Ordering::Less) => true,
                Some(Ordering::Equal) => bland && leave.is_some_and(|l| self.basis[i] < self.basis[l]),
                _ => false,
            };
            if better {
                best_t = t;
                leave = Some(i);
            }
        }
        for i in 0..self.m {
            self.values[i] = self.values[i].clone() + delta[i].clone() * best_t.clone();
        }
        let Some(r) = leave else {
            self.at_upper[j] = !self.at_upper[j];
            return Step::Flip;
        };
        if let Var::Cell(old) = self.basis[r] {
            self.basic[old] = false;
            self.at_upper[old] = self.values[r].clone().positive() || self.values[r] == T::one();
        }
        let entering = if increasing { best_t.clone() } else { T::one() - best_t.clone() };
        self.basis[r] = Var::Cell(j);
        self.basic[j] = true;
        self.at_upper[j] = false;
        self.values[r] = entering;
        let pivot = alpha[r].clone();
        let row: Vec<T> = self.binv[r].iter().map(|b| b.clone() / pivot.clone()).collect();
        for i in 0..self.m {
            if i != r && (alpha[i].positive() || alpha[i].negative()) {
                for k in 0..self.m {
                    self.binv[i][k] = self.binv[i][k].clone() - alpha[i].clone() * row[k].clone();
                }
            }
        }
        self.binv[r] = row;
        Step::Pivot { degenerate: !best_t.positive() }
    }
}

enum Step {
    Flip,
    Pivot { degenerate: bool },
}

fn dot<T: LpScalar>(a: &[T], b: &[T]) -> T {
    a.iter().zip(b).fold(T::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
}

/// Exact optimum. A float run supplies the starting basis when it finishes
/// and its basis is exactly feasible; otherwise the exact run starts cold.
fn solve_fill(m: usize, columns: &[Vec<Q>]) -> Vec<Q> {
    let floats: Vec<Vec<f64>> = columns.iter().map(|c| c.iter().map(to_f64).collect()).collect();
    let mut approx = BoundedSimplex::new(m, &floats);
    let warm = if approx.run(100 * columns.len().max(1)) {
        BoundedSimplex::with_basis(m, columns, approx.basis.clone(), approx.at_upper.clone())
    } else {
        None
    };
    let mut exact = warm.unwrap_or_else(|| BoundedSimplex::new(m, columns));
    exact.run(usize::MAX);
    exact.fill()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::builtin;
    use crate::geometry::rational::ratio;

    /// Optimum over all vertices of the feasible set: with one constraint a
    /// vertex has at most one fractional coordinate.
    fn brute_force(a: &[i64]) -> Q {
        let n = a.len();
        let mut best = Q::zero();
        for free in 0..n {
            for mask in 0..1u32 << n {
                if mask >> free & 1 == 1 {
                    continue;
                }
                let rest: i64 = (0..n).filter(|&i| mask >> i & 1 == 1).map(|i| a[i]).sum();
                let lambda = if a[free] == 0 {
                    if rest != 0 {
                        continue;
                    }
                    Q::one()
                } else {
                    ratio(-rest, a[free])
                };
                if lambda < Q::zero() || lambda > Q::one() {
                    continue;
                }
                let total = lambda + int(mask.count_ones() as i64);
                best = best.max(total);
            }
        }
        best
    }

    proptest::proptest! {
        #[test]
        fn simplex_matches_vertex_enumeration(a in proptest::collection::vec(-6i64..=6, 1..8)) {
            let cols: Vec<Vec<Q>> = a.iter().map(|&v| vec![int(v)]).collect();
            let fill = solve_fill(1, &cols);
            let moment = fill.iter().zip(&a).fold(Q::zero(), |acc, (f, &v)| acc + f * int(v));
            proptest::prop_assert!(moment.is_zero());
            let total = fill.iter().fold(Q::zero(), |acc, f| acc + f);
            proptest::prop_assert_eq!(&total, &brute_force(&a));
            let mut cold = BoundedSimplex::new(1, &cols);
            proptest::prop_assert!(cold.run(usize::MAX));
            let cold_total = cold.fill().iter().fold(Q::zero(), |acc, f| acc + f);
            proptest::prop_assert_eq!(cold_total, total);
        }
    }

    #[test]
    fn two_cells_balance() {
        // a = 1 and a = -2: λ_0 = 1, λ_1 = 1/2
        let cols = vec![vec![int(1)], vec![int(-2)]];
        let fill = solve_fill(1, &cols);
        assert_eq!(fill, vec![int(1), ratio(1, 2)]);
        let one_sided = vec![vec![int(1)], vec![int(3)]];
        assert_eq!(solve_fill(1, &one_sided), vec![int(0), int(0)]);
    }

    #[test]
    fn fill_is_balanced() {
        let body = CapBody::new(&builtin("square").unwrap()).unwrap();
        let x = Point(vec![ratio(3, 10), ratio(1, 5)]);
        let sol = body.solve_grid_lp(&x, 8).unwrap();
        assert_eq!(sol.cells.len(), 64);
        let mut moment = Point::origin(2);
        for (c, f) in sol.cells.iter().zip(&sol.fill) {
            assert!(*f >= int(0) && *f <= int(1));
            moment = moment.add(&c.center.sub(&x).scale(f));
        }
        assert_eq!(moment, Point::origin(2));
    }

    #[test]
    fn centroid_fills_everything() {
        let sq = builtin("square").unwrap();
        let t = tau_grid_lp(&sq, &Point(vec![ratio(1, 2), ratio(1, 2)]), 8).unwrap();
        assert_eq!(t.tau_over_vol, 1.0);
        assert_eq!(t.flag, None);
        let tri = builtin("simplex2").unwrap();
        let t = tau_grid_lp(&tri, &tri.centroid().unwrap(), 12).unwrap();
        assert!(t.tau_over_vol > 0.7 && t.tau_over_vol <= 1.0, "{t:?}");
    }

    #[test]
    fn corner_is_infeasible() {
        let sq = builtin("square").unwrap();
        let t = tau_grid_lp(&sq, &Point::from_ints(&[0, 0]), 8).unwrap();
        assert_eq!(t.flag, Some(TauFlag::Infeasible));
        assert_eq!(t.tau_over_vol, 0.0);
        let out = tau_grid_lp(&sq, &Point::from_ints(&[2, 0]), 8).unwrap();
        assert_eq!(out.flag, Some(TauFlag::OutsideBody));
    }

    #[test]
    fn half_slab_value() {
        let sq = builtin("square").unwrap();
        let t = tau_grid_lp(&sq, &Point(vec![ratio(1, 2), ratio(1, 4)]), 16).unwrap();
        assert_eq!(t.tau_over_vol, 0.5);
    }
}
