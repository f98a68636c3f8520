use std::collections::BTreeSet;

use num::BigRational;

use super::AsymptoticsError;
use crate::geometry::{LatticePoint, LatticePointSet, Point, Polytope};

/// A subset of `dΔ ∩ Z^n` whose average, scaled back by `d`, is close to a
/// target point.
#[derive(Clone, Debug, PartialEq)]
pub struct AverageWitness {
    pub d: u64,
    pub subset: Vec<LatticePoint>,
    /// `(1 / |subset|) Σ w / d`, exact.
    pub average: Point,
    pub target: Point,
    pub distance: f64,
}

impl AverageWitness {
    /// Recomputes everything from `subset`: distinct points of `dΔ`, the same
    /// exact average, and a Euclidean distance to the target no larger than
    /// the claimed one.
    pub fn verify(&self, delta: &Polytope) -> bool {
        let distinct: BTreeSet<&LatticePoint> = self.subset.iter().collect();
        if self.subset.is_empty() || distinct.len() != self.subset.len() {
            return false;
        }
        let dilate = delta.dilate(self.d);
        if !self.subset.iter().all(|w| dilate.contains(&Point::from_ints(w)).unwrap_or(false)) {
            return false;
        }
        let average = exact_average(&self.subset, self.d);
        average == self.average && average.distance_f64(&self.target) <= self.distance
    }
}

fn exact_average(subset: &[LatticePoint], d: u64) -> Point {
    let n = subset[0].len();
    let div = (subset.len() as u64 * d) as i64;
    Point(
        (0..n)
            .map(|k| BigRational::new(subset.iter().map(|w| w[k]).sum::<i64>().into(), div.into()))
            .collect(),
    )
}

fn squared(v: &[f64]) -> f64 {
    v.iter().map(|c| c * c).sum()
}

/// Searches `d = 1..=d_max` for `p_d = schedule(d)` distinct lattice points of
/// `dΔ` whose average is within `epsilon` of `x`.
///
/// For each `d` the `p_d` points nearest to `d·x` are taken (a ball around
/// the target, ties broken lexicographically), then single swaps between the
/// subset and the rest are applied greedily while they reduce the distance
/// of the sum to `p_d·d·x`. Returns the first witness found.
pub fn average_hit(
    delta: &Polytope,
    x: &Point,
    epsilon: f64,
    schedule: impl Fn(u64) -> usize,
    d_max: u64,
) -> Result<Option<AverageWitness>, AsymptoticsError> {
    if !(epsilon > 0.0) {
        return Err(AsymptoticsError::InvalidParameter(format!("epsilon must be positive, got {epsilon}")));
    }
    if !delta.contains(x)? {
        return Err(AsymptoticsError::InvalidParameter("target is outside Δ".into()));
    }
    let xf = x.to_f64();
    for d in 1..=d_max {
        let w = LatticePointSet::of_dilate(delta, d)?;
        if w.is_empty() {
            continue;
        }
        let p = schedule(d).clamp(1, w.len());
        let subset = balanced_subset(&w.points, p, d, &xf);
        let average = exact_average(&subset, d);
        let distance = average.distance_f64(x);
        if distance < epsilon {
            return Ok(Some(AverageWitness { d, subset, average, target: x.clone(), distance }));
        }
    }
    Ok(None)
}

fn balanced_subset(points: &[LatticePoint], p: usize, d: u64, x: &[f64]) -> Vec<LatticePoint> {
    let scaled: Vec<f64> = x.iter().map(|c| c * d as f64).collect();
    let offset = |w: &LatticePoint| -> Vec<f64> { w.iter().zip(&scaled).map(|(&a, b)| a as f64 - b).collect() };
    let mut order: Vec<usize> = (0..points.len()).collect();
    order.sort_by(|&a, &b| squared(&offset(&points[a])).total_cmp(&squared(&offset(&points[b]))).then(a.cmp(&b)));
    let mut inside: Vec<usize> = order[..p].to_vec();
    let mut outside: Vec<usize> = order[p..].to_vec();
    // error of the sum relative to p·d·x
    let mut err: Vec<f64> = vec![0.0; x.len()];
    for &i in &inside {
        for (e, o) in err.iter_mut().zip(offset(&points[i])) {
            *e += o;
        }
    }
    loop {
        let current = squared(&err);
        let mut best: Option<(usize, usize, f64)> = None;
        for (a, &i) in inside.iter().enumerate() {
            for (b, &j) in outside.iter().enumerate() {
                let trial: Vec<f64> = (0..err.len())
                    .map(|k| err[k] - points[i][k] as f64 + points[j][k] as f64)
                    .collect();
                let value = squared(&trial);
                if value < best.map_or(current - 1e-12, |b| b.2) {
                    best = Some((a, b, value));
                }
            }
        }
        let Some((a, b, _)) = best else { break };
        let (i, j) = (inside[a], outside[b]);
        for k in 0..err.len() {
            err[k] += (points[j][k] - points[i][k]) as f64;
        }
        inside[a] = j;
        outside[b] = i;
    }
    inside.sort_unstable();
    inside.into_iter().map(|i| points[i].clone()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::builtin;
    use crate::geometry::rational::ratio;

    #[test]
    fn full_set_hits_centroid() {
        let sq = builtin("square").unwrap();
        let c = Point(vec![ratio(1, 2), ratio(1, 2)]);
        let w = average_hit(&sq, &c, 0.05, |d| ((d + 1) * (d + 1)) as usize, 4).unwrap().unwrap();
        assert_eq!(w.distance, 0.0);
        assert_eq!(w.average, c);
        assert!(w.verify(&sq));
    }

    #[test]
    fn corner_target_with_small_subsets() {
        let sq = builtin("square").unwrap();
        let x = Point::from_f64(&[0.1, 0.1]);
        let w = average_hit(&sq, &x, 0.05, |d| d as usize, 12).unwrap().expect("witness");
        assert!(w.distance < 0.05);
        assert_eq!(w.subset.len(), w.d as usize);
        assert!(w.verify(&sq));
    }

    #[test]
    fn huge_epsilon_takes_first_dilate() {
        let sq = builtin("square").unwrap();
        let x = Point::from_f64(&[0.3, 0.8]);
        let w = average_hit(&sq, &x, 2.0 * 2f64.sqrt(), |_| 1, 5).unwrap().unwrap();
        assert_eq!(w.d, 1);
        assert_eq!(w.subset.len(), 1);
    }

    #[test]
    fn tampered_witness_fails() {
        let sq = builtin("square").unwrap();
        let x = Point::from_f64(&[0.1, 0.1]);
        let mut w = average_hit(&sq, &x, 0.05, |d| d as usize, 12).unwrap().unwrap();
        w.distance /= 2.0;
        assert!(!w.verify(&sq));
    }
}
