use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::AsymptoticsError;
use crate::geometry::rational::from_f64;
use crate::geometry::{Point, Polytope};
use crate::koszul::{check_block_limit, kpq_weights_in, SyzygyOptions, ToricEmbedding, WeightCloud};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct DensityOptions {
    pub syzygy: SyzygyOptions,
    /// Largest `p` computed for each `d`; `None` means all of `1..=r_d`.
    pub p_max: Option<usize>,
}

/// One weight of one cloud, divided by `(p + q) d`.
#[derive(Clone, Debug, PartialEq)]
pub struct NormalizedWeight {
    pub point: Point,
    pub coords: Vec<f64>,
    pub p: usize,
    pub q: usize,
    pub d: u64,
    pub multiplicity: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DensitySample {
    pub x: Point,
    /// Index into [`DensityReport::weights`], `None` when there are no weights.
    pub nearest: Option<usize>,
    pub distance: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DensityReport {
    pub q: usize,
    pub d_max: u64,
    pub p_max: Option<usize>,
    /// Some `p <= r_d` was skipped because of `p_max`.
    pub restricted: bool,
    pub seed: u64,
    pub clouds: Vec<WeightCloud>,
    pub weights: Vec<NormalizedWeight>,
    pub samples: Vec<DensitySample>,
    /// Largest sample distance; `None` without samples or weights.
    pub covering_radius: Option<f64>,
}

impl DensityReport {
    /// Nearest normalized weight to `x` (first one on ties) and its distance.
    pub fn nearest(&self, x: &[f64]) -> Option<(usize, f64)> {
        nearest_in(&self.weights, x)
    }
}

fn nearest_in(weights: &[NormalizedWeight], x: &[f64]) -> Option<(usize, f64)> {
    weights
        .iter()
        .enumerate()
        .map(|(i, w)| (i, w.coords.iter().zip(x).map(|(a, b)| (a - b) * (a - b)).sum::<f64>()))
        .min_by(|a, b| a.1.total_cmp(&b.1).then(a.0.cmp(&b.0)))
        .map(|(i, s)| (i, s.sqrt()))
}

/// Uniform points of Δ by rejection from the bounding box.
pub(crate) fn sample_points(delta: &Polytope, count: usize, seed: u64) -> Vec<Point> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = delta.dim();
    let lo: Vec<f64> = (0..n).map(|k| delta.vertices().iter().map(|v| v.to_f64()[k]).fold(f64::INFINITY, f64::min)).collect();
    let hi: Vec<f64> = (0..n).map(|k| delta.vertices().iter().map(|v| v.to_f64()[k]).fold(f64::NEG_INFINITY, f64::max)).collect();
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let p = Point((0..n).map(|k| from_f64(rng.gen_range(lo[k]..=hi[k]))).collect());
        if delta.contains(&p).unwrap_or(false) {
            out.push(p);
        }
    }
    out
}

/// Covering statistics of the normalized weights of `K_{p,q}(X; L_d)` for
/// `1 <= p <= r_d` (capped by `p_max`) and `1 <= d <= d_max`, measured at
/// `sample_count` random points of Δ drawn from a ChaCha8 stream seeded with
/// `seed`.
pub fn density_report(
    delta: &Polytope,
    q: usize,
    d_max: u64,
    sample_count: usize,
    seed: u64,
    opts: &DensityOptions,
) -> Result<DensityReport, AsymptoticsError> {
    if d_max == 0 {
        return Err(AsymptoticsError::InvalidParameter("d_max must be positive".into()));
    }
    let mut plan = Vec::new();
    let mut restricted = false;
    for d in 1..=d_max {
        let emb = ToricEmbedding::new(delta, d)?;
        let r = emb.projective_dimension();
        let top = opts.p_max.map_or(r, |cap| cap.min(r));
        restricted |= top < r;
        // refuse oversized runs before any rank is computed
        for p in 1..=top {
            check_block_limit(&emb, p, q, opts.syzygy.block_limit)?;
        }
        plan.push((emb, top));
    }
    let mut clouds = Vec::new();
    for (emb, top) in &plan {
        for p in 1..=*top {
            clouds.push(kpq_weights_in(emb, p, q, &opts.syzygy)?);
        }
    }
    let weights: Vec<NormalizedWeight> = clouds
        .iter()
        .flat_map(|c| {
            c.normalized().into_iter().map(move |(point, multiplicity)| NormalizedWeight {
                coords: point.to_f64(),
                point,
                p: c.p,
                q: c.q,
                d: c.d,
                multiplicity,
            })
        })
        .collect();
    let points = sample_points(delta, sample_count, seed);
    let samples: Vec<DensitySample> = points
        .into_par_iter()
        .map(|x| {
            let found = nearest_in(&weights, &x.to_f64());
            DensitySample { x, nearest: found.map(|f| f.0), distance: found.map_or(f64::INFINITY, |f| f.1) }
        })
        .collect();
    let covering_radius = if weights.is_empty() {
        None
    } else {
        samples.iter().map(|s| s.distance).reduce(f64::max)
    };
    Ok(DensityReport {
        q,
        d_max,
        p_max: opts.p_max,
        restricted,
        seed,
        clouds,
        weights,
        samples,
        covering_radius,
    })
}
