use std::collections::BTreeSet;

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::AsymptoticsError;
use crate::geometry::{LatticePoint, LatticePointSet};
use crate::koszul::strand::next_subset;

/// Sums of `p` distinct points of a lattice point set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WedgeSumSet {
    pub base: LatticePointSet,
    pub p: usize,
    pub sums: BTreeSet<LatticePoint>,
    /// Every `p`-subset was enumerated. When false, `samples` subsets were
    /// drawn at random.
    pub exact: bool,
    pub samples: usize,
}

impl WedgeSumSet {
    pub fn contains(&self, point: &[i64]) -> bool {
        self.sums.contains(point)
    }
}

/// `C(n, k)`, saturating at `u128::MAX`.
pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) / (i + 1) stays integral at every step
        acc = match acc.checked_mul((n - i) as u128) {
            Some(v) => v / (i as u128 + 1),
            None => return u128::MAX,
        };
    }
    acc
}

fn dim_of(base: &LatticePointSet) -> usize {
    base.points.first().map_or(0, Vec::len)
}

fn sum_of(base: &LatticePointSet, idx: impl Iterator<Item = usize>) -> LatticePoint {
    let mut s = vec![0i64; dim_of(base)];
    for i in idx {
        for (a, b) in s.iter_mut().zip(&base.points[i]) {
            *a += b;
        }
    }
    s
}

/// All sums of `p` distinct points of `base`. Fails when there are more
/// than `limit` subsets.
pub fn wedge_sum_set(base: &LatticePointSet, p: usize, limit: u128) -> Result<WedgeSumSet, AsymptoticsError> {
    let n = base.len();
    let count = binomial(n, p);
    if count > limit {
        return Err(AsymptoticsError::LimitExceeded { count, limit });
    }
    let mut sums = BTreeSet::new();
    if p <= n {
        let mut subset: Vec<u32> = (0..p as u32).collect();
        loop {
            sums.insert(sum_of(base, subset.iter().map(|&i| i as usize)));
            if !next_subset(&mut subset, n) {
                break;
            }
        }
    }
    Ok(WedgeSumSet { base: base.clone(), p, sums, exact: true, samples: count as usize })
}

/// Sums over `samples` random `p`-subsets of `base`, drawn independently
/// (each without repetition of indices) from a ChaCha8 stream seeded with
/// `seed`. Repeated sums collapse.
pub fn wedge_sum_set_sampled(base: &LatticePointSet, p: usize, samples: usize, seed: u64) -> WedgeSumSet {
    let n = base.len();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut sums = BTreeSet::new();
    if p <= n {
        for _ in 0..samples {
            sums.insert(sum_of(base, sample(&mut rng, n, p).into_iter()));
        }
    }
    WedgeSumSet { base: base.clone(), p, sums, exact: false, samples }
}
