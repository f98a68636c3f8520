//! Weight clouds of `K_{p,q}` and the strand Euler characteristic check.

use std::collections::BTreeMap;

use num::BigRational;
use rayon::prelude::*;

use super::rank::{rank, PrimeField, Rationals};
use super::strand::{block_from_bases, KoszulBlock, Term, ToricEmbedding};
use super::{RankMode, SyzygyError, SyzygyInput, SyzygyOptions, Weight};
use crate::geometry::{Point, Polytope};

/// Torus weights of `K_{p,q}(X; L_d)` with multiplicities.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightCloud {
    pub p: usize,
    pub q: usize,
    pub d: u64,
    pub dim: usize,
    /// Weight ↦ dimension of that weight space; zero multiplicities are
    /// never stored.
    pub entries: BTreeMap<Weight, usize>,
}

impl WeightCloud {
    /// `(p + q) d`, the factor that brings weights back into Δ.
    pub fn divisor(&self) -> u64 {
        (self.p + self.q) as u64 * self.d
    }

    pub fn total_dimension(&self) -> usize {
        self.entries.values().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn normalize(&self, weight: &[i64]) -> Option<Point> {
        let div = self.divisor();
        (div > 0).then(|| {
            Point(
                weight
                    .iter()
                    .map(|&w| BigRational::new(w.into(), div.into()))
                    .collect(),
            )
        })
    }

    /// Normalized weights `w / ((p+q) d)` with multiplicities; empty when
    /// `p = q = 0`, where the normalization is undefined.
    pub fn normalized(&self) -> Vec<(Point, usize)> {
        self.entries
            .iter()
            .filter_map(|(w, &m)| self.normalize(w).map(|x| (x, m)))
            .collect()
    }

    /// Every weight lies in `(p+q) d Δ`.
    pub fn is_confined_to(&self, polytope: &Polytope) -> bool {
        let scaled = polytope.dilate(self.divisor().max(1));
        self.entries.keys().all(|w| {
            if self.divisor() == 0 {
                return w.iter().all(|&c| c == 0);
            }
            let pt = Point::from_ints(w);
            scaled.contains(&pt).unwrap_or(false)
        })
    }
}

fn block_rank(block: &KoszulBlock, mode: RankMode) -> Result<usize, SyzygyError> {
    let prime_rank = |modulus: u64| -> Result<usize, SyzygyError> {
        let field = PrimeField::new(modulus).ok_or(SyzygyError::NotPrime(modulus))?;
        Ok(rank(&field, &block.d_in.columns) + rank(&field, &block.d_out.columns))
    };
    let exact_rank = || rank(&Rationals, &block.d_in.columns) + rank(&Rationals, &block.d_out.columns);
    match mode {
        RankMode::PrimeField(m) => prime_rank(m),
        RankMode::ExactRational => Ok(exact_rank()),
        RankMode::Checked(m) => {
            let fast = prime_rank(m)?;
            let exact = exact_rank();
            if fast != exact {
                return Err(SyzygyError::PrimeUnlucky { prime: m, weight: block.weight.clone() });
            }
            Ok(exact)
        }
    }
}

/// Fails with [`SyzygyError::BlockTooLarge`] naming the first weight (in
/// lexicographic order) whose middle term has more than `limit` elements.
/// Counts basis elements without storing them.
pub fn check_block_limit(emb: &ToricEmbedding, p: usize, q: usize, limit: usize) -> Result<(), SyzygyError> {
    let (k, m) = super::strand::term_degrees(p, q, Term::Middle);
    let sizes = emb.term_dimensions(k, m);
    match sizes.into_iter().find(|(_, n)| *n > limit) {
        Some((weight, middle)) => Err(SyzygyError::BlockTooLarge { p, weight, middle, limit }),
        None => Ok(()),
    }
}

/// Weight cloud of `K_{p,q}(X; L_d)`.
pub fn kpq_weights(input: &SyzygyInput, opts: &SyzygyOptions) -> Result<WeightCloud, SyzygyError> {
    let emb = ToricEmbedding::new(&input.polytope, input.d)?;
    kpq_weights_in(&emb, input.p, input.q, opts)
}

/// Like [`kpq_weights`], reusing the lattice data of an embedding.
pub fn kpq_weights_in(
    emb: &ToricEmbedding,
    p: usize,
    q: usize,
    opts: &SyzygyOptions,
) -> Result<WeightCloud, SyzygyError> {
    if let RankMode::PrimeField(m) | RankMode::Checked(m) = opts.mode {
        PrimeField::new(m).ok_or(SyzygyError::NotPrime(m))?;
    }
    check_block_limit(emb, p, q, opts.block_limit)?;
    let middle = emb.strand_basis(p, q, Term::Middle);
    let mut left = emb.strand_basis(p, q, Term::Left);
    let mut right = emb.strand_basis(p, q, Term::Right);
    let jobs: Vec<_> = middle
        .into_iter()
        .map(|(w, mid)| {
            let l = left.remove(&w).unwrap_or_default();
            let r = right.remove(&w).unwrap_or_default();
            (w, l, mid, r)
        })
        .collect();
    let results: Vec<Result<(Weight, usize), SyzygyError>> = jobs
        .into_par_iter()
        .map(|(w, l, mid, r)| {
            let block = block_from_bases(emb, &w, l, mid, r);
            let dim = block.middle.len() - block_rank(&block, opts.mode)?;
            Ok((w, dim))
        })
        .collect();
    let mut entries = BTreeMap::new();
    for r in results {
        let (w, dim) = r?;
        if dim > 0 {
            entries.insert(w, dim);
        }
    }
    Ok(WeightCloud { p, q, d: emb.d(), dim: emb.dim(), entries })
}

/// Checks, weight by weight, that the alternating sum of the strand terms
/// `C_i = ∧^{s-i} V ⊗ H^0(i L_d)` equals the alternating sum of the
/// `K_{s-i,i}` computed block by block.
pub fn euler_check(
    polytope: &Polytope,
    d: u64,
    s: usize,
    opts: &SyzygyOptions,
) -> Result<bool, SyzygyError> {
    let emb = ToricEmbedding::new(polytope, d)?;
    let mut chain: BTreeMap<Weight, i64> = BTreeMap::new();
    let mut homology: BTreeMap<Weight, i64> = BTreeMap::new();
    for i in 0..=s {
        let sign = if i % 2 == 0 { 1 } else { -1 };
        for (w, n) in emb.term_dimensions((s - i) as i64, i as i64) {
            *chain.entry(w).or_insert(0) += sign * n as i64;
        }
        for (w, n) in kpq_weights_in(&emb, s - i, i, opts)?.entries {
            *homology.entry(w).or_insert(0) += sign * n as i64;
        }
    }
    chain.retain(|_, v| *v != 0);
    homology.retain(|_, v| *v != 0);
    Ok(chain == homology)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::builtin;

    fn cloud(name: &str, d: u64, p: usize, q: usize, opts: SyzygyOptions) -> WeightCloud {
        let input = SyzygyInput::new(builtin(name).unwrap(), d, p, q).unwrap();
        kpq_weights(&input, &opts).unwrap()
    }

    #[test]
    fn conic_has_one_quadric() {
        for opts in [SyzygyOptions::default(), SyzygyOptions::exact()] {
            let c = cloud("segment", 2, 1, 1, opts);
            assert_eq!(c.entries, BTreeMap::from([(vec![2], 1)]));
            assert_eq!(c.normalized()[0].0, Point(vec![BigRational::new(1.into(), 2.into())]));
        }
    }

    #[test]
    fn k00_is_trivial() {
        for name in ["segment", "square", "simplex2"] {
            let c = cloud(name, 2, 0, 0, SyzygyOptions::default());
            assert_eq!(c.entries.len(), 1);
            assert_eq!(c.entries.values().next(), Some(&1));
            assert!(c.entries.keys().next().unwrap().iter().all(|&x| x == 0));
            assert!(c.normalized().is_empty());
        }
    }

    #[test]
    fn block_limit_names_weight() {
        let input = SyzygyInput::new(builtin("simplex2").unwrap(), 2, 1, 1).unwrap();
        let opts = SyzygyOptions { block_limit: 2, ..Default::default() };
        match kpq_weights(&input, &opts) {
            Err(SyzygyError::BlockTooLarge { p: 1, middle, limit: 2, .. }) => assert!(middle > 2),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn rejects_composite_modulus() {
        let input = SyzygyInput::new(builtin("segment").unwrap(), 2, 1, 1).unwrap();
        let opts = SyzygyOptions { mode: RankMode::PrimeField(1_000_001), ..Default::default() };
        assert_eq!(kpq_weights(&input, &opts), Err(SyzygyError::NotPrime(1_000_001)));
    }

    #[test]
    fn unlucky_prime_is_reported() {
        use crate::koszul::SparseMatrix;
        // d_out = [2]: rank 1 over Q, rank 0 over F_2
        let block = KoszulBlock {
            weight: vec![7],
            left: vec![],
            middle: vec![],
            right: vec![],
            d_in: SparseMatrix::zero(1, 0),
            d_out: SparseMatrix { rows: 1, cols: 1, columns: vec![vec![(0, 2)]] },
        };
        assert_eq!(block_rank(&block, RankMode::ExactRational), Ok(1));
        assert_eq!(block_rank(&block, RankMode::PrimeField(2)), Ok(0));
        assert_eq!(
            block_rank(&block, RankMode::Checked(2)),
            Err(SyzygyError::PrimeUnlucky { prime: 2, weight: vec![7] })
        );
        assert_eq!(block_rank(&block, RankMode::Checked(3)), Ok(1));
    }

    #[test]
    fn euler_examples() {
        let opts = SyzygyOptions::default();
        assert!(euler_check(&builtin("segment").unwrap(), 2, 2, &opts).unwrap());
        assert!(euler_check(&builtin("simplex2").unwrap(), 2, 2, &opts).unwrap());
        assert!(euler_check(&builtin("square").unwrap(), 1, 0, &opts).unwrap());
    }
}
