//! Torus weights of the syzygy spaces `K_{p,q}(X; L_d)` of a toric embedding.
//!
//! `K_{p,q}` is the middle cohomology of
//!
//! ```text
//! ∧^{p+1} V ⊗ H^0((q-1) L_d)  ->  ∧^p V ⊗ H^0(q L_d)  ->  ∧^{p-1} V ⊗ H^0((q+1) L_d)
//! ```
//!
//! and the differentials preserve the torus weight, so the complex splits
//! into independent blocks, one per weight. The multiplicity of a weight in
//! `K_{p,q}` is `dim(middle) - rank(d_in) - rank(d_out)` of its block.
//!
//! Ranks are computed over `F_p` by default (`p = 1_000_003`). Reduction
//! mod a prime can only lose rank, so the exact rational mode is kept as a
//! reference and [`RankMode::Checked`] runs both and refuses to answer if
//! they disagree.

mod cloud;
pub mod rank;
pub(crate) mod strand;

use thiserror::Error;

use crate::geometry::{GeometryError, Polytope};

pub use cloud::{check_block_limit, euler_check, kpq_weights, kpq_weights_in, WeightCloud};
pub use strand::{
    differential, koszul_block, term_degrees, GradedBasis, KoszulBlock, SparseMatrix,
    StrandBasisElement, Term, ToricEmbedding,
};

/// An integer torus weight (exponent vector).
pub type Weight = Vec<i64>;

pub const DEFAULT_PRIME: u64 = 1_000_003;
pub const DEFAULT_BLOCK_LIMIT: usize = 200_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SyzygyError {
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error("invalid syzygy input: {0}")]
    InvalidInput(String),
    #[error("{0} is not a prime below 2^32")]
    NotPrime(u64),
    #[error("block at weight {weight:?} (p = {p}) has {middle} middle basis elements, above the limit {limit}")]
    BlockTooLarge { p: usize, weight: Weight, middle: usize, limit: usize },
    #[error("prime unlucky, rerun: rank over F_{prime} differs from the rational rank at weight {weight:?}")]
    PrimeUnlucky { prime: u64, weight: Weight },
}

/// How block ranks are computed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RankMode {
    PrimeField(u64),
    ExactRational,
    /// Both, with a weight-by-weight comparison.
    Checked(u64),
}

impl Default for RankMode {
    fn default() -> Self {
        RankMode::PrimeField(DEFAULT_PRIME)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SyzygyOptions {
    pub mode: RankMode,
    /// Largest middle-term block that will be attempted.
    pub block_limit: usize,
}

impl Default for SyzygyOptions {
    fn default() -> Self {
        SyzygyOptions { mode: RankMode::default(), block_limit: DEFAULT_BLOCK_LIMIT }
    }
}

impl SyzygyOptions {
    pub fn exact() -> Self {
        SyzygyOptions { mode: RankMode::ExactRational, ..Default::default() }
    }

    pub fn checked() -> Self {
        SyzygyOptions { mode: RankMode::Checked(DEFAULT_PRIME), ..Default::default() }
    }
}

/// `(Δ, d, p, q)` for one syzygy space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SyzygyInput {
    pub polytope: Polytope,
    pub d: u64,
    pub p: usize,
    pub q: usize,
}

impl SyzygyInput {
    pub fn new(polytope: Polytope, d: u64, p: usize, q: usize) -> Result<Self, SyzygyError> {
        if d == 0 {
            return Err(SyzygyError::InvalidInput("d must be positive".into()));
        }
        if polytope.is_degenerate() {
            return Err(SyzygyError::InvalidInput("Δ must be full-dimensional".into()));
        }
        Ok(SyzygyInput { polytope, d, p, q })
    }
}
