//! Torus weights of syzygies of toric embeddings, and the convex geometry
//! used to describe where they accumulate.
//!
//! - [`geometry`]: exact rational polytopes (clipping, volume, centroid,
//!   lattice points).
//! - [`koszul`]: weight clouds of `K_{p,q}(X; L_d)` from the Koszul strand.
//! - [`cap`]: caps of fixed volume, their centroids, the regions `Δ(a)` and
//!   the function `τ`.
//! - [`asymptotics`]: finite-`d` experiments on density and subset averages.
//! - [`output`]: CSV and SVG writers.

pub mod asymptotics;
pub mod cap;
pub mod geometry;
pub mod koszul;
pub mod output;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/polytopes.md")]
    mod polytopes {}
    #[doc = include_str!("../../../book/src/weight_clouds.md")]
    mod weight_clouds {}
    #[doc = include_str!("../../../book/src/caps.md")]
    mod caps {}
    #[doc = include_str!("../../../book/src/tau.md")]
    mod tau {}
    #[doc = include_str!("../../../book/src/experiments.md")]
    mod experiments {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
