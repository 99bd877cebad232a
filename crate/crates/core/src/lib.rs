//! Exact and sampled computations for determinantal point processes on
//! finite ground sets, the uniform spanning tree of the complete graph,
//! the Wishart / Jacobi / Meixner eigenvalue ensembles, directed last-passage
//! percolation, and stochastic-dominance verification (upsets, Strassen
//! couplings via max-flow, projection-kernel domination).
//!
//! The crate is `no_std` and only needs `alloc`. Randomized routines take any
//! [`rand::Rng`]; seeding and stream derivation live in the `dpplab` companion
//! crate together with the CLI and file formats.
#![cfg_attr(not(any(feature = "std", test)), no_std)]
#![deny(missing_docs)]

extern crate alloc;

pub mod dominance;
pub mod dpp;
pub mod ensembles;
mod error;
pub mod lpp;
pub mod numerics;
pub mod stats;
pub mod ust;

pub use error::{Error, Result};

/// Complex scalar used by every dense matrix in the crate.
pub type C64 = num_complex::Complex64;
