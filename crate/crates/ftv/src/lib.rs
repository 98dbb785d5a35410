//! Exact framed duality for complete toric varieties.
//!
//! A framed toric variety is a fan matrix `V` (columns are primitive ray
//! generators) together with a positive integer framing `a` of its rays.
//! This crate computes its f-dual, the f-process and calibration, the
//! quotient presentation of the dual as a finite quotient of a weighted
//! projective space, mirror families and their exponent data, and the
//! partitioned version for complete intersections.
//!
//! Everything is exact: entries are [`num_bigint::BigInt`] and polytope
//! vertices are [`num_rational::BigRational`].

pub mod ci;
pub mod cli;
pub mod duality;
pub mod error;
pub mod linalg;
pub mod mirror;
pub mod polytope;
pub mod quotient;

pub use duality::{f_dual, f_process, is_calibrated, is_k_dual, FDual, FProcess, FramedToricVariety};
pub use error::{FtvError, Result};
pub use linalg::IntMatrix;
pub use polytope::{HRep, LatticePolytope, RationalPolytope};

/// Default cap on the multiplier searched for `k₀` and `k₁`.
pub const DEFAULT_K_CAP: u64 = 1000;
