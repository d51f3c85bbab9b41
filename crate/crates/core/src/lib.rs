//! Exact integer machinery for gonality questions about curves lying on K3
//! surfaces of Picard rank two.
//!
//! The crate is organised bottom-up:
//!
//! * [`invariants`]: closed-form Brill-Noether numbers, gonality bounds and
//!   moduli dimensions, plus an exact integer square root.
//! * [`qform`]: the binary quadratic form `(r-1)m^2 + dmn + (g-1)n^2` and
//!   representability decisions for small targets.
//! * [`lattice`]: the rank-2 lattice `ZH + ZC` with its intersection pairing and
//!   the numerical effectiveness criteria.
//! * [`verifier`]: the constrained minimization over divisor classes, the
//!   very-ampleness search and the hypothesis bundles.
//! * [`scan`] and [`report`]: parameter sweeps (data-parallel when the
//!   `parallel` feature is on) and their CSV/JSON serialization.
//!
//! All arithmetic is exact. Parameters are bounded by [`PARAM_MAX`] so every
//! closed-form quantity fits comfortably in `i128`; products involving
//! arbitrary divisor classes use checked arithmetic and panic on overflow
//! rather than wrap.

pub mod error;
mod exact;
pub mod invariants;
pub mod lattice;
pub mod parallel;
pub mod qform;
pub mod report;
pub mod scan;
pub mod verifier;

pub use error::{Error, Result};
pub use invariants::{Params, Rho, PARAM_MAX};
pub use lattice::{DivClass, K3Lattice};
pub use qform::{BinaryQuadForm, NoReason, ReprResult};
