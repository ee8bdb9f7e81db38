//! Exact computation of Koszul–Brylinski homology on finite models of
//! holomorphic Poisson manifolds, together with the dimension rules that
//! relate it to Hodge and Hochschild numbers.
//!
//! Everything is computed over ℚ with arbitrary precision.

pub mod calculus;
pub mod complexes;
pub mod exactla;
pub mod kbengine;
pub mod modelzoo;
pub mod poissonmodel;
pub mod polyforms;

pub use complexes::{Complex, DoubleComplex, SpectralPages};
pub use exactla::{Matrix, Rational, Subspace};
pub use kbengine::{HHDims, HodgeDiamond, KBDims};
pub use poissonmodel::{DolbeaultPoissonModel, ValidationReport};
pub use polyforms::{PolyBivector, PolyTerm};

/// Version string stamped into reports.
pub const ENGINE_VERSION: &str = env!("CARGO_PKG_VERSION");
