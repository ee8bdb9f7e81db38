//! Exact rational linear algebra.
//!
//! Everything downstream (homology, spectral pages, connecting maps) reduces
//! to ranks, kernels and subspace sums over the rationals. Matrices are
//! stored sparsely and row reduction is fraction free: rows are scaled to
//! primitive integer vectors before elimination and re-normalised by their
//! content after every update, which keeps coefficient growth in check.

mod echelon;
mod matrix;
mod rational;
mod subspace;

pub use echelon::pivot_columns;
pub use matrix::Matrix;
pub use rational::{format_rational, frac, int, one, parse_rational, zero, Rational};
pub use subspace::{subspace_arithmetic, Subspace, SubspaceDims};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("dimension mismatch: {op} of {left:?} and {right:?}")]
    DimensionMismatch {
        op: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },
    #[error("index ({row}, {col}) out of bounds for {rows}x{cols} matrix")]
    OutOfBounds {
        row: usize,
        col: usize,
        rows: usize,
        cols: usize,
    },
    #[error("ragged rows: row {row} has {found} entries, expected {expected}")]
    Ragged {
        row: usize,
        expected: usize,
        found: usize,
    },
    #[error("cannot parse rational {0:?}")]
    ParseRational(String),
    #[error("ambient dimension mismatch: {0} vs {1}")]
    AmbientMismatch(usize, usize),
}

/// Rank over the rationals.
pub fn rank(m: &Matrix) -> usize {
    m.rank()
}

/// Basis of `{v : m v = 0}` as a subspace of `Q^{m.cols}`.
pub fn kernel_basis(m: &Matrix) -> Subspace {
    m.kernel_basis()
}
