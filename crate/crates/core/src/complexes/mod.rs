//! Bounded cochain complexes and double complexes over the rationals.
//!
//! Differentials raise degree by one. A map between graded pieces is a
//! matrix acting on column vectors, so the differential out of degree `k`
//! has `dim C^{k+1}` rows and `dim C^k` columns.

mod double;
mod les;
mod spectral;

pub use double::{shift, tensor_double, total_complex, DoubleComplex};
pub use les::{les_from_ses, ChainMap, HomologyBasis, LongExactSequence};
pub use spectral::{spectral_pages, Page, SpectralPages};

use std::collections::BTreeMap;

use thiserror::Error;

use crate::exactla::{LinalgError, Matrix};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComplexError {
    #[error("differential {what} at {at} has shape {found:?}, expected {expected:?}")]
    Shape {
        what: &'static str,
        at: String,
        expected: (usize, usize),
        found: (usize, usize),
    },
    #[error("identity {identity} fails at {at}")]
    Identity { identity: &'static str, at: String },
    #[error("not a short exact sequence at degree {degree}: {reason}")]
    NotShortExact { degree: i32, reason: String },
    #[error("chain map does not commute with differentials at degree {degree}")]
    NotAChainMap { degree: i32 },
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// Finite family of dimensions indexed by an ordered degree type. Only
/// nonzero dimensions are kept, so the key set is the support.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct GradedSpace<D: Ord + Copy> {
    dims: BTreeMap<D, usize>,
}

impl<D: Ord + Copy> GradedSpace<D> {
    pub fn new<I: IntoIterator<Item = (D, usize)>>(dims: I) -> Self {
        let mut out = BTreeMap::new();
        for (d, n) in dims {
            if n > 0 {
                *out.entry(d).or_insert(0) += n;
            }
        }
        Self { dims: out }
    }

    pub fn dim(&self, d: D) -> usize {
        self.dims.get(&d).copied().unwrap_or(0)
    }

    pub fn support(&self) -> impl Iterator<Item = D> + '_ {
        self.dims.keys().copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (D, usize)> + '_ {
        self.dims.iter().map(|(d, n)| (*d, *n))
    }

    pub fn is_empty(&self) -> bool {
        self.dims.is_empty()
    }

    pub fn total(&self) -> usize {
        self.dims.values().sum()
    }
}

/// Bounded cochain complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Complex {
    spaces: GradedSpace<i32>,
    // nonzero differentials only, keyed by source degree
    diffs: BTreeMap<i32, Matrix>,
}

impl Complex {
    pub fn new(
        dims: impl IntoIterator<Item = (i32, usize)>,
        diffs: impl IntoIterator<Item = (i32, Matrix)>,
    ) -> Result<Self, ComplexError> {
        let spaces = GradedSpace::new(dims);
        let mut kept = BTreeMap::new();
        for (k, d) in diffs {
            let expected = (spaces.dim(k + 1), spaces.dim(k));
            if d.shape() != expected {
                return Err(ComplexError::Shape {
                    what: "d",
                    at: k.to_string(),
                    expected,
                    found: d.shape(),
                });
            }
            if !d.is_zero() {
                kept.insert(k, d);
            }
        }
        let c = Self {
            spaces,
            diffs: kept,
        };
        for (&k, d) in &c.diffs {
            if let Some(next) = c.diffs.get(&(k + 1)) {
                if !next.mul(d)?.is_zero() {
                    return Err(ComplexError::Identity {
                        identity: "d∘d = 0",
                        at: k.to_string(),
                    });
                }
            }
        }
        Ok(c)
    }

    pub fn zero() -> Self {
        Self {
            spaces: GradedSpace::default(),
            diffs: BTreeMap::new(),
        }
    }

    pub fn spaces(&self) -> &GradedSpace<i32> {
        &self.spaces
    }

    pub fn dim(&self, k: i32) -> usize {
        self.spaces.dim(k)
    }

    /// Differential out of degree `k` (a zero matrix of the right shape when
    /// nothing is stored).
    pub fn differential(&self, k: i32) -> Matrix {
        self.diffs
            .get(&k)
            .cloned()
            .unwrap_or_else(|| Matrix::zeros(self.dim(k + 1), self.dim(k)))
    }

    /// Smallest and largest degree with a nonzero space.
    pub fn range(&self) -> Option<(i32, i32)> {
        let lo = self.spaces.support().next()?;
        let hi = self.spaces.support().last()?;
        Some((lo, hi))
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.spaces
            .iter()
            .map(|(k, n)| sign(k) * n as i64)
            .sum()
    }
}

pub(crate) fn sign(k: i32) -> i64 {
    if k.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// `dim H^k = dim ker d^k - rank d^{k-1}` for every degree in the support.
pub fn homology_dims(c: &Complex) -> BTreeMap<i32, usize> {
    let mut out = BTreeMap::new();
    for (k, n) in c.spaces.iter() {
        let out_rank = c.diffs.get(&k).map_or(0, Matrix::rank);
        let in_rank = c.diffs.get(&(k - 1)).map_or(0, Matrix::rank);
        out.insert(k, n - out_rank - in_rank);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_differentials_give_space_dims() {
        let c = Complex::new([(0, 2), (1, 3)], []).unwrap();
        let h = homology_dims(&c);
        assert_eq!(h[&0], 2);
        assert_eq!(h[&1], 3);
    }

    #[test]
    fn exact_two_term_complex() {
        let c = Complex::new([(0, 1), (1, 1)], [(0, Matrix::identity(1))]).unwrap();
        assert!(homology_dims(&c).values().all(|&h| h == 0));
    }

    #[test]
    fn projection_two_to_one() {
        let c = Complex::new([(0, 2), (1, 1)], [(0, Matrix::from_ints(&[&[1, 0]]))]).unwrap();
        let h = homology_dims(&c);
        assert_eq!((h[&0], h[&1]), (1, 0));
    }

    #[test]
    fn rejects_bad_shapes_and_nonzero_square() {
        let bad = Complex::new([(0, 2), (1, 1)], [(0, Matrix::identity(2))]);
        assert!(matches!(bad, Err(ComplexError::Shape { .. })));
        let d = Matrix::identity(1);
        let bad = Complex::new([(0, 1), (1, 1), (2, 1)], [(0, d.clone()), (1, d)]);
        assert!(matches!(bad, Err(ComplexError::Identity { .. })));
    }

    #[test]
    fn euler_characteristic_matches_homology() {
        let c = Complex::new([(-1, 2), (0, 3), (1, 1)], [(0, Matrix::from_ints(&[&[1, 1, 0]]))])
            .unwrap();
        let h: i64 = homology_dims(&c).iter().map(|(k, n)| sign(*k) * *n as i64).sum();
        assert_eq!(h, c.euler_characteristic());
    }
}
