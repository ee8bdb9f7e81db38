//! Deterministic inputs for the benchmarks.

use kbhom_core::exactla::{int, Matrix};
use kbhom_core::modelzoo::{bivector, by_name, heisenberg, parallelizable, torus};
use kbhom_core::poissonmodel::product_model;
use kbhom_core::{DolbeaultPoissonModel, PolyBivector, PolyTerm};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// A sparse integer matrix with entries in `[-3, 3]`.
pub fn random_matrix(seed: u64, rows: usize, cols: usize, density: f64) -> Matrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut m = Matrix::zeros(rows, cols);
    for i in 0..rows {
        for j in 0..cols {
            if rng.gen_bool(density) {
                m.set(i, j, int(rng.gen_range(-3..=3)));
            }
        }
    }
    m
}

/// A matrix of rank at most `r`, as a product of two random factors.
pub fn low_rank_matrix(seed: u64, n: usize, r: usize) -> Matrix {
    let a = random_matrix(seed, n, r, 0.5);
    let b = random_matrix(seed.wrapping_add(1), r, n, 0.5);
    a.mul(&b).expect("shapes agree")
}

pub fn zoo(name: &str) -> DolbeaultPoissonModel {
    by_name(name).unwrap_or_else(|| panic!("no zoo model {name}")).model
}

/// The Heisenberg model with all three bivector coefficients nonzero.
pub fn iwasawa_generic() -> DolbeaultPoissonModel {
    let pi = bivector(3, &[(0, 1, int(1)), (0, 2, int(2)), (1, 2, int(-1))]);
    parallelizable(3, &heisenberg(), &pi).expect("constant bivectors are Poisson here")
}

/// `torus(1) × iwasawa`, a 4-dimensional model with 256 basis elements.
pub fn circle_times_iwasawa() -> DolbeaultPoissonModel {
    let t1 = torus(1, &Matrix::zeros(1, 1)).expect("valid");
    product_model(&t1, &zoo("iwasawa-pi12")).expect("valid factors")
}

/// `z1 ∂/∂z1 ∧ ∂/∂z2` on ℂ^n.
pub fn linear_bivector(n: usize) -> PolyBivector {
    let mut alpha = vec![0; n];
    alpha[0] = 1;
    let term = PolyTerm {
        i: 1,
        j: 2,
        coeff: "1".into(),
        alpha,
    };
    PolyBivector::from_terms(n, &[term]).expect("homogeneous")
}

#[cfg(test)]
mod tests {
    use super::*;
    use kbhom_core::poissonmodel::validate_model;

    #[test]
    fn fixtures_are_valid() {
        assert!(validate_model(&iwasawa_generic()).passed());
        assert_eq!(circle_times_iwasawa().total_dim(), 256);
        assert!(low_rank_matrix(1, 20, 5).rank() <= 5);
        assert_eq!(linear_bivector(3).degree(), 1);
    }
}
