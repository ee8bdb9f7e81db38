//! Koszul–Brylinski complexes of polynomial forms on `ℂ^n`.
//!
//! For a bivector `π = Σ_{i<j} p_ij ∂_i ∧ ∂_j` with every `p_ij` homogeneous
//! of degree `d`, the operator `∂_π` preserves the weight
//! `|α| + (d−1)|I|` of `z^α dz_I`, so each weight slice is a finite complex.
//! The `p`-forms of a slice sit in degree `−p` and are reported as `k = n − p`.

use std::collections::{BTreeMap, HashMap};

use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::complexes::{homology_dims, Complex, ComplexError};
use crate::exactla::{int, parse_rational, Matrix, Rational};
use crate::poissonmodel::exterior::{interior, subsets, wedge};

pub const DEFAULT_CAP: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SteinError {
    #[error("bivector is not homogeneous: term {index} has degree {found}, expected {expected}")]
    NonHomogeneous { index: usize, expected: u32, found: u32 },
    #[error("term {index}: {message}")]
    Term { index: usize, message: String },
    #[error("bivector not Poisson at weight {w}")]
    NotPoisson { w: i64 },
    #[error("weight {w} needs polynomial degree {needed}, above the cap {cap}")]
    CapExceeded { w: i64, needed: usize, cap: usize },
    #[error(transparent)]
    Complex(#[from] ComplexError),
}

/// One term `coeff · z^alpha ∂/∂z_i ∧ ∂/∂z_j` as it appears in input files;
/// `i` and `j` are one-based.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolyTerm {
    pub i: usize,
    pub j: usize,
    pub coeff: String,
    pub alpha: Vec<u32>,
}

/// A homogeneous polynomial bivector on `ℂ^n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyBivector {
    n: usize,
    d: u32,
    // (i, j) zero-based with i < j  ->  exponent  ->  coefficient
    coeffs: BTreeMap<(usize, usize), BTreeMap<Vec<u32>, Rational>>,
}

impl PolyBivector {
    /// The zero bivector. Its degree is taken to be 1, so weights are `|α|`.
    pub fn zero(n: usize) -> Self {
        Self {
            n,
            d: 1,
            coeffs: BTreeMap::new(),
        }
    }

    /// Builds a bivector from file terms. Terms with `i > j` are flipped
    /// with a sign; every term must have the same total degree.
    pub fn from_terms(n: usize, terms: &[PolyTerm]) -> Result<Self, SteinError> {
        let mut out = Self::zero(n);
        let mut degree = None;
        for (index, t) in terms.iter().enumerate() {
            let bad = |message: String| SteinError::Term { index, message };
            if t.i == t.j || t.i == 0 || t.j == 0 || t.i > n || t.j > n {
                return Err(bad(format!("indices ({}, {}) must be distinct and in 1..={n}", t.i, t.j)));
            }
            if t.alpha.len() != n {
                return Err(bad(format!("alpha has {} entries, expected {n}", t.alpha.len())));
            }
            let c = parse_rational(&t.coeff).map_err(|e| bad(e.to_string()))?;
            let deg: u32 = t.alpha.iter().sum();
            match degree {
                None => degree = Some(deg),
                Some(e) if e != deg => {
                    return Err(SteinError::NonHomogeneous {
                        index,
                        expected: e,
                        found: deg,
                    })
                }
                _ => {}
            }
            let (key, c) = if t.i < t.j { ((t.i - 1, t.j - 1), c) } else { ((t.j - 1, t.i - 1), -c) };
            *out.coeffs
                .entry(key)
                .or_default()
                .entry(t.alpha.clone())
                .or_insert_with(Rational::zero) += c;
        }
        for m in out.coeffs.values_mut() {
            m.retain(|_, c| !c.is_zero());
        }
        out.coeffs.retain(|_, m| !m.is_empty());
        if let Some(d) = degree {
            out.d = d;
        }
        Ok(out)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> u32 {
        self.d
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Weight of `z^α dz_I` with `|α| = a`, `|I| = p`.
    pub fn weight(&self, a: usize, p: usize) -> i64 {
        a as i64 + (self.d as i64 - 1) * p as i64
    }
}

/// `z^alpha dz_I` with `I` as a bitmask.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PolyForm {
    pub alpha: Vec<u32>,
    pub forms: u32,
}

impl PolyForm {
    pub fn label(&self) -> String {
        let mut parts = Vec::new();
        for (i, &e) in self.alpha.iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(format!("z{}", i + 1)),
                _ => parts.push(format!("z{}^{e}", i + 1)),
            }
        }
        let dz: Vec<String> = (0..32)
            .filter(|i| self.forms & (1 << i) != 0)
            .map(|i| format!("dz{}", i + 1))
            .collect();
        if !dz.is_empty() {
            parts.push(dz.join("^"));
        }
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join(" ")
        }
    }
}

type Combo = BTreeMap<PolyForm, Rational>;

fn add_to(acc: &mut Combo, f: PolyForm, c: Rational) {
    let e = acc.entry(f).or_insert_with(Rational::zero);
    *e += c;
}

/// Holomorphic de Rham differential: `d(z^α dz_I) = Σ_k α_k z^{α−e_k} dz_k ∧ dz_I`.
fn de_rham(f: &PolyForm) -> Combo {
    let mut out = Combo::new();
    for (k, &e) in f.alpha.iter().enumerate() {
        if e == 0 {
            continue;
        }
        let Some((s, forms)) = wedge(1 << k, f.forms) else { continue };
        let mut alpha = f.alpha.clone();
        alpha[k] -= 1;
        add_to(&mut out, PolyForm { alpha, forms }, int(s * e as i64));
    }
    out
}

/// `l_π(z^α dz_I) = Σ_{i<j} p_ij z^α ι_{∂_j} ι_{∂_i} dz_I`, with the same
/// ordering as the invariant-form contraction.
fn contract(pi: &PolyBivector, f: &PolyForm) -> Combo {
    let mut out = Combo::new();
    for (&(i, j), poly) in &pi.coeffs {
        let Some((s1, a)) = interior(i, f.forms) else { continue };
        let Some((s2, b)) = interior(j, a) else { continue };
        for (beta, c) in poly {
            let alpha = f.alpha.iter().zip(beta).map(|(x, y)| x + y).collect();
            add_to(&mut out, PolyForm { alpha, forms: b }, c * int(s1 * s2));
        }
    }
    out
}

fn apply(op: impl Fn(&PolyForm) -> Combo, x: &Combo) -> Combo {
    let mut out = Combo::new();
    for (f, c) in x {
        for (g, d) in op(f) {
            add_to(&mut out, g, c * d);
        }
    }
    out
}

/// `∂_π = l_π∘d − d∘l_π` on one monomial form.
pub fn koszul_on(pi: &PolyBivector, f: &PolyForm) -> Combo {
    let mut out = apply(|g| contract(pi, g), &de_rham(f));
    for (g, c) in apply(de_rham, &contract(pi, f)) {
        add_to(&mut out, g, -c);
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// Exponent vectors of total degree `a` in `n` variables, in graded
/// lexicographic order (`z1^a` first).
fn exponents(n: usize, a: usize) -> Vec<Vec<u32>> {
    fn go(i: usize, n: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i + 1 == n {
            cur.push(left);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for e in (0..=left).rev() {
            cur.push(e);
            go(i + 1, n, left - e, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        if a == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    go(0, n, a as u32, &mut Vec::new(), &mut out);
    out
}

/// One weight slice: bases of `p`-forms and the matrices of `∂_π`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyFormSlice {
    pub n: usize,
    pub d: u32,
    pub w: i64,
    /// `basis[p]`, ordered by exponent (graded lexicographic) then by form.
    pub basis: Vec<Vec<PolyForm>>,
    /// `boundary[p]`: `p`-forms to `(p−1)`-forms; empty for `p = 0`.
    pub boundary: Vec<Matrix>,
}

impl PolyFormSlice {
    pub fn new(pi: &PolyBivector, w: i64, cap: usize) -> Result<Self, SteinError> {
        let n = pi.n();
        let mut basis = Vec::with_capacity(n + 1);
        for p in 0..=n {
            let a = w - (pi.degree() as i64 - 1) * p as i64;
            if a < 0 {
                basis.push(Vec::new());
                continue;
            }
            let a = a as usize;
            if a > cap {
                return Err(SteinError::CapExceeded { w, needed: a, cap });
            }
            let forms = subsets(n, p);
            let mut b = Vec::new();
            for alpha in exponents(n, a) {
                for &f in &forms {
                    b.push(PolyForm {
                        alpha: alpha.clone(),
                        forms: f,
                    });
                }
            }
            basis.push(b);
        }
        let mut boundary = vec![Matrix::zeros(0, basis[0].len())];
        for p in 1..=n {
            let index: HashMap<&PolyForm, usize> = basis[p - 1].iter().enumerate().map(|(i, f)| (f, i)).collect();
            let mut m = Matrix::zeros(basis[p - 1].len(), basis[p].len());
            for (col, f) in basis[p].iter().enumerate() {
                for (g, c) in koszul_on(pi, f) {
                    let row = *index
                        .get(&g)
                        .unwrap_or_else(|| panic!("∂_π left weight {w}: {} -> {}", f.label(), g.label()));
                    m.set(row, col, c);
                }
            }
            boundary.push(m);
        }
        let slice = Self {
            n,
            d: pi.degree(),
            w,
            basis,
            boundary,
        };
        for p in 2..=n {
            if !slice.boundary[p - 1].mul(&slice.boundary[p]).expect("shapes").is_zero() {
                return Err(SteinError::NotPoisson { w });
            }
        }
        Ok(slice)
    }

    pub fn dim(&self, p: usize) -> usize {
        self.basis.get(p).map_or(0, Vec::len)
    }

    /// `Σ_k (−1)^k dim` over the slice, with `k = n − p`.
    pub fn alternating_dim(&self) -> i64 {
        (0..=self.n)
            .map(|p| if (self.n - p).is_multiple_of(2) { 1 } else { -1 } * self.dim(p) as i64)
            .sum()
    }

    /// The slice as a cochain complex with `p`-forms in degree `−p`.
    pub fn complex(&self) -> Result<Complex, SteinError> {
        let dims = (0..=self.n).map(|p| (-(p as i32), self.dim(p)));
        let diffs = (1..=self.n).map(|p| (-(p as i32), self.boundary[p].clone()));
        Ok(Complex::new(dims, diffs)?)
    }
}

/// The weight-`w` slice as a complex.
pub fn stein_complex(pi: &PolyBivector, w: i64, cap: usize) -> Result<Complex, SteinError> {
    PolyFormSlice::new(pi, w, cap)?.complex()
}

/// `dim H_k` of each weight slice, keyed by `(w, k)` for `k ∈ [0, n]`.
pub fn stein_homology(
    pi: &PolyBivector,
    weights: &[i64],
    cap: usize,
) -> Result<BTreeMap<(i64, usize), usize>, SteinError> {
    let n = pi.n();
    let mut out = BTreeMap::new();
    for &w in weights {
        let h = homology_dims(&stein_complex(pi, w, cap)?);
        for p in 0..=n {
            out.insert((w, n - p), h.get(&-(p as i32)).copied().unwrap_or(0));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn term(i: usize, j: usize, coeff: &str, alpha: &[u32]) -> PolyTerm {
        PolyTerm {
            i,
            j,
            coeff: coeff.into(),
            alpha: alpha.to_vec(),
        }
    }

    fn form(alpha: &[u32], forms: u32) -> PolyForm {
        PolyForm {
            alpha: alpha.to_vec(),
            forms,
        }
    }

    #[test]
    fn exponent_order() {
        assert_eq!(exponents(2, 2), vec![vec![2, 0], vec![1, 1], vec![0, 2]]);
        assert_eq!(exponents(3, 0), vec![vec![0, 0, 0]]);
        assert_eq!(exponents(1, 3), vec![vec![3]]);
    }

    #[test]
    fn zero_bivector_slice() {
        let pi = PolyBivector::zero(3);
        let s = PolyFormSlice::new(&pi, 0, DEFAULT_CAP).unwrap();
        // weight is |α| when π = 0, so only constant coefficients appear
        assert_eq!(s.basis[0], vec![form(&[0, 0, 0], 0)]);
        assert_eq!((s.dim(1), s.dim(2), s.dim(3)), (3, 3, 1));
        let h = stein_homology(&PolyBivector::zero(1), &[0, 1, 2], DEFAULT_CAP).unwrap();
        for w in 0..=2 {
            assert_eq!(h[&(w, 1)], 1);
            assert_eq!(h[&(w, 0)], 1);
        }
        assert!(stein_homology(&pi, &[], DEFAULT_CAP).unwrap().is_empty());
    }

    #[test]
    fn constant_bivector_on_c2() {
        let pi = PolyBivector::from_terms(2, &[term(1, 2, "1", &[0, 0])]).unwrap();
        assert_eq!(pi.degree(), 0);
        assert!(koszul_on(&pi, &form(&[0, 0], 0b11)).is_empty());
        let s = PolyFormSlice::new(&pi, -2, DEFAULT_CAP).unwrap();
        assert_eq!(s.basis[2], vec![form(&[0, 0], 0b11)]);
        assert_eq!((s.dim(0), s.dim(1)), (0, 0));
        // weight 0: 1, z_i dz_j, z^α dz1∧dz2 with |α| = 2
        let s = PolyFormSlice::new(&pi, 0, DEFAULT_CAP).unwrap();
        assert_eq!((s.dim(0), s.dim(1), s.dim(2)), (1, 4, 3));
        let h = homology_dims(&s.complex().unwrap());
        let chi: i64 = h.iter().map(|(k, d)| if k % 2 == 0 { 1 } else { -1 } * *d as i64).sum();
        assert_eq!(chi, s.alternating_dim());
    }

    #[test]
    fn koszul_on_functions_vanishes() {
        // l_π kills functions and l_π(dz_k) = 0, so ∂_π f = l_π(df) = 0
        let pi = PolyBivector::from_terms(2, &[term(1, 2, "1", &[1, 0])]).unwrap();
        assert!(koszul_on(&pi, &form(&[2, 1], 0)).is_empty());
        // ∂_π(z1 dz2) = l(dz1∧dz2) − d(0) = z1
        assert_eq!(
            koszul_on(&pi, &form(&[1, 0], 0b10)),
            Combo::from([(form(&[1, 0], 0), int(1))])
        );
    }

    #[test]
    fn input_checks() {
        let mixed = [term(1, 2, "1", &[1, 0]), term(1, 2, "1", &[0, 0])];
        assert!(matches!(
            PolyBivector::from_terms(2, &mixed),
            Err(SteinError::NonHomogeneous { index: 1, expected: 1, found: 0 })
        ));
        assert!(PolyBivector::from_terms(2, &[term(1, 1, "1", &[0, 0])]).is_err());
        assert!(PolyBivector::from_terms(2, &[term(1, 3, "1", &[0, 0])]).is_err());
        assert!(PolyBivector::from_terms(2, &[term(1, 2, "1", &[0])]).is_err());
        assert!(PolyBivector::from_terms(2, &[term(1, 2, "1/0", &[0, 0])]).is_err());
        let flipped = PolyBivector::from_terms(2, &[term(2, 1, "-1", &[0, 0])]).unwrap();
        let direct = PolyBivector::from_terms(2, &[term(1, 2, "1", &[0, 0])]).unwrap();
        assert_eq!(flipped, direct);
    }

    #[test]
    fn cap_is_enforced() {
        let pi = PolyBivector::zero(2);
        assert_eq!(
            PolyFormSlice::new(&pi, 9, DEFAULT_CAP).unwrap_err(),
            SteinError::CapExceeded { w: 9, needed: 9, cap: 8 }
        );
        assert!(PolyFormSlice::new(&pi, 9, 9).is_ok());
    }

    #[test]
    fn lie_poisson_structures() {
        // sl2 brackets {z1,z2} = z3, {z2,z3} = z1, {z3,z1} = z2 are Poisson
        let sl2 = [term(1, 2, "1", &[0, 0, 1]), term(2, 3, "1", &[1, 0, 0]), term(3, 1, "1", &[0, 1, 0])];
        let pi = PolyBivector::from_terms(3, &sl2).unwrap();
        for w in 0..=3 {
            PolyFormSlice::new(&pi, w, DEFAULT_CAP).unwrap();
        }
        // {z1,z2} = z3, {z2,z3} = z1, {z3,z1} = z1 violates Jacobi
        let bad = [term(1, 2, "1", &[0, 0, 1]), term(2, 3, "1", &[1, 0, 0]), term(3, 1, "1", &[1, 0, 0])];
        let pi = PolyBivector::from_terms(3, &bad).unwrap();
        let failures: Vec<_> = (0..=3)
            .filter_map(|w| PolyFormSlice::new(&pi, w, DEFAULT_CAP).err())
            .collect();
        assert!(!failures.is_empty());
        assert!(failures.iter().all(|e| matches!(e, SteinError::NotPoisson { .. })));
        assert_eq!(
            SteinError::NotPoisson { w: 2 }.to_string(),
            "bivector not Poisson at weight 2"
        );
    }
}
