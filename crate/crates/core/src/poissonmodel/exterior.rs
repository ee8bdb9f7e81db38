//! Exterior monomials `ω^I ∧ ω̄^J` on `n` holomorphic and `n`
//! antiholomorphic generators, encoded as bitmasks (bit `i` is generator
//! `i + 1`). Monomials are always written with increasing indices and the
//! holomorphic block first.

use std::collections::{BTreeMap, HashMap};

use num_traits::Zero;

use super::{Bidegree, ModelError};
use crate::exactla::{int, Matrix, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    pub hol: u32,
    pub anti: u32,
}

impl Monomial {
    pub fn bidegree(&self) -> Bidegree {
        (self.hol.count_ones() as i32, self.anti.count_ones() as i32)
    }

    pub fn label(&self) -> String {
        let mut parts = Vec::new();
        for i in 0..32 {
            if self.hol & (1 << i) != 0 {
                parts.push(format!("w{}", i + 1));
            }
        }
        for i in 0..32 {
            if self.anti & (1 << i) != 0 {
                parts.push(format!("wb{}", i + 1));
            }
        }
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("^")
        }
    }
}

/// Subsets of `{0..n}` of size `k`, as masks, in lexicographic order of
/// their sorted index lists.
pub fn subsets(n: usize, k: usize) -> Vec<u32> {
    fn go(start: usize, n: usize, k: usize, acc: u32, out: &mut Vec<u32>) {
        if k == 0 {
            out.push(acc);
            return;
        }
        for i in start..n {
            if n - i < k {
                break;
            }
            go(i + 1, n, k - 1, acc | (1 << i), out);
        }
    }
    let mut out = Vec::new();
    if k <= n {
        go(0, n, k, 0, &mut out);
    }
    out
}

fn parity(x: u32) -> i64 {
    if x.count_ones().is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// `ω^A ∧ ω^B = sign · ω^{A∪B}`, or `None` when they share a generator.
pub fn wedge(a: u32, b: u32) -> Option<(i64, u32)> {
    if a & b != 0 {
        return None;
    }
    // count pairs (x in a, y in b) with x > y
    let mut inversions = 0u32;
    let mut rest = b;
    while rest != 0 {
        let y = rest.trailing_zeros();
        rest &= rest - 1;
        inversions += (a >> (y + 1)).count_ones();
    }
    Some((if inversions.is_multiple_of(2) { 1 } else { -1 }, a | b))
}

/// Interior product `ι_{θ_i}` on `ω^A`, with `⟨θ_i, ω^j⟩ = δ_ij`: removes
/// generator `i` with sign `(-1)^{position of i}`.
pub fn interior(i: usize, a: u32) -> Option<(i64, u32)> {
    let bit = 1u32 << i;
    if a & bit == 0 {
        return None;
    }
    Some((parity(a & (bit - 1)), a & !bit))
}

/// Linear combination of masks.
pub type Combo = Vec<(Rational, u32)>;

/// Extends generator images `g[k] = D(ω^{k+1})` to `D(ω^A)` as an odd
/// derivation: `D(x_1 ∧ .. ∧ x_p) = Σ_m (-1)^m x_1 ∧ .. ∧ D x_{m+1} ∧ .. ∧ x_p`.
pub fn derivation(images: &[Combo], a: u32) -> Combo {
    let mut acc: BTreeMap<u32, Rational> = BTreeMap::new();
    let mut m = 0i64;
    let mut rest = a;
    while rest != 0 {
        let k = rest.trailing_zeros();
        rest &= rest - 1;
        let bit = 1u32 << k;
        let prefix = a & (bit - 1);
        let suffix = a & !(bit | (bit - 1));
        let s = if m % 2 == 0 { 1 } else { -1 };
        for (c, img) in &images[k as usize] {
            let Some((s1, x)) = wedge(prefix, *img) else { continue };
            let Some((s2, y)) = wedge(x, suffix) else { continue };
            *acc.entry(y).or_insert_with(Rational::zero) += c * int(s * s1 * s2);
        }
        m += 1;
    }
    acc.into_iter().filter(|(_, c)| !c.is_zero()).map(|(y, c)| (c, y)).collect()
}

/// Monomial basis of the invariant-form model: for every bidegree the
/// holomorphic subsets (outer, lexicographic) times the antiholomorphic
/// subsets (inner, lexicographic).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WedgeData {
    n: usize,
    basis: BTreeMap<Bidegree, Vec<Monomial>>,
}

impl WedgeData {
    pub fn new(n: usize) -> Self {
        assert!(n <= 16, "too many generators");
        let mut basis = BTreeMap::new();
        for p in 0..=n {
            for q in 0..=n {
                let mons = subsets(n, p)
                    .into_iter()
                    .flat_map(|hol| subsets(n, q).into_iter().map(move |anti| Monomial { hol, anti }))
                    .collect();
                basis.insert((p as i32, q as i32), mons);
            }
        }
        Self { n, basis }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn monomials(&self, b: Bidegree) -> &[Monomial] {
        self.basis.get(&b).map_or(&[], Vec::as_slice)
    }

    pub fn labels(&self) -> BTreeMap<Bidegree, Vec<String>> {
        self.basis
            .iter()
            .map(|(b, m)| (*b, m.iter().map(Monomial::label).collect()))
            .collect()
    }

    fn index(&self, b: Bidegree) -> HashMap<Monomial, usize> {
        self.monomials(b).iter().enumerate().map(|(i, m)| (*m, i)).collect()
    }

    /// Matrix blocks of a map sending each monomial to a combination of
    /// monomials in bidegree `source + step`.
    pub(crate) fn blocks<F>(&self, step: Bidegree, f: F) -> BTreeMap<Bidegree, Matrix>
    where
        F: Fn(Monomial) -> Vec<(Rational, Monomial)>,
    {
        let mut out = BTreeMap::new();
        for (&s, mons) in &self.basis {
            let t = (s.0 + step.0, s.1 + step.1);
            let Some(tmons) = self.basis.get(&t) else { continue };
            let idx = self.index(t);
            let mut m = Matrix::zeros(tmons.len(), mons.len());
            for (j, mon) in mons.iter().enumerate() {
                for (c, img) in f(*mon) {
                    let i = idx[&img];
                    let v = m.get(i, j) + c;
                    m.set(i, j, v);
                }
            }
            if !m.is_zero() {
                out.insert(s, m);
            }
        }
        out
    }
}

/// Checks that `coeffs` is an antisymmetric `n x n` matrix.
pub fn check_bivector(coeffs: &Matrix, n: usize) -> Result<(), ModelError> {
    if coeffs.shape() != (n, n) || coeffs.transpose() != coeffs.neg() {
        return Err(ModelError::NotAntisymmetric { n });
    }
    Ok(())
}

/// `l_π(ω^I ∧ ω̄^J) = Σ_{i<j} π^{ij} ι_{θ_j} ι_{θ_i} (ω^I) ∧ ω̄^J`. The
/// contraction with `θ_i` is applied first, which fixes
/// `l_{θ_1∧θ_2}(ω^1 ∧ ω^2) = 1`.
pub fn contraction_blocks(w: &WedgeData, coeffs: &Matrix) -> Result<BTreeMap<Bidegree, Matrix>, ModelError> {
    check_bivector(coeffs, w.n())?;
    let n = w.n();
    let mut terms = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let c = coeffs.get(i, j);
            if !c.is_zero() {
                terms.push((i, j, c));
            }
        }
    }
    Ok(w.blocks((-2, 0), |mon| {
        let mut out = Vec::new();
        for (i, j, c) in &terms {
            let Some((s1, a)) = interior(*i, mon.hol) else { continue };
            let Some((s2, b)) = interior(*j, a) else { continue };
            out.push((c * int(s1 * s2), Monomial { hol: b, anti: mon.anti }));
        }
        out
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::one;

    #[test]
    fn subset_order() {
        assert_eq!(subsets(3, 2), vec![0b011, 0b101, 0b110]);
        assert_eq!(subsets(2, 0), vec![0]);
        assert!(subsets(2, 3).is_empty());
    }

    #[test]
    fn wedge_signs() {
        // ω2 ∧ ω1 = -ω1 ∧ ω2
        assert_eq!(wedge(0b10, 0b01), Some((-1, 0b11)));
        assert_eq!(wedge(0b01, 0b10), Some((1, 0b11)));
        assert_eq!(wedge(0b01, 0b01), None);
        // ω3 ∧ ω1ω2 = +ω1ω2ω3
        assert_eq!(wedge(0b100, 0b011), Some((1, 0b111)));
    }

    #[test]
    fn interior_signs() {
        assert_eq!(interior(0, 0b11), Some((1, 0b10)));
        assert_eq!(interior(1, 0b11), Some((-1, 0b01)));
        assert_eq!(interior(2, 0b11), None);
    }

    #[test]
    fn contraction_conventions() {
        let mut pi = Matrix::zeros(2, 2);
        pi.set(0, 1, one());
        pi.set(1, 0, -one());
        let w = WedgeData::new(2);
        let l = contraction_blocks(&w, &pi).unwrap();
        // l(ω1∧ω2) = 1 on the (2,0) -> (0,0) block
        assert_eq!(l[&(2, 0)], Matrix::identity(1));
        assert!(!l.contains_key(&(1, 0)));

        let mut pi = Matrix::zeros(3, 3);
        pi.set(0, 1, one());
        pi.set(1, 0, -one());
        let w = WedgeData::new(3);
        let l = contraction_blocks(&w, &pi).unwrap();
        // l(ω1∧ω2∧ω3) = ω3, the last basis element of bidegree (1,0)
        assert_eq!(l[&(3, 0)].column(0), vec![int(0), int(0), int(1)]);
    }

    #[test]
    fn rejects_symmetric_coefficients() {
        let w = WedgeData::new(2);
        let pi = Matrix::identity(2);
        assert!(matches!(contraction_blocks(&w, &pi), Err(ModelError::NotAntisymmetric { n: 2 })));
    }

    #[test]
    fn derivation_squares_to_zero_on_heisenberg() {
        // D ω3 = -ω1∧ω2
        let images: Vec<Combo> = vec![vec![], vec![], vec![(-one(), 0b011)]];
        assert_eq!(derivation(&images, 0b100), vec![(-one(), 0b011)]);
        for a in 0..8u32 {
            for (c, x) in derivation(&images, a) {
                assert!(derivation(&images, x).is_empty(), "{c} {x}");
            }
        }
        // D(ω2∧ω3) = -ω2∧(-ω1∧ω2) = 0 and D(ω1∧ω3) = 0
        assert!(derivation(&images, 0b110).is_empty());
    }
}
