//! Koszul–Brylinski homology of a model.
//!
//! The bicomplex is `K^{p,q} = A^{-p,q}` with `d1 = ∂_π` and `d2 = ∂̄`, and
//! `H_k(X, π) = H^{k-n}` of its total complex. Dimension tables always use
//! the geometric index `k ∈ [0, 2n]`.

use std::collections::BTreeMap;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::complexes::{homology_dims, sign, spectral_pages, total_complex, ComplexError, DoubleComplex, SpectralPages};
use crate::poissonmodel::{koszul_differential, ensure_valid, DolbeaultPoissonModel, ModelError, Operator};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KbError {
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error("formal model carries a nonzero contraction; only π = 0 is defined on formal models")]
    FormalWithPoisson,
}

/// `dim H_k(X, π)` for `k = 0..=2n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KBDims {
    pub n: usize,
    dims: Vec<usize>,
}

impl KBDims {
    pub fn zero(n: usize) -> Self {
        Self {
            n,
            dims: vec![0; 2 * n + 1],
        }
    }

    /// Entries beyond `2n` must be zero.
    pub fn from_vec(n: usize, mut dims: Vec<usize>) -> Option<Self> {
        if dims.iter().skip(2 * n + 1).any(|&d| d != 0) {
            return None;
        }
        dims.resize(2 * n + 1, 0);
        Some(Self { n, dims })
    }

    /// Dimension at `k`; zero outside `[0, 2n]`.
    pub fn get(&self, k: i64) -> usize {
        if k < 0 {
            return 0;
        }
        self.dims.get(k as usize).copied().unwrap_or(0)
    }

    pub fn set(&mut self, k: usize, v: usize) {
        self.dims[k] = v;
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.dims
    }

    pub fn is_zero(&self) -> bool {
        self.dims.iter().all(|&d| d == 0)
    }

    pub fn records(&self) -> Vec<DimRecord> {
        self.dims
            .iter()
            .enumerate()
            .map(|(k, &dim)| DimRecord { k: k as i64, dim })
            .collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimRecord {
    pub k: i64,
    pub dim: usize,
}

/// `HH_k(X)` for `k ∈ [-n, n]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HHDims {
    pub n: usize,
    dims: BTreeMap<i64, usize>,
}

impl HHDims {
    pub fn new(n: usize, dims: impl IntoIterator<Item = (i64, usize)>) -> Option<Self> {
        let mut out: BTreeMap<i64, usize> = (-(n as i64)..=n as i64).map(|k| (k, 0)).collect();
        for (k, d) in dims {
            if k.unsigned_abs() > n as u64 {
                if d != 0 {
                    return None;
                }
                continue;
            }
            out.insert(k, d);
        }
        Some(Self { n, dims: out })
    }

    pub fn get(&self, k: i64) -> usize {
        self.dims.get(&k).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, usize)> + '_ {
        self.dims.iter().map(|(k, d)| (*k, *d))
    }

    pub fn records(&self) -> Vec<DimRecord> {
        self.iter().map(|(k, dim)| DimRecord { k, dim }).collect()
    }
}

/// Hodge numbers `h^{p,q}` for `0 ≤ p,q ≤ n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawDiamond")]
pub struct HodgeDiamond {
    pub n: usize,
    /// `h[p][q]`
    h: Vec<Vec<usize>>,
}

impl HodgeDiamond {
    pub fn zero(n: usize) -> Self {
        Self {
            n,
            h: vec![vec![0; n + 1]; n + 1],
        }
    }

    pub fn from_rows(h: Vec<Vec<usize>>) -> Option<Self> {
        let n = h.len().checked_sub(1)?;
        if h.iter().any(|r| r.len() != n + 1) {
            return None;
        }
        Some(Self { n, h })
    }

    /// Diagonal diamond with `h^{i,i} = diag[i]`.
    pub fn diagonal(diag: &[usize]) -> Self {
        let mut d = Self::zero(diag.len().saturating_sub(1));
        for (i, &v) in diag.iter().enumerate() {
            d.h[i][i] = v;
        }
        d
    }

    /// `h^{p,q}`, zero outside `[0, n]²`.
    pub fn get(&self, p: i64, q: i64) -> usize {
        if p < 0 || q < 0 || p > self.n as i64 || q > self.n as i64 {
            return 0;
        }
        self.h[p as usize][q as usize]
    }

    pub fn set(&mut self, p: usize, q: usize, v: usize) {
        self.h[p][q] = v;
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.h
    }

    pub fn is_zero(&self) -> bool {
        self.h.iter().flatten().all(|&v| v == 0)
    }

    /// Sum of all Hodge numbers.
    pub fn total(&self) -> usize {
        self.h.iter().flatten().sum()
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDiamond {
    n: usize,
    h: Vec<Vec<usize>>,
}

impl TryFrom<RawDiamond> for HodgeDiamond {
    type Error = String;

    fn try_from(raw: RawDiamond) -> Result<Self, String> {
        match HodgeDiamond::from_rows(raw.h) {
            Some(d) if d.n == raw.n => Ok(d),
            _ => Err(format!("h must be a {0}x{0} array for n = {1}", raw.n + 1, raw.n)),
        }
    }
}

// Dimension tables serialise as {"n": int, "dims": {"k": int}} with keys in
// numeric order.

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTable {
    n: usize,
    dims: BTreeMap<String, usize>,
}

struct OrderedDims<'a>(&'a [(i64, usize)]);

impl Serialize for OrderedDims<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut m = s.serialize_map(Some(self.0.len()))?;
        for (k, d) in self.0 {
            m.serialize_entry(&k.to_string(), d)?;
        }
        m.end()
    }
}

#[derive(Serialize)]
struct TableOut<'a> {
    n: usize,
    dims: OrderedDims<'a>,
}

fn parse_keys<E: serde::de::Error>(raw: RawTable) -> Result<(usize, Vec<(i64, usize)>), E> {
    let mut out = Vec::new();
    for (k, d) in raw.dims {
        let k: i64 = k
            .trim()
            .parse()
            .map_err(|_| E::custom(format!("dimension key {k:?} is not an integer")))?;
        out.push((k, d));
    }
    Ok((raw.n, out))
}

impl Serialize for KBDims {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let v: Vec<(i64, usize)> = self.dims.iter().enumerate().map(|(k, d)| (k as i64, *d)).collect();
        TableOut {
            n: self.n,
            dims: OrderedDims(&v),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for KBDims {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let (n, entries) = parse_keys::<D::Error>(RawTable::deserialize(d)?)?;
        let mut out = KBDims::zero(n);
        for (k, v) in entries {
            if k < 0 || k > 2 * n as i64 {
                if v != 0 {
                    return Err(D::Error::custom(format!("k = {k} outside [0, {}]", 2 * n)));
                }
                continue;
            }
            out.dims[k as usize] = v;
        }
        Ok(out)
    }
}

impl Serialize for HHDims {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let v: Vec<(i64, usize)> = self.iter().collect();
        TableOut {
            n: self.n,
            dims: OrderedDims(&v),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for HHDims {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let (n, entries) = parse_keys::<D::Error>(RawTable::deserialize(d)?)?;
        HHDims::new(n, entries).ok_or_else(|| D::Error::custom(format!("nonzero entry outside [-{n}, {n}]")))
    }
}

fn check_formal(m: &DolbeaultPoissonModel) -> Result<(), KbError> {
    if m.is_formal() && m.has_contraction() {
        return Err(KbError::FormalWithPoisson);
    }
    Ok(())
}

/// `K^{p,q} = A^{-p,q}` for `p ∈ [-n, 0]`, `q ∈ [0, n]`, `d1 = ∂_π`, `d2 = ∂̄`.
pub fn kb_double_complex(m: &DolbeaultPoissonModel) -> Result<DoubleComplex, KbError> {
    check_formal(m)?;
    ensure_valid(m)?;
    let kd = koszul_differential(m)?;
    let cell = |b: (i32, i32)| (-b.0, b.1);
    let dims = m.labels().iter().map(|(b, l)| (cell(*b), l.len()));
    let d1 = kd.blocks().iter().map(|(b, x)| (cell(*b), x.clone()));
    let d2 = m.blocks(Operator::Delbar).iter().map(|(b, x)| (cell(*b), x.clone()));
    Ok(DoubleComplex::new(dims, d1, d2)?)
}

/// `dim H_k(X, π) = dim H^{k-n}(total K)` for `k ∈ [0, 2n]`.
pub fn kb_homology(m: &DolbeaultPoissonModel) -> Result<KBDims, KbError> {
    let dc = kb_double_complex(m)?;
    let h = homology_dims(&total_complex(&dc)?);
    let n = m.n() as i32;
    let mut out = KBDims::zero(m.n());
    for (j, d) in h {
        let k = j + n;
        debug_assert!((0..=2 * n).contains(&k));
        out.dims[k as usize] = d;
    }
    Ok(out)
}

/// Spectral sequence of the KB bicomplex; `E_1^{p,q} = h^{-p,q}`.
pub fn kb_spectral_pages(m: &DolbeaultPoissonModel, r_max: usize) -> Result<SpectralPages, KbError> {
    Ok(spectral_pages(&kb_double_complex(m)?, r_max)?)
}

/// Dimensions of the `∂̄`-cohomology of the model.
pub fn hodge_diamond(m: &DolbeaultPoissonModel) -> Result<HodgeDiamond, KbError> {
    let mut out = HodgeDiamond::zero(m.n());
    for b in m.bidegrees() {
        let dim = m.dim(b);
        if dim == 0 {
            continue;
        }
        let out_rank = m.block(Operator::Delbar, b).rank();
        let in_rank = m.block(Operator::Delbar, (b.0, b.1 - 1)).rank();
        out.set(b.0 as usize, b.1 as usize, dim - out_rank - in_rank);
    }
    Ok(out)
}

/// `HH_k = Σ_{p-q=k} h^{p,q}`.
pub fn hkr_hochschild(h: &HodgeDiamond) -> HHDims {
    let n = h.n as i64;
    let dims = (-n..=n).map(|k| {
        let s = (0..=n).map(|p| h.get(p, p - k)).sum();
        (k, s)
    });
    HHDims::new(h.n, dims).expect("in range")
}

/// `H_k(X, 0) = ⊕_{p-q=n-k} H^{p,q}`: KB dimensions of a zero Poisson
/// structure read off a Hodge diamond.
pub fn kb_from_hodge(h: &HodgeDiamond) -> KBDims {
    let hh = hkr_hochschild(h);
    let n = h.n as i64;
    let dims = (0..=2 * n).map(|k| hh.get(n - k)).collect();
    KBDims::from_vec(h.n, dims).expect("in range")
}

/// `Σ_k (-1)^k dim H_k`.
pub fn euler_char(d: &KBDims) -> i64 {
    d.dims
        .iter()
        .enumerate()
        .map(|(k, &v)| sign(k as i32) * v as i64)
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hkr_examples() {
        let cp1 = HodgeDiamond::diagonal(&[1, 1]);
        let hh = hkr_hochschild(&cp1);
        assert_eq!(hh.get(0), 2);
        assert_eq!((hh.get(-1), hh.get(1)), (0, 0));
        let t1 = HodgeDiamond::from_rows(vec![vec![1, 1], vec![1, 1]]).unwrap();
        let hh = hkr_hochschild(&t1);
        assert_eq!((hh.get(-1), hh.get(0), hh.get(1)), (1, 2, 1));
        let empty = HodgeDiamond::zero(2);
        assert!(hkr_hochschild(&empty).iter().all(|(_, d)| d == 0));
    }

    #[test]
    fn euler_examples() {
        assert_eq!(euler_char(&KBDims::from_vec(1, vec![1, 2, 1]).unwrap()), 0);
        assert_eq!(euler_char(&KBDims::from_vec(0, vec![1]).unwrap()), 1);
        assert_eq!(euler_char(&KBDims::from_vec(2, vec![0, 0, 3, 0, 0]).unwrap()), 3);
    }

    #[test]
    fn point_model() {
        let p = DolbeaultPoissonModel::point();
        let dc = kb_double_complex(&p).unwrap();
        assert_eq!(dc.dim((0, 0)), 1);
        assert_eq!(kb_homology(&p).unwrap().as_slice(), &[1]);
    }

    #[test]
    fn table_json_round_trip() {
        let d = KBDims::from_vec(2, vec![1, 4, 6, 4, 1]).unwrap();
        let s = serde_json::to_string(&d).unwrap();
        assert_eq!(s, r#"{"n":2,"dims":{"0":1,"1":4,"2":6,"3":4,"4":1}}"#);
        assert_eq!(serde_json::from_str::<KBDims>(&s).unwrap(), d);
        let sparse: KBDims = serde_json::from_str(r#"{"n":1,"dims":{"1":2}}"#).unwrap();
        assert_eq!(sparse.as_slice(), &[0, 2, 0]);
        assert!(serde_json::from_str::<KBDims>(r#"{"n":1,"dims":{"3":2}}"#).is_err());
        assert!(serde_json::from_str::<KBDims>(r#"{"n":1,"dims":{"x":2}}"#).is_err());
        let hh: HHDims = serde_json::from_str(r#"{"n":1,"dims":{"-1":1,"0":2,"1":1}}"#).unwrap();
        assert_eq!(hh.get(-1), 1);
        assert_eq!(
            serde_json::to_string(&hh).unwrap(),
            r#"{"n":1,"dims":{"-1":1,"0":2,"1":1}}"#
        );
    }

    #[test]
    fn diamond_json() {
        let d: HodgeDiamond = serde_json::from_str(r#"{"n":1,"h":[[1,0],[0,1]]}"#).unwrap();
        assert_eq!(d, HodgeDiamond::diagonal(&[1, 1]));
        assert_eq!(serde_json::to_string(&d).unwrap(), r#"{"n":1,"h":[[1,0],[0,1]]}"#);
        assert!(serde_json::from_str::<HodgeDiamond>(r#"{"n":2,"h":[[1,0],[0,1]]}"#).is_err());
        assert!(serde_json::from_str::<HodgeDiamond>(r#"{"n":1,"h":[[1,0],[0]]}"#).is_err());
    }

    #[test]
    fn kb_from_hodge_matches_antidiagonals() {
        let cp2 = HodgeDiamond::diagonal(&[1, 1, 1]);
        assert_eq!(kb_from_hodge(&cp2).as_slice(), &[0, 0, 3, 0, 0]);
    }

    mod on_zoo_models {
        use super::super::*;
        use crate::exactla::{one, Matrix};
        use crate::modelzoo::{bivector, heisenberg, hodge_formal, parallelizable, projective_space_diamond, torus};

        #[test]
        fn torus1_cells() {
            let dc = kb_double_complex(&torus(1, &Matrix::zeros(1, 1)).unwrap()).unwrap();
            for c in [(0, 0), (0, 1), (-1, 0), (-1, 1)] {
                assert_eq!(dc.dim(c), 1);
                assert!(dc.d1_at(c).is_zero() && dc.d2_at(c).is_zero());
            }
            assert_eq!(dc.spaces().total(), 4);
        }

        #[test]
        fn torus_homology() {
            let t1 = kb_homology(&torus(1, &Matrix::zeros(1, 1)).unwrap()).unwrap();
            assert_eq!(t1.as_slice(), &[1, 2, 1]);
            let t2 = kb_homology(&torus(2, &Matrix::zeros(2, 2)).unwrap()).unwrap();
            assert_eq!(t2.as_slice(), &[1, 4, 6, 4, 1]);
        }

        #[test]
        fn heisenberg_with_bivector_has_nonzero_d1() {
            let m = parallelizable(3, &heisenberg(), &bivector(3, &[(0, 1, one())])).unwrap();
            let dc = kb_double_complex(&m).unwrap();
            let nonzero = dc.spaces().support().any(|c| !dc.d1_at(c).is_zero());
            assert!(nonzero);
            assert_eq!(euler_char(&kb_homology(&m).unwrap()), 0);
        }

        #[test]
        fn formal_models_accept_only_zero_bivector() {
            let cp2 = hodge_formal(&projective_space_diamond(2));
            assert_eq!(kb_homology(&cp2).unwrap().as_slice(), &[0, 0, 3, 0, 0]);
            let mut h = HodgeDiamond::zero(2);
            h.set(0, 0, 1);
            h.set(2, 0, 1);
            let l = std::collections::BTreeMap::from([((2, 0), Matrix::from_ints(&[&[1]]))]);
            let bad = hodge_formal(&h).with_contraction(l).unwrap();
            assert_eq!(kb_homology(&bad), Err(KbError::FormalWithPoisson));
        }

        #[test]
        fn e1_page_is_hodge_diamond() {
            let m = parallelizable(3, &heisenberg(), &Matrix::zeros(3, 3)).unwrap();
            let h = hodge_diamond(&m).unwrap();
            let pages = kb_spectral_pages(&m, 1).unwrap();
            for p in 0..=3i32 {
                for q in 0..=3i32 {
                    let e1 = pages.page(1).unwrap().dims.get(&(-p, q)).copied().unwrap_or(0);
                    assert_eq!(e1, h.get(p as i64, q as i64));
                }
            }
            assert_eq!(kb_homology(&m).unwrap(), kb_from_hodge(&h));
        }
    }
}
