//! Finite Dolbeault–Poisson models.
//!
//! A model is a bigraded rational vector space `A^{p,q}`, `0 ≤ p,q ≤ n`,
//! carrying `∂` of bidegree `(1,0)`, `∂̄` of bidegree `(0,1)` and a
//! contraction `l_π` of bidegree `(-2,0)`. The Koszul differential
//! `∂_π = l_π∘∂ − ∂∘l_π` has bidegree `(-1,0)`.
//!
//! Operators are stored blockwise, keyed by their source bidegree; a block
//! that is absent is zero.

pub mod exterior;
mod product;
mod validate;

pub use exterior::{contraction_blocks, Monomial, WedgeData};
pub use product::{leibniz_holds, product_model};
pub use validate::{validate_model, Identity, IdentityCheck, ValidationReport};

use std::collections::BTreeMap;

use thiserror::Error;

use crate::exactla::{LinalgError, Matrix};

pub type Bidegree = (i32, i32);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("bidegree ({}, {}) outside [0, {n}]²", .at.0, .at.1)]
    OutOfRange { at: Bidegree, n: usize },
    #[error("{op} block from ({}, {}) has shape {found:?}, expected {expected:?}", .at.0, .at.1)]
    Shape {
        op: &'static str,
        at: Bidegree,
        expected: (usize, usize),
        found: (usize, usize),
    },
    #[error("bivector coefficients must form an antisymmetric {n}x{n} matrix")]
    NotAntisymmetric { n: usize },
    #[error("model carries no wedge structure; a contraction cannot be built from a bivector")]
    MissingWedge,
    #[error("structure constants violate the Jacobi identity at ({i}, {j}, {k})")]
    Jacobi { i: usize, j: usize, k: usize },
    #[error("not a valid holomorphic Poisson model: {identity} fails at ({}, {})", .at.0, .at.1)]
    Invalid { identity: Identity, at: Bidegree },
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

impl ModelError {
    fn from_report(report: &ValidationReport) -> Option<Self> {
        report.first_failure().map(|c| ModelError::Invalid {
            identity: c.identity,
            at: c.at.expect("failed checks carry a bidegree"),
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Operator {
    Del,
    Delbar,
    Contraction,
}

impl Operator {
    pub fn step(self) -> Bidegree {
        match self {
            Operator::Del => (1, 0),
            Operator::Delbar => (0, 1),
            Operator::Contraction => (-2, 0),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Operator::Del => "del",
            Operator::Delbar => "delbar",
            Operator::Contraction => "contraction",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DolbeaultPoissonModel {
    n: usize,
    labels: BTreeMap<Bidegree, Vec<String>>,
    ops: BTreeMap<Operator, BTreeMap<Bidegree, Matrix>>,
    wedge: Option<WedgeData>,
    formal: bool,
}

type Blocks = BTreeMap<Bidegree, Matrix>;

impl DolbeaultPoissonModel {
    /// Checks ranges and block shapes. The operator identities are not
    /// checked here; see [`validate_model`].
    pub fn new(
        n: usize,
        labels: BTreeMap<Bidegree, Vec<String>>,
        del: Blocks,
        delbar: Blocks,
        contraction: Blocks,
    ) -> Result<Self, ModelError> {
        let in_range = |b: Bidegree| b.0 >= 0 && b.1 >= 0 && b.0 <= n as i32 && b.1 <= n as i32;
        let labels: BTreeMap<Bidegree, Vec<String>> =
            labels.into_iter().filter(|(_, l)| !l.is_empty()).collect();
        for &b in labels.keys() {
            if !in_range(b) {
                return Err(ModelError::OutOfRange { at: b, n });
            }
        }
        let dim = |b: Bidegree| labels.get(&b).map_or(0, Vec::len);
        let mut ops = BTreeMap::new();
        for (op, blocks) in [
            (Operator::Del, del),
            (Operator::Delbar, delbar),
            (Operator::Contraction, contraction),
        ] {
            let mut kept = BTreeMap::new();
            for (s, m) in blocks {
                if !in_range(s) {
                    return Err(ModelError::OutOfRange { at: s, n });
                }
                let t = (s.0 + op.step().0, s.1 + op.step().1);
                let expected = (dim(t), dim(s));
                if m.shape() != expected {
                    return Err(ModelError::Shape {
                        op: op.name(),
                        at: s,
                        expected,
                        found: m.shape(),
                    });
                }
                if !m.is_zero() {
                    kept.insert(s, m);
                }
            }
            ops.insert(op, kept);
        }
        Ok(Self {
            n,
            labels,
            ops,
            wedge: None,
            formal: false,
        })
    }

    /// The one-point model: `n = 0`, a single basis element.
    pub fn point() -> Self {
        let labels = BTreeMap::from([((0, 0), vec!["1".to_string()])]);
        Self::new(0, labels, Blocks::new(), Blocks::new(), Blocks::new()).expect("valid")
    }

    pub fn with_wedge(mut self, wedge: WedgeData) -> Self {
        self.wedge = Some(wedge);
        self
    }

    /// Marks the model as formal: it only carries Hodge numbers, so a
    /// nonzero Poisson structure on it has no meaning.
    pub fn with_formal(mut self, formal: bool) -> Self {
        self.formal = formal;
        self
    }

    /// Same model with the contraction replaced.
    pub fn with_contraction(&self, contraction: Blocks) -> Result<Self, ModelError> {
        let next = Self::new(
            self.n,
            self.labels.clone(),
            self.blocks(Operator::Del).clone(),
            self.blocks(Operator::Delbar).clone(),
            contraction,
        )?;
        Ok(Self {
            wedge: self.wedge.clone(),
            formal: self.formal,
            ..next
        })
    }

    /// Same model with the contraction of the bivector `Σ π^{ij} θ_i ∧ θ_j`.
    pub fn with_bivector(&self, coeffs: &Matrix) -> Result<Self, ModelError> {
        let w = self.wedge.as_ref().ok_or(ModelError::MissingWedge)?;
        self.with_contraction(contraction_blocks(w, coeffs)?)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_formal(&self) -> bool {
        self.formal
    }

    pub fn wedge(&self) -> Option<&WedgeData> {
        self.wedge.as_ref()
    }

    pub fn dim(&self, b: Bidegree) -> usize {
        self.labels.get(&b).map_or(0, Vec::len)
    }

    pub fn labels(&self) -> &BTreeMap<Bidegree, Vec<String>> {
        &self.labels
    }

    pub fn total_dim(&self) -> usize {
        self.labels.values().map(Vec::len).sum()
    }

    /// All bidegrees `0 ≤ p,q ≤ n` in lexicographic order.
    pub fn bidegrees(&self) -> impl Iterator<Item = Bidegree> {
        let n = self.n as i32;
        (0..=n).flat_map(move |p| (0..=n).map(move |q| (p, q)))
    }

    pub fn blocks(&self, op: Operator) -> &Blocks {
        &self.ops[&op]
    }

    /// Block of `op` out of bidegree `s`.
    pub fn block(&self, op: Operator, s: Bidegree) -> Matrix {
        let t = (s.0 + op.step().0, s.1 + op.step().1);
        self.ops[&op]
            .get(&s)
            .cloned()
            .unwrap_or_else(|| Matrix::zeros(self.dim(t), self.dim(s)))
    }

    pub fn has_contraction(&self) -> bool {
        !self.ops[&Operator::Contraction].is_empty()
    }

    /// Blocks and labels agree (wedge data is constructor-only and ignored).
    pub fn same_blocks(&self, other: &Self) -> bool {
        self.n == other.n && self.labels == other.labels && self.ops == other.ops
    }

    /// `Σ_{p,q} (-1)^{p+q} dim A^{p,q}`.
    pub fn signed_dimension(&self) -> i64 {
        self.labels
            .iter()
            .map(|(b, l)| crate::complexes::sign(b.0 + b.1) * l.len() as i64)
            .sum()
    }
}

/// `∂_π` blockwise; keys are source bidegrees, blocks map `(p,q) → (p-1,q)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KoszulDifferential {
    blocks: Blocks,
    dims: BTreeMap<Bidegree, usize>,
}

impl KoszulDifferential {
    pub fn at(&self, s: Bidegree) -> Matrix {
        let d = |b: Bidegree| self.dims.get(&b).copied().unwrap_or(0);
        self.blocks
            .get(&s)
            .cloned()
            .unwrap_or_else(|| Matrix::zeros(d((s.0 - 1, s.1)), d(s)))
    }

    pub fn blocks(&self) -> &Blocks {
        &self.blocks
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.is_empty()
    }
}

/// `∂_π(p,q) = l_π(p+1,q)∘∂(p,q) − ∂(p−2,q)∘l_π(p,q)`, without checks.
pub(crate) fn koszul_blocks(m: &DolbeaultPoissonModel) -> Result<KoszulDifferential, ModelError> {
    let mut blocks = Blocks::new();
    for s in m.bidegrees() {
        if m.dim(s) == 0 || m.dim((s.0 - 1, s.1)) == 0 {
            continue;
        }
        let a = m
            .block(Operator::Contraction, (s.0 + 1, s.1))
            .mul(&m.block(Operator::Del, s))?;
        let b = m
            .block(Operator::Del, (s.0 - 2, s.1))
            .mul(&m.block(Operator::Contraction, s))?;
        let d = a.sub(&b)?;
        if !d.is_zero() {
            blocks.insert(s, d);
        }
    }
    let dims = m.labels.iter().map(|(b, l)| (*b, l.len())).collect();
    Ok(KoszulDifferential { blocks, dims })
}

/// The Koszul differential of a model, rejected unless `∂_π² = 0` and
/// `∂̄∂_π + ∂_π∂̄ = 0` hold.
pub fn koszul_differential(m: &DolbeaultPoissonModel) -> Result<KoszulDifferential, ModelError> {
    let kd = koszul_blocks(m)?;
    let report = validate::koszul_checks(m, &kd);
    match ModelError::from_report(&report) {
        Some(e) => Err(e),
        None => Ok(kd),
    }
}

/// Contraction blocks of a bivector on a model with wedge data.
pub fn contraction_from_bivector(m: &DolbeaultPoissonModel, coeffs: &Matrix) -> Result<Blocks, ModelError> {
    let w = m.wedge().ok_or(ModelError::MissingWedge)?;
    contraction_blocks(w, coeffs)
}

/// Fails with the first violated identity of [`validate_model`].
pub fn ensure_valid(m: &DolbeaultPoissonModel) -> Result<(), ModelError> {
    match ModelError::from_report(&validate_model(m)) {
        Some(e) => Err(e),
        None => Ok(()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::{int, one};

    fn exterior_model(n: usize) -> DolbeaultPoissonModel {
        let w = WedgeData::new(n);
        DolbeaultPoissonModel::new(n, w.labels(), Blocks::new(), Blocks::new(), Blocks::new())
            .unwrap()
            .with_wedge(w)
    }

    fn pi12(n: usize) -> Matrix {
        let mut pi = Matrix::zeros(n, n);
        pi.set(0, 1, one());
        pi.set(1, 0, -one());
        pi
    }

    #[test]
    fn zero_contraction_gives_zero_koszul() {
        let m = exterior_model(2);
        assert!(koszul_differential(&m).unwrap().is_zero());
    }

    #[test]
    fn closed_forms_give_zero_koszul() {
        let m = exterior_model(2).with_bivector(&pi12(2)).unwrap();
        assert!(m.has_contraction());
        assert!(koszul_differential(&m).unwrap().is_zero());
    }

    #[test]
    fn low_degree_contraction_vanishes() {
        let m = exterior_model(3).with_bivector(&pi12(3)).unwrap();
        assert!(m.block(Operator::Contraction, (1, 0)).is_zero());
        assert!(m.block(Operator::Contraction, (0, 2)).is_zero());
    }

    #[test]
    fn shape_errors_are_located() {
        let w = WedgeData::new(1);
        let bad = BTreeMap::from([((0, 0), Matrix::zeros(2, 1))]);
        let err = DolbeaultPoissonModel::new(1, w.labels(), bad, Blocks::new(), Blocks::new()).unwrap_err();
        assert_eq!(
            err,
            ModelError::Shape {
                op: "del",
                at: (0, 0),
                expected: (1, 1),
                found: (2, 1)
            }
        );
        let labels = BTreeMap::from([((2, 0), vec!["x".to_string()])]);
        assert!(matches!(
            DolbeaultPoissonModel::new(1, labels, Blocks::new(), Blocks::new(), Blocks::new()),
            Err(ModelError::OutOfRange { at: (2, 0), n: 1 })
        ));
    }

    #[test]
    fn bivector_needs_wedge() {
        let m = DolbeaultPoissonModel::point();
        assert_eq!(m.with_bivector(&Matrix::zeros(0, 0)), Err(ModelError::MissingWedge));
        assert_eq!(m.signed_dimension(), 1);
        assert_eq!(int(m.total_dim() as i64), one());
    }
}
