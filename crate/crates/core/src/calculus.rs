//! Dimension-level rules: Künneth, Leray–Hirsch, flag manifolds and
//! bundles, projective bundles, blow-ups and the Mayer–Vietoris Euler check.

use thiserror::Error;

use crate::kbengine::{euler_char, HHDims, HodgeDiamond, KBDims};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CalculusError {
    #[error("inconsistent blow-up data: dimension at k = {k} would be {value}")]
    InconsistentBlowup { k: i64, value: i64 },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("invalid argument: {0}")]
    Invalid(String),
}

/// `(u_i, v_i)` bidegrees of fibre classes restricting to a basis of each fibre.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassBidegrees(Vec<(usize, usize)>);

impl ClassBidegrees {
    pub fn new(classes: Vec<(usize, usize)>) -> Result<Self, CalculusError> {
        if classes.is_empty() {
            return Err(CalculusError::Invalid("at least one class bidegree is needed".into()));
        }
        Ok(Self(classes))
    }

    /// `(i, i)` for `i = 0..r`: the classes of `ℂP^{r−1}`.
    pub fn projective(r: usize) -> Self {
        Self((0..r).map(|i| (i, i)).collect())
    }

    pub fn as_slice(&self) -> &[(usize, usize)] {
        &self.0
    }
}

/// `dims(k) = Σ_{p+q=k} a(p) b(q)`.
pub fn kunneth_dims(a: &KBDims, b: &KBDims) -> KBDims {
    let n = a.n + b.n;
    let mut out = vec![0; 2 * n + 1];
    for (p, &x) in a.as_slice().iter().enumerate() {
        for (q, &y) in b.as_slice().iter().enumerate() {
            out[p + q] += x * y;
        }
    }
    KBDims::from_vec(n, out).expect("in range")
}

/// `HH_E(k) = Σ_i HH_X(k + v_i − u_i)`. The result lives on
/// `n_X + max_i max(u_i, v_i)`, enough to hold every shifted entry.
pub fn leray_hirsch_hh(x: &HHDims, classes: &ClassBidegrees) -> HHDims {
    let shift = classes.0.iter().map(|&(u, v)| u.max(v)).max().unwrap_or(0);
    let n = x.n + shift;
    let n_i = n as i64;
    let dims = (-n_i..=n_i).map(|k| {
        let s = classes
            .0
            .iter()
            .map(|&(u, v)| x.get(k + v as i64 - u as i64))
            .sum();
        (k, s)
    });
    HHDims::new(n, dims).expect("shifted entries stay within [-n, n]")
}

/// `HH_E = b(F) · HH_X`. The fibre dimension is not known from `b(F)`, so
/// the result keeps `n_X`.
pub fn flag_bundle_hh(x: &HHDims, b_f: usize) -> Result<HHDims, CalculusError> {
    if b_f == 0 {
        return Err(CalculusError::Invalid("b(F) must be at least 1".into()));
    }
    Ok(HHDims::new(x.n, x.iter().map(|(k, d)| (k, d * b_f))).expect("same range"))
}

/// `H_k = ℂ^b` at `k = n`, zero elsewhere.
pub fn flag_manifold_kb(n: usize, b: usize) -> Result<KBDims, CalculusError> {
    if b == 0 {
        return Err(CalculusError::Invalid("b must be at least 1".into()));
    }
    let mut out = KBDims::zero(n);
    out.set(n, b);
    Ok(out)
}

/// Hodge numbers of the projectivisation of a rank-`r` bundle over `Y`:
/// `h_E(p,q) = Σ_{i<r} h_Y(p−i, q−i)`.
pub fn projective_bundle_hodge(hy: &HodgeDiamond, r: usize) -> Result<HodgeDiamond, CalculusError> {
    if r == 0 {
        return Err(CalculusError::Invalid("rank must be at least 1".into()));
    }
    let n = hy.n + r - 1;
    let mut out = HodgeDiamond::zero(n);
    for p in 0..=n {
        for q in 0..=n {
            let s = (0..r as i64).map(|i| hy.get(p as i64 - i, q as i64 - i)).sum();
            out.set(p, q, s);
        }
    }
    Ok(out)
}

/// Blow-up of `X` along `Y` of codimension `r`:
/// `h(p,q) = h_X(p,q) + Σ_{i=1}^{r−1} h_Y(p−i, q−i)`. An all-zero `hy`
/// stands for an empty centre and is accepted at any size.
pub fn blowup_hodge(hx: &HodgeDiamond, hy: &HodgeDiamond, r: usize) -> Result<HodgeDiamond, CalculusError> {
    if r < 2 {
        return Err(CalculusError::Invalid(format!("codimension must be at least 2, got {r}")));
    }
    if !hy.is_zero() && hy.n + r != hx.n {
        return Err(CalculusError::DimensionMismatch(format!(
            "centre of dimension {} and codimension {r} in a {}-fold",
            hy.n, hx.n
        )));
    }
    let mut out = hx.clone();
    for p in 0..=hx.n {
        for q in 0..=hx.n {
            let extra: usize = (1..r as i64).map(|i| hy.get(p as i64 - i, q as i64 - i)).sum();
            out.set(p, q, hx.get(p as i64, q as i64) + extra);
        }
    }
    Ok(out)
}

/// Inputs to [`blowup_kb`]: the ambient space, the centre and the
/// exceptional divisor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlowupData {
    pub r: usize,
    pub dims_x: KBDims,
    pub dims_y: KBDims,
    pub dims_e: KBDims,
}

impl BlowupData {
    pub fn new(r: usize, dims_x: KBDims, dims_y: KBDims, dims_e: KBDims) -> Result<Self, CalculusError> {
        if r < 2 {
            return Err(CalculusError::Invalid(format!("codimension must be at least 2, got {r}")));
        }
        let n = dims_x.n;
        let empty_y = dims_y.is_zero();
        if !empty_y && dims_y.n + r != n {
            return Err(CalculusError::DimensionMismatch(format!(
                "centre has n = {}, expected {} for codimension {r}",
                dims_y.n,
                n as i64 - r as i64
            )));
        }
        if !(empty_y && dims_e.is_zero()) && dims_e.n + 1 != n {
            return Err(CalculusError::DimensionMismatch(format!(
                "exceptional divisor has n = {}, expected {}",
                dims_e.n,
                n as i64 - 1
            )));
        }
        Ok(Self {
            r,
            dims_x,
            dims_y,
            dims_e,
        })
    }
}

/// `dims(k) = dims_X(k) + dims_E(k−1) − dims_Y(k−r)`.
pub fn blowup_kb(d: &BlowupData) -> Result<KBDims, CalculusError> {
    let n = d.dims_x.n;
    let mut out = KBDims::zero(n);
    for k in 0..=2 * n as i64 {
        let v = d.dims_x.get(k) as i64 + d.dims_e.get(k - 1) as i64 - d.dims_y.get(k - d.r as i64) as i64;
        if v < 0 {
            return Err(CalculusError::InconsistentBlowup { k, value: v });
        }
        out.set(k as usize, v as usize);
    }
    Ok(out)
}

/// Blow-up at a point: `dims(n) += n − 1`.
pub fn blowup_point_kb(x: &KBDims) -> Result<KBDims, CalculusError> {
    let n = x.n;
    if n < 2 {
        return Err(CalculusError::Invalid(format!("point blow-up needs n ≥ 2, got {n}")));
    }
    let mut out = x.clone();
    out.set(n, x.get(n as i64) + n - 1);
    Ok(out)
}

/// `χ(U ∪ V) = χ(U) + χ(V) − χ(U ∩ V)`.
pub fn mv_euler_check(u: &KBDims, v: &KBDims, uv: &KBDims, union: &KBDims) -> Result<bool, CalculusError> {
    let n = union.n;
    if [u.n, v.n, uv.n].iter().any(|&m| m != n) {
        return Err(CalculusError::DimensionMismatch("all four tables must share n".into()));
    }
    Ok(euler_char(union) == euler_char(u) + euler_char(v) - euler_char(uv))
}
