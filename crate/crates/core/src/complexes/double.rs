use std::collections::BTreeMap;

use super::{sign, Complex, ComplexError, GradedSpace};
use crate::exactla::{int, Matrix};

pub type Cell = (i32, i32);

/// Bounded double complex with anticommuting differentials:
/// `d1: (p,q) -> (p+1,q)`, `d2: (p,q) -> (p,q+1)`,
/// `d1² = 0`, `d2² = 0`, `d1 d2 + d2 d1 = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DoubleComplex {
    spaces: GradedSpace<Cell>,
    d1: BTreeMap<Cell, Matrix>,
    d2: BTreeMap<Cell, Matrix>,
}

fn fmt_cell(c: Cell) -> String {
    format!("({},{})", c.0, c.1)
}

impl DoubleComplex {
    pub fn new(
        dims: impl IntoIterator<Item = (Cell, usize)>,
        d1: impl IntoIterator<Item = (Cell, Matrix)>,
        d2: impl IntoIterator<Item = (Cell, Matrix)>,
    ) -> Result<Self, ComplexError> {
        let spaces = GradedSpace::new(dims);
        let keep = |what: &'static str,
                    step: Cell,
                    it: &mut dyn Iterator<Item = (Cell, Matrix)>|
         -> Result<BTreeMap<Cell, Matrix>, ComplexError> {
            let mut out = BTreeMap::new();
            for (c, m) in it {
                let t = (c.0 + step.0, c.1 + step.1);
                let expected = (spaces.dim(t), spaces.dim(c));
                if m.shape() != expected {
                    return Err(ComplexError::Shape {
                        what,
                        at: fmt_cell(c),
                        expected,
                        found: m.shape(),
                    });
                }
                if !m.is_zero() {
                    out.insert(c, m);
                }
            }
            Ok(out)
        };
        let d1 = keep("d1", (1, 0), &mut d1.into_iter())?;
        let d2 = keep("d2", (0, 1), &mut d2.into_iter())?;
        let dc = Self { spaces, d1, d2 };
        dc.validate()?;
        Ok(dc)
    }

    /// The zero double complex.
    pub fn zero() -> Self {
        Self {
            spaces: GradedSpace::default(),
            d1: BTreeMap::new(),
            d2: BTreeMap::new(),
        }
    }

    fn validate(&self) -> Result<(), ComplexError> {
        for c in self.spaces.support() {
            let right = (c.0 + 1, c.1);
            let up = (c.0, c.1 + 1);
            if !self.d1_at(right).mul(&self.d1_at(c))?.is_zero() {
                return Err(ComplexError::Identity {
                    identity: "d1∘d1 = 0",
                    at: fmt_cell(c),
                });
            }
            if !self.d2_at(up).mul(&self.d2_at(c))?.is_zero() {
                return Err(ComplexError::Identity {
                    identity: "d2∘d2 = 0",
                    at: fmt_cell(c),
                });
            }
            let ac = self
                .d1_at(up)
                .mul(&self.d2_at(c))?
                .add(&self.d2_at(right).mul(&self.d1_at(c))?)?;
            if !ac.is_zero() {
                return Err(ComplexError::Identity {
                    identity: "d1∘d2 + d2∘d1 = 0",
                    at: fmt_cell(c),
                });
            }
        }
        Ok(())
    }

    pub fn spaces(&self) -> &GradedSpace<Cell> {
        &self.spaces
    }

    pub fn dim(&self, c: Cell) -> usize {
        self.spaces.dim(c)
    }

    pub fn d1_at(&self, c: Cell) -> Matrix {
        self.d1
            .get(&c)
            .cloned()
            .unwrap_or_else(|| Matrix::zeros(self.dim((c.0 + 1, c.1)), self.dim(c)))
    }

    pub fn d2_at(&self, c: Cell) -> Matrix {
        self.d2
            .get(&c)
            .cloned()
            .unwrap_or_else(|| Matrix::zeros(self.dim((c.0, c.1 + 1)), self.dim(c)))
    }

    /// Range of the first index over the support.
    pub(crate) fn column_range(&self) -> Option<(i32, i32)> {
        let lo = self.spaces.support().map(|c| c.0).min()?;
        let hi = self.spaces.support().map(|c| c.0).max()?;
        Some((lo, hi))
    }

    pub(crate) fn total_range(&self) -> Option<(i32, i32)> {
        let lo = self.spaces.support().map(|c| c.0 + c.1).min()?;
        let hi = self.spaces.support().map(|c| c.0 + c.1).max()?;
        Some((lo, hi))
    }

    /// Cells of total degree `k` in increasing `p`, with their offset in the
    /// total space.
    pub(crate) fn layout(&self, k: i32) -> Vec<(Cell, usize, usize)> {
        let mut off = 0;
        let mut out = Vec::new();
        for (c, n) in self.spaces.iter().filter(|(c, _)| c.0 + c.1 == k) {
            out.push((c, off, n));
            off += n;
        }
        out
    }

    pub(crate) fn total_dim(&self, k: i32) -> usize {
        self.layout(k).iter().map(|e| e.2).sum()
    }
}

/// Simple complex: degree `k` is the sum of the cells with `p + q = k`
/// (ordered by `p`) and the differential is `D = d1 + d2`.
pub fn total_complex(dc: &DoubleComplex) -> Result<Complex, ComplexError> {
    let Some((lo, hi)) = dc.total_range() else {
        return Ok(Complex::zero());
    };
    let mut dims = Vec::new();
    let mut diffs = Vec::new();
    for k in lo..=hi {
        dims.push((k, dc.total_dim(k)));
        diffs.push((k, total_differential(dc, k)));
    }
    Complex::new(dims, diffs)
}

pub(crate) fn total_differential(dc: &DoubleComplex, k: i32) -> Matrix {
    let src = dc.layout(k);
    let tgt = dc.layout(k + 1);
    let offset = |c: Cell| tgt.iter().find(|e| e.0 == c).map(|e| e.1);
    let mut d = Matrix::zeros(dc.total_dim(k + 1), dc.total_dim(k));
    for &(c, c0, _) in &src {
        if let Some(m) = dc.d1.get(&c) {
            let r0 = offset((c.0 + 1, c.1)).expect("target cell of nonzero d1");
            d.add_block(r0, c0, m);
        }
        if let Some(m) = dc.d2.get(&c) {
            let r0 = offset((c.0, c.1 + 1)).expect("target cell of nonzero d2");
            d.add_block(r0, c0, m);
        }
    }
    d
}

/// `shift(dc, m, n)(p, q) = dc(p + m, q + n)`. Differentials move with their
/// cells and keep their signs.
pub fn shift(dc: &DoubleComplex, m: i32, n: i32) -> DoubleComplex {
    let mv = |c: &Cell| (c.0 - m, c.1 - n);
    DoubleComplex {
        spaces: GradedSpace::new(dc.spaces.iter().map(|(c, d)| (mv(&c), d))),
        d1: dc.d1.iter().map(|(c, x)| (mv(c), x.clone())).collect(),
        d2: dc.d2.iter().map(|(c, x)| (mv(c), x.clone())).collect(),
    }
}

/// Tensor product with Koszul signs: on `x ⊗ y` with `x` in cell `(a1,a2)`,
/// each differential acts as `d x ⊗ y + (-1)^{a1+a2} x ⊗ d y`.
///
/// The basis of a cell `(p,q)` lists the pairs of factor cells in
/// increasing order of the first factor's cell; inside a pair the index is
/// `i_a * dim(b) + i_b`.
pub fn tensor_double(a: &DoubleComplex, b: &DoubleComplex) -> Result<DoubleComplex, ComplexError> {
    // target cell -> [(a cell, b cell, offset)]
    let mut layout: BTreeMap<Cell, Vec<(Cell, Cell, usize)>> = BTreeMap::new();
    let mut dims: BTreeMap<Cell, usize> = BTreeMap::new();
    for (ca, na) in a.spaces.iter() {
        for (cb, nb) in b.spaces.iter() {
            let t = (ca.0 + cb.0, ca.1 + cb.1);
            let off = dims.entry(t).or_insert(0);
            layout.entry(t).or_default().push((ca, cb, *off));
            *off += na * nb;
        }
    }
    let find = |t: Cell, ca: Cell| -> Option<usize> {
        layout
            .get(&t)
            .and_then(|v| v.iter().find(|e| e.0 == ca).map(|e| e.2))
    };
    let mut d1: BTreeMap<Cell, Matrix> = BTreeMap::new();
    let mut d2: BTreeMap<Cell, Matrix> = BTreeMap::new();
    for (&t, parts) in &layout {
        for (which, step, out) in [(1, (1, 0), &mut d1), (2, (0, 1), &mut d2)] {
            let tt = (t.0 + step.0, t.1 + step.1);
            let mut m = Matrix::zeros(dims.get(&tt).copied().unwrap_or(0), dims[&t]);
            for &(ca, cb, c0) in parts {
                let (da, db) = if which == 1 {
                    (a.d1_at(ca), b.d1_at(cb))
                } else {
                    (a.d2_at(ca), b.d2_at(cb))
                };
                let ca_next = (ca.0 + step.0, ca.1 + step.1);
                if !da.is_zero() {
                    let r0 = find(tt, ca_next).expect("cell present");
                    m.add_block(r0, c0, &da.kron(&Matrix::identity(b.dim(cb))));
                }
                if !db.is_zero() {
                    let r0 = find(tt, ca).expect("cell present");
                    let s = int(sign(ca.0 + ca.1));
                    m.add_block(r0, c0, &Matrix::identity(a.dim(ca)).kron(&db).scale(&s));
                }
            }
            if !m.is_zero() {
                out.insert(t, m);
            }
        }
    }
    DoubleComplex::new(dims, d1, d2)
}
