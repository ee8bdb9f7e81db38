use std::collections::BTreeMap;

use super::{koszul_blocks, Bidegree, DolbeaultPoissonModel, KoszulDifferential, ModelError, Operator};
use crate::complexes::sign;
use crate::exactla::{int, Matrix};

/// Basis layout of `A(X) ⊗ A(Y)`: each product bidegree lists the factor
/// bidegree pairs in increasing order of the first factor, and inside a
/// pair the index is `i_x * dim_y + i_y`.
struct Layout {
    parts: BTreeMap<Bidegree, Vec<(Bidegree, Bidegree, usize)>>,
    dims: BTreeMap<Bidegree, usize>,
}

impl Layout {
    fn new(mx: &DolbeaultPoissonModel, my: &DolbeaultPoissonModel) -> Self {
        let mut parts: BTreeMap<Bidegree, Vec<(Bidegree, Bidegree, usize)>> = BTreeMap::new();
        let mut dims: BTreeMap<Bidegree, usize> = BTreeMap::new();
        for (&bx, lx) in mx.labels() {
            for (&by, ly) in my.labels() {
                let t = (bx.0 + by.0, bx.1 + by.1);
                let off = dims.entry(t).or_insert(0);
                parts.entry(t).or_default().push((bx, by, *off));
                *off += lx.len() * ly.len();
            }
        }
        Self { parts, dims }
    }

    fn dim(&self, t: Bidegree) -> usize {
        self.dims.get(&t).copied().unwrap_or(0)
    }

    fn offset(&self, bx: Bidegree, by: Bidegree) -> Option<usize> {
        let t = (bx.0 + by.0, bx.1 + by.1);
        self.parts
            .get(&t)?
            .iter()
            .find(|e| e.0 == bx && e.1 == by)
            .map(|e| e.2)
    }

    /// Assembles the product block out of `t` from per-pair contributions
    /// `x_op ⊗ 1` and `sign · 1 ⊗ y_op`.
    fn assemble<FX, FY>(&self, t: Bidegree, step: Bidegree, x_op: FX, y_op: FY, signed: bool) -> Matrix
    where
        FX: Fn(Bidegree) -> Matrix,
        FY: Fn(Bidegree) -> Matrix,
    {
        let tt = (t.0 + step.0, t.1 + step.1);
        let mut m = Matrix::zeros(self.dim(tt), self.dim(t));
        for &(bx, by, c0) in &self.parts[&t] {
            let dx = x_op(bx);
            let dy = y_op(by);
            // block column counts are the factor dimensions
            let (nx, ny) = (dx.cols(), dy.cols());
            if !dx.is_zero() {
                let r0 = self
                    .offset((bx.0 + step.0, bx.1 + step.1), by)
                    .expect("target pair present");
                m.add_block(r0, c0, &dx.kron(&Matrix::identity(ny)));
            }
            if !dy.is_zero() {
                let r0 = self
                    .offset(bx, (by.0 + step.0, by.1 + step.1))
                    .expect("target pair present");
                let s = if signed { sign(bx.0 + bx.1) } else { 1 };
                m.add_block(r0, c0, &Matrix::identity(nx).kron(&dy).scale(&int(s)));
            }
        }
        m
    }
}

/// Product model for `π ⊕ σ`: bases tensor, bidegrees add, `∂` and `∂̄`
/// act as signed derivations and the contraction is `l_π ⊗ 1 + 1 ⊗ l_σ`.
pub fn product_model(
    mx: &DolbeaultPoissonModel,
    my: &DolbeaultPoissonModel,
) -> Result<DolbeaultPoissonModel, ModelError> {
    super::ensure_valid(mx)?;
    super::ensure_valid(my)?;
    let layout = Layout::new(mx, my);
    let mut labels = BTreeMap::new();
    for (&t, parts) in &layout.parts {
        let mut l = Vec::with_capacity(layout.dim(t));
        for (bx, by, _) in parts {
            for a in &mx.labels()[bx] {
                for b in &my.labels()[by] {
                    l.push(format!("{a}⊗{b}"));
                }
            }
        }
        labels.insert(t, l);
    }
    let mut ops = Vec::new();
    for op in [Operator::Del, Operator::Delbar, Operator::Contraction] {
        let signed = op != Operator::Contraction;
        let blocks: BTreeMap<Bidegree, Matrix> = layout
            .parts
            .keys()
            .map(|&t| {
                let m = layout.assemble(t, op.step(), |b| mx.block(op, b), |b| my.block(op, b), signed);
                (t, m)
            })
            .filter(|(_, m)| !m.is_zero())
            .collect();
        ops.push(blocks);
    }
    let contraction = ops.pop().expect("three operators");
    let delbar = ops.pop().expect("three operators");
    let del = ops.pop().expect("three operators");
    let out = DolbeaultPoissonModel::new(mx.n() + my.n(), labels, del, delbar, contraction)?
        .with_formal(mx.is_formal() || my.is_formal());
    super::ensure_valid(&out)?;
    Ok(out)
}

/// Checks `∂_{π⊕σ}(α ⊗ β) = ∂_π α ⊗ β + (-1)^{|α|} α ⊗ ∂_σ β` on every pair
/// of basis elements, comparing the product's own Koszul differential with
/// the one assembled from the factors.
pub fn leibniz_holds(
    mx: &DolbeaultPoissonModel,
    my: &DolbeaultPoissonModel,
    product: &DolbeaultPoissonModel,
) -> Result<bool, ModelError> {
    let layout = Layout::new(mx, my);
    let kx: KoszulDifferential = koszul_blocks(mx)?;
    let ky: KoszulDifferential = koszul_blocks(my)?;
    let kp = koszul_blocks(product)?;
    for &t in layout.parts.keys() {
        let expected = layout.assemble(t, (-1, 0), |b| kx.at(b), |b| ky.at(b), true);
        if expected != kp.at(t) {
            return Ok(false);
        }
    }
    Ok(true)
}
