//! Pages of the spectral sequence of the column filtration
//! `F^p = ⊕_{p' ≥ p} K^{p',•}`, computed directly as subquotients of the
//! total complex:
//!
//! `Z_r^p = F^p ∩ D^{-1}(F^{p+r})`,
//! `E_r^p = Z_r^p / (Z_{r-1}^{p+1} + D Z_{r-1}^{p-r+1})`.
//!
//! With this indexing `E_1^{p,q} = H^q(K^{p,•}, d2)`.

use std::collections::BTreeMap;

use super::double::{total_differential, Cell, DoubleComplex};
use super::ComplexError;
use crate::exactla::Matrix;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Page {
    pub r: usize,
    pub dims: BTreeMap<Cell, usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectralPages {
    /// `E_1 .. E_{r_max}`.
    pub pages: Vec<Page>,
    /// `E_∞`.
    pub limit: BTreeMap<Cell, usize>,
    /// Least `r ≥ 1` with `E_r = E_∞`.
    pub degeneration_page: usize,
}

impl SpectralPages {
    pub fn page(&self, r: usize) -> Option<&Page> {
        self.pages.iter().find(|p| p.r == r)
    }

    /// `Σ_{p+q=k} dim E_∞^{p,q}`.
    pub fn limit_total(&self, k: i32) -> usize {
        self.limit
            .iter()
            .filter(|(c, _)| c.0 + c.1 == k)
            .map(|(_, n)| n)
            .sum()
    }
}

struct Filtered<'a> {
    dc: &'a DoubleComplex,
    diffs: BTreeMap<i32, Matrix>,
}

impl<'a> Filtered<'a> {
    fn new(dc: &'a DoubleComplex) -> Self {
        let mut diffs = BTreeMap::new();
        if let Some((lo, hi)) = dc.total_range() {
            for k in lo - 1..=hi {
                diffs.insert(k, total_differential(dc, k));
            }
        }
        Self { dc, diffs }
    }

    fn d(&self, k: i32) -> Matrix {
        self.diffs
            .get(&k)
            .cloned()
            .unwrap_or_else(|| Matrix::zeros(self.dc.total_dim(k + 1), self.dc.total_dim(k)))
    }

    /// Coordinates of degree `k` belonging to columns satisfying `keep`.
    fn coords(&self, k: i32, keep: impl Fn(i32) -> bool) -> Vec<usize> {
        self.dc
            .layout(k)
            .into_iter()
            .filter(|(c, _, _)| keep(c.0))
            .flat_map(|(_, off, n)| off..off + n)
            .collect()
    }

    /// Basis of `Z_r^p` in degree `k`, as columns in total coordinates.
    fn z(&self, k: i32, p: i32, r: i32) -> Matrix {
        let cols = self.coords(k, |c| c >= p);
        let rows = self.coords(k + 1, |c| c < p.saturating_add(r));
        let sub = self.d(k).select_rows(&rows).select_cols(&cols);
        let ker = sub.kernel_basis().into_basis();
        let mut out = Matrix::zeros(self.dc.total_dim(k), ker.cols());
        for (i, j, q) in ker.entries() {
            out.set(cols[i], j, q.clone());
        }
        out
    }

    fn e_dim(&self, cell: Cell, r: i32) -> Result<usize, ComplexError> {
        let (p, q) = cell;
        let k = p + q;
        let num = self.z(k, p, r).cols();
        if num == 0 {
            return Ok(0);
        }
        let cycles_above = self.z(k, p + 1, r - 1);
        let hit = self.d(k - 1).mul(&self.z(k - 1, p - r + 1, r - 1))?;
        let den = Matrix::hstack(self.dc.total_dim(k), &[&cycles_above, &hit])?.rank();
        Ok(num - den)
    }

    fn page(&self, r: i32) -> Result<BTreeMap<Cell, usize>, ComplexError> {
        self.dc
            .spaces()
            .support()
            .map(|c| Ok((c, self.e_dim(c, r)?)))
            .collect()
    }
}

/// Pages `E_1..E_{r_max}` and the limit page of the column filtration.
///
/// Once `r` exceeds the width of the column range every further
/// differential vanishes, so the limit page is `E_{width+1}`.
pub fn spectral_pages(dc: &DoubleComplex, r_max: usize) -> Result<SpectralPages, ComplexError> {
    let f = Filtered::new(dc);
    let width = dc.column_range().map_or(0, |(lo, hi)| (hi - lo) as usize);
    let last = r_max.max(width + 1);
    let mut all = Vec::with_capacity(last);
    for r in 1..=last {
        all.push(Page {
            r,
            dims: f.page(r as i32)?,
        });
    }
    let limit = all.last().map(|p| p.dims.clone()).unwrap_or_default();
    let degeneration_page = all
        .iter()
        .find(|p| p.dims == limit)
        .map_or(1, |p| p.r);
    all.truncate(r_max);
    Ok(SpectralPages {
        pages: all,
        limit,
        degeneration_page,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexes::{homology_dims, total_complex};

    #[test]
    fn zero_differentials_degenerate_immediately() {
        let dc = DoubleComplex::new([((0, 0), 2), ((1, 0), 1), ((1, 1), 3)], [], []).unwrap();
        let sp = spectral_pages(&dc, 3).unwrap();
        assert_eq!(sp.degeneration_page, 1);
        assert_eq!(sp.page(1).unwrap().dims, sp.limit);
        assert_eq!(sp.limit[&(1, 1)], 3);
        assert_eq!(sp.pages.len(), 3);
    }

    #[test]
    fn two_cells_with_identity_d1() {
        let dc = DoubleComplex::new([((0, 0), 1), ((1, 0), 1)], [((0, 0), Matrix::identity(1))], [])
            .unwrap();
        let sp = spectral_pages(&dc, 2).unwrap();
        let e1 = &sp.page(1).unwrap().dims;
        assert_eq!((e1[&(0, 0)], e1[&(1, 0)]), (1, 1));
        assert!(sp.page(2).unwrap().dims.values().all(|&d| d == 0));
        assert_eq!(sp.degeneration_page, 2);
    }

    #[test]
    fn length_three_staircase_degenerates_at_three() {
        // a at (0,1) with d1 a = u at (1,1); v at (1,0) with d2 v = -u and
        // d1 v = w at (2,0). Then D(a + v) = w, so a and w survive E_1 and
        // cancel through d_2.
        let one = Matrix::identity(1);
        let dc = DoubleComplex::new(
            [((0, 1), 1), ((1, 1), 1), ((1, 0), 1), ((2, 0), 1)],
            [((0, 1), one.clone()), ((1, 0), one.clone())],
            [((1, 0), one.neg())],
        )
        .unwrap();
        let sp = spectral_pages(&dc, 3).unwrap();
        assert!(sp.limit.values().all(|&d| d == 0));
        let total = homology_dims(&total_complex(&dc).unwrap());
        assert!(total.values().all(|&h| h == 0));
        let e1 = &sp.page(1).unwrap().dims;
        // column 1: v -> -u under d2 is injective, so E_1 vanishes there
        assert_eq!(e1[&(1, 0)], 0);
        assert_eq!(e1[&(1, 1)], 0);
        assert_eq!((e1[&(0, 1)], e1[&(2, 0)]), (1, 1));
        let e2 = &sp.page(2).unwrap().dims;
        assert_eq!((e2[&(0, 1)], e2[&(2, 0)]), (1, 1));
        assert_eq!(sp.degeneration_page, 3);
    }
}
