use std::collections::BTreeMap;

use super::{Complex, ComplexError};
use crate::exactla::{pivot_columns, Matrix};

/// Degreewise linear maps commuting with the differentials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainMap {
    source: Complex,
    target: Complex,
    maps: BTreeMap<i32, Matrix>,
}

impl ChainMap {
    pub fn new(
        source: Complex,
        target: Complex,
        maps: impl IntoIterator<Item = (i32, Matrix)>,
    ) -> Result<Self, ComplexError> {
        let maps: BTreeMap<i32, Matrix> = maps.into_iter().collect();
        for (&k, m) in &maps {
            let expected = (target.dim(k), source.dim(k));
            if m.shape() != expected {
                return Err(ComplexError::Shape {
                    what: "chain map",
                    at: k.to_string(),
                    expected,
                    found: m.shape(),
                });
            }
        }
        let cm = Self {
            source,
            target,
            maps,
        };
        let degrees = degree_span(&[&cm.source, &cm.target]);
        for k in degrees {
            let lhs = cm.at(k + 1).mul(&cm.source.differential(k))?;
            let rhs = cm.target.differential(k).mul(&cm.at(k))?;
            if lhs != rhs {
                return Err(ComplexError::NotAChainMap { degree: k });
            }
        }
        Ok(cm)
    }

    pub fn source(&self) -> &Complex {
        &self.source
    }

    pub fn target(&self) -> &Complex {
        &self.target
    }

    pub fn at(&self, k: i32) -> Matrix {
        self.maps
            .get(&k)
            .cloned()
            .unwrap_or_else(|| Matrix::zeros(self.target.dim(k), self.source.dim(k)))
    }
}

fn degree_span(cs: &[&Complex]) -> std::ops::RangeInclusive<i32> {
    let lo = cs.iter().filter_map(|c| c.range()).map(|r| r.0).min();
    let hi = cs.iter().filter_map(|c| c.range()).map(|r| r.1).max();
    match (lo, hi) {
        (Some(lo), Some(hi)) => lo..=hi,
        #[allow(clippy::reversed_empty_ranges)]
        _ => 1..=0,
    }
}

/// Representatives for `H^k` together with a basis of the boundaries; the
/// two sets of columns together form a basis of the cycles.
#[derive(Clone, Debug)]
pub struct HomologyBasis {
    pub representatives: Matrix,
    pub boundaries: Matrix,
}

impl HomologyBasis {
    pub fn of(c: &Complex, k: i32) -> Result<Self, ComplexError> {
        let boundaries = c.differential(k - 1).image().into_basis();
        let cycles = c.differential(k).kernel_basis().into_basis();
        let both = Matrix::hstack(c.dim(k), &[&boundaries, &cycles])?;
        let extra: Vec<usize> = pivot_columns(&both)
            .into_iter()
            .filter(|&j| j >= boundaries.cols())
            .collect();
        Ok(Self {
            representatives: both.select_cols(&extra),
            boundaries,
        })
    }

    pub fn dim(&self) -> usize {
        self.representatives.cols()
    }

    /// Classes of the given cycles in the representative basis.
    pub fn classes(&self, cycles: &Matrix) -> Result<Matrix, ComplexError> {
        let n = self.representatives.rows();
        let basis = Matrix::hstack(n, &[&self.representatives, &self.boundaries])?;
        let x = basis
            .solve(cycles)?
            .expect("argument must consist of cycles");
        Ok(x.block(0, 0, self.dim(), x.cols()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LongExactSequence {
    /// `(label, dim)` in sequence order.
    pub entries: Vec<(String, usize)>,
    /// `maps[i]` goes from `entries[i]` to `entries[i+1]`.
    pub maps: Vec<Matrix>,
}

impl LongExactSequence {
    /// Checks `m_{i+1} m_i = 0` and `rank m_i + rank m_{i+1} = dim E_{i+1}`,
    /// plus injectivity of the first map and surjectivity of the last one.
    /// Returns the index of the first node where exactness fails.
    pub fn check_exact(&self) -> Result<(), usize> {
        let ranks: Vec<usize> = self.maps.iter().map(Matrix::rank).collect();
        if let (Some(first), Some(last)) = (ranks.first(), ranks.last()) {
            if *first != self.entries[0].1 {
                return Err(0);
            }
            if *last != self.entries[self.entries.len() - 1].1 {
                return Err(self.entries.len() - 1);
            }
        } else if self.entries.iter().any(|e| e.1 != 0) {
            return Err(0);
        }
        for i in 0..self.maps.len().saturating_sub(1) {
            let zero = self.maps[i + 1]
                .mul(&self.maps[i])
                .map(|m| m.is_zero())
                .unwrap_or(false);
            if !zero || ranks[i] + ranks[i + 1] != self.entries[i + 1].1 {
                return Err(i + 1);
            }
        }
        Ok(())
    }

    pub fn alternating_sum(&self) -> i64 {
        self.entries
            .iter()
            .enumerate()
            .map(|(i, e)| if i % 2 == 0 { e.1 as i64 } else { -(e.1 as i64) })
            .sum()
    }
}

/// Long exact homology sequence of `0 → A → B → C → 0`, with connecting maps
/// built by the snake construction (lift through `g`, apply `d_B`, pull back
/// through `f`).
///
/// Entries run `H^k(A), H^k(B), H^k(C)` for increasing `k` over the joint
/// degree range.
pub fn les_from_ses(f: &ChainMap, g: &ChainMap) -> Result<LongExactSequence, ComplexError> {
    if f.target() != g.source() {
        return Err(ComplexError::NotShortExact {
            degree: 0,
            reason: "target of f differs from source of g".into(),
        });
    }
    let (a, b, c) = (f.source(), f.target(), g.target());
    let degrees = degree_span(&[a, b, c]);
    for k in degrees.clone() {
        let (fk, gk) = (f.at(k), g.at(k));
        let fail = |reason: &str| ComplexError::NotShortExact {
            degree: k,
            reason: reason.to_string(),
        };
        let rf = fk.rank();
        if rf != a.dim(k) {
            return Err(fail("f is not injective"));
        }
        let rg = gk.rank();
        if rg != c.dim(k) {
            return Err(fail("g is not surjective"));
        }
        if !gk.mul(&fk)?.is_zero() || rf + rg != b.dim(k) {
            return Err(fail("image of f differs from kernel of g"));
        }
    }

    let mut entries = Vec::new();
    let mut maps = Vec::new();
    let hb = |x: &Complex, k: i32| HomologyBasis::of(x, k);
    for k in degrees.clone() {
        let (ha, hbk, hc) = (hb(a, k)?, hb(b, k)?, hb(c, k)?);
        entries.push((format!("H^{k}(A)"), ha.dim()));
        entries.push((format!("H^{k}(B)"), hbk.dim()));
        entries.push((format!("H^{k}(C)"), hc.dim()));
        maps.push(hbk.classes(&f.at(k).mul(&ha.representatives)?)?);
        maps.push(hc.classes(&g.at(k).mul(&hbk.representatives)?)?);
        if k < *degrees.end() {
            let ha_next = hb(a, k + 1)?;
            let lift = g
                .at(k)
                .solve(&hc.representatives)?
                .expect("g is surjective");
            let db = b.differential(k).mul(&lift)?;
            let pulled = f
                .at(k + 1)
                .solve(&db)?
                .expect("d_B of a lift lies in the image of f");
            maps.push(ha_next.classes(&pulled)?);
        }
    }
    let les = LongExactSequence { entries, maps };
    if let Err(node) = les.check_exact() {
        return Err(ComplexError::NotShortExact {
            degree: 0,
            reason: format!("homology sequence not exact at {}", les.entries[node].0),
        });
    }
    Ok(les)
}
