//! Concrete models and the `kbmodel/1` file format.

mod format;

pub use format::{build_model, load_model, save_model, BlockEntry, ModelFile, Strictness, FORMAT};

use std::collections::BTreeMap;

use num_traits::Zero;
use thiserror::Error;

use crate::exactla::{Matrix, Rational};
use crate::kbengine::HodgeDiamond;
use crate::poissonmodel::exterior::{derivation, Combo};
use crate::poissonmodel::{
    contraction_blocks, ensure_valid, DolbeaultPoissonModel, ModelError, Monomial, WedgeData,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ZooError {
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{path}: {message}")]
    Field { path: String, message: String },
    #[error("structure constant c^{k}_{{{i}{j}}} needs i != j and all indices below n = {n}")]
    StructureIndex { i: usize, j: usize, k: usize, n: usize },
}

/// Structure constants `c^k_{ij}` of a Lie algebra with basis `e_0..e_{n-1}`,
/// `[e_i, e_j] = Σ_k c^k_{ij} e_k`. Only `i < j` is stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct StructureConstants {
    n: usize,
    c: BTreeMap<(usize, usize, usize), Rational>,
}

impl StructureConstants {
    pub fn new(n: usize) -> Self {
        Self { n, c: BTreeMap::new() }
    }

    /// Sets `c^k_{ij}` (and implicitly `c^k_{ji} = -c^k_{ij}`); indices are
    /// zero-based.
    pub fn set(&mut self, i: usize, j: usize, k: usize, v: Rational) -> Result<(), ZooError> {
        if i == j || i >= self.n || j >= self.n || k >= self.n {
            return Err(ZooError::StructureIndex { i, j, k, n: self.n });
        }
        let (key, v) = if i < j { ((i, j, k), v) } else { ((j, i, k), -v) };
        if v.is_zero() {
            self.c.remove(&key);
        } else {
            self.c.insert(key, v);
        }
        Ok(())
    }

    pub fn with(mut self, i: usize, j: usize, k: usize, v: Rational) -> Result<Self, ZooError> {
        self.set(i, j, k, v)?;
        Ok(self)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> Rational {
        match i.cmp(&j) {
            std::cmp::Ordering::Less => self.c.get(&(i, j, k)).cloned().unwrap_or_else(Rational::zero),
            std::cmp::Ordering::Greater => -self.c.get(&(j, i, k)).cloned().unwrap_or_else(Rational::zero),
            std::cmp::Ordering::Equal => Rational::zero(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// `[[e_i,e_j],e_l] + [[e_j,e_l],e_i] + [[e_l,e_i],e_j] = 0` for all
    /// `i < j < l`; the first failing triple is reported one-based.
    pub fn check_jacobi(&self) -> Result<(), ModelError> {
        let n = self.n;
        for i in 0..n {
            for j in i + 1..n {
                for l in j + 1..n {
                    for m in 0..n {
                        let mut s = Rational::zero();
                        for (a, b, c) in [(i, j, l), (j, l, i), (l, i, j)] {
                            for k in 0..n {
                                s += self.get(a, b, k) * self.get(k, c, m);
                            }
                        }
                        if !s.is_zero() {
                            return Err(ModelError::Jacobi { i: i + 1, j: j + 1, k: l + 1 });
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Images `D ω^k = -Σ_{i<j} c^k_{ij} ω^i ∧ ω^j` of the generators.
    fn generator_images(&self) -> Vec<Combo> {
        let mut images = vec![Combo::new(); self.n];
        for (&(i, j, k), v) in &self.c {
            images[k].push((-v.clone(), (1u32 << i) | (1u32 << j)));
        }
        for img in &mut images {
            img.sort_by_key(|(_, mask)| *mask);
        }
        images
    }
}

/// Model of a complex torus of dimension `n`: invariant forms with
/// `∂ = ∂̄ = 0` and the contraction of the constant bivector `pi`.
pub fn torus(n: usize, pi: &Matrix) -> Result<DolbeaultPoissonModel, ModelError> {
    parallelizable(n, &StructureConstants::new(n), pi)
}

/// Invariant-form model of a complex parallelizable manifold with structure
/// constants `c` and a constant bivector `pi`. The bivector is rejected when
/// the resulting model fails validation.
pub fn parallelizable(
    n: usize,
    c: &StructureConstants,
    pi: &Matrix,
) -> Result<DolbeaultPoissonModel, ModelError> {
    assert_eq!(c.n(), n, "structure constants are for a different dimension");
    c.check_jacobi()?;
    let w = WedgeData::new(n);
    let images = c.generator_images();
    let del = w.blocks((1, 0), |m| {
        derivation(&images, m.hol)
            .into_iter()
            .map(|(v, hol)| (v, Monomial { hol, anti: m.anti }))
            .collect()
    });
    let delbar = w.blocks((0, 1), |m| {
        let s = if m.hol.count_ones() % 2 == 0 { 1 } else { -1 };
        derivation(&images, m.anti)
            .into_iter()
            .map(|(v, anti)| (v * crate::exactla::int(s), Monomial { hol: m.hol, anti }))
            .collect()
    });
    let contraction = contraction_blocks(&w, pi)?;
    let model = DolbeaultPoissonModel::new(n, w.labels(), del, delbar, contraction)?.with_wedge(w);
    ensure_valid(&model)?;
    Ok(model)
}

/// A model carrying only Hodge numbers: `h^{p,q}` basis elements in each
/// bidegree and every operator zero.
pub fn hodge_formal(h: &HodgeDiamond) -> DolbeaultPoissonModel {
    let mut labels = BTreeMap::new();
    for p in 0..=h.n {
        for q in 0..=h.n {
            let d = h.get(p as i64, q as i64);
            if d > 0 {
                let l = (0..d).map(|i| format!("h{p},{q}#{}", i + 1)).collect();
                labels.insert((p as i32, q as i32), l);
            }
        }
    }
    DolbeaultPoissonModel::new(h.n, labels, BTreeMap::new(), BTreeMap::new(), BTreeMap::new())
        .expect("diagonal blocks only")
        .with_formal(true)
}

/// Antisymmetric `n x n` matrix with `π^{ij} = v`, `π^{ji} = -v` for each
/// given zero-based pair `i < j`.
pub fn bivector(n: usize, entries: &[(usize, usize, Rational)]) -> Matrix {
    let mut m = Matrix::zeros(n, n);
    for (i, j, v) in entries {
        m.set(*i, *j, v.clone());
        m.set(*j, *i, -v.clone());
    }
    m
}

/// The `c^3_{12} = 1` Heisenberg-type structure constants on three generators.
pub fn heisenberg() -> StructureConstants {
    StructureConstants::new(3)
        .with(0, 1, 2, crate::exactla::one())
        .expect("indices in range")
}

/// Diamond of `ℂP^m`.
pub fn projective_space_diamond(m: usize) -> HodgeDiamond {
    HodgeDiamond::diagonal(&vec![1; m + 1])
}

/// A named model with free-text provenance.
#[derive(Clone, Debug)]
pub struct ZooEntry {
    pub name: String,
    pub model: DolbeaultPoissonModel,
    pub metadata: BTreeMap<String, String>,
}

fn entry(name: &str, model: DolbeaultPoissonModel, notes: &[(&str, &str)]) -> ZooEntry {
    ZooEntry {
        name: name.to_string(),
        model,
        metadata: notes.iter().map(|(k, v)| (k.to_string(), v.to_string())).collect(),
    }
}

/// Every model the zoo ships with, in a fixed order.
pub fn catalog() -> Vec<ZooEntry> {
    let one = crate::exactla::one;
    let zero2 = Matrix::zeros(2, 2);
    let pi12_2 = bivector(2, &[(0, 1, one())]);
    let zero3 = Matrix::zeros(3, 3);
    let pi12_3 = bivector(3, &[(0, 1, one())]);
    let compact = ("compact", "true");
    let mut out = vec![
        entry("point", DolbeaultPoissonModel::point(), &[compact]),
        entry("torus1", torus(1, &Matrix::zeros(1, 1)).expect("valid"), &[compact]),
        entry("torus2", torus(2, &zero2).expect("valid"), &[compact]),
        entry("torus2-pi12", torus(2, &pi12_2).expect("valid"), &[compact]),
        entry(
            "iwasawa",
            parallelizable(3, &heisenberg(), &zero3).expect("valid"),
            &[compact, ("realization", "invariant forms of the Iwasawa manifold")],
        ),
        entry(
            "iwasawa-pi12",
            parallelizable(3, &heisenberg(), &pi12_3).expect("valid"),
            &[compact, ("realization", "invariant forms of the Iwasawa manifold")],
        ),
    ];
    for m in 1..=3 {
        out.push(entry(
            &format!("cp{m}"),
            hodge_formal(&projective_space_diamond(m)),
            &[compact, ("realization", "Hodge numbers only")],
        ));
    }
    out
}

/// Looks up a catalog entry by name.
pub fn by_name(name: &str) -> Option<ZooEntry> {
    catalog().into_iter().find(|e| e.name == name)
}
