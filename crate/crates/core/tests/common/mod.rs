//! Generators and an independent dense oracle shared by the integration
//! tests.
#![allow(dead_code)]

use std::collections::BTreeMap;

use kbhom_core::complexes::{ChainMap, Complex, DoubleComplex};
use kbhom_core::exactla::{int, Matrix, Rational};
use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    use rand::SeedableRng;
    ChaCha8Rng::seed_from_u64(seed)
}

/// Dense Gaussian elimination, kept separate from the sparse engine.
pub fn dense_rank(m: &Matrix) -> usize {
    let mut a: Vec<Vec<Rational>> = m.to_dense();
    let (rows, cols) = m.shape();
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| !a[r][c].is_zero()) else { continue };
        a.swap(rank, p);
        let inv = Rational::one() / a[rank][c].clone();
        for r in 0..rows {
            if r != rank && !a[r][c].is_zero() {
                let f = a[r][c].clone() * inv.clone();
                for j in c..cols {
                    let v = a[rank][j].clone() * f.clone();
                    a[r][j] -= v;
                }
            }
        }
        rank += 1;
    }
    rank
}

pub fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize, density: f64) -> Matrix {
    let mut m = Matrix::zeros(rows, cols);
    for i in 0..rows {
        for j in 0..cols {
            if rng.gen_bool(density) {
                m.set(i, j, int(rng.gen_range(-3..=3)));
            }
        }
    }
    m
}

/// Product of random unit lower and upper triangular integer matrices.
pub fn random_invertible(rng: &mut ChaCha8Rng, n: usize) -> Matrix {
    let mut l = Matrix::identity(n);
    let mut u = Matrix::identity(n);
    for i in 0..n {
        for j in 0..i {
            if rng.gen_bool(0.5) {
                l.set(i, j, int(rng.gen_range(-2..=2)));
            }
            if rng.gen_bool(0.5) {
                u.set(j, i, int(rng.gen_range(-2..=2)));
            }
        }
    }
    l.mul(&u).unwrap()
}

/// A double complex assembled from indecomposable pieces in a known basis,
/// then disguised by a random change of basis in every cell.
pub struct GeneratedDouble {
    pub dc: DoubleComplex,
    /// Total homology dimensions predicted from the pieces.
    pub total_homology: BTreeMap<i32, usize>,
    /// `E_1` dimensions predicted from the pieces.
    pub e1: BTreeMap<(i32, i32), usize>,
}

#[derive(Default)]
struct Builder {
    cells: BTreeMap<(i32, i32), usize>,
    d1: Vec<((i32, i32), usize, usize, i64)>,
    d2: Vec<((i32, i32), usize, usize, i64)>,
    homology: BTreeMap<i32, usize>,
    e1: BTreeMap<(i32, i32), usize>,
}

impl Builder {
    fn add(&mut self, c: (i32, i32)) -> usize {
        let e = self.cells.entry(c).or_insert(0);
        *e += 1;
        *e - 1
    }

    fn h(&mut self, k: i32) {
        *self.homology.entry(k).or_insert(0) += 1;
    }

    fn e(&mut self, c: (i32, i32)) {
        *self.e1.entry(c).or_insert(0) += 1;
    }

    fn matrices(&self, list: &[((i32, i32), usize, usize, i64)], step: (i32, i32)) -> BTreeMap<(i32, i32), Matrix> {
        let dim = |c: (i32, i32)| self.cells.get(&c).copied().unwrap_or(0);
        let mut out: BTreeMap<(i32, i32), Matrix> = BTreeMap::new();
        for &(s, from, to, v) in list {
            let t = (s.0 + step.0, s.1 + step.1);
            let m = out.entry(s).or_insert_with(|| Matrix::zeros(dim(t), dim(s)));
            m.set(to, from, int(v));
        }
        out
    }
}

pub fn random_double(rng: &mut ChaCha8Rng, width: i32, height: i32, pieces: usize) -> GeneratedDouble {
    let mut b = Builder::default();
    for _ in 0..pieces {
        let p = rng.gen_range(0..width);
        let q = rng.gen_range(0..height);
        let right = p + 1 < width;
        let up = q + 1 < height;
        match rng.gen_range(0..6) {
            1 if right => {
                let a = b.add((p, q));
                let t = b.add((p + 1, q));
                b.d1.push(((p, q), a, t, 1));
                b.e((p, q));
                b.e((p + 1, q));
            }
            2 if up => {
                let a = b.add((p, q));
                let t = b.add((p, q + 1));
                b.d2.push(((p, q), a, t, 1));
            }
            3 if right && up => {
                let a = b.add((p, q));
                let x = b.add((p + 1, q));
                let y = b.add((p, q + 1));
                let z = b.add((p + 1, q + 1));
                b.d1.push(((p, q), a, x, 1));
                b.d2.push(((p, q), a, y, 1));
                b.d2.push(((p + 1, q), x, z, 1));
                b.d1.push(((p, q + 1), y, z, -1));
            }
            4 if right && up => {
                // a -> b (horizontal) and a -> c (vertical)
                let a = b.add((p, q));
                let x = b.add((p + 1, q));
                let y = b.add((p, q + 1));
                b.d1.push(((p, q), a, x, 1));
                b.d2.push(((p, q), a, y, 1));
                b.h(p + q + 1);
                b.e((p + 1, q));
            }
            5 if right && up => {
                // x (left, top) and y (right, bottom) both hit z
                let x = b.add((p, q + 1));
                let y = b.add((p + 1, q));
                let z = b.add((p + 1, q + 1));
                b.d1.push(((p, q + 1), x, z, 1));
                b.d2.push(((p + 1, q), y, z, 1));
                b.h(p + q + 1);
                b.e((p, q + 1));
            }
            _ => {
                b.add((p, q));
                b.h(p + q);
                b.e((p, q));
            }
        }
    }
    let d1 = b.matrices(&b.d1, (1, 0));
    let d2 = b.matrices(&b.d2, (0, 1));
    let g: BTreeMap<(i32, i32), Matrix> = b.cells.iter().map(|(c, &n)| (*c, random_invertible(rng, n))).collect();
    let conj = |blocks: BTreeMap<(i32, i32), Matrix>, step: (i32, i32)| -> Vec<((i32, i32), Matrix)> {
        blocks
            .into_iter()
            .map(|(s, m)| {
                let t = (s.0 + step.0, s.1 + step.1);
                let gi = g[&s].inverse().unwrap();
                (s, g[&t].mul(&m).unwrap().mul(&gi).unwrap())
            })
            .collect()
    };
    let dc = DoubleComplex::new(b.cells.clone(), conj(d1, (1, 0)), conj(d2, (0, 1))).unwrap();
    GeneratedDouble {
        dc,
        total_homology: b.homology,
        e1: b.e1,
    }
}

/// A bounded cochain complex built from dots and arrows, disguised by a
/// change of basis, with its expected homology.
pub fn random_complex(rng: &mut ChaCha8Rng, lo: i32, hi: i32, pieces: usize) -> (Complex, BTreeMap<i32, usize>) {
    let parts = random_parts(rng, lo, hi, pieces);
    let (c, _) = assemble(rng, &parts);
    let mut h = BTreeMap::new();
    for p in &parts {
        if let Part::Dot(k) = p {
            *h.entry(*k).or_insert(0) += 1;
        }
    }
    (c, h)
}

#[derive(Clone, Copy, Debug)]
enum Part {
    Dot(i32),
    Arrow(i32),
}

fn random_parts(rng: &mut ChaCha8Rng, lo: i32, hi: i32, pieces: usize) -> Vec<Part> {
    (0..pieces)
        .map(|_| {
            let k = rng.gen_range(lo..=hi);
            if k < hi && rng.gen_bool(0.6) {
                Part::Arrow(k)
            } else {
                Part::Dot(k)
            }
        })
        .collect()
}

/// Basis element positions: `(degree, index)` for each piece element.
fn positions(parts: &[Part]) -> (BTreeMap<i32, usize>, Vec<Vec<(i32, usize)>>) {
    let mut dims: BTreeMap<i32, usize> = BTreeMap::new();
    let mut pos = Vec::new();
    let slot = |k: i32, dims: &mut BTreeMap<i32, usize>| {
        let e = dims.entry(k).or_insert(0);
        *e += 1;
        (k, *e - 1)
    };
    for p in parts {
        pos.push(match *p {
            Part::Dot(k) => vec![slot(k, &mut dims)],
            Part::Arrow(k) => vec![slot(k, &mut dims), slot(k + 1, &mut dims)],
        });
    }
    (dims, pos)
}

/// Differentials of `parts` in the standard basis.
fn standard(parts: &[Part], pos: &[Vec<(i32, usize)>], dims: &BTreeMap<i32, usize>) -> BTreeMap<i32, Matrix> {
    let dim = |k: i32| dims.get(&k).copied().unwrap_or(0);
    let mut d: BTreeMap<i32, Matrix> = BTreeMap::new();
    for (p, at) in parts.iter().zip(pos) {
        if let Part::Arrow(k) = p {
            let m = d.entry(*k).or_insert_with(|| Matrix::zeros(dim(k + 1), dim(*k)));
            m.set(at[1].1, at[0].1, Rational::one());
        }
    }
    d
}

fn assemble(rng: &mut ChaCha8Rng, parts: &[Part]) -> (Complex, BTreeMap<i32, Matrix>) {
    let (dims, pos) = positions(parts);
    let d = standard(parts, &pos, &dims);
    let g: BTreeMap<i32, Matrix> = dims.iter().map(|(k, &n)| (*k, random_invertible(rng, n))).collect();
    let diffs: Vec<(i32, Matrix)> = d
        .into_iter()
        .map(|(k, m)| (k, g[&(k + 1)].mul(&m).unwrap().mul(&g[&k].inverse().unwrap()).unwrap()))
        .collect();
    (Complex::new(dims, diffs).unwrap(), g)
}

/// A short exact sequence `0 → A → B → C → 0` where `A` is spanned by a
/// random choice of subpieces of `B` (whole arrows, arrow heads or dots),
/// with `B` disguised by a change of basis.
pub struct GeneratedSes {
    pub f: ChainMap,
    pub g: ChainMap,
}

pub fn random_ses(rng: &mut ChaCha8Rng, lo: i32, hi: i32, pieces: usize) -> GeneratedSes {
    let parts = random_parts(rng, lo, hi, pieces);
    let (dims, pos) = positions(&parts);
    // which elements of each piece go to A
    let mut in_a: Vec<Vec<bool>> = Vec::new();
    for p in &parts {
        in_a.push(match p {
            Part::Dot(_) => vec![rng.gen_bool(0.5)],
            Part::Arrow(_) => match rng.gen_range(0..3) {
                0 => vec![false, false],
                1 => vec![false, true],
                _ => vec![true, true],
            },
        });
    }
    let split = |want: bool| {
        // per degree, list of B-indices in order
        let mut sel: BTreeMap<i32, Vec<usize>> = BTreeMap::new();
        for (at, flags) in pos.iter().zip(&in_a) {
            for (&(k, i), &f) in at.iter().zip(flags) {
                if f == want {
                    sel.entry(k).or_default().push(i);
                }
            }
        }
        sel
    };
    let a_sel = split(true);
    let c_sel = split(false);
    let d_b = standard(&parts, &pos, &dims);
    let restrict = |sel: &BTreeMap<i32, Vec<usize>>| -> Complex {
        let dims: Vec<(i32, usize)> = sel.iter().map(|(k, v)| (*k, v.len())).collect();
        let diffs: Vec<(i32, Matrix)> = d_b
            .iter()
            .map(|(k, m)| {
                let rows = sel.get(&(k + 1)).cloned().unwrap_or_default();
                let cols = sel.get(k).cloned().unwrap_or_default();
                (*k, m.select_rows(&rows).select_cols(&cols))
            })
            .collect();
        Complex::new(dims, diffs).unwrap()
    };
    let a = restrict(&a_sel);
    let c = restrict(&c_sel);
    let g_b: BTreeMap<i32, Matrix> = dims.iter().map(|(k, &n)| (*k, random_invertible(rng, n))).collect();
    let b = Complex::new(
        dims.clone(),
        d_b.iter()
            .map(|(k, m)| (*k, g_b[&(k + 1)].mul(m).unwrap().mul(&g_b[k].inverse().unwrap()).unwrap()))
            .collect::<Vec<_>>(),
    )
    .unwrap();
    let mut f_maps = Vec::new();
    let mut g_maps = Vec::new();
    for (&k, &n) in &dims {
        let a_idx = a_sel.get(&k).cloned().unwrap_or_default();
        let c_idx = c_sel.get(&k).cloned().unwrap_or_default();
        let mut inc = Matrix::zeros(n, a_idx.len());
        for (j, &i) in a_idx.iter().enumerate() {
            inc.set(i, j, Rational::one());
        }
        let mut proj = Matrix::zeros(c_idx.len(), n);
        for (j, &i) in c_idx.iter().enumerate() {
            proj.set(j, i, Rational::one());
        }
        f_maps.push((k, g_b[&k].mul(&inc).unwrap()));
        g_maps.push((k, proj.mul(&g_b[&k].inverse().unwrap()).unwrap()));
    }
    GeneratedSes {
        f: ChainMap::new(a, b.clone(), f_maps).unwrap(),
        g: ChainMap::new(b, c, g_maps).unwrap(),
    }
}
