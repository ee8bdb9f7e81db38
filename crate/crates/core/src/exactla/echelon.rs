use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{Matrix, Rational};

pub(crate) type IntRow = Vec<(usize, BigInt)>;

/// Clears denominators and divides out the content, so the row is a
/// primitive integer vector with a positive leading entry.
pub(crate) fn primitive_from_rational(row: &[(usize, Rational)]) -> IntRow {
    let mut den = BigInt::one();
    for (_, q) in row {
        den = den.lcm(q.denom());
    }
    let mut out: IntRow = row
        .iter()
        .map(|(c, q)| (*c, q.numer() * (&den / q.denom())))
        .collect();
    make_primitive(&mut out);
    out
}

fn make_primitive(row: &mut IntRow) {
    let Some(first) = row.first() else { return };
    let mut g = first.1.abs();
    for (_, v) in row.iter().skip(1) {
        if g.is_one() {
            break;
        }
        g = g.gcd(v);
    }
    let flip = first.1.is_negative();
    if !g.is_one() || flip {
        let g = if flip { -g } else { g };
        for (_, v) in row.iter_mut() {
            *v = &*v / &g;
        }
    }
}

/// `a * r - b * p`, dropping zeros, re-normalised.
fn combine(a: &BigInt, r: &IntRow, b: &BigInt, p: &IntRow) -> IntRow {
    let mut out = Vec::with_capacity(r.len() + p.len());
    let (mut i, mut j) = (0, 0);
    while i < r.len() || j < p.len() {
        let take_r = j >= p.len() || (i < r.len() && r[i].0 < p[j].0);
        let take_p = i >= r.len() || (j < p.len() && p[j].0 < r[i].0);
        if take_r {
            out.push((r[i].0, a * &r[i].1));
            i += 1;
        } else if take_p {
            out.push((p[j].0, -(b * &p[j].1)));
            j += 1;
        } else {
            let v = a * &r[i].1 - b * &p[j].1;
            if !v.is_zero() {
                out.push((r[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    make_primitive(&mut out);
    out
}

fn entry_at(row: &IntRow, col: usize) -> Option<&BigInt> {
    row.binary_search_by_key(&col, |e| e.0)
        .ok()
        .map(|k| &row[k].1)
}

pub(crate) struct Echelon {
    /// `(pivot column, row)` in increasing pivot column order.
    pub pivots: Vec<(usize, IntRow)>,
    /// Rows left over after elimination; nonzero only beyond `limit`.
    pub leftover: Vec<IntRow>,
}

/// Fraction-free elimination. Pivots are searched in columns `< limit`
/// in increasing order; at each column the remaining row with the smallest
/// original index is chosen. With `reduce` the pivot columns are also
/// cleared from earlier pivot rows.
pub(crate) fn eliminate(rows: Vec<IntRow>, limit: usize, reduce: bool) -> Echelon {
    let mut remaining: Vec<IntRow> = rows.into_iter().filter(|r| !r.is_empty()).collect();
    let mut pivots: Vec<(usize, IntRow)> = Vec::new();
    for col in 0..limit {
        let Some(pos) = remaining
            .iter()
            .position(|r| r.first().map(|e| e.0) == Some(col))
        else {
            continue;
        };
        let prow = remaining.remove(pos);
        let a = prow[0].1.clone();
        for r in remaining.iter_mut() {
            if r.first().map(|e| e.0) == Some(col) {
                let b = r[0].1.clone();
                *r = combine(&a, r, &b, &prow);
            }
        }
        remaining.retain(|r| !r.is_empty());
        if reduce {
            for (_, r) in pivots.iter_mut() {
                if let Some(b) = entry_at(r, col).cloned() {
                    *r = combine(&a, r, &b, &prow);
                }
            }
        }
        pivots.push((col, prow));
        if remaining.is_empty() {
            break;
        }
    }
    Echelon {
        pivots,
        leftover: remaining,
    }
}

pub(crate) fn int_rows(m: &Matrix) -> Vec<IntRow> {
    (0..m.rows())
        .map(|i| primitive_from_rational(m.row(i)))
        .collect()
}

/// Indices of the columns that are not in the span of the columns before
/// them. These columns form a basis of the column space.
pub fn pivot_columns(m: &Matrix) -> Vec<usize> {
    eliminate(int_rows(m), m.cols(), false)
        .pivots
        .into_iter()
        .map(|(c, _)| c)
        .collect()
}

pub(crate) fn rank(m: &Matrix) -> usize {
    eliminate(int_rows(m), m.cols(), false).pivots.len()
}

/// Kernel basis vectors as columns; one per free column, in increasing
/// free-column order.
pub(crate) fn kernel_columns(m: &Matrix) -> Matrix {
    let ech = eliminate(int_rows(m), m.cols(), true);
    let mut is_pivot = vec![false; m.cols()];
    for (c, _) in &ech.pivots {
        is_pivot[*c] = true;
    }
    let free: Vec<usize> = (0..m.cols()).filter(|c| !is_pivot[*c]).collect();
    let mut trip = Vec::new();
    for (k, &f) in free.iter().enumerate() {
        trip.push((f, k, Rational::one()));
    }
    let free_pos: std::collections::HashMap<usize, usize> =
        free.iter().enumerate().map(|(k, &f)| (f, k)).collect();
    for (c, row) in &ech.pivots {
        let piv = &row[0].1;
        for (col, v) in row.iter().skip(1) {
            let k = free_pos[col];
            trip.push((*c, k, -Rational::new(v.clone(), piv.clone())));
        }
    }
    Matrix::from_triplets(m.cols(), free.len(), trip).expect("indices in range")
}

/// Some `X` with `m X = rhs`, or `None` when the system is inconsistent.
pub(crate) fn solve(m: &Matrix, rhs: &Matrix) -> Option<Matrix> {
    assert_eq!(m.rows(), rhs.rows());
    let n = m.cols();
    let rows: Vec<IntRow> = (0..m.rows())
        .map(|i| {
            let mut r: Vec<(usize, Rational)> = m.row(i).to_vec();
            r.extend(rhs.row(i).iter().map(|(c, q)| (n + c, q.clone())));
            primitive_from_rational(&r)
        })
        .collect();
    let ech = eliminate(rows, n, true);
    if !ech.leftover.is_empty() {
        return None;
    }
    let mut trip = Vec::new();
    for (c, row) in &ech.pivots {
        let piv = &row[0].1;
        for (col, v) in row.iter().skip(1) {
            if *col >= n {
                trip.push((*c, col - n, Rational::new(v.clone(), piv.clone())));
            }
        }
    }
    Some(Matrix::from_triplets(n, rhs.cols(), trip).expect("indices in range"))
}
