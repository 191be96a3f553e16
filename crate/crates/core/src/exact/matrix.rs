use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{content, IntVec};
use crate::error::{Error, Result};

/// Dense integer matrix stored row-major.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<BigInt>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::Shape {
                rows,
                cols,
                len: entries.len(),
            });
        }
        Ok(IntMatrix {
            rows,
            cols,
            entries,
        })
    }

    /// Build from row vectors; every row must have `cols` entries.
    pub fn from_rows(cols: usize, rows: &[IntVec]) -> Result<Self> {
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch(format!(
                    "row of length {} in a matrix with {} columns",
                    r.len(),
                    cols
                )));
            }
            entries.extend(r.iter().cloned());
        }
        Self::new(rows.len(), cols, entries)
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let data: Vec<IntVec> = rows.iter().map(|r| super::int_vec(r)).collect();
        Self::from_rows(cols, &data).expect("ragged literal matrix")
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            entries: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.entries[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<IntVec> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut entries = Vec::with_capacity(self.entries.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                entries.push(self.get(i, j).clone());
            }
        }
        IntMatrix {
            rows: self.cols,
            cols: self.rows,
            entries,
        }
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out.entries[i * other.cols + j] += a * other.get(k, j);
                }
            }
        }
        Ok(out)
    }

    /// `self * v` for a column vector `v`.
    pub fn apply(&self, v: &[BigInt]) -> Result<IntVec> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} for a matrix with {} columns",
                v.len(),
                self.cols
            )));
        }
        Ok((0..self.rows).map(|i| super::dot(self.row(i), v)).collect())
    }

    pub fn determinant(&self) -> Result<BigInt> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "determinant of a non-square {}x{} matrix",
                self.rows, self.cols
            )));
        }
        Ok(determinant(self.row_vecs()))
    }

    pub fn is_unimodular(&self) -> bool {
        self.determinant()
            .map(|d| d.abs().is_one())
            .unwrap_or(false)
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<Vec<String>> = (0..self.rows)
            .map(|i| self.row(i).iter().map(|x| x.to_string()).collect())
            .collect();
        write!(f, "IntMatrix{:?}", rows)
    }
}

fn row_axpy(rows: &mut [IntVec], target: usize, source: usize, q: &BigInt) {
    // rows[target] -= q * rows[source]
    if q.is_zero() {
        return;
    }
    let (t, s) = if target < source {
        let (a, b) = rows.split_at_mut(source);
        (&mut a[target], &b[0])
    } else {
        let (a, b) = rows.split_at_mut(target);
        (&mut b[0], &a[source])
    };
    for (x, y) in t.iter_mut().zip(s) {
        if !y.is_zero() {
            *x -= q * y;
        }
    }
}

fn negate_row(row: &mut IntVec) {
    for x in row.iter_mut() {
        *x = -&*x;
    }
}

fn identity_rows(n: usize) -> Vec<IntVec> {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { BigInt::one() } else { BigInt::zero() })
                .collect()
        })
        .collect()
}

/// Row-style Hermite normal form. Returns `(H, U)` with `U` unimodular and
/// `U * M = H`, where `H` is in row-echelon form with positive pivots and
/// entries above each pivot reduced into `[0, pivot)`. Zero rows sit at the
/// bottom.
pub fn hermite_normal_form(m: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let (h, u) = hnf_rows(m.row_vecs(), m.cols);
    let rows = m.rows;
    (
        IntMatrix::from_rows(m.cols, &h).expect("shape preserved"),
        IntMatrix::from_rows(rows, &u).expect("shape preserved"),
    )
}

pub(crate) fn hnf_rows(mut h: Vec<IntVec>, cols: usize) -> (Vec<IntVec>, Vec<IntVec>) {
    let rows = h.len();
    let mut u = identity_rows(rows);
    let mut p = 0;
    for col in 0..cols {
        if p == rows {
            break;
        }
        let mut has_pivot = false;
        loop {
            let mut best: Option<usize> = None;
            for i in p..rows {
                if !h[i][col].is_zero()
                    && best.is_none_or(|b| h[i][col].abs() < h[b][col].abs())
                {
                    best = Some(i);
                }
            }
            let Some(b) = best else { break };
            has_pivot = true;
            h.swap(p, b);
            u.swap(p, b);
            let mut clean = true;
            for i in p + 1..rows {
                if h[i][col].is_zero() {
                    continue;
                }
                let q = h[i][col].div_floor(&h[p][col]);
                row_axpy(&mut h, i, p, &q);
                row_axpy(&mut u, i, p, &q);
                if !h[i][col].is_zero() {
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        if !has_pivot {
            continue;
        }
        if h[p][col].is_negative() {
            negate_row(&mut h[p]);
            negate_row(&mut u[p]);
        }
        for i in 0..p {
            let q = h[i][col].div_floor(&h[p][col]);
            row_axpy(&mut h, i, p, &q);
            row_axpy(&mut u, i, p, &q);
        }
        p += 1;
    }
    (h, u)
}

/// Smith normal form. Returns `(U, S, V)` with `U`, `V` unimodular,
/// `U * M * V = S` diagonal and each diagonal entry dividing the next.
pub fn smith_normal_form(m: &IntMatrix) -> (IntMatrix, IntMatrix, IntMatrix) {
    let r = m.rows;
    let c = m.cols;
    let mut s = m.row_vecs();
    let mut u = identity_rows(r);
    let mut v = identity_rows(c);

    let col_axpy = |mat: &mut Vec<IntVec>, target: usize, source: usize, q: &BigInt| {
        for row in mat.iter_mut() {
            let y = row[source].clone();
            if !y.is_zero() {
                row[target] -= q * y;
            }
        }
    };

    'outer: for t in 0..r.min(c) {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..r {
                for j in t..c {
                    if !s[i][j].is_zero()
                        && best.is_none_or(|(bi, bj)| s[i][j].abs() < s[bi][bj].abs())
                    {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else { break 'outer };
            s.swap(t, bi);
            u.swap(t, bi);
            for row in s.iter_mut() {
                row.swap(t, bj);
            }
            for row in v.iter_mut() {
                row.swap(t, bj);
            }
            let mut clean = true;
            for i in t + 1..r {
                if s[i][t].is_zero() {
                    continue;
                }
                let q = s[i][t].div_floor(&s[t][t]);
                row_axpy(&mut s, i, t, &q);
                row_axpy(&mut u, i, t, &q);
                if !s[i][t].is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..c {
                if s[t][j].is_zero() {
                    continue;
                }
                let q = s[t][j].div_floor(&s[t][t]);
                col_axpy(&mut s, j, t, &q);
                col_axpy(&mut v, j, t, &q);
                if !s[t][j].is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            let pivot = s[t][t].clone();
            let offending = (t + 1..r).find(|&i| (t + 1..c).any(|j| !s[i][j].is_multiple_of(&pivot)));
            match offending {
                Some(i) => {
                    let minus_one = -BigInt::one();
                    row_axpy(&mut s, t, i, &minus_one);
                    row_axpy(&mut u, t, i, &minus_one);
                }
                None => break,
            }
        }
        if s[t][t].is_negative() {
            negate_row(&mut s[t]);
            negate_row(&mut u[t]);
        }
    }
    (
        IntMatrix::from_rows(r, &u).expect("shape"),
        IntMatrix::from_rows(c, &s).expect("shape"),
        IntMatrix::from_rows(c, &v).expect("shape"),
    )
}

/// Lattice basis of `{x in Z^cols : M x = 0}`.
pub fn integer_kernel(m: &IntMatrix) -> Vec<IntVec> {
    integer_kernel_rows(&m.row_vecs(), m.cols)
}

pub(crate) fn integer_kernel_rows(rows: &[IntVec], cols: usize) -> Vec<IntVec> {
    // Transpose, then the zero rows of the Hermite form mark kernel vectors.
    let t: Vec<IntVec> = (0..cols)
        .map(|j| rows.iter().map(|r| r[j].clone()).collect())
        .collect();
    let (h, u) = hnf_rows(t, rows.len());
    h.iter()
        .zip(u)
        .filter(|(hr, _)| hr.iter().all(Zero::is_zero))
        .map(|(_, ur)| ur)
        .collect()
}

/// Rank over the rationals, computed fraction-free.
pub fn rank(rows: &[IntVec]) -> usize {
    let Some(cols) = rows.first().map(|r| r.len()) else {
        return 0;
    };
    let mut a: Vec<IntVec> = rows.iter().filter(|r| !super::is_zero_vec(r)).cloned().collect();
    let mut r = 0;
    for col in 0..cols {
        if r == a.len() {
            break;
        }
        let Some(p) = (r..a.len()).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let piv = a[r][col].clone();
        for i in r + 1..a.len() {
            if a[i][col].is_zero() {
                continue;
            }
            let f = a[i][col].clone();
            let pivot_row = a[r].clone();
            let row = &mut a[i];
            for j in col..cols {
                row[j] = &row[j] * &piv - &f * &pivot_row[j];
            }
            let g = content(row);
            if !g.is_zero() && !g.is_one() {
                for x in row.iter_mut() {
                    *x = &*x / &g;
                }
            }
        }
        r += 1;
    }
    r
}

/// Bareiss fraction-free determinant of a square matrix given by rows.
pub(crate) fn determinant(mut a: Vec<IntVec>) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                return BigInt::zero();
            };
            a.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}
