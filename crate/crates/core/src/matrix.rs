//! Dense exact matrices: rank and kernel by Gaussian elimination.
//!
//! Over `F_p` elimination runs on `u64` residues. Over `Q`, rank uses
//! fraction-free integer elimination (rows are scaled to integers, and each
//! updated row is divided by its content) and kernels use reduced row echelon
//! form over `BigRational`. Pivots are always chosen in the lowest available
//! column, from the first eligible row, so results are deterministic.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::scalar::{FieldSpec, Scalar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    field: FieldSpec,
    entries: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(field: FieldSpec, rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            field,
            entries: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_rows(field: FieldSpec, rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * cols);
        for row in rows {
            if row.len() != cols {
                return Err(Error::ArityMismatch {
                    expected: cols,
                    got: row.len(),
                });
            }
            for s in row {
                if s.field() != field {
                    return Err(Error::FieldMismatch(field.to_string(), s.field().to_string()));
                }
                entries.push(s);
            }
        }
        Ok(Matrix {
            rows: n,
            cols,
            field,
            entries,
        })
    }

    pub fn from_i64_rows(field: FieldSpec, rows: &[Vec<i64>]) -> Self {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&v| field.from_i64(v)).collect())
            .collect();
        Self::from_rows(field, rows).expect("rectangular integer rows")
    }

    /// Builds a matrix from its columns.
    pub fn from_columns(field: FieldSpec, rows: usize, columns: &[Vec<Scalar>]) -> Self {
        let mut m = Self::zeros(field, rows, columns.len());
        for (c, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length");
            for (r, v) in col.iter().enumerate() {
                if !v.is_zero() {
                    m.set(r, c, v.clone());
                }
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        debug_assert_eq!(v.field(), self.field);
        self.entries[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Scalar::is_zero)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                let v = self.get(r, c);
                if !v.is_zero() {
                    t.set(c, r, v.clone());
                }
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        if v.len() != self.cols {
            return Err(Error::ArityMismatch {
                expected: self.cols,
                got: v.len(),
            });
        }
        Ok((0..self.rows)
            .map(|r| {
                let mut acc = self.field.zero();
                for (a, b) in self.row(r).iter().zip(v) {
                    if !a.is_zero() {
                        acc.add_mul(a, b);
                    }
                }
                acc
            })
            .collect())
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::ArityMismatch {
                expected: self.cols,
                got: other.rows,
            });
        }
        let mut out = Matrix::zeros(self.field, self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.get(k, c);
                    if !b.is_zero() {
                        let idx = r * out.cols + c;
                        out.entries[idx].add_mul(a, b);
                    }
                }
            }
        }
        Ok(out)
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.cols && self.rows > 0 && other.rows > 0 {
            return Err(Error::ArityMismatch {
                expected: self.cols,
                got: other.cols,
            });
        }
        let cols = if self.rows > 0 { self.cols } else { other.cols };
        let mut entries = self.entries.clone();
        entries.extend_from_slice(&other.entries);
        Ok(Matrix {
            rows: self.rows + other.rows,
            cols,
            field: self.field,
            entries,
        })
    }

    pub fn rank(&self) -> usize {
        if self.rows == 0 || self.cols == 0 {
            return 0;
        }
        match self.field {
            FieldSpec::Prime(p) => {
                let mut rows = self.residue_rows(p);
                echelon_mod_p(&mut rows, self.cols, p as u64, false).len()
            }
            FieldSpec::Rationals => rank_fraction_free(self.integer_rows(), self.cols),
        }
    }

    /// Inverse of a square matrix, or `None` if it is singular.
    pub fn inverse(&self) -> Option<Matrix> {
        let n = self.rows;
        if n != self.cols {
            return None;
        }
        if n == 0 {
            return Some(self.clone());
        }
        let mut aug = Matrix::zeros(self.field, n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug.set(r, c, self.get(r, c).clone());
            }
            aug.set(r, n + r, self.field.one());
        }
        let (reduced, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] >= n {
            return None;
        }
        let mut inv = Matrix::zeros(self.field, n, n);
        for r in 0..n {
            for c in 0..n {
                inv.set(r, c, reduced.get(r, n + c).clone());
            }
        }
        Some(inv)
    }

    /// Basis of `{v : M v = 0}`, one vector per free column of the RREF,
    /// with a 1 in that column and 0 in every other free column.
    pub fn kernel_basis(&self) -> Vec<Vec<Scalar>> {
        let (reduced, pivots) = self.rref_rows();
        kernel_from_rref(self.field, &reduced, &pivots, self.cols)
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let (rows, pivots) = self.rref_rows();
        let mut out = Matrix::zeros(self.field, self.rows, self.cols);
        for (r, row) in rows.into_iter().enumerate() {
            for (c, v) in row.into_iter().enumerate() {
                if !v.is_zero() {
                    out.set(r, c, v);
                }
            }
        }
        (out, pivots)
    }

    fn rref_rows(&self) -> (Vec<Vec<Scalar>>, Vec<usize>) {
        match self.field {
            FieldSpec::Prime(p) => {
                let mut rows = self.residue_rows(p);
                let pivots = echelon_mod_p(&mut rows, self.cols, p as u64, true);
                let rows = rows
                    .into_iter()
                    .map(|r| r.into_iter().map(|v| self.field.from_i64(v as i64)).collect())
                    .collect();
                (rows, pivots)
            }
            FieldSpec::Rationals => {
                let mut rows: Vec<Vec<BigRational>> = (0..self.rows)
                    .map(|r| {
                        self.row(r)
                            .iter()
                            .map(|s| s.to_rational().expect("rational entry"))
                            .collect()
                    })
                    .collect();
                let pivots = rref_rational(&mut rows, self.cols);
                let rows = rows
                    .into_iter()
                    .map(|r| r.into_iter().map(Scalar::from_rational).collect())
                    .collect();
                (rows, pivots)
            }
        }
    }

    fn residue_rows(&self, p: u32) -> Vec<Vec<u64>> {
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .map(|s| match s {
                        Scalar::Residue { value, modulus } if *modulus == p => *value as u64,
                        other => panic!("entry {other} not in F_{p}"),
                    })
                    .collect()
            })
            .collect()
    }

    fn integer_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows)
            .map(|r| {
                let row: Vec<BigRational> = self.row(r).iter().map(|s| s.to_rational().expect("rational entry")).collect();
                let lcm = row.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
                row.iter().map(|q| q.numer() * (&lcm / q.denom())).collect()
            })
            .collect()
    }
}

fn inv_mod(a: u64, p: u64) -> u64 {
    let (mut base, mut exp, mut acc) = (a % p, p - 2, 1u64);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

/// Row echelon form in place over `F_p`; returns pivot columns. With
/// `reduced`, pivots are normalized to 1 and cleared above as well.
fn echelon_mod_p(rows: &mut [Vec<u64>], cols: usize, p: u64, reduced: bool) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        let Some(i) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(i, r);
        if reduced {
            let inv = inv_mod(rows[r][c], p);
            for v in rows[r][c..].iter_mut() {
                *v = *v * inv % p;
            }
        }
        let support: Vec<usize> = (c..cols).filter(|&j| rows[r][j] != 0).collect();
        let pivot_row = rows[r].clone();
        let pivot_inv = inv_mod(pivot_row[c], p);
        let start = if reduced { 0 } else { r + 1 };
        for (i, row) in rows.iter_mut().enumerate().skip(start) {
            if i == r || row[c] == 0 {
                continue;
            }
            let factor = row[c] * pivot_inv % p;
            for &j in &support {
                row[j] = (row[j] + p - factor * pivot_row[j] % p) % p;
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

fn content(row: &[BigInt]) -> BigInt {
    row.iter().fold(BigInt::zero(), |g, v| if v.is_zero() { g } else { g.gcd(v) })
}

/// Forward elimination over the integers with per-row content division.
fn rank_fraction_free(mut rows: Vec<Vec<BigInt>>, cols: usize) -> usize {
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        let Some(i) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(i, r);
        let (head, tail) = rows.split_at_mut(r + 1);
        let pivot_row = &head[r];
        let support: Vec<usize> = (c..cols).filter(|&j| !pivot_row[j].is_zero()).collect();
        let a = &pivot_row[c];
        for row in tail.iter_mut() {
            if row[c].is_zero() {
                continue;
            }
            let g = a.gcd(&row[c]);
            let mul_self = a / &g;
            let mul_pivot = &row[c] / &g;
            if !mul_self.is_one() {
                for v in row.iter_mut().skip(c) {
                    if !v.is_zero() {
                        *v *= &mul_self;
                    }
                }
            }
            for &j in &support {
                row[j] -= &mul_pivot * &pivot_row[j];
            }
            let g = content(row);
            if !g.is_zero() && !g.abs().is_one() {
                for v in row.iter_mut() {
                    if !v.is_zero() {
                        *v = &*v / &g;
                    }
                }
            }
        }
        r += 1;
    }
    r
}

fn rref_rational(rows: &mut [Vec<BigRational>], cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        let Some(i) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(i, r);
        let inv = rows[r][c].recip();
        for v in rows[r][c..].iter_mut() {
            if !v.is_zero() {
                *v *= &inv;
            }
        }
        let support: Vec<usize> = (c..cols).filter(|&j| !rows[r][j].is_zero()).collect();
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let factor = row[c].clone();
            for &j in &support {
                row[j] -= &factor * &pivot_row[j];
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

fn kernel_from_rref(
    field: FieldSpec,
    reduced: &[Vec<Scalar>],
    pivots: &[usize],
    cols: usize,
) -> Vec<Vec<Scalar>> {
    let mut is_pivot = vec![false; cols];
    for &c in pivots {
        is_pivot[c] = true;
    }
    (0..cols)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut v = vec![field.zero(); cols];
            v[f] = field.one();
            for (r, &pc) in pivots.iter().enumerate() {
                let entry = &reduced[r][f];
                if !entry.is_zero() {
                    v[pc] = -entry;
                }
            }
            v
        })
        .collect()
}

/// Free columns of a kernel basis produced by [`Matrix::kernel_basis`]:
/// coordinates of a kernel vector in that basis are its entries there.
pub fn free_columns(matrix: &Matrix) -> Vec<usize> {
    let (_, pivots) = matrix.rref();
    let mut is_pivot = vec![false; matrix.cols()];
    for c in pivots {
        is_pivot[c] = true;
    }
    (0..matrix.cols()).filter(|&c| !is_pivot[c]).collect()
}

/// A growing echelon basis: reduces incoming vectors against what it holds.
#[derive(Clone, Debug)]
pub struct EchelonBasis {
    field: FieldSpec,
    rows: Vec<(usize, Vec<Scalar>)>,
}

impl EchelonBasis {
    pub fn new(field: FieldSpec) -> Self {
        EchelonBasis {
            field,
            rows: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the basis; returns the remainder.
    pub fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        let mut v = v.to_vec();
        for (pc, row) in &self.rows {
            if v[*pc].is_zero() {
                continue;
            }
            let factor = v[*pc].clone();
            for (x, y) in v.iter_mut().zip(row) {
                if !y.is_zero() {
                    *x -= &(&factor * y);
                }
            }
        }
        v
    }

    /// Adds `v` if it is independent; returns the nonzero remainder in that case.
    pub fn insert(&mut self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        let rem = self.reduce(v);
        let pc = rem.iter().position(|s| !s.is_zero())?;
        let inv = rem[pc].try_inv().expect("nonzero pivot");
        let normalized: Vec<Scalar> = rem.iter().map(|s| s * &inv).collect();
        // keep existing rows reduced in the new pivot column
        for (_, row) in self.rows.iter_mut() {
            if row[pc].is_zero() {
                continue;
            }
            let factor = row[pc].clone();
            for (x, y) in row.iter_mut().zip(&normalized) {
                if !y.is_zero() {
                    *x -= &(&factor * y);
                }
            }
        }
        self.rows.push((pc, normalized));
        Some(rem)
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.reduce(v).iter().all(Scalar::is_zero)
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }
}
