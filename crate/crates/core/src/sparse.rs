//! Sparse exact matrices, for ranks of differentials too large to store
//! densely.
//!
//! Rank splits the matrix into connected components of its row/column
//! incidence graph (boundary matrices of group rings fall apart along
//! conjugacy classes) and eliminates each component on its shorter side.

use std::collections::HashMap;

use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::matrix::Matrix;
use crate::par;
use crate::scalar::{FieldSpec, Scalar};

/// Column-major sparse matrix; each column is sorted by row with no zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    columns: Vec<Vec<(usize, Scalar)>>,
}

impl SparseMatrix {
    /// Builds from column entry lists; repeated rows are summed.
    pub fn from_columns(field: FieldSpec, rows: usize, columns: Vec<Vec<(usize, Scalar)>>) -> Self {
        let columns: Vec<Vec<(usize, Scalar)>> = columns
            .into_iter()
            .map(|mut col| {
                col.sort_by_key(|(r, _)| *r);
                let mut out: Vec<(usize, Scalar)> = Vec::with_capacity(col.len());
                for (r, v) in col {
                    assert!(r < rows, "row {r} out of range for {rows} rows");
                    match out.last_mut() {
                        Some((last, acc)) if *last == r => *acc += &v,
                        _ => out.push((r, v)),
                    }
                }
                out.retain(|(_, v)| !v.is_zero());
                out
            })
            .collect();
        SparseMatrix {
            field,
            rows,
            cols: columns.len(),
            columns,
        }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(Vec::len).sum()
    }

    pub fn column(&self, j: usize) -> &[(usize, Scalar)] {
        &self.columns[j]
    }

    pub fn to_dense(&self) -> Matrix {
        let mut m = Matrix::zeros(self.field, self.rows, self.cols);
        for (j, col) in self.columns.iter().enumerate() {
            for (r, v) in col {
                m.set(*r, j, v.clone());
            }
        }
        m
    }

    /// Column index sets of the connected components, in order of their
    /// smallest column. Empty columns are dropped.
    fn components(&self) -> Vec<Vec<usize>> {
        let mut parent: Vec<usize> = (0..self.cols + self.rows).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for (j, col) in self.columns.iter().enumerate() {
            for (r, _) in col {
                let (a, b) = (find(&mut parent, j), find(&mut parent, self.cols + r));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
        let mut groups: HashMap<usize, usize> = HashMap::new();
        let mut out: Vec<Vec<usize>> = Vec::new();
        for j in 0..self.cols {
            if self.columns[j].is_empty() {
                continue;
            }
            let root = find(&mut parent, j);
            let k = *groups.entry(root).or_insert_with(|| {
                out.push(Vec::new());
                out.len() - 1
            });
            out[k].push(j);
        }
        out
    }

    /// Exact rank.
    pub fn rank(&self) -> usize {
        let comps = self.components();
        let ranks = par::map_slice(&comps, |cols| self.component_rank(cols));
        ranks.into_iter().sum()
    }

    fn component_rank(&self, cols: &[usize]) -> usize {
        let mut row_ids: Vec<usize> = cols.iter().flat_map(|&j| self.columns[j].iter().map(|(r, _)| *r)).collect();
        row_ids.sort_unstable();
        row_ids.dedup();
        // eliminate whichever side has fewer vectors
        let vectors: Vec<Vec<(usize, &Scalar)>> = if row_ids.len() < cols.len() {
            let local: HashMap<usize, usize> = row_ids.iter().enumerate().map(|(i, &r)| (r, i)).collect();
            let mut rows: Vec<Vec<(usize, &Scalar)>> = vec![Vec::new(); row_ids.len()];
            for (k, &j) in cols.iter().enumerate() {
                for (r, v) in &self.columns[j] {
                    rows[local[r]].push((k, v));
                }
            }
            rows
        } else {
            cols.iter()
                .map(|&j| self.columns[j].iter().map(|(r, v)| (*r, v)).collect())
                .collect()
        };
        match self.field {
            FieldSpec::Prime(p) => {
                let a = ModP(p as u64);
                echelon_rank(
                    &a,
                    vectors
                        .into_iter()
                        .map(|v| v.into_iter().map(|(i, s)| (i, residue(s))).collect())
                        .collect(),
                )
            }
            FieldSpec::Rationals => {
                let small: Option<Vec<Vec<(usize, i64)>>> = vectors
                    .iter()
                    .map(|v| v.iter().map(|(i, s)| s.to_i64().map(|x| (*i, x))).collect())
                    .collect();
                if let Some(rank) = small.and_then(integer_rank) {
                    return rank;
                }
                echelon_rank(
                    &Rat,
                    vectors
                        .into_iter()
                        .map(|v| {
                            v.into_iter()
                                .map(|(i, s)| (i, s.to_rational().expect("rational entry")))
                                .collect()
                        })
                        .collect(),
                )
            }
        }
    }
}

fn residue(s: &Scalar) -> u64 {
    match s {
        Scalar::Residue { value, .. } => *value as u64,
        other => panic!("entry {other} is not a residue"),
    }
}

trait Arith {
    type T: Clone;
    fn mul(&self, a: &Self::T, b: &Self::T) -> Self::T;
    fn sub(&self, a: &Self::T, b: &Self::T) -> Self::T;
    fn neg(&self, a: &Self::T) -> Self::T;
    fn inv(&self, a: &Self::T) -> Self::T;
    fn is_zero(&self, a: &Self::T) -> bool;
    fn is_one(&self, a: &Self::T) -> bool;
}

struct ModP(u64);

impl Arith for ModP {
    type T = u64;
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.0
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        (a + self.0 - b) % self.0
    }
    fn neg(&self, a: &u64) -> u64 {
        (self.0 - a) % self.0
    }
    fn inv(&self, a: &u64) -> u64 {
        // Fermat
        let (mut base, mut e, mut acc) = (*a, self.0 - 2, 1);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % self.0;
            }
            base = base * base % self.0;
            e >>= 1;
        }
        acc
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn is_one(&self, a: &u64) -> bool {
        *a == 1
    }
}

struct Rat;

impl Arith for Rat {
    type T = BigRational;
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> BigRational {
        a.recip()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn is_one(&self, a: &BigRational) -> bool {
        a.is_one()
    }
}

/// `v - c * p`, where `p` has leading entry 1 at `v`'s leading index.
fn sub_scaled<A: Arith>(a: &A, v: &[(usize, A::T)], c: &A::T, p: &[(usize, A::T)]) -> Vec<(usize, A::T)> {
    let mut out = Vec::with_capacity(v.len() + p.len());
    let (mut i, mut j) = (1, 1);
    while i < v.len() || j < p.len() {
        let vi = v.get(i).map_or(usize::MAX, |e| e.0);
        let pj = p.get(j).map_or(usize::MAX, |e| e.0);
        if vi < pj {
            out.push(v[i].clone());
            i += 1;
        } else if pj < vi {
            out.push((pj, a.neg(&a.mul(c, &p[j].1))));
            j += 1;
        } else {
            let x = a.sub(&v[i].1, &a.mul(c, &p[j].1));
            if !a.is_zero(&x) {
                out.push((vi, x));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Rank of a set of sparse vectors (each sorted by index) by incremental
/// echelon reduction on leading indices. Shorter vectors go first.
fn echelon_rank<A: Arith>(a: &A, mut vectors: Vec<Vec<(usize, A::T)>>) -> usize {
    vectors.sort_by_key(Vec::len);
    let mut pivots: HashMap<usize, Vec<(usize, A::T)>> = HashMap::new();
    for mut v in vectors {
        while let Some((lead, c)) = v.first().cloned() {
            match pivots.get(&lead) {
                Some(p) => v = sub_scaled(a, &v, &c, p),
                None => {
                    if !a.is_one(&c) {
                        let ci = a.inv(&c);
                        for e in v.iter_mut() {
                            e.1 = a.mul(&e.1, &ci);
                        }
                    }
                    pivots.insert(lead, v);
                    break;
                }
            }
        }
    }
    pivots.len()
}

/// Rank over Q of integer vectors by fraction-free elimination in `i64`:
/// `v <- a v - b p` with `a`, `b` the leading entries, then divide by the
/// content. `None` on overflow.
fn integer_rank(mut vectors: Vec<Vec<(usize, i64)>>) -> Option<usize> {
    vectors.sort_by_key(Vec::len);
    let mut pivots: HashMap<usize, Vec<(usize, i64)>> = HashMap::new();
    for mut v in vectors {
        while let Some(&(lead, b)) = v.first() {
            let Some(p) = pivots.get(&lead) else {
                pivots.insert(lead, v);
                break;
            };
            let a = p[0].1;
            let g = a.gcd(&b);
            let (a, b) = (a / g, b / g);
            let mut out = Vec::with_capacity(v.len() + p.len());
            let (mut i, mut j) = (1, 1);
            while i < v.len() || j < p.len() {
                let vi = v.get(i).map_or(usize::MAX, |e| e.0);
                let pj = p.get(j).map_or(usize::MAX, |e| e.0);
                let (idx, x) = if vi < pj {
                    i += 1;
                    (vi, a.checked_mul(v[i - 1].1)?)
                } else if pj < vi {
                    j += 1;
                    (pj, b.checked_mul(p[j - 1].1)?.checked_neg()?)
                } else {
                    i += 1;
                    j += 1;
                    (vi, a.checked_mul(v[i - 1].1)?.checked_sub(b.checked_mul(p[j - 1].1)?)?)
                };
                if x != 0 {
                    out.push((idx, x));
                }
            }
            let content = out.iter().fold(0i64, |acc, e| acc.gcd(&e.1));
            if content > 1 {
                for e in out.iter_mut() {
                    e.1 /= content;
                }
            }
            v = out;
        }
    }
    Some(pivots.len())
}
