//! Exact rank computations for sparse integer matrices.
//!
//! Matrices are given column by column as sparse `(row, value)` lists. Ranks
//! over the rationals use fraction-free elimination in `i128` with content
//! removal, switching to arbitrary precision if an intermediate overflows.
//! Prime fields use modular elimination; `F_2` uses packed bit rows.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::field::Field;

/// A sparse column: `(row index, entry)` pairs.
pub type SparseColumn = Vec<(usize, i64)>;

/// Incremental row echelon form: columns are inserted one at a time and the
/// echelon basis keeps a pivot per row index.
#[derive(Debug, Clone)]
pub struct Echelon {
    nrows: usize,
    rank: usize,
    kind: Kind,
}

#[derive(Debug, Clone)]
enum Kind {
    F2(Vec<Option<Vec<u64>>>),
    Fp(u64, Vec<Option<Vec<u64>>>),
    Q(Vec<Option<Vec<i128>>>),
    QBig(Vec<Option<Vec<BigInt>>>),
}

impl Echelon {
    #[must_use]
    pub fn new(field: Field, nrows: usize) -> Self {
        let kind = match field {
            Field::Prime(2) => Kind::F2(vec![None; nrows]),
            Field::Prime(p) => Kind::Fp(u64::from(p), vec![None; nrows]),
            Field::Rational => Kind::Q(vec![None; nrows]),
        };
        Echelon { nrows, rank: 0, kind }
    }

    #[must_use]
    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Inserts a column; returns `true` if it was independent of the previous ones.
    pub fn insert(&mut self, col: &[(usize, i64)]) -> bool {
        let independent = match &mut self.kind {
            Kind::F2(basis) => insert_f2(self.nrows, basis, col),
            Kind::Fp(p, basis) => insert_fp(self.nrows, *p, basis, col),
            Kind::Q(basis) => match insert_q(self.nrows, basis, col) {
                Some(b) => b,
                None => {
                    let mut big = promote(basis);
                    let b = insert_big(self.nrows, &mut big, col);
                    self.kind = Kind::QBig(big);
                    b
                }
            },
            Kind::QBig(basis) => insert_big(self.nrows, basis, col),
        };
        if independent {
            self.rank += 1;
        }
        independent
    }
}

fn insert_f2(nrows: usize, basis: &mut [Option<Vec<u64>>], col: &[(usize, i64)]) -> bool {
    let words = nrows.div_ceil(64).max(1);
    let mut v = vec![0u64; words];
    for &(r, x) in col {
        if x.rem_euclid(2) == 1 {
            v[r / 64] ^= 1 << (r % 64);
        }
    }
    loop {
        let Some(w) = v.iter().position(|&x| x != 0) else {
            return false;
        };
        let pivot = w * 64 + v[w].trailing_zeros() as usize;
        match &basis[pivot] {
            Some(b) => {
                for (x, y) in v.iter_mut().zip(b) {
                    *x ^= y;
                }
            }
            None => {
                basis[pivot] = Some(v);
                return true;
            }
        }
    }
}

fn inv_mod(a: u64, p: u64) -> u64 {
    let mut r = 1u64;
    let mut b = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

fn insert_fp(nrows: usize, p: u64, basis: &mut [Option<Vec<u64>>], col: &[(usize, i64)]) -> bool {
    let mut v = vec![0u64; nrows];
    for &(r, x) in col {
        v[r] = (v[r] + x.rem_euclid(p as i64) as u64) % p;
    }
    for i in 0..nrows {
        if v[i] == 0 {
            continue;
        }
        match &basis[i] {
            Some(b) => {
                let c = v[i];
                for j in i..nrows {
                    if b[j] != 0 {
                        v[j] = (v[j] + p - c * b[j] % p) % p;
                    }
                }
            }
            None => {
                let inv = inv_mod(v[i], p);
                for x in v.iter_mut().skip(i) {
                    *x = *x * inv % p;
                }
                basis[i] = Some(v);
                return true;
            }
        }
    }
    false
}

fn gcd_i128(mut a: i128, mut b: i128) -> i128 {
    a = a.abs();
    b = b.abs();
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Returns `None` on overflow.
fn insert_q(nrows: usize, basis: &mut [Option<Vec<i128>>], col: &[(usize, i64)]) -> Option<bool> {
    let mut v = vec![0i128; nrows];
    for &(r, x) in col {
        v[r] = v[r].checked_add(i128::from(x))?;
    }
    for i in 0..nrows {
        if v[i] == 0 {
            continue;
        }
        match &basis[i] {
            Some(b) => {
                let g = gcd_i128(b[i], v[i]);
                let s = b[i] / g;
                let t = v[i] / g;
                let mut content = 0i128;
                for j in i..nrows {
                    let x = v[j].checked_mul(s)?.checked_sub(b[j].checked_mul(t)?)?;
                    v[j] = x;
                    content = gcd_i128(content, x);
                }
                if content > 1 {
                    for x in v.iter_mut().skip(i) {
                        *x /= content;
                    }
                }
            }
            None => {
                if v[i] < 0 {
                    for x in v.iter_mut() {
                        *x = -*x;
                    }
                }
                basis[i] = Some(v);
                return Some(true);
            }
        }
    }
    Some(false)
}

fn promote(basis: &[Option<Vec<i128>>]) -> Vec<Option<Vec<BigInt>>> {
    basis
        .iter()
        .map(|row| row.as_ref().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()))
        .collect()
}

fn insert_big(nrows: usize, basis: &mut [Option<Vec<BigInt>>], col: &[(usize, i64)]) -> bool {
    let mut v = vec![BigInt::zero(); nrows];
    for &(r, x) in col {
        v[r] += x;
    }
    for i in 0..nrows {
        if v[i].is_zero() {
            continue;
        }
        match &basis[i] {
            Some(b) => {
                let g = b[i].gcd(&v[i]);
                let s = &b[i] / &g;
                let t = &v[i] / &g;
                let mut content = BigInt::zero();
                for j in i..nrows {
                    let x = &v[j] * &s - &b[j] * &t;
                    content = content.gcd(&x);
                    v[j] = x;
                }
                if content > BigInt::from(1) {
                    for x in v.iter_mut().skip(i) {
                        *x = &*x / &content;
                    }
                }
            }
            None => {
                if v[i].is_negative() {
                    for x in v.iter_mut() {
                        *x = -&*x;
                    }
                }
                basis[i] = Some(v);
                return true;
            }
        }
    }
    false
}

/// Rank of the matrix with the given columns.
#[must_use]
pub fn rank(field: Field, nrows: usize, cols: &[SparseColumn]) -> usize {
    let mut e = Echelon::new(field, nrows);
    for c in cols {
        e.insert(c);
        if e.rank() == nrows {
            break;
        }
    }
    e.rank()
}

/// True if the columns are linearly independent.
///
/// Over the rationals a full `F_2` rank is accepted directly, since the rank
/// over `F_2` never exceeds the rational rank.
#[must_use]
pub fn has_full_column_rank(field: Field, nrows: usize, cols: &[SparseColumn]) -> bool {
    if cols.len() > nrows {
        return false;
    }
    if field == Field::Rational && independent_over(Field::F2, nrows, cols) {
        return true;
    }
    independent_over(field, nrows, cols)
}

fn independent_over(field: Field, nrows: usize, cols: &[SparseColumn]) -> bool {
    let mut e = Echelon::new(field, nrows);
    cols.iter().all(|c| e.insert(c))
}
