//! Dense linear algebra over prime fields.
//!
//! Everything downstream (tensor quotients, hom spaces, endomorphism rings)
//! reduces to row reduction over `F_p`, so this module keeps a small,
//! deterministic kernel: pivots are always chosen as the first nonzero entry
//! in column order, which makes every derived basis reproducible.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// The prime field `F_p`, carried by value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    /// Largest modulus accepted; keeps every product inside a `u64`.
    pub const MAX_MODULUS: u32 = 1 << 16;

    pub fn new(p: u32) -> Result<Self> {
        if !(2..=Self::MAX_MODULUS).contains(&p) || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(PrimeField { p })
    }

    pub fn p(self) -> u32 {
        self.p
    }

    #[inline]
    pub fn add(self, a: u32, b: u32) -> u32 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn mul(self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    #[inline]
    pub fn neg(self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    /// Multiplicative inverse by Fermat; `None` for zero.
    pub fn inv(self, a: u32) -> Option<u32> {
        if a.is_multiple_of(self.p) {
            return None;
        }
        Some(self.pow(a, self.p - 2))
    }

    pub fn pow(self, mut base: u32, mut exp: u32) -> u32 {
        let mut acc = 1 % self.p;
        base %= self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Reduce an arbitrary integer into `0..p`.
    pub fn reduce(self, a: i64) -> u32 {
        a.rem_euclid(self.p as i64) as u32
    }

    /// Smallest generator of the multiplicative group.
    pub fn primitive_root(self) -> u32 {
        if self.p == 2 {
            return 1;
        }
        let order = self.p - 1;
        let factors = prime_factors(order);
        (2..self.p)
            .find(|&g| factors.iter().all(|&q| self.pow(g, order / q) != 1))
            .expect("every prime field has a primitive root")
    }
}

impl fmt::Display for PrimeField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.p)
    }
}

impl Serialize for PrimeField {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_u32(self.p)
    }
}

fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_factors(mut n: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Dense row-major matrix over a prime field.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ExactMatrix {
    field: PrimeField,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

/// Output of [`ExactMatrix::rref`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub reduced: ExactMatrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

impl ExactMatrix {
    pub fn zeros(field: PrimeField, rows: usize, cols: usize) -> Self {
        ExactMatrix {
            field,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(field: PrimeField, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1 % field.p();
        }
        m
    }

    /// Builds a matrix from rows of residues. Entries are reduced mod `p`;
    /// ragged input is rejected.
    pub fn from_rows<R: AsRef<[u32]>>(field: PrimeField, rows: &[R]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        Self::from_rows_with_cols(field, rows, cols)
    }

    /// Like [`from_rows`](Self::from_rows) but with an explicit column count,
    /// so that `0 × n` matrices are expressible.
    pub fn from_rows_with_cols<R: AsRef<[u32]>>(
        field: PrimeField,
        rows: &[R],
        cols: usize,
    ) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for row in rows {
            let row = row.as_ref();
            if row.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: (rows.len(), cols),
                    found: (rows.len(), row.len()),
                });
            }
            data.extend(row.iter().map(|&e| e % field.p()));
        }
        Ok(ExactMatrix {
            field,
            rows: rows.len(),
            cols,
            data,
        })
    }

    pub fn from_fn(
        field: PrimeField,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> u32,
    ) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j) % field.p());
            }
        }
        ExactMatrix {
            field,
            rows,
            cols,
            data,
        }
    }

    /// Matrix whose columns are the given vectors, all of length `rows`.
    pub fn from_columns(field: PrimeField, rows: usize, columns: &[Vec<u32>]) -> Self {
        Self::from_fn(field, rows, columns.len(), |i, j| columns[j][i])
    }

    pub fn column_vector(field: PrimeField, v: &[u32]) -> Self {
        Self::from_fn(field, v.len(), 1, |i, _| v[i])
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: u32) {
        self.data[i * self.cols + j] = value % self.field.p();
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<u32> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    /// Row-major entries.
    pub fn entries(&self) -> &[u32] {
        &self.data
    }

    pub fn to_rows(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&e| e == 0)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows)
                .all(|i| (0..self.cols).all(|j| self.get(i, j) == u32::from(i == j)))
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.field, self.cols, self.rows, |i, j| self.get(j, i))
    }

    /// Matrix product.
    ///
    /// # Panics
    ///
    /// Panics if the inner dimensions differ or the fields differ.
    pub fn mul(&self, other: &ExactMatrix) -> ExactMatrix {
        self.try_mul(other).expect("matrix product shape mismatch")
    }

    pub fn try_mul(&self, other: &ExactMatrix) -> Result<ExactMatrix> {
        if self.cols != other.rows || self.field != other.field {
            return Err(Error::DimensionMismatch {
                expected: (self.cols, other.cols),
                found: other.shape(),
            });
        }
        let p = self.field.p() as u64;
        let mut out = vec![0u32; self.rows * other.cols];
        let mut acc = vec![0u64; other.cols];
        for i in 0..self.rows {
            acc.iter_mut().for_each(|a| *a = 0);
            for k in 0..self.cols {
                let a = self.get(i, k) as u64;
                if a == 0 {
                    continue;
                }
                let orow = other.row(k);
                for (slot, &b) in acc.iter_mut().zip(orow) {
                    *slot = (*slot + a * b as u64) % p;
                }
            }
            for (j, &v) in acc.iter().enumerate() {
                out[i * other.cols + j] = v as u32;
            }
        }
        Ok(ExactMatrix {
            field: self.field,
            rows: self.rows,
            cols: other.cols,
            data: out,
        })
    }

    pub fn mul_vec(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        let p = self.field.p() as u64;
        (0..self.rows)
            .map(|i| {
                let s = self
                    .row(i)
                    .iter()
                    .zip(v)
                    .fold(0u64, |acc, (&a, &b)| (acc + a as u64 * b as u64) % p);
                s as u32
            })
            .collect()
    }

    pub fn add(&self, other: &ExactMatrix) -> ExactMatrix {
        assert_eq!(self.shape(), other.shape(), "matrix sum shape mismatch");
        let f = self.field;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| f.add(a, b))
            .collect();
        self.with_data(data)
    }

    pub fn sub(&self, other: &ExactMatrix) -> ExactMatrix {
        assert_eq!(self.shape(), other.shape(), "matrix difference shape mismatch");
        let f = self.field;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| f.sub(a, b))
            .collect();
        self.with_data(data)
    }

    pub fn scale(&self, c: u32) -> ExactMatrix {
        let f = self.field;
        let data = self.data.iter().map(|&a| f.mul(a, c % f.p())).collect();
        self.with_data(data)
    }

    /// `self += c * other`, in place.
    pub fn add_scaled(&mut self, c: u32, other: &ExactMatrix) {
        assert_eq!(self.shape(), other.shape(), "matrix sum shape mismatch");
        let f = self.field;
        if c.is_multiple_of(f.p()) {
            return;
        }
        for (a, &b) in self.data.iter_mut().zip(&other.data) {
            *a = f.add(*a, f.mul(b, c));
        }
    }

    fn with_data(&self, data: Vec<u32>) -> ExactMatrix {
        ExactMatrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    /// Columns appended side by side. Row counts must agree.
    pub fn hstack(&self, other: &ExactMatrix) -> ExactMatrix {
        assert_eq!(self.rows, other.rows, "hstack row mismatch");
        Self::from_fn(self.field, self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self.get(i, j)
            } else {
                other.get(i, j - self.cols)
            }
        })
    }

    /// Rows appended below. Column counts must agree.
    pub fn vstack(&self, other: &ExactMatrix) -> ExactMatrix {
        assert_eq!(self.cols, other.cols, "vstack column mismatch");
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        ExactMatrix {
            field: self.field,
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    /// Stack many blocks vertically; all must share the column count `cols`.
    pub fn vstack_all(field: PrimeField, cols: usize, blocks: &[ExactMatrix]) -> ExactMatrix {
        let mut data = Vec::new();
        let mut rows = 0;
        for b in blocks {
            assert_eq!(b.cols, cols, "vstack column mismatch");
            data.extend_from_slice(&b.data);
            rows += b.rows;
        }
        ExactMatrix {
            field,
            rows,
            cols,
            data,
        }
    }

    /// Columns `cols` of `self`, in the given order.
    pub fn select_columns(&self, cols: &[usize]) -> ExactMatrix {
        Self::from_fn(self.field, self.rows, cols.len(), |i, j| self.get(i, cols[j]))
    }

    /// Kronecker product; index `(i, k)` of the result row space is
    /// `i * b.rows + k`.
    pub fn kron(&self, b: &ExactMatrix) -> ExactMatrix {
        let f = self.field;
        let rows = self.rows * b.rows;
        let cols = self.cols * b.cols;
        let mut out = Self::zeros(f, rows, cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a == 0 {
                    continue;
                }
                for k in 0..b.rows {
                    for l in 0..b.cols {
                        out.data[(i * b.rows + k) * cols + j * b.cols + l] = f.mul(a, b.get(k, l));
                    }
                }
            }
        }
        out
    }

    /// Reduced row-echelon form with deterministic pivoting.
    pub fn rref(&self) -> Rref {
        let f = self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| m.get(i, c) != 0) else {
                continue;
            };
            m.swap_rows(r, pr);
            let inv = f.inv(m.get(r, c)).expect("nonzero pivot");
            for j in c..m.cols {
                let v = f.mul(m.get(r, j), inv);
                m.data[r * m.cols + j] = v;
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let factor = m.get(i, c);
                if factor == 0 {
                    continue;
                }
                for j in c..m.cols {
                    let v = f.sub(m.get(i, j), f.mul(factor, m.get(r, j)));
                    m.data[i * m.cols + j] = v;
                }
            }
            pivots.push(c);
            r += 1;
        }
        Rref {
            reduced: m,
            rank: pivots.len(),
            pivots,
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Columns form a basis of the right null space `{x : self * x = 0}`.
    ///
    /// The basis vector attached to free column `f` has a 1 at `f` and zeros
    /// at every other free column.
    pub fn kernel_basis(&self) -> ExactMatrix {
        let f = self.field;
        let Rref { reduced, pivots, .. } = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut k = Self::zeros(f, self.cols, free.len());
        for (j, &fc) in free.iter().enumerate() {
            k.set(fc, j, 1);
            for (r, &pc) in pivots.iter().enumerate() {
                k.set(pc, j, f.neg(reduced.get(r, fc)));
            }
        }
        k
    }

    /// Some `x` with `self * x = b`, or `None` when `b` is outside the
    /// column space.
    pub fn solve(&self, b: &[u32]) -> Result<Option<Vec<u32>>> {
        if b.len() != self.rows {
            return Err(Error::DimensionMismatch {
                expected: (self.rows, 1),
                found: (b.len(), 1),
            });
        }
        let aug = self.hstack(&ExactMatrix::column_vector(self.field, b));
        let Rref { reduced, pivots, .. } = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![0; self.cols];
        for (r, &pc) in pivots.iter().enumerate() {
            x[pc] = reduced.get(r, self.cols);
        }
        Ok(Some(x))
    }

    /// Solves `self * X = B` column by column; `None` if any column fails.
    pub fn solve_matrix(&self, b: &ExactMatrix) -> Result<Option<ExactMatrix>> {
        if b.rows != self.rows {
            return Err(Error::DimensionMismatch {
                expected: (self.rows, b.cols),
                found: b.shape(),
            });
        }
        let aug = self.hstack(b);
        let Rref { reduced, pivots, .. } = aug.rref();
        if pivots.iter().any(|&c| c >= self.cols) {
            return Ok(None);
        }
        let mut x = Self::zeros(self.field, self.cols, b.cols);
        for (r, &pc) in pivots.iter().enumerate() {
            for j in 0..b.cols {
                x.set(pc, j, reduced.get(r, self.cols + j));
            }
        }
        Ok(Some(x))
    }

    pub fn inverse(&self) -> Option<ExactMatrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let aug = self.hstack(&Self::identity(self.field, n));
        let Rref { reduced, pivots, .. } = aug.rref();
        // full rank on the left block means the first n pivots are 0..n
        if pivots.len() < n || pivots[..n].iter().any(|&c| c >= n) {
            return None;
        }
        Some(Self::from_fn(self.field, n, n, |i, j| reduced.get(i, n + j)))
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ExactMatrix<{}>{:?}", self.field, self.to_rows())
    }
}

impl Serialize for ExactMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_rows().serialize(serializer)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u32) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    fn m(p: u32, rows: &[&[u32]]) -> ExactMatrix {
        ExactMatrix::from_rows(f(p), rows).unwrap()
    }

    #[test]
    fn prime_check() {
        assert!(PrimeField::new(2).is_ok());
        assert!(PrimeField::new(97).is_ok());
        assert_eq!(PrimeField::new(4), Err(Error::NotPrime(4)));
        assert_eq!(PrimeField::new(1), Err(Error::NotPrime(1)));
        assert_eq!(f(7).primitive_root(), 3);
        assert_eq!(f(5).inv(2), Some(3));
        assert_eq!(f(5).inv(0), None);
    }

    #[test]
    fn rref_examples() {
        let id = ExactMatrix::identity(f(2), 2);
        let r = id.rref();
        assert_eq!(r.reduced, id);
        assert_eq!(r.rank, 2);
        assert_eq!(r.pivots, vec![0, 1]);

        let dup = m(2, &[&[1, 1], &[1, 1]]);
        let r = dup.rref();
        assert_eq!(r.reduced, m(2, &[&[1, 1], &[0, 0]]));
        assert_eq!(r.rank, 1);

        // det = 2*3 - 4*1 = 2, nonzero mod 5
        assert_eq!(m(5, &[&[2, 4], &[1, 3]]).rref().rank, 2);
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(ExactMatrix::identity(f(3), 3).kernel_basis().cols(), 0);
        let z = ExactMatrix::zeros(f(2), 2, 3);
        assert_eq!(z.kernel_basis().cols(), 3);

        let k = m(2, &[&[1, 1]]).kernel_basis();
        assert_eq!(k.shape(), (2, 1));
        assert_eq!(k.column(0), vec![1, 1]);
    }

    #[test]
    fn solve_examples() {
        let id = ExactMatrix::identity(f(5), 3);
        assert_eq!(id.solve(&[4, 0, 2]).unwrap(), Some(vec![4, 0, 2]));

        let dup = m(2, &[&[1, 1], &[1, 1]]);
        assert_eq!(dup.solve(&[1, 0]).unwrap(), None);

        let proj = m(2, &[&[1, 0], &[0, 0]]);
        let x = proj.solve(&[1, 0]).unwrap().unwrap();
        assert_eq!(x[0], 1);

        assert!(matches!(
            id.solve(&[1, 2]),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn kron_examples() {
        let i2 = ExactMatrix::identity(f(3), 2);
        let i3 = ExactMatrix::identity(f(3), 3);
        assert_eq!(i2.kron(&i3), ExactMatrix::identity(f(3), 6));

        let b = m(3, &[&[1, 2, 0], &[0, 1, 2]]);
        assert_eq!(m(3, &[&[1]]).kron(&b), b);

        let a = ExactMatrix::zeros(f(3), 2, 2);
        assert_eq!(a.kron(&ExactMatrix::zeros(f(3), 3, 3)).shape(), (6, 6));
    }

    #[test]
    fn inverse_round_trip() {
        let a = m(5, &[&[2, 4], &[1, 3]]);
        let inv = a.inverse().unwrap();
        assert!(a.mul(&inv).is_identity());
        assert!(m(2, &[&[1, 1], &[1, 1]]).inverse().is_none());
        assert!(ExactMatrix::identity(f(2), 0).inverse().unwrap().is_identity());
    }

    #[test]
    fn empty_shapes() {
        let e = ExactMatrix::from_rows_with_cols::<Vec<u32>>(f(2), &[], 3).unwrap();
        assert_eq!(e.shape(), (0, 3));
        assert_eq!(e.kernel_basis().cols(), 3);
        assert_eq!(e.solve(&[]).unwrap(), Some(vec![0, 0, 0]));
    }
}
