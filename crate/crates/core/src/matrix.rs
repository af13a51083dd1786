//! Dense matrices over an exact [`Field`].
//!
//! Vectorization is column-major throughout (`vec(M)` stacks columns), so
//! `vec(A·M·B) = (Bᵀ ⊗ A)·vec(M)`. Every basis this crate returns is the
//! reduced row echelon form of the spanning vectors in these coordinates,
//! which makes outputs deterministic.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    entries: Vec<Scalar>,
}

impl Matrix {
    /// Builds a matrix from row-major entries.
    pub fn new(field: &Field, rows: usize, cols: usize, entries: Vec<Scalar>) -> Result<Self> {
        if rows * cols != entries.len() {
            return Err(Error::dims(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                entries.len()
            )));
        }
        for e in &entries {
            field.ensure_contains(e)?;
        }
        Ok(Matrix {
            field: field.clone(),
            rows,
            cols,
            entries,
        })
    }

    pub fn from_rows(field: &Field, rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::dims("ragged rows"));
        }
        Matrix::new(field, r, c, rows.into_iter().flatten().collect())
    }

    /// Integer literal matrix; panics on ragged input.
    pub fn from_ints<R: AsRef<[i64]>>(field: &Field, rows: &[R]) -> Self {
        let rows = rows
            .iter()
            .map(|r| r.as_ref().iter().map(|&v| field.from_int(v)).collect())
            .collect();
        Matrix::from_rows(field, rows).expect("rectangular integer matrix")
    }

    pub fn zeros(field: &Field, rows: usize, cols: usize) -> Self {
        Matrix {
            field: field.clone(),
            rows,
            cols,
            entries: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: &Field, n: usize) -> Self {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.entries[i * n + i] = field.one();
        }
        m
    }

    /// Matrix unit E_ij (zero-based indices).
    pub fn unit(field: &Field, n: usize, i: usize, j: usize) -> Self {
        let mut m = Matrix::zeros(field, n, n);
        m.set(i, j, field.one());
        m
    }

    /// The nilpotent shift: ones on the superdiagonal.
    pub fn shift(field: &Field, n: usize) -> Self {
        let mut m = Matrix::zeros(field, n, n);
        for i in 1..n {
            m.set(i - 1, i, field.one());
        }
        m
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Scalar) {
        debug_assert!(self.field.contains(&value));
        self.entries[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| self.field.is_zero(e))
    }

    pub(crate) fn require_square(&self, what: &str) -> Result<usize> {
        if self.is_square() {
            Ok(self.rows)
        } else {
            Err(Error::dims(format!(
                "{what} must be square, got {}x{}",
                self.rows, self.cols
            )))
        }
    }

    fn same_field(&self, other: &Matrix) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch {
                left: self.field.to_string(),
                right: other.field.to_string(),
            })
        }
    }

    fn same_shape(&self, other: &Matrix) -> Result<()> {
        self.same_field(other)?;
        if (self.rows, self.cols) == (other.rows, other.cols) {
            Ok(())
        } else {
            Err(Error::dims(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )))
        }
    }

    pub fn checked_add(&self, other: &Matrix) -> Result<Matrix> {
        self.same_shape(other)?;
        let f = &self.field;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| f.add(a, b))
            .collect();
        Ok(Matrix {
            entries,
            ..self.clone_shape()
        })
    }

    pub fn checked_sub(&self, other: &Matrix) -> Result<Matrix> {
        self.same_shape(other)?;
        let f = &self.field;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| f.sub(a, b))
            .collect();
        Ok(Matrix {
            entries,
            ..self.clone_shape()
        })
    }

    pub fn checked_mul(&self, other: &Matrix) -> Result<Matrix> {
        self.same_field(other)?;
        if self.cols != other.rows {
            return Err(Error::dims(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = &self.field;
        let mut out = Matrix::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if f.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if f.is_zero(b) {
                        continue;
                    }
                    let idx = i * other.cols + j;
                    out.entries[idx] = f.add(&out.entries[idx], &f.mul(a, b));
                }
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        let f = &self.field;
        Matrix {
            entries: self.entries.iter().map(|e| f.mul(e, c)).collect(),
            ..self.clone_shape()
        }
    }

    fn clone_shape(&self) -> Matrix {
        Matrix {
            field: self.field.clone(),
            rows: self.rows,
            cols: self.cols,
            entries: Vec::new(),
        }
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zeros(&self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn pow(&self, e: usize) -> Matrix {
        assert!(self.is_square(), "power of a non-square matrix");
        let mut acc = Matrix::identity(&self.field, self.rows);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn trace(&self) -> Scalar {
        let f = &self.field;
        (0..self.rows.min(self.cols)).fold(f.zero(), |acc, i| f.add(&acc, self.get(i, i)))
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols, "vector length");
        let f = &self.field;
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(f.zero(), |acc, (a, b)| f.add(&acc, &f.mul(a, b)))
            })
            .collect()
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let f = &self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !f.is_zero(m.get(i, c))) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = f.inv(m.get(r, c)).expect("nonzero pivot");
            for j in c..self.cols {
                let v = f.mul(m.get(r, j), &inv);
                m.set(r, j, v);
            }
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let factor = m.get(i, c).clone();
                if f.is_zero(&factor) {
                    continue;
                }
                for j in c..self.cols {
                    let v = f.sub(m.get(i, j), &f.mul(&factor, m.get(r, j)));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.entries.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Canonical basis of the right kernel: the reduced echelon form of the
    /// null space, one vector per row.
    pub fn kernel_basis(&self) -> Vec<Vec<Scalar>> {
        let f = &self.field;
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let raw: Vec<Vec<Scalar>> = free
            .iter()
            .map(|&fc| {
                let mut v = vec![f.zero(); self.cols];
                v[fc] = f.one();
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = f.neg(r.get(row, fc));
                }
                v
            })
            .collect();
        canonical_basis(f, self.cols, &raw)
    }

    pub fn det(&self) -> Result<Scalar> {
        let n = self.require_square("determinant argument")?;
        let f = &self.field;
        let mut m = self.clone();
        let mut det = f.one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !f.is_zero(m.get(i, c))) else {
                return Ok(f.zero());
            };
            if p != c {
                m.swap_rows(p, c);
                det = f.neg(&det);
            }
            let pivot = m.get(c, c).clone();
            det = f.mul(&det, &pivot);
            let inv = f.inv(&pivot).expect("nonzero pivot");
            for i in c + 1..n {
                let factor = f.mul(m.get(i, c), &inv);
                if f.is_zero(&factor) {
                    continue;
                }
                for j in c..n {
                    let v = f.sub(m.get(i, j), &f.mul(&factor, m.get(c, j)));
                    m.set(i, j, v);
                }
            }
        }
        Ok(det)
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    /// Exact inverse. `Ok(None)` signals a singular matrix.
    pub fn inverse(&self) -> Result<Option<Matrix>> {
        let n = self.require_square("inverse argument")?;
        let mut aug = Matrix::zeros(&self.field, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, self.field.one());
        }
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Ok(None);
        }
        Ok(Some(r.block(0, n, n, n)))
    }

    /// Column-major vectorization.
    pub fn vectorize(&self) -> Vec<Scalar> {
        let mut v = Vec::with_capacity(self.entries.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                v.push(self.get(i, j).clone());
            }
        }
        v
    }

    /// Inverse of [`Matrix::vectorize`].
    pub fn from_vectorized(field: &Field, rows: usize, cols: usize, v: &[Scalar]) -> Result<Self> {
        if v.len() != rows * cols {
            return Err(Error::dims(format!(
                "vector of length {} is not {rows}x{cols}",
                v.len()
            )));
        }
        let mut m = Matrix::zeros(field, rows, cols);
        for j in 0..cols {
            for i in 0..rows {
                m.set(i, j, v[j * rows + i].clone());
            }
        }
        Ok(m)
    }

    /// Kronecker product `self ⊗ other`.
    pub fn kron(&self, other: &Matrix) -> Matrix {
        let f = &self.field;
        let (r, c) = (self.rows * other.rows, self.cols * other.cols);
        let mut out = Matrix::zeros(f, r, c);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if f.is_zero(a) {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        out.set(
                            i * other.rows + k,
                            j * other.cols + l,
                            f.mul(a, other.get(k, l)),
                        );
                    }
                }
            }
        }
        out
    }

    /// Stacks matrices with equal column counts on top of each other.
    pub fn vstack(parts: &[Matrix]) -> Result<Matrix> {
        let first = parts.first().ok_or_else(|| Error::dims("empty stack"))?;
        let mut entries = Vec::new();
        let mut rows = 0;
        for p in parts {
            first.same_field(p)?;
            if p.cols != first.cols {
                return Err(Error::dims("column counts differ in vstack"));
            }
            entries.extend_from_slice(&p.entries);
            rows += p.rows;
        }
        Ok(Matrix {
            field: first.field.clone(),
            rows,
            cols: first.cols,
            entries,
        })
    }

    pub fn block_diagonal(blocks: &[Matrix]) -> Result<Matrix> {
        let first = blocks
            .first()
            .ok_or_else(|| Error::dims("no diagonal blocks"))?;
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Matrix::zeros(&first.field, rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            first.same_field(b)?;
            out.set_block(r0, c0, b);
            r0 += b.rows;
            c0 += b.cols;
        }
        Ok(out)
    }

    /// Copy of the `h`×`w` block whose top-left corner is (r0, c0).
    pub fn block(&self, r0: usize, c0: usize, h: usize, w: usize) -> Matrix {
        let mut out = Matrix::zeros(&self.field, h, w);
        for i in 0..h {
            for j in 0..w {
                out.set(i, j, self.get(r0 + i, c0 + j).clone());
            }
        }
        out
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, b: &Matrix) {
        for i in 0..b.rows {
            for j in 0..b.cols {
                self.set(r0 + i, c0 + j, b.get(i, j).clone());
            }
        }
    }

    /// Assembles a square 2×2 block matrix [[tl, tr], [bl, br]].
    pub fn from_blocks(tl: &Matrix, tr: &Matrix, bl: &Matrix, br: &Matrix) -> Result<Matrix> {
        if tl.rows != tr.rows || bl.rows != br.rows || tl.cols != bl.cols || tr.cols != br.cols {
            return Err(Error::dims("incompatible 2x2 block layout"));
        }
        for b in [tr, bl, br] {
            tl.same_field(b)?;
        }
        let mut out = Matrix::zeros(&tl.field, tl.rows + bl.rows, tl.cols + tr.cols);
        out.set_block(0, 0, tl);
        out.set_block(0, tl.cols, tr);
        out.set_block(tl.rows, 0, bl);
        out.set_block(tl.rows, tl.cols, br);
        Ok(out)
    }

    pub fn commutes_with(&self, other: &Matrix) -> bool {
        self * other == other * self
    }
}

/// Reduced row echelon basis of the span of `vectors` (each of length `len`).
pub fn canonical_basis(field: &Field, len: usize, vectors: &[Vec<Scalar>]) -> Vec<Vec<Scalar>> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let m =
        Matrix::new(field, vectors.len(), len, vectors.concat()).expect("uniform vector length");
    let (r, pivots) = m.rref();
    (0..pivots.len()).map(|i| r.row(i).to_vec()).collect()
}

/// Canonical basis of a space of matrices, via their column-major vectors.
pub fn canonical_matrix_basis(
    field: &Field,
    rows: usize,
    cols: usize,
    mats: &[Matrix],
) -> Vec<Matrix> {
    let vecs: Vec<Vec<Scalar>> = mats.iter().map(Matrix::vectorize).collect();
    canonical_basis(field, rows * cols, &vecs)
        .iter()
        .map(|v| Matrix::from_vectorized(field, rows, cols, v).expect("basis vector length"))
        .collect()
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<String> = self.entries.iter().map(ToString::to_string).collect();
        let width = cells.iter().map(String::len).max().unwrap_or(0);
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols)
                .map(|j| format!("{:>width$}", cells[i * self.cols + j]))
                .collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl Add for &Matrix {
    type Output = Matrix;
    fn add(self, rhs: &Matrix) -> Matrix {
        self.checked_add(rhs).expect("matrix addition")
    }
}

impl Sub for &Matrix {
    type Output = Matrix;
    fn sub(self, rhs: &Matrix) -> Matrix {
        self.checked_sub(rhs).expect("matrix subtraction")
    }
}

impl Mul for &Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &Matrix) -> Matrix {
        self.checked_mul(rhs).expect("matrix product")
    }
}

impl Neg for &Matrix {
    type Output = Matrix;
    fn neg(self) -> Matrix {
        let f = &self.field;
        Matrix {
            entries: self.entries.iter().map(|e| f.neg(e)).collect(),
            ..self.clone_shape()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q() -> Field {
        Field::Rationals
    }

    #[test]
    fn unipotent_square() {
        let j = Matrix::from_ints(&q(), &[[1, 1], [0, 1]]);
        assert_eq!(&j * &j, Matrix::from_ints(&q(), &[[1, 2], [0, 1]]));
    }

    #[test]
    fn product_with_zero() {
        let x = Matrix::from_ints(&q(), &[[3, 4], [-1, -1]]);
        let z = Matrix::zeros(&q(), 2, 2);
        assert!((&x * &z).is_zero());
    }

    #[test]
    fn gf3_square_of_two() {
        let f = Field::prime(3).unwrap();
        let m = Matrix::from_ints(&f, &[[2]]);
        assert_eq!(&m * &m, Matrix::from_ints(&f, &[[1]]));
    }

    #[test]
    fn mismatches_are_errors() {
        let a = Matrix::zeros(&q(), 2, 3);
        let b = Matrix::zeros(&q(), 2, 3);
        assert!(matches!(
            a.checked_mul(&b),
            Err(Error::DimensionMismatch(_))
        ));
        let g = Matrix::zeros(&Field::prime(5).unwrap(), 2, 3);
        assert!(matches!(
            a.checked_add(&g),
            Err(Error::FieldMismatch { .. })
        ));
    }

    #[test]
    fn inverses() {
        let m = Matrix::from_ints(&q(), &[[1, 1], [0, 1]]);
        assert_eq!(
            m.inverse().unwrap(),
            Some(Matrix::from_ints(&q(), &[[1, -1], [0, 1]]))
        );
        let n = Matrix::from_ints(&q(), &[[0, 1], [0, 0]]);
        assert_eq!(n.inverse().unwrap(), None);
        let t = Matrix::from_ints(&q(), &[[2, 1], [0, 2]]);
        let f = q();
        let expect = Matrix::from_rows(
            &f,
            vec![
                vec![
                    f.parse_scalar("1/2").unwrap(),
                    f.parse_scalar("-1/4").unwrap(),
                ],
                vec![f.zero(), f.parse_scalar("1/2").unwrap()],
            ],
        )
        .unwrap();
        assert_eq!(t.inverse().unwrap(), Some(expect));
    }

    #[test]
    fn kernels_and_ranks() {
        let f = q();
        let n = Matrix::from_ints(&f, &[[0, 1], [0, 0]]);
        assert_eq!(n.kernel_basis(), vec![vec![f.one(), f.zero()]]);
        assert_eq!(Matrix::shift(&f, 3).rank(), 2);
        assert!(Matrix::identity(&f, 3).kernel_basis().is_empty());
    }

    #[test]
    fn determinant_and_trace() {
        let f = q();
        let m = Matrix::from_ints(&f, &[[3, 4], [-1, -1]]);
        assert_eq!(m.det().unwrap(), f.one());
        assert_eq!(m.trace(), f.from_int(2));
        let swap = Matrix::from_ints(&f, &[[0, 1], [1, 0]]);
        assert_eq!(swap.det().unwrap(), f.from_int(-1));
    }

    #[test]
    fn vectorization_is_column_major() {
        let f = q();
        let m = Matrix::from_ints(&f, &[[1, 2], [3, 4]]);
        let v: Vec<String> = m.vectorize().iter().map(ToString::to_string).collect();
        assert_eq!(v, ["1", "3", "2", "4"]);
        assert_eq!(
            Matrix::from_vectorized(&f, 2, 2, &m.vectorize()).unwrap(),
            m
        );
    }

    #[test]
    fn kron_lifts_products() {
        // vec(A M B) = (Bᵀ ⊗ A) vec(M)
        let f = q();
        let a = Matrix::from_ints(&f, &[[1, 2], [0, 3]]);
        let m = Matrix::from_ints(&f, &[[4, -1], [2, 5]]);
        let b = Matrix::from_ints(&f, &[[0, 1], [7, 1]]);
        let lhs = (&(&a * &m) * &b).vectorize();
        let rhs = b.transpose().kron(&a).mul_vec(&m.vectorize());
        assert_eq!(lhs, rhs);
    }

    fn small_matrix(n: usize) -> impl Strategy<Value = Vec<i64>> {
        proptest::collection::vec(-3i64..=3, n * n)
    }

    fn build(f: &Field, n: usize, v: &[i64]) -> Matrix {
        Matrix::new(f, n, n, v.iter().map(|&x| f.from_int(x)).collect()).unwrap()
    }

    proptest! {
        #[test]
        fn rank_nullity(v in small_matrix(3)) {
            let m = build(&q(), 3, &v);
            let kernel = m.kernel_basis();
            prop_assert_eq!(m.rank() + kernel.len(), 3);
            for k in &kernel {
                prop_assert!(m.mul_vec(k).iter().all(|e| q().is_zero(e)));
            }
        }

        #[test]
        fn inverse_round_trip_gf5(v in small_matrix(3)) {
            let f = Field::prime(5).unwrap();
            let m = build(&f, 3, &v);
            match m.inverse().unwrap() {
                Some(inv) => prop_assert_eq!(&m * &inv, Matrix::identity(&f, 3)),
                None => prop_assert!(f.is_zero(&m.det().unwrap())),
            }
        }
    }
}
