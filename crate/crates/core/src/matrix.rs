//! Dense matrices over small finite fields.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::Field;

/// Row-major dense matrix. Entries are field elements encoded as `u8`.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<u8>,
}

/// Reduced row echelon form together with its pivot columns.
#[derive(Clone, Debug)]
pub struct Echelon {
    pub reduced: Matrix,
    pub pivots: Vec<usize>,
}

impl Matrix {
    pub fn zeros(field: &Field, rows: usize, cols: usize) -> Matrix {
        Matrix { field: field.clone(), rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(field: &Field, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn from_fn(field: &Field, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> u8) -> Matrix {
        let mut m = Matrix::zeros(field, rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.data[i * cols + j] = f(i, j);
            }
        }
        m
    }

    /// Builds a matrix from integer rows; entries must lie in `0..q`.
    pub fn from_rows(field: &Field, rows: &[Vec<u32>]) -> Result<Matrix> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut m = Matrix::zeros(field, r, c);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != c {
                return Err(Error::DimensionMismatch(format!("row {i} has length {} != {c}", row.len())));
            }
            for (j, &x) in row.iter().enumerate() {
                if x >= field.order() {
                    return Err(Error::OutOfRange(format!("entry {x} not below field order {}", field.order())));
                }
                m.data[i * c + j] = x as u8;
            }
        }
        Ok(m)
    }

    /// Builds a matrix with the given column vectors.
    pub fn from_columns(field: &Field, rows: usize, columns: &[Vec<u8>]) -> Matrix {
        let mut m = Matrix::zeros(field, rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            debug_assert_eq!(col.len(), rows);
            for (i, &x) in col.iter().enumerate() {
                m.data[i * m.cols + j] = x;
            }
        }
        m
    }

    pub fn to_rows(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|i| self.row(i).iter().map(|&x| x as u32).collect()).collect()
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
    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u8 {
        self.data[i * self.cols + j]
    }
    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u8) {
        self.data[i * self.cols + j] = v;
    }
    #[inline]
    pub fn row(&self, i: usize) -> &[u8] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }
    #[inline]
    pub fn row_mut(&mut self, i: usize) -> &mut [u8] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }
    pub fn column(&self, j: usize) -> Vec<u8> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }
    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(&self.field, self.cols, self.rows, |i, j| self.get(j, i))
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let mut out = Matrix::zeros(&self.field, self.rows, other.cols);
        let n = other.cols;
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if a != 0 {
                    let (dst, src) = (&mut out.data[i * n..(i + 1) * n], &other.data[k * n..(k + 1) * n]);
                    self.field.axpy(dst, src, a);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[u8]) -> Vec<u8> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                self.row(i).iter().zip(v).fold(0u8, |acc, (&a, &b)| self.field.add(acc, self.field.mul(a, b)))
            })
            .collect()
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        self.field.axpy(&mut out.data, &other.data, 1);
        out
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        let m1 = self.field.neg(1);
        self.field.axpy(&mut out.data, &other.data, m1);
        out
    }

    pub fn scaled(&self, c: u8) -> Matrix {
        let mut out = self.clone();
        self.field.scale(&mut out.data, c);
        out
    }

    pub fn neg(&self) -> Matrix {
        self.scaled(self.field.neg(1))
    }

    pub fn pow(&self, k: u32) -> Matrix {
        assert!(self.is_square());
        let mut acc = Matrix::identity(&self.field, self.rows);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Kronecker product; index `(i_a, i_b)` maps to `i_a * b.rows + i_b`.
    pub fn kron(&self, b: &Matrix) -> Result<Matrix> {
        if self.field != b.field {
            return Err(Error::FieldMismatch(format!("{:?}", self.field), format!("{:?}", b.field)));
        }
        let (r, c) = (self.rows * b.rows, self.cols * b.cols);
        let mut out = Matrix::zeros(&self.field, r, c);
        for ia in 0..self.rows {
            for ja in 0..self.cols {
                let a = self.get(ia, ja);
                if a == 0 {
                    continue;
                }
                for ib in 0..b.rows {
                    let row = (ia * b.rows + ib) * c + ja * b.cols;
                    let dst = &mut out.data[row..row + b.cols];
                    self.field.axpy(dst, b.row(ib), a);
                }
            }
        }
        Ok(out)
    }

    /// Block-diagonal sum.
    pub fn direct_sum(&self, other: &Matrix) -> Matrix {
        let mut out = Matrix::zeros(&self.field, self.rows + other.rows, self.cols + other.cols);
        for i in 0..self.rows {
            out.row_mut(i)[..self.cols].copy_from_slice(self.row(i));
        }
        for i in 0..other.rows {
            out.row_mut(self.rows + i)[self.cols..].copy_from_slice(other.row(i));
        }
        out
    }

    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows);
        let c = self.cols + other.cols;
        let mut out = Matrix::zeros(&self.field, self.rows, c);
        for i in 0..self.rows {
            out.data[i * c..i * c + self.cols].copy_from_slice(self.row(i));
            out.data[i * c + self.cols..(i + 1) * c].copy_from_slice(other.row(i));
        }
        out
    }

    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols);
        let mut out = self.clone();
        out.rows += other.rows;
        out.data.extend_from_slice(&other.data);
        out
    }

    pub fn select_columns(&self, cols: &[usize]) -> Matrix {
        Matrix::from_fn(&self.field, self.rows, cols.len(), |i, j| self.get(i, cols[j]))
    }

    pub fn select_rows(&self, rows: &[usize]) -> Matrix {
        let mut out = Matrix::zeros(&self.field, rows.len(), self.cols);
        for (k, &i) in rows.iter().enumerate() {
            out.row_mut(k).copy_from_slice(self.row(i));
        }
        out
    }

    /// Gaussian elimination to reduced row echelon form. Pivot choice is the
    /// first nonzero entry at or below the current row.
    pub fn rref(&self) -> Echelon {
        let mut m = self.clone();
        let pivots = m.eliminate(true);
        Echelon { reduced: m, pivots }
    }

    /// In-place elimination; returns pivot columns. With `full == false`
    /// only the rows below each pivot are cleared.
    fn eliminate(&mut self, full: bool) -> Vec<usize> {
        let (rows, cols) = (self.rows, self.cols);
        let field = self.field.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(piv) = (r..rows).find(|&i| self.data[i * cols + c] != 0) else {
                continue;
            };
            if piv != r {
                for j in c..cols {
                    self.data.swap(piv * cols + j, r * cols + j);
                }
            }
            let inv = field.inv(self.data[r * cols + c]).unwrap();
            if inv != 1 {
                field.scale(&mut self.data[r * cols + c..(r + 1) * cols], inv);
            }
            let (head, tail) = self.data.split_at_mut(r * cols);
            let (pivot_row, below) = tail.split_at_mut(cols);
            let src = &pivot_row[c..];
            for i in r + 1..rows {
                let row = &mut below[(i - r - 1) * cols..(i - r) * cols];
                let x = row[c];
                if x != 0 {
                    field.axpy(&mut row[c..], src, field.neg(x));
                }
            }
            if full {
                for i in 0..r {
                    let row = &mut head[i * cols..(i + 1) * cols];
                    let x = row[c];
                    if x != 0 {
                        field.axpy(&mut row[c..], src, field.neg(x));
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        // eliminate along the shorter side
        if self.rows > self.cols {
            return self.transpose().rank();
        }
        self.clone().eliminate(false).len()
    }

    /// Columns form a basis of the right null space.
    pub fn kernel(&self) -> Matrix {
        let Echelon { reduced, pivots } = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let free: Vec<usize> = (0..self.cols).filter(|&c| !is_pivot[c]).collect();
        let mut k = Matrix::zeros(&self.field, self.cols, free.len());
        for (j, &f) in free.iter().enumerate() {
            k.set(f, j, 1);
            for (i, &pc) in pivots.iter().enumerate() {
                let v = reduced.get(i, f);
                if v != 0 {
                    k.set(pc, j, self.field.neg(v));
                }
            }
        }
        k
    }

    /// Indices of a maximal linearly independent set of columns, chosen greedily left to right.
    pub fn independent_columns(&self) -> Vec<usize> {
        self.rref().pivots
    }

    /// Some `x` with `self * x = b`, or `None` when the system is inconsistent.
    pub fn solve(&self, b: &Matrix) -> Result<Option<Matrix>> {
        if self.rows != b.rows {
            return Err(Error::DimensionMismatch(format!("solve: {} rows vs {} rows", self.rows, b.rows)));
        }
        if self.field != b.field {
            return Err(Error::FieldMismatch(format!("{:?}", self.field), format!("{:?}", b.field)));
        }
        let aug = self.hstack(b);
        let Echelon { reduced, pivots } = aug.rref();
        if pivots.iter().any(|&c| c >= self.cols) {
            return Ok(None);
        }
        let mut x = Matrix::zeros(&self.field, self.cols, b.cols);
        for (i, &pc) in pivots.iter().enumerate() {
            x.row_mut(pc).copy_from_slice(&reduced.row(i)[self.cols..]);
        }
        Ok(Some(x))
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let x = self.solve(&Matrix::identity(&self.field, self.rows)).ok()??;
        (self.rank() == self.rows).then_some(x)
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} over {:?}", self.rows, self.cols, self.field)?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", self.row(i))?;
        }
        Ok(())
    }
}

/// A subspace of `F^n` kept in semi-echelon form: each stored row has a
/// pivot that is zero in every row stored after it.
#[derive(Clone, Debug)]
pub struct RowSpace {
    field: Field,
    len: usize,
    rows: Vec<Vec<u8>>,
    pivots: Vec<usize>,
}

impl RowSpace {
    pub fn new(field: &Field, len: usize) -> RowSpace {
        RowSpace { field: field.clone(), len, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }
    pub fn ambient(&self) -> usize {
        self.len
    }
    pub fn basis(&self) -> &[Vec<u8>] {
        &self.rows
    }

    /// Reduces `v` in place; returns the coefficients used, one per stored row.
    pub fn reduce(&self, v: &mut [u8]) -> Vec<u8> {
        let mut coeffs = vec![0u8; self.rows.len()];
        for (k, (row, &pc)) in self.rows.iter().zip(&self.pivots).enumerate() {
            let x = v[pc];
            if x != 0 {
                coeffs[k] = x;
                self.field.axpy(v, row, self.field.neg(x));
            }
        }
        coeffs
    }

    pub fn contains(&self, v: &[u8]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(|&x| x == 0)
    }

    /// Adds `v` if it is independent; returns whether the space grew.
    pub fn insert(&mut self, v: &[u8]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        self.push_reduced(w)
    }

    /// Adds a vector already reduced against this space.
    pub fn push_reduced(&mut self, mut w: Vec<u8>) -> bool {
        let Some(pc) = w.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = self.field.inv(w[pc]).unwrap();
        self.field.scale(&mut w, inv);
        self.rows.push(w);
        self.pivots.push(pc);
        true
    }
}
