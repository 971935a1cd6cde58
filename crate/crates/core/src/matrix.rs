//! Dense matrices over a [`FieldSpec`].

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec, Involution};

/// A dense row-major matrix. Equality and ordering are entrywise; the order
/// is lexicographic on the row-major encoding sequence.
#[derive(Clone)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<FieldElement>,
    field: FieldSpec,
}

impl Matrix {
    pub fn new(field: &FieldSpec, rows: usize, cols: usize, data: Vec<FieldElement>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                data.len()
            )));
        }
        if let Some(bad) = data.iter().find(|&&a| !field.contains(a)) {
            return Err(Error::ElementOutOfRange { value: bad.value() as u32, order: field.order() });
        }
        Ok(Matrix { rows, cols, data, field: field.clone() })
    }

    /// Builds from integer encodings, one inner slice per row.
    pub fn from_rows(field: &FieldSpec, rows: &[&[u32]]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch("ragged rows".into()));
            }
            for &v in r.iter() {
                data.push(field.element(v)?);
            }
        }
        Matrix::new(field, rows.len(), cols, data)
    }

    pub(crate) fn from_raw_parts(field: &FieldSpec, rows: usize, cols: usize, data: Vec<FieldElement>) -> Self {
        debug_assert_eq!(data.len(), rows * cols);
        Matrix { rows, cols, data, field: field.clone() }
    }

    pub fn zeros(field: &FieldSpec, rows: usize, cols: usize) -> Self {
        Matrix::from_raw_parts(field, rows, cols, vec![FieldElement::ZERO; rows * cols])
    }

    pub fn identity(field: &FieldSpec, n: usize) -> Self {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = FieldElement::ONE;
        }
        m
    }

    /// `E_jk`: a single 1 at `(j, k)` (zero-based).
    pub fn unit(field: &FieldSpec, rows: usize, cols: usize, j: usize, k: usize) -> Self {
        let mut m = Matrix::zeros(field, rows, cols);
        m.data[j * cols + k] = FieldElement::ONE;
        m
    }

    pub fn diagonal(field: &FieldSpec, diag: &[FieldElement]) -> Self {
        let n = diag.len();
        let mut m = Matrix::zeros(field, n, n);
        for (i, &d) in diag.iter().enumerate() {
            m.data[i * n + i] = d;
        }
        m
    }

    /// Parses the textual format `"1,0;0,2"`: rows split on `;`, entries on `,`.
    pub fn parse(field: &FieldSpec, s: &str) -> Result<Self> {
        let mut rows: Vec<Vec<u32>> = Vec::new();
        for row in s.trim().split(';') {
            let entries = row
                .split(',')
                .map(|e| e.trim().parse::<u32>().map_err(|_| Error::Parse(format!("bad matrix entry {e:?} in {s:?}"))))
                .collect::<Result<Vec<_>>>()?;
            rows.push(entries);
        }
        let refs: Vec<&[u32]> = rows.iter().map(Vec::as_slice).collect();
        Matrix::from_rows(field, &refs)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Row-major entries, the canonical serialization.
    pub fn entries(&self) -> &[FieldElement] {
        &self.data
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> FieldElement {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: FieldElement) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[FieldElement] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|a| a.is_zero())
    }

    fn check_same_field(&self, other: &Matrix) -> Result<()> {
        if self.field.same_field(&other.field) {
            Ok(())
        } else {
            Err(Error::MixedFields(self.field.to_string(), other.field.to_string()))
        }
    }

    fn check_same_shape(&self, other: &Matrix) -> Result<()> {
        self.check_same_field(other)?;
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        self.check_same_shape(other)?;
        Ok(self.zip_with(other, |f, a, b| f.add(a, b)))
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix> {
        self.check_same_shape(other)?;
        Ok(self.zip_with(other, |f, a, b| f.sub(a, b)))
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        self.check_same_field(other)?;
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = &self.field;
        let mut out = vec![FieldElement::ZERO; self.rows * other.cols];
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self.get(i, l);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let cell = &mut out[i * other.cols + j];
                    *cell = f.add(*cell, f.mul(a, other.get(l, j)));
                }
            }
        }
        Ok(Matrix::from_raw_parts(f, self.rows, other.cols, out))
    }

    pub fn scale(&self, c: FieldElement) -> Matrix {
        let f = &self.field;
        let data = self.data.iter().map(|&a| f.mul(c, a)).collect();
        Matrix::from_raw_parts(f, self.rows, self.cols, data)
    }

    pub fn neg(&self) -> Matrix {
        let f = &self.field;
        let data = self.data.iter().map(|&a| f.neg(a)).collect();
        Matrix::from_raw_parts(f, self.rows, self.cols, data)
    }

    fn zip_with(&self, other: &Matrix, op: impl Fn(&FieldSpec, FieldElement, FieldElement) -> FieldElement) -> Matrix {
        let f = &self.field;
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| op(f, a, b)).collect();
        Matrix::from_raw_parts(f, self.rows, self.cols, data)
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                out.push(self.get(i, j));
            }
        }
        Matrix::from_raw_parts(&self.field, self.cols, self.rows, out)
    }

    /// `result[i][j] = σ(M[j][i])`.
    pub fn conj_transpose(&self, sigma: &Involution) -> Matrix {
        let mut out = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                out.push(sigma.apply(self.get(i, j)));
            }
        }
        Matrix::from_raw_parts(&self.field, self.cols, self.rows, out)
    }

    fn require_square(&self) -> Result<()> {
        if self.is_square() {
            Ok(())
        } else {
            Err(Error::NotSquare { rows: self.rows, cols: self.cols })
        }
    }

    pub fn is_hermitian(&self, sigma: &Involution) -> Result<bool> {
        self.require_square()?;
        let n = self.rows;
        Ok((0..n).all(|i| (i..n).all(|j| self.get(i, j) == sigma.apply(self.get(j, i)))))
    }

    pub fn is_symmetric(&self) -> Result<bool> {
        self.require_square()?;
        let n = self.rows;
        Ok((0..n).all(|i| (i + 1..n).all(|j| self.get(i, j) == self.get(j, i))))
    }

    /// `Mᵗ = −M` with zero diagonal.
    pub fn is_alternate(&self) -> Result<bool> {
        self.require_square()?;
        let n = self.rows;
        let f = &self.field;
        Ok((0..n).all(|i| self.get(i, i).is_zero() && (i + 1..n).all(|j| self.get(i, j) == f.neg(self.get(j, i)))))
    }

    /// Reduces `self` in place to reduced row echelon form and returns the
    /// pivot columns. Pivot choice is the first nonzero entry in the column.
    pub fn rref_in_place(&mut self) -> Vec<usize> {
        let f = self.field.clone();
        let (rows, cols) = (self.rows, self.cols);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(pr) = (r..rows).find(|&i| !self.get(i, c).is_zero()) else {
                continue;
            };
            if pr != r {
                for j in 0..cols {
                    self.data.swap(pr * cols + j, r * cols + j);
                }
            }
            let inv = f.inv(self.get(r, c)).expect("pivot is nonzero");
            for j in c..cols {
                let v = f.mul(inv, self.get(r, j));
                self.set(r, j, v);
            }
            for i in 0..rows {
                if i == r {
                    continue;
                }
                let factor = self.get(i, c);
                if factor.is_zero() {
                    continue;
                }
                for j in c..cols {
                    let v = f.sub(self.get(i, j), f.mul(factor, self.get(r, j)));
                    self.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        (m, pivots)
    }

    /// Rank by forward elimination; equals the dimension of the row space.
    pub fn rank(&self) -> usize {
        rank_of(&self.field, self.rows, self.cols, &mut self.data.clone())
    }

    pub fn inverse(&self) -> Result<Matrix> {
        self.require_square()?;
        let n = self.rows;
        let f = &self.field;
        let mut aug = Matrix::zeros(f, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, n + i, FieldElement::ONE);
        }
        let pivots = aug.rref_in_place();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(Error::Singular);
        }
        let mut out = Vec::with_capacity(n * n);
        for i in 0..n {
            out.extend_from_slice(&aug.row(i)[n..]);
        }
        Ok(Matrix::from_raw_parts(f, n, n, out))
    }

    /// Stacks `self` on top of `other` (same column count).
    pub fn vstack(&self, other: &Matrix) -> Result<Matrix> {
        self.check_same_field(other)?;
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!("cannot stack {} and {} columns", self.cols, other.cols)));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(Matrix::from_raw_parts(&self.field, self.rows + other.rows, self.cols, data))
    }

    /// Sub-matrix made of the listed rows.
    pub fn select_rows(&self, rows: &[usize]) -> Matrix {
        let mut data = Vec::with_capacity(rows.len() * self.cols);
        for &r in rows {
            data.extend_from_slice(self.row(r));
        }
        Matrix::from_raw_parts(&self.field, rows.len(), self.cols, data)
    }

    /// A 1×n row vector.
    pub fn row_vector(field: &FieldSpec, entries: &[FieldElement]) -> Matrix {
        Matrix::from_raw_parts(field, 1, entries.len(), entries.to_vec())
    }
}

/// Rank of a row-major scratch buffer; the buffer is destroyed.
pub(crate) fn rank_of(f: &FieldSpec, rows: usize, cols: usize, data: &mut [FieldElement]) -> usize {
    let mut rank = 0;
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(pr) = (rank..rows).find(|&i| !data[i * cols + c].is_zero()) else {
            continue;
        };
        if pr != rank {
            for j in c..cols {
                data.swap(pr * cols + j, rank * cols + j);
            }
        }
        let inv = f.inv(data[rank * cols + c]).expect("pivot is nonzero");
        for i in rank + 1..rows {
            let lead = data[i * cols + c];
            if lead.is_zero() {
                continue;
            }
            let factor = f.mul(lead, inv);
            for j in c..cols {
                let v = f.sub(data[i * cols + j], f.mul(factor, data[rank * cols + j]));
                data[i * cols + j] = v;
            }
        }
        rank += 1;
    }
    rank
}

/// `rank(a − b)` without allocating an intermediate matrix.
pub fn rank_of_difference(a: &Matrix, b: &Matrix) -> usize {
    debug_assert!(a.rows == b.rows && a.cols == b.cols);
    let f = &a.field;
    let mut buf: Vec<FieldElement> = a.data.iter().zip(&b.data).map(|(&x, &y)| f.sub(x, y)).collect();
    rank_of(f, a.rows, a.cols, &mut buf)
}

impl PartialEq for Matrix {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows && self.cols == other.cols && self.data == other.data && self.field == other.field
    }
}

impl Eq for Matrix {}

impl PartialOrd for Matrix {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Matrix {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.rows, self.cols, &self.data).cmp(&(other.rows, other.cols, &other.data))
    }
}

impl std::hash::Hash for Matrix {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.rows.hash(state);
        self.cols.hash(state);
        self.data.hash(state);
    }
}

/// Canonical text form, e.g. `1,0;0,2`.
impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            if i > 0 {
                f.write_str(";")?;
            }
            for (j, a) in self.row(i).iter().enumerate() {
                if j > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{a}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{self}] over {}", self.field)
    }
}
