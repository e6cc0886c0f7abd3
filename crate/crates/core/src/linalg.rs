//! Dense exact linear algebra: rank, reduced row-echelon bases, and the
//! subspace lattice operations (sum, intersection, relative dimension).
//!
//! Elimination always pivots on the first nonzero column, so the reduced
//! basis of a row space is canonical and bit-for-bit reproducible.

use crate::error::{Error, Result};
use crate::field::Field;

#[derive(Clone, Debug)]
pub struct Matrix<F: Field> {
    field: F,
    rows: usize,
    cols: usize,
    data: Vec<F::Elem>,
}

impl<F: Field> Matrix<F> {
    pub fn zeros(field: F, rows: usize, cols: usize) -> Self {
        let data = vec![field.zero(); rows * cols];
        Matrix { field, rows, cols, data }
    }

    /// Builds a matrix from row vectors, each of length `cols`.
    pub fn from_rows(field: F, cols: usize, rows: Vec<Vec<F::Elem>>) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "row length must equal column count");
            data.extend(row);
        }
        Matrix { field, rows: n, cols, data }
    }

    pub fn from_i64_rows(field: F, cols: usize, rows: &[Vec<i64>]) -> Self {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&x| field.from_i64(x)).collect())
            .collect();
        Self::from_rows(field, cols, rows)
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn num_rows(&self) -> usize {
        self.rows
    }

    pub fn num_cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[F::Elem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [F::Elem] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn get(&self, i: usize, j: usize) -> &F::Elem {
        &self.data[i * self.cols + j]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[F::Elem]> {
        (0..self.rows).map(move |i| self.row(i))
    }

    pub fn rank(&self) -> usize {
        self.row_space().dim()
    }

    pub fn row_space(&self) -> Subspace<F> {
        let mut ech = Echelon::new(self.field.clone(), self.cols);
        for row in self.rows() {
            ech.insert(row.to_vec());
        }
        ech.into_subspace()
    }
}

/// Incremental reduced row-echelon form. Rows are kept fully reduced, so
/// the final basis does not depend on the order rows were inserted in.
pub(crate) struct Echelon<F: Field> {
    field: F,
    cols: usize,
    rows: Vec<(usize, Vec<F::Elem>)>,
}

impl<F: Field> Echelon<F> {
    pub(crate) fn new(field: F, cols: usize) -> Self {
        Echelon { field, cols, rows: Vec::new() }
    }

    pub(crate) fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `row` against the current basis; returns true if it was new.
    pub(crate) fn insert(&mut self, mut row: Vec<F::Elem>) -> bool {
        debug_assert_eq!(row.len(), self.cols);
        if self.rows.len() == self.cols {
            return false;
        }
        let f = &self.field;
        for (pivot, basis_row) in &self.rows {
            let factor = row[*pivot].clone();
            if f.is_zero(&factor) {
                continue;
            }
            axpy(f, &mut row, &factor, basis_row, *pivot);
        }
        let Some(pivot) = row.iter().position(|x| !f.is_zero(x)) else {
            return false;
        };
        let scale = f.inv(&row[pivot]);
        for x in row[pivot..].iter_mut() {
            if !f.is_zero(x) {
                *x = f.mul(x, &scale);
            }
        }
        for (_, basis_row) in self.rows.iter_mut() {
            let factor = basis_row[pivot].clone();
            if !f.is_zero(&factor) {
                axpy(f, basis_row, &factor, &row, pivot);
            }
        }
        let at = self.rows.partition_point(|(p, _)| *p < pivot);
        self.rows.insert(at, (pivot, row));
        true
    }

    pub(crate) fn into_subspace(self) -> Subspace<F> {
        let (pivots, basis) = self.rows.into_iter().unzip();
        Subspace { field: self.field, ambient: self.cols, basis, pivots }
    }
}

/// `row -= factor * other`, touching columns from `start` on.
fn axpy<F: Field>(f: &F, row: &mut [F::Elem], factor: &F::Elem, other: &[F::Elem], start: usize) {
    for (x, y) in row[start..].iter_mut().zip(&other[start..]) {
        if !f.is_zero(y) {
            *x = f.sub_mul(x, factor, y);
        }
    }
}

/// A subspace of `k^ambient`, stored as its reduced row-echelon basis.
#[derive(Clone, Debug)]
pub struct Subspace<F: Field> {
    field: F,
    ambient: usize,
    basis: Vec<Vec<F::Elem>>,
    pivots: Vec<usize>,
}

impl<F: Field> PartialEq for Subspace<F> {
    fn eq(&self, other: &Self) -> bool {
        self.ambient == other.ambient && self.pivots == other.pivots && self.basis == other.basis
    }
}

impl<F: Field> Eq for Subspace<F> {}

impl<F: Field> Subspace<F> {
    pub fn zero(field: F, ambient: usize) -> Self {
        Subspace { field, ambient, basis: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(field: F, ambient: usize) -> Self {
        let mut ech = Echelon::new(field.clone(), ambient);
        for i in 0..ambient {
            let mut row = vec![field.zero(); ambient];
            row[i] = field.one();
            ech.insert(row);
        }
        ech.into_subspace()
    }

    /// Row space of arbitrary vectors of length `ambient`.
    pub fn span(field: F, ambient: usize, vectors: impl IntoIterator<Item = Vec<F::Elem>>) -> Self {
        let mut ech = Echelon::new(field, ambient);
        for v in vectors {
            ech.insert(v);
        }
        ech.into_subspace()
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn basis_rows(&self) -> &[Vec<F::Elem>] {
        &self.basis
    }

    pub fn basis(&self) -> Matrix<F> {
        Matrix::from_rows(self.field.clone(), self.ambient, self.basis.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn contains(&self, v: &[F::Elem]) -> bool {
        let mut ech = self.echelon();
        !ech.insert(v.to_vec())
    }

    fn echelon(&self) -> Echelon<F> {
        Echelon {
            field: self.field.clone(),
            cols: self.ambient,
            rows: self.pivots.iter().copied().zip(self.basis.iter().cloned()).collect(),
        }
    }

    fn check_ambient(&self, other: &Self) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::AmbientMismatch { left: self.ambient, right: other.ambient });
        }
        Ok(())
    }

    pub fn sum(&self, other: &Self) -> Result<Self> {
        self.check_ambient(other)?;
        let (big, small) = if self.dim() >= other.dim() { (self, other) } else { (other, self) };
        let mut ech = big.echelon();
        for row in &small.basis {
            ech.insert(row.clone());
        }
        Ok(ech.into_subspace())
    }

    /// Intersection via one elimination on the stacked system
    /// `[a | a]` over `[b | 0]`: rows whose left half vanishes carry
    /// vectors of `a ∩ b` in their right half.
    pub fn intersection(&self, other: &Self) -> Result<Self> {
        self.check_ambient(other)?;
        let n = self.ambient;
        let f = &self.field;
        if self.is_zero() || other.is_zero() {
            return Ok(Subspace::zero(f.clone(), n));
        }
        let mut ech = Echelon::new(f.clone(), 2 * n);
        for row in &self.basis {
            let mut stacked = row.clone();
            stacked.extend(row.iter().cloned());
            ech.insert(stacked);
        }
        for row in &other.basis {
            let mut stacked = row.clone();
            stacked.extend(std::iter::repeat_n(f.zero(), n));
            ech.insert(stacked);
        }
        let vectors = ech
            .rows
            .into_iter()
            .filter(|(pivot, _)| *pivot >= n)
            .map(|(_, row)| row[n..].to_vec());
        Ok(Subspace::span(f.clone(), n, vectors))
    }

    /// Dimension of the image of `self` in the quotient by `other`.
    pub fn relative_dim(&self, other: &Self) -> Result<usize> {
        Ok(self.sum(other)?.dim() - other.dim())
    }
}

pub fn rank<F: Field>(m: &Matrix<F>) -> usize {
    m.rank()
}

pub fn row_space<F: Field>(m: &Matrix<F>) -> Subspace<F> {
    m.row_space()
}

pub fn subspace_sum<F: Field>(a: &Subspace<F>, b: &Subspace<F>) -> Result<Subspace<F>> {
    a.sum(b)
}

pub fn subspace_intersection<F: Field>(a: &Subspace<F>, b: &Subspace<F>) -> Result<Subspace<F>> {
    a.intersection(b)
}

pub fn relative_dim<F: Field>(a: &Subspace<F>, b: &Subspace<F>) -> Result<usize> {
    a.relative_dim(b)
}
