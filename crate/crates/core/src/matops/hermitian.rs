use num_complex::Complex;
use num_traits::Zero;

use super::matrix::CMatrix;
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Square complex matrix that is Hermitian bit-for-bit.
///
/// Every constructor routes through [`HermitianOperator::project`], which
/// stores `(A + A†)/2` with the lower triangle mirrored from the upper one,
/// so `entries[j][k] == conj(entries[k][j])` holds exactly.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianOperator<T> {
    inner: CMatrix<T>,
}

impl<T: Real> HermitianOperator<T> {
    /// Hermitian projection `(A + A†)/2`.
    pub fn project(a: &CMatrix<T>) -> Result<Self, T> {
        if !a.is_square() {
            return Err(Error::InvalidInput(format!(
                "operator must be square, got {}x{}",
                a.rows(),
                a.cols()
            )));
        }
        if a.rows() == 0 {
            return Err(Error::InvalidInput("operator dimension must be at least 1".into()));
        }
        let n = a.rows();
        let half = T::of(0.5);
        let mut m = CMatrix::zeros(n, n);
        for j in 0..n {
            m[(j, j)] = Complex::new(a[(j, j)].re, T::zero());
            for k in j + 1..n {
                let v = (a[(j, k)] + a[(k, j)].conj()).scale(half);
                m[(j, k)] = v;
                m[(k, j)] = v.conj();
            }
        }
        Ok(Self { inner: m })
    }

    /// Wraps a matrix already known to be square and non-empty.
    pub(crate) fn from_matrix(a: &CMatrix<T>) -> Self {
        Self::project(a).expect("square non-empty matrix")
    }

    pub fn from_rows(rows: &[Vec<Complex<T>>]) -> Result<Self, T> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidInput("matrix rows must all have length d".into()));
        }
        Self::project(&CMatrix::from_row_major(n, n, rows.concat()))
    }

    pub fn zeros(dim: usize) -> Self {
        assert!(dim >= 1, "operator dimension must be at least 1");
        Self { inner: CMatrix::zeros(dim, dim) }
    }

    pub fn identity(dim: usize) -> Self {
        assert!(dim >= 1, "operator dimension must be at least 1");
        Self { inner: CMatrix::identity(dim) }
    }

    pub fn diag(values: &[T]) -> Self {
        let mut m = Self::zeros(values.len());
        for (k, v) in values.iter().enumerate() {
            m.inner[(k, k)] = Complex::new(*v, T::zero());
        }
        m
    }

    /// Rank-one operator `|v><v|` (no normalization applied).
    pub fn outer(v: &[Complex<T>]) -> Self {
        let n = v.len();
        Self::from_matrix(&CMatrix::from_fn(n, n, |j, k| v[j] * v[k].conj()))
    }

    pub fn dim(&self) -> usize {
        self.inner.rows()
    }

    pub fn get(&self, j: usize, k: usize) -> Complex<T> {
        self.inner[(j, k)]
    }

    pub fn matrix(&self) -> &CMatrix<T> {
        &self.inner
    }

    pub fn to_rows(&self) -> Vec<Vec<Complex<T>>> {
        let n = self.dim();
        (0..n).map(|j| (0..n).map(|k| self.inner[(j, k)]).collect()).collect()
    }

    pub fn trace(&self) -> T {
        self.inner.trace().re
    }

    pub fn frobenius_norm(&self) -> T {
        self.inner.frobenius_norm()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        Self::from_matrix(&self.inner.add(&rhs.inner))
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        Self::from_matrix(&self.inner.sub(&rhs.inner))
    }

    pub fn scale(&self, s: T) -> Self {
        Self { inner: self.inner.scale(s) }
    }

    /// `self + s * rhs`.
    pub fn add_scaled(&self, s: T, rhs: &Self) -> Self {
        Self::from_matrix(&self.inner.add(&rhs.inner.scale(s)))
    }

    /// `B† A B` for a `d x r` matrix `B`; gives the compression onto the
    /// columns of `B` when they are orthonormal.
    pub fn congruence(&self, b: &CMatrix<T>) -> Self {
        Self::from_matrix(&b.adjoint().matmul(&self.inner).matmul(b))
    }

    /// `B A B†` for a `d x r` matrix `B` applied to an `r x r` operator.
    pub fn expand(&self, b: &CMatrix<T>) -> Self {
        Self::from_matrix(&b.matmul(&self.inner).matmul(&b.adjoint()))
    }

    /// Real part of `Tr[self * rhs]`, exact for Hermitian arguments.
    pub fn trace_product(&self, rhs: &Self) -> T {
        let n = self.dim();
        let mut acc = T::zero();
        for j in 0..n {
            for k in 0..n {
                let p = self.inner[(j, k)] * rhs.inner[(k, j)];
                acc = acc + p.re;
            }
        }
        acc
    }

    /// Largest absolute entry difference.
    pub fn max_abs_diff(&self, rhs: &Self) -> T {
        self.inner
            .as_slice()
            .iter()
            .zip(rhs.inner.as_slice())
            .map(|(a, b)| (*a - *b).norm())
            .fold(T::zero(), T::max)
    }

    pub fn is_zero(&self) -> bool {
        self.inner.as_slice().iter().all(|z| z.is_zero())
    }
}

/// Sum of a non-empty list of equally sized operators.
pub fn sum_operators<'a, T: Real>(ops: impl IntoIterator<Item = &'a HermitianOperator<T>>) -> Option<HermitianOperator<T>> {
    let mut it = ops.into_iter();
    let first = it.next()?.clone();
    Some(it.fold(first, |acc, x| acc.add(x)))
}
