//! Dense Hermitian linear algebra: eigendecomposition, PSD tests, support
//! projectors and the real coordinates of Hermitian operators.

mod eigen;
mod hermitian;
mod matrix;
pub mod svd;

pub use eigen::Eigen;
pub use hermitian::{sum_operators, HermitianOperator};
pub use matrix::{inner, norm, CMatrix};

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Eigenvalues ascending plus a unitary of eigenvectors. Ties between
/// exactly equal eigenvalues are ordered lexicographically by the
/// phase-normalized eigenvector entries.
pub fn eig_hermitian<T: Real>(a: &HermitianOperator<T>) -> Eigen<T> {
    eigen::jacobi_eigen(a)
}

/// `true` iff the smallest eigenvalue is at least `-tau * max(1, |A|)`,
/// with `|A|` the spectral norm.
pub fn psd_check<T: Real>(a: &HermitianOperator<T>, tau: T) -> bool {
    let e = eig_hermitian(a);
    psd_from_eigen(&e, tau)
}

pub(crate) fn psd_from_eigen<T: Real>(e: &Eigen<T>, tau: T) -> bool {
    e.min() >= -tau * T::one().max(e.spectral_norm())
}

/// Orthonormal basis of the span of eigenvectors whose eigenvalue exceeds
/// `tau_rank * λ_max`.
#[derive(Debug, Clone, PartialEq)]
pub struct SupportBasis<T> {
    columns: CMatrix<T>,
}

impl<T: Real> SupportBasis<T> {
    pub fn dim(&self) -> usize {
        self.columns.rows()
    }

    pub fn rank(&self) -> usize {
        self.columns.cols()
    }

    /// `d x r` isometry.
    pub fn columns(&self) -> &CMatrix<T> {
        &self.columns
    }

    /// Orthogonal projector `U U†` onto the support.
    pub fn projector(&self) -> HermitianOperator<T> {
        HermitianOperator::from_matrix(&self.columns.matmul(&self.columns.adjoint()))
    }

    /// Largest entry of `U†U - I`.
    pub fn orthonormality_defect(&self) -> T {
        let g = self.columns.adjoint().matmul(&self.columns);
        let r = self.rank();
        let mut worst = T::zero();
        for j in 0..r {
            for k in 0..r {
                let target = if j == k { T::one() } else { T::zero() };
                worst = worst.max((g[(j, k)] - Complex::new(target, T::zero())).norm());
            }
        }
        worst
    }
}

/// Support of a PSD operator, see [`SupportBasis`].
pub fn support_basis<T: Real>(a: &HermitianOperator<T>, tau_rank: T) -> Result<SupportBasis<T>, T> {
    let e = eig_hermitian(a);
    if !psd_from_eigen(&e, T::of(T::TOL.psd)) {
        return Err(Error::Domain(format!(
            "support requested for a non-PSD operator (min eigenvalue {})",
            e.min()
        )));
    }
    Ok(support_from_eigen(&e, tau_rank))
}

pub(crate) fn support_from_eigen<T: Real>(e: &Eigen<T>, tau_rank: T) -> SupportBasis<T> {
    let d = e.values.len();
    let lam_max = e.max();
    let keep: Vec<usize> = if lam_max > T::zero() {
        (0..d).filter(|&k| e.values[k] > tau_rank * lam_max).collect()
    } else {
        Vec::new()
    };
    // eigenvalues are ascending; list support columns largest first
    let mut columns = CMatrix::zeros(d, keep.len());
    for (c, &k) in keep.iter().rev().enumerate() {
        columns.set_col(c, &e.vectors.col(k));
    }
    SupportBasis { columns }
}

/// `|A - B|_F`.
pub fn frobenius_distance<T: Real>(a: &HermitianOperator<T>, b: &HermitianOperator<T>) -> Result<T, T> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            found: b.dim(),
        });
    }
    Ok(a.sub(b).frobenius_norm())
}

/// Spectral norm `max |λ|`.
pub fn spectral_norm<T: Real>(a: &HermitianOperator<T>) -> T {
    eig_hermitian(a).spectral_norm()
}

/// Zeroes negative eigenvalues. Returns the clipped operator and the
/// Frobenius norm of the removed negative part.
pub fn clip_negative<T: Real>(a: &HermitianOperator<T>) -> (HermitianOperator<T>, T) {
    let e = eig_hermitian(a);
    if e.min() >= T::zero() {
        return (a.clone(), T::zero());
    }
    let removed = e
        .values
        .iter()
        .filter(|l| **l < T::zero())
        .map(|l| *l * *l)
        .sum::<T>()
        .sqrt();
    (e.map_values(|l| l.max(T::zero())), removed)
}

/// Real coordinates of a Hermitian operator in an orthonormal basis for the
/// Frobenius inner product: diagonal entries, then `sqrt(2) Re a_jk` and
/// `sqrt(2) Im a_jk` for `j < k`.
pub fn hermitian_coordinates<T: Real>(a: &HermitianOperator<T>) -> Vec<T> {
    let n = a.dim();
    let root2 = T::SQRT_2();
    let mut out = Vec::with_capacity(n * n);
    for k in 0..n {
        out.push(a.get(k, k).re);
    }
    for j in 0..n {
        for k in j + 1..n {
            let z = a.get(j, k);
            out.push(root2 * z.re);
            out.push(root2 * z.im);
        }
    }
    out
}

/// Orthonormal basis (Frobenius) of the `r x r` Hermitian operators, in the
/// order matched by [`hermitian_coordinates`].
pub fn hermitian_basis<T: Real>(r: usize) -> Vec<HermitianOperator<T>> {
    let mut basis = Vec::with_capacity(r * r);
    if r == 0 {
        return basis;
    }
    let inv_root2 = T::FRAC_1_SQRT_2();
    for k in 0..r {
        let mut m = CMatrix::zeros(r, r);
        m[(k, k)] = Complex::new(T::one(), T::zero());
        basis.push(HermitianOperator::from_matrix(&m));
    }
    for j in 0..r {
        for k in j + 1..r {
            let mut re = CMatrix::zeros(r, r);
            re[(j, k)] = Complex::new(inv_root2, T::zero());
            re[(k, j)] = Complex::new(inv_root2, T::zero());
            basis.push(HermitianOperator::from_matrix(&re));
            // coefficient of sqrt(2) Im a_jk: a_jk = i/sqrt2 gives Im = 1/sqrt2
            let mut im = CMatrix::zeros(r, r);
            im[(j, k)] = Complex::new(T::zero(), inv_root2);
            im[(k, j)] = Complex::new(T::zero(), -inv_root2);
            basis.push(HermitianOperator::from_matrix(&im));
        }
    }
    basis
}
