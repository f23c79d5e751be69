//! Cyclic Jacobi eigensolver for complex Hermitian matrices.
//!
//! Each rotation first removes the phase of the pivot `a[p][q]` with a
//! diagonal unitary and then applies a real Givens rotation, so the
//! combined transform is
//!
//! ```text
//! G[p][p] = c          G[p][q] = s
//! G[q][p] = -s e^{-iφ} G[q][q] = c e^{-iφ}
//! ```
//!
//! with `a[p][q] = |a[p][q]| e^{iφ}`. Sweeps continue until the
//! off-diagonal mass falls below machine precision relative to the input.

use std::cmp::Ordering;

use num_complex::Complex;
use num_traits::Zero;

use super::hermitian::HermitianOperator;
use super::matrix::CMatrix;
use crate::scalar::Real;

const MAX_SWEEPS: usize = 64;

/// Eigenvalues (ascending) and the unitary whose columns are the matching
/// eigenvectors.
#[derive(Debug, Clone, PartialEq)]
pub struct Eigen<T> {
    pub values: Vec<T>,
    pub vectors: CMatrix<T>,
}

impl<T: Real> Eigen<T> {
    /// `V diag(f(λ)) V†`.
    pub fn map_values(&self, f: impl Fn(T) -> T) -> HermitianOperator<T> {
        let n = self.values.len();
        let mut scaled = self.vectors.clone();
        for (k, lam) in self.values.iter().enumerate() {
            let s = f(*lam);
            for j in 0..n {
                scaled[(j, k)] = scaled[(j, k)].scale(s);
            }
        }
        HermitianOperator::from_matrix(&scaled.matmul(&self.vectors.adjoint()))
    }

    pub fn reconstruct(&self) -> HermitianOperator<T> {
        self.map_values(|x| x)
    }

    pub fn min(&self) -> T {
        self.values[0]
    }

    pub fn max(&self) -> T {
        *self.values.last().expect("non-empty spectrum")
    }

    /// Spectral norm, max |λ|.
    pub fn spectral_norm(&self) -> T {
        self.min().abs().max(self.max().abs())
    }
}

pub(crate) fn jacobi_eigen<T: Real>(a: &HermitianOperator<T>) -> Eigen<T> {
    let n = a.dim();
    let mut m = a.matrix().clone();
    let mut v = CMatrix::<T>::identity(n);
    let scale = m.frobenius_norm();
    let eps = T::epsilon();

    if scale > T::zero() {
        for _ in 0..MAX_SWEEPS {
            let off: T = (0..n)
                .flat_map(|p| (p + 1..n).map(move |q| (p, q)))
                .map(|(p, q)| m[(p, q)].norm_sqr())
                .sum::<T>()
                .sqrt();
            if off <= eps * scale {
                break;
            }
            for p in 0..n {
                for q in p + 1..n {
                    rotate(&mut m, &mut v, p, q, eps * scale);
                }
            }
        }
    }

    let mut pairs: Vec<(T, Vec<Complex<T>>)> = (0..n)
        .map(|k| (m[(k, k)].re, normalize_phase(v.col(k))))
        .collect();
    pairs.sort_by(|x, y| {
        x.0.partial_cmp(&y.0)
            .unwrap_or(Ordering::Equal)
            .then_with(|| if x.0 == y.0 { lexicographic(&x.1, &y.1) } else { Ordering::Equal })
    });

    let mut vectors = CMatrix::zeros(n, n);
    for (k, (_, col)) in pairs.iter().enumerate() {
        vectors.set_col(k, col);
    }
    Eigen {
        values: pairs.into_iter().map(|(lam, _)| lam).collect(),
        vectors,
    }
}

fn rotate<T: Real>(m: &mut CMatrix<T>, v: &mut CMatrix<T>, p: usize, q: usize, floor: T) {
    let apq = m[(p, q)];
    let r = apq.norm();
    if r <= floor * T::epsilon() {
        m[(p, q)] = Complex::zero();
        m[(q, p)] = Complex::zero();
        return;
    }
    let phase = apq.unscale(r);
    let app = m[(p, p)].re;
    let aqq = m[(q, q)].re;
    let two = T::of(2.0);
    let theta = (aqq - app) / (two * r);
    let t = theta.signum() / (theta.abs() + (T::one() + theta * theta).sqrt());
    let c = T::one() / (T::one() + t * t).sqrt();
    let s = t * c;

    let e = phase.conj();
    let g_pp = Complex::new(c, T::zero());
    let g_pq = Complex::new(s, T::zero());
    let g_qp = e.scale(-s);
    let g_qq = e.scale(c);
    let n = m.rows();

    // m <- m G (columns p, q)
    for j in 0..n {
        let mp = m[(j, p)];
        let mq = m[(j, q)];
        m[(j, p)] = mp * g_pp + mq * g_qp;
        m[(j, q)] = mp * g_pq + mq * g_qq;
    }
    // m <- G† m (rows p, q)
    for k in 0..n {
        let mp = m[(p, k)];
        let mq = m[(q, k)];
        m[(p, k)] = g_pp.conj() * mp + g_qp.conj() * mq;
        m[(q, k)] = g_pq.conj() * mp + g_qq.conj() * mq;
    }
    m[(p, q)] = Complex::zero();
    m[(q, p)] = Complex::zero();
    m[(p, p)] = Complex::new(m[(p, p)].re, T::zero());
    m[(q, q)] = Complex::new(m[(q, q)].re, T::zero());
    for k in 0..n {
        if k != p && k != q {
            m[(k, p)] = m[(p, k)].conj();
            m[(k, q)] = m[(q, k)].conj();
        }
    }

    for j in 0..n {
        let vp = v[(j, p)];
        let vq = v[(j, q)];
        v[(j, p)] = vp * g_pp + vq * g_qp;
        v[(j, q)] = vp * g_pq + vq * g_qq;
    }
}

/// Rescales the vector so its first non-negligible entry is real positive.
fn normalize_phase<T: Real>(mut col: Vec<Complex<T>>) -> Vec<Complex<T>> {
    let n = col.len();
    let threshold = T::of(0.5) / T::of_usize(n).sqrt();
    if let Some(pivot) = col.iter().find(|z| z.norm() >= threshold).copied() {
        let phase = pivot.unscale(pivot.norm()).conj();
        for z in col.iter_mut() {
            *z = *z * phase;
        }
        // the pivot is now real; strip rounding in its imaginary part
        if let Some(z) = col.iter_mut().find(|z| z.norm() >= threshold) {
            *z = Complex::new(z.re, T::zero());
        }
    }
    col
}

fn lexicographic<T: Real>(a: &[Complex<T>], b: &[Complex<T>]) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        let o = x
            .re
            .partial_cmp(&y.re)
            .unwrap_or(Ordering::Equal)
            .then(x.im.partial_cmp(&y.im).unwrap_or(Ordering::Equal));
        if o != Ordering::Equal {
            return o;
        }
    }
    Ordering::Equal
}
