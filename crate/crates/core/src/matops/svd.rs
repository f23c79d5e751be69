//! One-sided (Hestenes) Jacobi SVD for real matrices.

use std::cmp::Ordering;

use crate::scalar::Real;

const MAX_SWEEPS: usize = 80;

/// Thin SVD of a real matrix given by its columns.
///
/// `values` is sorted descending with one entry per input column, and
/// `left[k]` is the unit left singular vector paired with `values[k]`
/// (all zeros when that value is exactly zero). Vectors whose singular
/// values sit at rounding level are not reliably orthogonal; callers apply
/// their own cutoff.
#[derive(Debug, Clone)]
pub struct RealSvd<T> {
    pub values: Vec<T>,
    pub left: Vec<Vec<T>>,
}

/// Orthogonalizes the columns pairwise until all are mutually orthogonal;
/// column norms are then the singular values.
pub fn hestenes_svd<T: Real>(columns: &[Vec<T>]) -> RealSvd<T> {
    let mut cols: Vec<Vec<T>> = columns.to_vec();
    let n = cols.len();
    let eps = T::epsilon();

    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..n {
            for q in p + 1..n {
                let (alpha, beta, gamma) = gram(&cols[p], &cols[q]);
                if gamma == T::zero() || gamma.abs() <= eps * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let zeta = (beta - alpha) / (T::of(2.0) * gamma);
                let t = zeta.signum() / (zeta.abs() + (T::one() + zeta * zeta).sqrt());
                let c = T::one() / (T::one() + t * t).sqrt();
                let s = c * t;
                let (lo, hi) = cols.split_at_mut(q);
                let a = &mut lo[p];
                let b = &mut hi[0];
                for (x, y) in a.iter_mut().zip(b.iter_mut()) {
                    let xp = *x;
                    let yp = *y;
                    *x = c * xp - s * yp;
                    *y = s * xp + c * yp;
                }
            }
        }
        if !rotated {
            break;
        }
    }

    let mut entries: Vec<(T, Vec<T>)> = cols
        .into_iter()
        .map(|c| {
            let norm = c.iter().map(|x| *x * *x).sum::<T>().sqrt();
            (norm, c)
        })
        .collect();
    // stable sort keeps column order among equal values
    entries.sort_by(|x, y| y.0.partial_cmp(&x.0).unwrap_or(Ordering::Equal));

    let mut values = Vec::with_capacity(n);
    let mut left = Vec::with_capacity(n);
    for (sigma, c) in entries {
        if sigma > T::zero() {
            left.push(c.iter().map(|x| *x / sigma).collect());
        } else {
            left.push(vec![T::zero(); c.len()]);
        }
        values.push(sigma);
    }
    RealSvd { values, left }
}

fn gram<T: Real>(a: &[T], b: &[T]) -> (T, T, T) {
    let mut alpha = T::zero();
    let mut beta = T::zero();
    let mut gamma = T::zero();
    for (x, y) in a.iter().zip(b) {
        alpha = alpha + *x * *x;
        beta = beta + *y * *y;
        gamma = gamma + *x * *y;
    }
    (alpha, beta, gamma)
}
