#![allow(clippy::needless_range_loop)]
#![allow(dead_code)]

use num_complex::Complex;
use povm_realize::{CMatrix, HermitianOperator};

pub type C = Complex<f64>;

/// Orthonormal basis of the column space of `a` by modified Gram-Schmidt
/// with column pivoting.
pub fn column_space(a: &HermitianOperator<f64>, rel: f64) -> Vec<Vec<C>> {
    let d = a.dim();
    let mut cols: Vec<Vec<C>> = (0..d).map(|k| (0..d).map(|j| a.get(j, k)).collect()).collect();
    let scale = cols.iter().map(|c| vnorm(c)).fold(0.0, f64::max);
    let mut basis: Vec<Vec<C>> = Vec::new();
    loop {
        let (k, n) = cols
            .iter()
            .enumerate()
            .map(|(k, c)| (k, vnorm(c)))
            .fold((0, -1.0), |best, x| if x.1 > best.1 { x } else { best });
        if n <= rel * scale || basis.len() == d {
            return basis;
        }
        let q: Vec<C> = cols[k].iter().map(|z| z / n).collect();
        for c in cols.iter_mut() {
            let proj: C = q.iter().zip(c.iter()).map(|(qi, ci)| qi.conj() * ci).sum();
            for (ci, qi) in c.iter_mut().zip(&q) {
                *ci -= proj * qi;
            }
        }
        basis.push(q);
    }
}

pub fn vnorm(v: &[C]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Rank of a real matrix (rows) by Gaussian elimination with full pivoting.
pub fn rank(mut m: Vec<Vec<f64>>, rel: f64) -> usize {
    let rows = m.len();
    if rows == 0 {
        return 0;
    }
    let cols = m[0].len();
    let scale = m.iter().flatten().fold(0.0f64, |a, b| a.max(b.abs()));
    let mut r = 0;
    let mut used_col = vec![false; cols];
    while r < rows {
        let mut best = (0, 0, 0.0);
        for (i, row) in m.iter().enumerate().skip(r) {
            for (j, v) in row.iter().enumerate() {
                if !used_col[j] && v.abs() > best.2 {
                    best = (i, j, v.abs());
                }
            }
        }
        if best.2 <= rel * scale {
            break;
        }
        m.swap(r, best.0);
        used_col[best.1] = true;
        let pivot = m[r][best.1];
        for i in r + 1..rows {
            let f = m[i][best.1] / pivot;
            if f != 0.0 {
                for j in 0..cols {
                    m[i][j] -= f * m[r][j];
                }
            }
        }
        r += 1;
    }
    r
}

/// Real coordinates `(Re, Im)` of every entry of `v w†`.
pub fn outer_entries(v: &[C], w: &[C]) -> Vec<f64> {
    let mut out = Vec::with_capacity(2 * v.len() * w.len());
    for a in v {
        for b in w {
            let z = a * b.conj();
            out.push(z.re);
            out.push(z.im);
        }
    }
    out
}

/// Kernel dimension of `{H_i} ↦ Σ U_i H_i U_i†` over Hermitian `H_i`,
/// built from matrix units rather than an orthonormal Hermitian basis.
pub fn brute_force_kernel(effects: &[HermitianOperator<f64>]) -> usize {
    let mut columns: Vec<Vec<f64>> = Vec::new();
    for e in effects {
        let u = column_space(e, 1e-7);
        let r = u.len();
        for j in 0..r {
            columns.push(outer_entries(&u[j], &u[j]));
            for k in j + 1..r {
                // U (E_jk + E_kj) U† and U (i E_jk - i E_kj) U†
                let a = outer_entries(&u[j], &u[k]);
                let b = outer_entries(&u[k], &u[j]);
                columns.push(a.iter().zip(&b).map(|(x, y)| x + y).collect());
                let ia: Vec<C> = u[j].iter().map(|z| z * C::new(0.0, 1.0)).collect();
                let ib: Vec<C> = u[k].iter().map(|z| z * C::new(0.0, -1.0)).collect();
                let a = outer_entries(&ia, &u[k]);
                let b = outer_entries(&ib, &u[j]);
                columns.push(a.iter().zip(&b).map(|(x, y)| x + y).collect());
            }
        }
    }
    let unknowns = columns.len();
    unknowns - rank(columns, 1e-8)
}

/// Smallest eigenvalue of a Hermitian matrix by bisection on the number
/// of negative pivots of `A - s I` (Sylvester inertia via LDL†).
pub fn min_eigenvalue(a: &HermitianOperator<f64>) -> f64 {
    let d = a.dim();
    let bound: f64 = (0..d)
        .map(|j| (0..d).map(|k| a.get(j, k).norm()).sum::<f64>())
        .fold(0.0, f64::max);
    let negatives = |s: f64| -> usize {
        let mut m: Vec<Vec<C>> = (0..d)
            .map(|j| (0..d).map(|k| a.get(j, k) - if j == k { C::new(s, 0.0) } else { C::new(0.0, 0.0) }).collect())
            .collect();
        let mut count = 0;
        for p in 0..d {
            let mut piv = m[p][p].re;
            if piv == 0.0 {
                piv = -1e-300;
            }
            if piv < 0.0 {
                count += 1;
            }
            for i in p + 1..d {
                let f = m[i][p] / piv;
                for j in p + 1..d {
                    let t = f * m[p][j];
                    m[i][j] -= t;
                }
            }
        }
        count
    };
    let (mut lo, mut hi) = (-bound - 1.0, bound + 1.0);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if negatives(mid) >= 1 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    0.5 * (lo + hi)
}

pub fn random_hermitian(rng: &mut povm_realize::RandomStream, d: usize) -> HermitianOperator<f64> {
    let a = CMatrix::from_fn(d, d, |_, _| C::new(rng.normal(), rng.normal()));
    HermitianOperator::project(&a).unwrap()
}
