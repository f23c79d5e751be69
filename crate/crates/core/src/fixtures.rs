//! Finite POVMs used throughout the examples, tests and the CLI corpus,
//! plus a seeded generator of random POVMs.

use num_complex::Complex;

use crate::error::Result;
use crate::families::bloch_projector;
use crate::matops::{eig_hermitian, sum_operators, CMatrix, HermitianOperator};
use crate::povm::FinitePovm;
use crate::rng::RandomStream;
use crate::scalar::Real;

/// `{|k><k|}` for `k = 0..d`.
pub fn projective_basis<T: Real>(d: usize) -> FinitePovm<T> {
    let effects = (0..d)
        .map(|k| {
            let mut v = vec![T::zero(); d];
            v[k] = T::one();
            HermitianOperator::diag(&v)
        })
        .collect();
    FinitePovm::indexed(effects).expect("projective basis is a POVM")
}

/// Real qubit state `cos a |0> + sin a |1>`.
pub fn real_qubit<T: Real>(angle: T) -> [Complex<T>; 2] {
    let (s, c) = angle.sin_cos();
    [Complex::new(c, T::zero()), Complex::new(s, T::zero())]
}

/// Trine effects `(2/3)|ψ_k><ψ_k|` with real states at 0°, 120°, 240°.
pub fn trine_effects<T: Real>() -> Vec<HermitianOperator<T>> {
    (0..3)
        .map(|k| {
            let psi = real_qubit(T::TAU() * T::of_usize(k) / T::of(3.0));
            HermitianOperator::outer(&psi).scale(T::of(2.0) / T::of(3.0))
        })
        .collect()
}

pub fn trine<T: Real>() -> FinitePovm<T> {
    FinitePovm::indexed(trine_effects()).expect("trine is a POVM")
}

/// Tetrahedral qubit SIC POVM, effects `(I + n_k·σ)/4`.
pub fn qubit_sic<T: Real>() -> FinitePovm<T> {
    let third = T::one() / T::of(3.0);
    let a = T::of(2.0) * T::SQRT_2() / T::of(3.0);
    let b = T::SQRT_2() / T::of(3.0);
    let c = (T::of(2.0) / T::of(3.0)).sqrt();
    let vectors = [
        [T::zero(), T::zero(), T::one()],
        [a, T::zero(), -third],
        [-b, c, -third],
        [-b, -c, -third],
    ];
    let effects = vectors.iter().map(|n| bloch_projector(*n).scale(T::of(0.5))).collect();
    FinitePovm::indexed(effects).expect("SIC is a POVM")
}

/// `{(3/4)|0><0| + (1/4)|1><1|, (1/4)|0><0| + (3/4)|1><1|}`.
pub fn smeared_two_outcome<T: Real>() -> FinitePovm<T> {
    let hi = T::of(0.75);
    let lo = T::of(0.25);
    FinitePovm::indexed(vec![HermitianOperator::diag(&[hi, lo]), HermitianOperator::diag(&[lo, hi])])
        .expect("smeared POVM is a POVM")
}

/// `(1 - ε) trine_k + ε I/3`.
pub fn depolarized_trine<T: Real>(eps: T) -> FinitePovm<T> {
    let noise = HermitianOperator::identity(2).scale(eps / T::of(3.0));
    let effects = trine_effects::<T>()
        .into_iter()
        .map(|e| e.scale(T::one() - eps).add(&noise))
        .collect();
    FinitePovm::indexed(effects).expect("depolarized trine is a POVM")
}

/// `{I}`.
pub fn identity_povm<T: Real>(d: usize) -> FinitePovm<T> {
    FinitePovm::indexed(vec![HermitianOperator::identity(d)]).expect("identity is a POVM")
}

/// Random complex `d x r` Gaussian matrix.
fn gaussian_matrix<T: Real>(rng: &mut RandomStream, d: usize, r: usize) -> CMatrix<T> {
    CMatrix::from_fn(d, r, |_, _| Complex::new(T::of(rng.normal()), T::of(rng.normal())))
}

/// Random `n`-outcome POVM: `G_i = A_i A_i†` with Gaussian `A_i` of random
/// rank `1..=d` (total rank at least `d`), then `P_i = S^{-1/2} G_i S^{-1/2}` with `S = Σ G_i`.
pub fn random_povm<T: Real>(d: usize, n: usize, rng: &mut RandomStream) -> Result<FinitePovm<T>, T> {
    let mut total_rank = 0;
    let raw: Vec<HermitianOperator<T>> = (0..n)
        .map(|k| {
            let mut r = 1 + (rng.next_u64() % d as u64) as usize;
            // the summed Gram matrix must be invertible
            if k + 1 == n {
                r = r.max(d.saturating_sub(total_rank)).min(d);
            }
            total_rank += r;
            let a = gaussian_matrix::<T>(rng, d, r);
            HermitianOperator::project(&a.matmul(&a.adjoint())).expect("square")
        })
        .collect();
    let s = sum_operators(&raw).expect("n >= 1");
    let inv_sqrt = eig_hermitian(&s).map_values(|l| T::one() / l.sqrt());
    let effects = raw.iter().map(|g| g.congruence(inv_sqrt.matrix())).collect();
    FinitePovm::indexed(effects)
}

/// Random pure state.
pub fn random_pure_state<T: Real>(d: usize, rng: &mut RandomStream) -> Vec<Complex<T>> {
    (0..d).map(|_| Complex::new(T::of(rng.normal()), T::of(rng.normal()))).collect()
}
