use num_complex::Complex;

use super::finite::FinitePovm;
use crate::error::{Error, Result};
use crate::matops::{eig_hermitian, norm, psd_from_eigen, HermitianOperator};
use crate::scalar::Real;

/// Unit-trace positive semidefinite operator.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityState<T> {
    matrix: HermitianOperator<T>,
}

impl<T: Real> DensityState<T> {
    pub fn new(matrix: HermitianOperator<T>) -> Result<Self, T> {
        let e = eig_hermitian(&matrix);
        if !psd_from_eigen(&e, T::of(T::TOL.psd)) {
            return Err(Error::Domain(format!(
                "density matrix is not positive (min eigenvalue {})",
                e.min()
            )));
        }
        let tr = matrix.trace();
        if !((tr - T::one()).abs() <= T::of(T::TOL.state_trace)) {
            return Err(Error::Domain(format!("density matrix has trace {tr}, expected 1")));
        }
        Ok(Self { matrix })
    }

    /// `|ψ><ψ|/<ψ|ψ>`.
    pub fn pure(psi: &[Complex<T>]) -> Result<Self, T> {
        let n = norm(psi);
        if psi.is_empty() || !(n > T::zero()) {
            return Err(Error::InvalidInput("state vector must be non-zero".into()));
        }
        let unit: Vec<_> = psi.iter().map(|z| z.unscale(n)).collect();
        Self::new(HermitianOperator::outer(&unit))
    }

    /// `I/d`.
    pub fn maximally_mixed(dim: usize) -> Self {
        Self {
            matrix: HermitianOperator::identity(dim).scale(T::one() / T::of_usize(dim)),
        }
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn matrix(&self) -> &HermitianOperator<T> {
        &self.matrix
    }
}

/// Born rule `p_i = Tr[ρ P_i]`, clamped to `[0, 1]`.
pub fn born_probabilities<T: Real>(rho: &DensityState<T>, p: &FinitePovm<T>) -> Result<Vec<T>, T> {
    if rho.dim() != p.dim() {
        return Err(Error::DimensionMismatch {
            expected: p.dim(),
            found: rho.dim(),
        });
    }
    let raw: Vec<T> = p.effects().iter().map(|e| rho.matrix().trace_product(e)).collect();
    // values down to -born_negative are rounding and get clamped; anything
    // well below that means the POVM itself is not positive
    let neg = T::of(T::TOL.born_sum);
    if let Some((k, v)) = raw.iter().enumerate().find(|(_, v)| !(**v >= -neg)) {
        return Err(Error::Domain(format!("outcome {k} has negative probability {v}")));
    }
    let total: T = raw.iter().copied().sum();
    if !((total - T::one()).abs() <= T::of(T::TOL.born_sum)) {
        return Err(Error::Domain(format!("probabilities sum to {total}")));
    }
    Ok(raw.into_iter().map(|v| v.max(T::zero()).min(T::one())).collect())
}
