use super::finite::FinitePovm;
use super::outcome::OutcomePoint;
use crate::error::{Error, Result};
use crate::matops::HermitianOperator;
use crate::scalar::Real;

/// Per-component record attached to a decomposition.
#[derive(Debug, Clone, PartialEq)]
pub struct ComponentCertificate<T> {
    /// Kernel of the perturbation constraint is trivial under the standard cutoff.
    pub extremal: bool,
    pub kernel_dimension: usize,
    /// Outcome count is at most `d²`.
    pub max_outcomes_check: bool,
    /// Frobenius mass of negative eigenvalues removed while building the component.
    pub clipping_residual: T,
}

/// Convex combination `Σ_x p_x E^(x)` of finite POVMs.
#[derive(Debug, Clone, PartialEq)]
pub struct MixtureDecomposition<T> {
    weights: Vec<T>,
    components: Vec<FinitePovm<T>>,
    certificates: Vec<ComponentCertificate<T>>,
}

impl<T: Real> MixtureDecomposition<T> {
    pub fn new(
        weights: Vec<T>,
        components: Vec<FinitePovm<T>>,
        certificates: Vec<ComponentCertificate<T>>,
    ) -> Result<Self, T> {
        if weights.is_empty() || weights.len() != components.len() || weights.len() != certificates.len() {
            return Err(Error::InvalidInput(format!(
                "{} weights, {} components, {} certificates",
                weights.len(),
                components.len(),
                certificates.len()
            )));
        }
        if let Some(w) = weights.iter().find(|w| !(**w > T::zero())) {
            return Err(Error::InvalidInput(format!("non-positive weight {w}")));
        }
        let total: T = weights.iter().copied().sum();
        if !((total - T::one()).abs() <= T::of(T::TOL.weights)) {
            return Err(Error::InvalidInput(format!("weights sum to {total}")));
        }
        let dim = components[0].dim();
        if let Some(c) = components.iter().find(|c| c.dim() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: c.dim(),
            });
        }
        for (x, (c, cert)) in components.iter().zip(&certificates).enumerate() {
            if cert.extremal && c.len() > dim * dim {
                return Err(Error::Consistency(format!(
                    "component {x} is certified extremal but has {} > d² outcomes",
                    c.len()
                )));
            }
        }
        Ok(Self {
            weights,
            components,
            certificates,
        })
    }

    pub fn dim(&self) -> usize {
        self.components[0].dim()
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn weights(&self) -> &[T] {
        &self.weights
    }

    pub fn components(&self) -> &[FinitePovm<T>] {
        &self.components
    }

    pub fn certificates(&self) -> &[ComponentCertificate<T>] {
        &self.certificates
    }
}

/// `Σ_x p_x E^(x)_ω` for every reference point `ω`, zero where no
/// component has an outcome there.
pub fn reconstruct_effects<T: Real>(
    d: &MixtureDecomposition<T>,
    reference_outcomes: &[OutcomePoint<T>],
) -> Result<Vec<HermitianOperator<T>>, T> {
    let dim = d.dim();
    let tol = T::of(T::TOL.point);
    let space = d.components[0].space();
    let mut effects = vec![HermitianOperator::zeros(dim); reference_outcomes.len()];
    for (w, c) in d.weights.iter().zip(&d.components) {
        for (point, effect) in c.outcomes().iter().zip(c.effects()) {
            let k = space.locate(reference_outcomes, point, tol).ok_or_else(|| {
                Error::Consistency(format!(
                    "component outcome {:?} has no match among the reference outcomes",
                    point.coordinates
                ))
            })?;
            effects[k] = effects[k].add_scaled(*w, effect);
        }
    }
    Ok(effects)
}

/// Rebuilds the mixed POVM on the reference outcome list.
pub fn mixture_reconstruct<T: Real>(
    d: &MixtureDecomposition<T>,
    reference_outcomes: &[OutcomePoint<T>],
) -> Result<FinitePovm<T>, T> {
    let effects = reconstruct_effects(d, reference_outcomes)?;
    FinitePovm::from_parts(d.components[0].space().clone(), reference_outcomes.to_vec(), effects)
}

/// Largest per-effect Frobenius residual between the mixture and `target`.
pub fn reconstruction_error<T: Real>(d: &MixtureDecomposition<T>, target: &FinitePovm<T>) -> Result<T, T> {
    if d.dim() != target.dim() {
        return Err(Error::DimensionMismatch {
            expected: target.dim(),
            found: d.dim(),
        });
    }
    let rebuilt = reconstruct_effects(d, target.outcomes())?;
    Ok(rebuilt
        .iter()
        .zip(target.effects())
        .map(|(a, b)| a.sub(b).frobenius_norm())
        .fold(T::zero(), T::max))
}
