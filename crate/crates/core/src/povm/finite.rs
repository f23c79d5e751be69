use std::fmt;

use super::outcome::{OutcomePoint, OutcomeSpace};
use crate::error::{Error, Result};
use crate::matops::{eig_hermitian, sum_operators, HermitianOperator};
use crate::scalar::Real;

/// A finite POVM: outcome points paired with effects.
///
/// Construction checks shapes and prunes effects whose Frobenius norm is
/// below the drop tolerance (for a PSD effect that bounds the trace), but
/// does not require positivity or normalization; use
/// [`validate_finite`] or [`FinitePovm::new`] for that.
#[derive(Debug, Clone, PartialEq)]
pub struct FinitePovm<T> {
    dim: usize,
    space: OutcomeSpace<T>,
    outcomes: Vec<OutcomePoint<T>>,
    effects: Vec<HermitianOperator<T>>,
}

impl<T: Real> FinitePovm<T> {
    /// Shape checks and pruning only.
    pub fn from_parts(
        space: OutcomeSpace<T>,
        outcomes: Vec<OutcomePoint<T>>,
        effects: Vec<HermitianOperator<T>>,
    ) -> Result<Self, T> {
        if outcomes.len() != effects.len() {
            return Err(Error::InvalidInput(format!(
                "{} outcome points but {} effects",
                outcomes.len(),
                effects.len()
            )));
        }
        let dim = effects
            .first()
            .map(HermitianOperator::dim)
            .ok_or_else(|| Error::InvalidInput("a POVM needs at least one effect".into()))?;
        if let Some(bad) = effects.iter().find(|e| e.dim() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: bad.dim(),
            });
        }
        if let Some(bad) = outcomes.iter().find(|p| p.ambient_dim() != space.ambient_dim()) {
            return Err(Error::DimensionMismatch {
                expected: space.ambient_dim(),
                found: bad.ambient_dim(),
            });
        }
        let drop = T::of(T::TOL.drop);
        let (outcomes, effects): (Vec<_>, Vec<_>) = outcomes
            .into_iter()
            .zip(effects)
            .filter(|(_, e)| e.frobenius_norm() >= drop)
            .unzip();
        if effects.is_empty() {
            return Err(Error::InvalidInput("every effect is negligible".into()));
        }
        Ok(Self {
            dim,
            space,
            outcomes,
            effects,
        })
    }

    /// Like [`FinitePovm::from_parts`] but rejects POVMs that fail validation.
    pub fn new(
        space: OutcomeSpace<T>,
        outcomes: Vec<OutcomePoint<T>>,
        effects: Vec<HermitianOperator<T>>,
    ) -> Result<Self, T> {
        let povm = Self::from_parts(space, outcomes, effects)?;
        let report = validate_finite(&povm);
        if report.is_valid() {
            Ok(povm)
        } else {
            Err(Error::Domain(format!("invalid POVM: {report}")))
        }
    }

    /// Effects placed at the integer points `0, 1, ..., n-1` of the real line.
    pub fn indexed(effects: Vec<HermitianOperator<T>>) -> Result<Self, T> {
        let outcomes = (0..effects.len()).map(|k| OutcomePoint::scalar(T::of_usize(k))).collect();
        Self::new(OutcomeSpace::unbounded(1), outcomes, effects)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.effects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.effects.is_empty()
    }

    pub fn space(&self) -> &OutcomeSpace<T> {
        &self.space
    }

    pub fn outcomes(&self) -> &[OutcomePoint<T>] {
        &self.outcomes
    }

    pub fn effects(&self) -> &[HermitianOperator<T>] {
        &self.effects
    }

    pub fn effect_sum(&self) -> HermitianOperator<T> {
        sum_operators(&self.effects).expect("non-empty POVM")
    }

    /// `|sum_i P_i - I|_F`.
    pub fn normalization_residual(&self) -> T {
        self.effect_sum()
            .sub(&HermitianOperator::identity(self.dim))
            .frobenius_norm()
    }

    /// Effect attached to `point`, if any.
    pub fn effect_at(&self, point: &OutcomePoint<T>) -> Option<&HermitianOperator<T>> {
        self.space
            .locate(&self.outcomes, point, T::of(T::TOL.point))
            .map(|k| &self.effects[k])
    }
}

/// One violated POVM condition and the size of the violation.
#[derive(Debug, Clone, PartialEq)]
pub enum Violation<T> {
    /// Negative eigenvalue beyond tolerance; residual is `-λ_min`.
    NotPositive { index: usize, residual: T },
    /// `|sum P_i - I|_F` above `τ_norm sqrt(d)`.
    Normalization { residual: T },
    DuplicateOutcome { first: usize, second: usize },
    OutsideOutcomeSpace { index: usize },
}

impl<T: Real> Violation<T> {
    pub fn residual(&self) -> T {
        match self {
            Violation::NotPositive { residual, .. } | Violation::Normalization { residual } => *residual,
            Violation::DuplicateOutcome { .. } | Violation::OutsideOutcomeSpace { .. } => T::zero(),
        }
    }
}

impl<T: Real> fmt::Display for Violation<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NotPositive { index, residual } => {
                write!(f, "positivity: effect {index} has negative eigenvalue, residual {residual:e}")
            }
            Violation::Normalization { residual } => {
                write!(f, "normalization: effects do not sum to identity, residual {residual:e}")
            }
            Violation::DuplicateOutcome { first, second } => {
                write!(f, "outcomes: points {first} and {second} coincide")
            }
            Violation::OutsideOutcomeSpace { index } => {
                write!(f, "outcomes: point {index} lies outside the outcome space")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct ValidationReport<T> {
    pub violations: Vec<Violation<T>>,
}

impl<T: Real> ValidationReport<T> {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl<T: Real> fmt::Display for ValidationReport<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let lines: Vec<String> = self.violations.iter().map(ToString::to_string).collect();
        f.write_str(&lines.join("; "))
    }
}

/// Checks positivity, normalization and outcome-point sanity.
pub fn validate_finite<T: Real>(p: &FinitePovm<T>) -> ValidationReport<T> {
    let tol = T::TOL;
    let mut violations = Vec::new();
    for (index, effect) in p.effects.iter().enumerate() {
        let e = eig_hermitian(effect);
        let slack = T::of(tol.psd) * T::one().max(e.spectral_norm());
        if e.min() < -slack {
            violations.push(Violation::NotPositive {
                index,
                residual: -e.min(),
            });
        }
    }
    let residual = p.normalization_residual();
    if !(residual <= T::of(tol.norm) * T::of_usize(p.dim).sqrt()) {
        violations.push(Violation::Normalization { residual });
    }
    let point_tol = T::of(tol.point);
    for (index, point) in p.outcomes.iter().enumerate() {
        if !p.space.contains(point, point_tol) {
            violations.push(Violation::OutsideOutcomeSpace { index });
        }
        if let Some(first) = p.space.locate(&p.outcomes[..index], point, point_tol) {
            violations.push(Violation::DuplicateOutcome { first, second: index });
        }
    }
    ValidationReport { violations }
}
