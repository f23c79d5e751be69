use std::fmt;
use std::sync::Arc;

use super::outcome::{OutcomePoint, OutcomeSpace};
use super::state::DensityState;
use crate::error::{Error, Result};
use crate::matops::{eig_hermitian, HermitianOperator};
use crate::scalar::Real;

/// Pointwise POVM density `ω ↦ M(ω)`. Must be pure.
pub type DensityFn<T> = Arc<dyn Fn(&OutcomePoint<T>) -> HermitianOperator<T> + Send + Sync>;

/// Quadrature node of the scalar measure `μ`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureNode<T> {
    pub point: OutcomePoint<T>,
    pub weight: T,
}

/// Continuous-outcome POVM `P(B) = ∫_B μ(dω) M(ω)` represented by a
/// quadrature of `μ` (total mass `d`) and a unit-trace PSD density `M`.
#[derive(Clone)]
pub struct ContinuousPovm<T> {
    name: String,
    dim: usize,
    space: OutcomeSpace<T>,
    nodes: Vec<QuadratureNode<T>>,
    density: DensityFn<T>,
    truncation_mass: T,
}

impl<T: Real> fmt::Debug for ContinuousPovm<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ContinuousPovm")
            .field("name", &self.name)
            .field("dim", &self.dim)
            .field("space", &self.space)
            .field("nodes", &self.nodes.len())
            .field("truncation_mass", &self.truncation_mass)
            .finish()
    }
}

impl<T: Real> ContinuousPovm<T> {
    /// Validates the quadrature mass and the density at every node.
    pub fn new(
        name: impl Into<String>,
        dim: usize,
        space: OutcomeSpace<T>,
        nodes: Vec<QuadratureNode<T>>,
        density: DensityFn<T>,
    ) -> Result<Self, T> {
        Self::with_truncation(name, dim, space, nodes, density, T::zero())
    }

    /// Family obtained by truncating a noncompact outcome space;
    /// `truncation_mass` is the measure mass discarded outside the window.
    pub fn with_truncation(
        name: impl Into<String>,
        dim: usize,
        space: OutcomeSpace<T>,
        nodes: Vec<QuadratureNode<T>>,
        density: DensityFn<T>,
        truncation_mass: T,
    ) -> Result<Self, T> {
        let c = Self {
            name: name.into(),
            dim,
            space,
            nodes,
            density,
            truncation_mass,
        };
        c.validate()?;
        Ok(c)
    }

    fn validate(&self) -> Result<(), T> {
        let tol = T::TOL;
        let d = T::of_usize(self.dim);
        if self.dim == 0 {
            return Err(Error::InvalidInput("dimension must be at least 1".into()));
        }
        if self.nodes.is_empty() {
            return Err(Error::InvalidInput("quadrature has no nodes".into()));
        }
        if !(self.truncation_mass >= T::zero() && self.truncation_mass < d) {
            return Err(Error::InvalidInput(format!(
                "truncation mass {} outside [0, d)",
                self.truncation_mass
            )));
        }
        for (j, node) in self.nodes.iter().enumerate() {
            if !(node.weight > T::zero() && node.weight.is_finite()) {
                return Err(Error::InvalidInput(format!("node {j} has weight {}", node.weight)));
            }
            if !self.space.contains(&node.point, T::of(tol.point)) {
                return Err(Error::InvalidInput(format!("node {j} lies outside the outcome space")));
            }
        }
        let mass: T = self.nodes.iter().map(|n| n.weight).sum();
        if !((mass - d).abs() <= T::of(tol.meas) * d) {
            return Err(Error::Domain(format!("quadrature mass {mass} differs from d = {}", self.dim)));
        }
        let slack = T::of(tol.density);
        for (j, node) in self.nodes.iter().enumerate() {
            let m = (self.density)(&node.point);
            if m.dim() != self.dim {
                return Err(Error::DimensionMismatch {
                    expected: self.dim,
                    found: m.dim(),
                });
            }
            let tr = m.trace();
            if !((tr - T::one()).abs() <= slack) {
                return Err(Error::Domain(format!("density at node {j} has trace {tr}")));
            }
            let e = eig_hermitian(&m);
            if e.min() < -slack {
                return Err(Error::Domain(format!(
                    "density at node {j} has negative eigenvalue {}",
                    e.min()
                )));
            }
        }
        Ok(())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn space(&self) -> &OutcomeSpace<T> {
        &self.space
    }

    pub fn nodes(&self) -> &[QuadratureNode<T>] {
        &self.nodes
    }

    pub fn truncation_mass(&self) -> T {
        self.truncation_mass
    }

    pub fn density(&self, point: &OutcomePoint<T>) -> HermitianOperator<T> {
        (self.density)(point)
    }

    pub fn total_mass(&self) -> T {
        self.nodes.iter().map(|n| n.weight).sum()
    }
}

/// Quadrature form of `E_ρ(f) = ∫ μ(dω) f(ω) Tr[ρ M(ω)]`.
pub fn expectation<T: Real>(
    rho: &DensityState<T>,
    f: impl Fn(&OutcomePoint<T>) -> T,
    c: &ContinuousPovm<T>,
) -> Result<T, T> {
    if rho.dim() != c.dim() {
        return Err(Error::DimensionMismatch {
            expected: c.dim(),
            found: rho.dim(),
        });
    }
    let mut acc = T::zero();
    for (j, node) in c.nodes.iter().enumerate() {
        let value = f(&node.point);
        if !value.is_finite() {
            return Err(Error::InvalidInput(format!("test function is not finite at node {j}")));
        }
        let prob = rho.matrix().trace_product(&c.density(&node.point));
        acc = acc + node.weight * value * prob;
    }
    Ok(acc)
}
