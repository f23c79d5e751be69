//! Finite and continuous POVMs, density states, the Born rule, expectation
//! values and convex mixtures of finite POVMs.

mod continuous;
mod finite;
mod mixture;
mod outcome;
mod state;

pub use continuous::{expectation, ContinuousPovm, DensityFn, QuadratureNode};
pub use finite::{validate_finite, FinitePovm, ValidationReport, Violation};
pub use mixture::{
    mixture_reconstruct, reconstruct_effects, reconstruction_error, ComponentCertificate,
    MixtureDecomposition,
};
pub use outcome::{Axis, OutcomePoint, OutcomeSpace};
pub use state::{born_probabilities, DensityState};
