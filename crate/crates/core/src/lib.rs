//! Extremal decomposition of finite POVMs and two-stage realization of
//! continuous-outcome POVMs.
//!
//! The numerical core is generic over [`Real`] (`f32` or `f64`); the
//! `*F64` / `*F32` aliases below fix the scalar type.

// `!(x <= tol)` is used on purpose so that NaN fails the check
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod extremal;
pub mod families;
pub mod fixtures;
pub mod matops;
pub mod povm;
pub mod realize;
pub mod rng;
pub mod scalar;

pub use error::{Error, Result};
pub use extremal::{
    decompose_extremal, default_max_leaves, extremality_check, max_steps, split, ExtremalityReport,
    PerturbationDirection, Split,
};
pub use matops::{CMatrix, Eigen, HermitianOperator, SupportBasis};
pub use povm::{
    born_probabilities, expectation, mixture_reconstruct, reconstruction_error, validate_finite, Axis,
    ComponentCertificate, ContinuousPovm, DensityState, FinitePovm, MixtureDecomposition, OutcomePoint,
    OutcomeSpace, QuadratureNode, ValidationReport, Violation,
};
pub use realize::{
    compare_distributions, discretize, realize_continuous, sample_direct, sample_two_stage, Discretized,
    RealizationResult, SampleRecord, TvDistance,
};
pub use rng::RandomStream;
pub use scalar::{Real, Tolerances};

pub type HermitianOperatorF64 = HermitianOperator<f64>;
pub type FinitePovmF64 = FinitePovm<f64>;
pub type ContinuousPovmF64 = ContinuousPovm<f64>;
pub type DensityStateF64 = DensityState<f64>;
pub type MixtureDecompositionF64 = MixtureDecomposition<f64>;
pub type RealizationResultF64 = RealizationResult<f64>;

pub type HermitianOperatorF32 = HermitianOperator<f32>;
pub type FinitePovmF32 = FinitePovm<f32>;
pub type ContinuousPovmF32 = ContinuousPovm<f32>;
pub type DensityStateF32 = DensityState<f32>;
pub type MixtureDecompositionF32 = MixtureDecomposition<f32>;
pub type RealizationResultF32 = RealizationResult<f32>;
