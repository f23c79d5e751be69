//! Scalar abstraction shared by every numerical routine in the crate.

use std::fmt::{Debug, Display, LowerExp};
use std::iter::Sum;

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Numerical tolerances used by validation, rank decisions and the
/// decomposition engine. Values are stored as `f64` and converted at use.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Relative PSD slack: min eigenvalue >= -psd * max(1, |A|).
    pub psd: f64,
    /// Relative rank cutoff against the largest eigenvalue.
    pub rank: f64,
    /// Orthonormality of support bases.
    pub orth: f64,
    /// Effects with smaller trace are pruned.
    pub drop: f64,
    /// Normalization slack, multiplied by sqrt(d).
    pub norm: f64,
    /// Absolute coordinate tolerance for outcome points.
    pub point: f64,
    /// Quadrature mass slack, multiplied by d.
    pub meas: f64,
    /// Pointwise density PSD / unit-trace slack.
    pub density: f64,
    /// Unit-trace slack for density states.
    pub state_trace: f64,
    /// Allowed negative Born probability before clamping.
    pub born_negative: f64,
    /// Allowed deviation of summed Born probabilities from one.
    pub born_sum: f64,
    /// Per-effect reconstruction residual of a decomposition.
    pub reconstruction: f64,
    /// Singular-value cutoff for the extremality kernel, relative to sigma_max.
    pub kernel: f64,
    /// Mixture weights must sum to one within this slack.
    pub weights: f64,
    /// Zero-sum slack of a perturbation direction, multiplied by sqrt(d).
    pub zero_sum: f64,
    /// Allowed leakage of a perturbation outside the effect support (relative).
    pub support_leak: f64,
}

impl Tolerances {
    pub const DOUBLE: Tolerances = Tolerances {
        psd: 1e-10,
        rank: 1e-9,
        orth: 1e-12,
        drop: 1e-12,
        norm: 1e-9,
        point: 1e-9,
        meas: 1e-6,
        density: 1e-9,
        state_trace: 1e-12,
        born_negative: 1e-12,
        born_sum: 1e-9,
        reconstruction: 1e-8,
        kernel: 1e-10,
        weights: 1e-12,
        zero_sum: 1e-10,
        support_leak: 1e-9,
    };

    pub const SINGLE: Tolerances = Tolerances {
        psd: 1e-5,
        rank: 1e-4,
        orth: 1e-5,
        drop: 1e-6,
        norm: 1e-4,
        point: 1e-4,
        meas: 1e-4,
        density: 1e-4,
        state_trace: 1e-5,
        born_negative: 1e-5,
        born_sum: 1e-4,
        reconstruction: 1e-3,
        kernel: 1e-4,
        weights: 1e-5,
        zero_sum: 1e-4,
        support_leak: 1e-3,
    };
}

/// Real floating-point scalar (`f32` or `f64`).
pub trait Real:
    Float
    + FloatConst
    + FromPrimitive
    + ToPrimitive
    + Debug
    + Display
    + LowerExp
    + Default
    + Sum
    + Send
    + Sync
    + 'static
{
    const TOL: Tolerances;

    /// Converts an `f64` literal into this scalar type.
    fn of(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable")
    }

    fn of_usize(n: usize) -> Self {
        Self::from_usize(n).expect("usize representable")
    }

    fn to_f64_lossy(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Real for f64 {
    const TOL: Tolerances = Tolerances::DOUBLE;
}

impl Real for f32 {
    const TOL: Tolerances = Tolerances::SINGLE;
}
