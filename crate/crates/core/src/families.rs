//! Continuous-outcome POVM families shipped with the crate.
//!
//! * `phase`: qubit covariant phase measurement on the circle,
//!   `M(θ) = |e(θ)><e(θ)|` with `|e(θ)> = (|0> + e^{iθ}|1>)/√2` and
//!   `μ(dθ) = dθ/π`.
//! * `sphere`: qubit spin-coherent measurement `M(n) = (I + n·σ)/2` with the
//!   uniform measure of mass 2 on the sphere.
//! * `line`: a noncompact family on the real line. The phase density is
//!   pulled back through the Gaussian CDF, `θ(x) = 2π Φ(x/σ)`, with
//!   `μ(dx) = 2 N(0, σ²)(dx)`; the outcome space is truncated to
//!   `[-L, L]` and the discarded mass is reported.
//! * `trivial`: a single node carrying `I/d` with weight `d`.

use std::sync::Arc;

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::matops::HermitianOperator;
use crate::povm::{Axis, ContinuousPovm, OutcomePoint, OutcomeSpace, QuadratureNode};
use crate::rng::RandomStream;
use crate::scalar::Real;

/// `|e(θ)><e(θ)|`.
pub fn phase_projector<T: Real>(theta: T) -> HermitianOperator<T> {
    let h = T::of(0.5);
    let (s, c) = theta.sin_cos();
    HermitianOperator::from_rows(&[
        vec![Complex::new(h, T::zero()), Complex::new(h * c, -h * s)],
        vec![Complex::new(h * c, h * s), Complex::new(h, T::zero())],
    ])
    .expect("2x2 rows")
}

/// `(I + n·σ)/2` for a unit Bloch vector.
pub fn bloch_projector<T: Real>(n: [T; 3]) -> HermitianOperator<T> {
    let h = T::of(0.5);
    HermitianOperator::from_rows(&[
        vec![Complex::new(h * (T::one() + n[2]), T::zero()), Complex::new(h * n[0], -h * n[1])],
        vec![Complex::new(h * n[0], h * n[1]), Complex::new(h * (T::one() - n[2]), T::zero())],
    ])
    .expect("2x2 rows")
}

fn phase_space<T: Real>() -> OutcomeSpace<T> {
    OutcomeSpace::new(vec![Axis::periodic(T::zero(), T::TAU())])
}

/// Phase POVM on `m` equally spaced angles with weights `2/m`.
pub fn phase<T: Real>(m: usize) -> Result<ContinuousPovm<T>, T> {
    if m < 2 {
        return Err(Error::InvalidInput("phase family needs at least 2 nodes".into()));
    }
    let w = T::of(2.0) / T::of_usize(m);
    let nodes = (0..m)
        .map(|j| QuadratureNode {
            point: OutcomePoint::scalar(T::TAU() * T::of_usize(j) / T::of_usize(m)),
            weight: w,
        })
        .collect();
    let density = Arc::new(|p: &OutcomePoint<T>| phase_projector(p.coordinates[0]));
    ContinuousPovm::new("phase", 2, phase_space(), nodes, density)
}

fn sphere_space<T: Real>() -> OutcomeSpace<T> {
    OutcomeSpace::new(vec![Axis::bounded(T::zero(), T::PI()), Axis::periodic(T::zero(), T::TAU())])
}

fn sphere_density<T: Real>(p: &OutcomePoint<T>) -> HermitianOperator<T> {
    let (st, ct) = p.coordinates[0].sin_cos();
    let (sp, cp) = p.coordinates[1].sin_cos();
    bloch_projector([st * cp, st * sp, ct])
}

fn sphere_from_points<T: Real>(name: &str, points: Vec<(T, T)>) -> Result<ContinuousPovm<T>, T> {
    let n = points.len();
    if n == 0 {
        return Err(Error::InvalidInput("sphere family needs at least 1 node".into()));
    }
    let w = T::of(2.0) / T::of_usize(n);
    let nodes = points
        .into_iter()
        .map(|(theta, phi)| QuadratureNode {
            point: OutcomePoint::new(vec![theta, phi]),
            weight: w,
        })
        .collect();
    ContinuousPovm::new(name, 2, sphere_space(), nodes, Arc::new(sphere_density))
}

/// Spin-coherent POVM on a Fibonacci lattice of `n` points, coordinates
/// `(polar, azimuth)`.
pub fn sphere_fibonacci<T: Real>(n: usize) -> Result<ContinuousPovm<T>, T> {
    let golden = std::f64::consts::PI * (3.0 - 5f64.sqrt());
    let two_pi = std::f64::consts::TAU;
    let points = (0..n)
        .map(|k| {
            let z = 1.0 - (2.0 * k as f64 + 1.0) / n as f64;
            let phi = (golden * k as f64).rem_euclid(two_pi);
            (T::of(z.acos()), T::of(phi))
        })
        .collect();
    sphere_from_points("sphere", points)
}

/// Spin-coherent POVM on `n` uniformly random points.
pub fn sphere_random<T: Real>(n: usize, seed: u64) -> Result<ContinuousPovm<T>, T> {
    let mut rng = RandomStream::new(seed);
    let points = (0..n)
        .map(|_| {
            let z = 1.0 - 2.0 * rng.uniform();
            let phi = std::f64::consts::TAU * rng.uniform();
            (T::of(z.acos()), T::of(phi))
        })
        .collect();
    sphere_from_points("sphere-random", points)
}

/// Standard normal CDF.
fn normal_cdf(z: f64) -> f64 {
    0.5 * libm::erfc(-z / std::f64::consts::SQRT_2)
}

/// Gaussian-weighted line family truncated to `[-L, L]` with
/// `L = half_width * sigma`, integrated with the trapezoid rule on `nodes`
/// equally spaced points.
pub fn line<T: Real>(sigma: f64, half_width: f64, nodes: usize) -> Result<ContinuousPovm<T>, T> {
    if !(sigma > 0.0 && half_width > 0.0) || nodes < 2 {
        return Err(Error::InvalidInput(
            "line family needs sigma > 0, half width > 0 and at least 2 nodes".into(),
        ));
    }
    let l = half_width * sigma;
    let h = 2.0 * l / (nodes - 1) as f64;
    let norm = 1.0 / (sigma * (2.0 * std::f64::consts::PI).sqrt());
    let quad = (0..nodes)
        .map(|j| {
            let x = -l + h * j as f64;
            let end = if j == 0 || j + 1 == nodes { 0.5 } else { 1.0 };
            let weight = end * h * 2.0 * norm * (-0.5 * (x / sigma).powi(2)).exp();
            QuadratureNode {
                point: OutcomePoint::scalar(T::of(x)),
                weight: T::of(weight),
            }
        })
        .collect();
    let truncation = 2.0 * libm::erfc(half_width / std::f64::consts::SQRT_2);
    let density = Arc::new(move |p: &OutcomePoint<T>| {
        let x = p.coordinates[0].to_f64_lossy();
        phase_projector(T::of(std::f64::consts::TAU * normal_cdf(x / sigma)))
    });
    ContinuousPovm::with_truncation(
        "line",
        2,
        OutcomeSpace::new(vec![Axis::bounded(T::of(-l), T::of(l))]),
        quad,
        density,
        T::of(truncation),
    )
}

/// One node at the origin with weight `d` and density `I/d`.
pub fn trivial<T: Real>(dim: usize) -> Result<ContinuousPovm<T>, T> {
    if dim == 0 {
        return Err(Error::InvalidInput("dimension must be at least 1".into()));
    }
    let d = T::of_usize(dim);
    let nodes = vec![QuadratureNode {
        point: OutcomePoint::scalar(T::zero()),
        weight: d,
    }];
    let density = Arc::new(move |_: &OutcomePoint<T>| HermitianOperator::identity(dim).scale(T::one() / d));
    ContinuousPovm::new(
        "trivial",
        dim,
        OutcomeSpace::new(vec![Axis::bounded(T::zero(), T::zero())]),
        nodes,
        density,
    )
}

/// Family given by explicit `(point, weight, density matrix)` triples.
/// The density is looked up at the nearest tabulated node.
pub fn tabulated<T: Real>(
    dim: usize,
    space: OutcomeSpace<T>,
    table: Vec<(OutcomePoint<T>, T, HermitianOperator<T>)>,
) -> Result<ContinuousPovm<T>, T> {
    let nodes: Vec<QuadratureNode<T>> = table
        .iter()
        .map(|(p, w, _)| QuadratureNode {
            point: p.clone(),
            weight: *w,
        })
        .collect();
    let entries: Vec<(Vec<T>, HermitianOperator<T>)> =
        table.into_iter().map(|(p, _, m)| (p.coordinates, m)).collect();
    let density = Arc::new(move |p: &OutcomePoint<T>| {
        let dist = |c: &[T]| {
            c.iter()
                .zip(&p.coordinates)
                .map(|(a, b)| (*a - *b) * (*a - *b))
                .fold(T::zero(), |x, y| x + y)
        };
        entries
            .iter()
            .min_by(|a, b| dist(&a.0).partial_cmp(&dist(&b.0)).unwrap_or(std::cmp::Ordering::Equal))
            .map(|e| e.1.clone())
            .expect("non-empty table")
    });
    ContinuousPovm::new("tabulated", dim, space, nodes, density)
}
