//! Realization of continuous-outcome POVMs as randomized finite
//! measurements, and the matching two-stage sampler.
//!
//! Sampling uses ChaCha20 (see [`crate::rng`]). With `w` workers the shot
//! count is split as evenly as possible, worker `k` draws from stream `k`
//! of the seed, and records are concatenated in worker order, so output
//! depends only on `(inputs, seed, workers)`.

mod text;

use std::fmt;

pub use text::{format_samples, parse_samples};

use crate::error::{Error, Result};
use crate::extremal::{decompose_extremal, default_max_leaves};
use crate::matops::{eig_hermitian, sum_operators, HermitianOperator};
use crate::povm::{
    born_probabilities, reconstruction_error, ContinuousPovm, DensityState, FinitePovm, MixtureDecomposition,
    OutcomePoint,
};
use crate::rng::RandomStream;
use crate::scalar::Real;

/// Discretized POVM and the size of the renormalization applied to it.
#[derive(Debug, Clone)]
pub struct Discretized<T> {
    pub povm: FinitePovm<T>,
    /// `|N - I|_F` for the raw quadrature sum `N`.
    pub normalization_correction: T,
}

/// Quadrature effects `Q_j = w_j M(ω_j)`, symmetrically renormalized
/// to `N^{-1/2} Q_j N^{-1/2}`.
pub fn discretize<T: Real>(c: &ContinuousPovm<T>) -> Result<Discretized<T>, T> {
    let d = c.dim();
    let raw: Vec<HermitianOperator<T>> = c
        .nodes()
        .iter()
        .map(|n| c.density(&n.point).scale(n.weight))
        .collect();
    let n = sum_operators(&raw).expect("validated family has nodes");
    let e = eig_hermitian(&n);
    let floor = T::of(T::TOL.rank) * e.max().max(T::one());
    let deficient = e.values.iter().filter(|l| **l <= floor).count();
    if deficient > 0 {
        return Err(Error::Coverage {
            deficient_dimension: deficient,
        });
    }
    let correction = n.sub(&HermitianOperator::identity(d)).frobenius_norm();
    let inv_sqrt = e.map_values(|l| T::one() / l.sqrt());
    let effects = raw.iter().map(|q| q.congruence(inv_sqrt.matrix())).collect();
    let outcomes = c.nodes().iter().map(|n| n.point.clone()).collect();
    let povm = FinitePovm::new(c.space().clone(), outcomes, effects)?;
    Ok(Discretized {
        povm,
        normalization_correction: correction,
    })
}

#[derive(Debug, Clone)]
pub struct RealizationResult<T> {
    pub decomposition: MixtureDecomposition<T>,
    /// The finite POVM that was decomposed.
    pub discretized: FinitePovm<T>,
    pub discretization_nodes: usize,
    pub normalization_correction: T,
    pub truncation_mass: T,
    pub reconstruction_error: T,
}

/// Discretizes `c` and decomposes the result into extremal POVMs.
/// `max_leaves = None` uses the Carathéodory bound `(n-1) d² + 1`.
pub fn realize_continuous<T: Real>(c: &ContinuousPovm<T>, max_leaves: Option<usize>) -> Result<RealizationResult<T>, T> {
    let disc = discretize(c)?;
    let budget = max_leaves.unwrap_or_else(|| default_max_leaves(disc.povm.len(), disc.povm.dim()));
    let decomposition = decompose_extremal(&disc.povm, budget)?;
    let reconstruction_error = reconstruction_error(&decomposition, &disc.povm)?;
    Ok(RealizationResult {
        decomposition,
        discretization_nodes: c.nodes().len(),
        discretized: disc.povm,
        normalization_correction: disc.normalization_correction,
        truncation_mass: c.truncation_mass(),
        reconstruction_error,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct SampleRecord<T> {
    pub component_index: usize,
    pub outcome_index: usize,
    pub outcome_point: OutcomePoint<T>,
}

fn cdf<T: Real>(p: &[T]) -> Vec<f64> {
    let mut acc = 0.0;
    p.iter()
        .map(|x| {
            acc += x.to_f64_lossy();
            acc
        })
        .collect()
}

fn split_count(count: usize, workers: usize) -> Vec<usize> {
    (0..workers)
        .map(|w| count / workers + usize::from(w < count % workers))
        .collect()
}

/// Runs `draw` on `workers` threads, worker `w` on stream `w` of `seed`.
fn parallel_draw<T: Real>(
    count: usize,
    seed: u64,
    workers: usize,
    draw: impl Fn(&mut RandomStream) -> SampleRecord<T> + Sync,
) -> Vec<SampleRecord<T>> {
    let workers = workers.max(1);
    let counts = split_count(count, workers);
    let run = |w: usize, n: usize| {
        let mut rng = RandomStream::with_stream(seed, w as u64);
        (0..n).map(|_| draw(&mut rng)).collect::<Vec<_>>()
    };
    if workers == 1 {
        return run(0, count);
    }
    let draw_ref = &run;
    std::thread::scope(|s| {
        let handles: Vec<_> = counts
            .iter()
            .enumerate()
            .map(|(w, n)| {
                let n = *n;
                s.spawn(move || draw_ref(w, n))
            })
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("sampling worker panicked"))
            .collect()
    })
}

/// Draws a component from the mixture weights, then an outcome of that
/// component from the Born rule.
pub fn sample_two_stage<T: Real>(
    rho: &DensityState<T>,
    decomposition: &MixtureDecomposition<T>,
    count: usize,
    seed: u64,
) -> Result<Vec<SampleRecord<T>>, T> {
    sample_two_stage_parallel(rho, decomposition, count, seed, 1)
}

pub fn sample_two_stage_parallel<T: Real>(
    rho: &DensityState<T>,
    decomposition: &MixtureDecomposition<T>,
    count: usize,
    seed: u64,
    workers: usize,
) -> Result<Vec<SampleRecord<T>>, T> {
    if rho.dim() != decomposition.dim() {
        return Err(Error::DimensionMismatch {
            expected: decomposition.dim(),
            found: rho.dim(),
        });
    }
    let outer = cdf(decomposition.weights());
    let inner = decomposition
        .components()
        .iter()
        .map(|c| born_probabilities(rho, c).map(|p| cdf(&p)))
        .collect::<Result<Vec<_>, T>>()?;
    let components = decomposition.components();
    Ok(parallel_draw(count, seed, workers, |rng| {
        let x = rng.categorical(&outer);
        let i = rng.categorical(&inner[x]);
        SampleRecord {
            component_index: x,
            outcome_index: i,
            outcome_point: components[x].outcomes()[i].clone(),
        }
    }))
}

/// Direct Born-rule sampling of a single finite POVM (component index 0).
pub fn sample_direct<T: Real>(
    rho: &DensityState<T>,
    p: &FinitePovm<T>,
    count: usize,
    seed: u64,
) -> Result<Vec<SampleRecord<T>>, T> {
    let dist = cdf(&born_probabilities(rho, p)?);
    Ok(parallel_draw(count, seed, 1, |rng| {
        let i = rng.categorical(&dist);
        SampleRecord {
            component_index: 0,
            outcome_index: i,
            outcome_point: p.outcomes()[i].clone(),
        }
    }))
}

/// Total-variation distance with a flag for the degenerate empty input.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TvDistance {
    pub value: f64,
    /// No samples were given; `value` is then 1.
    pub empty_input: bool,
}

impl fmt::Display for TvDistance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.empty_input {
            write!(f, "{} (warning: empty sample list)", self.value)
        } else {
            write!(f, "{}", self.value)
        }
    }
}

/// `3 sqrt(n_outcomes / count)`.
pub fn tv_bound(n_outcomes: usize, count: usize) -> f64 {
    3.0 * (n_outcomes as f64 / count.max(1) as f64).sqrt()
}

/// Empirical outcome-point frequencies pooled across components, against
/// the Born probabilities of `p`.
pub fn compare_distributions<T: Real>(
    rho: &DensityState<T>,
    p: &FinitePovm<T>,
    samples: &[SampleRecord<T>],
) -> Result<TvDistance, T> {
    let probs = born_probabilities(rho, p)?;
    if samples.is_empty() {
        return Ok(TvDistance {
            value: 1.0,
            empty_input: true,
        });
    }
    let tol = T::of(T::TOL.point);
    let mut counts = vec![0usize; p.len()];
    // records repeat a small set of points; cache the last lookup
    let mut last: Option<(&OutcomePoint<T>, usize)> = None;
    for s in samples {
        let k = match last {
            Some((pt, k)) if pt.coordinates == s.outcome_point.coordinates => k,
            _ => p.space().locate(p.outcomes(), &s.outcome_point, tol).ok_or_else(|| {
                Error::Consistency(format!(
                    "sampled point {:?} is not an outcome of the reference POVM",
                    s.outcome_point.coordinates
                ))
            })?,
        };
        last = Some((&s.outcome_point, k));
        counts[k] += 1;
    }
    let n = samples.len() as f64;
    let value = 0.5
        * counts
            .iter()
            .zip(&probs)
            .map(|(c, q)| (*c as f64 / n - q.to_f64_lossy()).abs())
            .sum::<f64>();
    Ok(TvDistance {
        value,
        empty_input: false,
    })
}

/// Decomposition double sum `Σ_x p_x Σ_i f(ω_i^(x)) Tr[ρ P_i^(x)]`.
pub fn mixture_expectation<T: Real>(
    rho: &DensityState<T>,
    f: impl Fn(&OutcomePoint<T>) -> T,
    decomposition: &MixtureDecomposition<T>,
) -> Result<T, T> {
    let mut acc = T::zero();
    for (w, c) in decomposition.weights().iter().zip(decomposition.components()) {
        let mut inner = T::zero();
        for (pt, e) in c.outcomes().iter().zip(c.effects()) {
            inner = inner + f(pt) * rho.matrix().trace_product(e);
        }
        acc = acc + *w * inner;
    }
    Ok(acc)
}
