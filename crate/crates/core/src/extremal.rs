//! Extremality test and extremal decomposition of finite POVMs.
//!
//! A finite POVM `{P_i}` is extremal iff the only perturbation `{D_i}`
//! with `supp D_i ⊆ supp P_i` and `Σ D_i = 0` is zero. Writing each
//! `D_i = U_i H_i U_i†` with `U_i` an isometry onto the support of `P_i`
//! and `H_i` a Hermitian `r_i x r_i` matrix, the zero-sum condition is a
//! real linear system with `d²` equations and `Σ r_i²` unknowns; the POVM
//! is extremal iff that system has a trivial kernel.
//!
//! Decomposition peels extremal points off one at a time. From the current
//! residual `Q` it walks along kernel directions (each step drops the rank
//! of at least one effect) until it reaches an extremal `E` on the face of
//! `Q`, then pushes `Q` away from `E` to the boundary, `R = Q + t (Q-E)/|Q-E|`,
//! so `Q = t/(t+u) E + u/(t+u) R` with `u = |Q-E|`. `R` lies on a proper
//! face of the minimal face of `Q`, so the number of leaves is at most the
//! face dimension plus one, i.e. within the Carathéodory bound
//! `(n-1) d² + 1`.

use crate::error::{Error, Result};
use crate::matops::svd::hestenes_svd;
use crate::matops::{
    eig_hermitian, hermitian_basis, hermitian_coordinates, support_from_eigen, HermitianOperator, SupportBasis,
};
use crate::povm::{validate_finite, ComponentCertificate, FinitePovm, MixtureDecomposition};
use crate::scalar::Real;

/// Eigenvalues below this many ulps (on the unit scale of a POVM) left
/// behind when an effect is pushed onto the boundary are set to zero.
const SNAP_ULPS: f64 = 64.0;

/// Perturbation `{D_i}` of a finite POVM, one operator per outcome.
#[derive(Debug, Clone, PartialEq)]
pub struct PerturbationDirection<T> {
    pub operators: Vec<HermitianOperator<T>>,
}

impl<T: Real> PerturbationDirection<T> {
    pub fn new(operators: Vec<HermitianOperator<T>>) -> Self {
        Self { operators }
    }

    /// `sqrt(Σ_i |D_i|_F²)`.
    pub fn norm(&self) -> T {
        self.operators
            .iter()
            .map(|d| {
                let f = d.frobenius_norm();
                f * f
            })
            .sum::<T>()
            .sqrt()
    }

    /// Rescaled to unit norm; `None` for the zero direction.
    pub fn normalized(&self) -> Option<Self> {
        let n = self.norm();
        (n > T::zero()).then(|| Self {
            operators: self.operators.iter().map(|d| d.scale(T::one() / n)).collect(),
        })
    }

    pub fn negated(&self) -> Self {
        Self {
            operators: self.operators.iter().map(|d| d.scale(-T::one())).collect(),
        }
    }

    /// `|Σ_i D_i|_F`.
    pub fn zero_sum_residual(&self) -> T {
        crate::matops::sum_operators(&self.operators)
            .map(|s| s.frobenius_norm())
            .unwrap_or(T::zero())
    }
}

/// Outcome of [`extremality_check`].
#[derive(Debug, Clone, PartialEq)]
pub struct ExtremalityReport<T> {
    pub extremal: bool,
    pub kernel_dimension: usize,
    pub witness: Option<PerturbationDirection<T>>,
    /// Kernel is non-trivial under the standard cutoff but trivial under a
    /// ten times tighter one.
    pub marginal: bool,
}

/// Face geometry of an aligned list of effects.
struct FaceAnalysis<T> {
    supports: Vec<SupportBasis<T>>,
    kernel_dimension: usize,
    marginal: bool,
    witness: Option<PerturbationDirection<T>>,
}

fn support_of<T: Real>(effect: &HermitianOperator<T>) -> SupportBasis<T> {
    let e = eig_hermitian(effect);
    support_from_eigen(&e, T::of(T::TOL.rank))
}

/// Builds the constraint `Σ_i U_i H_i U_i† = 0` and inspects its kernel.
fn analyze<T: Real>(effects: &[HermitianOperator<T>]) -> FaceAnalysis<T> {
    let d = effects[0].dim();
    let supports: Vec<SupportBasis<T>> = effects.iter().map(support_of).collect();

    // columns of the constraint matrix, one per (outcome, basis element)
    let mut blocks: Vec<Vec<HermitianOperator<T>>> = Vec::with_capacity(effects.len());
    let mut columns: Vec<Vec<T>> = Vec::new();
    for s in &supports {
        let lifted: Vec<HermitianOperator<T>> = hermitian_basis::<T>(s.rank())
            .iter()
            .map(|b| b.expand(s.columns()))
            .collect();
        columns.extend(lifted.iter().map(hermitian_coordinates));
        blocks.push(lifted);
    }
    let unknowns = columns.len();
    let equations = d * d;

    // rows of the constraint matrix are the columns of its transpose
    let rows: Vec<Vec<T>> = (0..equations)
        .map(|c| columns.iter().map(|col| col[c]).collect())
        .collect();
    let svd = hestenes_svd(&rows);
    let sigma_max = svd.values.first().copied().unwrap_or(T::zero());
    let cutoff = T::of(T::TOL.kernel) * sigma_max;
    let tight = cutoff / T::of(10.0);
    let rank = svd.values.iter().filter(|s| **s > cutoff).count();
    let rank_tight = svd.values.iter().filter(|s| **s > tight).count();
    let kernel_dimension = unknowns - rank;
    let marginal = kernel_dimension > 0 && unknowns == rank_tight;

    let witness = (kernel_dimension > 0 && !marginal).then(|| {
        let row_space = &svd.left[..rank];
        let threshold = T::of(0.5) / T::of_usize(unknowns);
        let mut chosen = vec![T::zero(); unknowns];
        for j in 0..unknowns {
            // projection of e_j onto the kernel
            let mut p = vec![T::zero(); unknowns];
            p[j] = T::one();
            for u in row_space {
                let c = u[j];
                for (pk, uk) in p.iter_mut().zip(u) {
                    *pk = *pk - c * *uk;
                }
            }
            let n2: T = p.iter().map(|x| *x * *x).sum();
            if n2 >= threshold {
                let n = n2.sqrt();
                chosen = p.into_iter().map(|x| x / n).collect();
                break;
            }
        }
        let mut offset = 0;
        let operators = blocks
            .iter()
            .map(|block| {
                let op = block
                    .iter()
                    .zip(&chosen[offset..offset + block.len()])
                    .fold(HermitianOperator::zeros(d), |acc, (b, w)| acc.add_scaled(*w, b));
                offset += block.len();
                op
            })
            .collect();
        PerturbationDirection { operators }
    });

    FaceAnalysis {
        supports,
        kernel_dimension,
        marginal,
        witness,
    }
}

/// `Π D Π` for the support projector `Π`.
fn restrict<T: Real>(op: &HermitianOperator<T>, s: &SupportBasis<T>) -> HermitianOperator<T> {
    if s.rank() == 0 {
        HermitianOperator::zeros(op.dim())
    } else {
        op.congruence(s.columns()).expand(s.columns())
    }
}

fn require_valid<T: Real>(p: &FinitePovm<T>) -> Result<(), T> {
    let report = validate_finite(p);
    if report.is_valid() {
        Ok(())
    } else {
        Err(Error::Domain(format!("invalid POVM: {report}")))
    }
}

/// Decides extremality by the kernel of the support-constrained zero-sum
/// system; a non-trivial kernel yields a unit-norm witness direction.
///
/// The witness is the normalized kernel projection of the lowest-index
/// coordinate vector whose projection has squared norm at least
/// `1/(2 Σ r_i²)` (one always exists), so it is reproducible and does not
/// depend on how a degenerate singular subspace is rotated.
pub fn extremality_check<T: Real>(p: &FinitePovm<T>) -> Result<ExtremalityReport<T>, T> {
    require_valid(p)?;
    let a = analyze(p.effects());
    Ok(ExtremalityReport {
        extremal: a.kernel_dimension == 0,
        kernel_dimension: a.kernel_dimension,
        witness: a.witness,
        marginal: a.marginal,
    })
}

/// Largest steps `t_plus`, `t_minus` keeping `P ± t D` positive.
pub fn max_steps<T: Real>(p: &FinitePovm<T>, dir: &PerturbationDirection<T>) -> Result<(T, T), T> {
    let supports: Vec<SupportBasis<T>> = p.effects().iter().map(support_of).collect();
    check_direction(p.effects(), &supports, dir)?;
    steps_on_supports(p.effects(), &supports, dir)
}

fn check_direction<T: Real>(
    effects: &[HermitianOperator<T>],
    supports: &[SupportBasis<T>],
    dir: &PerturbationDirection<T>,
) -> Result<(), T> {
    if dir.operators.len() != effects.len() {
        return Err(Error::Domain(format!(
            "direction has {} operators for {} effects",
            dir.operators.len(),
            effects.len()
        )));
    }
    let d = effects[0].dim();
    if let Some(bad) = dir.operators.iter().find(|o| o.dim() != d) {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: bad.dim(),
        });
    }
    let norm = dir.norm();
    if !(norm > T::zero()) {
        return Err(Error::Domain("perturbation direction is zero".into()));
    }
    let sum_tol = T::of(T::TOL.zero_sum) * T::of_usize(d).sqrt() * norm;
    if !(dir.zero_sum_residual() <= sum_tol) {
        return Err(Error::Domain(format!(
            "perturbation does not sum to zero (residual {})",
            dir.zero_sum_residual()
        )));
    }
    let leak_tol = T::of(T::TOL.support_leak);
    for (i, (op, s)) in dir.operators.iter().zip(supports).enumerate() {
        let inside = restrict(op, s);
        let leak = op.sub(&inside).frobenius_norm();
        if leak > leak_tol * op.frobenius_norm().max(norm * T::epsilon()) {
            return Err(Error::Domain(format!(
                "perturbation of effect {i} leaves its support (leak {leak})"
            )));
        }
    }
    Ok(())
}

/// Per outcome, on the support: `P̃ + t D̃ ⪰ 0` iff
/// `t <= 1/λ_max(-P̃^{-1/2} D̃ P̃^{-1/2})`; the overall step is the minimum.
fn steps_on_supports<T: Real>(
    effects: &[HermitianOperator<T>],
    supports: &[SupportBasis<T>],
    dir: &PerturbationDirection<T>,
) -> Result<(T, T), T> {
    let mut t_plus = T::infinity();
    let mut t_minus = T::infinity();
    for ((p, s), d) in effects.iter().zip(supports).zip(&dir.operators) {
        if s.rank() == 0 {
            continue;
        }
        let pc = p.congruence(s.columns());
        let dc = d.congruence(s.columns());
        let inv_sqrt = eig_hermitian(&pc).map_values(|l| T::one() / l.sqrt());
        let k = dc.congruence(inv_sqrt.matrix());
        let ek = eig_hermitian(&k);
        // P + tD needs t <= 1/max(-λ_min(K)); P - tD needs t <= 1/λ_max(K)
        if ek.min() < T::zero() {
            t_plus = t_plus.min(-T::one() / ek.min());
        }
        if ek.max() > T::zero() {
            t_minus = t_minus.min(T::one() / ek.max());
        }
    }
    if !(t_plus.is_finite() && t_minus.is_finite()) {
        return Err(Error::Domain(
            "direction has a sign-definite part on every support; it cannot sum to zero".into(),
        ));
    }
    Ok((t_plus, t_minus))
}

/// Both endpoints of the segment through `P` along `D`.
#[derive(Debug, Clone)]
pub struct Split<T> {
    pub t_plus: T,
    pub t_minus: T,
    pub w_plus: T,
    pub plus: FinitePovm<T>,
    pub w_minus: T,
    pub minus: FinitePovm<T>,
}

/// `P = w_plus (P + t_plus D) + w_minus (P - t_minus D)` with
/// `w_plus = t_minus/(t_plus+t_minus)`.
pub fn split<T: Real>(p: &FinitePovm<T>, dir: &PerturbationDirection<T>) -> Result<Split<T>, T> {
    let (t_plus, t_minus) = max_steps(p, dir)?;
    let total = t_plus + t_minus;
    let step = |t: T| -> Result<FinitePovm<T>, T> {
        let effects = p
            .effects()
            .iter()
            .zip(&dir.operators)
            .map(|(e, d)| snap(&e.add_scaled(t, d)).0)
            .collect();
        FinitePovm::from_parts(p.space().clone(), p.outcomes().to_vec(), effects)
    };
    Ok(Split {
        t_plus,
        t_minus,
        w_plus: t_minus / total,
        plus: step(t_plus)?,
        w_minus: t_plus / total,
        minus: step(-t_minus)?,
    })
}

/// Zeroes eigenvalues below `SNAP_ULPS` ulps (negative ones included) and
/// returns the Frobenius mass removed.
fn snap<T: Real>(a: &HermitianOperator<T>) -> (HermitianOperator<T>, T) {
    let e = eig_hermitian(a);
    let floor = T::of(SNAP_ULPS) * T::epsilon();
    if e.min() >= floor || e.values.iter().all(|l| *l == T::zero()) {
        return (a.clone(), T::zero());
    }
    let removed = e
        .values
        .iter()
        .filter(|l| **l < floor)
        .map(|l| *l * *l)
        .sum::<T>()
        .sqrt();
    (e.map_values(|l| if l < floor { T::zero() } else { l }), removed)
}

/// Symmetric renormalization `N^{-1/2} P_i N^{-1/2}`.
fn renormalize<T: Real>(effects: &mut [HermitianOperator<T>]) {
    let n = crate::matops::sum_operators(effects.iter()).expect("non-empty");
    let e = eig_hermitian(&n);
    if !(e.min() > T::zero()) {
        return;
    }
    let inv_sqrt = e.map_values(|l| T::one() / l.sqrt());
    for eff in effects.iter_mut() {
        *eff = eff.congruence(inv_sqrt.matrix());
    }
}

/// Working point of the decomposition: effects aligned with the input
/// outcome list (zero effects are kept so indices line up).
#[derive(Clone)]
struct Point<T> {
    effects: Vec<HermitianOperator<T>>,
    clipped: T,
}

impl<T: Real> Point<T> {
    fn moved(&self, t: T, dir: &PerturbationDirection<T>) -> Self {
        let mut clipped = self.clipped;
        let mut effects: Vec<HermitianOperator<T>> = self
            .effects
            .iter()
            .zip(&dir.operators)
            .map(|(e, d)| {
                let (s, removed) = snap(&e.add_scaled(t, d));
                clipped = clipped + removed;
                s
            })
            .collect();
        renormalize(&mut effects);
        Self { effects, clipped }
    }

    fn distance(&self, other: &Self) -> T {
        self.effects
            .iter()
            .zip(&other.effects)
            .map(|(a, b)| {
                let f = a.sub(b).frobenius_norm();
                f * f
            })
            .sum::<T>()
            .sqrt()
    }
}

/// Default leaf budget `(n-1) d² + 1`.
pub fn default_max_leaves(n: usize, d: usize) -> usize {
    n.saturating_sub(1) * d * d + 1
}

struct Leaf<T> {
    weight: T,
    point: Point<T>,
}

/// Walks along kernel directions until the face is a single point.
/// Returns the endpoint and whether it was reached cleanly (`false` when
/// the kernel became marginal or the step size stalled).
fn descend<T: Real>(start: &Point<T>) -> (Point<T>, bool) {
    let mut cur = start.clone();
    let stall = T::of(SNAP_ULPS) * T::epsilon();
    loop {
        let a = analyze(&cur.effects);
        if a.kernel_dimension == 0 {
            return (cur, true);
        }
        let Some(dir) = a.witness else {
            return (cur, false);
        };
        match steps_on_supports(&cur.effects, &a.supports, &dir) {
            Ok((t, _)) if t > stall => cur = cur.moved(t, &dir),
            _ => return (cur, false),
        }
    }
}

/// Convex decomposition of `p` into extremal POVMs on the same outcomes.
pub fn decompose_extremal<T: Real>(p: &FinitePovm<T>, max_leaves: usize) -> Result<MixtureDecomposition<T>, T> {
    require_valid(p)?;
    if max_leaves == 0 {
        return Err(Error::InvalidInput("max_leaves must be at least 1".into()));
    }
    let mut leaves: Vec<Leaf<T>> = Vec::new();
    let mut residual = Point {
        effects: p.effects().to_vec(),
        clipped: T::zero(),
    };
    let mut remaining = T::one();
    let tiny = T::of(SNAP_ULPS) * T::epsilon();

    loop {
        let a = analyze(&residual.effects);
        if a.kernel_dimension == 0 || a.marginal {
            leaves.push(Leaf {
                weight: remaining,
                point: residual,
            });
            break;
        }
        if leaves.len() + 2 > max_leaves {
            leaves.push(Leaf {
                weight: remaining,
                point: residual,
            });
            let partial = assemble(p, leaves, true)?;
            return Err(Error::DecompositionOverflow {
                max_leaves,
                partial: Box::new(partial),
            });
        }

        let (extreme, _) = descend(&residual);
        let u = residual.distance(&extreme);
        if !(u > tiny) {
            leaves.push(Leaf {
                weight: remaining,
                point: residual,
            });
            break;
        }
        // away from the extreme point, restricted to the residual's supports
        let away = PerturbationDirection::new(
            residual
                .effects
                .iter()
                .zip(&extreme.effects)
                .zip(&a.supports)
                .map(|((q, e), s)| restrict(&q.sub(e), s))
                .collect(),
        );
        let Some(away) = away.normalized() else {
            leaves.push(Leaf {
                weight: remaining,
                point: residual,
            });
            break;
        };
        let t = match steps_on_supports(&residual.effects, &a.supports, &away) {
            Ok((t, _)) if t > tiny => t,
            _ => {
                // cannot leave the extreme point's side: the residual is
                // numerically indistinguishable from a leaf
                leaves.push(Leaf {
                    weight: remaining,
                    point: residual,
                });
                break;
            }
        };
        let w_extreme = t / (t + u);
        leaves.push(Leaf {
            weight: remaining * w_extreme,
            point: extreme,
        });
        remaining = remaining * (u / (t + u));
        residual = residual.moved(t, &away);
    }
    assemble(p, leaves, false)
}

fn assemble<T: Real>(p: &FinitePovm<T>, leaves: Vec<Leaf<T>>, partial: bool) -> Result<MixtureDecomposition<T>, T> {
    let d = p.dim();
    let total: T = leaves.iter().map(|l| l.weight).sum();
    let mut weights = Vec::with_capacity(leaves.len());
    let mut components = Vec::with_capacity(leaves.len());
    let mut certificates = Vec::with_capacity(leaves.len());
    let last = leaves.len() - 1;
    for (k, leaf) in leaves.into_iter().enumerate() {
        if !(leaf.weight > T::zero()) {
            continue;
        }
        let component = FinitePovm::from_parts(p.space().clone(), p.outcomes().to_vec(), leaf.point.effects)?;
        let a = analyze(component.effects());
        // the unfinished residual of a partial run is never certified
        let extremal = a.kernel_dimension == 0 && !(partial && k == last);
        certificates.push(ComponentCertificate {
            extremal,
            kernel_dimension: a.kernel_dimension,
            max_outcomes_check: component.len() <= d * d,
            clipping_residual: leaf.point.clipped,
        });
        weights.push(leaf.weight / total);
        components.push(component);
    }
    MixtureDecomposition::new(weights, components, certificates)
}

/// Certificate record for a standalone component.
pub fn certify<T: Real>(component: &FinitePovm<T>) -> ComponentCertificate<T> {
    let a = analyze(component.effects());
    ComponentCertificate {
        extremal: a.kernel_dimension == 0,
        kernel_dimension: a.kernel_dimension,
        max_outcomes_check: component.len() <= component.dim() * component.dim(),
        clipping_residual: T::zero(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::povm::reconstruction_error;

    #[test]
    fn identity_povm_is_extremal() {
        let r = extremality_check(&fixtures::identity_povm::<f64>(2)).unwrap();
        assert!(r.extremal);
        assert_eq!(r.kernel_dimension, 0);
        assert!(r.witness.is_none());
    }

    #[test]
    fn projective_bases_are_extremal() {
        for d in [2, 3] {
            let r = extremality_check(&fixtures::projective_basis::<f64>(d)).unwrap();
            assert!(r.extremal, "d = {d}");
        }
    }

    #[test]
    fn sic_is_extremal() {
        let r = extremality_check(&fixtures::qubit_sic::<f64>()).unwrap();
        assert!(r.extremal);
        assert!(!r.marginal);
    }

    #[test]
    fn trine_is_extremal() {
        assert!(extremality_check(&fixtures::trine::<f64>()).unwrap().extremal);
    }

    #[test]
    fn smeared_pair_has_full_kernel() {
        // both effects have full rank: 4 + 4 unknowns, 4 equations
        let p = fixtures::smeared_two_outcome::<f64>();
        let r = extremality_check(&p).unwrap();
        assert!(!r.extremal);
        assert_eq!(r.kernel_dimension, 4);
        let w = r.witness.unwrap();
        assert!((w.norm() - 1.0).abs() < 1e-12);
        assert!(w.zero_sum_residual() < 1e-12);
    }

    #[test]
    fn split_of_smeared_pair_along_z() {
        let p = fixtures::smeared_two_outcome::<f64>();
        let z = HermitianOperator::diag(&[0.5, -0.5]);
        let dir = PerturbationDirection::new(vec![z.clone(), z.scale(-1.0)]);
        let (tp, tm) = max_steps(&p, &dir).unwrap();
        assert!((tp - 0.5).abs() < 1e-12);
        assert!((tm - 1.5).abs() < 1e-12);
        let s = split(&p, &dir).unwrap();
        assert!((s.w_plus - 0.75).abs() < 1e-12);
        assert!((s.w_minus - 0.25).abs() < 1e-12);
        assert!(extremality_check(&s.plus).unwrap().extremal);
        assert!(extremality_check(&s.minus).unwrap().extremal);
    }

    #[test]
    fn max_steps_rejects_bad_directions() {
        let p = fixtures::projective_basis::<f64>(2);
        let zero = PerturbationDirection::new(vec![HermitianOperator::zeros(2); 2]);
        assert!(max_steps(&p, &zero).is_err());
        // leaves the rank-one supports
        let x = HermitianOperator::from_rows(&[
            vec![num_complex::Complex::new(0.0, 0.0), num_complex::Complex::new(0.5, 0.0)],
            vec![num_complex::Complex::new(0.5, 0.0), num_complex::Complex::new(0.0, 0.0)],
        ])
        .unwrap();
        let leak = PerturbationDirection::new(vec![x.clone(), x.scale(-1.0)]);
        assert!(max_steps(&p, &leak).is_err());
        // does not sum to zero
        let skew = PerturbationDirection::new(vec![HermitianOperator::diag(&[1.0, 0.0]), HermitianOperator::zeros(2)]);
        assert!(max_steps(&p, &skew).is_err());
    }

    #[test]
    fn extremal_input_decomposes_to_itself() {
        let p = fixtures::qubit_sic::<f64>();
        let d = decompose_extremal(&p, 1).unwrap();
        assert_eq!(d.len(), 1);
        assert_eq!(d.weights()[0], 1.0);
        assert!(d.certificates()[0].extremal);
    }

    #[test]
    fn smeared_pair_decomposes_exactly() {
        let p = fixtures::smeared_two_outcome::<f64>();
        let d = decompose_extremal(&p, default_max_leaves(2, 2)).unwrap();
        assert!(d.len() >= 2);
        assert!(reconstruction_error(&d, &p).unwrap() < 1e-12);
        for (c, cert) in d.components().iter().zip(d.certificates()) {
            assert!(cert.extremal);
            assert!(c.len() <= 4);
        }
    }

    #[test]
    fn depolarized_trine_decomposes_within_budget() {
        let p = fixtures::depolarized_trine::<f64>(0.2);
        let budget = default_max_leaves(p.len(), 2);
        let d = decompose_extremal(&p, budget).unwrap();
        assert!(d.len() <= budget);
        assert!(reconstruction_error(&d, &p).unwrap() < 1e-10);
        assert!(d.certificates().iter().all(|c| c.extremal));
    }

    #[test]
    fn tiny_budget_overflows_with_a_faithful_partial() {
        let p = fixtures::depolarized_trine::<f64>(0.2);
        match decompose_extremal(&p, 2) {
            Err(Error::DecompositionOverflow { max_leaves, partial }) => {
                assert_eq!(max_leaves, 2);
                assert!(partial.len() <= 2);
                assert!(!partial.certificates().last().unwrap().extremal);
                assert!(reconstruction_error(&partial, &p).unwrap() < 1e-10);
            }
            other => panic!("expected overflow, got {other:?}"),
        }
    }

    #[test]
    fn zero_budget_is_invalid() {
        assert!(decompose_extremal(&fixtures::trine::<f64>(), 0).is_err());
    }

    #[test]
    fn single_precision_decomposition() {
        let p = fixtures::smeared_two_outcome::<f32>();
        let d = decompose_extremal(&p, default_max_leaves(2, 2)).unwrap();
        assert!(reconstruction_error(&d, &p).unwrap() < 1e-4);
    }
}
