//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

#![allow(clippy::needless_range_loop, clippy::neg_cmp_op_on_partial_ord)]

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_complex::Complex64 as C;

use povm_cli::commands;
use povm_realize::realize::{mixture_expectation, tv_bound};
use povm_realize::{
    decompose_extremal, default_max_leaves, expectation, families, fixtures, realize_continuous, sample_direct,
    sample_two_stage, validate_finite, ContinuousPovmF64, DensityStateF64, FinitePovmF64,
    MixtureDecompositionF64, RandomStream,
};

const RANDOM_POVMS: usize = 200;
const CANDIDATES: usize = 10_000;
const STEP: f64 = 1e-3;
const SHOTS: usize = 100_000;

struct Case {
    name: String,
    target: FinitePovmF64,
    decomposition: Result<MixtureDecompositionF64, String>,
}

fn shipped_families() -> Vec<ContinuousPovmF64> {
    vec![
        families::phase(16).unwrap(),
        families::sphere_fibonacci(100).unwrap(),
        families::sphere_random(100, 0).unwrap(),
        families::line(1.0, 6.0, 64).unwrap(),
        families::trivial(2).unwrap(),
        families::trivial(3).unwrap(),
    ]
}

fn corpus() -> Vec<Case> {
    let mut cases = Vec::new();
    let mut rng = RandomStream::new(2024);
    for k in 0..RANDOM_POVMS {
        let (d, n) = (2 + k % 2, 2 + k % 5);
        let p: FinitePovmF64 = fixtures::random_povm(d, n, &mut rng).unwrap();
        let decomposition = decompose_extremal(&p, default_max_leaves(n, d)).map_err(|e| e.to_string());
        cases.push(Case {
            name: format!("random #{k} (d={d}, n={n})"),
            target: p,
            decomposition,
        });
    }
    let named: Vec<(&str, FinitePovmF64)> = vec![
        ("projective d=2", fixtures::projective_basis(2)),
        ("projective d=3", fixtures::projective_basis(3)),
        ("trine", fixtures::trine()),
        ("qubit SIC", fixtures::qubit_sic()),
        ("smeared", fixtures::smeared_two_outcome()),
        ("depolarized trine", fixtures::depolarized_trine(0.2)),
        ("identity d=3", fixtures::identity_povm(3)),
    ];
    for (name, p) in named {
        let decomposition = decompose_extremal(&p, default_max_leaves(p.len(), p.dim())).map_err(|e| e.to_string());
        cases.push(Case {
            name: name.into(),
            target: p,
            decomposition,
        });
    }
    for c in shipped_families() {
        let name = format!("family {} ({} nodes)", c.name(), c.nodes().len());
        match realize_continuous(&c, None) {
            Ok(r) => cases.push(Case {
                name,
                target: r.discretized,
                decomposition: Ok(r.decomposition),
            }),
            Err(e) => cases.push(Case {
                name,
                target: fixtures::identity_povm(c.dim()),
                decomposition: Err(e.to_string()),
            }),
        }
    }
    cases
}

// ---- criterion 1 -------------------------------------------------------

fn support_bound(cases: &[Case], elapsed: Duration) -> (bool, String) {
    let mut violations = Vec::new();
    let (mut certified, mut uncertified) = (0, 0);
    for case in cases {
        let dec = match &case.decomposition {
            Ok(dec) => dec,
            Err(e) => {
                violations.push(format!("{}: {e}", case.name));
                continue;
            }
        };
        let d2 = case.target.dim() * case.target.dim();
        for (x, (c, cert)) in dec.components().iter().zip(dec.certificates()).enumerate() {
            if !cert.extremal {
                uncertified += 1;
                continue;
            }
            certified += 1;
            let support = c.effects().iter().filter(|e| e.trace() > 1e-12).count();
            if support > d2 {
                violations.push(format!("{} component {x}: {support} outcomes > {d2}", case.name));
            }
        }
    }
    let pass = violations.is_empty() && elapsed < Duration::from_secs(60);
    let mut detail = format!(
        "{} inputs, {certified} certified components, {uncertified} uncertified, {} violations, {:.2} s (limit 60 s)",
        cases.len(),
        violations.len(),
        elapsed.as_secs_f64()
    );
    if let Some(v) = violations.first() {
        detail += &format!("; first: {v}");
    }
    (pass, detail)
}

// ---- criterion 2 -------------------------------------------------------

fn reconstruction(cases: &[Case]) -> (bool, String) {
    let mut worst = 0.0f64;
    let mut violations = Vec::new();
    for case in cases {
        let Ok(dec) = &case.decomposition else {
            violations.push(format!("{}: no decomposition", case.name));
            continue;
        };
        let n = case.target.len();
        let mut residual = vec![case.target.effects()[0].scale(0.0); n];
        // components may drop outcomes, so match effects by outcome point
        let mut unmatched = 0;
        for (w, c) in dec.weights().iter().zip(dec.components()) {
            for (pt, e) in c.outcomes().iter().zip(c.effects()) {
                match case.target.space().locate(case.target.outcomes(), pt, 1e-12) {
                    Some(i) => residual[i] = residual[i].add_scaled(*w, e),
                    None => unmatched += 1,
                }
            }
        }
        if unmatched > 0 {
            violations.push(format!("{}: {unmatched} component outcomes not in the target", case.name));
        }
        let err = residual
            .iter()
            .zip(case.target.effects())
            .map(|(r, e)| r.sub(e).frobenius_norm())
            .fold(0.0, f64::max);
        worst = worst.max(err);
        if !(err <= 1e-8) {
            violations.push(format!("{}: residual {err:e}", case.name));
        }
    }
    let mut detail = format!(
        "{} inputs, worst per-effect residual {worst:.3e} (limit 1e-8), {} violations",
        cases.len(),
        violations.len()
    );
    if let Some(v) = violations.first() {
        detail += &format!("; first: {v}");
    }
    (violations.is_empty(), detail)
}

// ---- criterion 3 -------------------------------------------------------

type Mat = Vec<Vec<C>>;

fn adjoint(a: &Mat) -> Mat {
    let (r, c) = (a.len(), a[0].len());
    (0..c).map(|j| (0..r).map(|i| a[i][j].conj()).collect()).collect()
}

fn matmul(a: &Mat, b: &Mat) -> Mat {
    let (r, k, c) = (a.len(), b.len(), b[0].len());
    (0..r)
        .map(|i| (0..c).map(|j| (0..k).map(|l| a[i][l] * b[l][j]).sum()).collect())
        .collect()
}

/// Orthonormal basis of the column space (pivoted modified Gram-Schmidt),
/// returned as a `d x r` matrix.
fn column_space(a: &Mat) -> Mat {
    let d = a.len();
    let mut cols: Vec<Vec<C>> = (0..d).map(|j| (0..d).map(|i| a[i][j]).collect()).collect();
    let norm = |v: &[C]| v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let scale = cols.iter().map(|c| norm(c)).fold(0.0, f64::max);
    let mut basis: Vec<Vec<C>> = Vec::new();
    while let Some((k, n)) = cols.iter().map(|c| norm(c)).enumerate().max_by(|a, b| a.1.total_cmp(&b.1)) {
        if n <= 1e-10 * scale.max(1e-300) {
            break;
        }
        let q: Vec<C> = cols.remove(k).iter().map(|z| z / n).collect();
        for c in cols.iter_mut() {
            let dot: C = q.iter().zip(c.iter()).map(|(a, b)| a.conj() * b).sum();
            for (ci, qi) in c.iter_mut().zip(&q) {
                *ci -= dot * qi;
            }
        }
        basis.push(q);
    }
    let r = basis.len();
    (0..d).map(|i| (0..r).map(|j| basis[j][i]).collect()).collect()
}

/// Hermitian `r x r` matrix from real coordinates: diagonal, then
/// (re, im) of each upper entry.
fn hermitian_from(coords: &[f64], r: usize) -> Mat {
    let mut m = vec![vec![C::new(0.0, 0.0); r]; r];
    for k in 0..r {
        m[k][k] = C::new(coords[k], 0.0);
    }
    let mut at = r;
    for j in 0..r {
        for k in j + 1..r {
            m[j][k] = C::new(coords[at], coords[at + 1]);
            m[k][j] = m[j][k].conj();
            at += 2;
        }
    }
    m
}

fn real_coords(m: &Mat) -> Vec<f64> {
    let d = m.len();
    let mut out: Vec<f64> = (0..d).map(|k| m[k][k].re).collect();
    for j in 0..d {
        for k in j + 1..d {
            out.push(m[j][k].re);
            out.push(m[j][k].im);
        }
    }
    out
}

/// Number of negative eigenvalues of `a - shift I` (Sylvester inertia
/// of an unpivoted LDL* factorization).
fn negatives(a: &Mat, shift: f64) -> usize {
    let n = a.len();
    let mut l = vec![vec![C::new(0.0, 0.0); n]; n];
    let mut dvals = vec![0.0f64; n];
    let mut count = 0;
    for k in 0..n {
        let mut dk = a[k][k].re - shift;
        for j in 0..k {
            dk -= l[k][j].norm_sqr() * dvals[j];
        }
        if dk == 0.0 {
            dk = -1e-300;
        }
        dvals[k] = dk;
        if dk < 0.0 {
            count += 1;
        }
        for i in k + 1..n {
            let mut s = a[i][k];
            for j in 0..k {
                s -= l[i][j] * l[k][j].conj() * dvals[j];
            }
            l[i][k] = s / dk;
        }
    }
    count
}

struct Soundness {
    components: usize,
    candidates: usize,
    rejected_zero: usize,
    counterexamples: usize,
    first: Option<String>,
}

fn brute_force(component: &FinitePovmF64, rng: &mut RandomStream) -> (usize, usize) {
    let d = component.dim();
    let effects: Vec<Mat> = component.effects().iter().map(|e| e.to_rows()).collect();
    let supports: Vec<Mat> = effects.iter().map(column_space).collect();
    let restricted: Vec<Mat> = effects
        .iter()
        .zip(&supports)
        .map(|(e, v)| if v[0].is_empty() { Vec::new() } else { matmul(&matmul(&adjoint(v), e), v) })
        .collect();
    let ranks: Vec<usize> = supports.iter().map(|v| v[0].len()).collect();
    let unknowns: usize = ranks.iter().map(|r| r * r).sum();

    // constraint columns: image of each unit coordinate under X -> sum V X V*
    let mut columns = Vec::with_capacity(unknowns);
    for (v, &r) in supports.iter().zip(&ranks) {
        for u in 0..r * r {
            let mut coords = vec![0.0; r * r];
            coords[u] = 1.0;
            let x = hermitian_from(&coords, r);
            columns.push(real_coords(&matmul(&matmul(v, &x), &adjoint(v))));
        }
    }
    let rows: Vec<Vec<f64>> = (0..d * d).map(|i| columns.iter().map(|c| c[i]).collect()).collect();
    let dot = |a: &[f64], b: &[f64]| a.iter().zip(b).map(|(x, y)| x * y).sum::<f64>();
    let mut q: Vec<Vec<f64>> = Vec::new();
    for row in rows {
        let mut v = row;
        for _ in 0..2 {
            for b in &q {
                let c = dot(b, &v);
                v.iter_mut().zip(b).for_each(|(x, y)| *x -= c * y);
            }
        }
        let n = dot(&v, &v).sqrt();
        if n > 1e-9 {
            q.push(v.iter().map(|x| x / n).collect());
        }
    }

    let (mut rejected, mut counterexamples) = (0, 0);
    for _ in 0..CANDIDATES {
        let z: Vec<f64> = (0..unknowns).map(|_| rng.normal()).collect();
        let z_norm = dot(&z, &z).sqrt();
        let mut p = z;
        for b in &q {
            let c = dot(b, &p);
            p.iter_mut().zip(b).for_each(|(x, y)| *x -= c * y);
        }
        let n = dot(&p, &p).sqrt();
        if n <= 1e-8 * z_norm {
            rejected += 1;
            continue;
        }
        let mut offset = 0;
        let mut valid = true;
        for (a, &r) in restricted.iter().zip(&ranks) {
            let coords: Vec<f64> = p[offset..offset + r * r].iter().map(|x| x / n).collect();
            offset += r * r;
            if r == 0 {
                continue;
            }
            let x = hermitian_from(&coords, r);
            for sign in [1.0, -1.0] {
                let m: Mat = (0..r)
                    .map(|i| (0..r).map(|j| a[i][j] + x[i][j] * (sign * STEP)).collect())
                    .collect();
                if negatives(&m, -1e-12) > 0 {
                    valid = false;
                }
            }
        }
        if valid {
            counterexamples += 1;
        }
    }
    (rejected, counterexamples)
}

fn soundness(cases: &[Case]) -> (bool, String) {
    let mut rng = RandomStream::new(3);
    let mut s = Soundness {
        components: 0,
        candidates: 0,
        rejected_zero: 0,
        counterexamples: 0,
        first: None,
    };
    for case in cases {
        let Ok(dec) = &case.decomposition else { continue };
        if case.target.dim() > 3 {
            continue;
        }
        for (x, (c, cert)) in dec.components().iter().zip(dec.certificates()).enumerate() {
            if !cert.extremal {
                continue;
            }
            s.components += 1;
            s.candidates += CANDIDATES;
            let (rejected, found) = brute_force(c, &mut rng);
            s.rejected_zero += rejected;
            s.counterexamples += found;
            if found > 0 && s.first.is_none() {
                s.first = Some(format!("{} component {x}", case.name));
            }
        }
    }
    // control: the search must find perturbations of a non-extremal POVM
    let (_, control) = brute_force(&fixtures::smeared_two_outcome(), &mut rng);
    let mut detail = format!(
        "{} certified components, {} candidates at step {STEP:e}, {} projected to zero, {} counterexamples; \
         control (smeared pair) {control}/{CANDIDATES} perturbations found",
        s.components, s.candidates, s.rejected_zero, s.counterexamples
    );
    if let Some(f) = &s.first {
        detail += &format!("; first: {f}");
    }
    (s.counterexamples == 0 && s.components > 0 && control > 0, detail)
}

// ---- criterion 4 -------------------------------------------------------

fn plus_state() -> DensityStateF64 {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    DensityStateF64::pure(&[C::new(h, 0.0), C::new(h, 0.0)]).unwrap()
}

fn phase_benchmark() -> (bool, String) {
    let start = Instant::now();
    let c = families::phase::<f64>(16).unwrap();
    let r = match realize_continuous(&c, None) {
        Ok(r) => r,
        Err(e) => return (false, format!("realization failed: {e}")),
    };
    let bad = r
        .decomposition
        .components()
        .iter()
        .filter(|p| !(validate_finite(p).is_valid() && p.dim() == 2 && p.len() <= 4))
        .count();
    let rho = plus_state();
    let f = |p: &povm_realize::OutcomePoint<f64>| p.coordinates[0].cos();
    let quad = expectation(&rho, f, &c).unwrap();
    let double = mixture_expectation(&rho, f, &r.decomposition).unwrap();
    let samples = sample_two_stage(&rho, &r.decomposition, SHOTS, 4).unwrap();
    let values: Vec<f64> = samples.iter().map(|s| f(&s.outcome_point)).collect();
    let mean = values.iter().sum::<f64>() / SHOTS as f64;
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (SHOTS - 1) as f64;
    let se = (var / SHOTS as f64).sqrt();
    let elapsed = start.elapsed();
    let pass = bad == 0
        && (quad - double).abs() <= 1e-8
        && (quad - 0.5).abs() <= 1e-6
        && (double - 0.5).abs() <= 1e-6
        && (mean - 0.5).abs() <= 4.0 * se
        && elapsed < Duration::from_secs(30);
    let max_len = r.decomposition.components().iter().map(FinitePovmF64::len).max().unwrap_or(0);
    let detail = format!(
        "{} components (max {max_len} outcomes, {bad} invalid); quadrature {quad:.12}, double sum {double:.12}, \
         |diff| {:.1e}; Monte Carlo {mean:.5} ({:.2} standard errors); {:.2} s (limit 30 s)",
        r.decomposition.len(),
        (quad - double).abs(),
        (mean - 0.5).abs() / se,
        elapsed.as_secs_f64()
    );
    (pass, detail)
}

// ---- criterion 5 -------------------------------------------------------

fn noncompact_line() -> (bool, String) {
    let (sigma, half_width) = (1.0, 6.0);
    let c = families::line::<f64>(sigma, half_width, 64).unwrap();
    let r = match realize_continuous(&c, None) {
        Ok(r) => r,
        Err(e) => return (false, format!("realization failed: {e}")),
    };
    let limit = 1e-6 * c.dim() as f64;
    let outside = r
        .decomposition
        .components()
        .iter()
        .flat_map(|p| p.outcomes())
        .filter(|p| p.coordinates[0].abs() > half_width)
        .count();
    let pass = r.truncation_mass < limit && outside == 0;
    let detail = format!(
        "L = 6 sigma, truncation mass {:.3e} (limit {limit:.0e}), {} components, {outside} points outside [-L, L]",
        r.truncation_mass,
        r.decomposition.len()
    );
    (pass, detail)
}

// ---- criterion 6 -------------------------------------------------------

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn determinism() -> (bool, String) {
    let dir = tempfile::tempdir().unwrap();
    let out = |name: &str| dir.path().join(name);
    let read = |p: &Path| std::fs::read(p).unwrap();
    let mut checks = Vec::new();

    for name in ["depolarized_trine.json", "smeared_two_outcome.json", "trine.json"] {
        let (a, b) = (out("a.json"), out("b.json"));
        let ok = commands::decompose(&fixture(name), None, &a).is_ok() && commands::decompose(&fixture(name), None, &b).is_ok();
        checks.push((format!("decompose {name}"), ok && read(&a) == read(&b)));
    }

    let cert = out("phase_cert.json");
    let again = out("phase_cert_again.json");
    let opts = commands::RealizeOptions::default();
    let source = fixture("phase.json");
    let realized = commands::realize(source.to_str().unwrap(), &opts, &cert).is_ok()
        && commands::realize(source.to_str().unwrap(), &opts, &again).is_ok();
    checks.push(("realize phase".into(), realized && read(&cert) == read(&again)));
    for workers in [1, 4] {
        let (a, b) = (out("a.txt"), out("b.txt"));
        let state = fixture("state_plus.json");
        let ok = commands::sample(&cert, &state, 20_000, 9, workers, &a).is_ok()
            && commands::sample(&cert, &state, 20_000, 9, workers, &b).is_ok();
        checks.push((format!("sample workers={workers}"), ok && read(&a) == read(&b)));
    }

    let failed: Vec<&str> = checks.iter().filter(|c| !c.1).map(|c| c.0.as_str()).collect();
    let detail = if failed.is_empty() {
        format!("{} output pairs byte-identical", checks.len())
    } else {
        format!("differs: {}", failed.join(", "))
    };
    (failed.is_empty(), detail)
}

// ---- criterion 7 -------------------------------------------------------

fn statistical_consistency() -> (bool, String) {
    let c = families::phase::<f64>(16).unwrap();
    let r = realize_continuous(&c, None).unwrap();
    let disc = &r.discretized;
    let n = disc.len();
    let psi = fixtures::random_pure_state::<f64>(2, &mut RandomStream::new(77));
    let rho = DensityStateF64::pure(&psi).unwrap();
    let index: Vec<Vec<usize>> = r
        .decomposition
        .components()
        .iter()
        .map(|p| {
            p.outcomes()
                .iter()
                .map(|pt| disc.space().locate(disc.outcomes(), pt, 1e-9).expect("component outcome in discretization"))
                .collect()
        })
        .collect();
    let bound = tv_bound(n, SHOTS);
    let (mut within, mut worst) = (0, 0.0f64);
    for seed in 0..100u64 {
        let two_stage = sample_two_stage(&rho, &r.decomposition, SHOTS, 2 * seed).unwrap();
        let direct = sample_direct(&rho, disc, SHOTS, 2 * seed + 1).unwrap();
        let mut diff = vec![0i64; n];
        for s in &two_stage {
            diff[index[s.component_index][s.outcome_index]] += 1;
        }
        for s in &direct {
            diff[s.outcome_index] -= 1;
        }
        let tv = 0.5 * diff.iter().map(|c| c.unsigned_abs() as f64).sum::<f64>() / SHOTS as f64;
        worst = worst.max(tv);
        if tv <= bound {
            within += 1;
        }
    }
    let detail = format!(
        "phase-16, {SHOTS} shots per run: {within}/100 seeds with TV <= {bound:.4} (need 99), worst TV {worst:.4}"
    );
    (within >= 99, detail)
}

fn main() -> ExitCode {
    let start = Instant::now();
    let cases = corpus();
    let built = start.elapsed();

    type Criterion<'a> = (&'static str, Box<dyn FnOnce() -> (bool, String) + 'a>);
    let criteria: Vec<Criterion> = vec![
        ("d^2 support bound", Box::new(|| support_bound(&cases, built))),
        ("exact reconstruction", Box::new(|| reconstruction(&cases))),
        ("extremality soundness", Box::new(|| soundness(&cases))),
        ("phase benchmark", Box::new(phase_benchmark)),
        ("noncompact line surrogate", Box::new(noncompact_line)),
        ("determinism", Box::new(determinism)),
        ("statistical consistency", Box::new(statistical_consistency)),
    ];
    let mut failures = 0;
    for (k, (name, run)) in criteria.into_iter().enumerate() {
        let t = Instant::now();
        let (pass, detail) = run();
        if !pass {
            failures += 1;
        }
        println!(
            "{} criterion {} ({name}): {detail} [{:.2} s]",
            if pass { "PASS" } else { "FAIL" },
            k + 1,
            t.elapsed().as_secs_f64()
        );
    }
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failures} acceptance criteria failed");
        ExitCode::FAILURE
    }
}
