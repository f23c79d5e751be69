use std::fmt::Write as _;
use std::path::Path;

use num_complex::Complex;
use serde_json::{json, Value};

use povm_realize::realize::{compare_distributions, format_samples, parse_samples, sample_two_stage_parallel, tv_bound};
use povm_realize::{
    decompose_extremal, default_max_leaves, discretize, extremality_check, fixtures, reconstruction_error,
    validate_finite, DensityState, Error, FinitePovm, HermitianOperator, MixtureDecomposition, OutcomePoint,
    OutcomeSpace,
};

use crate::canonical::digest;
use crate::format::{
    certificate_from_json, certificate_to_json, family_document, finite_to_json, povm_from_json, read_json,
    state_from_json, state_to_json, write_json, write_text, Certificate, CertificateInput, PovmDocument,
    RealizationInfo,
};
use crate::{CliError, Report};

const RECONSTRUCTION_TOL: f64 = 1e-8;
const STORED_ERROR_TOL: f64 = 1e-12;
const WEIGHT_SUM_TOL: f64 = 1e-12;
const POINT_TOL: f64 = 1e-9;

fn finite_or_discretized(doc: PovmDocument) -> Result<FinitePovm<f64>, CliError> {
    match doc {
        PovmDocument::Finite(p) => Ok(p),
        PovmDocument::Continuous(c) => Ok(discretize(&c.povm)?.povm),
    }
}

pub fn validate(path: &Path) -> Result<Report, CliError> {
    let doc = povm_from_json(&read_json(path)?);
    match doc {
        Ok(PovmDocument::Finite(p)) => {
            let report = validate_finite(&p);
            if report.is_valid() {
                Ok(Report::ok(format!("valid: {} outcomes, d = {}\n", p.len(), p.dim())))
            } else {
                let mut text = String::new();
                for v in &report.violations {
                    writeln!(text, "{v}").unwrap();
                }
                Ok(Report { code: 1, text })
            }
        }
        Ok(PovmDocument::Continuous(c)) => Ok(Report::ok(format!(
            "valid: continuous family \"{}\", {} nodes, d = {}, mass {:.16e}\n",
            c.povm.name(),
            c.povm.nodes().len(),
            c.povm.dim(),
            c.povm.total_mass()
        ))),
        Err(e) => Err(e),
    }
}

pub fn check_extremal(path: &Path) -> Result<Report, CliError> {
    let p = finite_or_discretized(povm_from_json(&read_json(path)?)?)?;
    let r = extremality_check(&p)?;
    let d2 = p.dim() * p.dim();
    let mut text = if r.extremal {
        "extremal\n".to_string()
    } else {
        format!("not extremal (kernel dimension {})\n", r.kernel_dimension)
    };
    if r.marginal {
        text.push_str("marginal: kernel vanishes under a tighter cutoff, not certified\n");
    }
    let relation = if p.len() <= d2 { "<=" } else { ">" };
    writeln!(text, "outcome count {} {relation} {d2}", p.len()).unwrap();
    Ok(Report::ok(text))
}

fn summary(d: &MixtureDecomposition<f64>, error: f64, out: &Path) -> String {
    let certified = d.certificates().iter().filter(|c| c.extremal).count();
    format!(
        "components: {}\ncertified extremal: {certified}\nreconstruction error: {error:.3e}\nwrote {}\n",
        d.len(),
        out.display()
    )
}

/// Decomposes `target`, writes the certificate and reports overflow as exit 3.
fn decompose_and_write(
    target: &FinitePovm<f64>,
    max_leaves: Option<usize>,
    input_digest: String,
    realization: Option<RealizationInfo>,
    out: &Path,
) -> Result<Report, CliError> {
    let budget = max_leaves.unwrap_or_else(|| default_max_leaves(target.len(), target.dim()));
    let (decomposition, partial) = match decompose_extremal(target, budget) {
        Ok(d) => (d, false),
        Err(Error::DecompositionOverflow { partial, .. }) => (*partial, true),
        Err(e) => return Err(e.into()),
    };
    let error = reconstruction_error(&decomposition, target)?;
    let cert = certificate_to_json(&CertificateInput {
        decomposition: &decomposition,
        target,
        reconstruction_error: error,
        input_digest,
        partial,
        realization,
    });
    write_json(out, &cert)?;
    let mut text = summary(&decomposition, error, out);
    if partial {
        writeln!(text, "leaf budget of {budget} exhausted; partial decomposition written").unwrap();
        return Ok(Report { code: 3, text });
    }
    Ok(Report::ok(text))
}

pub fn decompose(path: &Path, max_leaves: Option<usize>, out: &Path) -> Result<Report, CliError> {
    let doc = read_json(path)?;
    let input_digest = digest(&doc)?;
    match povm_from_json(&doc)? {
        PovmDocument::Finite(p) => {
            let report = validate_finite(&p);
            if !report.is_valid() {
                return Err(CliError::Failed(format!("invalid POVM: {report}")));
            }
            decompose_and_write(&p, max_leaves, input_digest, None, out)
        }
        PovmDocument::Continuous(_) => Err(CliError::Parse(
            "decompose expects a finite POVM; use realize for continuous families".into(),
        )),
    }
}

/// Parameters of `realize` besides the source.
#[derive(Debug, Clone, Default)]
pub struct RealizeOptions {
    pub nodes: Option<usize>,
    pub seed: Option<u64>,
    pub sigma: Option<f64>,
    pub half_width: Option<f64>,
    pub dim: Option<usize>,
    pub max_leaves: Option<usize>,
}

/// The effective input document: a file, or a shipped family by name.
/// `--nodes` also overrides the node count of a family given by file.
fn realize_document(source: &str, opts: &RealizeOptions) -> Result<Value, CliError> {
    let path = Path::new(source);
    if !path.exists() {
        return family_document(source, opts.nodes, opts.seed, opts.sigma, opts.half_width, opts.dim);
    }
    let mut doc = read_json(path)?;
    if let Some(n) = opts.nodes {
        match doc.get_mut("family").and_then(Value::as_object_mut) {
            Some(f) if f.contains_key("nodes") => {
                f.insert("nodes".into(), json!(n));
            }
            _ => return Err(CliError::Parse("--nodes applies only to families with a node count".into())),
        }
    }
    Ok(doc)
}

pub fn realize(source: &str, opts: &RealizeOptions, out: &Path) -> Result<Report, CliError> {
    let doc = realize_document(source, opts)?;
    let input_digest = digest(&doc)?;
    let spec = match povm_from_json(&doc)? {
        PovmDocument::Continuous(c) => c,
        PovmDocument::Finite(_) => {
            return Err(CliError::Parse(
                "realize expects a continuous POVM; use decompose for finite ones".into(),
            ))
        }
    };
    let disc = discretize(&spec.povm)?;
    let info = RealizationInfo {
        discretization_nodes: spec.povm.nodes().len(),
        normalization_correction: disc.normalization_correction,
        truncation_mass: spec.povm.truncation_mass(),
    };
    let mut report = decompose_and_write(&disc.povm, opts.max_leaves, input_digest, Some(info), out)?;
    report.text = format!(
        "family: {}\nnodes: {}\nnormalization correction: {:.3e}\ntruncation mass: {:.3e}\n{}",
        spec.povm.name(),
        info.discretization_nodes,
        info.normalization_correction,
        info.truncation_mass,
        report.text
    );
    Ok(report)
}

pub fn sample(cert_path: &Path, state_path: &Path, shots: usize, seed: u64, workers: usize, out: &Path) -> Result<Report, CliError> {
    let cert = certificate_from_json(&read_json(cert_path)?)?;
    let rho = state_from_json(&read_json(state_path)?)?;
    let decomposition = cert.decomposition()?;
    let records = sample_two_stage_parallel(&rho, &decomposition, shots, seed, workers.max(1))?;
    write_text(out, &format_samples(&records))?;
    Ok(Report::ok(format!("wrote {} samples to {}\n", records.len(), out.display())))
}

struct Checks {
    text: String,
    failed: bool,
}

impl Checks {
    fn record(&mut self, pass: bool, what: String) {
        self.failed |= !pass;
        writeln!(self.text, "{} {what}", if pass { "ok  " } else { "FAIL" }).unwrap();
    }
}

/// Weighted sum of the component effects on the target's outcome list.
fn rebuild(cert: &Certificate) -> Result<Vec<HermitianOperator<f64>>, String> {
    let target = &cert.target;
    let mut effects = vec![HermitianOperator::zeros(target.dim()); target.len()];
    for (x, (w, c)) in cert.weights.iter().zip(&cert.components).enumerate() {
        if c.dim() != target.dim() {
            return Err(format!("component {x} has dimension {}", c.dim()));
        }
        for (p, e) in c.outcomes().iter().zip(c.effects()) {
            let k = target
                .space()
                .locate(target.outcomes(), p, POINT_TOL)
                .ok_or_else(|| format!("component {x} has an outcome {:?} outside the target", p.coordinates))?;
            effects[k] = effects[k].add_scaled(*w, e);
        }
    }
    Ok(effects)
}

fn check_certificate(cert: &Certificate, checks: &mut Checks) {
    let d2 = cert.dim * cert.dim;
    let sum: f64 = cert.weights.iter().sum();
    let positive = cert.weights.iter().all(|w| *w > 0.0);
    checks.record(
        positive && (sum - 1.0).abs() <= WEIGHT_SUM_TOL,
        format!("weights positive and summing to 1 (sum - 1 = {:.3e})", sum - 1.0),
    );

    match rebuild(cert) {
        Ok(effects) => {
            let error = effects
                .iter()
                .zip(cert.target.effects())
                .map(|(a, b)| a.sub(b).frobenius_norm())
                .fold(0.0, f64::max);
            checks.record(
                error <= RECONSTRUCTION_TOL,
                format!("reconstruction error {error:.3e} <= {RECONSTRUCTION_TOL:e}"),
            );
            checks.record(
                (error - cert.reconstruction_error).abs() <= STORED_ERROR_TOL,
                format!("stored reconstruction error {:.3e} matches", cert.reconstruction_error),
            );
        }
        Err(e) => checks.record(false, format!("reconstruction: {e}")),
    }

    for (x, (c, k)) in cert.components.iter().zip(&cert.certificates).enumerate() {
        let report = validate_finite(c);
        if !report.is_valid() {
            checks.record(false, format!("component {x} is not a valid POVM: {report}"));
            continue;
        }
        match extremality_check(c) {
            Ok(r) => {
                let consistent = r.kernel_dimension == k.kernel_dimension
                    && (!k.extremal || r.extremal)
                    && k.max_outcomes_check == (c.len() <= d2)
                    && (!k.extremal || c.len() <= d2);
                checks.record(
                    consistent,
                    format!(
                        "component {x}: {} (kernel dimension {}), {} outcomes",
                        if k.extremal { "extremal" } else { "not certified" },
                        r.kernel_dimension,
                        c.len()
                    ),
                );
            }
            Err(e) => checks.record(false, format!("component {x}: {e}")),
        }
    }

    let space = cert.target.space();
    let outside = std::iter::once(&cert.target)
        .chain(&cert.components)
        .flat_map(FinitePovm::outcomes)
        .filter(|p| !space.contains(p, POINT_TOL))
        .count();
    checks.record(outside == 0, format!("{outside} outcome points outside the outcome space"));
}

fn check_samples(cert: &Certificate, samples: &Path, state: &Path, checks: &mut Checks) -> Result<(), CliError> {
    let rho = state_from_json(&read_json(state)?)?;
    let text = std::fs::read_to_string(samples).map_err(|e| CliError::Io {
        path: samples.display().to_string(),
        message: e.to_string(),
    })?;
    let records = parse_samples::<f64>(&text).map_err(|e| CliError::Parse(e.to_string()))?;
    let space = cert.target.space();
    let misplaced = records
        .iter()
        .filter(|r| {
            cert.components
                .get(r.component_index)
                .and_then(|c| c.outcomes().get(r.outcome_index))
                .is_none_or(|p| !space.same_point(p, &r.outcome_point, POINT_TOL))
        })
        .count();
    checks.record(misplaced == 0, format!("{misplaced} sample records inconsistent with the components"));
    match compare_distributions(&rho, &cert.target, &records) {
        Ok(tv) => {
            let bound = tv_bound(cert.target.len(), records.len());
            checks.record(
                !tv.empty_input && tv.value <= bound,
                format!("total variation {tv} <= {bound:.4} over {} samples", records.len()),
            );
        }
        Err(e) => checks.record(false, format!("sample comparison: {e}")),
    }
    Ok(())
}

pub fn verify(cert_path: &Path, samples: Option<&Path>, state: Option<&Path>) -> Result<Report, CliError> {
    let cert = certificate_from_json(&read_json(cert_path)?)?;
    let mut checks = Checks {
        text: String::new(),
        failed: false,
    };
    check_certificate(&cert, &mut checks);
    match (samples, state) {
        (Some(s), Some(r)) => check_samples(&cert, s, r, &mut checks)?,
        (None, None) => {}
        _ => return Err(CliError::Parse("--samples and --state must be given together".into())),
    }
    Ok(Report {
        code: u8::from(checks.failed),
        text: checks.text,
    })
}

/// The shipped corpus as `(file name, document)` pairs.
pub fn fixture_corpus() -> Result<Vec<(&'static str, Value)>, CliError> {
    let finite = |p: FinitePovm<f64>| finite_to_json(&p);
    // effects summing to 0.9 I; from_parts does not validate
    let subnormalized = FinitePovm::from_parts(
        OutcomeSpace::unbounded(1),
        vec![OutcomePoint::scalar(0.0), OutcomePoint::scalar(1.0)],
        vec![HermitianOperator::diag(&[0.9, 0.0]), HermitianOperator::diag(&[0.0, 0.9])],
    )?;
    let mut docs = vec![
        ("projective_d2.json", finite(fixtures::projective_basis(2))),
        ("projective_d3.json", finite(fixtures::projective_basis(3))),
        ("trine.json", finite(fixtures::trine())),
        ("qubit_sic.json", finite(fixtures::qubit_sic())),
        ("smeared_two_outcome.json", finite(fixtures::smeared_two_outcome())),
        ("depolarized_trine.json", finite(fixtures::depolarized_trine(0.25))),
        ("identity_d2.json", finite(fixtures::identity_povm(2))),
        ("subnormalized.json", finite(subnormalized)),
    ];
    for (file, name) in [
        ("phase.json", "phase"),
        ("sphere.json", "sphere"),
        ("line.json", "line"),
        ("trivial.json", "trivial"),
    ] {
        docs.push((file, family_document(name, None, None, None, None, None)?));
    }
    docs.push((
        "singular_tabulated.json",
        json!({
            "format_version": 1,
            "kind": "continuous",
            "dim": 2,
            "tabulated": {
                "nodes": [{
                    "point": [0.0],
                    "weight": 2.0,
                    "density_matrix": [[[1.0, 0.0], [0.0, 0.0]], [[0.0, 0.0], [0.0, 0.0]]],
                }],
            },
        }),
    ));
    let one = Complex::new(1.0, 0.0);
    let plus = DensityState::pure(&[one, one])?;
    let zero = DensityState::pure(&[one, Complex::new(0.0, 0.0)])?;
    docs.push(("state_plus.json", state_to_json(&plus)));
    docs.push(("state_zero.json", state_to_json(&zero)));
    Ok(docs)
}

pub fn write_fixtures(dir: &Path) -> Result<Report, CliError> {
    std::fs::create_dir_all(dir).map_err(|e| CliError::Io {
        path: dir.display().to_string(),
        message: e.to_string(),
    })?;
    let mut text = String::new();
    for (name, doc) in fixture_corpus()? {
        let path = dir.join(name);
        write_json(&path, &doc)?;
        writeln!(text, "wrote {}", path.display()).unwrap();
    }
    Ok(Report::ok(text))
}
