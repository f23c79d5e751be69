//! POVM, state and certificate documents.
//!
//! A matrix is a list of rows and each entry is `[re, im]`. Objects are
//! checked member by member; unknown members are rejected.

use std::fs;
use std::path::Path;

use num_complex::Complex;
use serde_json::{json, Map, Value};

use povm_realize::families;
use povm_realize::{
    Axis, ComponentCertificate, ContinuousPovm, DensityState, FinitePovm, HermitianOperator, MixtureDecomposition,
    OutcomePoint, OutcomeSpace,
};

use crate::canonical::{real, to_canonical};
use crate::CliError;

pub const FORMAT_VERSION: u64 = 1;

fn perr(msg: impl Into<String>) -> CliError {
    CliError::Parse(msg.into())
}

pub fn read_json(path: &Path) -> Result<Value, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    serde_json::from_str(&text).map_err(|e| perr(format!("{}: {e}", path.display())))
}

pub fn write_text(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|e| CliError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

/// Canonical JSON followed by a newline.
pub fn write_json(path: &Path, v: &Value) -> Result<(), CliError> {
    write_text(path, &(to_canonical(v)? + "\n"))
}

/// The object's members, after checking that all `required` ones are
/// present and nothing outside `required` and `optional` is.
fn object<'a>(v: &'a Value, what: &str, required: &[&str], optional: &[&str]) -> Result<&'a Map<String, Value>, CliError> {
    let map = v.as_object().ok_or_else(|| perr(format!("{what} must be an object")))?;
    for key in map.keys() {
        if !required.contains(&key.as_str()) && !optional.contains(&key.as_str()) {
            return Err(perr(format!("{what}: unknown member \"{key}\"")));
        }
    }
    for key in required {
        if !map.contains_key(*key) {
            return Err(perr(format!("{what}: missing member \"{key}\"")));
        }
    }
    Ok(map)
}

fn number(v: &Value, what: &str) -> Result<f64, CliError> {
    v.as_f64().ok_or_else(|| perr(format!("{what} must be a number")))
}

fn count(v: &Value, what: &str) -> Result<usize, CliError> {
    v.as_u64()
        .map(|u| u as usize)
        .ok_or_else(|| perr(format!("{what} must be a non-negative integer")))
}

fn array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>, CliError> {
    v.as_array().ok_or_else(|| perr(format!("{what} must be an array")))
}

fn check_version(map: &Map<String, Value>, what: &str) -> Result<(), CliError> {
    match map.get("format_version").and_then(Value::as_u64) {
        Some(FORMAT_VERSION) => Ok(()),
        _ => Err(perr(format!("{what}: format_version must be {FORMAT_VERSION}"))),
    }
}

pub fn matrix_to_json(a: &HermitianOperator<f64>) -> Value {
    Value::Array(
        a.to_rows()
            .into_iter()
            .map(|row| Value::Array(row.into_iter().map(|z| json!([real(z.re), real(z.im)])).collect()))
            .collect(),
    )
}

#[allow(clippy::needless_range_loop)]
pub fn matrix_from_json(v: &Value, dim: usize, what: &str) -> Result<HermitianOperator<f64>, CliError> {
    let rows = array(v, what)?;
    if rows.len() != dim {
        return Err(perr(format!("{what}: expected {dim} rows, found {}", rows.len())));
    }
    let mut entries = Vec::with_capacity(dim);
    for (j, row) in rows.iter().enumerate() {
        let row = array(row, what)?;
        if row.len() != dim {
            return Err(perr(format!("{what}: row {j} has {} entries, expected {dim}", row.len())));
        }
        let parsed = row
            .iter()
            .map(|z| match z.as_array().map(Vec::as_slice) {
                Some([re, im]) => Ok(Complex::new(number(re, what)?, number(im, what)?)),
                _ => Err(perr(format!("{what}: entries must be [re, im] pairs"))),
            })
            .collect::<Result<Vec<_>, _>>()?;
        entries.push(parsed);
    }
    let scale = entries.iter().flatten().map(|z| z.norm()).fold(1.0, f64::max);
    for j in 0..dim {
        for k in j..dim {
            if (entries[j][k] - entries[k][j].conj()).norm() > 1e-12 * scale {
                return Err(perr(format!("{what}: matrix is not Hermitian at ({j}, {k})")));
            }
        }
    }
    HermitianOperator::from_rows(&entries).map_err(|e| perr(format!("{what}: {e}")))
}

fn bound_to_json(x: f64) -> Value {
    if x.is_finite() {
        real(x)
    } else {
        Value::Null
    }
}

pub fn space_to_json(space: &OutcomeSpace<f64>) -> Value {
    Value::Array(
        space
            .axes
            .iter()
            .map(|a| json!({"lower": bound_to_json(a.lower), "upper": bound_to_json(a.upper), "periodic": a.periodic}))
            .collect(),
    )
}

pub fn space_from_json(v: &Value) -> Result<OutcomeSpace<f64>, CliError> {
    let axes = array(v, "outcome_space")?
        .iter()
        .map(|a| {
            let m = object(a, "outcome_space axis", &["lower", "upper", "periodic"], &[])?;
            let bound = |key: &str, inf: f64| match &m[key] {
                Value::Null => Ok(inf),
                x => number(x, "axis bound"),
            };
            let lower = bound("lower", f64::NEG_INFINITY)?;
            let upper = bound("upper", f64::INFINITY)?;
            let periodic = m["periodic"].as_bool().ok_or_else(|| perr("periodic must be a boolean"))?;
            if !(lower <= upper) || (periodic && !(upper - lower).is_finite()) {
                return Err(perr("outcome_space axis has inconsistent bounds"));
            }
            Ok(Axis { lower, upper, periodic })
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(OutcomeSpace::new(axes))
}

fn point_to_json(p: &OutcomePoint<f64>, index: usize) -> Value {
    let label = p.label.clone().unwrap_or_else(|| index.to_string());
    json!({"label": label, "point": p.coordinates.iter().map(|x| real(*x)).collect::<Vec<_>>()})
}

fn point_from_json(v: &Value) -> Result<OutcomePoint<f64>, CliError> {
    let m = object(v, "outcome", &["point"], &["label"])?;
    let coords = array(&m["point"], "point")?
        .iter()
        .map(|x| number(x, "point coordinate"))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(match m.get("label") {
        Some(Value::String(s)) => OutcomePoint::labeled(coords, s.clone()),
        Some(_) => return Err(perr("label must be a string")),
        None => OutcomePoint::new(coords),
    })
}

/// Finite POVM document. Points carry their label (the index when none).
pub fn finite_to_json(p: &FinitePovm<f64>) -> Value {
    json!({
        "format_version": FORMAT_VERSION,
        "kind": "finite",
        "dim": p.dim(),
        "outcome_space": space_to_json(p.space()),
        "outcomes": p.outcomes().iter().enumerate().map(|(k, o)| point_to_json(o, k)).collect::<Vec<_>>(),
        "effects": p.effects().iter().map(matrix_to_json).collect::<Vec<_>>(),
    })
}

/// Parses shapes only; positivity and normalization are left to the caller.
pub fn finite_from_json(v: &Value) -> Result<FinitePovm<f64>, CliError> {
    let m = object(
        v,
        "finite POVM",
        &["format_version", "kind", "dim", "outcomes", "effects"],
        &["outcome_space"],
    )?;
    check_version(m, "finite POVM")?;
    if m["kind"] != "finite" {
        return Err(perr("kind must be \"finite\""));
    }
    let dim = count(&m["dim"], "dim")?;
    if dim == 0 {
        return Err(perr("dim must be at least 1"));
    }
    let outcomes = array(&m["outcomes"], "outcomes")?
        .iter()
        .map(point_from_json)
        .collect::<Result<Vec<_>, _>>()?;
    let effects = array(&m["effects"], "effects")?
        .iter()
        .enumerate()
        .map(|(k, e)| matrix_from_json(e, dim, &format!("effect {k}")))
        .collect::<Result<Vec<_>, _>>()?;
    let space = match m.get("outcome_space") {
        Some(s) => space_from_json(s)?,
        None => OutcomeSpace::unbounded(outcomes.first().map_or(1, OutcomePoint::ambient_dim)),
    };
    FinitePovm::from_parts(space, outcomes, effects).map_err(|e| perr(e.to_string()))
}

/// Continuous POVM together with the effective document it was built from.
pub struct ContinuousSpec {
    pub document: Value,
    pub povm: ContinuousPovm<f64>,
}

pub enum PovmDocument {
    Finite(FinitePovm<f64>),
    Continuous(ContinuousSpec),
}

pub fn povm_from_json(v: &Value) -> Result<PovmDocument, CliError> {
    let kind = v.get("kind").and_then(Value::as_str);
    match kind {
        Some("finite") => Ok(PovmDocument::Finite(finite_from_json(v)?)),
        Some("continuous") => Ok(PovmDocument::Continuous(continuous_from_json(v)?)),
        _ => Err(perr("kind must be \"finite\" or \"continuous\"")),
    }
}

/// Family parameters as they appear under `"family"`.
pub fn family_document(name: &str, nodes: Option<usize>, seed: Option<u64>, sigma: Option<f64>, half_width: Option<f64>, dim: Option<usize>) -> Result<Value, CliError> {
    let family = match name {
        "phase" => json!({"name": "phase", "nodes": nodes.unwrap_or(16)}),
        "sphere" => json!({"name": "sphere", "nodes": nodes.unwrap_or(100)}),
        "sphere-random" => json!({"name": "sphere-random", "nodes": nodes.unwrap_or(100), "seed": seed.unwrap_or(0)}),
        "line" => json!({
            "name": "line",
            "nodes": nodes.unwrap_or(64),
            "sigma": real(sigma.unwrap_or(1.0)),
            "half_width": real(half_width.unwrap_or(6.0)),
        }),
        "trivial" => json!({"name": "trivial", "dim": dim.unwrap_or(2)}),
        other => return Err(perr(format!("unknown family \"{other}\" (phase, sphere, sphere-random, line, trivial)"))),
    };
    let d = family.get("dim").and_then(Value::as_u64).unwrap_or(2);
    Ok(json!({"format_version": FORMAT_VERSION, "kind": "continuous", "dim": d, "family": family}))
}

fn family_from_json(v: &Value, dim: usize) -> Result<ContinuousPovm<f64>, CliError> {
    let name = v.get("name").and_then(Value::as_str).ok_or_else(|| perr("family needs a name"))?;
    let built = match name {
        "phase" => {
            let m = object(v, "phase family", &["name", "nodes"], &[])?;
            families::phase(count(&m["nodes"], "nodes")?)
        }
        "sphere" => {
            let m = object(v, "sphere family", &["name", "nodes"], &[])?;
            families::sphere_fibonacci(count(&m["nodes"], "nodes")?)
        }
        "sphere-random" => {
            let m = object(v, "sphere-random family", &["name", "nodes", "seed"], &[])?;
            let seed = m["seed"].as_u64().ok_or_else(|| perr("seed must be a non-negative integer"))?;
            families::sphere_random(count(&m["nodes"], "nodes")?, seed)
        }
        "line" => {
            let m = object(v, "line family", &["name", "nodes", "sigma", "half_width"], &[])?;
            families::line(
                number(&m["sigma"], "sigma")?,
                number(&m["half_width"], "half_width")?,
                count(&m["nodes"], "nodes")?,
            )
        }
        "trivial" => {
            let m = object(v, "trivial family", &["name", "dim"], &[])?;
            families::trivial(count(&m["dim"], "dim")?)
        }
        other => return Err(perr(format!("unknown family \"{other}\""))),
    }
    .map_err(CliError::from)?;
    if built.dim() != dim {
        return Err(perr(format!("family has dimension {}, document says {dim}", built.dim())));
    }
    Ok(built)
}

fn tabulated_from_json(v: &Value, dim: usize) -> Result<ContinuousPovm<f64>, CliError> {
    let m = object(v, "tabulated", &["nodes"], &["outcome_space"])?;
    let table = array(&m["nodes"], "tabulated nodes")?
        .iter()
        .enumerate()
        .map(|(k, n)| {
            let n = object(n, "tabulated node", &["point", "weight", "density_matrix"], &[])?;
            let point = point_from_json(&json!({"point": n["point"]}))?;
            let weight = number(&n["weight"], "weight")?;
            let density = matrix_from_json(&n["density_matrix"], dim, &format!("density at node {k}"))?;
            Ok((point, weight, density))
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    let ambient = table.first().map_or(1, |t| t.0.ambient_dim());
    let space = match m.get("outcome_space") {
        Some(s) => space_from_json(s)?,
        None => OutcomeSpace::unbounded(ambient),
    };
    Ok(families::tabulated(dim, space, table)?)
}

fn continuous_from_json(v: &Value) -> Result<ContinuousSpec, CliError> {
    let m = object(v, "continuous POVM", &["format_version", "kind", "dim"], &["family", "tabulated"])?;
    check_version(m, "continuous POVM")?;
    let dim = count(&m["dim"], "dim")?;
    let povm = match (m.get("family"), m.get("tabulated")) {
        (Some(f), None) => family_from_json(f, dim)?,
        (None, Some(t)) => tabulated_from_json(t, dim)?,
        _ => return Err(perr("continuous POVM needs exactly one of \"family\" or \"tabulated\"")),
    };
    Ok(ContinuousSpec {
        document: v.clone(),
        povm,
    })
}

pub fn state_to_json(rho: &DensityState<f64>) -> Value {
    json!({"format_version": FORMAT_VERSION, "dim": rho.dim(), "matrix": matrix_to_json(rho.matrix())})
}

/// `{"matrix": ...}` or a pure state `{"vector": [[re, im], ...]}`.
pub fn state_from_json(v: &Value) -> Result<DensityState<f64>, CliError> {
    let m = object(v, "state", &["format_version", "dim"], &["matrix", "vector"])?;
    check_version(m, "state")?;
    let dim = count(&m["dim"], "dim")?;
    match (m.get("matrix"), m.get("vector")) {
        (Some(a), None) => Ok(DensityState::new(matrix_from_json(a, dim, "state matrix")?)?),
        (None, Some(vec)) => {
            let psi = array(vec, "state vector")?
                .iter()
                .map(|z| match z.as_array().map(Vec::as_slice) {
                    Some([re, im]) => Ok(Complex::new(number(re, "re")?, number(im, "im")?)),
                    _ => Err(perr("state vector entries must be [re, im] pairs")),
                })
                .collect::<Result<Vec<_>, _>>()?;
            if psi.len() != dim {
                return Err(perr(format!("state vector has {} entries, dim is {dim}", psi.len())));
            }
            Ok(DensityState::pure(&psi)?)
        }
        _ => Err(perr("state needs exactly one of \"matrix\" or \"vector\"")),
    }
}

/// Extra members written by `realize`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RealizationInfo {
    pub discretization_nodes: usize,
    pub normalization_correction: f64,
    pub truncation_mass: f64,
}

pub struct CertificateInput<'a> {
    pub decomposition: &'a MixtureDecomposition<f64>,
    pub target: &'a FinitePovm<f64>,
    pub reconstruction_error: f64,
    pub input_digest: String,
    pub partial: bool,
    pub realization: Option<RealizationInfo>,
}

pub fn certificate_to_json(c: &CertificateInput<'_>) -> Value {
    let d = c.decomposition;
    let mut v = json!({
        "format_version": FORMAT_VERSION,
        "kind": "certificate",
        "tool_version": crate::TOOL_VERSION,
        "input_digest": c.input_digest,
        "dim": d.dim(),
        "partial": c.partial,
        "target": finite_to_json(c.target),
        "weights": d.weights().iter().map(|w| real(*w)).collect::<Vec<_>>(),
        "components": d.components().iter().map(finite_to_json).collect::<Vec<_>>(),
        "certificates": d.certificates().iter().map(|k| json!({
            "extremal": k.extremal,
            "kernel_dimension": k.kernel_dimension,
            "max_outcomes_check": k.max_outcomes_check,
            "clipping_residual": real(k.clipping_residual),
        })).collect::<Vec<_>>(),
        "reconstruction_error": real(c.reconstruction_error),
    });
    if let Some(r) = c.realization {
        let m = v.as_object_mut().expect("object");
        m.insert("discretization_nodes".into(), json!(r.discretization_nodes));
        m.insert("normalization_correction".into(), real(r.normalization_correction));
        m.insert("truncation_mass".into(), real(r.truncation_mass));
    }
    v
}

/// Certificate contents as written, before any consistency check.
#[derive(Debug, Clone)]
pub struct Certificate {
    pub input_digest: String,
    pub tool_version: String,
    pub dim: usize,
    pub partial: bool,
    pub target: FinitePovm<f64>,
    pub weights: Vec<f64>,
    pub components: Vec<FinitePovm<f64>>,
    pub certificates: Vec<ComponentCertificate<f64>>,
    pub reconstruction_error: f64,
    pub realization: Option<RealizationInfo>,
}

impl Certificate {
    /// The mixture, if the weights and components form one.
    pub fn decomposition(&self) -> Result<MixtureDecomposition<f64>, CliError> {
        Ok(MixtureDecomposition::new(
            self.weights.clone(),
            self.components.clone(),
            self.certificates.clone(),
        )?)
    }
}

pub fn certificate_from_json(v: &Value) -> Result<Certificate, CliError> {
    let m = object(
        v,
        "certificate",
        &[
            "format_version",
            "kind",
            "tool_version",
            "input_digest",
            "dim",
            "partial",
            "target",
            "weights",
            "components",
            "certificates",
            "reconstruction_error",
        ],
        &["discretization_nodes", "normalization_correction", "truncation_mass"],
    )?;
    check_version(m, "certificate")?;
    if m["kind"] != "certificate" {
        return Err(perr("kind must be \"certificate\""));
    }
    let string = |key: &str| {
        m[key]
            .as_str()
            .map(str::to_owned)
            .ok_or_else(|| perr(format!("{key} must be a string")))
    };
    let weights = array(&m["weights"], "weights")?
        .iter()
        .map(|w| number(w, "weight"))
        .collect::<Result<Vec<_>, _>>()?;
    let components = array(&m["components"], "components")?
        .iter()
        .map(finite_from_json)
        .collect::<Result<Vec<_>, _>>()?;
    let certificates = array(&m["certificates"], "certificates")?
        .iter()
        .map(|c| {
            let c = object(
                c,
                "component certificate",
                &["extremal", "kernel_dimension", "max_outcomes_check", "clipping_residual"],
                &[],
            )?;
            Ok(ComponentCertificate {
                extremal: c["extremal"].as_bool().ok_or_else(|| perr("extremal must be a boolean"))?,
                kernel_dimension: count(&c["kernel_dimension"], "kernel_dimension")?,
                max_outcomes_check: c["max_outcomes_check"]
                    .as_bool()
                    .ok_or_else(|| perr("max_outcomes_check must be a boolean"))?,
                clipping_residual: number(&c["clipping_residual"], "clipping_residual")?,
            })
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    if weights.len() != components.len() || weights.len() != certificates.len() || weights.is_empty() {
        return Err(perr("weights, components and certificates must be non-empty and of equal length"));
    }
    let realization = match (
        m.get("discretization_nodes"),
        m.get("normalization_correction"),
        m.get("truncation_mass"),
    ) {
        (None, None, None) => None,
        (Some(n), Some(c), Some(t)) => Some(RealizationInfo {
            discretization_nodes: count(n, "discretization_nodes")?,
            normalization_correction: number(c, "normalization_correction")?,
            truncation_mass: number(t, "truncation_mass")?,
        }),
        _ => return Err(perr("realization members must appear together")),
    };
    Ok(Certificate {
        input_digest: string("input_digest")?,
        tool_version: string("tool_version")?,
        dim: count(&m["dim"], "dim")?,
        partial: m["partial"].as_bool().ok_or_else(|| perr("partial must be a boolean"))?,
        target: finite_from_json(&m["target"])?,
        weights,
        components,
        certificates,
        reconstruction_error: number(&m["reconstruction_error"], "reconstruction_error")?,
        realization,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use povm_realize::fixtures;

    #[test]
    fn finite_round_trip_is_identity() {
        for p in [fixtures::qubit_sic::<f64>(), fixtures::trine(), fixtures::projective_basis(3)] {
            let text = to_canonical(&finite_to_json(&p)).unwrap();
            let back = finite_from_json(&serde_json::from_str(&text).unwrap()).unwrap();
            assert_eq!(to_canonical(&finite_to_json(&back)).unwrap(), text);
            for (a, b) in p.effects().iter().zip(back.effects()) {
                assert_eq!(a, b);
            }
        }
    }

    #[test]
    fn unknown_members_are_rejected() {
        let mut v = finite_to_json(&fixtures::trine::<f64>());
        v.as_object_mut().unwrap().insert("comment".into(), json!("hi"));
        assert!(matches!(finite_from_json(&v), Err(CliError::Parse(_))));
    }

    #[test]
    fn non_hermitian_effect_is_rejected() {
        let v = json!([[[1.0, 0.0], [0.5, 0.0]], [[0.0, 0.0], [0.0, 0.0]]]);
        assert!(matrix_from_json(&v, 2, "effect").is_err());
    }

    #[test]
    fn states_parse_from_vector_or_matrix() {
        let plus = json!({"format_version": 1, "dim": 2, "vector": [[1.0, 0.0], [1.0, 0.0]]});
        let rho = state_from_json(&plus).unwrap();
        assert!((rho.matrix().get(0, 1).re - 0.5).abs() < 1e-15);
        let back = state_from_json(&state_to_json(&rho)).unwrap();
        assert_eq!(back, rho);
    }

    #[test]
    fn family_documents_build() {
        for name in ["phase", "sphere", "sphere-random", "line", "trivial"] {
            let doc = family_document(name, None, None, None, None, None).unwrap();
            assert!(matches!(povm_from_json(&doc), Ok(PovmDocument::Continuous(_))), "{name}");
        }
        assert!(family_document("torus", None, None, None, None, None).is_err());
    }
}
