//! State-file parsing, canonical JSON reports, and the command
//! implementations behind the `stellar` binary.
//!
//! Input files are UTF-8 JSON with a qubit count and exactly one of
//! `dicke` (n+1 complex pairs) or `amplitudes` (2^n complex pairs).
//! Reports are emitted in a canonical form — alphabetically sorted keys
//! and 17-significant-digit floats — so that parsing and re-serializing a
//! report is byte-identical.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use crate::cmatrix::{vec_norm, ComplexMatrix, CVector};
use crate::error::Error;
use crate::marginals::{uniqueness_check, ConstraintPairs, UniquenessOptions, UniquenessVerdict};
use crate::measures::measure_report;
use crate::slocc::{classify_detailed, slocc_equivalent, verify_ilo, LocalOperation};
use crate::symmetric::{project_symmetric, SymmetricState};
use crate::tol::TOL;

/// Report schema version.
pub const SCHEMA_VERSION: u64 = 1;

/// Error type for the CLI surface, carrying the process exit code.
#[derive(Debug)]
pub enum CliError {
    /// Unreadable file, bad JSON, or violated input contract (exit 2).
    Parse(String),
    /// Input is not permutation symmetric where required (exit 3).
    NotSymmetric { residual: f64 },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) => 2,
            CliError::NotSymmetric { .. } => 3,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Parse(msg) => write!(f, "{msg}"),
            CliError::NotSymmetric { residual } => write!(
                f,
                "state is not permutation symmetric (residual {residual:.3e} exceeds 1e-6)"
            ),
        }
    }
}

impl From<Error> for CliError {
    fn from(err: Error) -> Self {
        CliError::Parse(err.to_string())
    }
}

/// On-disk state description.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct StateFile {
    pub n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dicke: Option<Vec<[f64; 2]>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub amplitudes: Option<Vec<[f64; 2]>>,
}

/// A parsed and normalized input state.
#[derive(Debug, Clone)]
pub struct LoadedState {
    pub n: usize,
    /// Hex SHA-256 of the raw file bytes.
    pub digest: String,
    /// Set when the input norm deviated by more than 1e-6 and was rescaled.
    pub renormalized: bool,
    /// Normalized full 2^n state vector.
    pub vector: CVector,
    /// Symmetric projection, when the vector has a symmetric component.
    pub symmetric: Option<SymmetricState>,
    /// Norm of the component outside the symmetric subspace.
    pub symmetric_residual: f64,
}

impl LoadedState {
    /// The symmetric state, enforcing the residual contract for star and
    /// classification commands.
    pub fn require_symmetric(&self) -> Result<&SymmetricState, CliError> {
        match &self.symmetric {
            Some(state) if self.symmetric_residual <= 1e-6 => Ok(state),
            _ => Err(CliError::NotSymmetric { residual: self.symmetric_residual }),
        }
    }
}

/// Reads and validates a state file. A norm more than 1e-6 away from 1 is
/// rescaled with a warning on the diagnostic stream.
pub fn load_state_file(path: &Path) -> Result<LoadedState, CliError> {
    let bytes = std::fs::read(path)
        .map_err(|e| CliError::Parse(format!("cannot read {}: {e}", path.display())))?;
    let digest = hex_digest(&bytes);
    let file: StateFile = serde_json::from_slice(&bytes)
        .map_err(|e| CliError::Parse(format!("invalid state file {}: {e}", path.display())))?;
    let state = realize_state(&file)?;
    if state.renormalized {
        eprintln!(
            "stellar: warning: {} is not normalized; coefficients were renormalized",
            path.display()
        );
    }
    Ok(LoadedState { digest, ..state })
}

/// Builds the normalized vectors from a parsed state description.
pub fn realize_state(file: &StateFile) -> Result<LoadedState, CliError> {
    let n = file.n;
    if n == 0 || n > 20 {
        return Err(CliError::Parse(format!("qubit count {n} outside 1..=20")));
    }
    let (vector, renormalized) = match (&file.dicke, &file.amplitudes) {
        (Some(_), Some(_)) | (None, None) => {
            return Err(CliError::Parse(
                "state file must contain exactly one of `dicke` or `amplitudes`".into(),
            ));
        }
        (Some(dicke), None) => {
            if dicke.len() != n + 1 {
                return Err(CliError::Parse(format!(
                    "dicke list has {} entries, expected {}",
                    dicke.len(),
                    n + 1
                )));
            }
            let coeffs: Vec<Complex64> =
                dicke.iter().map(|[re, im]| Complex64::new(*re, *im)).collect();
            let norm = vec_norm(&coeffs);
            if norm < 1e-12 {
                return Err(CliError::Parse("state has vanishing norm".into()));
            }
            let state = SymmetricState::new(n, coeffs).map_err(|e| CliError::Parse(e.to_string()))?;
            (
                state.to_full_vector().map_err(|e| CliError::Parse(e.to_string()))?,
                (norm - 1.0).abs() > 1e-6,
            )
        }
        (None, Some(amps)) => {
            if amps.len() != 1 << n {
                return Err(CliError::Parse(format!(
                    "amplitude list has {} entries, expected {}",
                    amps.len(),
                    1 << n
                )));
            }
            let mut v: Vec<Complex64> =
                amps.iter().map(|[re, im]| Complex64::new(*re, *im)).collect();
            let norm = vec_norm(&v);
            if norm < 1e-12 {
                return Err(CliError::Parse("state has vanishing norm".into()));
            }
            for amp in &mut v {
                *amp /= norm;
            }
            (v, (norm - 1.0).abs() > 1e-6)
        }
    };
    // Commands that need exchange symmetry check the residual later;
    // marginal analyses accept any pure state.
    let (symmetric, symmetric_residual) = match project_symmetric(&vector) {
        Ok((state, residual)) => (Some(state), residual),
        Err(Error::NotSymmetric { residual }) => (None, residual),
        Err(e) => return Err(CliError::Parse(e.to_string())),
    };
    Ok(LoadedState {
        n,
        digest: String::new(),
        renormalized,
        vector,
        symmetric,
        symmetric_residual,
    })
}

/// One star in a report: spherical angles plus Bloch coordinates.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct StarRecord {
    pub alpha: f64,
    pub beta: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

/// Tangle and concurrences in a report.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MeasuresRecord {
    pub tau: f64,
    pub concurrence: [f64; 3],
}

/// Machine-readable analysis report.
///
/// Optional sections are filled per command; serialization is canonical
/// (sorted keys, fixed float format) and round-trips byte-identically.
#[derive(Debug, Clone, Default, Serialize)]
pub struct Report {
    pub schema: u64,
    pub version: String,
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub input_digest: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub input_digests: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n_qubits: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stars: Option<Vec<StarRecord>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub family: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub families: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ambiguous_clustering: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cluster_tol: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub measures: Option<MeasuresRecord>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub equivalent: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub operation: Option<Vec<Vec<[f64; 2]>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verdict: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kernel_dim: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<Vec<[f64; 2]>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trace_distance: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residuals: Option<BTreeMap<String, f64>>,
}

impl Report {
    fn new(command: &str) -> Self {
        Report {
            schema: SCHEMA_VERSION,
            version: env!("CARGO_PKG_VERSION").to_string(),
            command: command.to_string(),
            ..Report::default()
        }
    }

    /// Canonical JSON: sorted keys, 17-significant-digit floats.
    pub fn to_canonical_json(&self) -> String {
        let value = serde_json::to_value(self).expect("report serializes");
        // Non-finite floats would serialize to null; every numeric field
        // of a report must be finite.
        assert_all_finite(&value);
        canonical_json(&value)
    }
}

/// Canonical JSON writer: objects sorted (serde_json's default map is a
/// BTreeMap), floats printed as `{:.16e}` (17 significant digits, exact
/// f64 round trip), integers printed plain.
pub fn canonical_json(value: &serde_json::Value) -> String {
    let mut out = String::new();
    write_value(&mut out, value, 0);
    out.push('\n');
    out
}

fn write_value(out: &mut String, value: &serde_json::Value, indent: usize) {
    match value {
        serde_json::Value::Null => out.push_str("null"),
        serde_json::Value::Bool(b) => {
            let _ = write!(out, "{b}");
        }
        serde_json::Value::Number(n) => {
            if let Some(u) = n.as_u64() {
                let _ = write!(out, "{u}");
            } else if let Some(i) = n.as_i64() {
                let _ = write!(out, "{i}");
            } else {
                let f = n.as_f64().expect("JSON numbers are finite");
                let _ = write!(out, "{f:.16e}");
            }
        }
        serde_json::Value::String(s) => {
            let _ = write!(out, "{}", serde_json::Value::String(s.clone()));
        }
        serde_json::Value::Array(items) => {
            if items.is_empty() {
                out.push_str("[]");
                return;
            }
            out.push('[');
            for (i, item) in items.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                out.push('\n');
                push_indent(out, indent + 1);
                write_value(out, item, indent + 1);
            }
            out.push('\n');
            push_indent(out, indent);
            out.push(']');
        }
        serde_json::Value::Object(map) => {
            if map.is_empty() {
                out.push_str("{}");
                return;
            }
            out.push('{');
            for (i, (key, item)) in map.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                out.push('\n');
                push_indent(out, indent + 1);
                let _ = write!(out, "{}: ", serde_json::Value::String(key.clone()));
                write_value(out, item, indent + 1);
            }
            out.push('\n');
            push_indent(out, indent);
            out.push('}');
        }
    }
}

fn push_indent(out: &mut String, indent: usize) {
    for _ in 0..indent {
        out.push_str("  ");
    }
}

fn assert_all_finite(value: &serde_json::Value) {
    match value {
        serde_json::Value::Null => panic!("non-finite numeric field in report"),
        serde_json::Value::Array(items) => items.iter().for_each(assert_all_finite),
        serde_json::Value::Object(map) => map.values().for_each(assert_all_finite),
        _ => {}
    }
}

fn hex_digest(bytes: &[u8]) -> String {
    let digest = Sha256::digest(bytes);
    let mut out = String::with_capacity(64);
    for b in digest {
        let _ = write!(out, "{b:02x}");
    }
    out
}

/// Clustering tolerance: CLI flag, then STELLAR_TOL, then the default.
pub fn resolve_cluster_tol(flag: Option<f64>) -> f64 {
    if let Some(t) = flag {
        return t;
    }
    if let Ok(env_tol) = std::env::var("STELLAR_TOL") {
        if let Ok(t) = env_tol.parse::<f64>() {
            if t > 0.0 && t.is_finite() {
                return t;
            }
        }
    }
    TOL.cluster
}

fn star_records(state: &SymmetricState) -> Vec<StarRecord> {
    state
        .majorana_stars()
        .points()
        .iter()
        .map(|p| {
            let (alpha, beta) = p.angles();
            let (x, y, z) = p.bloch();
            StarRecord { alpha, beta, x, y, z }
        })
        .collect()
}

fn operation_entries(op: &LocalOperation) -> Vec<Vec<[f64; 2]>> {
    op.matrix()
        .iter()
        .map(|row| row.iter().map(|c| [c.re, c.im]).collect())
        .collect()
}

fn matrix_entries(m: &ComplexMatrix) -> Vec<Vec<[f64; 2]>> {
    (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| [m[(i, j)].re, m[(i, j)].im]).collect())
        .collect()
}

/// `analyze`: stars, family, and (for three qubits) measures.
pub fn cmd_analyze(path: &Path, cluster_tol: f64) -> Result<Report, CliError> {
    let loaded = load_state_file(path)?;
    let state = loaded.require_symmetric()?;

    let mut report = Report::new("analyze");
    report.input_digest = Some(loaded.digest.clone());
    report.n_qubits = Some(loaded.n as u64);
    report.stars = Some(star_records(state));
    let class = classify_detailed(&state.majorana_stars(), cluster_tol);
    report.family = Some(class.family.label());
    report.ambiguous_clustering = Some(class.ambiguous);
    report.cluster_tol = Some(cluster_tol);

    let mut residuals = BTreeMap::new();
    residuals.insert("symmetric_projection".to_string(), loaded.symmetric_residual);
    if let Some(gap) = class.min_intercluster_gap {
        residuals.insert("min_intercluster_gap".to_string(), gap);
    }

    if loaded.n == 3 {
        let measures = measure_report(state)?;
        report.measures = Some(MeasuresRecord {
            tau: measures.tangle,
            concurrence: measures.concurrences,
        });
    }
    report.residuals = Some(residuals);
    Ok(report)
}

/// `equiv`: SLOCC interconvertibility of two state files.
pub fn cmd_equiv(path1: &Path, path2: &Path, cluster_tol: f64) -> Result<Report, CliError> {
    let loaded1 = load_state_file(path1)?;
    let loaded2 = load_state_file(path2)?;
    let s1 = loaded1.require_symmetric()?;
    let s2 = loaded2.require_symmetric()?;
    if loaded1.n != loaded2.n {
        return Err(CliError::Parse(format!(
            "qubit counts differ: {} vs {}",
            loaded1.n, loaded2.n
        )));
    }

    let mut report = Report::new("equiv");
    report.input_digests = Some(vec![loaded1.digest.clone(), loaded2.digest.clone()]);
    report.n_qubits = Some(loaded1.n as u64);
    report.cluster_tol = Some(cluster_tol);
    let f1 = classify_detailed(&s1.majorana_stars(), cluster_tol).family;
    let f2 = classify_detailed(&s2.majorana_stars(), cluster_tol).family;
    report.families = Some(vec![f1.label(), f2.label()]);

    match slocc_equivalent(s1, s2, cluster_tol) {
        Some(op) => {
            let proof = verify_ilo(&op, s1, s2).map_err(|e| CliError::Parse(e.to_string()))?;
            report.equivalent = Some(true);
            report.operation = Some(operation_entries(&op));
            let mut residuals = BTreeMap::new();
            residuals.insert("ilo_verification".to_string(), proof.residual);
            report.residuals = Some(residuals);
        }
        None => {
            report.equivalent = Some(false);
        }
    }
    Ok(report)
}

/// Options for the `unique` command.
#[derive(Debug, Clone, Copy)]
pub struct UniqueArgs {
    pub starts: usize,
    pub seed: u64,
    pub use_all_pairs: bool,
}

impl Default for UniqueArgs {
    fn default() -> Self {
        Self { starts: 64, seed: 7, use_all_pairs: false }
    }
}

/// `unique`: reducibility of a three-qubit pure state.
pub fn cmd_unique(path: &Path, args: UniqueArgs) -> Result<(Report, UniquenessVerdict), CliError> {
    let loaded = load_state_file(path)?;
    if loaded.n != 3 {
        return Err(CliError::Parse(format!(
            "uniqueness analysis needs a 3-qubit state, got {}",
            loaded.n
        )));
    }
    let opts = UniquenessOptions {
        pairs: if args.use_all_pairs {
            ConstraintPairs::AllPairs
        } else {
            ConstraintPairs::TwoPairs
        },
        starts: args.starts,
        seed: args.seed,
        max_iters: 500,
    };
    let verdict = uniqueness_check(&loaded.vector, &opts)?;

    let mut report = Report::new("unique");
    report.input_digest = Some(loaded.digest.clone());
    report.n_qubits = Some(3);
    report.verdict = Some(verdict.label().to_string());
    let mut residuals = BTreeMap::new();
    match &verdict {
        UniquenessVerdict::Unique { kernel_dim, constraint_residual } => {
            report.kernel_dim = Some(*kernel_dim as u64);
            residuals.insert("constraint".to_string(), *constraint_residual);
        }
        UniquenessVerdict::NotUnique { witness, trace_distance, marginal_error } => {
            report.witness = Some(matrix_entries(witness.matrix()));
            report.trace_distance = Some(*trace_distance);
            residuals.insert("witness_marginal_error".to_string(), *marginal_error);
        }
        UniquenessVerdict::Inconclusive { kernel_dim } => {
            report.kernel_dim = Some(*kernel_dim as u64);
        }
    }
    report.residuals = Some(residuals);
    Ok((report, verdict))
}

/// Star output format.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StarFormat {
    Json,
    Csv,
}

/// `stars`: coordinate stream for external plotting.
pub fn cmd_stars(path: &Path, format: StarFormat) -> Result<String, CliError> {
    let loaded = load_state_file(path)?;
    let state = loaded.require_symmetric()?;
    let records = star_records(state);
    match format {
        StarFormat::Json => {
            let value = serde_json::to_value(&records).expect("records serialize");
            Ok(canonical_json(&value))
        }
        StarFormat::Csv => {
            let mut out = String::from("alpha,beta,x,y,z\n");
            for r in &records {
                let _ = writeln!(
                    out,
                    "{:.16e},{:.16e},{:.16e},{:.16e},{:.16e}",
                    r.alpha, r.beta, r.x, r.y, r.z
                );
            }
            Ok(out)
        }
    }
}

/// `demo`: writes one of the bundled states as a state file and returns
/// the serialized content.
pub fn cmd_demo(name: &str, a: Option<f64>, b: Option<f64>) -> Result<String, CliError> {
    let state = match name {
        "ghz" => SymmetricState::ghz(),
        "w" => SymmetricState::w(),
        "wbar" => SymmetricState::wbar(),
        "eta" => SymmetricState::eta(),
        "product" => SymmetricState::new(
            3,
            vec![
                Complex64::new(0.0, 0.0),
                Complex64::new(0.0, 0.0),
                Complex64::new(0.0, 0.0),
                Complex64::new(1.0, 0.0),
            ],
        )
        .expect("static state"),
        "d21" => {
            let a = a.unwrap_or(3f64.sqrt() / 2.0);
            let b = b.unwrap_or(1.0 / 12f64.sqrt());
            SymmetricState::d21_from_ab(Complex64::new(a, 0.0), Complex64::new(b, 0.0))
                .map_err(|e| CliError::Parse(e.to_string()))?
        }
        other => {
            return Err(CliError::Parse(format!(
                "unknown demo state `{other}` (expected ghz|w|wbar|eta|d21|product)"
            )));
        }
    };
    let file = StateFile {
        n: state.n_qubits(),
        dicke: Some(state.dicke_coeffs().iter().map(|c| [c.re, c.im]).collect()),
        amplitudes: None,
    };
    let value = serde_json::to_value(&file).expect("state file serializes");
    Ok(canonical_json(&value))
}

/// Plain-text rendering of an analyze report.
pub fn render_analyze_text(report: &Report) -> String {
    let mut out = String::new();
    if let Some(n) = report.n_qubits {
        let _ = writeln!(out, "qubits:  {n}");
    }
    if let Some(family) = &report.family {
        let _ = writeln!(out, "family:  {family}");
    }
    if let Some(stars) = &report.stars {
        let _ = writeln!(out, "stars:");
        for s in stars {
            let _ = writeln!(
                out,
                "  alpha = {:>9.6}  beta = {:>9.6}   (x, y, z) = ({:+.6}, {:+.6}, {:+.6})",
                s.alpha, s.beta, s.x, s.y, s.z
            );
        }
    }
    if let Some(m) = &report.measures {
        let _ = writeln!(out, "tangle:  {:.9}", m.tau);
        let _ = writeln!(
            out,
            "concurrence: C12 = {:.9}  C13 = {:.9}  C23 = {:.9}",
            m.concurrence[0], m.concurrence[1], m.concurrence[2]
        );
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_json_round_trips() {
        let report = Report {
            schema: SCHEMA_VERSION,
            version: "0.1.0".into(),
            command: "analyze".into(),
            n_qubits: Some(3),
            family: Some("D_{1,1,1}".into()),
            measures: Some(MeasuresRecord {
                tau: 1.0 / 3.0,
                concurrence: [1.0 / 3.0; 3],
            }),
            ..Report::default()
        };
        let text = report.to_canonical_json();
        let value: serde_json::Value = serde_json::from_str(&text).unwrap();
        let again = canonical_json(&value);
        assert_eq!(text, again, "canonical serialization must be idempotent");
    }

    #[test]
    fn float_format_is_17_significant_digits() {
        let value = serde_json::json!({ "x": 0.1, "y": 1.0, "z": 3 });
        let text = canonical_json(&value);
        assert!(text.contains("1.0000000000000001e-1"), "got: {text}");
        assert!(text.contains("1.0000000000000000e0"));
        assert!(text.contains("\"z\": 3"));
    }

    #[test]
    fn demo_files_parse_back() {
        for name in ["ghz", "w", "wbar", "eta", "d21", "product"] {
            let text = cmd_demo(name, None, None).unwrap();
            let file: StateFile = serde_json::from_str(&text).unwrap();
            let loaded = realize_state(&file).unwrap();
            assert!(loaded.symmetric_residual < 1e-10);
        }
        assert!(cmd_demo("nope", None, None).is_err());
    }

    #[test]
    fn state_file_validation() {
        let both = StateFile {
            n: 3,
            dicke: Some(vec![[1.0, 0.0]; 4]),
            amplitudes: Some(vec![[1.0, 0.0]; 8]),
        };
        assert!(realize_state(&both).is_err());
        let neither = StateFile { n: 3, dicke: None, amplitudes: None };
        assert!(realize_state(&neither).is_err());
        let short = StateFile { n: 3, dicke: Some(vec![[1.0, 0.0]; 3]), amplitudes: None };
        assert!(realize_state(&short).is_err());
    }

    #[test]
    fn renormalization_flagged() {
        let file = StateFile {
            n: 3,
            dicke: Some(vec![[2.0, 0.0], [0.0, 0.0], [0.0, 0.0], [2.0, 0.0]]),
            amplitudes: None,
        };
        let loaded = realize_state(&file).unwrap();
        assert!(loaded.renormalized);
        assert!((vec_norm(&loaded.vector) - 1.0).abs() < 1e-12);
    }
}
