//! Command-line front end for the `stellar` binary.
//!
//! Every JSON document carries `"v": 1`. Floats are rounded to 12
//! significant digits and `-0` is written as `0`, so identical inputs give
//! byte-identical output.

use std::ffi::OsString;
use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::Deserialize;
use serde_json::{json, Map, Value};

use crate::bloch::{BlochPoint, Spinor};
use crate::dfs;
use crate::error::Error;
use crate::linalg::{self, Mat2};
use crate::majorana::{self, SpinState};
use crate::schur::{self, MultiQubitState, Permutation, SchurDecomposition};
use crate::verify::{self, Suite, VerifyConfig};

pub const SCHEMA_VERSION: u64 = 1;

/// Tolerance of the permutation-symmetry check for qubit input to `points`.
pub const SYMMETRY_TOL: f64 = 1e-8;

/// Norm deviation above which a loaded state is reported as renormalized.
pub const NORM_TOL: f64 = 1e-6;

/// `|det m| / ‖m‖²_F` below which a `--matrix` is rejected as singular.
pub const SINGULAR_TOL: f64 = 1e-12;

#[derive(Debug, Parser)]
#[command(name = "stellar", version, about = "Majorana constellations of spin states and their Schur-Weyl generalization")]
pub struct Cli {
    /// Output file (default stdout).
    #[arg(long, global = true, value_name = "FILE")]
    pub out: Option<PathBuf>,

    /// Seed for randomized verification.
    #[arg(long, global = true, default_value_t = 42)]
    pub seed: u64,

    /// Clustering tolerance for coincident Majorana points.
    #[arg(long, global = true, default_value_t = majorana::DEFAULT_EPS)]
    pub eps: f64,

    /// Largest accepted qubit count.
    #[arg(long, global = true, default_value_t = 12)]
    pub nmax: usize,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Majorana constellation of a spin state or a symmetric qubit state.
    Points {
        /// State file, `-` for stdin.
        input: PathBuf,
        /// Print roots and polynomial residuals to stderr.
        #[arg(long)]
        verbose: bool,
    },
    /// Representation and multiplicity spheres of an N-qubit state.
    Decompose {
        /// State file, `-` for stdin.
        input: PathBuf,
        /// Draw multiplicity spaces of dimension above 2 as constellations.
        #[arg(long)]
        multiplicity_majorana: bool,
    },
    /// Apply a collective, permutation or logical operation.
    Evolve {
        /// State file, `-` for stdin.
        input: PathBuf,
        #[command(flatten)]
        op: EvolveOp,
        /// Write the constellation of the input state here.
        #[arg(long, value_name = "FILE")]
        before: Option<PathBuf>,
        /// Write the constellation of the evolved state here.
        #[arg(long, value_name = "FILE")]
        after: Option<PathBuf>,
    },
    /// Run the invariant suites.
    Verify {
        #[arg(long, default_value = "all")]
        suite: Suite,
        /// Largest qubit count of the Schur suite.
        #[arg(long, default_value_t = 8)]
        n: usize,
        #[arg(long, default_value_t = 100)]
        trials: usize,
    },
    /// Irrep dimensions of the Schur-Weyl decomposition of (C^d)^⊗N.
    Dims {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        d: usize,
        #[arg(long, value_enum, default_value_t = DimsFormat::Table)]
        format: DimsFormat,
    },
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct EvolveOp {
    /// JSON file holding a 2×2 complex matrix `[[[re,im],[re,im]],[[re,im],[re,im]]]`.
    #[arg(long, value_name = "FILE")]
    pub matrix: Option<PathBuf>,
    /// `exp(i·angle·n·σ)` for an axis `x`, `y`, `z` or `"nx ny nz"`, e.g. `"z,π/3"`.
    #[arg(long, value_name = "AXIS,ANGLE")]
    pub su2: Option<String>,
    /// Qubit permutation in cycle notation, e.g. `"(12)(3)"`.
    #[arg(long, value_name = "CYCLES")]
    pub perm: Option<String>,
    /// Logical Euler rotation of a three-qubit state, e.g. `"π,0,0"`.
    #[arg(long, value_name = "ALPHA,BETA,GAMMA")]
    pub logical: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DimsFormat {
    Table,
    Json,
}

/// Failure of a CLI command, mapped onto the documented exit codes.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Io(String),
    #[error("{0}")]
    Parse(String),
    #[error("{0}")]
    Domain(String),
    #[error("{0}")]
    Verification(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Io(_) | Self::Parse(_) => 1,
            Self::Domain(_) => 2,
            Self::Verification(_) => 3,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::NotSymmetric { index, n, deviation } => Self::Domain(format!(
                "state is not permutation symmetric: amplitude of {} deviates from its weight class by {deviation:.3e}",
                schur::ket_label(index, n)
            )),
            Error::InvalidPermutation(msg) => Self::Parse(format!("invalid permutation: {msg}")),
            other => Self::Domain(other.to_string()),
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

/// Parses `args` (program name first), runs the command and returns the
/// exit code. Documents go to `stdout` unless `--out` is given; warnings,
/// reports and errors go to `stderr`.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{}", e.render());
                    0
                }
                // More than one evolution flag violates a precondition.
                ErrorKind::ArgumentConflict => {
                    let _ = write!(stderr, "{}", e.render());
                    2
                }
                _ => {
                    let _ = write!(stderr, "{}", e.render());
                    1
                }
            };
            return code;
        }
    };
    match execute(&cli, stdout, stderr) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}

pub fn execute(cli: &Cli, stdout: &mut dyn Write, stderr: &mut dyn Write) -> CliResult<()> {
    match &cli.command {
        Command::Points { input, verbose } => {
            let state = load_state(input, cli.nmax, stderr)?;
            let spin = match &state {
                LoadedState::Spin(s) => s.clone(),
                LoadedState::Qubits(q) => q.to_spin(SYMMETRY_TOL)?,
            };
            if *verbose {
                write_points_report(&spin, cli.eps, stderr)?;
            }
            emit(cli, &points_document(&spin, cli.eps)?, stdout)
        }
        Command::Decompose { input, multiplicity_majorana } => {
            let state = load_state(input, cli.nmax, stderr)?.into_qubits();
            if state.n() > cli.nmax {
                return Err(CliError::Domain(format!("N = {} exceeds --nmax {}", state.n(), cli.nmax)));
            }
            emit(cli, &decompose_document(&state, cli.eps, *multiplicity_majorana)?, stdout)
        }
        Command::Evolve { input, op, before, after } => {
            let state = load_state(input, cli.nmax, stderr)?;
            if let Some(path) = before {
                write_file(path, &render(&constellation_document(&state, cli.eps)?))?;
            }
            let evolved = evolve(&state, op)?;
            if let Some(path) = after {
                write_file(path, &render(&constellation_document(&evolved, cli.eps)?))?;
            }
            emit(cli, &state_document(&evolved), stdout)
        }
        Command::Verify { suite, n, trials } => {
            let cfg = VerifyConfig { n: *n, trials: *trials, seed: cli.seed, eps: cli.eps };
            let report = verify::run(*suite, &cfg)?;
            let mut doc = Map::new();
            doc.insert("v".into(), json!(SCHEMA_VERSION));
            if let Value::Object(fields) = serde_json::to_value(&report).map_err(|e| CliError::Io(e.to_string()))? {
                doc.extend(fields);
            }
            emit(cli, &Value::Object(doc), stdout)?;
            write!(stderr, "{}", report.summary()).map_err(io_error)?;
            if report.pass {
                Ok(())
            } else {
                let failed: Vec<String> =
                    report.properties.iter().filter(|p| !p.pass).map(|p| format!("{}/{}", p.suite, p.name)).collect();
                Err(CliError::Verification(format!("failed properties: {}", failed.join(", "))))
            }
        }
        Command::Dims { n, d, format } => {
            let dims = dims_document(*n, *d)?;
            match format {
                DimsFormat::Json => emit(cli, &dims, stdout),
                DimsFormat::Table => {
                    let table = dims_table(&dims);
                    match &cli.out {
                        Some(path) => write_file(path, &table),
                        None => stdout.write_all(table.as_bytes()).map_err(io_error),
                    }
                }
            }
        }
    }
}

/// A state read from a state file.
#[derive(Debug, Clone, PartialEq)]
pub enum LoadedState {
    Spin(SpinState),
    Qubits(MultiQubitState),
}

impl LoadedState {
    /// Spin states are embedded in the symmetric subspace of `2J` qubits.
    pub fn into_qubits(self) -> MultiQubitState {
        match self {
            Self::Spin(s) => MultiQubitState::from_spin(&s),
            Self::Qubits(q) => q,
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(rename_all = "lowercase")]
enum Kind {
    Spin,
    Qubits,
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum HalfInteger {
    Number(f64),
    Text(String),
}

#[derive(Debug, Deserialize)]
struct StateFileIn {
    v: Option<u64>,
    kind: Kind,
    #[serde(rename = "J")]
    j: Option<HalfInteger>,
    #[serde(rename = "N")]
    n: Option<usize>,
    amps: Vec<[f64; 2]>,
}

fn parse_two_j(j: &HalfInteger) -> CliResult<u32> {
    let bad = || CliError::Parse(format!("\"J\" must be a non-negative half-integer, got {j:?}"));
    let value = match j {
        HalfInteger::Number(x) => *x,
        HalfInteger::Text(t) => match t.split_once('/') {
            Some((num, "2")) => num.trim().parse::<f64>().map_err(|_| bad())? / 2.0,
            Some(_) => return Err(bad()),
            None => t.trim().parse::<f64>().map_err(|_| bad())?,
        },
    };
    let two_j = 2.0 * value;
    if two_j.is_nan() || two_j < 1.0 || two_j.fract() != 0.0 || two_j > u32::MAX as f64 {
        return Err(bad());
    }
    Ok(two_j as u32)
}

/// Parses a state file. Amplitudes are renormalized, with a warning on
/// `warn` when the norm is off by more than [`NORM_TOL`].
pub fn parse_state(text: &str, nmax: usize, warn: &mut dyn Write) -> CliResult<LoadedState> {
    let raw: StateFileIn = serde_json::from_str(text).map_err(|e| CliError::Parse(format!("malformed state file: {e}")))?;
    if let Some(v) = raw.v {
        if v != SCHEMA_VERSION {
            return Err(CliError::Parse(format!("unsupported schema version {v}")));
        }
    }
    let amps: Vec<Complex64> = raw.amps.iter().map(|[re, im]| Complex64::new(*re, *im)).collect();
    let expected = match raw.kind {
        Kind::Spin => {
            let j = raw.j.as_ref().ok_or_else(|| CliError::Parse("spin state file needs \"J\"".into()))?;
            parse_two_j(j)? as usize + 1
        }
        Kind::Qubits => {
            let n = raw.n.ok_or_else(|| CliError::Parse("qubit state file needs \"N\"".into()))?;
            if n == 0 {
                return Err(CliError::Parse("\"N\" must be at least 1".into()));
            }
            if n > nmax {
                return Err(CliError::Domain(format!("N = {n} exceeds --nmax {nmax}")));
            }
            1usize << n
        }
    };
    if amps.len() != expected {
        return Err(CliError::Parse(format!("expected {expected} amplitudes, got {}", amps.len())));
    }
    let norm = linalg::norm(&amps);
    if norm.is_finite() && norm > 0.0 && (norm - 1.0).abs() > NORM_TOL {
        writeln!(warn, "warning: state norm is {norm:.9}; renormalized").map_err(io_error)?;
    }
    Ok(match raw.kind {
        Kind::Spin => LoadedState::Spin(SpinState::new(expected as u32 - 1, amps)?),
        Kind::Qubits => LoadedState::Qubits(MultiQubitState::new(raw.n.expect("checked"), amps)?),
    })
}

fn load_state(path: &Path, nmax: usize, warn: &mut dyn Write) -> CliResult<LoadedState> {
    parse_state(&read_input(path)?, nmax, warn)
}

fn read_input(path: &Path) -> CliResult<String> {
    if path == Path::new("-") {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).map_err(io_error)?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
    }
}

fn write_file(path: &Path, text: &str) -> CliResult<()> {
    fs::write(path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn io_error(e: io::Error) -> CliError {
    CliError::Io(e.to_string())
}

fn emit(cli: &Cli, doc: &Value, stdout: &mut dyn Write) -> CliResult<()> {
    let text = render(doc);
    match &cli.out {
        Some(path) => write_file(path, &text),
        None => stdout.write_all(text.as_bytes()).map_err(io_error),
    }
}

/// Indented JSON with rounded floats and a trailing newline. Arrays of
/// scalars and of scalar arrays stay on one line.
pub fn render(doc: &Value) -> String {
    let mut text = String::new();
    write_value(&tidy(doc.clone()), 0, &mut text);
    text.push('\n');
    text
}

fn is_flat(v: &Value) -> bool {
    match v {
        Value::Array(items) => items.iter().all(|x| !x.is_object() && (!x.is_array() || is_flat_scalars(x))),
        Value::Object(_) => false,
        _ => true,
    }
}

fn is_flat_scalars(v: &Value) -> bool {
    v.as_array().is_some_and(|items| items.iter().all(|x| !x.is_array() && !x.is_object()))
}

fn write_value(v: &Value, indent: usize, out: &mut String) {
    let pad = |n: usize| "  ".repeat(n);
    match v {
        Value::Object(fields) if !fields.is_empty() => {
            out.push_str("{\n");
            for (k, (key, x)) in fields.iter().enumerate() {
                out.push_str(&pad(indent + 1));
                out.push_str(&Value::String(key.clone()).to_string());
                out.push_str(": ");
                write_value(x, indent + 1, out);
                out.push_str(if k + 1 < fields.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(indent));
            out.push('}');
        }
        Value::Array(items) if !items.is_empty() && !is_flat(v) => {
            out.push_str("[\n");
            for (k, x) in items.iter().enumerate() {
                out.push_str(&pad(indent + 1));
                write_value(x, indent + 1, out);
                out.push_str(if k + 1 < items.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(indent));
            out.push(']');
        }
        Value::Array(items) => {
            out.push('[');
            for (k, x) in items.iter().enumerate() {
                if k > 0 {
                    out.push_str(", ");
                }
                write_value(x, indent, out);
            }
            out.push(']');
        }
        scalar => out.push_str(&scalar.to_string()),
    }
}

/// Rounds to 12 significant digits and maps `-0` to `0`.
pub fn round12(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x + 0.0;
    }
    format!("{x:.11e}").parse::<f64>().expect("formatted float parses") + 0.0
}

fn tidy(v: Value) -> Value {
    match v {
        Value::Number(n) if n.is_f64() => n.as_f64().map(|x| json!(round12(x))).unwrap_or(Value::Null),
        Value::Array(items) => Value::Array(items.into_iter().map(tidy).collect()),
        Value::Object(fields) => Value::Object(fields.into_iter().map(|(k, x)| (k, tidy(x))).collect()),
        other => other,
    }
}

/// `j` as an integer when whole, otherwise as a float.
fn j_value(two_j: u32) -> Value {
    if two_j.is_multiple_of(2) {
        json!(two_j / 2)
    } else {
        json!(two_j as f64 / 2.0)
    }
}

fn complex_value(z: Complex64) -> Value {
    json!([z.re, z.im])
}

fn complex_list(zs: &[Complex64]) -> Value {
    Value::Array(zs.iter().copied().map(complex_value).collect())
}

fn point_list(points: &[BlochPoint]) -> Value {
    Value::Array(points.iter().map(|p| json!(p.coords())).collect())
}

pub fn state_document(state: &LoadedState) -> Value {
    match state {
        LoadedState::Spin(s) => json!({
            "v": SCHEMA_VERSION,
            "kind": "spin",
            "J": j_value(s.two_j()),
            "amps": complex_list(s.amps()),
        }),
        LoadedState::Qubits(q) => json!({
            "v": SCHEMA_VERSION,
            "kind": "qubits",
            "N": q.n(),
            "amps": complex_list(q.amps()),
        }),
    }
}

/// Points and degeneracy signature of one spin state.
fn constellation_group(s: &SpinState, eps: f64) -> CliResult<(Value, Value)> {
    let c = majorana::majorana_points(s, eps)?;
    let signature = majorana::degeneracy_signature(&c, eps);
    Ok((point_list(c.points()), json!(signature.multiplicities())))
}

pub fn points_document(s: &SpinState, eps: f64) -> CliResult<Value> {
    let (points, degeneracy) = constellation_group(s, eps)?;
    Ok(json!({
        "v": SCHEMA_VERSION,
        "spheres": [{
            "label": "representation",
            "groups": [{ "j": j_value(s.two_j()), "alpha": 0, "points": points, "degeneracy": degeneracy }],
        }],
    }))
}

fn write_points_report(s: &SpinState, eps: f64, out: &mut dyn Write) -> CliResult<()> {
    let poly = majorana::majorana_poly(s);
    let c = majorana::majorana_points(s, eps)?;
    let roots = c.source_roots();
    let mut text = format!(
        "spin J = {}: {} finite roots, {} at infinity\n",
        schur::half_string(s.two_j()),
        roots.finite_roots.len(),
        roots.infinity_count
    );
    let mut worst: f64 = 0.0;
    for (k, z) in roots.finite_roots.iter().enumerate() {
        let r = poly.relative_residual(*z);
        worst = worst.max(r);
        text.push_str(&format!("  root {k}: z = {:+.12e} {:+.12e}i, relative residual {r:.3e}\n", z.re, z.im));
    }
    text.push_str(&format!("max relative residual {worst:.3e}\n"));
    let roundtrip = majorana::state_from_bloch(c.points())?;
    text.push_str(&format!("roundtrip fidelity {:.15}\n", roundtrip.fidelity(s)));
    out.write_all(text.as_bytes()).map_err(io_error)
}

fn multiplicity_group(d: &SchurDecomposition, two_j: u32, eps: f64, majorana_rendering: bool) -> CliResult<Option<Value>> {
    let xi = d.multiplicity_state(two_j);
    if linalg::norm(&xi) < schur::EMPTY_BLOCK {
        return Ok(None);
    }
    let mut group = Map::new();
    group.insert("j".into(), j_value(two_j));
    group.insert("dim".into(), json!(xi.len()));
    let drawn = match xi.len() {
        2 => {
            let p = Spinor::new(xi[0], xi[1])?.bloch();
            Some((point_list(&[p]), json!([1])))
        }
        len if len > 2 && majorana_rendering => {
            Some(constellation_group(&SpinState::new(len as u32 - 1, xi.clone())?, eps)?)
        }
        _ => None,
    };
    match drawn {
        Some((points, degeneracy)) => {
            group.insert("points".into(), points);
            group.insert("degeneracy".into(), degeneracy);
        }
        None => {
            group.insert("no_sphere".into(), json!(true));
            group.insert("points".into(), json!([]));
            group.insert("degeneracy".into(), json!([]));
        }
    }
    group.insert("amplitudes".into(), complex_list(&xi));
    Ok(Some(Value::Object(group)))
}

pub fn decompose_document(state: &MultiQubitState, eps: f64, majorana_rendering: bool) -> CliResult<Value> {
    let d = schur::decompose(state)?;
    let mut rep_groups = Vec::new();
    let mut xi_table = Vec::new();
    for b in &d.blocks {
        xi_table.push(json!({
            "j": j_value(b.two_j),
            "alpha": b.alpha,
            "path": b.path.describe(),
            "abs": b.xi.norm(),
            "xi": complex_value(b.xi),
        }));
        let Some(rep) = &b.rep_state else { continue };
        let (points, degeneracy) = match rep.spin_state() {
            Some(s) => constellation_group(&s, eps)?,
            None => (json!([]), json!([])),
        };
        rep_groups.push(json!({
            "j": j_value(b.two_j),
            "alpha": b.alpha,
            "path": b.path.describe(),
            "points": points,
            "degeneracy": degeneracy,
            "amplitudes": complex_list(&rep.amps),
        }));
    }
    let mut mult_groups = Vec::new();
    for two_j in d.two_js() {
        if let Some(g) = multiplicity_group(&d, two_j, eps, majorana_rendering)? {
            mult_groups.push(g);
        }
    }
    let rebuilt = schur::reconstruct_amps(&d)?;
    let diff: Vec<Complex64> = rebuilt.iter().zip(state.amps()).map(|(a, b)| a - b).collect();
    let mut report = Map::new();
    report.insert("N".into(), json!(d.n));
    report.insert("xi".into(), Value::Array(xi_table));
    report.insert("reconstruction_residual".into(), json!(linalg::norm(&diff)));
    if d.n == 3 {
        if let Ok(dec) = dfs::decode_logical(&d) {
            report.insert(
                "logical".into(),
                json!({
                    "weight": dec.weight,
                    "bloch": dec.bloch,
                    "shared_rep": dec.shared_rep,
                    "ratio": dec.ratio().map(complex_value),
                }),
            );
        }
    }
    Ok(json!({
        "v": SCHEMA_VERSION,
        "spheres": [
            { "label": "representation", "groups": rep_groups },
            { "label": "multiplicity", "groups": mult_groups },
        ],
        "report": report,
    }))
}

/// Points document for spin input, decomposition for qubit input.
pub fn constellation_document(state: &LoadedState, eps: f64) -> CliResult<Value> {
    match state {
        LoadedState::Spin(s) => points_document(s, eps),
        LoadedState::Qubits(q) => decompose_document(q, eps, false),
    }
}

/// Parses `π`, `pi`, `-π/3`, `3pi/4`, `2π`, `0.5` and the like.
pub fn parse_angle(text: &str) -> CliResult<f64> {
    let bad = || CliError::Parse(format!("cannot parse angle {text:?}"));
    let t = text.trim().replace("pi", "π");
    let number = |s: &str| s.trim().parse::<f64>().map_err(|_| bad());
    let Some((coef, rest)) = t.split_once('π') else {
        return match t.split_once('/') {
            Some((a, b)) => Ok(number(a)? / number(b)?),
            None => number(&t),
        };
    };
    let coef = match coef.trim() {
        "" | "+" => 1.0,
        "-" => -1.0,
        s => number(s.trim_end_matches('*'))?,
    };
    let denom = match rest.trim() {
        "" => 1.0,
        r => number(r.strip_prefix('/').ok_or_else(bad)?)?,
    };
    let value = coef * std::f64::consts::PI / denom;
    if value.is_finite() {
        Ok(value)
    } else {
        Err(bad())
    }
}

fn parse_su2(text: &str) -> CliResult<Mat2> {
    let bad = |msg: &str| CliError::Parse(format!("--su2 {text:?}: {msg}"));
    let (axis, angle) = text.rsplit_once(',').ok_or_else(|| bad("expected \"axis,angle\""))?;
    let axis = match axis.trim() {
        "x" => [1.0, 0.0, 0.0],
        "y" => [0.0, 1.0, 0.0],
        "z" => [0.0, 0.0, 1.0],
        other => {
            let v: Vec<f64> =
                other.split_whitespace().map(str::parse).collect::<Result<_, _>>().map_err(|_| bad("bad axis"))?;
            <[f64; 3]>::try_from(v).map_err(|_| bad("axis needs three components"))?
        }
    };
    let norm = (axis[0] * axis[0] + axis[1] * axis[1] + axis[2] * axis[2]).sqrt();
    if !norm.is_finite() || norm <= 0.0 {
        return Err(bad("axis must be a nonzero vector"));
    }
    Ok(linalg::exp_i_sigma(axis, parse_angle(angle)?))
}

#[derive(Deserialize)]
#[serde(untagged)]
enum MatrixFile {
    Bare([[[f64; 2]; 2]; 2]),
    Wrapped { matrix: [[[f64; 2]; 2]; 2] },
}

/// Reads a 2×2 complex matrix and rejects singular ones.
pub fn parse_matrix(text: &str) -> CliResult<Mat2> {
    let raw: MatrixFile =
        serde_json::from_str(text).map_err(|e| CliError::Parse(format!("malformed matrix file: {e}")))?;
    let rows = match raw {
        MatrixFile::Bare(m) | MatrixFile::Wrapped { matrix: m } => m,
    };
    let m = Mat2::from_fn(|i, j| Complex64::new(rows[i][j][0], rows[i][j][1]));
    let scale = m.iter().map(|z| z.norm_sqr()).sum::<f64>();
    let det_abs = m.determinant().norm();
    if det_abs.is_nan() || det_abs <= SINGULAR_TOL * scale {
        return Err(CliError::Domain(format!("matrix is singular (|det| = {det_abs:.3e})")));
    }
    Ok(m)
}

fn parse_euler(text: &str) -> CliResult<(f64, f64, f64)> {
    let parts: Vec<&str> = text.split(',').collect();
    let [a, b, g] = parts[..] else {
        return Err(CliError::Parse(format!("--logical {text:?}: expected \"alpha,beta,gamma\"")));
    };
    Ok((parse_angle(a)?, parse_angle(b)?, parse_angle(g)?))
}

pub fn evolve(state: &LoadedState, op: &EvolveOp) -> CliResult<LoadedState> {
    let collective = |m: Mat2| -> CliResult<LoadedState> {
        Ok(match state {
            LoadedState::Spin(s) => LoadedState::Spin(majorana::apply_gl2(s, &m)?),
            LoadedState::Qubits(q) => LoadedState::Qubits(q.apply_collective(&m)?),
        })
    };
    if let Some(path) = &op.matrix {
        return collective(parse_matrix(&read_input(path)?)?);
    }
    if let Some(text) = &op.su2 {
        return collective(parse_su2(text)?);
    }
    let LoadedState::Qubits(q) = state else {
        return Err(CliError::Domain("--perm and --logical act on qubit states (kind = \"qubits\")".into()));
    };
    if let Some(text) = &op.perm {
        let s = Permutation::parse_cycles(text, q.n())?;
        return Ok(LoadedState::Qubits(q.apply_permutation(&s)?));
    }
    if let Some(text) = &op.logical {
        if q.n() != 3 {
            return Err(CliError::Domain(format!("--logical requires N = 3, got N = {}", q.n())));
        }
        let (a, b, g) = parse_euler(text)?;
        return Ok(LoadedState::Qubits(dfs::logical_unitary(a, b, g).apply(q)?));
    }
    Err(CliError::Parse("no evolution flag given".into()))
}

/// Integers beyond `u64` are written as decimal strings.
fn big(x: u128) -> Value {
    u64::try_from(x).map(|v| json!(v)).unwrap_or_else(|_| json!(x.to_string()))
}

pub fn dims_document(n: usize, d: usize) -> CliResult<Value> {
    let rows = schur::irrep_dimensions(n, d)?;
    let overflow = || CliError::Domain("dimension overflows 128 bits".into());
    let mut sum: u128 = 0;
    let mut partitions = Vec::new();
    for r in &rows {
        let product = r.dim_gl.checked_mul(r.dim_s).ok_or_else(overflow)?;
        sum = sum.checked_add(product).ok_or_else(overflow)?;
        partitions.push(json!({
            "partition": r.partition,
            "dim_gl": big(r.dim_gl),
            "dim_s": big(r.dim_s),
            "product": big(product),
        }));
    }
    let total = (0..n).try_fold(1u128, |acc, _| acc.checked_mul(d as u128)).ok_or_else(overflow)?;
    let mut doc = Map::new();
    doc.insert("v".into(), json!(SCHEMA_VERSION));
    doc.insert("N".into(), json!(n));
    doc.insert("d".into(), json!(d));
    doc.insert("partitions".into(), Value::Array(partitions));
    doc.insert("sum".into(), big(sum));
    doc.insert("total".into(), big(total));
    doc.insert("complete".into(), json!(sum == total));
    if d == 2 {
        let spins: Vec<Value> = schur::allowed_two_js(n)
            .into_iter()
            .map(|two_j| {
                let d_j = schur::multiplicity_dim(n, two_j)?;
                Ok(json!({ "j": j_value(two_j), "d_j": big(d_j), "dim_j": two_j + 1 }))
            })
            .collect::<CliResult<_>>()?;
        doc.insert("spins".into(), Value::Array(spins));
    }
    Ok(Value::Object(doc))
}

fn dims_table(doc: &Value) -> String {
    let s = |v: &Value| v.as_str().map(str::to_owned).unwrap_or_else(|| v.to_string());
    let mut out = format!("N = {}, d = {}\n", doc["N"], doc["d"]);
    out.push_str(&format!("{:<24} {:>20} {:>20} {:>24}\n", "partition", "dim_GL", "dim_S", "dim_GL*dim_S"));
    for row in doc["partitions"].as_array().into_iter().flatten() {
        let parts: Vec<String> =
            row["partition"].as_array().into_iter().flatten().map(|p| p.to_string()).collect();
        out.push_str(&format!(
            "{:<24} {:>20} {:>20} {:>24}\n",
            format!("[{}]", parts.join(",")),
            s(&row["dim_gl"]),
            s(&row["dim_s"]),
            s(&row["product"])
        ));
    }
    out.push_str(&format!(
        "sum = {}, d^N = {} ({})\n",
        s(&doc["sum"]),
        s(&doc["total"]),
        if doc["complete"] == json!(true) { "complete" } else { "MISMATCH" }
    ));
    if let Some(spins) = doc.get("spins").and_then(Value::as_array) {
        out.push_str(&format!("{:<8} {:>20} {:>8}\n", "j", "d_j", "2j+1"));
        for row in spins {
            let j = match &row["j"] {
                Value::Number(x) if x.is_f64() => schur::half_string((x.as_f64().unwrap_or(0.0) * 2.0) as u32),
                other => other.to_string(),
            };
            out.push_str(&format!("{:<8} {:>20} {:>8}\n", j, s(&row["d_j"]), s(&row["dim_j"])));
        }
    }
    out
}
