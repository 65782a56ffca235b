//! The `meronome` command-line driver.
//!
//! Every subcommand writes one JSON object `{command, config, result,
//! elapsed_ms}` (or the same content flattened to `key,value` CSV rows).
//! Exit codes: 0 success, 1 verification failure, 2 usage error.
//! With `--workers 1` (the default) output is a function of argv alone,
//! apart from `elapsed_ms`.

use std::ffi::OsString;
use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::time::Instant;

use clap::{CommandFactory, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use crate::error::Error;
use crate::frames::{
    ab_pauli, bell_frame_unitary, bell_states, classify, classify_params, plus_plus_state, schmidt_decompose,
    spin_hamiltonian, theta_frame_unitary, BipartiteSplit, FrameSide, PauliLabel,
};
use crate::linalg::{c, kron, pauli, Operator, StateVector, C64};
use crate::protocols::{
    ordering_trial, pair_lifted_operator, sample_lambda_measurement, sample_lambda_measurement_parallel,
    superdense_round, sym_span_analysis, tau_states, measure_sym_subspace, OrderingDiscriminator,
    OrderingVerdict, ORDERING_TOL,
};
use crate::random::{
    exact_twirl, haar_state, random_local_element, twirl_monte_carlo, twirl_monte_carlo_parallel, RngStream,
};
use crate::theorems::{
    check_lemmas_suite, HaarElements, SuiteConfig, Theorem1Suite, Theorem2Suite, Verdict,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "meronome", version, about = "Subsystem-decomposition reference frame experiments")]
pub struct Cli {
    /// Seed for the random stream.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Numerical tolerance.
    #[arg(long, global = true, default_value_t = 1e-10, value_parser = positive_f64)]
    pub tol: f64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write output here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Worker threads for sampling loops.
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..=256))]
    pub workers: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, clap::Args)]
pub struct StateInput {
    /// Whitespace-separated `re,im` amplitude pairs.
    #[arg(long, conflicts_with = "input", allow_hyphen_values = true)]
    pub amps: Option<String>,
    /// File holding the amplitudes; standard input when neither is given.
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Bipartition `d1xd2`.
    #[arg(long, default_value = "2x2", value_parser = parse_split)]
    pub split: BipartiteSplit,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Schmidt decomposition of a state.
    Schmidt(StateInput),
    /// Product / entangled / maximally entangled classification.
    Classify(StateInput),
    /// Change of subsystem decomposition on two qubits.
    Frame {
        #[command(subcommand)]
        kind: FrameKind,
    },
    /// Pauli operators of the Bell-frame qubits.
    PauliTable,
    /// Monte Carlo twirl of the Bell state over the frame group.
    Twirl {
        #[arg(long, default_value_t = 100_000, value_parser = clap::value_parser!(u64).range(1..))]
        samples: u64,
    },
    /// Orthogonalization of maximally entangled states in an unknown frame.
    Superdense {
        #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u64).range(2..=64))]
        dim: u64,
        #[arg(long, default_value_t = 100, value_parser = clap::value_parser!(u64).range(1..))]
        trials: u64,
    },
    /// Schmidt-parameter estimation with the Lambda effect.
    Lambda {
        #[arg(long, value_parser = finite_f64)]
        lambda: f64,
        #[arg(long, default_value_t = 100_000, value_parser = clap::value_parser!(u64).range(1..))]
        shots: u64,
    },
    /// Symmetric-subspace measurement against reference copies.
    Refframe {
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..=7))]
        n: u64,
        #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u64).range(1..=16))]
        dim: u64,
    },
    /// Subsystem-ordering discrimination with tau and tau'.
    Ordering {
        #[arg(long, default_value_t = 100, value_parser = clap::value_parser!(u64).range(1..))]
        trials: u64,
    },
    /// Span of duplicated product states in the symmetric subspace.
    Symspan {
        #[arg(long, default_value_t = 50, value_parser = clap::value_parser!(u64).range(20..))]
        samples: u64,
    },
    /// Batch verification suites.
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        #[arg(long, default_value_t = 100, value_parser = clap::value_parser!(u64).range(1..))]
        trials: u64,
    },
}

#[derive(Debug, Subcommand)]
pub enum FrameKind {
    /// Bell states under the Bell frame.
    Bell,
    /// `|+>|+>` under the theta frame.
    Theta {
        #[arg(long, allow_hyphen_values = true, value_parser = finite_f64)]
        theta: f64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Thm1,
    Thm2,
    Lemmas,
}

fn finite_f64(s: &str) -> Result<f64, String> {
    let v: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(format!("{s} is not finite"))
    }
}

fn positive_f64(s: &str) -> Result<f64, String> {
    let v = finite_f64(s)?;
    if v > 0.0 {
        Ok(v)
    } else {
        Err(format!("{s} is not positive"))
    }
}

fn parse_split(s: &str) -> Result<BipartiteSplit, String> {
    let (a, b) = s.split_once(['x', 'X']).ok_or_else(|| format!("expected d1xd2, got {s:?}"))?;
    let d1 = a.trim().parse().map_err(|e| format!("{e}"))?;
    let d2 = b.trim().parse().map_err(|e| format!("{e}"))?;
    BipartiteSplit::new(d1, d2).map_err(|e| e.to_string())
}

/// Parses whitespace-separated `re,im` pairs.
pub fn parse_amplitudes(text: &str) -> Result<Vec<C64>, String> {
    text.split_whitespace()
        .map(|tok| {
            let (re, im) = tok.split_once(',').ok_or_else(|| format!("expected re,im, got {tok:?}"))?;
            Ok(c(finite_f64(re)?, finite_f64(im)?))
        })
        .collect()
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

struct Outcome {
    result: Value,
    passed: bool,
}

impl Outcome {
    fn ok(result: Value) -> Self {
        Self { result, passed: true }
    }
}

fn read_state(input: &StateInput) -> Result<StateVector, Failure> {
    let text = match (&input.amps, &input.input) {
        (Some(a), _) => a.clone(),
        (None, Some(path)) => fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?,
        (None, None) => {
            let mut buf = String::new();
            io::stdin().read_to_string(&mut buf).map_err(|e| Failure::Io(e.to_string()))?;
            buf
        }
    };
    let amps = parse_amplitudes(&text).map_err(Failure::Usage)?;
    input.split.check_dim(amps.len())?;
    Ok(StateVector::new(amps)?)
}

fn complex_entries(m: &Operator) -> Value {
    let mat = m.matrix();
    Value::Array(
        (0..mat.nrows())
            .map(|r| Value::Array((0..mat.ncols()).map(|col| json!([mat[(r, col)].re, mat[(r, col)].im])).collect()))
            .collect(),
    )
}

fn verdict_value(v: &Verdict) -> Value {
    json!({
        "passed": v.passed,
        "detail": v.detail,
        "witness": v.witness.as_ref().map(|w| w.entries()).unwrap_or_default(),
    })
}

fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

fn execute(cli: &Cli) -> Result<Outcome, Failure> {
    let mut rng = RngStream::new(cli.seed);
    let workers = cli.workers as usize;
    let tol = cli.tol;
    Ok(match &cli.command {
        Command::Schmidt(input) => {
            let state = read_state(input)?;
            let sd = schmidt_decompose(&state, input.split)?;
            Outcome::ok(json!({
                "split": input.split.to_string(),
                "params": sd.params,
                "rank": sd.rank(tol),
                "entropy": sd.entropy(),
                "classification": classify_params(&sd.params, tol),
            }))
        }
        Command::Classify(input) => {
            let state = read_state(input)?;
            let sd = schmidt_decompose(&state, input.split)?;
            Outcome::ok(json!({
                "split": input.split.to_string(),
                "classification": classify_params(&sd.params, tol),
                "params": sd.params,
            }))
        }
        Command::Frame { kind: FrameKind::Bell } => {
            let u = bell_frame_unitary();
            let split = BipartiteSplit::qubits();
            let names = ["phi_plus", "phi_minus", "psi_plus", "psi_minus"];
            let mut rows = Vec::new();
            let mut passed = true;
            for (name, state) in names.iter().zip(bell_states()) {
                let before = classify(&state, split, tol)?;
                let image = state.evolve(&u)?;
                let after = classify(&image, split, tol)?;
                passed &= before == crate::frames::Entanglement::MaximallyEntangled
                    && after == crate::frames::Entanglement::Product;
                rows.push(json!({
                    "state": name,
                    "classification": before,
                    "frame_classification": after,
                    "frame_params": schmidt_decompose(&image, split)?.params,
                }));
            }
            Outcome { result: json!({ "unitary": complex_entries(&u), "states": rows, "passed": passed }), passed }
        }
        Command::Frame { kind: FrameKind::Theta { theta } } => {
            let split = BipartiteSplit::qubits();
            let image = plus_plus_state().evolve(&theta_frame_unitary(*theta))?;
            let params = schmidt_decompose(&image, split)?.params;
            let h = (theta / 2.0).cos().abs();
            let predicted = [(1.0 + h) / 2.0, (1.0 - h) / 2.0];
            let deviation = max_abs_diff(&params, &predicted);
            let passed = deviation <= 1e-9;
            Outcome {
                result: json!({
                    "theta": theta,
                    "classification": classify_params(&params, tol),
                    "params": params,
                    "predicted": predicted,
                    "deviation": deviation,
                    "passed": passed,
                }),
                passed,
            }
        }
        Command::PauliTable => {
            let id = pauli::identity();
            let (x, y, z) = (pauli::x(), pauli::y(), pauli::z());
            let table = [
                (PauliLabel::X, FrameSide::A, kron(&id, &x)),
                (PauliLabel::Y, FrameSide::A, kron(&z, &y)),
                (PauliLabel::Z, FrameSide::A, kron(&z, &z)),
                (PauliLabel::X, FrameSide::B, kron(&z, &id)),
                (PauliLabel::Y, FrameSide::B, kron(&y, &x).scale(c(-1.0, 0.0))),
                (PauliLabel::Z, FrameSide::B, kron(&x, &x)),
            ];
            let mut rows = Vec::new();
            let mut worst: f64 = 0.0;
            for (label, side, expected) in &table {
                let op = ab_pauli(*label, *side);
                let dev = op.frobenius_distance(expected);
                worst = worst.max(dev);
                rows.push(json!({ "label": label, "side": side, "matrix": complex_entries(&op), "deviation": dev }));
            }
            let h = spin_hamiltonian(1.0, 0.5);
            let passed = worst <= 1e-12;
            Outcome {
                result: json!({
                    "operators": rows,
                    "max_deviation": worst,
                    "hamiltonian_example": { "alpha": 1.0, "beta": 0.5, "matrix": complex_entries(&h) },
                    "passed": passed,
                }),
                passed,
            }
        }
        Command::Twirl { samples } => {
            let split = BipartiteSplit::qubits();
            let rho = crate::linalg::DensityOperator::pure(&bell_states()[0]);
            let n = *samples as usize;
            let twirled = if workers == 1 {
                twirl_monte_carlo(&rho, split, n, &mut rng)?
            } else {
                twirl_monte_carlo_parallel(&rho, split, n, &rng, workers)?
            };
            let target = exact_twirl(split);
            Outcome::ok(json!({
                "state": "phi_plus",
                "samples": samples,
                "frobenius_to_mixed": twirled.frobenius_distance(&target),
                "purity": twirled.purity(),
                "exact_frobenius_to_mixed": exact_twirl(split).frobenius_distance(&target),
            }))
        }
        Command::Superdense { dim, trials } => {
            let d = *dim as usize;
            let mut successes = 0u64;
            let mut ones = 0u64;
            let mut max_overlap: f64 = 0.0;
            for _ in 0..*trials {
                let bit = rng.bernoulli(0.5);
                let report = superdense_round(d, bit, &mut rng)?;
                if bit {
                    ones += 1;
                    max_overlap = max_overlap.max(report.overlap_modulus);
                }
                successes += u64::from(report.decode_success);
            }
            let passed = successes == *trials && max_overlap <= tol;
            Outcome {
                result: json!({
                    "dim": dim,
                    "trials": trials,
                    "bit_one_trials": ones,
                    "decode_successes": successes,
                    "max_overlap_modulus": max_overlap,
                    "passed": passed,
                }),
                passed,
            }
        }
        Command::Lambda { lambda, shots } => {
            let est = if workers == 1 {
                sample_lambda_measurement(*lambda, *shots, &mut rng)?
            } else {
                sample_lambda_measurement_parallel(*lambda, *shots, &rng, workers)?
            };
            let p = lambda * (1.0 - lambda);
            let sigma = est.sigma(p);
            let deviation = (est.p_hat - p).abs();
            Outcome::ok(json!({
                "lambda": lambda,
                "shots": est.shots,
                "hits": est.hits,
                "p_hat": est.p_hat,
                "lambda_hat": est.lambda_hat,
                "p_expected": p,
                "sigma": sigma,
                "deviation": deviation,
                "within_4_sigma": deviation <= 4.0 * sigma,
            }))
        }
        Command::Refframe { n, dim } => {
            let (n, d) = (*n as usize, *dim as usize);
            let psi = haar_state(d, &mut rng);
            let phi = haar_state(d, &mut rng);
            let measured = measure_sym_subspace(&psi, &phi, n)?;
            let a2 = psi.overlap(&phi).powi(2);
            let predicted = a2 + (1.0 - a2) / (n as f64 + 1.0);
            let deviation = (measured - predicted).abs();
            let passed = deviation <= tol.max(1e-10);
            Outcome {
                result: json!({
                    "n": n,
                    "dim": d,
                    "overlap_squared": a2,
                    "measured": measured,
                    "predicted": predicted,
                    "deviation": deviation,
                    "orthogonal_probability": 1.0 / (n as f64 + 1.0),
                    "passed": passed,
                }),
                passed,
            }
        }
        Command::Ordering { trials } => {
            let (tau, tau_p) = tau_states();
            let overlap = (tau.matrix() * tau_p.matrix()).trace().re.abs();
            let disc = OrderingDiscriminator::new(ORDERING_TOL);
            let on_tau = disc.discriminate(tau.as_operator())?;
            let on_tau_p = disc.discriminate(tau_p.as_operator())?;
            let mut invariance: f64 = 0.0;
            let mut correct = 0u64;
            let mut swapped = 0u64;
            for _ in 0..*trials {
                let elem = random_local_element(BipartiteSplit::qubits(), &mut rng);
                let moved = pair_lifted_operator(&elem).conjugate(tau.as_operator());
                invariance = invariance.max(moved.frobenius_distance(tau.as_operator()));
                let trial = ordering_trial(&disc, &mut rng)?;
                correct += u64::from(trial.correct);
                swapped += u64::from(trial.swapped);
            }
            let passed = overlap <= 1e-12
                && on_tau == OrderingVerdict::Same
                && on_tau_p == OrderingVerdict::Swapped
                && correct == *trials;
            Outcome {
                result: json!({
                    "trace_overlap": overlap,
                    "verdict_tau": on_tau,
                    "verdict_tau_prime": on_tau_p,
                    "trials": trials,
                    "swapped_trials": swapped,
                    "correct": correct,
                    "max_invariance_defect": invariance,
                    "passed": passed,
                }),
                passed,
            }
        }
        Command::Symspan { samples } => {
            let report = sym_span_analysis(*samples as usize, &mut rng)?;
            let value = serde_json::to_value(&report).map_err(|e| Failure::Io(e.to_string()))?;
            Outcome::ok(value)
        }
        Command::Verify { suite, trials } => {
            let config = SuiteConfig { tol: tol.max(1e-10), ..SuiteConfig::new(*trials as usize) };
            let verdict = match suite {
                Suite::Thm1 => Theorem1Suite::with_source(config, HaarElements).run(&mut rng),
                Suite::Thm2 => Theorem2Suite::with_source(config, HaarElements).run(&mut rng),
                Suite::Lemmas => check_lemmas_suite(config.trials, config.tol, &mut rng),
            };
            let passed = verdict.passed;
            Outcome { result: verdict_value(&verdict), passed }
        }
    })
}

fn command_name(cmd: &Command) -> &'static str {
    match cmd {
        Command::Schmidt(_) => "schmidt",
        Command::Classify(_) => "classify",
        Command::Frame { .. } => "frame",
        Command::PauliTable => "pauli-table",
        Command::Twirl { .. } => "twirl",
        Command::Superdense { .. } => "superdense",
        Command::Lambda { .. } => "lambda",
        Command::Refframe { .. } => "refframe",
        Command::Ordering { .. } => "ordering",
        Command::Symspan { .. } => "symspan",
        Command::Verify { .. } => "verify",
    }
}

fn config_value(cli: &Cli) -> Value {
    let mut m = Map::new();
    m.insert("seed".into(), json!(cli.seed));
    m.insert("tol".into(), json!(cli.tol));
    m.insert("format".into(), json!(match cli.format { Format::Json => "json", Format::Csv => "csv" }));
    if let Some(out) = &cli.out {
        m.insert("out".into(), json!(out.display().to_string()));
    }
    m.insert("workers".into(), json!(cli.workers));
    match &cli.command {
        Command::Schmidt(i) | Command::Classify(i) => {
            m.insert("split".into(), json!(i.split.to_string()));
            if let Some(p) = &i.input {
                m.insert("input".into(), json!(p.display().to_string()));
            }
        }
        Command::Frame { kind: FrameKind::Bell } => {
            m.insert("frame".into(), json!("bell"));
        }
        Command::Frame { kind: FrameKind::Theta { theta } } => {
            m.insert("frame".into(), json!("theta"));
            m.insert("theta".into(), json!(theta));
        }
        Command::PauliTable => {}
        Command::Twirl { samples } => {
            m.insert("samples".into(), json!(samples));
        }
        Command::Superdense { dim, trials } => {
            m.insert("dim".into(), json!(dim));
            m.insert("trials".into(), json!(trials));
        }
        Command::Lambda { lambda, shots } => {
            m.insert("lambda".into(), json!(lambda));
            m.insert("shots".into(), json!(shots));
        }
        Command::Refframe { n, dim } => {
            m.insert("n".into(), json!(n));
            m.insert("dim".into(), json!(dim));
        }
        Command::Ordering { trials } => {
            m.insert("trials".into(), json!(trials));
        }
        Command::Symspan { samples } => {
            m.insert("samples".into(), json!(samples));
        }
        Command::Verify { suite, trials } => {
            let name = match suite { Suite::Thm1 => "thm1", Suite::Thm2 => "thm2", Suite::Lemmas => "lemmas" };
            m.insert("suite".into(), json!(name));
            m.insert("trials".into(), json!(trials));
        }
    }
    Value::Object(m)
}

/// `serde_json` turns non-finite floats into `null`; no field is ever
/// legitimately null, so a null marks a non-finite number.
fn has_null(v: &Value) -> bool {
    match v {
        Value::Null => true,
        Value::Array(xs) => xs.iter().any(has_null),
        Value::Object(m) => m.values().any(has_null),
        _ => false,
    }
}

fn flatten_into(prefix: &str, v: &Value, rows: &mut Vec<(String, String)>) {
    let key = |k: &str| if prefix.is_empty() { k.to_string() } else { format!("{prefix}.{k}") };
    match v {
        Value::Object(m) => m.iter().for_each(|(k, x)| flatten_into(&key(k), x, rows)),
        Value::Array(xs) => xs.iter().enumerate().for_each(|(i, x)| flatten_into(&key(&i.to_string()), x, rows)),
        Value::String(s) => rows.push((prefix.to_string(), s.clone())),
        other => rows.push((prefix.to_string(), other.to_string())),
    }
}

/// Flattens a JSON document to `key,value` CSV with dotted keys.
pub fn to_csv(doc: &Value) -> Result<String, String> {
    let mut rows = Vec::new();
    flatten_into("", doc, &mut rows);
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["key", "value"]).map_err(|e| e.to_string())?;
    for (k, v) in rows {
        w.write_record([k, v]).map_err(|e| e.to_string())?;
    }
    String::from_utf8(w.into_inner().map_err(|e| e.to_string())?).map_err(|e| e.to_string())
}

fn usage_error(stderr: &mut dyn Write, message: &str) -> i32 {
    let usage = Cli::command().render_usage();
    let _ = writeln!(stderr, "error: {message}\n\n{usage}\n\nFor more information, try '--help'.");
    EXIT_USAGE
}

/// Runs the driver with explicit output streams; returns the exit code.
pub fn run_with_io<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{}", e.render());
                    EXIT_OK
                }
                _ => {
                    let rendered = e.render().to_string();
                    let _ = write!(stderr, "{rendered}");
                    if !rendered.contains("Usage:") {
                        let _ = writeln!(stderr, "\n{}", Cli::command().render_usage());
                    }
                    EXIT_USAGE
                }
            };
        }
    };

    let start = Instant::now();
    let outcome = match execute(&cli) {
        Ok(o) => o,
        Err(Failure::Usage(msg)) => return usage_error(stderr, &msg),
        Err(Failure::Io(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            return EXIT_USAGE;
        }
    };
    let elapsed_ms = start.elapsed().as_millis() as u64;

    let mut doc = Map::new();
    doc.insert("command".into(), json!(command_name(&cli.command)));
    doc.insert("config".into(), config_value(&cli));
    doc.insert("result".into(), outcome.result);
    doc.insert("elapsed_ms".into(), json!(elapsed_ms));
    let doc = Value::Object(doc);
    if has_null(&doc) {
        let _ = writeln!(stderr, "error: computation produced a non-finite value");
        return EXIT_FAILED;
    }

    let text = match cli.format {
        Format::Json => format!("{doc}\n"),
        Format::Csv => match to_csv(&doc) {
            Ok(t) => t,
            Err(e) => {
                let _ = writeln!(stderr, "error: {e}");
                return EXIT_FAILED;
            }
        },
    };
    let written = match &cli.out {
        Some(path) => fs::write(path, text.as_bytes()).map_err(|e| format!("{}: {e}", path.display())),
        None => stdout.write_all(text.as_bytes()).map_err(|e| e.to_string()),
    };
    if let Err(e) = written {
        let _ = writeln!(stderr, "error: {e}");
        return EXIT_USAGE;
    }
    if outcome.passed {
        EXIT_OK
    } else {
        EXIT_FAILED
    }
}

/// Runs the driver on standard output and standard error.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = io::stdout();
    let stderr = io::stderr();
    run_with_io(argv, &mut stdout.lock(), &mut stderr.lock())
}
