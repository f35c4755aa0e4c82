//! `qsim` — run, inspect and validate `.qcf` circuit files.

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use qsim_core::algorithms::{grover_closed_form, grover_optimal_iterations, grover_run_with_limits, GroverSpec};
use qsim_core::circuit::{apply_density_with_limits, unitary_of_with_limits, Circuit};
use qsim_core::limits::Limits;
use qsim_core::measure::{probabilities_density, sample_with_limits, OutcomeDistribution};
use qsim_core::qcf;
use qsim_core::qstate::{to_density, StateVector};
use qsim_core::{ComplexMatrix, Error};

const EXIT_USAGE: u8 = 2;
const EXIT_RUNTIME: u8 = 3;

#[derive(Parser)]
#[command(name = "qsim", version, about = "Dense quantum circuit simulator")]
#[command(after_help = "Environment:\n  QSIM_MAX_QUBITS  override every qubit cap (defaults: 24 state-vector, \
10 density, 12 unitary, 20 grover)\n\nExit codes: 0 success, 2 parse/usage error, 3 capacity/runtime error")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a circuit from |0…0⟩ and report measurement outcomes.
    Run {
        file: PathBuf,
        /// Number of shots (state-vector backend only).
        #[arg(long, default_value_t = 1024)]
        shots: u64,
        /// Master seed for sampling.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// `statevector` samples shots; `density` prints exact probabilities.
        #[arg(long, value_enum, default_value_t = Backend::Statevector)]
        backend: Backend,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Print the full unitary of a circuit, one row per line.
    Unitary { file: PathBuf },
    /// Run Grover search for one marked item.
    Grover {
        /// Number of qubits (at least 2).
        qubits: usize,
        /// Index of the marked basis state.
        marked: usize,
        /// Grover iterations; defaults to the optimal count.
        iterations: Option<usize>,
    },
    /// Check that a file parses.
    Validate { file: PathBuf },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Backend {
    Statevector,
    Density,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

/// Failure carrying its exit code and diagnostic text.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::CapacityExceeded { .. } => EXIT_RUNTIME,
            Error::WireOutOfRange { .. } | Error::DimensionMismatch { .. } => EXIT_USAGE,
            _ => EXIT_RUNTIME,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

fn load(path: &Path) -> Result<Circuit, Failure> {
    let source = std::fs::read_to_string(path)
        .map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
    qcf::parse(&source).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

fn run(cli: Cli) -> Result<String, Failure> {
    let limits = Limits::from_env().map_err(Failure::usage)?;
    match cli.command {
        Command::Run {
            file,
            shots,
            seed,
            backend,
            format,
        } => {
            let circuit = load(&file)?;
            match backend {
                Backend::Statevector => {
                    if shots == 0 {
                        return Err(Failure::usage("--shots must be at least 1"));
                    }
                    let hist = sample_with_limits(&circuit, shots, seed, &limits)?;
                    Ok(match format {
                        Format::Json => hist.to_json() + "\n",
                        Format::Csv => hist.to_csv(),
                        Format::Text => hist.to_text(),
                    })
                }
                Backend::Density => {
                    let n = circuit.num_qubits();
                    Limits::check("density-matrix qubits", n, limits.density)?;
                    let rho = to_density(&StateVector::zero(n)?);
                    let out = apply_density_with_limits(&circuit, &rho, &limits)?;
                    Ok(render_distribution(&probabilities_density(&out), format))
                }
            }
        }
        Command::Unitary { file } => {
            let circuit = load(&file)?;
            Ok(render_unitary(&unitary_of_with_limits(&circuit, &limits)?))
        }
        Command::Grover {
            qubits,
            marked,
            iterations,
        } => {
            Limits::check("grover qubits", qubits, limits.grover)?;
            let k = iterations.unwrap_or_else(|| grover_optimal_iterations(qubits));
            let spec = GroverSpec::new(qubits, marked, k)?;
            let outcome = grover_run_with_limits(&spec, &limits)?;
            Ok(format!(
                "qubits: {qubits}\nmarked: {marked}\niterations: {k}\nsuccess_probability: {:.9}\nclosed_form: {:.9}\n",
                outcome.success_probability,
                grover_closed_form(qubits, k)
            ))
        }
        Command::Validate { file } => {
            load(&file)?;
            Ok("OK\n".into())
        }
    }
}

fn render_distribution(dist: &OutcomeDistribution, format: Format) -> String {
    match format {
        Format::Json => {
            let probabilities: serde_json::Map<String, serde_json::Value> =
                dist.labelled().map(|(l, p)| (l, p.into())).collect();
            let doc = serde_json::json!({
                "num_qubits": dist.num_qubits,
                "probabilities": probabilities,
            });
            doc.to_string() + "\n"
        }
        Format::Csv => {
            let mut out = String::from("label,probability\n");
            for (label, p) in dist.labelled() {
                let _ = writeln!(out, "{label},{p:.12}");
            }
            out
        }
        Format::Text => {
            let width = dist.num_qubits.max("outcome".len());
            let mut out = format!("{:<width$}  probability\n", "outcome");
            for (label, p) in dist.labelled() {
                let _ = writeln!(out, "{label:<width$}  {p:.12}");
            }
            out
        }
    }
}

/// Formats with 6 decimals, printing values that round to zero as `0`.
fn fixed6(x: f64) -> f64 {
    if x.abs() < 5e-7 {
        0.0
    } else {
        x
    }
}

fn render_unitary(u: &ComplexMatrix) -> String {
    let mut out = String::new();
    for i in 0..u.rows() {
        let row: Vec<String> = u
            .row(i)
            .iter()
            .map(|z| format!("{:.6}{:+.6}i", fixed6(z.re), fixed6(z.im)))
            .collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(output) => {
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(output.as_bytes()).and_then(|_| stdout.flush()).is_err() {
                return ExitCode::from(EXIT_RUNTIME);
            }
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
