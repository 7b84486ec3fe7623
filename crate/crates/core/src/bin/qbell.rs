use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use nalgebra::Complex;

use qbell::report::{self, CharFuncRequest, OutputFormat, SweepConfig, VerifyConfig};
use qbell::CharFuncPoint;

/// Quasi-Bell states, entangled coherent states and their photon-loss behaviour.
#[derive(Parser)]
#[command(name = "qbell", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

impl From<Format> for OutputFormat {
    fn from(f: Format) -> Self {
        match f {
            Format::Json => OutputFormat::Json,
            Format::Csv => OutputFormat::Csv,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Normalization, Gram entry D, reduced spectrum, entropy and concurrence of one state.
    Measures {
        /// Overlap of the two basis states, in [0, 1).
        #[arg(long, conflicts_with = "alpha", required_unless_present = "alpha", allow_hyphen_values = true)]
        kappa: Option<f64>,
        /// Coherent amplitude; the overlap becomes exp(-2 alpha^2).
        #[arg(long, allow_hyphen_values = true)]
        alpha: Option<f64>,
        /// Quasi-Bell index 1..4.
        #[arg(long)]
        index: u8,
    },
    /// Entangled-fraction sweep over amplitude and channel transmissivity.
    Decohere {
        #[arg(long, default_value_t = 0.05, allow_hyphen_values = true)]
        alpha_min: f64,
        #[arg(long, default_value_t = 3.0, allow_hyphen_values = true)]
        alpha_max: f64,
        /// Number of amplitudes, endpoints included.
        #[arg(long, default_value_t = 60)]
        steps: usize,
        /// Comma-separated transmissivities.
        #[arg(long, value_delimiter = ',', default_values_t = [0.9, 0.7, 0.5, 0.3, 0.1], allow_hyphen_values = true)]
        etas: Vec<f64>,
        /// Output file; standard output when absent.
        #[arg(long, short)]
        output: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Spectrum, entangled fraction and formation bounds of a quasi-Werner mixture.
    Werner {
        /// Weight F on |Psi2>, in [0, 1].
        #[arg(long, allow_hyphen_values = true)]
        fidelity: f64,
        #[arg(long, allow_hyphen_values = true)]
        kappa: f64,
    },
    /// Two-mode characteristic function of a coherent quasi-Bell state.
    Charfunc {
        #[arg(long, allow_hyphen_values = true)]
        alpha: f64,
        /// Mode-B amplitude; defaults to alpha.
        #[arg(long, allow_hyphen_values = true)]
        beta: Option<f64>,
        #[arg(long)]
        index: u8,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        za_re: f64,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        za_im: f64,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        zb_re: f64,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        zb_im: f64,
        /// Also evaluate the truncated Fock-space operator trace.
        #[arg(long)]
        oracle: bool,
        /// Also report the quadratic-fit gaussianity residual.
        #[arg(long)]
        witness: bool,
        /// Tabulate a side x side grid of real arguments in [-2, 2]^2 instead of one point.
        #[arg(long)]
        grid: Option<usize>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        /// Fock truncation for --oracle (QBELL_TRUNCATION also applies).
        #[arg(long)]
        truncation: Option<usize>,
    },
    /// Compare every closed form against the Fock-space oracle.
    Verify {
        /// Fock truncation; must satisfy the adequacy rule for --alpha-max.
        #[arg(long)]
        truncation: Option<usize>,
        #[arg(long, default_value_t = 1e-9)]
        tolerance: f64,
        #[arg(long, default_value_t = 3.0)]
        alpha_max: f64,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
}

const EXIT_FAILED: u8 = 1;
const EXIT_INVALID: u8 = 2;
const EXIT_UNWRITABLE: u8 = 3;

fn fail(code: u8, message: impl std::fmt::Display) -> ExitCode {
    eprintln!("{}", serde_json::json!({ "error": message.to_string() }));
    ExitCode::from(code)
}

fn print_json<T: serde::Serialize>(value: &T) -> ExitCode {
    println!("{}", serde_json::to_string_pretty(value).expect("serializable"));
    ExitCode::SUCCESS
}

fn env_truncation() -> Result<Option<usize>, String> {
    match std::env::var("QBELL_TRUNCATION") {
        Ok(v) => v
            .trim()
            .parse()
            .map(Some)
            .map_err(|_| format!("QBELL_TRUNCATION must be a positive integer, got {v:?}")),
        Err(_) => Ok(None),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Measures { kappa, alpha, index } => match report::measures(kappa, alpha, index) {
            Ok(r) => print_json(&r),
            Err(e) => fail(EXIT_INVALID, e),
        },
        Command::Werner { fidelity, kappa } => match report::werner(fidelity, kappa) {
            Ok(r) => print_json(&r),
            Err(e) => fail(EXIT_INVALID, e),
        },
        Command::Decohere {
            alpha_min,
            alpha_max,
            steps,
            etas,
            output,
            format,
        } => {
            let config = SweepConfig {
                alpha_min,
                alpha_max,
                steps,
                etas,
            };
            if let Err(e) = config.validate() {
                return fail(EXIT_INVALID, e);
            }
            let text = match report::decohere(&config, format.into()) {
                Ok(t) => t,
                Err(e) => return fail(EXIT_FAILED, e),
            };
            match output {
                Some(path) => match std::fs::write(&path, text) {
                    Ok(()) => ExitCode::SUCCESS,
                    Err(e) => fail(EXIT_UNWRITABLE, format!("cannot write {}: {e}", path.display())),
                },
                None => {
                    let mut out = std::io::stdout().lock();
                    match out.write_all(text.as_bytes()) {
                        Ok(()) => ExitCode::SUCCESS,
                        Err(e) => fail(EXIT_UNWRITABLE, e),
                    }
                }
            }
        }
        Command::Charfunc {
            alpha,
            beta,
            index,
            za_re,
            za_im,
            zb_re,
            zb_im,
            oracle,
            witness,
            grid,
            format,
            truncation,
        } => {
            if let Some(side) = grid {
                return match report::charfunc_grid(index, alpha, side, format.into()) {
                    Ok(text) => {
                        print!("{text}");
                        ExitCode::SUCCESS
                    }
                    Err(e) => fail(EXIT_INVALID, e),
                };
            }
            let truncation = match truncation.map(Ok).or_else(|| env_truncation().transpose()).transpose() {
                Ok(t) => t,
                Err(e) => return fail(EXIT_INVALID, e),
            };
            let req = CharFuncRequest {
                index,
                alpha,
                beta,
                point: CharFuncPoint::new(Complex::new(za_re, za_im), Complex::new(zb_re, zb_im)),
                oracle,
                witness,
                truncation,
            };
            match report::charfunc(&req) {
                Ok(r) => print_json(&r),
                Err(e) => fail(EXIT_INVALID, e),
            }
        }
        Command::Verify {
            truncation,
            tolerance,
            alpha_max,
            format,
        } => {
            let truncation = match truncation.map(Ok).or_else(|| env_truncation().transpose()).transpose() {
                Ok(t) => t,
                Err(e) => return fail(EXIT_INVALID, e),
            };
            let config = VerifyConfig {
                truncation,
                tolerance,
                alpha_max,
            };
            let report = match report::verify(&config) {
                Ok(r) => r,
                Err(e) => return fail(EXIT_FAILED, format!("check truncation_adequacy: {e}")),
            };
            match format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&report).expect("serializable")),
                Format::Csv => print!("{}", report.to_text()),
            }
            if report.passed {
                ExitCode::SUCCESS
            } else {
                eprintln!(
                    "{}",
                    serde_json::json!({ "error": "verification failed", "failing_checks": report.failing() })
                );
                ExitCode::from(EXIT_FAILED)
            }
        }
    }
}
