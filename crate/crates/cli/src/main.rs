//! `spinxor`: design, check and search for three-spin XOR Hamiltonians.
//!
//! Exit status is 0 on success, 1 when a verification fails and 2 on usage,
//! input or parse errors.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use spinxor_core::gate_verify::{verify_unitary, DEFAULT_TOL};
use spinxor_core::ham_search::multi_start_search;
use spinxor_core::linalg::format::{parse_cmatrix, write_cmatrix};
use spinxor_core::pauli::{parse_pauli_ham, write_pauli_ham};
use spinxor_core::reproduce::run_checklist;
use spinxor_core::{
    decompose, evolution_operator, reconstruct, unitary_log_min_spread, verify_hamiltonian,
    xor_hamiltonian, CouplingModel, EvolutionConfig, ModelKind, NelderMeadOptions,
    PauliDecomposition,
};

#[derive(Parser)]
#[command(
    name = "spinxor",
    version,
    about = "Three-spin XOR gates from two-spin interactions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Interval {
    /// Gate interval Δt (ħ = 1).
    #[arg(long, default_value_t = 1.0, value_parser = positive)]
    dt: f64,
}

impl Interval {
    fn cfg(&self) -> EvolutionConfig {
        EvolutionConfig::new(self.dt)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Write the two-spin XOR Hamiltonian for angles (α, β, γ).
    XorHam {
        #[arg(long, allow_hyphen_values = true, value_parser = finite)]
        alpha: f64,
        #[arg(long, allow_hyphen_values = true, value_parser = finite)]
        beta: f64,
        #[arg(long, allow_hyphen_values = true, value_parser = finite)]
        gamma: f64,
        /// Read the angles as degrees.
        #[arg(long)]
        degrees: bool,
        #[command(flatten)]
        interval: Interval,
        /// Output file; without it the pauli-ham text goes to standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a Hamiltonian (or a unitary) against the XOR truth table.
    Verify {
        #[arg(long, required_unless_present = "matrix", conflicts_with = "matrix")]
        ham: Option<PathBuf>,
        /// A unitary in cmatrix format instead of a Hamiltonian.
        #[arg(long)]
        matrix: Option<PathBuf>,
        #[command(flatten)]
        interval: Interval,
        #[arg(long, default_value_t = DEFAULT_TOL, value_parser = positive)]
        tol: f64,
    },
    /// Pauli decomposition of a Hermitian matrix.
    Decompose {
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Evolution operator exp(-iHΔt) of a Hamiltonian.
    Evolve {
        #[arg(long)]
        ham: PathBuf,
        #[command(flatten)]
        interval: Interval,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Hamiltonian generating a unitary, on the minimal-spread branch.
    Log {
        #[arg(long)]
        matrix: PathBuf,
        #[command(flatten)]
        interval: Interval,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Multi-start search for couplings of a template that realize XOR.
    Search {
        /// ising, xy, heisenberg or general.
        #[arg(long)]
        model: ModelKind,
        /// Allow single-spin field terms.
        #[arg(long)]
        fields: bool,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 32, value_parser = clap::value_parser!(u64).range(1..))]
        restarts: u64,
        /// Evaluation budget per restart.
        #[arg(long, default_value_t = NelderMeadOptions::for_search().max_evals as u64, value_parser = clap::value_parser!(u64).range(1..))]
        max_evals: u64,
        #[command(flatten)]
        interval: Interval,
        /// Also write the best Hamiltonian in pauli-ham format.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the full checklist of claims and print one line per claim.
    Reproduce,
}

fn finite(s: &str) -> Result<f64, String> {
    let x: f64 = s.parse().map_err(|_| format!("not a number: {s:?}"))?;
    if x.is_finite() {
        Ok(x)
    } else {
        Err(format!("must be finite, got {s}"))
    }
}

fn positive(s: &str) -> Result<f64, String> {
    let x = finite(s)?;
    if x > 0.0 {
        Ok(x)
    } else {
        Err(format!("must be positive, got {s}"))
    }
}

/// Errors that end the program with status 2.
struct Failure(String);

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(e.to_string())
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure(format!("{}: {e}", path.display())))
}

fn emit(text: &str, out: Option<&Path>) -> Result<(), Failure> {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| Failure(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn load_ham(path: &Path) -> Result<PauliDecomposition, Failure> {
    parse_pauli_ham(&read(path)?).map_err(|e| Failure(format!("{}: {e}", path.display())))
}

fn load_matrix(path: &Path) -> Result<spinxor_core::ComplexMatrix, Failure> {
    parse_cmatrix(&read(path)?).map_err(|e| Failure(format!("{}: {e}", path.display())))
}

fn term_table(d: &PauliDecomposition) -> String {
    let mut out = String::from("term  coefficient      weight\n");
    for (s, c) in d.iter() {
        out.push_str(&format!("{s}   {:>16.8e}  {}\n", c.re, s.weight()));
    }
    out
}

fn run(cli: Cli) -> Result<ExitCode, Failure> {
    match cli.command {
        Command::XorHam {
            alpha,
            beta,
            gamma,
            degrees,
            interval,
            out,
        } => {
            let k = if degrees {
                std::f64::consts::PI / 180.0
            } else {
                1.0
            };
            let d = xor_hamiltonian(alpha * k, beta * k, gamma * k, &interval.cfg());
            let text = write_pauli_ham(&d)?;
            match out {
                Some(p) => {
                    emit(&text, Some(&p))?;
                    print!("{}", term_table(&d));
                }
                None => emit(&text, None)?,
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify {
            ham,
            matrix,
            interval,
            tol,
        } => {
            let report = match (ham, matrix) {
                (Some(h), _) => verify_hamiltonian(&load_ham(&h)?, &interval.cfg(), tol)?,
                (None, Some(m)) => verify_unitary(&load_matrix(&m)?, tol)?,
                (None, None) => unreachable!("clap requires one input"),
            };
            print!("{report}");
            Ok(if report.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::Decompose { matrix, out } => {
            let d = decompose(&load_matrix(&matrix)?)?;
            emit(&write_pauli_ham(&d)?, out.as_deref())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Evolve { ham, interval, out } => {
            let u = evolution_operator(&reconstruct(&load_ham(&ham)?), &interval.cfg())?;
            emit(&write_cmatrix(&u), out.as_deref())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Log {
            matrix,
            interval,
            out,
        } => {
            let h = unitary_log_min_spread(&load_matrix(&matrix)?, &interval.cfg())?;
            emit(&write_pauli_ham(&decompose(&h)?)?, out.as_deref())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Search {
            model,
            fields,
            seed,
            restarts,
            max_evals,
            interval,
            out,
        } => {
            let opts = NelderMeadOptions {
                max_evals: max_evals as usize,
                ..NelderMeadOptions::for_search()
            };
            let model = CouplingModel::new(model, fields);
            let r = multi_start_search(&model, &interval.cfg(), restarts as usize, seed, &opts)?;
            print!("{}", r.to_text());
            if let Some(p) = out {
                emit(&write_pauli_ham(&r.best_hamiltonian())?, Some(&p))?;
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Reproduce => {
            let report = run_checklist();
            print!("{report}");
            Ok(if report.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(Failure(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
