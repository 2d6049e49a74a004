use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use vqechem::chem::{write_fcidump, ActiveSpaceSpec};
use vqechem::optim::{OptimizerConfig, OptimizerKind};
use vqechem::units::LengthUnit;
use vqechem::vqe::{trace_csv, EvaluationMode};
use vqechem_cli::analysis::{activation_energy, compare_curves, dissociation_energy, fit_equilibrium};
use vqechem_cli::error::{CliError, Result};
use vqechem_cli::manifest::{load_geometry, AnsatzKind, AnsatzSpec, ScanManifest, Source};
use vqechem_cli::output::{read_curve, scan_csv, write_file};
use vqechem_cli::pipeline::{build_problem, load_integrals, run_problem, run_scan, PointRun, RunSettings};

#[derive(Parser)]
#[command(name = "vqechem", version, about = "Variational quantum eigensolver workflows for small molecules")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write STO-3G molecular-orbital integrals of a hydrogen geometry as FCIDUMP.
    FcidumpGen {
        #[arg(long)]
        geometry: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Single-point VQE with the exact reference alongside.
    Vqe(PointArgs),
    /// Exact ground-state energy only.
    Fci {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long)]
        json: bool,
    },
    /// Potential-energy scan over a manifest.
    Scan {
        #[arg(long)]
        manifest: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Equilibrium geometry and well depth from a curve CSV.
    Fit(CurveArgs),
    /// Barrier height along a reaction-path curve CSV.
    Barrier(CurveArgs),
    /// Pointwise difference between two curves with matching labels.
    Compare {
        a: PathBuf,
        b: PathBuf,
        #[arg(long)]
        energy_column: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Convergence trace (iteration, energy, best energy) of a single point.
    Trace(PointArgs),
}

#[derive(Args)]
struct InputArgs {
    /// Geometry JSON (hydrogen atoms, STO-3G).
    #[arg(long, conflicts_with = "fcidump")]
    geometry: Option<PathBuf>,
    #[arg(long)]
    fcidump: Option<PathBuf>,
    /// Comma-separated spatial orbitals to freeze.
    #[arg(long, value_delimiter = ',')]
    freeze: Vec<usize>,
}

#[derive(Args)]
struct PointArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long, value_enum, default_value_t = AnsatzKind::Uccsd)]
    ansatz: AnsatzKind,
    #[arg(long, default_value_t = 1)]
    reps: usize,
    #[arg(long, value_enum, default_value_t = Optimizer::Simplex)]
    optimizer: Optimizer,
    #[arg(long)]
    max_iterations: Option<usize>,
    #[arg(long, value_enum, default_value_t = Mode::Exact)]
    mode: Mode,
    /// Shots per measurement group in sampled mode.
    #[arg(long, default_value_t = 1000)]
    shots: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = vqechem::vqe::DEFAULT_RESTARTS)]
    restarts: usize,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct CurveArgs {
    input: PathBuf,
    #[arg(long)]
    energy_column: Option<String>,
    #[arg(long)]
    json: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Optimizer {
    Spsa,
    Simplex,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Exact,
    Sampled,
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}

fn print_json<T: Serialize>(value: &T) {
    println!("{}", serde_json::to_string_pretty(value).expect("serializable"));
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => write_file(p, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn load_problem(input: &InputArgs) -> Result<(String, vqechem_cli::pipeline::Problem)> {
    let (label, source, base) = match (&input.geometry, &input.fcidump) {
        (Some(g), None) => {
            let geometry = load_geometry(g)?;
            (g.display().to_string(), Source::Geometry(geometry), PathBuf::new())
        }
        (None, Some(f)) => (f.display().to_string(), Source::Fcidump { path: f.clone() }, PathBuf::new()),
        _ => return Err(CliError::Usage("give exactly one of --geometry or --fcidump".into())),
    };
    let integrals = load_integrals(&source, LengthUnit::Bohr, &base)?;
    let active = (!input.freeze.is_empty()).then(|| ActiveSpaceSpec { frozen: input.freeze.clone(), active: vec![] });
    Ok((label, build_problem(integrals, active.as_ref())?))
}

fn run_single(args: &PointArgs) -> Result<PointRun> {
    let (label, problem) = load_problem(&args.input)?;
    let mut optimizer = match args.optimizer {
        Optimizer::Spsa => OptimizerConfig::spsa(),
        Optimizer::Simplex => OptimizerConfig::simplex(),
    };
    if let Some(n) = args.max_iterations {
        optimizer.max_iterations = n;
    }
    let settings = RunSettings {
        active_space: None,
        ansatz: AnsatzSpec { kind: args.ansatz, reps: args.reps },
        optimizer,
        mode: match args.mode {
            Mode::Exact => EvaluationMode::Exact,
            Mode::Sampled => EvaluationMode::Sampled { shots_per_group: args.shots },
        },
        restarts: args.restarts,
    };
    run_problem(&label, None, &problem, &settings, args.seed)
}

#[derive(Serialize)]
struct VqeSummary<'a> {
    #[serde(flatten)]
    point: &'a vqechem_cli::PesPoint,
    e_hf: f64,
    optimizer: OptimizerKind,
    restarts: usize,
    best_restart: usize,
    final_parameters: &'a [f64],
    termination_reason: vqechem::optim::TerminationReason,
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::FcidumpGen { geometry, out } => {
            let g = load_geometry(&geometry)?;
            let integrals = load_integrals(&Source::Geometry(g), LengthUnit::Bohr, Path::new(""))?;
            write_file(&out, &write_fcidump(&integrals))
        }
        Command::Vqe(args) => {
            let r = run_single(&args)?;
            let best = r.vqe.best();
            let summary = VqeSummary {
                point: &r.point,
                e_hf: r.hf_energy,
                optimizer: match args.optimizer {
                    Optimizer::Spsa => OptimizerKind::Spsa,
                    Optimizer::Simplex => OptimizerKind::Simplex,
                },
                restarts: r.vqe.runs.len(),
                best_restart: r.vqe.best_index,
                final_parameters: &best.final_parameters,
                termination_reason: best.termination_reason,
            };
            if let Some(out) = &args.out {
                write_file(out, &trace_csv(best))?;
            }
            if args.json {
                print_json(&summary);
            } else {
                let p = &r.point;
                println!("E_VQE = {:.10} Ha  E_FCI = {:.10} Ha  error = {:.4} mHa", p.e_vqe, p.e_fci, p.error_mha);
                println!("{} qubits, {} Pauli terms in {} groups, {} parameters", p.n_qubits, p.n_pauli_terms, p.n_groups, p.n_parameters);
            }
            Ok(())
        }
        Command::Trace(args) => {
            let r = run_single(&args)?;
            emit(args.out.as_deref(), &trace_csv(r.vqe.best()))
        }
        Command::Fci { input, json } => {
            let (label, problem) = load_problem(&input)?;
            let e_fci = problem.fci_energy()?;
            let e_hf = problem.hf_energy()?;
            if json {
                #[derive(Serialize)]
                struct Fci<'a> {
                    label: &'a str,
                    e_fci: f64,
                    e_hf: f64,
                    n_qubits: usize,
                    n_electrons: usize,
                    n_pauli_terms: usize,
                }
                print_json(&Fci {
                    label: &label,
                    e_fci,
                    e_hf,
                    n_qubits: problem.hamiltonian.n_qubits(),
                    n_electrons: problem.n_electrons(),
                    n_pauli_terms: problem.hamiltonian.len(),
                });
            } else {
                println!("E_FCI = {e_fci:.10} Ha  E_HF = {e_hf:.10} Ha");
            }
            Ok(())
        }
        Command::Scan { manifest, out, json } => {
            let m = ScanManifest::load(&manifest)?;
            let rows = run_scan(&m)?;
            let csv = scan_csv(&rows);
            if json {
                if let Some(out) = &out {
                    write_file(out, &csv)?;
                }
                let points: Vec<_> = rows.iter().filter_map(|r| r.outcome.as_ref().ok()).collect();
                let failed: Vec<_> = rows
                    .iter()
                    .filter_map(|r| r.outcome.as_ref().err().map(|e| (r.label.as_str(), e.as_str())))
                    .collect();
                #[derive(Serialize)]
                struct Scan<'a> {
                    label: &'a str,
                    points: Vec<&'a vqechem_cli::PesPoint>,
                    failed: Vec<(&'a str, &'a str)>,
                }
                print_json(&Scan { label: &m.label, points, failed });
                Ok(())
            } else {
                emit(out.as_deref(), &csv)
            }
        }
        Command::Fit(args) => {
            let curve = read_curve(&args.input, args.energy_column.as_deref())?;
            let eq = fit_equilibrium(&curve)?;
            let de = dissociation_energy(&curve)?;
            if args.json {
                #[derive(Serialize)]
                struct Fit {
                    r_e: f64,
                    e_min: f64,
                    dissociation_kcal_mol: f64,
                }
                print_json(&Fit { r_e: eq.coordinate, e_min: eq.energy, dissociation_kcal_mol: de });
            } else {
                println!("R_e = {:.6}  E_min = {:.10} Ha  D_e = {:.4} kcal/mol", eq.coordinate, eq.energy, de);
            }
            Ok(())
        }
        Command::Barrier(args) => {
            let curve = read_curve(&args.input, args.energy_column.as_deref())?;
            let b = activation_energy(&curve)?;
            if args.json {
                print_json(&b);
            } else {
                println!(
                    "reactant {:.6} ({:.10} Ha)  saddle {:.6} ({:.10} Ha)  barrier {:.4} kcal/mol",
                    b.reactant.coordinate, b.reactant.energy, b.saddle.coordinate, b.saddle.energy, b.activation_energy
                );
            }
            Ok(())
        }
        Command::Compare { a, b, energy_column, out, json } => {
            let ca = read_curve(&a, energy_column.as_deref())?;
            let cb = read_curve(&b, energy_column.as_deref())?;
            let report = compare_curves(&ca, &cb)?;
            if let Some(out) = &out {
                write_file(out, &report.to_csv())?;
            }
            if json {
                print_json(&report);
            } else if out.is_none() {
                print!("{}", report.to_csv());
            } else {
                println!("mean {:.10}  min {:.10}  max {:.10}", report.mean, report.min, report.max);
            }
            Ok(())
        }
    }
}
