//! One geometry through integrals, optional frozen core, Jordan-Wigner,
//! VQE and the exact oracle.

use std::path::Path;

use rayon::prelude::*;
use serde::Serialize;
use vqechem::ansatz::{build_hardware_efficient, build_uccsd, hf_occupation};
use vqechem::chem::{freeze_core, molecular_integrals, read_fcidump, ActiveSpaceSpec, MolecularIntegrals, Molecule};
use vqechem::exactdiag::{ground_state, Method, Sector};
use vqechem::fermion::build_second_quantized;
use vqechem::jordan_wigner::jordan_wigner;
use vqechem::measurement::group_commuting;
use vqechem::optim::OptimizerConfig;
use vqechem::simulator::{expectation, prepare_hf};
use vqechem::units::LengthUnit;
use vqechem::vqe::{run_vqe_restarts, EvaluationMode, MultiStartResult};
use vqechem::{Circuit, QubitHamiltonian};

use crate::error::{CliError, Result};
use crate::manifest::{point_seed, AnsatzKind, AnsatzSpec, PointSpec, ScanManifest, Source};

/// Active-space qubit Hamiltonian with its reference occupation.
#[derive(Debug, Clone)]
pub struct Problem {
    pub integrals: MolecularIntegrals,
    pub hamiltonian: QubitHamiltonian,
    pub occupied: Vec<usize>,
}

impl Problem {
    pub fn n_electrons(&self) -> usize {
        self.integrals.n_electrons
    }

    pub fn fci_energy(&self) -> Result<f64> {
        Ok(ground_state(&self.hamiltonian, Method::Auto, Sector::ParticleNumber(self.n_electrons()))?.energy)
    }

    pub fn hf_energy(&self) -> Result<f64> {
        let hf = prepare_hf(self.hamiltonian.n_qubits(), &self.occupied)?;
        Ok(expectation(&hf, &self.hamiltonian)?)
    }

    pub fn circuit(&self, ansatz: AnsatzSpec) -> Result<Circuit> {
        let n = self.hamiltonian.n_qubits();
        Ok(match ansatz.kind {
            AnsatzKind::Uccsd => build_uccsd(n, &self.occupied)?,
            AnsatzKind::Hardware => build_hardware_efficient(n, ansatz.reps)?,
        })
    }
}

pub fn load_integrals(source: &Source, unit: LengthUnit, base_dir: &Path) -> Result<MolecularIntegrals> {
    let molecule = match source {
        Source::HydrogenChain { bonds, charge } => {
            let bohr: Vec<f64> = bonds.iter().map(|&b| unit.to_bohr(b)).collect();
            Molecule::hydrogen_chain(&bohr, *charge)?
        }
        Source::Geometry(g) => g.to_molecule()?,
        Source::Fcidump { path } => {
            let p = if path.is_absolute() { path.clone() } else { base_dir.join(path) };
            return Ok(read_fcidump(p)?);
        }
    };
    Ok(molecular_integrals(&molecule)?.0)
}

/// Fills an empty `active` list with every orbital not frozen.
pub fn resolve_active_space(spec: &ActiveSpaceSpec, n_spatial: usize) -> ActiveSpaceSpec {
    let mut out = spec.clone();
    if out.active.is_empty() {
        out.active = (0..n_spatial).filter(|p| !spec.frozen.contains(p)).collect();
    }
    out
}

pub fn build_problem(integrals: MolecularIntegrals, active: Option<&ActiveSpaceSpec>) -> Result<Problem> {
    let integrals = match active {
        Some(spec) => freeze_core(&integrals, &resolve_active_space(spec, integrals.n_spatial))?,
        None => integrals,
    };
    let hamiltonian = jordan_wigner(&build_second_quantized(&integrals))?;
    let occupied = hf_occupation(integrals.n_electrons);
    Ok(Problem { integrals, hamiltonian, occupied })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PesPoint {
    pub geometry_label: String,
    pub coordinate: Option<f64>,
    pub e_vqe: f64,
    pub e_fci: f64,
    pub error_mha: f64,
    pub n_qubits: usize,
    pub n_pauli_terms: usize,
    pub n_groups: usize,
    pub n_parameters: usize,
    pub n_evaluations: usize,
    pub converged: bool,
}

/// Settings shared by every point of a run.
#[derive(Debug, Clone)]
pub struct RunSettings {
    pub active_space: Option<ActiveSpaceSpec>,
    pub ansatz: AnsatzSpec,
    pub optimizer: OptimizerConfig,
    pub mode: EvaluationMode,
    pub restarts: usize,
}

impl RunSettings {
    pub fn from_manifest(m: &ScanManifest) -> Self {
        Self {
            active_space: m.active_space.clone(),
            ansatz: m.ansatz,
            optimizer: m.optimizer.clone(),
            mode: m.mode,
            restarts: m.restarts,
        }
    }
}

#[derive(Debug, Clone)]
pub struct PointRun {
    pub point: PesPoint,
    pub hf_energy: f64,
    pub vqe: MultiStartResult,
}

pub fn run_problem(label: &str, coordinate: Option<f64>, problem: &Problem, settings: &RunSettings, seed: u64) -> Result<PointRun> {
    let circuit = problem.circuit(settings.ansatz)?;
    let config = OptimizerConfig { seed, ..settings.optimizer.clone() };
    let vqe = run_vqe_restarts(&problem.hamiltonian, &circuit, &problem.occupied, &config, settings.mode, settings.restarts)?;
    let e_fci = problem.fci_energy()?;
    let best = vqe.best();
    let point = PesPoint {
        geometry_label: label.to_string(),
        coordinate,
        e_vqe: best.final_energy,
        e_fci,
        error_mha: (best.final_energy - e_fci) * 1000.0,
        n_qubits: problem.hamiltonian.n_qubits(),
        n_pauli_terms: problem.hamiltonian.len(),
        n_groups: group_commuting(&problem.hamiltonian).len(),
        n_parameters: circuit.n_parameters(),
        n_evaluations: vqe.runs.iter().map(|r| r.n_function_evaluations).sum(),
        converged: best.converged,
    };
    Ok(PointRun { point, hf_energy: problem.hf_energy()?, vqe })
}

/// Runs manifest point `index` in isolation with its derived seed.
pub fn run_point(manifest: &ScanManifest, index: usize) -> Result<PointRun> {
    let spec: &PointSpec = &manifest.points[index];
    let integrals = load_integrals(&spec.source, manifest.unit, &manifest.base_dir)?;
    let problem = build_problem(integrals, manifest.active_space.as_ref())?;
    let settings = RunSettings::from_manifest(manifest);
    run_problem(&spec.label, spec.coordinate(), &problem, &settings, point_seed(manifest.seed, index))
}

#[derive(Debug)]
pub struct ScanRow {
    pub label: String,
    pub coordinate: Option<f64>,
    pub outcome: std::result::Result<PesPoint, String>,
}

/// Every point in parallel; rows come back in manifest order. A failing
/// point becomes an error row unless all points fail.
pub fn run_scan(manifest: &ScanManifest) -> Result<Vec<ScanRow>> {
    let rows: Vec<ScanRow> = (0..manifest.points.len())
        .into_par_iter()
        .map(|i| {
            let spec = &manifest.points[i];
            ScanRow {
                label: spec.label.clone(),
                coordinate: spec.coordinate(),
                outcome: run_point(manifest, i).map(|r| r.point).map_err(|e| e.to_string()),
            }
        })
        .collect();
    if rows.iter().all(|r| r.outcome.is_err()) {
        return Err(CliError::ScanFailed(rows.len()));
    }
    Ok(rows)
}
