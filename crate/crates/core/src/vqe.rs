//! The hybrid loop: prepare the reference, apply the trial circuit,
//! measure the energy, let a classical optimizer update the parameters.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hamiltonian::QubitHamiltonian;
use crate::measurement::{estimate_energy_sampled, group_commuting};
use crate::optim::minimize;
pub use crate::optim::{OptimizerConfig, OptimizerKind, TerminationReason, VqeResult};
use crate::simulator::{apply_circuit, expectation, prepare_hf, Circuit};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", tag = "kind")]
pub enum EvaluationMode {
    Exact,
    Sampled { shots_per_group: usize },
}

/// Energy of the circuit state over the Hartree-Fock reference.
pub struct EnergyObjective<'a> {
    h: &'a QubitHamiltonian,
    circuit: &'a Circuit,
    occupied: Vec<usize>,
    mode: EvaluationMode,
    groups: Vec<crate::measurement::MeasurementGroup>,
    seed: u64,
    evaluations: u64,
}

impl<'a> EnergyObjective<'a> {
    pub fn new(
        h: &'a QubitHamiltonian,
        circuit: &'a Circuit,
        occupied: &[usize],
        mode: EvaluationMode,
        seed: u64,
    ) -> Result<Self> {
        if h.n_qubits() != circuit.n_qubits() {
            return Err(Error::Shape(format!(
                "Hamiltonian on {} qubits, circuit on {}",
                h.n_qubits(),
                circuit.n_qubits()
            )));
        }
        circuit.validate()?;
        prepare_hf(circuit.n_qubits(), occupied)?;
        let groups = match mode {
            EvaluationMode::Exact => Vec::new(),
            EvaluationMode::Sampled { shots_per_group } => {
                if shots_per_group == 0 {
                    return Err(Error::Config("shots must be at least 1".into()));
                }
                group_commuting(h)
            }
        };
        Ok(Self {
            h,
            circuit,
            occupied: occupied.to_vec(),
            mode,
            groups,
            seed,
            evaluations: 0,
        })
    }

    pub fn evaluate(&mut self, params: &[f64]) -> Result<f64> {
        let reference = prepare_hf(self.circuit.n_qubits(), &self.occupied)?;
        let state = apply_circuit(&reference, self.circuit, params)?;
        self.evaluations += 1;
        match self.mode {
            EvaluationMode::Exact => expectation(&state, self.h),
            EvaluationMode::Sampled { shots_per_group } => {
                // fresh shot noise per evaluation, reproducible per run
                let seed = self
                    .seed
                    .wrapping_mul(0x9e37_79b9_7f4a_7c15)
                    .wrapping_add(self.evaluations.wrapping_mul(1 << 20));
                Ok(estimate_energy_sampled(&state, self.h, &self.groups, shots_per_group, seed)?.energy)
            }
        }
    }
}

/// Single optimization from all-zero amplitudes (plus the configured jitter).
pub fn run_vqe(
    h: &QubitHamiltonian,
    circuit: &Circuit,
    hf_occupied: &[usize],
    config: &OptimizerConfig,
    mode: EvaluationMode,
) -> Result<VqeResult> {
    let mut objective = EnergyObjective::new(h, circuit, hf_occupied, mode, config.seed)?;
    let theta0 = vec![0.0; circuit.n_parameters()];
    minimize(|x: &[f64]| objective.evaluate(x), &theta0, config)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MultiStartResult {
    /// Index into `runs` of the lowest final energy.
    pub best_index: usize,
    pub runs: Vec<VqeResult>,
}

impl MultiStartResult {
    pub fn best(&self) -> &VqeResult {
        &self.runs[self.best_index]
    }
}

/// Jitter applied to restarts after the first when the config has none.
pub const RESTART_JITTER: f64 = 0.1;

pub const DEFAULT_RESTARTS: usize = 5;

/// `restarts` runs with seeds `seed, seed + 1, …`, executed in parallel. The
/// first starts from the configured point; later ones add a random
/// perturbation.
pub fn run_vqe_restarts(
    h: &QubitHamiltonian,
    circuit: &Circuit,
    hf_occupied: &[usize],
    config: &OptimizerConfig,
    mode: EvaluationMode,
    restarts: usize,
) -> Result<MultiStartResult> {
    if restarts == 0 {
        return Err(Error::Config("at least one restart is required".into()));
    }
    let runs = (0..restarts)
        .into_par_iter()
        .map(|r| {
            let mut cfg = config.clone();
            cfg.seed = config.seed.wrapping_add(r as u64);
            if r > 0 && cfg.initial_jitter == 0.0 {
                cfg.initial_jitter = RESTART_JITTER;
            }
            run_vqe(h, circuit, hf_occupied, &cfg, mode)
        })
        .collect::<Result<Vec<_>>>()?;
    let best_index = runs
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.final_energy.total_cmp(&b.1.final_energy))
        .map(|(i, _)| i)
        .expect("nonempty");
    Ok(MultiStartResult { best_index, runs })
}

/// `iteration,energy,best_energy` rows.
pub fn trace_csv(result: &VqeResult) -> String {
    use std::fmt::Write;
    let mut out = String::from("iteration,energy,best_energy\n");
    for (i, (e, b)) in result.energy_trace.iter().zip(result.best_trace()).enumerate() {
        writeln!(out, "{i},{e:.12},{b:.12}").unwrap();
    }
    out
}
