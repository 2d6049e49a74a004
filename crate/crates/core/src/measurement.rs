//! Qubit-wise commuting measurement groups and sampled energy estimation.

use std::fmt::Write;

use crate::error::{Error, Result};
use crate::hamiltonian::QubitHamiltonian;
use crate::pauli::{Letter, PauliString};
use crate::simulator::Statevector;

#[derive(Debug, Clone, PartialEq)]
pub struct MeasurementGroup {
    /// Indices into the Hamiltonian's term list.
    pub terms: Vec<usize>,
    /// Product basis covering every non-identity letter of the group.
    pub basis: PauliString,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyEstimate {
    pub energy: f64,
    pub standard_error: f64,
    pub shots_used: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ShotAllocation {
    /// The same number of shots for every group.
    #[default]
    Uniform,
    /// The same total, split in proportion to Σ|w_k| of each group.
    WeightProportional,
}

/// Greedy coloring of the graph joining terms that do not commute qubit-wise.
/// Vertices are colored in order of decreasing degree, ties by term index.
pub fn group_commuting(h: &QubitHamiltonian) -> Vec<MeasurementGroup> {
    let terms = h.terms();
    let n = terms.len();
    let conflicts = |a: usize, b: usize| !terms[a].1.commutes_qubitwise(&terms[b].1).expect("same width");
    let degree: Vec<usize> = (0..n).map(|a| (0..n).filter(|&b| b != a && conflicts(a, b)).count()).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| degree[b].cmp(&degree[a]).then(a.cmp(&b)));

    let mut groups: Vec<MeasurementGroup> = Vec::new();
    for v in order {
        let p = terms[v].1;
        let slot = groups.iter().position(|g| g.terms.iter().all(|&u| !conflicts(u, v)));
        match slot {
            Some(k) => {
                let g = &mut groups[k];
                g.terms.push(v);
                for q in 0..p.n_qubits() {
                    if p.letter(q) != Letter::I {
                        g.basis.set(q, p.letter(q));
                    }
                }
            }
            None => groups.push(MeasurementGroup {
                terms: vec![v],
                basis: p,
            }),
        }
    }
    for g in &mut groups {
        g.terms.sort_unstable();
    }
    groups
}

/// `group_id,n_terms,basis_string` rows.
pub fn grouping_report_csv(groups: &[MeasurementGroup]) -> String {
    let mut out = String::from("group_id,n_terms,basis_string\n");
    for (i, g) in groups.iter().enumerate() {
        writeln!(out, "{i},{},{}", g.terms.len(), g.basis).unwrap();
    }
    out
}

fn check_groups(h: &QubitHamiltonian, groups: &[MeasurementGroup]) -> Result<()> {
    let mut seen = vec![false; h.len()];
    for g in groups {
        if g.basis.n_qubits() != h.n_qubits() {
            return Err(Error::Shape("group basis width differs from Hamiltonian".into()));
        }
        for &t in &g.terms {
            if t >= h.len() || seen[t] {
                return Err(Error::Shape(format!("term {t} is out of range or grouped twice")));
            }
            seen[t] = true;
            let p = h.terms()[t].1;
            for q in 0..p.n_qubits() {
                let l = p.letter(q);
                if l != Letter::I && l != g.basis.letter(q) {
                    return Err(Error::Shape(format!("term {p} is not diagonal in basis {}", g.basis)));
                }
            }
        }
    }
    if let Some(t) = seen.iter().position(|s| !s) {
        return Err(Error::Shape(format!("term {t} is in no group")));
    }
    Ok(())
}

fn rotate_to_basis(state: &mut Statevector, basis: &PauliString) {
    for q in 0..basis.n_qubits() {
        match basis.letter(q) {
            Letter::X => state.apply_h(q),
            Letter::Y => {
                state.apply_sdg(q);
                state.apply_h(q);
            }
            _ => {}
        }
    }
}

/// Samples every group in its rotated basis and combines the per-term parity
/// means. Groups are treated as independent in the error estimate and the
/// seed for group `g` is `seed + g`.
pub fn estimate_energy_sampled(
    state: &Statevector,
    h: &QubitHamiltonian,
    groups: &[MeasurementGroup],
    shots_per_group: usize,
    seed: u64,
) -> Result<EnergyEstimate> {
    estimate_energy_with_allocation(state, h, groups, shots_per_group, seed, ShotAllocation::Uniform)
}

pub fn estimate_energy_with_allocation(
    state: &Statevector,
    h: &QubitHamiltonian,
    groups: &[MeasurementGroup],
    shots_per_group: usize,
    seed: u64,
    allocation: ShotAllocation,
) -> Result<EnergyEstimate> {
    if shots_per_group == 0 {
        return Err(Error::Shape("shots_per_group must be at least 1".into()));
    }
    if state.n_qubits() != h.n_qubits() {
        return Err(Error::Shape("state and Hamiltonian widths differ".into()));
    }
    check_groups(h, groups)?;
    let terms = h.terms();

    // identity terms are exact and need no shots
    let measured: Vec<Vec<usize>> = groups
        .iter()
        .map(|g| g.terms.iter().copied().filter(|&t| !terms[t].1.is_identity()).collect())
        .collect();
    let active: Vec<usize> = (0..groups.len()).filter(|&g| !measured[g].is_empty()).collect();
    let total = shots_per_group * active.len();
    let shots: Vec<usize> = match allocation {
        ShotAllocation::Uniform => vec![shots_per_group; groups.len()],
        ShotAllocation::WeightProportional => {
            let weight: Vec<f64> = measured
                .iter()
                .map(|ts| ts.iter().map(|&t| terms[t].0.abs()).sum())
                .collect();
            let sum: f64 = weight.iter().sum();
            weight
                .iter()
                .map(|w| if sum > 0.0 { ((w / sum * total as f64).round() as usize).max(1) } else { 1 })
                .collect()
        }
    };

    let mut energy = terms.iter().filter(|(_, p)| p.is_identity()).map(|(w, _)| w).sum::<f64>();
    let mut variance = 0.0;
    let mut shots_used = 0;
    for &g in &active {
        let n_shots = shots[g];
        let mut rotated = state.clone();
        rotate_to_basis(&mut rotated, &groups[g].basis);
        let outcomes = rotated.sample_indices(n_shots, seed.wrapping_add(g as u64));
        shots_used += n_shots;
        for &t in &measured[g] {
            let (w, p) = terms[t];
            let support = p.support() as usize;
            let sum: i64 = outcomes
                .iter()
                .map(|&b| if (b & support).count_ones() % 2 == 0 { 1 } else { -1 })
                .sum();
            let mean = sum as f64 / n_shots as f64;
            energy += w * mean;
            variance += w * w * (1.0 - mean * mean) / n_shots as f64;
        }
    }
    Ok(EnergyEstimate {
        energy,
        standard_error: variance.max(0.0).sqrt(),
        shots_used,
    })
}
