//! Hardware-efficient and UCCSD trial circuits.

use crate::error::{Error, Result};
use crate::fermion::FermionOperator;
use crate::jordan_wigner::{jordan_wigner_complex, IMAGINARY_TOLERANCE};
use crate::simulator::{Angle, Circuit, Gate};

/// Hartree-Fock occupation over interleaved spin orbitals: the lowest
/// `n_electrons` spin orbitals.
pub fn hf_occupation(n_electrons: usize) -> Vec<usize> {
    (0..n_electrons).collect()
}

/// RotY layer, then `reps` blocks of [CNOT chain j→j+1, RotY layer].
pub fn build_hardware_efficient(n_qubits: usize, reps: usize) -> Result<Circuit> {
    if n_qubits < 2 {
        return Err(Error::Circuit("hardware-efficient ansatz needs at least 2 qubits".into()));
    }
    let mut c = Circuit::new(n_qubits, (reps + 1) * n_qubits);
    let mut slot = 0;
    for layer in 0..=reps {
        if layer > 0 {
            for q in 0..n_qubits - 1 {
                c.push(Gate::Cnot { control: q, target: q + 1 })?;
            }
        }
        for q in 0..n_qubits {
            c.push(Gate::RotY(q, Angle::param(slot)))?;
            slot += 1;
        }
    }
    Ok(c)
}

/// Spin-conserving single and double excitations out of a reference
/// determinant over interleaved spin orbitals (even index α, odd β).
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ExcitationSet {
    /// `(i, a)`: occupied i → virtual a.
    pub singles: Vec<(usize, usize)>,
    /// `(i, j, a, b)` with i < j occupied and a < b virtual.
    pub doubles: Vec<(usize, usize, usize, usize)>,
}

impl ExcitationSet {
    pub fn len(&self) -> usize {
        self.singles.len() + self.doubles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

fn check_occupied(n_spin_orbitals: usize, occupied: &[usize]) -> Result<Vec<usize>> {
    let mut occ = occupied.to_vec();
    occ.sort_unstable();
    occ.dedup();
    if occ.len() != occupied.len() {
        return Err(Error::Shape("duplicate occupied spin orbital".into()));
    }
    if let Some(&bad) = occ.iter().find(|&&i| i >= n_spin_orbitals) {
        return Err(Error::Shape(format!("occupied spin orbital {bad} outside 0..{n_spin_orbitals}")));
    }
    Ok(occ)
}

/// Lexicographically ordered singles, then doubles.
pub fn enumerate_excitations(n_spin_orbitals: usize, occupied: &[usize]) -> Result<ExcitationSet> {
    let occ = check_occupied(n_spin_orbitals, occupied)?;
    let virt: Vec<usize> = (0..n_spin_orbitals).filter(|i| !occ.contains(i)).collect();
    let spin = |i: usize| i % 2;
    let mut set = ExcitationSet::default();
    for &i in &occ {
        for &a in &virt {
            if spin(i) == spin(a) {
                set.singles.push((i, a));
            }
        }
    }
    for (x, &i) in occ.iter().enumerate() {
        for &j in &occ[x + 1..] {
            for (y, &a) in virt.iter().enumerate() {
                for &b in &virt[y + 1..] {
                    if spin(i) + spin(j) == spin(a) + spin(b) {
                        set.doubles.push((i, j, a, b));
                    }
                }
            }
        }
    }
    Ok(set)
}

/// Appends exp(θ (τ − τ†)) for the excitation `τ` as commuting Pauli
/// rotations bound to `slot`.
fn push_excitation(circuit: &mut Circuit, slot: usize, tau: &[(usize, bool)]) -> Result<()> {
    let n = circuit.n_qubits();
    let mut generator = FermionOperator::zero(n);
    generator.add_term(tau, 1.0)?;
    let dagger: Vec<(usize, bool)> = tau.iter().rev().map(|&(m, d)| (m, !d)).collect();
    generator.add_term(&dagger, -1.0)?;
    // τ − τ† is anti-Hermitian: its image is i Σ c_k P_k with real c_k, and
    // exp(iθ c_k P_k) = exp(−i (−2 c_k θ)/2 P_k)
    for (p, c) in jordan_wigner_complex(&generator) {
        if c.norm() < crate::fermion::PRUNE_THRESHOLD {
            continue;
        }
        if c.re.abs() > IMAGINARY_TOLERANCE {
            return Err(Error::NonHermitian(c.re.abs()));
        }
        circuit.push(Gate::PauliRotation(p, Angle::Param { slot, scale: -2.0 * c.im }))?;
    }
    Ok(())
}

/// Single first-order Trotter step of UCCSD, one parameter per excitation in
/// enumeration order. The reference state is prepared separately.
pub fn build_uccsd(n_spin_orbitals: usize, occupied: &[usize]) -> Result<Circuit> {
    let set = enumerate_excitations(n_spin_orbitals, occupied)?;
    let mut c = Circuit::new(n_spin_orbitals, set.len());
    let mut slot = 0;
    for &(i, a) in &set.singles {
        push_excitation(&mut c, slot, &[(a, true), (i, false)])?;
        slot += 1;
    }
    for &(i, j, a, b) in &set.doubles {
        push_excitation(&mut c, slot, &[(b, true), (a, true), (j, false), (i, false)])?;
        slot += 1;
    }
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hardware_efficient_counts() {
        assert_eq!(build_hardware_efficient(8, 2).unwrap().n_parameters(), 24);
        let c = build_hardware_efficient(2, 0).unwrap();
        assert_eq!(c.n_parameters(), 2);
        assert!(c.gates().iter().all(|g| matches!(g, Gate::RotY(..))));
        assert!(build_hardware_efficient(1, 1).is_err());
    }

    #[test]
    fn depth_linear_in_reps() {
        // consecutive CNOT chains pipeline, so the increment is constant from reps = 1 on
        let depths: Vec<usize> = (0..6).map(|r| build_hardware_efficient(5, r).unwrap().depth()).collect();
        assert_eq!(depths[0], 1);
        let step = depths[2] - depths[1];
        assert!(step > 0);
        assert!(depths[1..].windows(2).all(|w| w[1] - w[0] == step), "{depths:?}");
    }

    #[test]
    fn smallest_excitation_set() {
        let set = enumerate_excitations(4, &[0, 1]).unwrap();
        assert_eq!(set.singles, vec![(0, 2), (1, 3)]);
        assert_eq!(set.doubles, vec![(0, 1, 2, 3)]);
    }

    #[test]
    fn fully_occupied_has_no_excitations() {
        assert!(enumerate_excitations(4, &[0, 1, 2, 3]).unwrap().is_empty());
    }

    #[test]
    fn h2_uccsd_parameters() {
        let c = build_uccsd(4, &[0, 1]).unwrap();
        assert_eq!(c.n_parameters(), 3);
        c.validate().unwrap();
        // singles map to 2 strings each, the double to 8
        assert_eq!(c.gates().len(), 2 + 2 + 8);
    }
}
