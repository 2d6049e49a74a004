//! Fermionic operators over spin orbitals and the molecular Hamiltonian.
//!
//! Spin orbitals are interleaved: spin orbital `2i` is spatial orbital `i`
//! with spin α and `2i + 1` the same orbital with spin β.

use std::collections::BTreeMap;

use crate::chem::MolecularIntegrals;
use crate::error::{Error, Result};

/// Coefficients smaller than this are dropped when terms are combined.
pub const PRUNE_THRESHOLD: f64 = 1e-12;

/// `(mode, is_creation)`.
pub type Ladder = (usize, bool);

/// Sum of products of ladder operators with real coefficients, kept in
/// canonical normal order: creators left of annihilators, each block sorted
/// by descending mode index.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct FermionOperator {
    n_modes: usize,
    terms: BTreeMap<Vec<Ladder>, f64>,
}

impl FermionOperator {
    pub fn zero(n_modes: usize) -> Self {
        Self {
            n_modes,
            terms: BTreeMap::new(),
        }
    }

    pub fn n_modes(&self) -> usize {
        self.n_modes
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[Ladder], f64)> {
        self.terms.iter().map(|(k, &v)| (k.as_slice(), v))
    }

    pub fn coefficient(&self, ops: &[Ladder]) -> f64 {
        self.terms.get(ops).copied().unwrap_or(0.0)
    }

    /// Adds `coeff · ops`, normal-ordering the product first.
    pub fn add_term(&mut self, ops: &[Ladder], coeff: f64) -> Result<()> {
        if let Some(&(m, _)) = ops.iter().find(|(m, _)| *m >= self.n_modes) {
            return Err(Error::Shape(format!("mode {m} outside 0..{}", self.n_modes)));
        }
        for (term, c) in normal_order(ops, coeff) {
            *self.terms.entry(term).or_insert(0.0) += c;
        }
        self.prune();
        Ok(())
    }

    pub fn add(&mut self, other: &FermionOperator) -> Result<()> {
        if other.n_modes != self.n_modes {
            return Err(Error::Shape("operators on different mode counts".into()));
        }
        for (k, &v) in &other.terms {
            *self.terms.entry(k.clone()).or_insert(0.0) += v;
        }
        self.prune();
        Ok(())
    }

    pub fn scaled(&self, factor: f64) -> Self {
        let mut out = self.clone();
        for v in out.terms.values_mut() {
            *v *= factor;
        }
        out.prune();
        out
    }

    fn prune(&mut self) {
        self.terms.retain(|_, v| v.abs() >= PRUNE_THRESHOLD);
    }

    pub fn hermitian_conjugate(&self) -> Self {
        let mut out = Self::zero(self.n_modes);
        for (ops, &c) in &self.terms {
            let dagger: Vec<Ladder> = ops.iter().rev().map(|&(m, d)| (m, !d)).collect();
            out.add_term(&dagger, c).expect("modes already validated");
        }
        out
    }

    /// Largest coefficient of `self − self†`.
    pub fn hermiticity_error(&self) -> f64 {
        let mut diff = self.clone();
        diff.add(&self.hermitian_conjugate().scaled(-1.0)).expect("same mode count");
        diff.terms.values().fold(0.0, |m, v| m.max(v.abs()))
    }
}

/// Normal-orders a product of ladder operators using the canonical
/// anticommutation relations; contractions spawn additional terms.
pub fn normal_order(ops: &[Ladder], coeff: f64) -> Vec<(Vec<Ladder>, f64)> {
    let mut done = Vec::new();
    let mut stack = vec![(ops.to_vec(), coeff)];
    'outer: while let Some((mut term, mut c)) = stack.pop() {
        // insertion sort: creators first, then descending mode index
        for i in 1..term.len() {
            let mut j = i;
            while j > 0 {
                let (left, right) = (term[j - 1], term[j]);
                let swap = match (left.1, right.1) {
                    (false, true) => true,
                    (l, r) if l == r => {
                        if left.0 == right.0 {
                            // a_p a_p = a†_p a†_p = 0
                            continue 'outer;
                        }
                        right.0 > left.0
                    }
                    _ => false,
                };
                if !swap {
                    break;
                }
                if !left.1 && right.1 && left.0 == right.0 {
                    // a_p a†_p = 1 − a†_p a_p
                    let mut contracted = term[..j - 1].to_vec();
                    contracted.extend_from_slice(&term[j + 1..]);
                    stack.push((contracted, c));
                }
                term.swap(j - 1, j);
                c = -c;
                j -= 1;
            }
        }
        done.push((term, c));
    }
    done
}

/// Second-quantized electronic Hamiltonian over interleaved spin orbitals:
///
/// H = E_const + Σ_{pq,σ} h_pq a†_{pσ} a_{qσ}
///     + ½ Σ_{pqrs,στ} (pq|rs) a†_{pσ} a†_{rτ} a_{sτ} a_{qσ}
pub fn build_second_quantized(ints: &MolecularIntegrals) -> FermionOperator {
    let n = ints.n_spatial;
    let mut op = FermionOperator::zero(2 * n);
    let mut acc: BTreeMap<Vec<Ladder>, f64> = BTreeMap::new();
    let mut push = |ops: Vec<Ladder>, c: f64| {
        if c != 0.0 {
            for (t, v) in normal_order(&ops, c) {
                *acc.entry(t).or_insert(0.0) += v;
            }
        }
    };
    push(vec![], ints.constant_energy);
    for p in 0..n {
        for q in 0..n {
            let h = ints.h[(p, q)];
            for spin in 0..2 {
                push(vec![(2 * p + spin, true), (2 * q + spin, false)], h);
            }
        }
    }
    for p in 0..n {
        for q in 0..n {
            for r in 0..n {
                for s in 0..n {
                    let v = 0.5 * ints.g(p, q, r, s);
                    if v == 0.0 {
                        continue;
                    }
                    for sigma in 0..2 {
                        for tau in 0..2 {
                            let (ps, qs) = (2 * p + sigma, 2 * q + sigma);
                            let (rs, ss) = (2 * r + tau, 2 * s + tau);
                            if ps == rs || qs == ss {
                                continue;
                            }
                            push(vec![(ps, true), (rs, true), (ss, false), (qs, false)], v);
                        }
                    }
                }
            }
        }
    }
    op.terms = acc;
    op.prune();
    op
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn anticommutator_contracts() {
        // a_0 a†_0 = 1 − a†_0 a_0
        let mut op = FermionOperator::zero(2);
        op.add_term(&[(0, false), (0, true)], 1.0).unwrap();
        assert_eq!(op.coefficient(&[]), 1.0);
        assert_eq!(op.coefficient(&[(0, true), (0, false)]), -1.0);
        assert_eq!(op.len(), 2);
    }

    #[test]
    fn repeated_creators_vanish() {
        let mut op = FermionOperator::zero(2);
        op.add_term(&[(1, true), (1, true)], 1.0).unwrap();
        assert!(op.is_empty());
    }

    #[test]
    fn creators_sorted_descending_with_sign() {
        let mut op = FermionOperator::zero(4);
        op.add_term(&[(0, true), (2, true), (3, false), (1, false)], 0.5).unwrap();
        assert_eq!(op.coefficient(&[(2, true), (0, true), (3, false), (1, false)]), -0.5);
    }

    #[test]
    fn single_orbital_one_body() {
        let mut ints = MolecularIntegrals::zeros(1, 2);
        ints.h[(0, 0)] = -0.7;
        let op = build_second_quantized(&ints);
        assert_eq!(op.len(), 2);
        assert_eq!(op.coefficient(&[(0, true), (0, false)]), -0.7);
        assert_eq!(op.coefficient(&[(1, true), (1, false)]), -0.7);
    }

    #[test]
    fn constant_only() {
        let mut ints = MolecularIntegrals::zeros(2, 2);
        ints.constant_energy = 0.42;
        let op = build_second_quantized(&ints);
        assert_eq!(op.len(), 1);
        assert_eq!(op.coefficient(&[]), 0.42);
    }

    #[test]
    fn mode_out_of_range() {
        let mut op = FermionOperator::zero(2);
        assert!(op.add_term(&[(2, true)], 1.0).is_err());
    }

    #[test]
    fn hermitian_hamiltonian() {
        let mut ints = MolecularIntegrals::zeros(2, 2);
        ints.h[(0, 1)] = 0.1;
        ints.h[(1, 0)] = 0.1;
        ints.set_g_symmetric(0, 1, 0, 0, 0.05);
        ints.set_g_symmetric(0, 0, 1, 1, 0.3);
        let op = build_second_quantized(&ints);
        assert!(op.hermiticity_error() < 1e-14);
        let mut hop = FermionOperator::zero(2);
        hop.add_term(&[(1, true), (0, false)], 1.0).unwrap();
        assert_eq!(hop.hermiticity_error(), 1.0);
    }
}
