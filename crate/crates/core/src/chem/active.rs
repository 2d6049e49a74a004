use serde::{Deserialize, Serialize};

use super::mo::MolecularIntegrals;
use crate::error::{Error, Result};

/// Frozen (doubly occupied) and active spatial orbitals. Orbitals in
/// neither set are dropped.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ActiveSpaceSpec {
    pub frozen: Vec<usize>,
    pub active: Vec<usize>,
}

impl ActiveSpaceSpec {
    /// Freeze the lowest `n_frozen` orbitals and keep the rest active.
    pub fn frozen_core(n_frozen: usize, n_spatial: usize) -> Self {
        Self {
            frozen: (0..n_frozen.min(n_spatial)).collect(),
            active: (n_frozen.min(n_spatial)..n_spatial).collect(),
        }
    }

    pub fn validate(&self, n_spatial: usize, n_electrons: usize) -> Result<()> {
        for (name, set) in [("frozen", &self.frozen), ("active", &self.active)] {
            if set.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::ActiveSpace(format!("{name} indices must be strictly increasing")));
            }
            if let Some(&bad) = set.iter().find(|&&i| i >= n_spatial) {
                return Err(Error::ActiveSpace(format!("{name} orbital {bad} out of range 0..{n_spatial}")));
            }
        }
        if let Some(&both) = self.frozen.iter().find(|i| self.active.contains(i)) {
            return Err(Error::ActiveSpace(format!("orbital {both} is both frozen and active")));
        }
        let n_occ = n_electrons / 2;
        if let Some(&bad) = self.frozen.iter().find(|&&i| i >= n_occ) {
            return Err(Error::ActiveSpace(format!(
                "frozen orbital {bad} is not doubly occupied in the reference ({n_occ} occupied)"
            )));
        }
        let n_active_electrons = n_electrons - 2 * self.frozen.len();
        if n_active_electrons > 2 * self.active.len() {
            return Err(Error::ActiveSpace(format!(
                "{n_active_electrons} active electrons do not fit in {} active orbitals",
                self.active.len()
            )));
        }
        Ok(())
    }
}

/// Folds doubly occupied core orbitals into the constant and an effective
/// one-body operator, and restricts the integrals to the active orbitals.
pub fn freeze_core(ints: &MolecularIntegrals, spec: &ActiveSpaceSpec) -> Result<MolecularIntegrals> {
    spec.validate(ints.n_spatial, ints.n_electrons)?;
    let core = &spec.frozen;
    let act = &spec.active;

    let mut constant = ints.constant_energy;
    for &i in core {
        constant += 2.0 * ints.h[(i, i)];
        for &j in core {
            constant += 2.0 * ints.g(i, i, j, j) - ints.g(i, j, j, i);
        }
    }

    let n = act.len();
    let mut out = MolecularIntegrals::zeros(n, ints.n_electrons - 2 * core.len());
    out.constant_energy = constant;
    for (a, &p) in act.iter().enumerate() {
        for (b, &q) in act.iter().enumerate() {
            let mut v = ints.h[(p, q)];
            for &i in core {
                v += 2.0 * ints.g(p, q, i, i) - ints.g(p, i, i, q);
            }
            out.h[(a, b)] = v;
            for (c, &r) in act.iter().enumerate() {
                for (d, &s) in act.iter().enumerate() {
                    let at = out.index(a, b, c, d);
                    out.g[at] = ints.g(p, q, r, s);
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample(n: usize) -> MolecularIntegrals {
        let mut m = MolecularIntegrals::zeros(n, 4);
        for p in 0..n {
            for q in 0..n {
                m.h[(p, q)] = -1.0 / (1.0 + (p + q) as f64);
            }
        }
        for (k, v) in m.g.iter_mut().enumerate() {
            *v = 0.01 * (k % 7) as f64;
        }
        m
    }

    #[test]
    fn empty_frozen_set_is_identity() {
        let m = sample(3);
        let out = freeze_core(&m, &ActiveSpaceSpec::frozen_core(0, 3)).unwrap();
        assert_eq!(out, m);
    }

    #[test]
    fn overlapping_sets_rejected() {
        let m = sample(3);
        let spec = ActiveSpaceSpec { frozen: vec![0], active: vec![0, 1, 2] };
        assert!(matches!(freeze_core(&m, &spec), Err(Error::ActiveSpace(_))));
    }

    #[test]
    fn unoccupied_core_rejected() {
        let m = sample(3);
        let spec = ActiveSpaceSpec { frozen: vec![2], active: vec![0, 1] };
        assert!(freeze_core(&m, &spec).is_err());
    }

    #[test]
    fn electron_count_reduced() {
        let m = sample(3);
        let out = freeze_core(&m, &ActiveSpaceSpec::frozen_core(1, 3)).unwrap();
        assert_eq!(out.n_spatial, 2);
        assert_eq!(out.n_electrons, 2);
    }
}
