use nalgebra::{DMatrix, DVector, SymmetricEigen};

use super::ao::AoIntegrals;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RhfOptions {
    pub max_iterations: usize,
    /// Convergence threshold on the max-abs change of the density matrix.
    pub density_tolerance: f64,
}

impl Default for RhfOptions {
    fn default() -> Self {
        Self {
            max_iterations: 200,
            density_tolerance: 1e-8,
        }
    }
}

#[derive(Debug, Clone)]
pub struct RhfResult {
    /// Electronic plus nuclear repulsion energy.
    pub total_energy: f64,
    /// Ascending.
    pub orbital_energies: Vec<f64>,
    /// n_ao × n_mo, columns ordered like `orbital_energies`.
    pub mo_coefficients: DMatrix<f64>,
    pub n_electrons: usize,
    pub n_iterations: usize,
    pub converged: bool,
    /// Total energy of the density entering each Fock build.
    pub energy_trace: Vec<f64>,
}

impl RhfResult {
    pub fn n_occupied(&self) -> usize {
        self.n_electrons / 2
    }
}

/// Sorted eigen-decomposition of a symmetric matrix.
pub(crate) fn sorted_eigh(m: &DMatrix<f64>) -> (DVector<f64>, DMatrix<f64>) {
    let eig = SymmetricEigen::new(m.clone());
    let mut order: Vec<usize> = (0..m.nrows()).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values = DVector::from_iterator(order.len(), order.iter().map(|&i| eig.eigenvalues[i]));
    let vectors = DMatrix::from_columns(&order.iter().map(|&i| eig.eigenvectors.column(i)).collect::<Vec<_>>());
    (values, vectors)
}

fn density(c: &DMatrix<f64>, n_occ: usize) -> DMatrix<f64> {
    let occ = c.columns(0, n_occ);
    2.0 * &occ * occ.transpose()
}

fn fock(ao: &AoIntegrals, hcore: &DMatrix<f64>, p: &DMatrix<f64>) -> DMatrix<f64> {
    let n = ao.n_ao;
    let mut f = hcore.clone();
    for a in 0..n {
        for b in 0..n {
            let mut g = 0.0;
            for c in 0..n {
                for d in 0..n {
                    g += p[(c, d)] * (ao.eri(a, b, c, d) - 0.5 * ao.eri(a, c, b, d));
                }
            }
            f[(a, b)] += g;
        }
    }
    f
}

fn electronic_energy(p: &DMatrix<f64>, hcore: &DMatrix<f64>, f: &DMatrix<f64>) -> f64 {
    0.5 * p.component_mul(&(hcore + f)).sum()
}

pub fn run_rhf(ao: &AoIntegrals, n_electrons: usize) -> Result<RhfResult> {
    run_rhf_with(ao, n_electrons, RhfOptions::default())
}

/// Closed-shell Roothaan iterations from a core-Hamiltonian guess.
pub fn run_rhf_with(ao: &AoIntegrals, n_electrons: usize, opts: RhfOptions) -> Result<RhfResult> {
    let n = ao.n_ao;
    if n_electrons % 2 != 0 || n_electrons > 2 * n {
        return Err(Error::InvalidMolecule(format!(
            "RHF needs an even electron count ≤ {}; got {n_electrons}",
            2 * n
        )));
    }
    let n_occ = n_electrons / 2;

    let (s_vals, s_vecs) = sorted_eigh(&ao.overlap);
    if s_vals.iter().any(|&v| v < 1e-10) {
        return Err(Error::InvalidMolecule("overlap matrix is not positive definite".into()));
    }
    let inv_sqrt = DMatrix::from_diagonal(&s_vals.map(|v| v.sqrt().recip()));
    let x = &s_vecs * inv_sqrt * s_vecs.transpose();

    let hcore = ao.core_hamiltonian();
    let solve = |f: &DMatrix<f64>| {
        let fp = x.transpose() * f * &x;
        let (e, cp) = sorted_eigh(&fp);
        (e, &x * cp)
    };

    let (eps, mut c) = solve(&hcore);
    if n_occ == 0 {
        return Ok(RhfResult {
            total_energy: ao.e_nuc,
            orbital_energies: eps.iter().copied().collect(),
            mo_coefficients: c,
            n_electrons,
            n_iterations: 0,
            converged: true,
            energy_trace: vec![],
        });
    }

    let mut p = density(&c, n_occ);
    let mut trace = Vec::new();
    for iteration in 1..=opts.max_iterations {
        let f = fock(ao, &hcore, &p);
        trace.push(electronic_energy(&p, &hcore, &f) + ao.e_nuc);
        c = solve(&f).1;
        let p_new = density(&c, n_occ);
        let delta = (&p_new - &p).amax();
        p = p_new;
        if delta < opts.density_tolerance {
            let f = fock(ao, &hcore, &p);
            let total_energy = electronic_energy(&p, &hcore, &f) + ao.e_nuc;
            let (eps, c) = solve(&f);
            return Ok(RhfResult {
                total_energy,
                orbital_energies: eps.iter().copied().collect(),
                mo_coefficients: c,
                n_electrons,
                n_iterations: iteration,
                converged: true,
                energy_trace: trace,
            });
        }
    }
    Err(Error::ScfNotConverged {
        iterations: opts.max_iterations,
        last_energy: *trace.last().unwrap_or(&f64::NAN),
    })
}
