//! Lowest eigenpair of a qubit Hamiltonian, the reference for every energy
//! comparison in the crate.

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::hamiltonian::QubitHamiltonian;
use crate::simulator::{Statevector, MAX_SIMULATED_QUBITS};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Dimension up to which the dense path is used by default (10 qubits).
pub const DENSE_LIMIT_QUBITS: usize = 10;
pub const RESIDUAL_TOLERANCE: f64 = 1e-9;
const START_SEED: u64 = 0x5eed_1a2c;

#[derive(Debug, Clone)]
pub struct GroundStateResult {
    pub energy: f64,
    pub eigenvector: Option<Statevector>,
    /// ‖Hv − Ev‖.
    pub residual_norm: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    /// Dense for ≤ 10 qubits, Lanczos above.
    Auto,
    Dense,
    Lanczos,
}

/// Restricts the search to basis states with a fixed Hamming weight, i.e.
/// a fixed particle number under Jordan-Wigner.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sector {
    All,
    ParticleNumber(usize),
}

impl Sector {
    fn contains(&self, index: usize) -> bool {
        match *self {
            Sector::All => true,
            Sector::ParticleNumber(n) => index.count_ones() as usize == n,
        }
    }
}

/// Σ_k w_k P_k v without forming a matrix.
pub fn apply_hamiltonian(h: &QubitHamiltonian, v: &[Complex64]) -> Result<Vec<Complex64>> {
    let dim = 1usize << h.n_qubits();
    if v.len() != dim {
        return Err(Error::Shape(format!("vector length {} for {} qubits", v.len(), h.n_qubits())));
    }
    let mut out = vec![ZERO; dim];
    for (w, p) in h.terms() {
        let x = p.x_mask() as usize;
        for (b, &a) in v.iter().enumerate() {
            if a != ZERO {
                out[b ^ x] += *w * p.basis_phase(b) * a;
            }
        }
    }
    Ok(out)
}

fn norm(v: &[Complex64]) -> f64 {
    v.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
}

fn dot(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

fn residual(h: &QubitHamiltonian, v: &[Complex64], e: f64) -> Result<f64> {
    let hv = apply_hamiltonian(h, v)?;
    Ok(hv.iter().zip(v).map(|(a, b)| (a - e * b).norm_sqr()).sum::<f64>().sqrt())
}

pub fn ground_state_energy(h: &QubitHamiltonian) -> Result<GroundStateResult> {
    ground_state(h, Method::Auto, Sector::All)
}

pub fn ground_state(h: &QubitHamiltonian, method: Method, sector: Sector) -> Result<GroundStateResult> {
    let n = h.n_qubits();
    if n > MAX_SIMULATED_QUBITS {
        return Err(Error::TooManyQubits {
            requested: n,
            limit: MAX_SIMULATED_QUBITS,
        });
    }
    let basis: Vec<usize> = (0..1usize << n).filter(|&i| sector.contains(i)).collect();
    if basis.is_empty() {
        return Err(Error::Shape(format!("sector {sector:?} is empty on {n} qubits")));
    }
    let dense = match method {
        Method::Dense => true,
        Method::Lanczos => false,
        Method::Auto => n <= DENSE_LIMIT_QUBITS,
    };
    if dense {
        dense_ground_state(h, &basis)
    } else {
        lanczos_ground_state(h, &basis)
    }
}

fn embed(n_qubits: usize, basis: &[usize], coeffs: impl Iterator<Item = Complex64>) -> Vec<Complex64> {
    let mut v = vec![ZERO; 1 << n_qubits];
    for (&i, c) in basis.iter().zip(coeffs) {
        v[i] = c;
    }
    v
}

fn dense_ground_state(h: &QubitHamiltonian, basis: &[usize]) -> Result<GroundStateResult> {
    let n = h.n_qubits();
    let dim = basis.len();
    let mut position = vec![usize::MAX; 1 << n];
    for (k, &i) in basis.iter().enumerate() {
        position[i] = k;
    }
    let mut m = DMatrix::<Complex64>::zeros(dim, dim);
    for (w, p) in h.terms() {
        let x = p.x_mask() as usize;
        for (col, &b) in basis.iter().enumerate() {
            let row = position[b ^ x];
            if row != usize::MAX {
                m[(row, col)] += *w * p.basis_phase(b);
            }
        }
    }
    let eig = SymmetricEigen::new(m);
    let (k, &energy) = eig
        .eigenvalues
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.total_cmp(b.1))
        .expect("nonempty");
    let v = embed(n, basis, eig.eigenvectors.column(k).iter().copied());
    let residual_norm = residual(h, &v, energy)?;
    Ok(GroundStateResult {
        energy,
        eigenvector: Some(Statevector::from_amplitudes(v)?),
        residual_norm,
    })
}

/// Lanczos with full reorthogonalization from a seeded start vector.
fn lanczos_ground_state(h: &QubitHamiltonian, basis: &[usize]) -> Result<GroundStateResult> {
    let n = h.n_qubits();
    let dim = basis.len();
    let max_steps = dim.min(400);
    let in_sector: Vec<bool> = {
        let mut mask = vec![false; 1 << n];
        for &i in basis {
            mask[i] = true;
        }
        mask
    };

    let mut rng = ChaCha8Rng::seed_from_u64(START_SEED);
    let mut q0 = embed(
        n,
        basis,
        (0..dim).map(|_| Complex64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5)),
    );
    let nq = norm(&q0);
    q0.iter_mut().for_each(|a| *a /= nq);

    let mut krylov: Vec<Vec<Complex64>> = vec![q0];
    let mut alpha: Vec<f64> = Vec::new();
    let mut beta: Vec<f64> = Vec::new();
    let mut best = (f64::INFINITY, f64::INFINITY);

    loop {
        let j = krylov.len() - 1;
        let mut w = apply_hamiltonian(h, &krylov[j])?;
        for (a, &inside) in w.iter_mut().zip(&in_sector) {
            if !inside {
                *a = ZERO;
            }
        }
        alpha.push(dot(&krylov[j], &w).re);
        // two passes of classical Gram-Schmidt against the whole basis
        for _ in 0..2 {
            for q in &krylov {
                let c = dot(q, &w);
                for (a, b) in w.iter_mut().zip(q) {
                    *a -= c * b;
                }
            }
        }
        let b_next = norm(&w);

        let m = alpha.len();
        let mut t = DMatrix::<f64>::zeros(m, m);
        for i in 0..m {
            t[(i, i)] = alpha[i];
            if i + 1 < m {
                t[(i, i + 1)] = beta[i];
                t[(i + 1, i)] = beta[i];
            }
        }
        let eig = SymmetricEigen::new(t);
        let (k, &theta) = eig
            .eigenvalues
            .iter()
            .enumerate()
            .min_by(|a, b| a.1.total_cmp(b.1))
            .expect("nonempty");
        let estimate = (b_next * eig.eigenvectors[(m - 1, k)]).abs();
        if estimate < best.1 {
            best = (theta, estimate);
        }

        let exhausted = b_next < 1e-13 || m == dim;
        if estimate < 0.1 * RESIDUAL_TOLERANCE || exhausted {
            let mut v = vec![ZERO; 1 << n];
            for (i, q) in krylov.iter().enumerate() {
                let c = eig.eigenvectors[(i, k)];
                for (a, b) in v.iter_mut().zip(q) {
                    *a += c * b;
                }
            }
            let nv = norm(&v);
            v.iter_mut().for_each(|a| *a /= nv);
            let hv = apply_hamiltonian(h, &v)?;
            let energy = dot(&v, &hv).re;
            let residual_norm = residual(h, &v, energy)?;
            if residual_norm < RESIDUAL_TOLERANCE || exhausted {
                return Ok(GroundStateResult {
                    energy,
                    eigenvector: Some(Statevector::from_amplitudes(v)?),
                    residual_norm,
                });
            }
        }
        if m >= max_steps {
            return Err(Error::LanczosNotConverged {
                iterations: m,
                best_estimate: best.0,
                residual: best.1,
            });
        }
        beta.push(b_next);
        w.iter_mut().for_each(|a| *a /= b_next);
        krylov.push(w);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pauli::PauliString;

    fn ham(n: usize, terms: &[(f64, &str)]) -> QubitHamiltonian {
        QubitHamiltonian::new(n, terms.iter().map(|&(w, s)| (w, s.parse::<PauliString>().unwrap()))).unwrap()
    }

    #[test]
    fn identity_leaves_vector() {
        let h = ham(2, &[(1.0, "II")]);
        let v: Vec<Complex64> = (0..4).map(|i| Complex64::new(i as f64, -1.0)).collect();
        assert_eq!(apply_hamiltonian(&h, &v).unwrap(), v);
    }

    #[test]
    fn z_on_one() {
        let h = ham(1, &[(1.0, "Z")]);
        let v = vec![ZERO, Complex64::new(1.0, 0.0)];
        assert_eq!(apply_hamiltonian(&h, &v).unwrap(), vec![ZERO, Complex64::new(-1.0, 0.0)]);
        assert!(apply_hamiltonian(&h, &v[..1]).is_err());
    }

    #[test]
    fn single_z_ground_state() {
        let r = ground_state_energy(&ham(1, &[(1.0, "Z")])).unwrap();
        assert!((r.energy + 1.0).abs() < 1e-14);
        assert!(r.residual_norm < 1e-12);
    }

    #[test]
    fn lanczos_on_a_two_qubit_model() {
        // XX + ZZ has spectrum {2, 0, 0, −2}
        let h = ham(2, &[(1.0, "XX"), (1.0, "ZZ")]);
        for method in [Method::Dense, Method::Lanczos] {
            let r = ground_state(&h, method, Sector::All).unwrap();
            assert!((r.energy + 2.0).abs() < 1e-12, "{method:?}: {}", r.energy);
        }
    }

    #[test]
    fn sector_restriction() {
        // number operator on two modes: lowest in N=1 is 1
        let h = ham(2, &[(1.0, "II"), (-0.5, "ZI"), (-0.5, "IZ")]);
        let r = ground_state(&h, Method::Dense, Sector::ParticleNumber(1)).unwrap();
        assert!((r.energy - 1.0).abs() < 1e-14);
        let r = ground_state(&h, Method::Lanczos, Sector::ParticleNumber(2)).unwrap();
        assert!((r.energy - 2.0).abs() < 1e-14);
        assert!(ground_state(&h, Method::Dense, Sector::ParticleNumber(3)).is_err());
    }
}
