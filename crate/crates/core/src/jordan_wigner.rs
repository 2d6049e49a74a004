//! Jordan-Wigner mapping of fermionic operators onto Pauli strings.
//!
//! a†_j ↦ ½(X_j − iY_j) Z_0 … Z_{j−1} and a_j ↦ ½(X_j + iY_j) Z_0 … Z_{j−1}.

use std::collections::BTreeMap;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fermion::{FermionOperator, Ladder};
use crate::hamiltonian::QubitHamiltonian;
use crate::pauli::{Letter, PauliString};

/// Imaginary parts below this are treated as rounding noise.
pub const IMAGINARY_TOLERANCE: f64 = 1e-10;

/// Pauli expansion of one ladder operator.
pub fn ladder_to_pauli(n_qubits: usize, (mode, creation): Ladder) -> [(Complex64, PauliString); 2] {
    let mut x = PauliString::identity(n_qubits);
    for q in 0..mode {
        x.set(q, Letter::Z);
    }
    let mut y = x;
    x.set(mode, Letter::X);
    y.set(mode, Letter::Y);
    let half_i = if creation { -0.5 } else { 0.5 };
    [(Complex64::new(0.5, 0.0), x), (Complex64::new(0.0, half_i), y)]
}

/// Complex-coefficient Pauli expansion of an arbitrary fermionic operator.
pub fn jordan_wigner_complex(op: &FermionOperator) -> BTreeMap<PauliString, Complex64> {
    let n = op.n_modes();
    let mut acc: BTreeMap<PauliString, Complex64> = BTreeMap::new();
    for (ops, coeff) in op.terms() {
        let mut partial = vec![(Complex64::new(coeff, 0.0), PauliString::identity(n))];
        for &ladder in ops {
            let factors = ladder_to_pauli(n, ladder);
            let mut next = Vec::with_capacity(partial.len() * 2);
            for (c, p) in &partial {
                for (fc, fp) in &factors {
                    let (phase, prod) = p.mul_unchecked(fp);
                    next.push((c * fc * phase.to_complex(), prod));
                }
            }
            partial = next;
        }
        for (c, p) in partial {
            *acc.entry(p).or_insert(Complex64::new(0.0, 0.0)) += c;
        }
    }
    acc
}

/// Maps a Hermitian fermionic operator to a real-weighted qubit Hamiltonian.
pub fn jordan_wigner(op: &FermionOperator) -> Result<QubitHamiltonian> {
    let acc = jordan_wigner_complex(op);
    let mut terms = Vec::with_capacity(acc.len());
    for (p, c) in acc {
        if c.im.abs() > IMAGINARY_TOLERANCE {
            return Err(Error::NonHermitian(c.im.abs()));
        }
        terms.push((c.re, p));
    }
    QubitHamiltonian::new(op.n_modes(), terms)
}
