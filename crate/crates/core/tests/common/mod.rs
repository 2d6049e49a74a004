//! Test-only oracles built from explicit matrices and determinant algebra,
//! independent of the Pauli bitmask and Jordan-Wigner code paths.
#![allow(dead_code)]

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use vqechem::chem::{molecular_integrals, MolecularIntegrals, Molecule};
use vqechem::fermion::FermionOperator;
use vqechem::units::ANGSTROM_TO_BOHR;
use vqechem::{PauliString, QubitHamiltonian};

pub type CMat = DMatrix<Complex64>;

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn fixture(name: &str) -> std::path::PathBuf {
    std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name)
}

/// 2×2 matrix of a letter in the {|0⟩, |1⟩} basis.
pub fn letter_matrix(l: char) -> [[Complex64; 2]; 2] {
    let (o, z) = (c(1.0, 0.0), c(0.0, 0.0));
    match l {
        'I' => [[o, z], [z, o]],
        'X' => [[z, o], [o, z]],
        'Y' => [[z, c(0.0, -1.0)], [c(0.0, 1.0), z]],
        'Z' => [[o, z], [z, -o]],
        // annihilation σ⁻ = |0⟩⟨1|
        '-' => [[z, o], [z, z]],
        // creation σ⁺ = |1⟩⟨0|
        '+' => [[z, z], [o, z]],
        _ => panic!("unknown letter {l}"),
    }
}

/// Tensor product where `letters[q]` acts on bit q of the basis index.
pub fn product_matrix(letters: &[char]) -> CMat {
    let n = letters.len();
    let dim = 1 << n;
    let mats: Vec<_> = letters.iter().map(|&l| letter_matrix(l)).collect();
    CMat::from_fn(dim, dim, |row, col| {
        let mut v = c(1.0, 0.0);
        for (q, m) in mats.iter().enumerate() {
            v *= m[row >> q & 1][col >> q & 1];
            if v == c(0.0, 0.0) {
                break;
            }
        }
        v
    })
}

pub fn pauli_matrix(p: &PauliString) -> CMat {
    let letters: Vec<char> = p.to_string().chars().collect();
    if p.n_qubits() == 0 {
        return CMat::identity(1, 1);
    }
    product_matrix(&letters)
}

pub fn hamiltonian_matrix(h: &QubitHamiltonian) -> CMat {
    let dim = 1 << h.n_qubits();
    let mut m = CMat::zeros(dim, dim);
    for (w, p) in h.terms() {
        m += pauli_matrix(p) * c(*w, 0.0);
    }
    m
}

/// Jordan-Wigner ladder matrix from explicit Z-string ⊗ σ± products.
pub fn ladder_matrix(n_modes: usize, mode: usize, creation: bool) -> CMat {
    let letters: Vec<char> = (0..n_modes)
        .map(|q| {
            if q < mode {
                'Z'
            } else if q == mode {
                if creation { '+' } else { '-' }
            } else {
                'I'
            }
        })
        .collect();
    product_matrix(&letters)
}

pub fn fermion_matrix(op: &FermionOperator) -> CMat {
    let n = op.n_modes();
    let dim = 1 << n;
    let ladders: Vec<[CMat; 2]> = (0..n)
        .map(|m| [ladder_matrix(n, m, false), ladder_matrix(n, m, true)])
        .collect();
    let mut total = CMat::zeros(dim, dim);
    for (ops, coeff) in op.terms() {
        let mut m = CMat::identity(dim, dim);
        for &(mode, creation) in ops {
            m = m * &ladders[mode][creation as usize];
        }
        total += m * c(coeff, 0.0);
    }
    total
}

pub fn lowest_eigenvalue(m: &CMat) -> f64 {
    SymmetricEigen::new(m.clone()).eigenvalues.iter().copied().fold(f64::INFINITY, f64::min)
}

pub fn lowest_eigenvalue_real(m: &DMatrix<f64>) -> f64 {
    SymmetricEigen::new(m.clone()).eigenvalues.iter().copied().fold(f64::INFINITY, f64::min)
}

pub fn max_abs(m: &CMat) -> f64 {
    m.iter().map(|v| v.norm()).fold(0.0, f64::max)
}

/// Applies a†_p (creation) or a_p to an occupation bitstring with the
/// fermionic sign (−1)^(number of occupied modes below p).
fn apply_ladder(det: u64, mode: usize, creation: bool) -> Option<(u64, f64)> {
    let bit = 1u64 << mode;
    let occupied = det & bit != 0;
    if occupied == creation {
        return None;
    }
    let sign = if (det & (bit - 1)).count_ones() % 2 == 0 { 1.0 } else { -1.0 };
    Some((det ^ bit, sign))
}

fn apply_string(det: u64, ops: &[(usize, bool)]) -> Option<(u64, f64)> {
    // rightmost operator acts first
    let mut d = det;
    let mut s = 1.0;
    for &(m, cr) in ops.iter().rev() {
        let (nd, ns) = apply_ladder(d, m, cr)?;
        d = nd;
        s *= ns;
    }
    Some((d, s))
}

/// Configuration-interaction matrix of the electronic Hamiltonian in the
/// determinant basis with a fixed electron count, built by applying
/// ladder strings to occupation bitstrings. Spin orbital 2i / 2i+1 is
/// spatial orbital i with spin α / β.
pub fn determinant_ci_matrix(ints: &MolecularIntegrals, n_electrons: usize, keep: impl Fn(u64) -> bool) -> DMatrix<f64> {
    let n = ints.n_spatial;
    let modes = 2 * n;
    let dets: Vec<u64> = (0..1u64 << modes)
        .filter(|d| d.count_ones() as usize == n_electrons && keep(*d))
        .collect();
    let lookup: std::collections::HashMap<u64, usize> = dets.iter().enumerate().map(|(i, &d)| (d, i)).collect();
    let index = |d: u64| lookup.get(&d).copied();
    let mut h = DMatrix::<f64>::zeros(dets.len(), dets.len());
    for (col, &det) in dets.iter().enumerate() {
        h[(col, col)] += ints.constant_energy;
        for p in 0..n {
            for q in 0..n {
                for s in 0..2 {
                    let ops = [(2 * p + s, true), (2 * q + s, false)];
                    if let Some((d, sign)) = apply_string(det, &ops) {
                        if let Some(row) = index(d) {
                            h[(row, col)] += sign * ints.h[(p, q)];
                        }
                    }
                }
            }
        }
        for p in 0..n {
            for q in 0..n {
                for r in 0..n {
                    for t in 0..n {
                        let v = 0.5 * ints.g(p, q, r, t);
                        if v == 0.0 {
                            continue;
                        }
                        for s1 in 0..2 {
                            for s2 in 0..2 {
                                let ops = [(2 * p + s1, true), (2 * r + s2, true), (2 * t + s2, false), (2 * q + s1, false)];
                                if let Some((d, sign)) = apply_string(det, &ops) {
                                    if let Some(row) = index(d) {
                                        h[(row, col)] += sign * v;
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    h
}

pub fn fci_energy(ints: &MolecularIntegrals) -> f64 {
    lowest_eigenvalue_real(&determinant_ci_matrix(ints, ints.n_electrons, |_| true))
}

pub fn h2_integrals_bohr(r: f64) -> MolecularIntegrals {
    molecular_integrals(&Molecule::hydrogen_chain(&[r], 0).unwrap()).unwrap().0
}

pub fn h2_integrals_angstrom(r: f64) -> MolecularIntegrals {
    h2_integrals_bohr(r * ANGSTROM_TO_BOHR)
}

/// Random real integrals with the full permutation symmetry.
pub fn random_integrals(n: usize, n_electrons: usize, seed: u64) -> MolecularIntegrals {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut ints = MolecularIntegrals::zeros(n, n_electrons);
    ints.constant_energy = rng.gen_range(-1.0..1.0);
    for p in 0..n {
        for q in 0..=p {
            let v = if p == q { rng.gen_range(-2.0..-0.5) + p as f64 * 0.6 } else { rng.gen_range(-0.3..0.3) };
            ints.h[(p, q)] = v;
            ints.h[(q, p)] = v;
        }
    }
    for p in 0..n {
        for q in 0..=p {
            for r in 0..n {
                for s in 0..=r {
                    if p * (p + 1) / 2 + q < r * (r + 1) / 2 + s {
                        continue;
                    }
                    let v = if p == q && r == s { rng.gen_range(0.2..0.8) } else { rng.gen_range(-0.1..0.1) };
                    ints.set_g_symmetric(p, q, r, s, v);
                }
            }
        }
    }
    ints
}

pub fn random_hamiltonian(n_qubits: usize, n_terms: usize, rng: &mut ChaCha8Rng) -> QubitHamiltonian {
    let mask = (1u64 << n_qubits) - 1;
    let terms: Vec<(f64, PauliString)> = (0..n_terms)
        .map(|_| {
            let p = PauliString::from_masks(n_qubits, rng.gen::<u64>() & mask, rng.gen::<u64>() & mask).unwrap();
            (rng.gen_range(-1.0..1.0), p)
        })
        .collect();
    QubitHamiltonian::new(n_qubits, terms).unwrap()
}

pub fn random_state(n_qubits: usize, rng: &mut ChaCha8Rng) -> Vec<Complex64> {
    let mut v: Vec<Complex64> = (0..1 << n_qubits).map(|_| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect();
    let norm = v.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    v.iter_mut().for_each(|a| *a /= norm);
    v
}
