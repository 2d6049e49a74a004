//! Variational quantum eigensolver toolkit for small molecules.
//!
//! The pipeline runs in four stages:
//!
//! 1. molecular integrals, either generated for hydrogen clusters in the
//!    STO-3G basis ([`chem`]) or read from FCIDUMP files,
//! 2. the second-quantized Hamiltonian over spin orbitals and its
//!    Jordan-Wigner image as a weighted sum of Pauli strings ([`fermion`],
//!    [`jordan_wigner`], [`pauli`]),
//! 3. parameterized trial states on an exact statevector simulator
//!    ([`ansatz`], [`simulator`]) measured exactly or by sampling grouped
//!    Pauli terms ([`measurement`]),
//! 4. classical minimization of the energy ([`optim`], [`vqe`]), checked
//!    against exact diagonalization ([`exactdiag`]).

pub mod ansatz;
pub mod chem;
pub mod error;
pub mod exactdiag;
pub mod fermion;
pub mod hamiltonian;
pub mod jordan_wigner;
pub mod measurement;
pub mod optim;
pub mod pauli;
pub mod simulator;
pub mod units;
pub mod vqe;

pub use error::{Error, Result};
pub use hamiltonian::QubitHamiltonian;
pub use pauli::{PauliString, Phase};
pub use simulator::{Circuit, Gate, Statevector};
