//! Molecular integrals: STO-3G hydrogen integrals, restricted Hartree-Fock,
//! FCIDUMP exchange and frozen-core reduction.

mod active;
mod ao;
mod basis;
mod fcidump;
mod molecule;
mod mo;
mod pipeline;
mod rhf;

pub use active::{freeze_core, ActiveSpaceSpec};
pub use ao::{boys_f0, compute_ao_integrals, AoIntegrals};
pub use basis::{sto3g_hydrogen, ContractedShell};
pub use fcidump::{parse_fcidump, read_fcidump, write_fcidump};
pub use mo::{transform_to_mo, MolecularIntegrals};
pub use pipeline::molecular_integrals;
pub use molecule::{Atom, GeometryInput, Molecule};
pub use rhf::{run_rhf, run_rhf_with, RhfOptions, RhfResult};
