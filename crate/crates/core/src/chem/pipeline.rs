use super::ao::compute_ao_integrals;
use super::mo::{transform_to_mo, MolecularIntegrals};
use super::molecule::Molecule;
use super::rhf::{run_rhf, RhfResult};
use crate::error::Result;

/// STO-3G → RHF → MO integrals for a hydrogen cluster.
///
/// Odd electron counts take their orbitals from the closed-shell cation
/// (one electron fewer); the returned integrals still carry the molecule's
/// own electron count.
pub fn molecular_integrals(molecule: &Molecule) -> Result<(MolecularIntegrals, RhfResult)> {
    let ao = compute_ao_integrals(molecule)?;
    let scf_electrons = molecule.n_electrons - molecule.n_electrons % 2;
    let rhf = run_rhf(&ao, scf_electrons)?;
    let mut mo = transform_to_mo(&ao, &rhf)?;
    mo.n_electrons = molecule.n_electrons;
    Ok((mo, rhf))
}
