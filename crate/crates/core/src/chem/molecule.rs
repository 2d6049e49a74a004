use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::units::ANGSTROM_TO_BOHR;

#[derive(Debug, Clone, PartialEq)]
pub struct Atom {
    pub symbol: String,
    pub charge: u32,
    /// Position in Bohr.
    pub position: [f64; 3],
}

#[derive(Debug, Clone, PartialEq)]
pub struct Molecule {
    pub atoms: Vec<Atom>,
    pub n_electrons: usize,
}

fn nuclear_charge(symbol: &str) -> Option<u32> {
    const ELEMENTS: [&str; 18] = [
        "H", "He", "Li", "Be", "B", "C", "N", "O", "F", "Ne", "Na", "Mg", "Al", "Si", "P", "S",
        "Cl", "Ar",
    ];
    ELEMENTS
        .iter()
        .position(|e| e.eq_ignore_ascii_case(symbol))
        .map(|i| i as u32 + 1)
}

impl Molecule {
    pub fn new(atoms: Vec<Atom>, n_electrons: usize) -> Result<Self> {
        for (i, a) in atoms.iter().enumerate() {
            if a.charge == 0 {
                return Err(Error::InvalidMolecule(format!("atom {i} has Z = 0")));
            }
            if a.position.iter().any(|x| !x.is_finite()) {
                return Err(Error::InvalidMolecule(format!("atom {i} has a non-finite position")));
            }
        }
        Ok(Self { atoms, n_electrons })
    }

    /// Neutral hydrogen chain along z with the given bond lengths (Bohr).
    pub fn hydrogen_chain(bonds_bohr: &[f64], charge: i32) -> Result<Self> {
        let mut z = 0.0;
        let mut atoms = vec![Atom::hydrogen([0.0, 0.0, 0.0])];
        for &b in bonds_bohr {
            z += b;
            atoms.push(Atom::hydrogen([0.0, 0.0, z]));
        }
        let n = atoms.len() as i32 - charge;
        if n < 0 {
            return Err(Error::InvalidMolecule(format!("charge {charge} leaves a negative electron count")));
        }
        Self::new(atoms, n as usize)
    }

    pub fn nuclear_charge_total(&self) -> u32 {
        self.atoms.iter().map(|a| a.charge).sum()
    }

    /// Σ_{A<B} Z_A Z_B / |R_A − R_B|; coincident nuclei are an error.
    pub fn nuclear_repulsion(&self) -> Result<f64> {
        let mut e = 0.0;
        for (i, a) in self.atoms.iter().enumerate() {
            for (j, b) in self.atoms.iter().enumerate().skip(i + 1) {
                let r = distance(&a.position, &b.position);
                if r < 1e-8 {
                    return Err(Error::SingularGeometry(i, j));
                }
                e += (a.charge * b.charge) as f64 / r;
            }
        }
        Ok(e)
    }
}

impl Atom {
    pub fn hydrogen(position: [f64; 3]) -> Self {
        Self {
            symbol: "H".into(),
            charge: 1,
            position,
        }
    }
}

pub(crate) fn distance(a: &[f64; 3], b: &[f64; 3]) -> f64 {
    ((a[0] - b[0]).powi(2) + (a[1] - b[1]).powi(2) + (a[2] - b[2]).powi(2)).sqrt()
}

/// JSON geometry document.
///
/// ```json
/// { "atoms": [ {"symbol": "H", "xyz_bohr": [0, 0, 0]},
///              {"symbol": "H", "xyz_angstrom": [0, 0, 0.74]} ],
///   "charge": 0 }
/// ```
///
/// Every atom declares its coordinates with exactly one of `xyz_bohr` or
/// `xyz_angstrom`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeometryInput {
    pub atoms: Vec<AtomInput>,
    #[serde(default)]
    pub charge: i32,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AtomInput {
    pub symbol: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub xyz_bohr: Option<[f64; 3]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub xyz_angstrom: Option<[f64; 3]>,
}

impl GeometryInput {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Geometry(e.to_string()))
    }

    pub fn to_molecule(&self) -> Result<Molecule> {
        let mut atoms = Vec::with_capacity(self.atoms.len());
        for (i, a) in self.atoms.iter().enumerate() {
            let charge = nuclear_charge(&a.symbol)
                .ok_or_else(|| Error::Geometry(format!("atom {i}: unknown element '{}'", a.symbol)))?;
            let position = match (a.xyz_bohr, a.xyz_angstrom) {
                (Some(p), None) => p,
                (None, Some(p)) => p.map(|x| x * ANGSTROM_TO_BOHR),
                _ => {
                    return Err(Error::Geometry(format!(
                        "atom {i}: give exactly one of xyz_bohr or xyz_angstrom"
                    )))
                }
            };
            atoms.push(Atom {
                symbol: a.symbol.clone(),
                charge,
                position,
            });
        }
        let total: i32 = atoms.iter().map(|a| a.charge as i32).sum();
        let n = total - self.charge;
        if n < 0 {
            return Err(Error::Geometry(format!("charge {} exceeds nuclear charge", self.charge)));
        }
        Molecule::new(atoms, n as usize)
    }
}
