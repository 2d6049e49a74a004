//! Unit conversions. Energies are Hartree and lengths Bohr internally.

pub const HARTREE_TO_KCAL_PER_MOL: f64 = 627.509474;
pub const ANGSTROM_TO_BOHR: f64 = 1.8897259886;

pub fn angstrom_to_bohr(x: f64) -> f64 {
    x * ANGSTROM_TO_BOHR
}

pub fn bohr_to_angstrom(x: f64) -> f64 {
    x / ANGSTROM_TO_BOHR
}

pub fn hartree_to_kcal(e: f64) -> f64 {
    e * HARTREE_TO_KCAL_PER_MOL
}

pub fn hartree_to_mha(e: f64) -> f64 {
    e * 1000.0
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LengthUnit {
    Bohr,
    Angstrom,
}

impl LengthUnit {
    pub fn to_bohr(self, x: f64) -> f64 {
        match self {
            LengthUnit::Bohr => x,
            LengthUnit::Angstrom => angstrom_to_bohr(x),
        }
    }

    pub fn from_bohr(self, x: f64) -> f64 {
        match self {
            LengthUnit::Bohr => x,
            LengthUnit::Angstrom => bohr_to_angstrom(x),
        }
    }
}
