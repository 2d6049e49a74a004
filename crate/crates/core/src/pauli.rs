//! Pauli strings as a pair of bitmasks.
//!
//! Qubit `j` is bit `j` of both masks. A qubit with only the x bit set
//! carries X, only the z bit Z, both bits Y.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::error::{Error, Result};

pub const MAX_QUBITS: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    I,
    X,
    Y,
    Z,
}

impl Letter {
    pub fn from_bits(x: bool, z: bool) -> Self {
        match (x, z) {
            (false, false) => Letter::I,
            (true, false) => Letter::X,
            (true, true) => Letter::Y,
            (false, true) => Letter::Z,
        }
    }

    pub fn bits(self) -> (bool, bool) {
        match self {
            Letter::I => (false, false),
            Letter::X => (true, false),
            Letter::Y => (true, true),
            Letter::Z => (false, true),
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Letter::I => 'I',
            Letter::X => 'X',
            Letter::Y => 'Y',
            Letter::Z => 'Z',
        }
    }

    pub fn from_char(c: char) -> Option<Self> {
        match c {
            'I' | 'i' => Some(Letter::I),
            'X' | 'x' => Some(Letter::X),
            'Y' | 'y' => Some(Letter::Y),
            'Z' | 'z' => Some(Letter::Z),
            _ => None,
        }
    }
}

/// One of {+1, +i, −1, −i}, stored as the power of i.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Phase(u8);

impl Phase {
    pub const ONE: Phase = Phase(0);
    pub const I: Phase = Phase(1);
    pub const MINUS_ONE: Phase = Phase(2);
    pub const MINUS_I: Phase = Phase(3);

    pub fn from_power(k: u32) -> Self {
        Phase((k % 4) as u8)
    }

    pub fn power(self) -> u8 {
        self.0
    }

    pub fn to_complex(self) -> Complex64 {
        match self.0 {
            0 => Complex64::new(1.0, 0.0),
            1 => Complex64::new(0.0, 1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, -1.0),
        }
    }
}

impl std::ops::Mul for Phase {
    type Output = Phase;
    fn mul(self, rhs: Phase) -> Phase {
        Phase((self.0 + rhs.0) % 4)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PauliString {
    n_qubits: usize,
    x: u64,
    z: u64,
}

fn mask_for(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

impl PauliString {
    pub fn identity(n_qubits: usize) -> Self {
        assert!(n_qubits <= MAX_QUBITS, "at most {MAX_QUBITS} qubits");
        Self { n_qubits, x: 0, z: 0 }
    }

    pub fn from_masks(n_qubits: usize, x: u64, z: u64) -> Result<Self> {
        if n_qubits > MAX_QUBITS {
            return Err(Error::TooManyQubits { requested: n_qubits, limit: MAX_QUBITS });
        }
        let m = mask_for(n_qubits);
        if x & !m != 0 || z & !m != 0 {
            return Err(Error::Shape(format!("mask exceeds {n_qubits} qubits")));
        }
        Ok(Self { n_qubits, x, z })
    }

    /// Single non-identity letter at `qubit`.
    pub fn single(n_qubits: usize, qubit: usize, letter: Letter) -> Self {
        let mut p = Self::identity(n_qubits);
        p.set(qubit, letter);
        p
    }

    pub fn from_letters(letters: &[Letter]) -> Self {
        let mut p = Self::identity(letters.len());
        for (q, &l) in letters.iter().enumerate() {
            p.set(q, l);
        }
        p
    }

    /// Sparse constructor, e.g. `[(0, X), (3, Z)]`.
    pub fn from_sparse(n_qubits: usize, letters: &[(usize, Letter)]) -> Self {
        let mut p = Self::identity(n_qubits);
        for &(q, l) in letters {
            p.set(q, l);
        }
        p
    }

    pub fn set(&mut self, qubit: usize, letter: Letter) {
        assert!(qubit < self.n_qubits, "qubit {qubit} out of range");
        let bit = 1u64 << qubit;
        let (x, z) = letter.bits();
        self.x = if x { self.x | bit } else { self.x & !bit };
        self.z = if z { self.z | bit } else { self.z & !bit };
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn x_mask(&self) -> u64 {
        self.x
    }

    pub fn z_mask(&self) -> u64 {
        self.z
    }

    pub fn support(&self) -> u64 {
        self.x | self.z
    }

    pub fn weight(&self) -> u32 {
        self.support().count_ones()
    }

    pub fn is_identity(&self) -> bool {
        self.x == 0 && self.z == 0
    }

    /// Number of Y letters.
    pub fn y_count(&self) -> u32 {
        (self.x & self.z).count_ones()
    }

    pub fn letter(&self, qubit: usize) -> Letter {
        Letter::from_bits(self.x >> qubit & 1 == 1, self.z >> qubit & 1 == 1)
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> + '_ {
        (0..self.n_qubits).map(|q| self.letter(q))
    }

    fn check_size(&self, other: &Self) -> Result<()> {
        if self.n_qubits != other.n_qubits {
            return Err(Error::Shape(format!(
                "Pauli strings on {} and {} qubits",
                self.n_qubits, other.n_qubits
            )));
        }
        Ok(())
    }

    /// `self · other = phase · product`.
    pub fn multiply(&self, other: &Self) -> Result<(Phase, PauliString)> {
        self.check_size(other)?;
        Ok(self.mul_unchecked(other))
    }

    pub(crate) fn mul_unchecked(&self, other: &Self) -> (Phase, PauliString) {
        let product = PauliString {
            n_qubits: self.n_qubits,
            x: self.x ^ other.x,
            z: self.z ^ other.z,
        };
        // X→0, Y→1, Z→2; XY = iZ and cyclic, reversed order gives −i
        let mut power = 0u32;
        let mut both = self.support() & other.support();
        while both != 0 {
            let q = both.trailing_zeros() as usize;
            both &= both - 1;
            let a = self.letter(q);
            let b = other.letter(q);
            if a != b {
                let ord = |l: Letter| match l {
                    Letter::X => 0,
                    Letter::Y => 1,
                    _ => 2,
                };
                power += if (ord(b) + 3 - ord(a)) % 3 == 1 { 1 } else { 3 };
            }
        }
        (Phase::from_power(power), product)
    }

    /// Number of qubits where both strings act with different non-identity letters.
    fn anticommuting_sites(&self, other: &Self) -> u32 {
        let both = self.support() & other.support();
        let differ = (self.x ^ other.x) | (self.z ^ other.z);
        (both & differ).count_ones()
    }

    pub fn commutes(&self, other: &Self) -> Result<bool> {
        self.check_size(other)?;
        Ok(self.anticommuting_sites(other) % 2 == 0)
    }

    /// True when at every qubit the letters agree or one of them is I.
    pub fn commutes_qubitwise(&self, other: &Self) -> Result<bool> {
        self.check_size(other)?;
        Ok(self.anticommuting_sites(other) == 0)
    }

    /// `P|b⟩ = phase(b) |b ⊕ x⟩`; returns the phase for basis index `b`.
    #[inline]
    pub fn basis_phase(&self, b: usize) -> Complex64 {
        let sign = ((b as u64 & self.z).count_ones() & 1) * 2;
        Phase::from_power(self.y_count() + sign).to_complex()
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.n_qubits == 0 {
            return f.write_str("I");
        }
        for l in self.letters() {
            write!(f, "{}", l.as_char())?;
        }
        Ok(())
    }
}

impl FromStr for PauliString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let letters = s
            .chars()
            .map(|c| Letter::from_char(c).ok_or_else(|| Error::Shape(format!("invalid Pauli letter '{c}'"))))
            .collect::<Result<Vec<_>>>()?;
        if letters.len() > MAX_QUBITS {
            return Err(Error::TooManyQubits { requested: letters.len(), limit: MAX_QUBITS });
        }
        Ok(PauliString::from_letters(&letters))
    }
}
