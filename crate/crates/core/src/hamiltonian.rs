use std::collections::BTreeMap;
use std::fmt::Write;

use crate::error::{Error, Result};
use crate::fermion::PRUNE_THRESHOLD;
use crate::pauli::PauliString;

/// Real-weighted sum of distinct Pauli strings.
#[derive(Debug, Clone, PartialEq)]
pub struct QubitHamiltonian {
    n_qubits: usize,
    terms: Vec<(f64, PauliString)>,
}

impl QubitHamiltonian {
    /// Combines duplicate strings and drops coefficients below the prune
    /// threshold. Terms are kept sorted by string.
    pub fn new(n_qubits: usize, terms: impl IntoIterator<Item = (f64, PauliString)>) -> Result<Self> {
        let mut acc: BTreeMap<PauliString, f64> = BTreeMap::new();
        for (w, p) in terms {
            if p.n_qubits() != n_qubits {
                return Err(Error::Shape(format!(
                    "term {p} has {} qubits, expected {n_qubits}",
                    p.n_qubits()
                )));
            }
            if !w.is_finite() {
                return Err(Error::Shape(format!("non-finite coefficient on {p}")));
            }
            *acc.entry(p).or_insert(0.0) += w;
        }
        Ok(Self {
            n_qubits,
            terms: acc
                .into_iter()
                .filter(|(_, w)| w.abs() >= PRUNE_THRESHOLD)
                .map(|(p, w)| (w, p))
                .collect(),
        })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn terms(&self) -> &[(f64, PauliString)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn identity_coefficient(&self) -> f64 {
        self.terms
            .iter()
            .find(|(_, p)| p.is_identity())
            .map_or(0.0, |(w, _)| *w)
    }

    pub fn coefficient(&self, p: &PauliString) -> f64 {
        self.terms.iter().find(|(_, q)| q == p).map_or(0.0, |(w, _)| *w)
    }

    /// One term per line: `<coefficient> <letters>`, qubit 0 leftmost.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (w, p) in &self.terms {
            writeln!(out, "{w:e} {p}").unwrap();
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut terms = Vec::new();
        let mut n_qubits = None;
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |message: String| Error::HamiltonianParse { line: i + 1, message };
            let mut it = line.split_whitespace();
            let (Some(w), Some(letters), None) = (it.next(), it.next(), it.next()) else {
                return Err(err("expected '<coefficient> <letters>'".into()));
            };
            let w: f64 = w.parse().map_err(|_| err(format!("bad coefficient '{w}'")))?;
            let p: PauliString = letters.parse().map_err(|e: Error| err(e.to_string()))?;
            match n_qubits {
                None => n_qubits = Some(p.n_qubits()),
                Some(n) if n != p.n_qubits() => {
                    return Err(err(format!("string has {} letters, expected {n}", p.n_qubits())))
                }
                _ => {}
            }
            terms.push((w, p));
        }
        Self::new(n_qubits.unwrap_or(0), terms)
    }
}
