//! Exact statevector simulation.
//!
//! Basis index bit `j` is the state of qubit `j` (little-endian), the same
//! convention the Pauli strings use.

use std::collections::BTreeMap;
use std::fmt::{self, Write};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::hamiltonian::QubitHamiltonian;
use crate::pauli::PauliString;

pub const MAX_SIMULATED_QUBITS: usize = 24;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

#[derive(Debug, Clone, PartialEq)]
pub struct Statevector {
    n_qubits: usize,
    amplitudes: Vec<Complex64>,
}

impl Statevector {
    /// |0…0⟩.
    pub fn zero(n_qubits: usize) -> Result<Self> {
        Self::basis(n_qubits, 0)
    }

    pub fn basis(n_qubits: usize, index: usize) -> Result<Self> {
        if n_qubits > MAX_SIMULATED_QUBITS {
            return Err(Error::TooManyQubits {
                requested: n_qubits,
                limit: MAX_SIMULATED_QUBITS,
            });
        }
        let dim = 1usize << n_qubits;
        if index >= dim {
            return Err(Error::Shape(format!("basis index {index} outside dimension {dim}")));
        }
        let mut amplitudes = vec![ZERO; dim];
        amplitudes[index] = ONE;
        Ok(Self { n_qubits, amplitudes })
    }

    /// Wraps raw amplitudes; the length must be a power of two. Not normalized.
    pub fn from_amplitudes(amplitudes: Vec<Complex64>) -> Result<Self> {
        let dim = amplitudes.len();
        if !dim.is_power_of_two() {
            return Err(Error::Shape(format!("{dim} amplitudes is not a power of two")));
        }
        let n_qubits = dim.trailing_zeros() as usize;
        if n_qubits > MAX_SIMULATED_QUBITS {
            return Err(Error::TooManyQubits {
                requested: n_qubits,
                limit: MAX_SIMULATED_QUBITS,
            });
        }
        Ok(Self { n_qubits, amplitudes })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn into_amplitudes(self) -> Vec<Complex64> {
        self.amplitudes
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn inner(&self, other: &Statevector) -> Complex64 {
        self.amplitudes.iter().zip(&other.amplitudes).map(|(a, b)| a.conj() * b).sum()
    }

    /// Applies a 2×2 unitary `[[a, b], [c, d]]` to qubit `q`.
    fn apply_1q(&mut self, q: usize, m: [[Complex64; 2]; 2]) {
        let bit = 1usize << q;
        for i in 0..self.amplitudes.len() {
            if i & bit == 0 {
                let a0 = self.amplitudes[i];
                let a1 = self.amplitudes[i | bit];
                self.amplitudes[i] = m[0][0] * a0 + m[0][1] * a1;
                self.amplitudes[i | bit] = m[1][0] * a0 + m[1][1] * a1;
            }
        }
    }

    pub fn apply_x(&mut self, q: usize) {
        let bit = 1usize << q;
        for i in 0..self.amplitudes.len() {
            if i & bit == 0 {
                self.amplitudes.swap(i, i | bit);
            }
        }
    }

    pub fn apply_ry(&mut self, q: usize, theta: f64) {
        let (s, c) = (0.5 * theta).sin_cos();
        let (s, c) = (Complex64::new(s, 0.0), Complex64::new(c, 0.0));
        self.apply_1q(q, [[c, -s], [s, c]]);
    }

    pub fn apply_rz(&mut self, q: usize, theta: f64) {
        let m = Complex64::from_polar(1.0, -0.5 * theta);
        let p = Complex64::from_polar(1.0, 0.5 * theta);
        self.apply_1q(q, [[m, ZERO], [ZERO, p]]);
    }

    pub fn apply_h(&mut self, q: usize) {
        let r = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        self.apply_1q(q, [[r, r], [r, -r]]);
    }

    /// S† = diag(1, −i).
    pub fn apply_sdg(&mut self, q: usize) {
        self.apply_1q(q, [[ONE, ZERO], [ZERO, Complex64::new(0.0, -1.0)]]);
    }

    pub fn apply_cnot(&mut self, control: usize, target: usize) {
        let (cb, tb) = (1usize << control, 1usize << target);
        for i in 0..self.amplitudes.len() {
            if i & cb != 0 && i & tb == 0 {
                self.amplitudes.swap(i, i | tb);
            }
        }
    }

    pub fn apply_cz(&mut self, a: usize, b: usize) {
        let m = (1usize << a) | (1usize << b);
        for (i, amp) in self.amplitudes.iter_mut().enumerate() {
            if i & m == m {
                *amp = -*amp;
            }
        }
    }

    /// exp(−iθ/2 · P) = cos(θ/2) − i sin(θ/2) P, updated pairwise in place.
    pub fn apply_pauli_rotation(&mut self, p: &PauliString, theta: f64) {
        let (s, c) = (0.5 * theta).sin_cos();
        let minus_is = Complex64::new(0.0, -s);
        let x = p.x_mask() as usize;
        if x == 0 {
            for (b, amp) in self.amplitudes.iter_mut().enumerate() {
                *amp *= c + minus_is * p.basis_phase(b);
            }
            return;
        }
        for b in 0..self.amplitudes.len() {
            let partner = b ^ x;
            if b < partner {
                let a = self.amplitudes[b];
                let d = self.amplitudes[partner];
                // (Pψ)[partner] = phase(b) ψ[b], (Pψ)[b] = phase(partner) ψ[partner]
                self.amplitudes[b] = c * a + minus_is * p.basis_phase(partner) * d;
                self.amplitudes[partner] = c * d + minus_is * p.basis_phase(b) * a;
            }
        }
    }

    /// P|ψ⟩ into a new buffer.
    pub fn apply_pauli(&self, p: &PauliString) -> Vec<Complex64> {
        let x = p.x_mask() as usize;
        let mut out = vec![ZERO; self.amplitudes.len()];
        for (b, &a) in self.amplitudes.iter().enumerate() {
            out[b ^ x] = p.basis_phase(b) * a;
        }
        out
    }

    /// ⟨ψ|P|ψ⟩ without forming P|ψ⟩.
    pub fn pauli_expectation(&self, p: &PauliString) -> Complex64 {
        let x = p.x_mask() as usize;
        self.amplitudes
            .iter()
            .enumerate()
            .map(|(b, &a)| self.amplitudes[b ^ x].conj() * p.basis_phase(b) * a)
            .sum()
    }

    pub fn probabilities(&self) -> Vec<f64> {
        self.amplitudes.iter().map(|a| a.norm_sqr()).collect()
    }

    /// Draws `n_shots` basis indices from |amplitude|² with a seeded generator.
    pub fn sample_indices(&self, n_shots: usize, seed: u64) -> Vec<usize> {
        let mut cumulative = Vec::with_capacity(self.amplitudes.len());
        let mut total = 0.0;
        for a in &self.amplitudes {
            total += a.norm_sqr();
            cumulative.push(total);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..n_shots)
            .map(|_| {
                let u = rng.gen::<f64>() * total;
                cumulative.partition_point(|&c| c <= u).min(cumulative.len() - 1)
            })
            .collect()
    }

    /// `index,re,im` rows.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("index,re,im\n");
        for (i, a) in self.amplitudes.iter().enumerate() {
            writeln!(out, "{i},{:e},{:e}", a.re, a.im).unwrap();
        }
        out
    }
}

/// Bitstring with qubit 0 leftmost.
pub fn bitstring(index: usize, n_qubits: usize) -> String {
    (0..n_qubits).map(|q| if index >> q & 1 == 1 { '1' } else { '0' }).collect()
}

/// Computational basis state with ones exactly at the occupied qubits.
pub fn prepare_hf(n_qubits: usize, occupied: &[usize]) -> Result<Statevector> {
    let mut index = 0usize;
    for &q in occupied {
        if q >= n_qubits {
            return Err(Error::Shape(format!("occupied qubit {q} outside 0..{n_qubits}")));
        }
        index |= 1 << q;
    }
    Statevector::basis(n_qubits, index)
}

/// Σ_k w_k ⟨ψ|P_k|ψ⟩.
pub fn expectation(state: &Statevector, h: &QubitHamiltonian) -> Result<f64> {
    if state.n_qubits() != h.n_qubits() {
        return Err(Error::Shape(format!(
            "state has {} qubits, Hamiltonian {}",
            state.n_qubits(),
            h.n_qubits()
        )));
    }
    let mut e = Complex64::new(0.0, 0.0);
    for (w, p) in h.terms() {
        e += *w * state.pauli_expectation(p);
    }
    debug_assert!(e.im.abs() < 1e-10 * (1.0 + e.re.abs()));
    Ok(e.re)
}

/// Counts keyed by bitstring (qubit 0 leftmost).
pub fn sample(state: &Statevector, n_shots: usize, seed: u64) -> BTreeMap<String, usize> {
    let mut counts = BTreeMap::new();
    for i in state.sample_indices(n_shots, seed) {
        *counts.entry(bitstring(i, state.n_qubits())).or_insert(0) += 1;
    }
    counts
}

/// Rotation angle: bound, or `scale · θ[slot]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Angle {
    Fixed(f64),
    Param { slot: usize, scale: f64 },
}

impl Angle {
    pub fn param(slot: usize) -> Self {
        Angle::Param { slot, scale: 1.0 }
    }

    pub fn resolve(&self, params: &[f64]) -> f64 {
        match *self {
            Angle::Fixed(a) => a,
            Angle::Param { slot, scale } => scale * params[slot],
        }
    }

    pub fn slot(&self) -> Option<usize> {
        match *self {
            Angle::Fixed(_) => None,
            Angle::Param { slot, .. } => Some(slot),
        }
    }
}

impl fmt::Display for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Angle::Fixed(a) => write!(f, "{a:e}"),
            Angle::Param { slot, scale } if scale == 1.0 => write!(f, "p{slot}"),
            Angle::Param { slot, scale } => write!(f, "p{slot}*{scale:e}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Gate {
    PauliX(usize),
    RotY(usize, Angle),
    RotZ(usize, Angle),
    Cnot { control: usize, target: usize },
    Cz(usize, usize),
    /// exp(−iθ/2 · P).
    PauliRotation(PauliString, Angle),
}

impl Gate {
    pub fn qubits(&self) -> Vec<usize> {
        match self {
            Gate::PauliX(q) | Gate::RotY(q, _) | Gate::RotZ(q, _) => vec![*q],
            Gate::Cnot { control, target } => vec![*control, *target],
            Gate::Cz(a, b) => vec![*a, *b],
            Gate::PauliRotation(p, _) => {
                let s = p.support();
                (0..p.n_qubits()).filter(|q| s >> q & 1 == 1).collect()
            }
        }
    }

    pub fn angle(&self) -> Option<&Angle> {
        match self {
            Gate::RotY(_, a) | Gate::RotZ(_, a) | Gate::PauliRotation(_, a) => Some(a),
            _ => None,
        }
    }

    fn angle_mut(&mut self) -> Option<&mut Angle> {
        match self {
            Gate::RotY(_, a) | Gate::RotZ(_, a) | Gate::PauliRotation(_, a) => Some(a),
            _ => None,
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            Gate::PauliX(_) => "x",
            Gate::RotY(..) => "ry",
            Gate::RotZ(..) => "rz",
            Gate::Cnot { .. } => "cnot",
            Gate::Cz(..) => "cz",
            Gate::PauliRotation(..) => "pauli",
        }
    }

    fn apply(&self, state: &mut Statevector, params: &[f64], shift: f64) {
        match self {
            Gate::PauliX(q) => state.apply_x(*q),
            Gate::RotY(q, a) => state.apply_ry(*q, a.resolve(params) + shift),
            Gate::RotZ(q, a) => state.apply_rz(*q, a.resolve(params) + shift),
            Gate::Cnot { control, target } => state.apply_cnot(*control, *target),
            Gate::Cz(a, b) => state.apply_cz(*a, *b),
            Gate::PauliRotation(p, a) => state.apply_pauli_rotation(p, a.resolve(params) + shift),
        }
    }
}

/// Ordered gate list over a fixed register with `n_parameters` slots.
#[derive(Debug, Clone, PartialEq)]
pub struct Circuit {
    n_qubits: usize,
    n_parameters: usize,
    gates: Vec<Gate>,
}

impl Circuit {
    pub fn new(n_qubits: usize, n_parameters: usize) -> Self {
        Self {
            n_qubits,
            n_parameters,
            gates: Vec::new(),
        }
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn n_parameters(&self) -> usize {
        self.n_parameters
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn push(&mut self, gate: Gate) -> Result<()> {
        let qubits = gate.qubits();
        if let Some(&q) = qubits.iter().find(|&&q| q >= self.n_qubits) {
            return Err(Error::Circuit(format!("qubit {q} outside 0..{}", self.n_qubits)));
        }
        if qubits.len() == 2 && qubits[0] == qubits[1] {
            return Err(Error::Circuit("two-qubit gate on a single qubit".into()));
        }
        if let Gate::PauliRotation(p, _) = &gate {
            if p.n_qubits() != self.n_qubits {
                return Err(Error::Circuit(format!("rotation string {p} has the wrong width")));
            }
        }
        if let Some(slot) = gate.angle().and_then(Angle::slot) {
            if slot >= self.n_parameters {
                return Err(Error::Circuit(format!("parameter slot {slot} outside 0..{}", self.n_parameters)));
            }
        }
        self.gates.push(gate);
        Ok(())
    }

    /// Checks that every parameter slot is used.
    pub fn validate(&self) -> Result<()> {
        let mut used = vec![false; self.n_parameters];
        for g in &self.gates {
            if let Some(slot) = g.angle().and_then(Angle::slot) {
                used[slot] = true;
            }
        }
        if let Some(slot) = used.iter().position(|u| !u) {
            return Err(Error::Circuit(format!("parameter slot {slot} is never used")));
        }
        Ok(())
    }

    /// Layers of gates on disjoint qubits, greedily packed.
    pub fn depth(&self) -> usize {
        let mut front = vec![0usize; self.n_qubits];
        let mut depth = 0;
        for g in &self.gates {
            let qs = g.qubits();
            let layer = qs.iter().map(|&q| front[q]).max().unwrap_or(0) + 1;
            for q in qs {
                front[q] = layer;
            }
            depth = depth.max(layer);
        }
        depth
    }

    /// One gate per line: `<kind> <qubits> <param-slot|angle> [letters]`.
    pub fn to_debug_string(&self) -> String {
        let mut out = String::new();
        for g in &self.gates {
            let qubits = g.qubits().iter().map(|q| q.to_string()).collect::<Vec<_>>().join(",");
            let angle = g.angle().map_or_else(|| "-".to_string(), |a| a.to_string());
            match g {
                Gate::PauliRotation(p, _) => writeln!(out, "{} {qubits} {angle} {p}", g.kind()),
                _ => writeln!(out, "{} {qubits} {angle}", g.kind()),
            }
            .unwrap();
        }
        out
    }

    fn check_inputs(&self, state: &Statevector, params: &[f64]) -> Result<()> {
        if params.len() != self.n_parameters {
            return Err(Error::Shape(format!(
                "circuit takes {} parameters, got {}",
                self.n_parameters,
                params.len()
            )));
        }
        if state.n_qubits() != self.n_qubits {
            return Err(Error::Shape(format!(
                "circuit acts on {} qubits, state has {}",
                self.n_qubits,
                state.n_qubits()
            )));
        }
        Ok(())
    }

    /// Applies the circuit with gate `shifted.0`'s angle offset by `shifted.1`.
    pub(crate) fn apply_shifted(
        &self,
        state: &mut Statevector,
        params: &[f64],
        shifted: Option<(usize, f64)>,
    ) -> Result<()> {
        self.check_inputs(state, params)?;
        for (i, g) in self.gates.iter().enumerate() {
            let shift = match shifted {
                Some((j, d)) if j == i => d,
                _ => 0.0,
            };
            g.apply(state, params, shift);
        }
        Ok(())
    }

    /// Same circuit with every parameterized angle bound to `params`.
    pub fn bind(&self, params: &[f64]) -> Result<Circuit> {
        if params.len() != self.n_parameters {
            return Err(Error::Shape("parameter count mismatch".into()));
        }
        let mut out = Circuit::new(self.n_qubits, 0);
        for g in &self.gates {
            let mut g = g.clone();
            if let Some(a) = g.angle_mut() {
                *a = Angle::Fixed(a.resolve(params));
            }
            out.gates.push(g);
        }
        Ok(out)
    }
}

pub fn apply_circuit(state: &Statevector, circuit: &Circuit, params: &[f64]) -> Result<Statevector> {
    let mut out = state.clone();
    circuit.apply_shifted(&mut out, params, None)?;
    Ok(out)
}

/// Exact gradient of ⟨ψ(θ)|H|ψ(θ)⟩ by the ±π/2 shift rule applied to every
/// rotation gate and accumulated per slot with its angle scale.
pub fn parameter_shift_gradient(
    reference: &Statevector,
    circuit: &Circuit,
    h: &QubitHamiltonian,
    params: &[f64],
) -> Result<Vec<f64>> {
    let half_pi = std::f64::consts::FRAC_PI_2;
    let mut grad = vec![0.0; circuit.n_parameters()];
    for (i, g) in circuit.gates().iter().enumerate() {
        let Some(Angle::Param { slot, scale }) = g.angle().copied() else {
            continue;
        };
        let mut plus = reference.clone();
        circuit.apply_shifted(&mut plus, params, Some((i, half_pi)))?;
        let mut minus = reference.clone();
        circuit.apply_shifted(&mut minus, params, Some((i, -half_pi)))?;
        grad[slot] += scale * 0.5 * (expectation(&plus, h)? - expectation(&minus, h)?);
    }
    Ok(grad)
}
