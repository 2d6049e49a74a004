use std::f64::consts::PI;

use nalgebra::DMatrix;

use super::basis::{sto3g_hydrogen, ContractedShell};
use super::molecule::Molecule;
use crate::error::{Error, Result};

/// Atomic-orbital integrals in a normalized basis.
#[derive(Debug, Clone)]
pub struct AoIntegrals {
    pub n_ao: usize,
    pub overlap: DMatrix<f64>,
    pub kinetic: DMatrix<f64>,
    pub nuclear: DMatrix<f64>,
    /// (pq|rs) in chemist notation, row-major over (p, q, r, s).
    pub eri: Vec<f64>,
    pub e_nuc: f64,
}

impl AoIntegrals {
    #[inline]
    pub fn eri(&self, p: usize, q: usize, r: usize, s: usize) -> f64 {
        let n = self.n_ao;
        self.eri[((p * n + q) * n + r) * n + s]
    }

    pub fn core_hamiltonian(&self) -> DMatrix<f64> {
        &self.kinetic + &self.nuclear
    }
}

/// Boys function of order zero.
pub fn boys_f0(x: f64) -> f64 {
    if x < 1e-12 {
        // series: 1 − x/3 + x²/10
        1.0 - x / 3.0
    } else {
        0.5 * (PI / x).sqrt() * libm::erf(x.sqrt())
    }
}

#[derive(Clone, Copy)]
struct Primitive {
    alpha: f64,
    /// Contraction coefficient times primitive normalization.
    weight: f64,
    center: [f64; 3],
}

fn dist2(a: &[f64; 3], b: &[f64; 3]) -> f64 {
    (a[0] - b[0]).powi(2) + (a[1] - b[1]).powi(2) + (a[2] - b[2]).powi(2)
}

fn gaussian_center(a: f64, pa: &[f64; 3], b: f64, pb: &[f64; 3]) -> [f64; 3] {
    let s = a + b;
    [
        (a * pa[0] + b * pb[0]) / s,
        (a * pa[1] + b * pb[1]) / s,
        (a * pa[2] + b * pb[2]) / s,
    ]
}

fn prim_overlap(a: &Primitive, b: &Primitive) -> f64 {
    let p = a.alpha + b.alpha;
    (PI / p).powf(1.5) * (-a.alpha * b.alpha / p * dist2(&a.center, &b.center)).exp()
}

fn prim_kinetic(a: &Primitive, b: &Primitive) -> f64 {
    let p = a.alpha + b.alpha;
    let mu = a.alpha * b.alpha / p;
    mu * (3.0 - 2.0 * mu * dist2(&a.center, &b.center)) * prim_overlap(a, b)
}

fn prim_nuclear(a: &Primitive, b: &Primitive, c: &[f64; 3], z: f64) -> f64 {
    let p = a.alpha + b.alpha;
    let center = gaussian_center(a.alpha, &a.center, b.alpha, &b.center);
    -2.0 * PI / p
        * z
        * (-a.alpha * b.alpha / p * dist2(&a.center, &b.center)).exp()
        * boys_f0(p * dist2(&center, c))
}

fn prim_eri(a: &Primitive, b: &Primitive, c: &Primitive, d: &Primitive) -> f64 {
    let p = a.alpha + b.alpha;
    let q = c.alpha + d.alpha;
    let pc = gaussian_center(a.alpha, &a.center, b.alpha, &b.center);
    let qc = gaussian_center(c.alpha, &c.center, d.alpha, &d.center);
    let kab = (-a.alpha * b.alpha / p * dist2(&a.center, &b.center)).exp();
    let kcd = (-c.alpha * d.alpha / q * dist2(&c.center, &d.center)).exp();
    2.0 * PI.powf(2.5) / (p * q * (p + q).sqrt()) * kab * kcd * boys_f0(p * q / (p + q) * dist2(&pc, &qc))
}

fn contracted(shell: &ContractedShell, center: [f64; 3]) -> Vec<Primitive> {
    let mut prims: Vec<Primitive> = shell
        .exponents
        .iter()
        .zip(&shell.coefficients)
        .map(|(&alpha, &d)| Primitive {
            alpha,
            weight: d * (2.0 * alpha / PI).powf(0.75),
            center,
        })
        .collect();
    // tabulated coefficients are normalized only to ~1e-8; rescale exactly
    let mut norm = 0.0;
    for a in &prims {
        for b in &prims {
            norm += a.weight * b.weight * prim_overlap(a, b);
        }
    }
    let scale = norm.sqrt().recip();
    for p in &mut prims {
        p.weight *= scale;
    }
    prims
}

/// STO-3G integrals for a hydrogen-only molecule, one s function per atom.
pub fn compute_ao_integrals(molecule: &Molecule) -> Result<AoIntegrals> {
    for a in &molecule.atoms {
        if a.charge != 1 {
            return Err(Error::UnsupportedElement {
                symbol: a.symbol.clone(),
                charge: a.charge,
            });
        }
    }
    let e_nuc = molecule.nuclear_repulsion()?;
    let shell = sto3g_hydrogen();
    let basis: Vec<Vec<Primitive>> = molecule.atoms.iter().map(|a| contracted(shell, a.position)).collect();
    let n = basis.len();

    let pair = |i: usize, j: usize, f: &dyn Fn(&Primitive, &Primitive) -> f64| -> f64 {
        let mut sum = 0.0;
        for a in &basis[i] {
            for b in &basis[j] {
                sum += a.weight * b.weight * f(a, b);
            }
        }
        sum
    };

    let mut overlap = DMatrix::zeros(n, n);
    let mut kinetic = DMatrix::zeros(n, n);
    let mut nuclear = DMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..=i {
            let s = pair(i, j, &prim_overlap);
            let t = pair(i, j, &prim_kinetic);
            let v: f64 = molecule
                .atoms
                .iter()
                .map(|atom| pair(i, j, &|a, b| prim_nuclear(a, b, &atom.position, atom.charge as f64)))
                .sum();
            overlap[(i, j)] = s;
            overlap[(j, i)] = s;
            kinetic[(i, j)] = t;
            kinetic[(j, i)] = t;
            nuclear[(i, j)] = v;
            nuclear[(j, i)] = v;
        }
    }

    let mut eri = vec![0.0; n * n * n * n];
    let idx = |p: usize, q: usize, r: usize, s: usize| ((p * n + q) * n + r) * n + s;
    for p in 0..n {
        for q in 0..=p {
            for r in 0..n {
                for s in 0..=r {
                    if p * (p + 1) / 2 + q < r * (r + 1) / 2 + s {
                        continue;
                    }
                    let mut v = 0.0;
                    for a in &basis[p] {
                        for b in &basis[q] {
                            for c in &basis[r] {
                                for d in &basis[s] {
                                    v += a.weight * b.weight * c.weight * d.weight * prim_eri(a, b, c, d);
                                }
                            }
                        }
                    }
                    for (i, j, k, l) in [
                        (p, q, r, s),
                        (q, p, r, s),
                        (p, q, s, r),
                        (q, p, s, r),
                        (r, s, p, q),
                        (s, r, p, q),
                        (r, s, q, p),
                        (s, r, q, p),
                    ] {
                        eri[idx(i, j, k, l)] = v;
                    }
                }
            }
        }
    }

    Ok(AoIntegrals {
        n_ao: n,
        overlap,
        kinetic,
        nuclear,
        eri,
        e_nuc,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chem::molecule::Atom;

    fn h2(r: f64) -> Molecule {
        Molecule::new(vec![Atom::hydrogen([0.0; 3]), Atom::hydrogen([0.0, 0.0, r])], 2).unwrap()
    }

    #[test]
    fn single_atom_is_normalized() {
        let m = Molecule::new(vec![Atom::hydrogen([0.3, -0.2, 1.0])], 1).unwrap();
        let ao = compute_ao_integrals(&m).unwrap();
        assert_eq!(ao.n_ao, 1);
        assert!((ao.overlap[(0, 0)] - 1.0).abs() < 1e-14);
        assert_eq!(ao.e_nuc, 0.0);
    }

    #[test]
    fn coincident_atoms_rejected() {
        let err = compute_ao_integrals(&h2(0.0)).unwrap_err();
        assert!(matches!(err, Error::SingularGeometry(0, 1)));
    }

    #[test]
    fn non_hydrogen_rejected() {
        let he = Atom { symbol: "He".into(), charge: 2, position: [0.0; 3] };
        let m = Molecule::new(vec![he], 2).unwrap();
        assert!(matches!(compute_ao_integrals(&m), Err(Error::UnsupportedElement { .. })));
    }

    #[test]
    fn boys_is_continuous_at_the_switch() {
        let below = boys_f0(0.999e-12);
        let above = boys_f0(1.001e-12);
        assert!((below - above).abs() < 1e-12);
        assert_eq!(boys_f0(0.0), 1.0);
        // F0(1) = √π erf(1) / 2
        assert!((boys_f0(1.0) - 0.746_824_132_812_427).abs() < 1e-14);
    }

    #[test]
    fn h2_textbook_values() {
        // H2 at 1.4 Bohr, zeta 1.24 STO-3G: S12 = 0.6593, T11 = 0.7600,
        // (11|11) = 0.7746, (11|22) = 0.5697
        let ao = compute_ao_integrals(&h2(1.4)).unwrap();
        assert!((ao.overlap[(0, 1)] - 0.6593).abs() < 1e-4);
        assert!((ao.kinetic[(0, 0)] - 0.7600).abs() < 1e-4);
        assert!((ao.eri(0, 0, 0, 0) - 0.7746).abs() < 1e-4);
        assert!((ao.eri(0, 0, 1, 1) - 0.5697).abs() < 1e-4);
        assert!((ao.e_nuc - 1.0 / 1.4).abs() < 1e-15);
    }
}
