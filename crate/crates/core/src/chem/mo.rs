use nalgebra::DMatrix;

use super::ao::AoIntegrals;
use super::rhf::RhfResult;
use crate::error::{Error, Result};

/// Spatial-orbital integrals in an orthonormal (MO) basis.
#[derive(Debug, Clone, PartialEq)]
pub struct MolecularIntegrals {
    pub n_spatial: usize,
    pub n_electrons: usize,
    /// Nuclear repulsion plus any frozen-core energy.
    pub constant_energy: f64,
    pub h: DMatrix<f64>,
    /// (pq|rs) in chemist notation, row-major over (p, q, r, s).
    pub g: Vec<f64>,
}

impl MolecularIntegrals {
    pub fn zeros(n_spatial: usize, n_electrons: usize) -> Self {
        Self {
            n_spatial,
            n_electrons,
            constant_energy: 0.0,
            h: DMatrix::zeros(n_spatial, n_spatial),
            g: vec![0.0; n_spatial.pow(4)],
        }
    }

    #[inline]
    pub fn index(&self, p: usize, q: usize, r: usize, s: usize) -> usize {
        let n = self.n_spatial;
        ((p * n + q) * n + r) * n + s
    }

    #[inline]
    pub fn g(&self, p: usize, q: usize, r: usize, s: usize) -> f64 {
        self.g[self.index(p, q, r, s)]
    }

    /// Writes (pq|rs) and its seven symmetry partners.
    pub fn set_g_symmetric(&mut self, p: usize, q: usize, r: usize, s: usize, value: f64) {
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
            let at = self.index(i, j, k, l);
            self.g[at] = value;
        }
    }

    pub fn n_spin_orbitals(&self) -> usize {
        2 * self.n_spatial
    }

    /// Largest violation of the symmetry invariants of h and g.
    pub fn max_symmetry_error(&self) -> f64 {
        let n = self.n_spatial;
        let mut err: f64 = 0.0;
        for p in 0..n {
            for q in 0..n {
                err = err.max((self.h[(p, q)] - self.h[(q, p)]).abs());
                for r in 0..n {
                    for s in 0..n {
                        let v = self.g(p, q, r, s);
                        for w in [
                            self.g(q, p, r, s),
                            self.g(p, q, s, r),
                            self.g(r, s, p, q),
                            self.g(s, r, q, p),
                        ] {
                            err = err.max((v - w).abs());
                        }
                    }
                }
            }
        }
        err
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.n_spatial;
        if self.h.nrows() != n || self.h.ncols() != n || self.g.len() != n.pow(4) {
            return Err(Error::Shape(format!("integral arrays do not match n_spatial = {n}")));
        }
        if !self.constant_energy.is_finite()
            || self.h.iter().any(|v| !v.is_finite())
            || self.g.iter().any(|v| !v.is_finite())
        {
            return Err(Error::Shape("non-finite integral".into()));
        }
        let err = self.max_symmetry_error();
        if err > 1e-10 {
            return Err(Error::Shape(format!("integral symmetry violated by {err:e}")));
        }
        Ok(())
    }

    /// Energy of the closed-shell determinant occupying the lowest
    /// `n_electrons / 2` orbitals.
    pub fn closed_shell_energy(&self, n_doubly_occupied: usize) -> f64 {
        let mut e = self.constant_energy;
        for i in 0..n_doubly_occupied {
            e += 2.0 * self.h[(i, i)];
            for j in 0..n_doubly_occupied {
                e += 2.0 * self.g(i, i, j, j) - self.g(i, j, j, i);
            }
        }
        e
    }
}

/// AO → MO transformation with the SCF coefficients.
pub fn transform_to_mo(ao: &AoIntegrals, rhf: &RhfResult) -> Result<MolecularIntegrals> {
    if !rhf.converged {
        return Err(Error::Shape("RHF result is not converged".into()));
    }
    let c = &rhf.mo_coefficients;
    let n_ao = ao.n_ao;
    if c.nrows() != n_ao {
        return Err(Error::Shape(format!(
            "MO coefficients have {} rows for {} AOs",
            c.nrows(),
            n_ao
        )));
    }
    let n = c.ncols();
    let h = c.transpose() * ao.core_hamiltonian() * c;

    // quarter transforms, one index at a time
    let mut t1 = vec![0.0; n * n_ao * n_ao * n_ao];
    for p in 0..n {
        for b in 0..n_ao {
            for cc in 0..n_ao {
                for d in 0..n_ao {
                    let mut v = 0.0;
                    for a in 0..n_ao {
                        v += c[(a, p)] * ao.eri(a, b, cc, d);
                    }
                    t1[((p * n_ao + b) * n_ao + cc) * n_ao + d] = v;
                }
            }
        }
    }
    let mut t2 = vec![0.0; n * n * n_ao * n_ao];
    for p in 0..n {
        for q in 0..n {
            for cc in 0..n_ao {
                for d in 0..n_ao {
                    let mut v = 0.0;
                    for b in 0..n_ao {
                        v += c[(b, q)] * t1[((p * n_ao + b) * n_ao + cc) * n_ao + d];
                    }
                    t2[((p * n + q) * n_ao + cc) * n_ao + d] = v;
                }
            }
        }
    }
    let mut t3 = vec![0.0; n * n * n * n_ao];
    for p in 0..n {
        for q in 0..n {
            for r in 0..n {
                for d in 0..n_ao {
                    let mut v = 0.0;
                    for cc in 0..n_ao {
                        v += c[(cc, r)] * t2[((p * n + q) * n_ao + cc) * n_ao + d];
                    }
                    t3[((p * n + q) * n + r) * n_ao + d] = v;
                }
            }
        }
    }
    let mut out = MolecularIntegrals::zeros(n, rhf.n_electrons);
    out.constant_energy = ao.e_nuc;
    out.h = h;
    for p in 0..n {
        for q in 0..n {
            for r in 0..n {
                for s in 0..n {
                    let mut v = 0.0;
                    for d in 0..n_ao {
                        v += c[(d, s)] * t3[((p * n + q) * n + r) * n_ao + d];
                    }
                    let at = out.index(p, q, r, s);
                    out.g[at] = v;
                }
            }
        }
    }
    // symmetrize away rounding so downstream invariants hold exactly
    for p in 0..n {
        for q in 0..p {
            let v = 0.5 * (out.h[(p, q)] + out.h[(q, p)]);
            out.h[(p, q)] = v;
            out.h[(q, p)] = v;
        }
    }
    for p in 0..n {
        for q in 0..=p {
            for r in 0..n {
                for s in 0..=r {
                    if p * (p + 1) / 2 + q < r * (r + 1) / 2 + s {
                        continue;
                    }
                    let v = out.g(p, q, r, s);
                    out.set_g_symmetric(p, q, r, s, v);
                }
            }
        }
    }
    Ok(out)
}
