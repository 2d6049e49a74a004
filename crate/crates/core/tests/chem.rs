mod common;

use common::*;
use nalgebra::DMatrix;
use vqechem::chem::*;
use vqechem::fermion::build_second_quantized;
use vqechem::jordan_wigner::jordan_wigner;
use vqechem::exactdiag::{ground_state, Method, Sector};

// pyscf 2.x, STO-3G, RHF and FCI
const H2_139_RHF: f64 = -1.1169745073305637;
const H2_139_FCI: f64 = -1.1373056449539227;
const H2_140_RHF: f64 = -1.116714325062551;

fn h2(r: f64) -> Molecule {
    Molecule::hydrogen_chain(&[r], 0).unwrap()
}

/// Overlap of two normalized s Gaussians by direct quadrature in
/// cylindrical coordinates around the bond axis.
fn overlap_quadrature(a: f64, b: f64, r: f64) -> f64 {
    let na = (2.0 * a / std::f64::consts::PI).powf(0.75);
    let nb = (2.0 * b / std::f64::consts::PI).powf(0.75);
    let (nz, nrho) = (1200, 600);
    let (zmin, zmax, rmax) = (-8.0, r + 8.0, 8.0);
    let (dz, drho) = ((zmax - zmin) / nz as f64, rmax / nrho as f64);
    let mut sum = 0.0;
    for i in 0..nz {
        let z = zmin + (i as f64 + 0.5) * dz;
        for j in 0..nrho {
            let rho = (j as f64 + 0.5) * drho;
            let r2a = rho * rho + z * z;
            let r2b = rho * rho + (z - r) * (z - r);
            sum += (-a * r2a - b * r2b).exp() * rho;
        }
    }
    na * nb * 2.0 * std::f64::consts::PI * sum * dz * drho
}

#[test]
fn overlap_matches_quadrature() {
    let shell = sto3g_hydrogen();
    let zeta2 = 1.0; // exponents are already scaled
    let r = 1.4;
    let mut s = 0.0;
    let mut norm = 0.0;
    for (ai, ci) in shell.exponents.iter().zip(&shell.coefficients) {
        for (aj, cj) in shell.exponents.iter().zip(&shell.coefficients) {
            s += ci * cj * overlap_quadrature(ai * zeta2, aj * zeta2, r);
            norm += ci * cj * overlap_quadrature(*ai, *aj, 0.0);
        }
    }
    let ao = compute_ao_integrals(&h2(r)).unwrap();
    assert!((ao.overlap[(0, 1)] - s / norm).abs() < 1e-5, "{} vs {}", ao.overlap[(0, 1)], s / norm);
}

#[test]
fn ao_invariants_over_geometries() {
    for bonds in [vec![0.5], vec![1.4], vec![5.0], vec![1.3, 1.7], vec![1.0, 2.0, 1.5]] {
        let ao = compute_ao_integrals(&Molecule::hydrogen_chain(&bonds, 0).unwrap()).unwrap();
        let n = ao.n_ao;
        for m in [&ao.overlap, &ao.kinetic, &ao.nuclear] {
            assert!((m - m.transpose()).amax() < 1e-14);
        }
        for i in 0..n {
            assert!((ao.overlap[(i, i)] - 1.0).abs() < 1e-10);
        }
        assert!(ao.overlap.clone().cholesky().is_some());
        for p in 0..n {
            for q in 0..n {
                for r in 0..n {
                    for s in 0..n {
                        let v = ao.eri(p, q, r, s);
                        for w in [ao.eri(q, p, r, s), ao.eri(p, q, s, r), ao.eri(r, s, p, q), ao.eri(s, r, q, p)] {
                            assert!((v - w).abs() < 1e-14);
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn h2_rhf_matches_reference_package() {
    let ao = compute_ao_integrals(&h2(1.39)).unwrap();
    let rhf = run_rhf(&ao, 2).unwrap();
    assert!((rhf.total_energy - H2_139_RHF).abs() < 1e-6, "{}", rhf.total_energy);
    let ao = compute_ao_integrals(&h2(1.4)).unwrap();
    assert!((run_rhf(&ao, 2).unwrap().total_energy - H2_140_RHF).abs() < 1e-6);
}

#[test]
fn rhf_orthonormal_orbitals_and_monotone_energy() {
    for bonds in [vec![1.4], vec![1.2, 1.8, 1.5], vec![1.0, 1.0, 1.0]] {
        let mol = Molecule::hydrogen_chain(&bonds, 0).unwrap();
        let ao = compute_ao_integrals(&mol).unwrap();
        let ne = mol.n_electrons - mol.n_electrons % 2;
        let rhf = run_rhf(&ao, ne).unwrap();
        let c = &rhf.mo_coefficients;
        let ident = c.transpose() * &ao.overlap * c;
        assert!((ident - DMatrix::identity(ao.n_ao, ao.n_ao)).amax() < 1e-8);
        assert!(rhf.orbital_energies.windows(2).all(|w| w[0] <= w[1]));
        for w in rhf.energy_trace.windows(2).skip(1) {
            assert!(w[1] <= w[0] + 1e-12, "{:?}", rhf.energy_trace);
        }
    }
}

#[test]
fn rhf_above_fci_and_determinant_oracle() {
    let (ints, rhf) = molecular_integrals(&h2(1.39)).unwrap();
    let fci = fci_energy(&ints);
    assert!((fci - H2_139_FCI).abs() < 1e-6, "{fci}");
    assert!(rhf.total_energy >= fci);
    let h = jordan_wigner(&build_second_quantized(&ints)).unwrap();
    let e = ground_state(&h, Method::Dense, Sector::ParticleNumber(2)).unwrap().energy;
    assert!((e - fci).abs() < 1e-9);
}

#[test]
fn mo_integrals_invariants() {
    let (ints, rhf) = molecular_integrals(&h2(1.39)).unwrap();
    assert!(ints.max_symmetry_error() < 1e-12);
    assert!((ints.closed_shell_energy(1) - rhf.total_energy).abs() < 1e-10);
    let ao = compute_ao_integrals(&h2(1.39)).unwrap();
    assert_eq!(ints.constant_energy, ao.e_nuc);
    let c = &rhf.mo_coefficients;
    assert!((c.transpose() * ao.core_hamiltonian() * c - &ints.h).amax() < 1e-12);
}

#[test]
fn fcidump_grammar_example() {
    let text = "&FCI NORB=1,NELEC=2,MS2=0,\n ORBSYM=1,\n ISYM=1,\n&END\n 0.5 1 1 1 1\n -1.0 1 1 0 0\n 0.7 0 0 0 0\n";
    let ints = parse_fcidump(text).unwrap();
    assert_eq!(ints.n_spatial, 1);
    assert_eq!(ints.n_electrons, 2);
    assert_eq!(ints.g(0, 0, 0, 0), 0.5);
    assert_eq!(ints.h[(0, 0)], -1.0);
    assert_eq!(ints.constant_energy, 0.7);
}

#[test]
fn fcidump_errors() {
    let bad_header = "&FCI NELEC=2\n&END\n";
    assert!(matches!(parse_fcidump(bad_header), Err(vqechem::Error::FcidumpParse { .. })));
    let bad_index = "&FCI NORB=1,NELEC=2,MS2=0\n&END\n 0.5 2 1 1 1\n";
    assert!(matches!(parse_fcidump(bad_index), Err(vqechem::Error::FcidumpIndex { line: 3, .. })));
    let complex = "&FCI NORB=1,NELEC=2,MS2=0\n&END\n (0.5,0.1) 1 1 1 1\n";
    assert!(matches!(parse_fcidump(complex), Err(vqechem::Error::FcidumpFormat { .. })));
}

fn assert_same(a: &MolecularIntegrals, b: &MolecularIntegrals, tol: f64) {
    assert_eq!(a.n_spatial, b.n_spatial);
    assert_eq!(a.n_electrons, b.n_electrons);
    assert!((a.constant_energy - b.constant_energy).abs() <= tol);
    assert!((&a.h - &b.h).amax() <= tol);
    for (x, y) in a.g.iter().zip(&b.g) {
        assert!((x - y).abs() <= tol);
    }
}

#[test]
fn fcidump_roundtrip_generated_and_fixtures() {
    let (ints, _) = molecular_integrals(&h2(1.39)).unwrap();
    assert_same(&ints, &parse_fcidump(&write_fcidump(&ints)).unwrap(), 1e-12);
    for seed in 0..5 {
        let r = random_integrals(3, 2, seed);
        assert_same(&r, &parse_fcidump(&write_fcidump(&r)).unwrap(), 1e-12);
    }
    for name in ["h2s_sto3g_eq.fcidump", "h2s_sto3g_stretched.fcidump"] {
        let ints = read_fcidump(fixture(name)).unwrap();
        assert_eq!(ints.n_spatial, 6);
        assert_eq!(ints.n_electrons, 8);
        assert!(ints.validate().is_ok());
        assert!(ints.max_symmetry_error() < 1e-10);
        let text = write_fcidump(&ints);
        let back = parse_fcidump(&text).unwrap();
        assert_same(&ints, &back, 1e-12);
        assert_eq!(write_fcidump(&back), text);
    }
}

#[test]
fn freeze_core_empty_is_identity() {
    let r = random_integrals(3, 4, 7);
    let out = freeze_core(&r, &ActiveSpaceSpec { frozen: vec![], active: vec![0, 1, 2] }).unwrap();
    assert_same(&r, &out, 0.0);
}

#[test]
fn freeze_core_rejects_overlap() {
    let r = random_integrals(3, 4, 7);
    assert!(freeze_core(&r, &ActiveSpaceSpec { frozen: vec![0], active: vec![0, 1, 2] }).is_err());
}

#[test]
fn freeze_core_spectrum_equivalence() {
    // 20 instances: 10 with three orbitals, 10 with four
    for seed in 0..20u64 {
        let n = if seed < 10 { 3 } else { 4 };
        let ne = if n == 3 { 4 } else { 4 + (seed % 2) as usize * 2 };
        let full = random_integrals(n, ne, 100 + seed);
        let spec = ActiveSpaceSpec::frozen_core(1, n);
        let reduced = freeze_core(&full, &spec).unwrap();
        assert_eq!(reduced.n_electrons, ne - 2);
        // determinants with both spin orbitals of spatial orbital 0 occupied
        let projected = lowest_eigenvalue_real(&determinant_ci_matrix(&full, ne, |d| d & 0b11 == 0b11));
        let e = fci_energy(&reduced);
        assert!((projected - e).abs() < 1e-9, "seed {seed}: {projected} vs {e}");
    }
}

#[test]
fn h2s_fixture_freezes_to_eight_qubits() {
    // CASCI energies from the reference package on the same integrals
    let cases = [("h2s_sto3g_eq.fcidump", -394.3539846690172, -394.3199999397265),
        ("h2s_sto3g_stretched.fcidump", -394.346894451458, -394.3045666307217)];
    for (name, full_e, frozen_e) in cases {
        let ints = read_fcidump(fixture(name)).unwrap();
        let reduced = freeze_core(&ints, &ActiveSpaceSpec::frozen_core(2, 6)).unwrap();
        assert_eq!(reduced.n_spin_orbitals(), 8);
        assert_eq!(reduced.n_electrons, 4);
        let h = jordan_wigner(&build_second_quantized(&reduced)).unwrap();
        assert_eq!(h.n_qubits(), 8);
        let e = ground_state(&h, Method::Auto, Sector::ParticleNumber(4)).unwrap().energy;
        assert!((e - frozen_e).abs() < 1e-8, "{e}");
        assert!((fci_energy(&ints) - full_e).abs() < 1e-8);
    }
}

#[test]
fn geometry_json_schema() {
    let json = r#"{"atoms":[{"symbol":"H","xyz_angstrom":[0,0,0]},{"symbol":"H","xyz_angstrom":[0,0,0.74]}],"charge":0}"#;
    let mol = GeometryInput::from_json(json).unwrap().to_molecule().unwrap();
    assert_eq!(mol.n_electrons, 2);
    assert!((mol.atoms[1].position[2] - 0.74 * vqechem::units::ANGSTROM_TO_BOHR).abs() < 1e-12);
    let both = r#"{"atoms":[{"symbol":"H","xyz_bohr":[0,0,0],"xyz_angstrom":[0,0,0]}],"charge":0}"#;
    assert!(GeometryInput::from_json(both).and_then(|g| g.to_molecule()).is_err());
}
