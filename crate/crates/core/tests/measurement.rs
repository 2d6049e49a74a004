mod common;

use common::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use vqechem::ansatz::build_uccsd;
use vqechem::chem::{freeze_core, read_fcidump, ActiveSpaceSpec};
use vqechem::fermion::build_second_quantized;
use vqechem::jordan_wigner::jordan_wigner;
use vqechem::measurement::*;
use vqechem::simulator::{apply_circuit, expectation, prepare_hf};
use vqechem::{PauliString, QubitHamiltonian, Statevector};

fn h2() -> QubitHamiltonian {
    jordan_wigner(&build_second_quantized(&h2_integrals_angstrom(0.74))).unwrap()
}

fn h2s_frozen() -> QubitHamiltonian {
    let ints = read_fcidump(fixture("h2s_sto3g_eq.fcidump")).unwrap();
    let reduced = freeze_core(&ints, &ActiveSpaceSpec::frozen_core(2, 6)).unwrap();
    jordan_wigner(&build_second_quantized(&reduced)).unwrap()
}

fn h3() -> QubitHamiltonian {
    use vqechem::chem::{molecular_integrals, Molecule};
    let b = vqechem::units::ANGSTROM_TO_BOHR;
    let mol = Molecule::hydrogen_chain(&[0.8 * b, 1.2 * b], 0).unwrap();
    jordan_wigner(&build_second_quantized(&molecular_integrals(&mol).unwrap().0)).unwrap()
}

fn assert_valid_grouping(h: &QubitHamiltonian, groups: &[MeasurementGroup]) {
    let mut seen = vec![0; h.len()];
    for g in groups {
        for &t in &g.terms {
            seen[t] += 1;
        }
        for (i, &a) in g.terms.iter().enumerate() {
            let pa = h.terms()[a].1;
            for &b in &g.terms[i + 1..] {
                assert!(pa.commutes_qubitwise(&h.terms()[b].1).unwrap());
            }
            for q in 0..pa.n_qubits() {
                let l = pa.letter(q);
                assert!(l == vqechem::pauli::Letter::I || l == g.basis.letter(q));
            }
        }
        // the basis carries no letter that no member uses
        let used = g.terms.iter().fold(0u64, |m, &t| m | h.terms()[t].1.support());
        assert_eq!(g.basis.support(), used);
    }
    assert!(seen.iter().all(|&c| c == 1));
}

/// Chromatic number of the conflict graph by backtracking.
fn exact_chromatic_number(h: &QubitHamiltonian) -> usize {
    let n = h.len();
    let conflict: Vec<Vec<bool>> = (0..n)
        .map(|a| (0..n).map(|b| !h.terms()[a].1.commutes_qubitwise(&h.terms()[b].1).unwrap()).collect())
        .collect();
    fn color(v: usize, k: usize, colors: &mut Vec<usize>, conflict: &[Vec<bool>]) -> bool {
        if v == colors.len() {
            return true;
        }
        for c in 0..k {
            if (0..v).all(|u| !conflict[u][v] || colors[u] != c) {
                colors[v] = c;
                if color(v + 1, k, colors, conflict) {
                    return true;
                }
            }
        }
        false
    }
    (1..=n).find(|&k| color(0, k, &mut vec![0; n], &conflict)).unwrap()
}

#[test]
fn grouping_cases() {
    let ham = |n, terms: &[&str]| QubitHamiltonian::new(n, terms.iter().map(|s| (1.0, s.parse::<PauliString>().unwrap()))).unwrap();
    assert_eq!(group_commuting(&ham(2, &["ZI", "IZ", "ZZ"])).len(), 1);
    assert_eq!(group_commuting(&ham(2, &["XX", "ZZ"])).len(), 2);
}

#[test]
fn h2_group_count_bounds() {
    let h = h2();
    let groups = group_commuting(&h);
    assert_valid_grouping(&h, &groups);
    let chi = exact_chromatic_number(&h);
    assert!(groups.len() <= h.len());
    assert!(groups.len() >= chi);
    assert_eq!(groups.len(), chi);
}

#[test]
fn groupings_partition_on_all_fixtures() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut hams = vec![h2(), h2s_frozen(), h3()];
    for _ in 0..5 {
        hams.push(random_hamiltonian(5, 30, &mut rng));
    }
    for h in &hams {
        let groups = group_commuting(h);
        assert_valid_grouping(h, &groups);
        assert!(groups.len() < h.len() || h.len() <= 2);
    }
}

#[test]
fn report_csv_rows() {
    let h = h2();
    let groups = group_commuting(&h);
    let csv = grouping_report_csv(&groups);
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("group_id,n_terms,basis_string"));
    assert_eq!(lines.count(), groups.len());
}

fn correlated_state() -> (QubitHamiltonian, Statevector) {
    let h = h2();
    let circuit = build_uccsd(4, &[0, 1]).unwrap();
    let state = apply_circuit(&prepare_hf(4, &[0, 1]).unwrap(), &circuit, &[0.05, -0.03, -0.4]).unwrap();
    (h, state)
}

#[test]
fn hf_estimate_within_five_sigma() {
    let h = h2();
    let hf = prepare_hf(4, &[0, 1]).unwrap();
    let exact = expectation(&hf, &h).unwrap();
    let groups = group_commuting(&h);
    let est = estimate_energy_sampled(&hf, &h, &groups, 100_000, 2024).unwrap();
    assert!(est.standard_error > 0.0);
    assert!((est.energy - exact).abs() < 5.0 * est.standard_error, "{} vs {exact} ± {}", est.energy, est.standard_error);
    let measured = groups.iter().filter(|g| g.terms.iter().any(|&t| !h.terms()[t].1.is_identity())).count();
    assert_eq!(est.shots_used, 100_000 * measured);
}

#[test]
fn standard_error_scales_inverse_sqrt() {
    let (h, state) = correlated_state();
    let groups = group_commuting(&h);
    let scaled: Vec<f64> = [100usize, 1000, 10_000]
        .iter()
        .map(|&s| estimate_energy_sampled(&state, &h, &groups, s, 7).unwrap().standard_error * (s as f64).sqrt())
        .collect();
    let (lo, hi) = scaled.iter().fold((f64::INFINITY, 0.0f64), |(a, b), &x| (a.min(x), b.max(x)));
    assert!(lo > 0.0 && hi / lo < 1.5, "{scaled:?}");
}

#[test]
fn grouped_agrees_with_term_by_term() {
    let (h, state) = correlated_state();
    let grouped = group_commuting(&h);
    let single: Vec<MeasurementGroup> = h
        .terms()
        .iter()
        .enumerate()
        .map(|(i, (_, p))| MeasurementGroup { terms: vec![i], basis: *p })
        .collect();
    for seed in 0..20 {
        let a = estimate_energy_sampled(&state, &h, &grouped, 20_000, seed).unwrap();
        let b = estimate_energy_sampled(&state, &h, &single, 20_000, seed).unwrap();
        let sigma = (a.standard_error.powi(2) + b.standard_error.powi(2)).sqrt();
        assert!((a.energy - b.energy).abs() < 5.0 * sigma, "seed {seed}");
    }
}

#[test]
fn weighted_allocation_keeps_total() {
    let (h, state) = correlated_state();
    let groups = group_commuting(&h);
    let uniform = estimate_energy_sampled(&state, &h, &groups, 4000, 1).unwrap();
    let weighted = estimate_energy_with_allocation(&state, &h, &groups, 4000, 1, ShotAllocation::WeightProportional).unwrap();
    assert!((weighted.shots_used as f64 - uniform.shots_used as f64).abs() <= groups.len() as f64);
    let exact = expectation(&state, &h).unwrap();
    assert!((weighted.energy - exact).abs() < 5.0 * weighted.standard_error);
}

#[test]
fn mismatched_groups_rejected() {
    let h = h2();
    let mut groups = group_commuting(&h);
    let state = prepare_hf(4, &[0, 1]).unwrap();
    groups.pop();
    assert!(matches!(estimate_energy_sampled(&state, &h, &groups, 10, 0), Err(vqechem::Error::Shape(_))));
    assert!(estimate_energy_sampled(&state, &h, &group_commuting(&h), 0, 0).is_err());
}
