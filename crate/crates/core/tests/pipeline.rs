use std::f64::consts::PI;

use num_complex::Complex64;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use spinxor_core::gate_verify::DEFAULT_TOL;
use spinxor_core::sampling::{random_hermitian, random_unitary};
use spinxor_core::xor_family::xor_unitary;
use spinxor_core::{
    decompose, evolution_operator, functional_fidelity, hermitian_eig, objective, reconstruct,
    unitary_log_min_spread, verify_hamiltonian, xor_hamiltonian, ComplexMatrix, CouplingModel,
    EvolutionConfig, ModelKind, TemplateParams,
};

fn traceless(m: &ComplexMatrix) -> ComplexMatrix {
    let shift = m.trace() / m.dim() as f64;
    m - &ComplexMatrix::identity(m.dim()).scale(shift)
}

/// Random Hermitian with eigenvalue spread `spread`, centred at `centre`.
fn hermitian_with_spread(seed: u64, spread: f64, centre: f64) -> ComplexMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let s = hermitian_eig(&random_hermitian(&mut rng, 8, 1.0)).unwrap();
    let ev = s.real_eigenvalues();
    let (lo, hi) = ev
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &x| {
            (a.min(x), b.max(x))
        });
    let scaled: Vec<Complex64> = ev
        .iter()
        .map(|&x| Complex64::new(centre + spread * ((x - lo) / (hi - lo) - 0.5), 0.0))
        .collect();
    s.reassemble(&scaled)
}

#[test]
fn evolve_then_log_recovers_hamiltonian_up_to_identity() {
    let cfg = EvolutionConfig::new(0.7);
    for seed in 0..40 {
        // the minimal-spread branch is the original one whenever the spread is below π/Δt
        let h = hermitian_with_spread(seed, 0.95 * PI / cfg.delta_t(), 3.0 * seed as f64);
        let u = evolution_operator(&h, &cfg).unwrap();
        let back = unitary_log_min_spread(&u, &cfg).unwrap();
        assert!(
            traceless(&back).max_abs_diff(&traceless(&h)) <= 1e-8,
            "seed {seed}"
        );
        assert!(evolution_operator(&back, &cfg).unwrap().max_abs_diff(&u) <= 1e-9);
    }
}

#[test]
fn log_of_random_unitary_exponentiates_back() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let cfg = EvolutionConfig::default();
    for _ in 0..20 {
        let u = random_unitary(&mut rng, 8);
        let h = unitary_log_min_spread(&u, &cfg).unwrap();
        assert!(h.is_hermitian(1e-12));
        assert!(evolution_operator(&h, &cfg).unwrap().max_abs_diff(&u) <= 1e-9);
    }
}

#[test]
fn log_of_xor_unitary_is_a_valid_generator() {
    let cfg = EvolutionConfig::default();
    let u = xor_unitary(0.4, -1.3, 2.2);
    let h = unitary_log_min_spread(&u, &cfg).unwrap();
    let report = verify_hamiltonian(&decompose(&h).unwrap(), &cfg, DEFAULT_TOL).unwrap();
    assert!(report.passed(), "{report}");
}

#[test]
fn longer_interval_rescales_coefficients() {
    let d1 = xor_hamiltonian(0.3, 1.1, -0.7, &EvolutionConfig::new(1.0));
    let d2 = xor_hamiltonian(0.3, 1.1, -0.7, &EvolutionConfig::new(2.0));
    assert!(d2.max_coeff_diff(&d1.scaled(0.5)) <= 1e-15);
    let u1 = evolution_operator(&reconstruct(&d1), &EvolutionConfig::new(1.0)).unwrap();
    let u2 = evolution_operator(&reconstruct(&d2), &EvolutionConfig::new(2.0)).unwrap();
    assert!(u1.max_abs_diff(&u2) <= 1e-12);
}

#[test]
fn general_model_represents_the_family() {
    let cfg = EvolutionConfig::default();
    let model = CouplingModel::new(ModelKind::GeneralTwoSpin, false);
    for (a, b, g) in [(0.0, 0.0, 0.0), (0.3, 1.1, -0.7), (2.0, 5.0, 4.4)] {
        let d = xor_hamiltonian(a, b, g, &cfg);
        let params = TemplateParams::from_decomposition(&model, &d).unwrap();
        assert!(objective(&model, &params, &cfg).unwrap() <= 1e-9);
        let back = spinxor_core::to_decomposition(&model, &params).unwrap();
        assert!(back.max_coeff_diff(&d) <= 1e-15);
    }
    // a restricted model cannot hold these couplings
    let ising = CouplingModel::new(ModelKind::Ising, false);
    assert!(
        TemplateParams::from_decomposition(&ising, &xor_hamiltonian(0.0, 0.0, 0.0, &cfg)).is_err()
    );
}

#[test]
fn half_strength_reference_is_an_incomplete_gate() {
    let cfg = EvolutionConfig::default();
    let model = CouplingModel::new(ModelKind::GeneralTwoSpin, false);
    let d = xor_hamiltonian(0.0, 0.0, 0.0, &cfg).scaled(0.5);
    let params = TemplateParams::from_decomposition(&model, &d).unwrap();
    let v = objective(&model, &params, &cfg).unwrap();
    assert!(v > 1e-3 && v < 1.0, "{v}");
    let zero = TemplateParams(vec![0.0; 27]);
    assert_eq!(objective(&model, &zero, &cfg).unwrap(), 1.0);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn family_always_verifies(a in -10.0f64..10.0, b in -10.0f64..10.0, g in -10.0f64..10.0, dt in 0.1f64..5.0) {
        let cfg = EvolutionConfig::new(dt);
        let report = verify_hamiltonian(&xor_hamiltonian(a, b, g, &cfg), &cfg, DEFAULT_TOL).unwrap();
        prop_assert!(report.passed());
        prop_assert!(report.two_spin_only);
        prop_assert!(report.fidelity >= 1.0 - 1e-9);
    }

    #[test]
    fn decomposition_round_trips(seed in any::<u64>(), scale in 0.01f64..20.0) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let h = random_hermitian(&mut rng, 8, scale);
        let d = decompose(&h).unwrap();
        prop_assert!(reconstruct(&d).max_abs_diff(&h) <= 1e-12 * scale.max(1.0));
        prop_assert!(d.max_imag() <= 1e-12 * scale.max(1.0));
    }

    #[test]
    fn fidelity_stays_in_unit_interval(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = functional_fidelity(&random_unitary(&mut rng, 8)).unwrap();
        prop_assert!((0.0..=1.0).contains(&f));
    }
}
