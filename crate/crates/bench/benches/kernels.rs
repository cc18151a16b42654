use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use spinxor_bench::{sample_hamiltonian, sample_params};
use spinxor_core::gate_verify::DEFAULT_TOL;
use spinxor_core::linalg::evolution_operator_series;
use spinxor_core::{
    decompose, evolution_operator, functional_fidelity, hermitian_eig, objective,
    unitary_log_min_spread, verify_hamiltonian, xor_hamiltonian, CouplingModel, EvolutionConfig,
    ModelKind, TemplateParams,
};

fn linalg(c: &mut Criterion) {
    let h = sample_hamiltonian();
    let cfg = EvolutionConfig::default();
    let u = evolution_operator(&h, &cfg).unwrap();
    c.bench_function("hermitian_eig_8x8", |b| {
        b.iter(|| hermitian_eig(black_box(&h)).unwrap())
    });
    c.bench_function("evolution_operator_eig", |b| {
        b.iter(|| evolution_operator(black_box(&h), &cfg).unwrap())
    });
    c.bench_function("evolution_operator_series", |b| {
        b.iter(|| evolution_operator_series(black_box(&h), &cfg))
    });
    c.bench_function("unitary_log_min_spread", |b| {
        b.iter(|| unitary_log_min_spread(black_box(&u), &cfg).unwrap())
    });
    c.bench_function("pauli_decompose", |b| {
        b.iter(|| decompose(black_box(&h)).unwrap())
    });
}

fn gates(c: &mut Criterion) {
    let cfg = EvolutionConfig::default();
    let d = xor_hamiltonian(0.3, 1.1, -0.7, &cfg);
    let u = evolution_operator(&sample_hamiltonian(), &cfg).unwrap();
    c.bench_function("functional_fidelity", |b| {
        b.iter(|| functional_fidelity(black_box(&u)).unwrap())
    });
    c.bench_function("verify_hamiltonian", |b| {
        b.iter(|| verify_hamiltonian(black_box(&d), &cfg, DEFAULT_TOL).unwrap())
    });

    let model = CouplingModel::new(ModelKind::GeneralTwoSpin, false);
    let params = TemplateParams(sample_params());
    c.bench_function("search_objective_general", |b| {
        b.iter(|| objective(&model, black_box(&params), &cfg).unwrap())
    });
}

criterion_group!(benches, linalg, gates);
criterion_main!(benches);
