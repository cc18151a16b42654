//! Design and verification of a three-spin XOR gate built from two-spin
//! interactions.
//!
//! Spins A and B are inputs, spin C receives `A ⊕ B`. The crate provides:
//!
//! * [`linalg`]: dense complex matrices, Hermitian and normal
//!   eigendecompositions, `exp(-iHΔt/ħ)` and a minimal-spread logarithm;
//! * [`pauli`]: Pauli strings on three spins and operator decomposition;
//! * [`xor_family`]: the three-parameter family of XOR unitaries and their
//!   closed-form two-spin Hamiltonians;
//! * [`gate_verify`]: truth-table and fidelity checks for any candidate;
//! * [`ham_search`]: Nelder–Mead search over Ising, XY, Heisenberg and
//!   general two-spin coupling templates;
//! * [`reproduce`]: the full checklist of claims behind the construction.
//!
//! Hamiltonian coefficients are expressed with `ħ = 1`; a Hamiltonian acting
//! for one gate interval `Δt` has coefficients in units of `1/Δt`.

pub mod error;
pub mod gate_verify;
pub mod ham_search;
pub mod linalg;
pub mod pauli;
pub mod reproduce;
pub mod sampling;
pub mod xor_family;

pub use error::{Error, Result};
pub use gate_verify::{functional_fidelity, pattern_check, verify_hamiltonian, GateReport};
pub use ham_search::{
    multi_start_search, nelder_mead, objective, to_decomposition, CouplingModel, ModelKind,
    NelderMeadOptions, SearchResult, TemplateParams,
};
pub use linalg::{
    evolution_operator, hermitian_eig, kron, normal_eig, unitary_log_min_spread, ComplexMatrix,
    EvolutionConfig, Spectrum,
};
pub use pauli::{
    decompose, reconstruct, weight_profile, PauliAxis, PauliDecomposition, PauliString,
    WeightProfile,
};
pub use xor_family::{
    constrained_angles, reference_hamiltonian, xor_hamiltonian, AngleParameters, BasisConvention,
};
