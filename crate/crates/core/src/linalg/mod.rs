//! Dense complex linear algebra for operators on a few spins.

mod eig;
mod expm;
pub mod format;
mod matrix;

pub use eig::{
    hermitian_eig, normal_eig, normal_eig_with_threshold, Spectrum, DEFAULT_DEGENERACY_THRESHOLD,
    HERMITIAN_TOL, NORMAL_TOL,
};
pub use expm::{
    evolution_operator, evolution_operator_series, expm_series, min_spread_phases,
    unitary_log_min_spread, EvolutionConfig, UNITARY_TOL,
};
pub use matrix::{kron, max_abs_diff_up_to_phase, ComplexMatrix};
