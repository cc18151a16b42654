//! Fixtures shared by the criterion benches.

use spinxor_core::{reconstruct, xor_hamiltonian, ComplexMatrix, EvolutionConfig};

/// Matrix of the XOR Hamiltonian at a fixed, generic angle triple.
pub fn sample_hamiltonian() -> ComplexMatrix {
    reconstruct(&xor_hamiltonian(
        0.3,
        1.1,
        -0.7,
        &EvolutionConfig::default(),
    ))
}

/// A fixed point in the 27-parameter general two-spin layout.
pub fn sample_params() -> Vec<f64> {
    (0..27).map(|k| ((k * 7 % 11) as f64 - 5.0) * 0.3).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_are_well_formed() {
        assert!(sample_hamiltonian().is_hermitian(1e-14));
        assert_eq!(sample_params().len(), 27);
    }
}
