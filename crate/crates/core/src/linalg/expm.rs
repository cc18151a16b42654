//! Time evolution `U = exp(-i H Δt / ħ)` and its minimal-spread inverse.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::eig::{hermitian_eig, normal_eig};
use super::matrix::ComplexMatrix;
use crate::error::{Error, Result};

/// Unitarity required of inputs to [`unitary_log_min_spread`].
pub const UNITARY_TOL: f64 = 1e-10;

/// Spreads closer than this are treated as ties when choosing a branch.
const SPREAD_TIE_TOL: f64 = 1e-9;

/// Gate interval and reduced Planck constant.
///
/// All Hamiltonian coefficients are in units of `ħ/Δt`; `ħ` is 1 internally
/// and `Δt` only enters when converting between `H` and `U`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvolutionConfig {
    delta_t: f64,
    hbar: f64,
}

impl EvolutionConfig {
    /// Panics unless `delta_t` is finite and positive.
    pub fn new(delta_t: f64) -> Self {
        assert!(
            delta_t.is_finite() && delta_t > 0.0,
            "gate interval must be positive, got {delta_t}"
        );
        EvolutionConfig { delta_t, hbar: 1.0 }
    }

    pub fn try_new(delta_t: f64) -> Option<Self> {
        (delta_t.is_finite() && delta_t > 0.0).then(|| Self::new(delta_t))
    }

    pub fn delta_t(&self) -> f64 {
        self.delta_t
    }

    pub fn hbar(&self) -> f64 {
        self.hbar
    }

    /// `ħ/Δt`, the energy unit of all Hamiltonian coefficients.
    pub fn energy_unit(&self) -> f64 {
        self.hbar / self.delta_t
    }

    /// The same configuration with a different gate interval.
    pub fn with_delta_t(&self, delta_t: f64) -> Self {
        Self::new(delta_t)
    }
}

impl Default for EvolutionConfig {
    fn default() -> Self {
        Self::new(1.0)
    }
}

/// `exp(-i h Δt/ħ)` through the Hermitian eigendecomposition of `h`.
pub fn evolution_operator(h: &ComplexMatrix, cfg: &EvolutionConfig) -> Result<ComplexMatrix> {
    let spectrum = hermitian_eig(h)?;
    let scale = cfg.delta_t() / cfg.hbar();
    Ok(spectrum.apply_function(|lambda| Complex64::from_polar(1.0, -lambda.re * scale)))
}

/// Matrix exponential by scaling and squaring of a truncated Taylor series.
///
/// Shares no code with the eigendecomposition path and serves as its
/// independent cross-check.
pub fn expm_series(a: &ComplexMatrix) -> ComplexMatrix {
    let n = a.dim();
    let norm = a.norm_one();
    let mut squarings = 0u32;
    if norm > 0.5 {
        squarings = (norm / 0.5).log2().ceil() as u32;
    }
    let scaled = a.scale_real(0.5f64.powi(squarings as i32));

    // ‖scaled‖ ≤ 1/2, so 30 terms leave a remainder far below f64 resolution.
    let mut result = ComplexMatrix::identity(n);
    let mut term = ComplexMatrix::identity(n);
    for k in 1..=30 {
        term = (&term * &scaled).scale_real(1.0 / k as f64);
        result = &result + &term;
        if term.max_abs() < 1e-18 {
            break;
        }
    }
    for _ in 0..squarings {
        result = &result * &result;
    }
    result
}

/// `exp(-i h Δt/ħ)` through [`expm_series`].
pub fn evolution_operator_series(h: &ComplexMatrix, cfg: &EvolutionConfig) -> ComplexMatrix {
    let generator = h.scale(Complex64::new(0.0, -cfg.delta_t() / cfg.hbar()));
    expm_series(&generator)
}

/// Chooses eigenphases `θ_k` (each congruent mod 2π to the principal phase)
/// with the smallest spread `max θ - min θ`; among minimizers the one with the
/// smallest `max |θ|`.
pub fn min_spread_phases(principal: &[f64]) -> Vec<f64> {
    let n = principal.len();
    if n == 0 {
        return Vec::new();
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| principal[i].total_cmp(&principal[j]));
    let sorted: Vec<f64> = order.iter().map(|&k| principal[k]).collect();

    // Cutting the circle just below sorted[cut] lifts sorted[..cut] by 2π.
    let mut best: Option<(f64, f64, Vec<f64>)> = None;
    for cut in 0..n {
        let base: Vec<f64> = sorted
            .iter()
            .enumerate()
            .map(|(k, &t)| if k < cut { t + 2.0 * PI } else { t })
            .collect();
        let spread = if cut == 0 {
            sorted[n - 1] - sorted[0]
        } else {
            sorted[cut - 1] + 2.0 * PI - sorted[cut]
        };
        for shift in [0.0, -2.0 * PI, 2.0 * PI] {
            let cand: Vec<f64> = base.iter().map(|t| t + shift).collect();
            let peak = cand.iter().fold(0.0f64, |m, t| m.max(t.abs()));
            let better = match &best {
                None => true,
                Some((bs, bp, _)) => {
                    spread < bs - SPREAD_TIE_TOL
                        || (spread <= bs + SPREAD_TIE_TOL && peak < bp - SPREAD_TIE_TOL)
                }
            };
            if better {
                best = Some((spread, peak, cand));
            }
        }
    }

    let chosen = best.expect("at least one candidate").2;
    let mut out = vec![0.0; n];
    for (slot, &k) in order.iter().enumerate() {
        out[k] = chosen[slot];
    }
    out
}

/// Hermitian `h` with `exp(-i h Δt/ħ) = u`, using the minimal-spread branch
/// of the eigenphases of `u`.
pub fn unitary_log_min_spread(u: &ComplexMatrix, cfg: &EvolutionConfig) -> Result<ComplexMatrix> {
    let deviation = u.unitarity_error();
    if deviation > UNITARY_TOL {
        return Err(Error::NotUnitary { deviation });
    }
    let spectrum = normal_eig(u)?;
    let principal: Vec<f64> = spectrum.eigenvalues.iter().map(|z| z.arg()).collect();
    let phases = min_spread_phases(&principal);
    let factor = -cfg.hbar() / cfg.delta_t();
    let diag: Vec<Complex64> = phases
        .iter()
        .map(|&t| Complex64::new(factor * t, 0.0))
        .collect();
    let mut h = spectrum.reassemble(&diag);
    // Remove rounding asymmetry so downstream Hermitian checks see an exact Hermitian matrix.
    let hd = h.dagger();
    h = (&h + &hd).scale_real(0.5);
    Ok(h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pauli::PauliAxis;
    use crate::sampling::random_hermitian;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn zero_generator_gives_identity() {
        let u = evolution_operator(&ComplexMatrix::zeros(8), &EvolutionConfig::default()).unwrap();
        assert_eq!(u, ComplexMatrix::identity(8));
    }

    #[test]
    fn half_pi_sigma_z() {
        let h = PauliAxis::Z.matrix().scale_real(PI / 2.0);
        let u = evolution_operator(&h, &EvolutionConfig::default()).unwrap();
        let expected = ComplexMatrix::from_diagonal(&[c(0.0, -1.0), c(0.0, 1.0)]);
        assert!(u.max_abs_diff(&expected) < 1e-15);
    }

    #[test]
    fn delta_t_scales_the_phase() {
        // h = (π/2)(ħ/Δt) σ_z for Δt = 2 gives the same U as Δt = 1 with half the energy.
        let cfg = EvolutionConfig::new(2.0);
        let h = PauliAxis::Z
            .matrix()
            .scale_real(PI / 2.0 * cfg.energy_unit());
        let u = evolution_operator(&h, &cfg).unwrap();
        let expected = ComplexMatrix::from_diagonal(&[c(0.0, -1.0), c(0.0, 1.0)]);
        assert!(u.max_abs_diff(&expected) < 1e-15);
    }

    #[test]
    fn series_matches_closed_form() {
        let h = PauliAxis::Y.matrix().scale_real(0.8);
        let u = evolution_operator_series(&h, &EvolutionConfig::default());
        // exp(-i θ σ_y) = cos θ - i sin θ σ_y
        let expected = &ComplexMatrix::identity(2).scale_real(0.8f64.cos())
            - &PauliAxis::Y.matrix().scale(c(0.0, 0.8f64.sin()));
        assert!(u.max_abs_diff(&expected) < 1e-15);
    }

    #[test]
    fn evolution_is_unitary_for_random_hermitian() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..100 {
            let h = random_hermitian(&mut rng, 8, 4.0);
            let u = evolution_operator(&h, &EvolutionConfig::default()).unwrap();
            assert!(u.unitarity_error() <= 1e-10);
        }
    }

    #[test]
    fn log_of_identity_is_zero() {
        let h = unitary_log_min_spread(&ComplexMatrix::identity(4), &EvolutionConfig::default())
            .unwrap();
        assert!(h.max_abs() < 1e-15);
    }

    #[test]
    fn log_rejects_non_unitary() {
        let m = ComplexMatrix::identity(2).scale_real(1.1);
        assert!(matches!(
            unitary_log_min_spread(&m, &EvolutionConfig::default()),
            Err(Error::NotUnitary { .. })
        ));
    }

    #[test]
    fn quarter_turn_phases_pick_symmetric_branch() {
        let principal = [-0.75 * PI, -0.25 * PI, 0.25 * PI, 0.75 * PI];
        let chosen = min_spread_phases(&principal);
        for (a, b) in chosen.iter().zip(&principal) {
            assert!((a - b).abs() < 1e-15);
        }
        // Same set presented as π/4 + kπ/2 with one phase wrapped to the other side.
        let wrapped = [0.75 * PI, 0.25 * PI, -0.25 * PI, -0.75 * PI];
        let chosen = min_spread_phases(&wrapped);
        assert!((chosen.iter().cloned().fold(f64::MIN, f64::max) - 0.75 * PI).abs() < 1e-15);
    }

    #[test]
    fn phases_straddling_minus_pi_are_joined() {
        let principal = [PI - 0.1, -PI + 0.1];
        let chosen = min_spread_phases(&principal);
        assert!((chosen[0] - chosen[1]).abs() - 0.2 < 1e-12);
        assert!(chosen.iter().all(|t| t.abs() <= PI + 0.1 + 1e-12));
    }

    #[test]
    fn minimal_spread_prefers_largest_gap() {
        // eigenphases 0, 1, 5: the largest circular gap is between 1 and 5
        let chosen = min_spread_phases(&[0.0, 1.0, 5.0 - 2.0 * PI]);
        let spread = chosen.iter().cloned().fold(f64::MIN, f64::max)
            - chosen.iter().cloned().fold(f64::MAX, f64::min);
        assert!((spread - (1.0 - (5.0 - 2.0 * PI))).abs() < 1e-12);
    }
}
