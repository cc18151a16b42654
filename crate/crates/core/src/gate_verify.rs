//! Checks whether an operator realizes XOR of spins A and B into spin C.
//!
//! For basis inputs `|A B c⟩` the output must lie entirely in the subspace
//! where C equals `A ⊕ B`. The final A and B states and the phase of C are
//! unconstrained, and the initial C state may be any superposition.

use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{evolution_operator, ComplexMatrix, EvolutionConfig};
use crate::pauli::{reconstruct, weight_profile, PauliDecomposition, WeightProfile, DIM};
use crate::xor_family::BasisConvention;

/// Default pass/fail tolerance.
pub const DEFAULT_TOL: f64 = 1e-9;
/// Unitarity required of operators handed to the checks.
pub const INPUT_UNITARY_TOL: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq)]
pub struct GateReport {
    pub unitarity_error: f64,
    pub pattern_error: f64,
    pub truth_table_pass: bool,
    pub fidelity: f64,
    /// Present when the report was produced from a Hamiltonian.
    pub weight_profile: Option<WeightProfile>,
    pub two_spin_only: bool,
}

impl GateReport {
    pub fn passed(&self) -> bool {
        self.truth_table_pass
    }
}

impl fmt::Display for GateReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "unitarity_error={:.9e}", self.unitarity_error)?;
        writeln!(f, "pattern_error={:.9e}", self.pattern_error)?;
        writeln!(
            f,
            "truth_table={}",
            if self.truth_table_pass {
                "PASS"
            } else {
                "FAIL"
            }
        )?;
        writeln!(f, "fidelity={:.9}", self.fidelity)?;
        let w = self.weight_profile.unwrap_or_default();
        for k in 0..4 {
            writeln!(f, "weight{k}={:.9e}", w.get(k))?;
        }
        writeln!(f, "two_spin_only={}", self.two_spin_only)
    }
}

fn check_input(u: &ComplexMatrix) -> Result<f64> {
    u.ensure_dim(DIM)?;
    let deviation = u.unitarity_error();
    if deviation > INPUT_UNITARY_TOL {
        return Err(Error::NotUnitary { deviation });
    }
    Ok(deviation)
}

/// True when row `row` is an allowed output for input column `col`.
fn allowed(row: usize, col: usize) -> bool {
    let (a, b, _) = BasisConvention::bits(col);
    let (_, _, c_out) = BasisConvention::bits(row);
    c_out == a ^ b
}

/// Largest modulus over the 32 entries that must vanish for an XOR-into-C gate,
/// and whether it is at most `tol`.
pub fn pattern_check(u: &ComplexMatrix, tol: f64) -> Result<(bool, f64)> {
    check_input(u)?;
    let mut worst: f64 = 0.0;
    for col in 0..DIM {
        for row in 0..DIM {
            if !allowed(row, col) {
                worst = worst.max(u[(row, col)].norm());
            }
        }
    }
    Ok((worst <= tol, worst))
}

/// Worst-case probability, over inputs (A, B) and every initial state of C,
/// that C reads `A ⊕ B` after the gate.
///
/// For each (A, B) this is the smallest eigenvalue of the 2×2 Gram matrix
/// `M_{cc'} = ⟨ABc| U† Π_{A⊕B} U |ABc'⟩`.
pub fn functional_fidelity(u: &ComplexMatrix) -> Result<f64> {
    check_input(u)?;
    Ok(fidelity_unchecked(u))
}

pub(crate) fn fidelity_unchecked(u: &ComplexMatrix) -> f64 {
    let mut worst = f64::INFINITY;
    for a in 0..2u8 {
        for b in 0..2u8 {
            let target = a ^ b;
            let cols = [
                BasisConvention::index(a, b, 0),
                BasisConvention::index(a, b, 1),
            ];
            let mut gram = [[Complex64::new(0.0, 0.0); 2]; 2];
            for row in 0..DIM {
                if BasisConvention::bits(row).2 != target {
                    continue;
                }
                for (i, &ci) in cols.iter().enumerate() {
                    for (j, &cj) in cols.iter().enumerate() {
                        gram[i][j] += u[(row, ci)].conj() * u[(row, cj)];
                    }
                }
            }
            let (p, q, off) = (gram[0][0].re, gram[1][1].re, gram[0][1].norm());
            let half_gap = 0.5 * (p - q);
            let smallest = 0.5 * (p + q) - (half_gap * half_gap + off * off).sqrt();
            worst = worst.min(smallest);
        }
    }
    worst.clamp(0.0, 1.0)
}

/// Pattern and fidelity checks for a unitary.
pub fn verify_unitary(u: &ComplexMatrix, tol: f64) -> Result<GateReport> {
    let unitarity_error = check_input(u)?;
    let (pass, pattern_error) = pattern_check(u, tol)?;
    Ok(GateReport {
        unitarity_error,
        pattern_error,
        truth_table_pass: pass,
        fidelity: fidelity_unchecked(u),
        weight_profile: None,
        two_spin_only: false,
    })
}

/// Exponentiates `h` over one gate interval and checks the result; also
/// reports which interaction weights `h` contains.
pub fn verify_hamiltonian(
    h: &PauliDecomposition,
    cfg: &EvolutionConfig,
    tol: f64,
) -> Result<GateReport> {
    h.ensure_real(crate::pauli::WEIGHT_CLAIM_TOL)?;
    let u = evolution_operator(&reconstruct(h), cfg)?;
    let mut report = verify_unitary(&u, tol)?;
    let w = weight_profile(h, tol);
    report.two_spin_only = w.two_spin_only(tol);
    report.weight_profile = Some(w);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::kron;
    use crate::pauli::PauliAxis;
    use crate::sampling::random_unitary;
    use crate::xor_family::{reference_hamiltonian, xor_hamiltonian, xor_unitary};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::PI;

    #[test]
    fn exactly_32_forbidden_positions() {
        let n = (0..8)
            .flat_map(|c| (0..8).map(move |r| (r, c)))
            .filter(|&(r, c)| !allowed(r, c))
            .count();
        assert_eq!(n, 32);
        // input |111⟩ (column 0) may reach |110⟩, |100⟩, |010⟩, |000⟩ only
        let rows: Vec<usize> = (0..8).filter(|&r| allowed(r, 0)).collect();
        assert_eq!(rows, vec![1, 3, 5, 7]);
        // input |101⟩ (column 2) must end with C = 1
        let rows: Vec<usize> = (0..8).filter(|&r| allowed(r, 2)).collect();
        assert_eq!(rows, vec![0, 2, 4, 6]);
    }

    #[test]
    fn identity_fails() {
        let id = ComplexMatrix::identity(8);
        let (pass, err) = pattern_check(&id, DEFAULT_TOL).unwrap();
        assert!(!pass);
        assert_eq!(err, 1.0);
        assert_eq!(functional_fidelity(&id).unwrap(), 0.0);
    }

    #[test]
    fn reference_hamiltonian_passes() {
        let cfg = EvolutionConfig::default();
        let r = verify_hamiltonian(&reference_hamiltonian(&cfg), &cfg, DEFAULT_TOL).unwrap();
        assert!(r.truth_table_pass);
        assert!(r.pattern_error <= 1e-10);
        assert!((r.fidelity - 1.0).abs() <= 1e-9);
        assert!(r.two_spin_only);
        assert!(r.unitarity_error <= 1e-10);
    }

    #[test]
    fn zero_hamiltonian_fails() {
        let cfg = EvolutionConfig::default();
        let r = verify_hamiltonian(&PauliDecomposition::new(), &cfg, DEFAULT_TOL).unwrap();
        assert!(!r.truth_table_pass);
        assert_eq!(r.fidelity, 0.0);
    }

    #[test]
    fn specific_angles_pass() {
        let cfg = EvolutionConfig::default();
        let r =
            verify_hamiltonian(&xor_hamiltonian(1.0, 2.0, 3.0, &cfg), &cfg, DEFAULT_TOL).unwrap();
        assert!(r.passed() && r.two_spin_only);
        assert!(r.fidelity >= 1.0 - 1e-9);
    }

    #[test]
    fn constructed_unitaries_pass() {
        let mut rng = ChaCha8Rng::seed_from_u64(30);
        for _ in 0..20 {
            let u = xor_unitary(
                rng.gen_range(0.0..2.0 * PI),
                rng.gen_range(0.0..2.0 * PI),
                rng.gen_range(0.0..2.0 * PI),
            );
            let (pass, err) = pattern_check(&u, DEFAULT_TOL).unwrap();
            assert!(pass && err == 0.0);
            assert!((functional_fidelity(&u).unwrap() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn half_interval_is_partial() {
        let cfg = EvolutionConfig::default();
        let h = reconstruct(&xor_hamiltonian(0.0, 0.0, 0.0, &cfg));
        let u = evolution_operator(&h, &EvolutionConfig::new(0.5)).unwrap();
        let f = functional_fidelity(&u).unwrap();
        assert!(f > 0.0 && f < 1.0, "fidelity {f}");
    }

    #[test]
    fn left_multiplication_by_c_block_diagonal_keeps_verdict() {
        // Any unitary preserving the C=0 / C=1 split leaves the output subspaces unchanged.
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        let gate = xor_unitary(0.3, 1.9, -2.2);
        for _ in 0..10 {
            let ab_part = random_unitary(&mut rng, 4);
            let c_phase = ComplexMatrix::from_diagonal(&[
                Complex64::from_polar(1.0, rng.gen_range(0.0..6.0)),
                Complex64::from_polar(1.0, rng.gen_range(0.0..6.0)),
            ]);
            // block diagonal in C for any ab_part ⊗ diag
            let left = kron(&ab_part, &c_phase);
            let moved = &left * &gate;
            assert!(pattern_check(&moved, DEFAULT_TOL).unwrap().0);
            assert!((functional_fidelity(&moved).unwrap() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn random_unitaries_agree_between_checks() {
        let mut rng = ChaCha8Rng::seed_from_u64(32);
        for _ in 0..100 {
            let u = random_unitary(&mut rng, 8);
            let (pass, _) = pattern_check(&u, DEFAULT_TOL).unwrap();
            let f = functional_fidelity(&u).unwrap();
            assert!((0.0..=1.0).contains(&f));
            assert_eq!(pass, f >= 1.0 - 1e-9);
        }
    }

    #[test]
    fn x_on_c_is_not_xor() {
        // flipping C unconditionally realizes NOT, which matches XOR only when A ⊕ B = 1
        let x_c = kron(&ComplexMatrix::identity(4), &PauliAxis::X.matrix());
        assert!(!pattern_check(&x_c, DEFAULT_TOL).unwrap().0);
        assert_eq!(functional_fidelity(&x_c).unwrap(), 0.0);
    }

    #[test]
    fn non_unitary_input_is_rejected() {
        let m = ComplexMatrix::identity(8).scale_real(0.5);
        assert!(matches!(
            pattern_check(&m, DEFAULT_TOL),
            Err(Error::NotUnitary { .. })
        ));
        assert!(matches!(
            functional_fidelity(&m),
            Err(Error::NotUnitary { .. })
        ));
        assert!(matches!(
            pattern_check(&ComplexMatrix::identity(4), DEFAULT_TOL),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn report_text_layout() {
        let cfg = EvolutionConfig::default();
        let r = verify_hamiltonian(&reference_hamiltonian(&cfg), &cfg, DEFAULT_TOL).unwrap();
        let text = r.to_string();
        let keys: Vec<&str> = text.lines().map(|l| l.split('=').next().unwrap()).collect();
        assert_eq!(
            keys,
            [
                "unitarity_error",
                "pattern_error",
                "truth_table",
                "fidelity",
                "weight0",
                "weight1",
                "weight2",
                "weight3",
                "two_spin_only"
            ]
        );
        assert!(text.contains("truth_table=PASS\n"));
        assert!(text.contains("fidelity=1.000000000\n"));
        assert!(text.contains("two_spin_only=true\n"));
    }
}
