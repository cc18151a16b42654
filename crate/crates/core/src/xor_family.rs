//! The parametrized three-spin XOR family.
//!
//! The gate unitary is block diagonal in spin A, `U = V ⊕ W`, with `V` (A = 1)
//! and `W` (A = 0) single-phase permutations on the B⊗C space. Three free
//! angles (α, β, γ) fix the remaining five phases so that the Hamiltonian
//! `H = i (ħ/Δt) log U` contains two-spin terms only.

use std::f64::consts::{FRAC_PI_4, PI, SQRT_2};

use num_complex::Complex64;

use crate::error::Result;
use crate::linalg::{kron, ComplexMatrix, EvolutionConfig};
use crate::pauli::{PauliAxis, PauliDecomposition, PauliString};

/// Ordering of the eight basis states `|ABC⟩`: `|111⟩, |110⟩, …, |000⟩`.
///
/// Bit 1 is spin up (σ_z = +1), bit 0 spin down.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct BasisConvention;

impl BasisConvention {
    pub fn index(a: u8, b: u8, c: u8) -> usize {
        debug_assert!(a <= 1 && b <= 1 && c <= 1);
        7 - (4 * a as usize + 2 * b as usize + c as usize)
    }

    /// Bits `(A, B, C)` of basis state `index`.
    pub fn bits(index: usize) -> (u8, u8, u8) {
        assert!(index < 8);
        let v = 7 - index;
        ((v >> 2) as u8 & 1, (v >> 1) as u8 & 1, v as u8 & 1)
    }

    pub fn label(index: usize) -> String {
        let (a, b, c) = Self::bits(index);
        format!("|{a}{b}{c}>")
    }
}

/// The eight phases of V and W plus their quarter sums μ, ν.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AngleParameters {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    pub delta: f64,
    pub rho: f64,
    pub omega: f64,
    pub xi: f64,
    pub eta: f64,
    pub mu: f64,
    pub nu: f64,
}

impl AngleParameters {
    /// Eight independent phases; μ and ν are the quarter sums of the V and W phases.
    #[allow(clippy::too_many_arguments)]
    pub fn unconstrained(
        alpha: f64,
        beta: f64,
        gamma: f64,
        delta: f64,
        rho: f64,
        omega: f64,
        xi: f64,
        eta: f64,
    ) -> Self {
        AngleParameters {
            alpha,
            beta,
            gamma,
            delta,
            rho,
            omega,
            xi,
            eta,
            mu: (alpha + beta + gamma + delta) / 4.0,
            nu: (rho + omega + xi + eta) / 4.0,
        }
    }

    /// Recomputes μ from the V phases.
    pub fn mu_from_phases(&self) -> f64 {
        (self.alpha + self.beta + self.gamma + self.delta) / 4.0
    }

    /// Recomputes ν from the W phases.
    pub fn nu_from_phases(&self) -> f64 {
        (self.rho + self.omega + self.xi + self.eta) / 4.0
    }
}

/// Derived phases for free angles (α, β, γ).
///
/// The derived angles are not reduced mod 2π, so μ = ν = −3π/4 exactly up to
/// the rounding of π.
pub fn constrained_angles(alpha: f64, beta: f64, gamma: f64) -> AngleParameters {
    let sum = alpha + beta + gamma;
    AngleParameters::unconstrained(
        alpha,
        beta,
        gamma,
        -3.0 * PI - sum,
        -PI + beta,
        -2.0 * PI - sum,
        -PI + gamma,
        PI + alpha,
    )
}

fn cis(theta: f64) -> Complex64 {
    Complex64::from_polar(1.0, theta)
}

fn place(entries: [(usize, usize, Complex64); 4]) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(4);
    for (i, j, z) in entries {
        m[(i, j)] = z;
    }
    m
}

/// V: phases e^{iδ}, e^{iα}, e^{iβ}, e^{iγ} at (1,3), (2,1), (3,4), (4,2) (1-indexed).
pub fn build_v(p: &AngleParameters) -> ComplexMatrix {
    place([
        (0, 2, cis(p.delta)),
        (1, 0, cis(p.alpha)),
        (2, 3, cis(p.beta)),
        (3, 1, cis(p.gamma)),
    ])
}

/// W: phases e^{iρ}, e^{iω}, e^{iξ}, e^{iη} at (1,2), (2,4), (3,1), (4,3) (1-indexed).
pub fn build_w(p: &AngleParameters) -> ComplexMatrix {
    place([
        (0, 1, cis(p.rho)),
        (1, 3, cis(p.omega)),
        (2, 0, cis(p.xi)),
        (3, 2, cis(p.eta)),
    ])
}

/// Block-diagonal `[[V, 0], [0, W]]`.
pub fn build_u(v: &ComplexMatrix, w: &ComplexMatrix) -> Result<ComplexMatrix> {
    v.ensure_dim(4)?;
    w.ensure_dim(4)?;
    Ok(v.direct_sum(w))
}

/// Lifts a pair of 4×4 B⊗C operators to `((1+σ_zA) X + (1−σ_zA) Y) / 2`.
pub fn lift_by_sigma_z_a(upper: &ComplexMatrix, lower: &ComplexMatrix) -> ComplexMatrix {
    let sum = upper + lower;
    let diff = upper - lower;
    let id = ComplexMatrix::identity(2);
    let z = PauliAxis::Z.matrix();
    (&kron(&id, &sum) + &kron(&z, &diff)).scale_real(0.5)
}

/// Assembles `H` from `P+Q` and `P−Q` via `2H = (P+Q) + σ_zA (P−Q)`.
pub fn assemble_from_sum_and_difference(
    p_plus_q: &ComplexMatrix,
    p_minus_q: &ComplexMatrix,
) -> ComplexMatrix {
    let id = ComplexMatrix::identity(2);
    let z = PauliAxis::Z.matrix();
    (&kron(&id, p_plus_q) + &kron(&z, p_minus_q)).scale_real(0.5)
}

/// Closed-form logarithm `p` with `exp(i p) = V`, eigenvalues μ + kπ/2.
///
/// μ is recomputed from the V phases, so unconstrained angles are accepted.
pub fn p_matrix(p: &AngleParameters) -> ComplexMatrix {
    let (a, b, g, d) = (p.alpha, p.beta, p.gamma, p.delta);
    let mu = p.mu_from_phases();
    let diag = Complex64::new(4.0 / PI * mu + 3.0, 0.0);
    let one_plus_i = Complex64::new(1.0, 1.0);
    let one_minus_i = Complex64::new(1.0, -1.0);
    let rows = [
        [
            diag,
            -one_plus_i * cis(mu - a),
            -one_minus_i * cis(d - mu),
            -cis(2.0 * mu - a - g),
        ],
        [
            -one_minus_i * cis(a - mu),
            diag,
            -cis(2.0 * mu - b - g),
            -one_plus_i * cis(mu - g),
        ],
        [
            -one_plus_i * cis(mu - d),
            -cis(b + g - 2.0 * mu),
            diag,
            -one_minus_i * cis(b - mu),
        ],
        [
            -cis(a + g - 2.0 * mu),
            -one_minus_i * cis(g - mu),
            -one_plus_i * cis(mu - b),
            diag,
        ],
    ];
    ComplexMatrix::from_rows(&rows)
        .expect("4x4 literal")
        .scale_real(FRAC_PI_4)
}

/// Closed-form logarithm `q` with `exp(i q) = W`, eigenvalues ν + kπ/2.
pub fn q_matrix(p: &AngleParameters) -> ComplexMatrix {
    let (r, w, x, e) = (p.rho, p.omega, p.xi, p.eta);
    let nu = p.nu_from_phases();
    let diag = Complex64::new(4.0 / PI * nu + 3.0, 0.0);
    let one_plus_i = Complex64::new(1.0, 1.0);
    let one_minus_i = Complex64::new(1.0, -1.0);
    let rows = [
        [
            diag,
            -one_minus_i * cis(r - nu),
            -one_plus_i * cis(nu - x),
            -cis(r + w - 2.0 * nu),
        ],
        [
            -one_plus_i * cis(nu - r),
            diag,
            -cis(w + e - 2.0 * nu),
            -one_minus_i * cis(w - nu),
        ],
        [
            -one_minus_i * cis(x - nu),
            -cis(2.0 * nu - w - e),
            diag,
            -one_plus_i * cis(nu - e),
        ],
        [
            -cis(2.0 * nu - r - w),
            -one_plus_i * cis(nu - w),
            -one_minus_i * cis(e - nu),
            diag,
        ],
    ];
    ComplexMatrix::from_rows(&rows)
        .expect("4x4 literal")
        .scale_real(FRAC_PI_4)
}

/// Prefactor `−√2 π ħ i / (4Δt)` shared by the closed forms of P ± Q.
fn sum_difference_prefactor(cfg: &EvolutionConfig) -> Complex64 {
    Complex64::new(0.0, -SQRT_2 * PI * cfg.energy_unit() / 4.0)
}

/// `P + Q` in closed form for constrained angles (only α, β, γ are read).
pub fn p_plus_q(p: &AngleParameters, cfg: &EvolutionConfig) -> ComplexMatrix {
    let (a, b, g) = (p.alpha, p.beta, p.gamma);
    let s = a + b + g;
    let zero = Complex64::new(0.0, 0.0);
    let rows = [
        [
            zero,
            cis(-a) + cis(b),
            cis(-s) - cis(-g),
            -cis(-(a + g)) * SQRT_2,
        ],
        [
            -cis(a) - cis(-b),
            zero,
            -cis(-(b + g)) * SQRT_2,
            cis(-g) - cis(-s),
        ],
        [
            cis(g) - cis(s),
            cis(b + g) * SQRT_2,
            zero,
            -cis(-a) - cis(b),
        ],
        [cis(a + g) * SQRT_2, cis(s) - cis(g), cis(a) + cis(-b), zero],
    ];
    ComplexMatrix::from_rows(&rows)
        .expect("4x4 literal")
        .scale(sum_difference_prefactor(cfg))
}

/// `P − Q` in closed form for constrained angles (only α, β, γ are read).
pub fn p_minus_q(p: &AngleParameters, cfg: &EvolutionConfig) -> ComplexMatrix {
    let (a, b, g) = (p.alpha, p.beta, p.gamma);
    let s = a + b + g;
    let zero = Complex64::new(0.0, 0.0);
    let rows = [
        [zero, cis(-a) - cis(b), cis(-s) + cis(-g), zero],
        [-cis(a) + cis(-b), zero, zero, cis(-s) + cis(-g)],
        [-cis(s) - cis(g), zero, zero, cis(-a) - cis(b)],
        [zero, -cis(s) - cis(g), -cis(a) + cis(-b), zero],
    ];
    ComplexMatrix::from_rows(&rows)
        .expect("4x4 literal")
        .scale(sum_difference_prefactor(cfg))
}

/// Deviation of a 4×4 matrix from the template
/// `I_B ⊗ [[0, X], [X*, 0]] + [[0, Y], [Y*, 0]] ⊗ I_C`:
/// the largest of the diagonal entries, the (1,4)/(2,3) corners and their
/// mirrors, and the mismatches (1,2)−(3,4) and (1,3)−(2,4).
pub fn linear_form_deviation(m: &ComplexMatrix) -> f64 {
    let zeros = [
        (0, 0),
        (1, 1),
        (2, 2),
        (3, 3),
        (0, 3),
        (3, 0),
        (1, 2),
        (2, 1),
    ];
    let pairs = [
        ((0, 1), (2, 3)),
        ((0, 2), (1, 3)),
        ((1, 0), (3, 2)),
        ((2, 0), (3, 1)),
    ];
    let z = zeros.iter().map(|&ij| m[ij].norm()).fold(0.0, f64::max);
    let p = pairs
        .iter()
        .map(|&(x, y)| (m[x] - m[y]).norm())
        .fold(0.0, f64::max);
    z.max(p)
}

fn axis(c: char) -> PauliAxis {
    PauliAxis::from_symbol(c).expect("valid axis symbol")
}

fn string(label: &str) -> PauliString {
    let c: Vec<char> = label.chars().collect();
    PauliString::new(axis(c[0]), axis(c[1]), axis(c[2]))
}

/// The two-spin XOR Hamiltonian for free angles (α, β, γ), as Pauli terms in
/// absolute units (coefficients carry the factor `ħ/Δt`).
pub fn xor_hamiltonian(
    alpha: f64,
    beta: f64,
    gamma: f64,
    cfg: &EvolutionConfig,
) -> PauliDecomposition {
    let (a, b, g) = (alpha, beta, gamma);
    let s = a + b + g;
    let (sin, cos) = (f64::sin, f64::cos);
    let inner = [
        ("ZIX", SQRT_2 * (sin(a) + sin(b))),
        ("ZIY", -SQRT_2 * (cos(a) - cos(b))),
        ("ZXI", SQRT_2 * (sin(g) + sin(s))),
        ("ZYI", -SQRT_2 * (cos(g) + cos(s))),
        ("IZX", SQRT_2 * (sin(a) - sin(b))),
        ("IZY", -SQRT_2 * (cos(a) + cos(b))),
        ("IXZ", -SQRT_2 * (sin(g) - sin(s))),
        ("IYZ", SQRT_2 * (cos(g) - cos(s))),
        ("IXX", -(sin(a + g) + sin(b + g))),
        ("IXY", cos(a + g) - cos(b + g)),
        ("IYX", cos(a + g) + cos(b + g)),
        ("IYY", sin(a + g) - sin(b + g)),
    ];
    let prefactor = -PI / 8.0 * cfg.energy_unit();
    PauliDecomposition::from_real_terms(
        inner
            .into_iter()
            .map(|(label, c)| (string(label), prefactor * c)),
    )
}

/// The three-term special case `(π ħ/4Δt)(√2 σ_zA σ_yB + √2 σ_zB σ_yC − σ_yB σ_xC)`.
pub fn reference_hamiltonian(cfg: &EvolutionConfig) -> PauliDecomposition {
    let unit = PI / 4.0 * cfg.energy_unit();
    PauliDecomposition::from_real_terms([
        (string("ZYI"), SQRT_2 * unit),
        (string("IZY"), SQRT_2 * unit),
        (string("IYX"), -unit),
    ])
}

/// The gate unitary `V ⊕ W` for free angles (α, β, γ).
pub fn xor_unitary(alpha: f64, beta: f64, gamma: f64) -> ComplexMatrix {
    let p = constrained_angles(alpha, beta, gamma);
    build_v(&p).direct_sum(&build_w(&p))
}
