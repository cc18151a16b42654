//! Eigendecomposition of small dense Hermitian and normal matrices.
//!
//! Hermitian matrices are diagonalized with cyclic complex Jacobi rotations.
//! Normal matrices (in practice unitaries) are split into the commuting
//! Hermitian pair `H1 = (U + U^H)/2`, `H2 = (U - U^H)/2i`; `H1` is diagonalized
//! first and `H2` is then diagonalized inside each degenerate eigenspace of `H1`.

use num_complex::Complex64;

use super::matrix::ComplexMatrix;
use crate::error::{Error, Result};

/// Hermiticity required of inputs to [`hermitian_eig`].
pub const HERMITIAN_TOL: f64 = 1e-12;
/// Normality required of inputs to [`normal_eig`].
pub const NORMAL_TOL: f64 = 1e-10;
/// Eigenvalue gap below which two eigenvalues of `H1` share an eigenspace.
pub const DEFAULT_DEGENERACY_THRESHOLD: f64 = 1e-8;

const JACOBI_REL_TOL: f64 = 1e-13;
const JACOBI_MAX_SWEEPS: usize = 64;

/// Eigenvalues paired by index with the orthonormal columns of `eigenvectors`.
#[derive(Debug, Clone)]
pub struct Spectrum {
    pub eigenvalues: Vec<Complex64>,
    pub eigenvectors: ComplexMatrix,
}

impl Spectrum {
    /// `V diag(f(λ)) V^H`.
    pub fn apply_function(&self, f: impl Fn(Complex64) -> Complex64) -> ComplexMatrix {
        let diag: Vec<Complex64> = self.eigenvalues.iter().map(|&l| f(l)).collect();
        self.reassemble(&diag)
    }

    /// `V diag(d) V^H` for an arbitrary diagonal `d`.
    pub fn reassemble(&self, diag: &[Complex64]) -> ComplexMatrix {
        let v = &self.eigenvectors;
        let n = v.dim();
        assert_eq!(diag.len(), n);
        let mut out = ComplexMatrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = Complex64::new(0.0, 0.0);
                for (k, &d) in diag.iter().enumerate() {
                    acc += v[(i, k)] * d * v[(j, k)].conj();
                }
                out[(i, j)] = acc;
            }
        }
        out
    }

    pub fn reconstruct(&self) -> ComplexMatrix {
        self.reassemble(&self.eigenvalues)
    }

    /// Real parts of the eigenvalues.
    pub fn real_eigenvalues(&self) -> Vec<f64> {
        self.eigenvalues.iter().map(|z| z.re).collect()
    }

    pub fn orthonormality_error(&self) -> f64 {
        let v = &self.eigenvectors;
        (&v.dagger() * v).max_abs_diff(&ComplexMatrix::identity(v.dim()))
    }
}

/// Eigendecomposition of a Hermitian matrix. Eigenvalues are real and ascending.
pub fn hermitian_eig(m: &ComplexMatrix) -> Result<Spectrum> {
    m.ensure_hermitian(HERMITIAN_TOL)?;
    let (values, vectors) = jacobi(m);
    Ok(Spectrum {
        eigenvalues: values.into_iter().map(|x| Complex64::new(x, 0.0)).collect(),
        eigenvectors: vectors,
    })
}

/// Eigendecomposition of a normal matrix using the default degeneracy threshold.
pub fn normal_eig(u: &ComplexMatrix) -> Result<Spectrum> {
    normal_eig_with_threshold(u, DEFAULT_DEGENERACY_THRESHOLD)
}

pub fn normal_eig_with_threshold(u: &ComplexMatrix, degeneracy: f64) -> Result<Spectrum> {
    let deviation = u.normality_error();
    if deviation > NORMAL_TOL {
        return Err(Error::NotNormal { deviation });
    }
    let n = u.dim();
    let ud = u.dagger();
    let h1 = (u + &ud).scale_real(0.5);
    let h2 = (u - &ud).scale(Complex64::new(0.0, -0.5));

    let (re_parts, basis) = jacobi(&h1);
    let mut vectors = ComplexMatrix::zeros(n);

    let mut start = 0;
    while start < n {
        let mut end = start + 1;
        while end < n && re_parts[end] - re_parts[end - 1] <= degeneracy {
            end += 1;
        }
        let k = end - start;
        if k == 1 {
            vectors.set_column(start, &basis.column(start));
        } else {
            // Restrict H2 to span{basis[start..end]} and diagonalize there.
            let mut restricted = ComplexMatrix::zeros(k);
            for a in 0..k {
                let va = basis.column(start + a);
                let h2va = mat_vec(&h2, &va);
                for b in 0..k {
                    let vb = basis.column(start + b);
                    restricted[(b, a)] = dot(&vb, &h2va);
                }
            }
            hermitize(&mut restricted);
            let (_, rotation) = jacobi(&restricted);
            for a in 0..k {
                let mut col = vec![Complex64::new(0.0, 0.0); n];
                for b in 0..k {
                    let r = rotation[(b, a)];
                    for (i, c) in col.iter_mut().enumerate() {
                        *c += basis[(i, start + b)] * r;
                    }
                }
                vectors.set_column(start + a, &col);
            }
        }
        start = end;
    }

    // Rayleigh quotients give both parts of each eigenvalue directly from U.
    let eigenvalues = (0..n)
        .map(|k| {
            let v = vectors.column(k);
            dot(&v, &mat_vec(u, &v))
        })
        .collect();
    Ok(Spectrum {
        eigenvalues,
        eigenvectors: vectors,
    })
}

fn mat_vec(m: &ComplexMatrix, v: &[Complex64]) -> Vec<Complex64> {
    (0..m.dim())
        .map(|i| m.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
        .collect()
}

/// `a^H b`
fn dot(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

fn hermitize(m: &mut ComplexMatrix) {
    let n = m.dim();
    for i in 0..n {
        m[(i, i)] = Complex64::new(m[(i, i)].re, 0.0);
        for j in (i + 1)..n {
            let avg = (m[(i, j)] + m[(j, i)].conj()) * 0.5;
            m[(i, j)] = avg;
            m[(j, i)] = avg.conj();
        }
    }
}

/// Cyclic Jacobi for a Hermitian matrix. Returns ascending real eigenvalues
/// and the unitary whose columns are the matching eigenvectors.
fn jacobi(m: &ComplexMatrix) -> (Vec<f64>, ComplexMatrix) {
    let n = m.dim();
    let mut a = m.clone();
    hermitize(&mut a);
    let threshold = JACOBI_REL_TOL * m.frobenius_norm();
    let mut a: Vec<Complex64> = a.entries().to_vec();
    let mut v: Vec<Complex64> = ComplexMatrix::identity(n).entries().to_vec();

    for _ in 0..JACOBI_MAX_SWEEPS {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[i * n + j].norm_sqr())
            .sum::<f64>()
            .sqrt();
        if off <= threshold {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut a, &mut v, n, p, q);
            }
        }
    }

    let diag: Vec<f64> = (0..n).map(|k| a[k * n + k].re).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| diag[i].total_cmp(&diag[j]));
    let values = order.iter().map(|&k| diag[k]).collect();
    let mut vectors = ComplexMatrix::zeros(n);
    for (dst, &src) in order.iter().enumerate() {
        for i in 0..n {
            vectors[(i, dst)] = v[i * n + src];
        }
    }
    (values, vectors)
}

/// One two-sided rotation annihilating `a[p][q]` (row-major `n`×`n` buffers).
///
/// With `a[p][q] = |b| e^{iφ}`, the unitary `G = diag(1, e^{-iφ}) R`, where `R`
/// is the real Jacobi rotation of the symmetric pair `[[a_pp, |b|], [|b|, a_qq]]`.
fn rotate(a: &mut [Complex64], v: &mut [Complex64], n: usize, p: usize, q: usize) {
    let apq = a[p * n + q];
    let b = apq.norm();
    let app = a[p * n + p].re;
    let aqq = a[q * n + q].re;
    // negligible against both diagonal entries: drop it instead of rotating
    if b <= 1e-3 * f64::EPSILON * (app.abs() + aqq.abs()) || b == 0.0 {
        a[p * n + q] = Complex64::new(0.0, 0.0);
        a[q * n + p] = Complex64::new(0.0, 0.0);
        return;
    }
    let phase = apq / b;

    let tau = (aqq - app) / (2.0 * b);
    let t = if tau >= 0.0 {
        1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;

    // G = [[c, s], [-s e^{-iφ}, c e^{-iφ}]] in the (p, q) plane.
    let g_qp = -phase.conj() * s;
    let g_qq = phase.conj() * c;

    // A <- A G (columns p, q)
    for k in 0..n {
        let akp = a[k * n + p];
        let akq = a[k * n + q];
        a[k * n + p] = akp * c + akq * g_qp;
        a[k * n + q] = akp * s + akq * g_qq;
    }
    // A <- G^H A (rows p, q)
    let (gqp_c, gqq_c) = (g_qp.conj(), g_qq.conj());
    for k in 0..n {
        let apk = a[p * n + k];
        let aqk = a[q * n + k];
        a[p * n + k] = apk * c + gqp_c * aqk;
        a[q * n + k] = apk * s + gqq_c * aqk;
    }
    let zero = Complex64::new(0.0, 0.0);
    a[p * n + q] = zero;
    a[q * n + p] = zero;
    a[p * n + p] = Complex64::new(app - t * b, 0.0);
    a[q * n + q] = Complex64::new(aqq + t * b, 0.0);

    for k in 0..n {
        let vkp = v[k * n + p];
        let vkq = v[k * n + q];
        v[k * n + p] = vkp * c + vkq * g_qp;
        v[k * n + q] = vkp * s + vkq * g_qq;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pauli::PauliAxis;
    use crate::sampling::{random_hermitian, random_unitary};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::FRAC_1_SQRT_2;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn diagonal_input_is_sorted() {
        let m = ComplexMatrix::from_real_diagonal(&[3.0, 1.0, 2.0]);
        let s = hermitian_eig(&m).unwrap();
        assert_eq!(s.real_eigenvalues(), vec![1.0, 2.0, 3.0]);
        assert!(s.reconstruct().max_abs_diff(&m) < 1e-15);
    }

    #[test]
    fn sigma_x_spectrum() {
        let s = hermitian_eig(&PauliAxis::X.matrix()).unwrap();
        let ev = s.real_eigenvalues();
        assert!((ev[0] + 1.0).abs() < 1e-15 && (ev[1] - 1.0).abs() < 1e-15);
        // eigenvectors (1, -1)/√2 and (1, 1)/√2 up to phase
        let v0 = s.eigenvectors.column(0);
        let v1 = s.eigenvectors.column(1);
        assert!(((v0[0] * v0[1].conj()).re + 0.5).abs() < 1e-14);
        assert!(((v1[0] * v1[1].conj()).re - 0.5).abs() < 1e-14);
        assert!((v0[0].norm() - FRAC_1_SQRT_2).abs() < 1e-14);
    }

    #[test]
    fn random_hermitian_reconstructs() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..50 {
            let m = random_hermitian(&mut rng, 8, 5.0);
            let s = hermitian_eig(&m).unwrap();
            assert!(s.reconstruct().max_abs_diff(&m) <= 1e-10);
            assert!(s.orthonormality_error() <= 1e-10);
            assert!(s.eigenvalues.iter().all(|z| z.im == 0.0));
            let ev = s.real_eigenvalues();
            assert!(ev.windows(2).all(|w| w[0] <= w[1]));
        }
    }

    #[test]
    fn degenerate_hermitian_is_handled() {
        // I ⊗ σ_z has two-fold degenerate eigenvalues ±1
        let m = crate::linalg::kron(&ComplexMatrix::identity(4), &PauliAxis::Z.matrix());
        let s = hermitian_eig(&m).unwrap();
        assert_eq!(
            s.real_eigenvalues(),
            vec![-1.0, -1.0, -1.0, -1.0, 1.0, 1.0, 1.0, 1.0]
        );
    }

    #[test]
    fn rejects_non_hermitian() {
        let m = ComplexMatrix::from_rows(&[[c(0.0, 0.0), c(1.0, 0.0)], [c(0.0, 0.0), c(0.0, 0.0)]])
            .unwrap();
        assert!(matches!(hermitian_eig(&m), Err(Error::NotHermitian { .. })));
    }

    #[test]
    fn normal_eig_of_diagonal_phase() {
        let m = ComplexMatrix::from_diagonal(&[c(0.0, 1.0), c(0.0, -1.0)]);
        let s = normal_eig(&m).unwrap();
        let mut ev = s.eigenvalues.clone();
        ev.sort_by(|a, b| b.im.total_cmp(&a.im));
        assert!((ev[0] - c(0.0, 1.0)).norm() < 1e-15);
        assert!((ev[1] - c(0.0, -1.0)).norm() < 1e-15);
    }

    #[test]
    fn normal_eig_splits_conjugate_pairs() {
        // diag(i, -i) rotated: H1 is fully degenerate, H2 must separate the pair
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let q = random_unitary(&mut rng, 2);
        let d = ComplexMatrix::from_diagonal(&[c(0.0, 1.0), c(0.0, -1.0)]);
        let m = &(&q * &d) * &q.dagger();
        let s = normal_eig(&m).unwrap();
        assert!(s.reconstruct().max_abs_diff(&m) < 1e-12);
        assert!(s.orthonormality_error() < 1e-12);
    }

    #[test]
    fn random_unitaries_have_unimodular_spectrum() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..50 {
            let u = random_unitary(&mut rng, 8);
            let s = normal_eig(&u).unwrap();
            for z in &s.eigenvalues {
                assert!((z.norm() - 1.0).abs() <= 1e-10);
            }
            assert!(s.orthonormality_error() <= 1e-10);
            assert!(s.reconstruct().max_abs_diff(&u) <= 1e-10);
        }
    }

    #[test]
    fn rejects_non_normal() {
        let m = ComplexMatrix::from_rows(&[[c(1.0, 0.0), c(1.0, 0.0)], [c(0.0, 0.0), c(1.0, 0.0)]])
            .unwrap();
        assert!(matches!(normal_eig(&m), Err(Error::NotNormal { .. })));
    }
}
