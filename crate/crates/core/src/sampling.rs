//! Seeded random operators for tests, benches and the reproduction checklist.

use num_complex::Complex64;
use rand::Rng;

use crate::linalg::ComplexMatrix;

fn uniform_complex<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
}

/// Random Hermitian matrix with entries of modulus up to about `scale`.
pub fn random_hermitian<R: Rng + ?Sized>(rng: &mut R, dim: usize, scale: f64) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(dim);
    for i in 0..dim {
        m[(i, i)] = Complex64::new(scale * rng.gen_range(-1.0..1.0), 0.0);
        for j in (i + 1)..dim {
            let z = uniform_complex(rng) * scale;
            m[(i, j)] = z;
            m[(j, i)] = z.conj();
        }
    }
    m
}

/// Random Hermitian matrix whose Frobenius norm, and hence spectral norm, is
/// at most `max_norm`.
pub fn random_hermitian_bounded<R: Rng + ?Sized>(
    rng: &mut R,
    dim: usize,
    max_norm: f64,
) -> ComplexMatrix {
    let m = random_hermitian(rng, dim, 1.0);
    let target = max_norm * rng.gen_range(0.05..1.0);
    let f = m.frobenius_norm();
    if f == 0.0 {
        m
    } else {
        m.scale_real(target / f)
    }
}

/// Random unitary from Gram-Schmidt orthonormalization of random columns.
pub fn random_unitary<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> ComplexMatrix {
    let mut cols: Vec<Vec<Complex64>> = Vec::with_capacity(dim);
    while cols.len() < dim {
        let mut v: Vec<Complex64> = (0..dim).map(|_| uniform_complex(rng)).collect();
        // two passes of classical Gram-Schmidt
        for _ in 0..2 {
            for u in &cols {
                let proj: Complex64 = u.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
                for (x, a) in v.iter_mut().zip(u) {
                    *x -= proj * a;
                }
            }
        }
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm < 1e-6 {
            continue;
        }
        v.iter_mut().for_each(|x| *x /= norm);
        cols.push(v);
    }
    let mut m = ComplexMatrix::zeros(dim);
    for (j, col) in cols.iter().enumerate() {
        m.set_column(j, col);
    }
    m
}
