use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Dense square complex matrix stored row-major.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(dim: usize) -> Self {
        assert!(dim >= 1, "matrix dimension must be positive");
        ComplexMatrix {
            dim,
            data: vec![ZERO; dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = ONE;
        }
        m
    }

    /// Builds a matrix from row-major entries; `entries.len()` must be a perfect square.
    pub fn from_row_major(entries: Vec<Complex64>) -> Result<Self> {
        let dim = (entries.len() as f64).sqrt().round() as usize;
        if dim == 0 || dim * dim != entries.len() {
            return Err(Error::DimensionMismatch {
                expected: dim.max(1) * dim.max(1),
                found: entries.len(),
            });
        }
        Ok(ComplexMatrix { dim, data: entries })
    }

    pub fn from_rows<R: AsRef<[Complex64]>>(rows: &[R]) -> Result<Self> {
        let dim = rows.len();
        if dim == 0 {
            return Err(Error::DimensionMismatch {
                expected: 1,
                found: 0,
            });
        }
        let mut data = Vec::with_capacity(dim * dim);
        for row in rows {
            let row = row.as_ref();
            if row.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: row.len(),
                });
            }
            data.extend_from_slice(row);
        }
        Ok(ComplexMatrix { dim, data })
    }

    pub fn from_real_diagonal(diag: &[f64]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = Complex64::new(d, 0.0);
        }
        m
    }

    pub fn from_diagonal(diag: &[Complex64]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = d;
        }
        m
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[Complex64] {
        &self.data[i * self.dim..(i + 1) * self.dim]
    }

    pub fn column(&self, j: usize) -> Vec<Complex64> {
        (0..self.dim).map(|i| self[(i, j)]).collect()
    }

    pub fn set_column(&mut self, j: usize, col: &[Complex64]) {
        assert_eq!(col.len(), self.dim);
        for (i, &c) in col.iter().enumerate() {
            self[(i, j)] = c;
        }
    }

    pub fn diagonal(&self) -> Vec<Complex64> {
        (0..self.dim).map(|i| self[(i, i)]).collect()
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> Self {
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out[(j, i)] = self[(i, j)].conj();
            }
        }
        out
    }

    pub fn transpose(&self) -> Self {
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out[(j, i)] = self[(i, j)];
            }
        }
        out
    }

    pub fn scale(&self, s: Complex64) -> Self {
        self.map(|z| z * s)
    }

    pub fn scale_real(&self, s: f64) -> Self {
        self.map(|z| z * s)
    }

    pub fn map(&self, f: impl Fn(Complex64) -> Complex64) -> Self {
        ComplexMatrix {
            dim: self.dim,
            data: self.data.iter().map(|&z| f(z)).collect(),
        }
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Induced 1-norm (maximum absolute column sum).
    pub fn norm_one(&self) -> f64 {
        (0..self.dim)
            .map(|j| (0..self.dim).map(|i| self[(i, j)].norm()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Largest entrywise modulus of `self - other`. Panics on dimension mismatch.
    pub fn max_abs_diff(&self, other: &ComplexMatrix) -> f64 {
        assert_eq!(self.dim, other.dim, "dimension mismatch in comparison");
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn hermiticity_error(&self) -> f64 {
        let n = self.dim;
        let mut worst: f64 = 0.0;
        for i in 0..n {
            for j in i..n {
                worst = worst.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        worst
    }

    pub fn unitarity_error(&self) -> f64 {
        (self * &self.dagger()).max_abs_diff(&Self::identity(self.dim))
    }

    pub fn normality_error(&self) -> f64 {
        let d = self.dagger();
        (self * &d).max_abs_diff(&(&d * self))
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermiticity_error() <= tol
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        self.unitarity_error() <= tol
    }

    pub fn ensure_hermitian(&self, tol: f64) -> Result<()> {
        let deviation = self.hermiticity_error();
        if deviation <= tol {
            Ok(())
        } else {
            Err(Error::NotHermitian { deviation })
        }
    }

    pub fn ensure_unitary(&self, tol: f64) -> Result<()> {
        let deviation = self.unitarity_error();
        if deviation <= tol {
            Ok(())
        } else {
            Err(Error::NotUnitary { deviation })
        }
    }

    pub fn ensure_dim(&self, expected: usize) -> Result<()> {
        if self.dim == expected {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected,
                found: self.dim,
            })
        }
    }

    /// Copy of the `size`×`size` block whose top-left corner is `(row, col)`.
    pub fn block(&self, row: usize, col: usize, size: usize) -> Self {
        assert!(row + size <= self.dim && col + size <= self.dim);
        let mut out = Self::zeros(size);
        for i in 0..size {
            for j in 0..size {
                out[(i, j)] = self[(row + i, col + j)];
            }
        }
        out
    }

    /// Block-diagonal direct sum `[[self, 0], [0, other]]`.
    pub fn direct_sum(&self, other: &ComplexMatrix) -> Self {
        let n = self.dim + other.dim;
        let mut out = Self::zeros(n);
        for i in 0..self.dim {
            for j in 0..self.dim {
                out[(i, j)] = self[(i, j)];
            }
        }
        let off = self.dim;
        for i in 0..other.dim {
            for j in 0..other.dim {
                out[(off + i, off + j)] = other[(i, j)];
            }
        }
        out
    }

    /// Multiplies every entry by `e^{-i arg(z)}`, where `z` is the first entry
    /// (row-major) whose modulus exceeds `threshold`. Used to compare operators
    /// that may differ by a global phase.
    pub fn phase_aligned(&self, threshold: f64) -> Self {
        match self.data.iter().find(|z| z.norm() > threshold) {
            Some(z) => {
                let phase = Complex64::from_polar(1.0, -z.arg());
                self.scale(phase)
            }
            None => self.clone(),
        }
    }
}

/// Kronecker product: block `(i, j)` of the result is `a[i][j] * b`.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let (na, nb) = (a.dim, b.dim);
    let mut out = ComplexMatrix::zeros(na * nb);
    for i in 0..na {
        for j in 0..na {
            let aij = a[(i, j)];
            if aij == ZERO {
                continue;
            }
            for k in 0..nb {
                for l in 0..nb {
                    out[(i * nb + k, j * nb + l)] = aij * b[(k, l)];
                }
            }
        }
    }
    out
}

/// Maximum entrywise distance between `a` and `b` after removing the global
/// phase of each (aligned on the first entry of `a` above `threshold`).
pub fn max_abs_diff_up_to_phase(a: &ComplexMatrix, b: &ComplexMatrix, threshold: f64) -> f64 {
    let pivot = a.data.iter().position(|z| z.norm() > threshold);
    match pivot {
        Some(k) => {
            let (za, zb) = (a.data[k], b.data[k]);
            if zb.norm() <= f64::EPSILON {
                return a.max_abs_diff(b).max(za.norm());
            }
            let rel = Complex64::from_polar(1.0, za.arg() - zb.arg());
            a.max_abs_diff(&b.scale(rel))
        }
        None => a.max_abs_diff(b),
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;

    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.dim + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.dim + j]
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch in product");
        let n = self.dim;
        let mut out = ComplexMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a == ZERO {
                    continue;
                }
                let rrow = &rhs.data[k * n..(k + 1) * n];
                let orow = &mut out.data[i * n..(i + 1) * n];
                for (o, &r) in orow.iter_mut().zip(rrow) {
                    *o += a * r;
                }
            }
        }
        out
    }
}

impl Mul for ComplexMatrix {
    type Output = ComplexMatrix;

    fn mul(self, rhs: ComplexMatrix) -> ComplexMatrix {
        &self * &rhs
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch in sum");
        ComplexMatrix {
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Add for ComplexMatrix {
    type Output = ComplexMatrix;

    fn add(self, rhs: ComplexMatrix) -> ComplexMatrix {
        &self + &rhs
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch in difference");
        ComplexMatrix {
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Sub for ComplexMatrix {
    type Output = ComplexMatrix;

    fn sub(self, rhs: ComplexMatrix) -> ComplexMatrix {
        &self - &rhs
    }
}

impl Neg for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn neg(self) -> ComplexMatrix {
        self.map(|z| -z)
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix({}x{}) [", self.dim, self.dim)?;
        for i in 0..self.dim {
            write!(f, "  ")?;
            for z in self.row(i) {
                write!(f, "{:>10.5}{:+.5}i ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pauli::PauliAxis;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn kron_of_identities_is_identity() {
        let i2 = ComplexMatrix::identity(2);
        assert_eq!(kron(&i2, &i2), ComplexMatrix::identity(4));
    }

    #[test]
    fn kron_z_y_has_signed_y_blocks() {
        let z = PauliAxis::Z.matrix();
        let y = PauliAxis::Y.matrix();
        let zy = kron(&z, &y);
        assert_eq!(zy.block(0, 0, 2), y);
        assert_eq!(zy.block(2, 2, 2), -&y);
        assert_eq!(zy.block(0, 2, 2), ComplexMatrix::zeros(2));
        assert_eq!(zy.block(2, 0, 2), ComplexMatrix::zeros(2));
    }

    #[test]
    fn from_rows_rejects_ragged_input() {
        let rows = vec![vec![c(1.0, 0.0), c(0.0, 0.0)], vec![c(1.0, 0.0)]];
        assert!(matches!(
            ComplexMatrix::from_rows(&rows),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(ComplexMatrix::from_row_major(vec![ZERO; 3]).is_err());
    }

    #[test]
    fn direct_sum_and_block_are_inverse() {
        let a =
            ComplexMatrix::from_rows(&[[c(1.0, 2.0), c(3.0, 0.0)], [c(0.0, -1.0), c(4.0, 4.0)]])
                .unwrap();
        let b = PauliAxis::Y.matrix();
        let s = a.direct_sum(&b);
        assert_eq!(s.block(0, 0, 2), a);
        assert_eq!(s.block(2, 2, 2), b);
        assert_eq!(s.block(0, 2, 2), ComplexMatrix::zeros(2));
    }

    #[test]
    fn phase_difference_is_removed() {
        let y = PauliAxis::Y.matrix();
        let shifted = y.scale(Complex64::from_polar(1.0, 0.7));
        assert!(max_abs_diff_up_to_phase(&y, &shifted, 1e-12) < 1e-15);
        assert!(y.max_abs_diff(&shifted) > 0.5);
    }

    #[test]
    fn pauli_matrices_are_hermitian_and_unitary() {
        for axis in PauliAxis::ALL {
            let m = axis.matrix();
            assert_eq!(m.hermiticity_error(), 0.0);
            assert_eq!(m.unitarity_error(), 0.0);
        }
    }
}
