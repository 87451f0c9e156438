//! Dense complex square matrices.
//!
//! Every operator in this crate is small (at most 16×16), so storage is a
//! plain dense `nalgebra` matrix. The wrapper keeps the surface narrow and
//! adds the max-norm residuals the verification suites are written in.

use std::ops::{Add, Mul, Neg, Sub};

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Inputs with any entry larger than this are refused by [`matrix_exponential`].
pub const EXP_ENTRY_LIMIT: f64 = 1e8;

pub const ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub const ONE: Complex64 = Complex64::new(1.0, 0.0);
pub const I: Complex64 = Complex64::new(0.0, 1.0);

#[derive(Debug, Clone, PartialEq)]
pub struct DenseComplexMatrix(DMatrix<Complex64>);

impl DenseComplexMatrix {
    pub fn zeros(dim: usize) -> Self {
        Self(DMatrix::zeros(dim, dim))
    }

    pub fn identity(dim: usize) -> Self {
        Self(DMatrix::identity(dim, dim))
    }

    /// Builds a matrix from row-major entries.
    pub fn from_row_major(dim: usize, entries: &[Complex64]) -> Result<Self> {
        if entries.len() != dim * dim {
            return Err(Error::DimensionMismatch {
                left: dim * dim,
                right: entries.len(),
            });
        }
        Ok(Self(DMatrix::from_row_slice(dim, dim, entries)))
    }

    pub fn from_fn(dim: usize, f: impl FnMut(usize, usize) -> Complex64) -> Self {
        Self(DMatrix::from_fn(dim, dim, f))
    }

    pub fn from_diagonal(diag: &[Complex64]) -> Self {
        let n = diag.len();
        Self::from_fn(n, |r, c| if r == c { diag[r] } else { ZERO })
    }

    pub fn from_nalgebra(m: DMatrix<Complex64>) -> Result<Self> {
        if m.nrows() != m.ncols() {
            return Err(Error::NotSquare {
                rows: m.nrows(),
                cols: m.ncols(),
            });
        }
        Ok(Self(m))
    }

    pub fn as_nalgebra(&self) -> &DMatrix<Complex64> {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.nrows()
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.0[(row, col)]
    }

    pub fn set(&mut self, row: usize, col: usize, value: Complex64) {
        self.0[(row, col)] = value;
    }

    pub fn row_major(&self) -> Vec<Complex64> {
        let n = self.dim();
        (0..n * n).map(|k| self.0[(k / n, k % n)]).collect()
    }

    pub fn adjoint(&self) -> Self {
        Self(self.0.adjoint())
    }

    pub fn scale(&self, z: Complex64) -> Self {
        Self(&self.0 * z)
    }

    pub fn scale_re(&self, x: f64) -> Self {
        self.scale(Complex64::new(x, 0.0))
    }

    pub fn trace(&self) -> Complex64 {
        self.0.trace()
    }

    /// Largest entry modulus.
    pub fn max_norm(&self) -> f64 {
        self.0.iter().fold(0.0, |m, z| m.max(z.norm()))
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        debug_assert_eq!(self.dim(), other.dim());
        self.0
            .iter()
            .zip(other.0.iter())
            .fold(0.0, |m, (a, b)| m.max((a - b).norm()))
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.max_abs_diff(&self.adjoint()) <= tol
    }

    pub fn is_diagonal(&self, tol: f64) -> bool {
        let n = self.dim();
        (0..n).all(|r| (0..n).all(|c| r == c || self.0[(r, c)].norm() <= tol))
    }

    pub fn checked_mul(&self, rhs: &Self) -> Result<Self> {
        self.ensure_same_dim(rhs)?;
        Ok(Self(&self.0 * &rhs.0))
    }

    pub fn apply(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(v.len(), self.dim(), "vector length must equal matrix dimension");
        let n = self.dim();
        (0..n).map(|r| (0..n).map(|c| self.0[(r, c)] * v[c]).sum()).collect()
    }

    /// `⟨u|M|v⟩`.
    pub fn expectation(&self, u: &[Complex64], v: &[Complex64]) -> Complex64 {
        let mv = self.apply(v);
        u.iter().zip(mv.iter()).map(|(a, b)| a.conj() * b).sum()
    }

    /// Eigenvalues of a Hermitian matrix, sorted ascending.
    pub fn hermitian_eigenvalues(&self) -> Vec<f64> {
        let eig = self.0.clone().symmetric_eigen();
        let mut vals: Vec<f64> = eig.eigenvalues.iter().copied().collect();
        vals.sort_by(|a, b| a.total_cmp(b));
        vals
    }

    fn ensure_same_dim(&self, rhs: &Self) -> Result<()> {
        if self.dim() != rhs.dim() {
            return Err(Error::DimensionMismatch {
                left: self.dim(),
                right: rhs.dim(),
            });
        }
        Ok(())
    }
}

impl Add for &DenseComplexMatrix {
    type Output = DenseComplexMatrix;
    fn add(self, rhs: Self) -> DenseComplexMatrix {
        DenseComplexMatrix(&self.0 + &rhs.0)
    }
}

impl Sub for &DenseComplexMatrix {
    type Output = DenseComplexMatrix;
    fn sub(self, rhs: Self) -> DenseComplexMatrix {
        DenseComplexMatrix(&self.0 - &rhs.0)
    }
}

impl Mul for &DenseComplexMatrix {
    type Output = DenseComplexMatrix;
    fn mul(self, rhs: Self) -> DenseComplexMatrix {
        DenseComplexMatrix(&self.0 * &rhs.0)
    }
}

impl Neg for &DenseComplexMatrix {
    type Output = DenseComplexMatrix;
    fn neg(self) -> DenseComplexMatrix {
        DenseComplexMatrix(-&self.0)
    }
}

impl Add for DenseComplexMatrix {
    type Output = DenseComplexMatrix;
    fn add(self, rhs: Self) -> DenseComplexMatrix {
        DenseComplexMatrix(self.0 + rhs.0)
    }
}

impl Sub for DenseComplexMatrix {
    type Output = DenseComplexMatrix;
    fn sub(self, rhs: Self) -> DenseComplexMatrix {
        DenseComplexMatrix(self.0 - rhs.0)
    }
}

/// `AB − BA`.
pub fn commutator(a: &DenseComplexMatrix, b: &DenseComplexMatrix) -> Result<DenseComplexMatrix> {
    Ok(&a.checked_mul(b)? - &(b * a))
}

/// `AB + BA`.
pub fn anticommutator(a: &DenseComplexMatrix, b: &DenseComplexMatrix) -> Result<DenseComplexMatrix> {
    Ok(&a.checked_mul(b)? + &(b * a))
}

/// Matrix exponential by Padé scaling-and-squaring.
pub fn matrix_exponential(m: &DenseComplexMatrix) -> Result<DenseComplexMatrix> {
    let magnitude = m.max_norm();
    if !magnitude.is_finite() || magnitude > EXP_ENTRY_LIMIT {
        return Err(Error::ExponentialOverflow {
            magnitude,
            limit: EXP_ENTRY_LIMIT,
        });
    }
    if m.dim() == 0 {
        return Ok(m.clone());
    }
    Ok(DenseComplexMatrix(m.0.exp()))
}

/// Sum of `coeff * matrix` terms; all matrices must share one dimension.
pub fn linear_combination<'a>(
    dim: usize,
    terms: impl IntoIterator<Item = (Complex64, &'a DenseComplexMatrix)>,
) -> DenseComplexMatrix {
    let mut acc = DMatrix::zeros(dim, dim);
    for (c, m) in terms {
        if c != ZERO {
            acc += &m.0 * c;
        }
    }
    DenseComplexMatrix(acc)
}

pub fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_anti_hermitian(rng: &mut ChaCha8Rng, dim: usize, bound: f64) -> DenseComplexMatrix {
        let h = DenseComplexMatrix::from_fn(dim, |_, _| {
            Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
        });
        let h = &h + &h.adjoint();
        // spectral-norm bound via Frobenius
        let fro: f64 = h.row_major().iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        h.scale(I * (bound * rng.random_range(0.0..1.0) / fro))
    }

    #[test]
    fn exp_of_zero_is_identity() {
        let e = matrix_exponential(&DenseComplexMatrix::zeros(16)).unwrap();
        assert_eq!(e.max_abs_diff(&DenseComplexMatrix::identity(16)), 0.0);
    }

    #[test]
    fn exp_of_i_pi_identity_is_minus_identity() {
        let m = DenseComplexMatrix::identity(16).scale(I * std::f64::consts::PI);
        let e = matrix_exponential(&m).unwrap();
        let minus = DenseComplexMatrix::identity(16).scale_re(-1.0);
        assert!(e.max_abs_diff(&minus) < 1e-12);
    }

    #[test]
    fn exp_inverse_and_unitarity_for_random_anti_hermitian() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let id = DenseComplexMatrix::identity(16);
        for _ in 0..20 {
            let a = random_anti_hermitian(&mut rng, 16, 5.0);
            let e = matrix_exponential(&a).unwrap();
            let einv = matrix_exponential(&(-&a)).unwrap();
            assert!((&e * &einv).max_abs_diff(&id) < 1e-11);
            assert!((&e * &e.adjoint()).max_abs_diff(&id) < 1e-11);
        }
    }

    #[test]
    fn exp_matches_diagonal_closed_form() {
        let diag: Vec<Complex64> = (0..5)
            .map(|k| Complex64::new(0.3 * k as f64, -0.7 + k as f64))
            .collect();
        let e = matrix_exponential(&DenseComplexMatrix::from_diagonal(&diag)).unwrap();
        for (k, z) in diag.iter().enumerate() {
            let want = z.exp();
            assert!((e.get(k, k) - want).norm() <= 1e-12 * want.norm());
        }
    }

    #[test]
    fn exp_rejects_huge_entries() {
        let m = DenseComplexMatrix::identity(4).scale_re(2e8);
        assert!(matches!(matrix_exponential(&m), Err(Error::ExponentialOverflow { .. })));
    }

    #[test]
    fn commutator_of_matrix_with_itself_vanishes() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let a = random_anti_hermitian(&mut rng, 6, 3.0);
        assert_eq!(commutator(&a, &a).unwrap().max_norm(), 0.0);
    }

    #[test]
    fn commutator_rejects_dimension_mismatch() {
        let a = DenseComplexMatrix::identity(2);
        let b = DenseComplexMatrix::identity(3);
        assert_eq!(commutator(&a, &b), Err(Error::DimensionMismatch { left: 2, right: 3 }));
    }

    #[test]
    fn from_row_major_checks_length() {
        assert!(DenseComplexMatrix::from_row_major(2, &[ONE; 3]).is_err());
        let m = DenseComplexMatrix::from_row_major(2, &[ONE, I, ZERO, ONE]).unwrap();
        assert_eq!(m.get(0, 1), I);
        assert_eq!(m.row_major(), vec![ONE, I, ZERO, ONE]);
    }
}
