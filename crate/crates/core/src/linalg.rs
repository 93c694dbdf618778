//! Dense complex linear algebra for small operator spaces.
//!
//! Everything here works on square complex matrices of modest size (a few
//! hundred at most). Exponentials of Hermitian generators are computed
//! through the eigendecomposition, so the results are unitary to roundoff.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Admission tolerance for Hermiticity and unitarity checks.
pub const HERMITIAN_TOL: f64 = 1e-10;

pub(crate) const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

pub(crate) fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Square complex matrix.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix(DMatrix<Complex64>);

impl ComplexMatrix {
    pub fn new(m: DMatrix<Complex64>) -> Result<Self> {
        if m.nrows() != m.ncols() {
            return Err(Error::DimensionMismatch {
                expected: m.nrows(),
                actual: m.ncols(),
            });
        }
        if m.nrows() == 0 {
            return Err(Error::DimensionMismatch {
                expected: 1,
                actual: 0,
            });
        }
        Ok(Self(m))
    }

    pub fn zeros(dim: usize) -> Self {
        Self(DMatrix::zeros(dim, dim))
    }

    pub fn identity(dim: usize) -> Self {
        Self(DMatrix::identity(dim, dim))
    }

    pub fn from_fn(dim: usize, f: impl FnMut(usize, usize) -> Complex64) -> Self {
        Self(DMatrix::from_fn(dim, dim, f))
    }

    pub fn from_diagonal(diag: &[Complex64]) -> Self {
        Self(DMatrix::from_diagonal(&DVector::from_column_slice(diag)))
    }

    /// Builds a matrix from row-major entries.
    pub fn from_rows(dim: usize, entries: &[Complex64]) -> Result<Self> {
        if entries.len() != dim * dim {
            return Err(Error::DimensionMismatch {
                expected: dim * dim,
                actual: entries.len(),
            });
        }
        Self::new(DMatrix::from_row_slice(dim, dim, entries))
    }

    /// Builds a matrix from real row-major entries.
    pub fn from_real_rows(dim: usize, entries: &[f64]) -> Result<Self> {
        let v: Vec<Complex64> = entries.iter().map(|&x| c(x, 0.0)).collect();
        Self::from_rows(dim, &v)
    }

    pub fn dim(&self) -> usize {
        self.0.nrows()
    }

    pub fn as_matrix(&self) -> &DMatrix<Complex64> {
        &self.0
    }

    pub fn into_matrix(self) -> DMatrix<Complex64> {
        self.0
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.0[(row, col)]
    }

    pub fn adjoint(&self) -> Self {
        Self(self.0.adjoint())
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        Self(&self.0 * factor)
    }

    pub fn scale_real(&self, factor: f64) -> Self {
        self.scale(c(factor, 0.0))
    }

    pub fn trace(&self) -> Complex64 {
        self.0.trace()
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.0.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// max |M - M^dagger|
    pub fn hermiticity_residual(&self) -> f64 {
        let mut worst: f64 = 0.0;
        let n = self.dim();
        for i in 0..n {
            for j in i..n {
                worst = worst.max((self.0[(i, j)] - self.0[(j, i)].conj()).norm());
            }
        }
        worst
    }

    /// max |U^dagger U - I|
    pub fn unitarity_residual(&self) -> f64 {
        let prod = self.0.adjoint() * &self.0;
        (prod - DMatrix::identity(self.dim(), self.dim()))
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermiticity_residual() <= tol
    }

    /// Kronecker product `self ⊗ other`.
    pub fn kron(&self, other: &Self) -> Self {
        Self(self.0.kronecker(&other.0))
    }

    pub fn apply(&self, v: &DVector<Complex64>) -> DVector<Complex64> {
        &self.0 * v
    }

    pub fn apply_state(&self, psi: &StateVector) -> DVector<Complex64> {
        &self.0 * &psi.0
    }

    /// Top-left `k`×`k` block.
    pub fn leading_block(&self, k: usize) -> Self {
        Self(self.0.view((0, 0), (k, k)).into_owned())
    }

    /// Frobenius inner product tr(self^dagger other).
    pub fn frobenius_inner(&self, other: &Self) -> Complex64 {
        self.0
            .iter()
            .zip(other.0.iter())
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// Max entry distance to `other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.0
            .iter()
            .zip(other.0.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ComplexMatrix{}", self.0)
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $op:tt) => {
        impl $trait<&ComplexMatrix> for &ComplexMatrix {
            type Output = ComplexMatrix;
            fn $method(self, rhs: &ComplexMatrix) -> ComplexMatrix {
                assert_eq!(self.dim(), rhs.dim(), "operator dimension mismatch");
                ComplexMatrix(&self.0 $op &rhs.0)
            }
        }
        impl $trait<ComplexMatrix> for ComplexMatrix {
            type Output = ComplexMatrix;
            fn $method(self, rhs: ComplexMatrix) -> ComplexMatrix {
                &self $op &rhs
            }
        }
    };
}

binop!(Add, add, +);
binop!(Sub, sub, -);
binop!(Mul, mul, *);

impl Neg for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn neg(self) -> ComplexMatrix {
        ComplexMatrix(-&self.0)
    }
}

/// Normalized pure state.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector(DVector<Complex64>);

impl StateVector {
    /// Normalizes `amplitudes`; fails on the zero vector.
    pub fn new(amplitudes: DVector<Complex64>) -> Result<Self> {
        let norm = amplitudes.norm();
        if amplitudes.is_empty() || !norm.is_finite() || norm == 0.0 {
            return Err(Error::BadNormalization(1.0));
        }
        Ok(Self(amplitudes.unscale(norm)))
    }

    pub fn from_slice(amplitudes: &[Complex64]) -> Result<Self> {
        Self::new(DVector::from_column_slice(amplitudes))
    }

    /// Accepts amplitudes only if already normalized within `tol`.
    pub fn normalized_within(amplitudes: &[Complex64], tol: f64) -> Result<Self> {
        let v = DVector::from_column_slice(amplitudes);
        let dev = (v.norm_squared() - 1.0).abs();
        if dev > tol {
            return Err(Error::BadNormalization(dev));
        }
        Self::new(v)
    }

    pub fn basis(dim: usize, index: usize) -> Self {
        let mut v = DVector::zeros(dim);
        v[index] = c(1.0, 0.0);
        Self(v)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn amplitudes(&self) -> &DVector<Complex64> {
        &self.0
    }

    /// ⟨self|other⟩
    pub fn inner(&self, other: &DVector<Complex64>) -> Complex64 {
        self.0.dotc(other)
    }

    pub fn with_phase(&self, alpha: f64) -> Self {
        Self(&self.0 * Complex64::from_polar(1.0, alpha))
    }
}

/// Eigendecomposition `M = V diag(λ) V^dagger` of a Hermitian matrix.
#[derive(Clone, Debug)]
pub struct HermitianEigen {
    /// Ascending.
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: ComplexMatrix,
}

impl HermitianEigen {
    /// exp(-i t M)
    pub fn phase_exp(&self, t: f64) -> ComplexMatrix {
        let v = &self.eigenvectors.0;
        let n = v.nrows();
        let mut scaled = v.clone();
        for (k, lambda) in self.eigenvalues.iter().enumerate() {
            let phase = Complex64::from_polar(1.0, -t * lambda);
            for r in 0..n {
                scaled[(r, k)] *= phase;
            }
        }
        ComplexMatrix(scaled * v.adjoint())
    }

    /// exp(-i t M) v without forming the matrix.
    pub fn apply_phase_exp(&self, t: f64, v: &DVector<Complex64>) -> DVector<Complex64> {
        let basis = &self.eigenvectors.0;
        let mut coeffs = basis.ad_mul(v);
        for (k, lambda) in self.eigenvalues.iter().enumerate() {
            coeffs[k] *= Complex64::from_polar(1.0, -t * lambda);
        }
        basis * coeffs
    }

    pub fn reconstruct(&self) -> ComplexMatrix {
        let d: Vec<Complex64> = self.eigenvalues.iter().map(|&l| c(l, 0.0)).collect();
        let v = &self.eigenvectors.0;
        ComplexMatrix(v * DMatrix::from_diagonal(&DVector::from_vec(d)) * v.adjoint())
    }
}

/// Hermitian eigendecomposition with ascending eigenvalues.
///
/// Each eigenvector is phase-fixed so that its first non-negligible
/// component is real and positive.
pub fn herm_eig(m: &ComplexMatrix) -> Result<HermitianEigen> {
    let residual = m.hermiticity_residual();
    if residual > HERMITIAN_TOL {
        return Err(Error::NotHermitian {
            name: "matrix".into(),
            residual,
        });
    }
    let sym = (&m.0 + m.0.adjoint()) * c(0.5, 0.0);
    let eig = SymmetricEigen::new(sym);
    let n = m.dim();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));

    let mut vectors = DMatrix::zeros(n, n);
    let mut values = Vec::with_capacity(n);
    for (dst, &src) in order.iter().enumerate() {
        values.push(eig.eigenvalues[src]);
        let mut col = eig.eigenvectors.column(src).into_owned();
        if let Some(lead) = col.iter().find(|z| z.norm() > 1e-8).copied() {
            let phase = lead.conj() / lead.norm();
            col *= phase;
        }
        vectors.set_column(dst, &col);
    }
    Ok(HermitianEigen {
        eigenvalues: values,
        eigenvectors: ComplexMatrix(vectors),
    })
}

/// exp(-i t A) for Hermitian `A`.
pub fn expm_phase(a: &ComplexMatrix, t: f64) -> Result<ComplexMatrix> {
    Ok(herm_eig(a)?.phase_exp(t))
}

fn check_dims(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<()> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            actual: b.dim(),
        });
    }
    Ok(())
}

/// [A, B] = AB - BA
pub fn commutator(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    check_dims(a, b)?;
    Ok(ComplexMatrix(&a.0 * &b.0 - &b.0 * &a.0))
}

/// {A, B} = AB + BA
pub fn anticommutator(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    check_dims(a, b)?;
    Ok(ComplexMatrix(&a.0 * &b.0 + &b.0 * &a.0))
}

/// ⟨ψ|M|ψ⟩
pub fn expectation(psi: &StateVector, m: &ComplexMatrix) -> Result<Complex64> {
    if psi.dim() != m.dim() {
        return Err(Error::DimensionMismatch {
            expected: m.dim(),
            actual: psi.dim(),
        });
    }
    Ok(psi.0.dotc(&(&m.0 * &psi.0)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::f64::consts::PI;

    fn pauli_x() -> ComplexMatrix {
        ComplexMatrix::from_real_rows(2, &[0.0, 1.0, 1.0, 0.0]).unwrap()
    }

    fn spin_half() -> (ComplexMatrix, ComplexMatrix, ComplexMatrix) {
        let sx = ComplexMatrix::from_real_rows(2, &[0.0, 0.5, 0.5, 0.0]).unwrap();
        let sy =
            ComplexMatrix::from_rows(2, &[c(0.0, 0.0), c(0.0, -0.5), c(0.0, 0.5), c(0.0, 0.0)])
                .unwrap();
        let sz = ComplexMatrix::from_real_rows(2, &[0.5, 0.0, 0.0, -0.5]).unwrap();
        (sx, sy, sz)
    }

    #[test]
    fn eig_of_diagonal() {
        let m = ComplexMatrix::from_real_rows(2, &[1.0, 0.0, 0.0, -1.0]).unwrap();
        let e = herm_eig(&m).unwrap();
        assert_eq!(e.eigenvalues.len(), 2);
        assert!((e.eigenvalues[0] + 1.0).abs() < 1e-14);
        assert!((e.eigenvalues[1] - 1.0).abs() < 1e-14);
        // columns are a permutation of the identity
        assert!((e.eigenvectors.get(1, 0).norm() - 1.0).abs() < 1e-14);
        assert!((e.eigenvectors.get(0, 1).norm() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn eig_of_pauli_x() {
        let e = herm_eig(&pauli_x()).unwrap();
        assert!((e.eigenvalues[0] + 1.0).abs() < 1e-14);
        assert!((e.eigenvalues[1] - 1.0).abs() < 1e-14);
        assert!(e.eigenvectors.unitarity_residual() < 1e-12);
    }

    #[test]
    fn eig_of_spin_one_sx() {
        // characteristic polynomial λ³ - λ
        let r = 1.0 / 2f64.sqrt();
        let sx = ComplexMatrix::from_real_rows(3, &[0.0, r, 0.0, r, 0.0, r, 0.0, r, 0.0]).unwrap();
        let e = herm_eig(&sx).unwrap();
        for (got, want) in e.eigenvalues.iter().zip([-1.0, 0.0, 1.0]) {
            assert!((got - want).abs() < 1e-12, "{got} vs {want}");
        }
    }

    #[test]
    fn eig_rejects_non_hermitian() {
        let m = ComplexMatrix::from_real_rows(2, &[0.0, 1.0, 0.0, 0.0]).unwrap();
        assert!(matches!(herm_eig(&m), Err(Error::NotHermitian { .. })));
    }

    #[test]
    fn eigenvectors_are_phase_fixed() {
        let (_, sy, _) = spin_half();
        let e = herm_eig(&sy).unwrap();
        for k in 0..2 {
            let lead = e.eigenvectors.get(0, k);
            assert!(lead.im.abs() < 1e-14 && lead.re > 0.0);
        }
    }

    #[test]
    fn expm_zero_angle_is_identity() {
        let (sx, _, _) = spin_half();
        let u = expm_phase(&sx, 0.0).unwrap();
        assert!(u.max_abs_diff(&ComplexMatrix::identity(2)) < 1e-15);
    }

    #[test]
    fn expm_full_turn_flips_sign() {
        let (_, _, sz) = spin_half();
        let u = expm_phase(&sz, 2.0 * PI).unwrap();
        assert!(u.max_abs_diff(&ComplexMatrix::identity(2).scale_real(-1.0)) < 1e-12);
    }

    #[test]
    fn expm_sy_half_turn_maps_up_to_down() {
        let (_, sy, _) = spin_half();
        let u = expm_phase(&sy, PI).unwrap();
        let up = StateVector::basis(2, 0);
        let out = u.apply_state(&up);
        assert!(out[0].norm() < 1e-12);
        assert!((out[1].norm() - 1.0).abs() < 1e-12);
        assert!(u.unitarity_residual() < 1e-12);
    }

    #[test]
    fn spin_half_brackets() {
        let (sx, sy, sz) = spin_half();
        let comm = commutator(&sx, &sy).unwrap();
        assert!(comm.max_abs_diff(&sz.scale(I)) < 1e-15);
        let anti = anticommutator(&sx, &sy).unwrap();
        assert!(anti.max_abs() < 1e-15);
        assert!(commutator(&sx, &sx).unwrap().max_abs() == 0.0);
    }

    #[test]
    fn commutator_dimension_mismatch() {
        let a = ComplexMatrix::identity(2);
        let b = ComplexMatrix::identity(3);
        assert!(matches!(
            commutator(&a, &b),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn expectation_values() {
        let (sx, _, sz) = spin_half();
        let up = StateVector::basis(2, 0);
        assert!((expectation(&up, &sz).unwrap() - c(0.5, 0.0)).norm() < 1e-15);
        assert!(expectation(&up, &sx).unwrap().norm() < 1e-15);

        let r = 1.0 / 2f64.sqrt();
        let sx1 = ComplexMatrix::from_real_rows(3, &[0.0, r, 0.0, r, 0.0, r, 0.0, r, 0.0]).unwrap();
        let psi = StateVector::from_slice(&[c(1.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]).unwrap();
        let v = expectation(&psi, &(&sx1 * &sx1)).unwrap();
        assert!((v - c(1.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn state_is_normalized_on_build() {
        let psi = StateVector::from_slice(&[c(3.0, 0.0), c(0.0, 4.0)]).unwrap();
        assert!((psi.amplitudes().norm_squared() - 1.0).abs() < 1e-12);
        assert!(StateVector::from_slice(&[c(0.0, 0.0)]).is_err());
    }

    fn hermitian_strategy(n: usize) -> impl Strategy<Value = ComplexMatrix> {
        proptest::collection::vec(-1.0f64..1.0, 2 * n * n).prop_map(move |xs| {
            let raw =
                ComplexMatrix::from_fn(n, |i, j| c(xs[2 * (i * n + j)], xs[2 * (i * n + j) + 1]));
            (&raw + &raw.adjoint()).scale_real(0.5)
        })
    }

    proptest! {
        #[test]
        fn eig_reconstructs(m in (2usize..7).prop_flat_map(hermitian_strategy)) {
            let e = herm_eig(&m).unwrap();
            prop_assert!(e.reconstruct().max_abs_diff(&m) <= 1e-10);
            prop_assert!(e.eigenvectors.unitarity_residual() <= 1e-10);
            prop_assert!(e.eigenvalues.windows(2).all(|w| w[0] <= w[1]));
        }

        #[test]
        fn expm_is_a_one_parameter_group(m in hermitian_strategy(4), s in -3.0f64..3.0, t in -3.0f64..3.0) {
            let lhs = &expm_phase(&m, s).unwrap() * &expm_phase(&m, t).unwrap();
            let rhs = expm_phase(&m, s + t).unwrap();
            prop_assert!(lhs.max_abs_diff(&rhs) <= 1e-10);
            prop_assert!(rhs.unitarity_residual() <= 1e-12);
        }

        #[test]
        fn hermitian_expectation_is_real(m in hermitian_strategy(3), xs in proptest::collection::vec(-1.0f64..1.0, 6)) {
            prop_assume!(xs.iter().any(|x| x.abs() > 1e-3));
            let psi = StateVector::from_slice(&[c(xs[0], xs[1]), c(xs[2], xs[3]), c(xs[4], xs[5])]).unwrap();
            let v = expectation(&psi, &m).unwrap();
            prop_assert!(v.im.abs() <= 1e-12);
        }

        #[test]
        fn commutator_is_antisymmetric(a in hermitian_strategy(3), b in hermitian_strategy(3)) {
            let sum = &commutator(&a, &b).unwrap() + &commutator(&b, &a).unwrap();
            prop_assert!(sum.max_abs() <= 1e-15);
        }
    }
}
