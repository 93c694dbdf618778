//! Matrix Lie algebras: structure constants, bracket validation, and the
//! conjugated ("tilde") generators of a circuit.
//!
//! A circuit `U = E_1 E_2 ... E_N` with `E_j = exp(-i θ_j A_j)` has tangent
//! generators `Ã_j = W_j^† A_j W_j`, where `W_j = E_{j+1} ... E_N`. They can be
//! computed two ways:
//!
//! * [`tilde_by_conjugation`] multiplies the matrices out directly;
//! * [`tilde_by_adjoint`] works entirely in the adjoint representation,
//!   `Ã_j = Σ_k (v_j)_k A_k` with
//!   `v_j = exp(iθ_N ad_N) ... exp(iθ_{j+1} ad_{j+1}) e_j` and
//!   `(ad_m)_{k,l} = c_{ml}^k`.
//!
//! The second form is the closed-form resummation of the nested
//! Baker-Campbell-Hausdorff expansion. It only needs the structure constants,
//! and agreement of the two routes is the main correctness witness.

use std::collections::HashMap;
use std::fmt;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{c, commutator, herm_eig, ComplexMatrix, HermitianEigen, HERMITIAN_TOL, I};
use crate::manifold::{CircuitSpec, ParameterPoint};

/// Maximum admissible closure residual.
pub const CLOSURE_TOL: f64 = 1e-9;

/// Gram matrices with a larger condition number are rejected.
pub const MAX_GRAM_CONDITION: f64 = 1e8;

/// Hermitian generators together with their structure constants
/// `[A_i, A_j] = Σ_k c_{ij}^k A_k`.
#[derive(Clone)]
pub struct LieAlgebraRep {
    names: Vec<String>,
    generators: Vec<ComplexMatrix>,
    eigen: Vec<HermitianEigen>,
    // index (i * n + j) * n + k
    constants: Vec<Complex64>,
    max_residual: f64,
    window: usize,
    truncation_aware: bool,
}

impl fmt::Debug for LieAlgebraRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LieAlgebraRep")
            .field("names", &self.names)
            .field("dim", &self.dim())
            .field("truncation_aware", &self.truncation_aware)
            .field("max_residual", &self.max_residual)
            .finish()
    }
}

/// Fits structure constants for a set of named Hermitian generators.
///
/// With `truncation_aware` set, all brackets are compared on the subspace that
/// excludes the highest basis state. This is what a truncated oscillator needs:
/// `[x, p] = i` fails exactly on the last Fock level and nowhere else.
pub fn extract_structure_constants(
    generators: Vec<(String, ComplexMatrix)>,
    truncation_aware: bool,
) -> Result<LieAlgebraRep> {
    if generators.is_empty() {
        return Err(Error::Parse("algebra needs at least one generator".into()));
    }
    let dim = generators[0].1.dim();
    let mut seen = HashMap::new();
    for (idx, (name, m)) in generators.iter().enumerate() {
        if m.dim() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                actual: m.dim(),
            });
        }
        if seen.insert(name.clone(), idx).is_some() {
            return Err(Error::Parse(format!("duplicate generator name `{name}`")));
        }
        let residual = m.hermiticity_residual();
        if residual > HERMITIAN_TOL {
            return Err(Error::NotHermitian {
                name: name.clone(),
                residual,
            });
        }
    }

    let window = if truncation_aware && dim > 1 {
        dim - 1
    } else {
        dim
    };
    let n = generators.len();
    let projected: Vec<ComplexMatrix> = generators
        .iter()
        .map(|(_, m)| m.leading_block(window))
        .collect();

    let gram = ComplexMatrix::from_fn(n, |k, l| projected[k].frobenius_inner(&projected[l]));
    let gram_eig = herm_eig(&gram)?;
    let lo = gram_eig.eigenvalues[0];
    let hi = gram_eig.eigenvalues[n - 1];
    let condition = if lo > 0.0 { hi / lo } else { f64::INFINITY };
    if condition.is_nan() || condition >= MAX_GRAM_CONDITION {
        return Err(Error::DependentGenerators { condition });
    }
    let v = gram_eig.eigenvectors.as_matrix();
    let inv_diag = DMatrix::from_diagonal(&DVector::from_iterator(
        n,
        gram_eig.eigenvalues.iter().map(|&l| c(1.0 / l, 0.0)),
    ));
    let gram_inv = v * inv_diag * v.adjoint();

    let mut constants = vec![c(0.0, 0.0); n * n * n];
    let mut max_residual: f64 = 0.0;
    for i in 0..n {
        for j in (i + 1)..n {
            let comm = commutator(&generators[i].1, &generators[j].1)?.leading_block(window);
            let rhs = DVector::from_iterator(n, projected.iter().map(|p| p.frobenius_inner(&comm)));
            let coeffs = &gram_inv * rhs;
            let mut fit = ComplexMatrix::zeros(window);
            for (k, p) in projected.iter().enumerate() {
                fit = &fit + &p.scale(coeffs[k]);
            }
            let residual = comm.max_abs_diff(&fit);
            if residual > CLOSURE_TOL {
                return Err(Error::NotClosed {
                    left: generators[i].0.clone(),
                    right: generators[j].0.clone(),
                    residual,
                });
            }
            max_residual = max_residual.max(residual);
            for k in 0..n {
                constants[(i * n + j) * n + k] = coeffs[k];
                constants[(j * n + i) * n + k] = -coeffs[k];
            }
        }
    }

    let eigen = generators
        .iter()
        .map(|(_, m)| herm_eig(m))
        .collect::<Result<Vec<_>>>()?;
    let (names, generators): (Vec<_>, Vec<_>) = generators.into_iter().unzip();
    Ok(LieAlgebraRep {
        names,
        generators,
        eigen,
        constants,
        max_residual,
        window,
        truncation_aware,
    })
}

impl LieAlgebraRep {
    /// Number of generators.
    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    /// Hilbert-space dimension.
    pub fn dim(&self) -> usize {
        self.generators[0].dim()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn generators(&self) -> &[ComplexMatrix] {
        &self.generators
    }

    pub fn generator(&self, index: usize) -> &ComplexMatrix {
        &self.generators[index]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub(crate) fn eigen(&self, index: usize) -> &HermitianEigen {
        &self.eigen[index]
    }

    /// c_{ij}^k (zero-based).
    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> Complex64 {
        let n = self.len();
        self.constants[(i * n + j) * n + k]
    }

    pub fn max_closure_residual(&self) -> f64 {
        self.max_residual
    }

    pub fn is_truncation_aware(&self) -> bool {
        self.truncation_aware
    }

    /// Leading block on which brackets are compared.
    pub fn closure_window(&self) -> usize {
        self.window
    }

    /// Leading block on which operator identities that hold only in infinite
    /// dimension are trusted after exponentiation.
    ///
    /// Equal to the full dimension unless the algebra is a truncation.
    pub fn comparison_window(&self) -> usize {
        if self.truncation_aware {
            (self.dim() / 2).max(1)
        } else {
            self.dim()
        }
    }

    /// Largest |Re c_{ij}^k|. Hermitian generators give purely imaginary constants.
    pub fn purity_residual(&self) -> f64 {
        self.constants
            .iter()
            .map(|z| z.re.abs())
            .fold(0.0, f64::max)
    }

    /// max over i, j, k, l of |Σ_m (c_{ij}^m c_{mk}^l + c_{jk}^m c_{mi}^l + c_{ki}^m c_{mj}^l)|
    pub fn jacobi_residual(&self) -> f64 {
        let n = self.len();
        let cc = |a, b, d| self.structure_constant(a, b, d);
        let mut worst: f64 = 0.0;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        let mut sum = c(0.0, 0.0);
                        for m in 0..n {
                            sum += cc(i, j, m) * cc(m, k, l)
                                + cc(j, k, m) * cc(m, i, l)
                                + cc(k, i, m) * cc(m, j, l);
                        }
                        worst = worst.max(sum.norm());
                    }
                }
            }
        }
        worst
    }

    /// Σ_k coeffs_k A_k
    pub fn combine(&self, coeffs: &DVector<Complex64>) -> ComplexMatrix {
        let mut out = ComplexMatrix::zeros(self.dim());
        for (k, g) in self.generators.iter().enumerate() {
            if coeffs[k] != c(0.0, 0.0) {
                out = &out + &g.scale(coeffs[k]);
            }
        }
        out
    }

    pub fn adjoint(&self) -> AdjointRep {
        let n = self.len();
        let matrices = (0..n)
            .map(|m| DMatrix::from_fn(n, n, |k, l| self.structure_constant(m, l, k)))
            .collect();
        AdjointRep { matrices }
    }
}

/// Adjoint representation, `(ad_m)_{k,l} = c_{ml}^k`.
#[derive(Clone, Debug)]
pub struct AdjointRep {
    pub matrices: Vec<DMatrix<Complex64>>,
}

impl AdjointRep {
    /// exp(i θ ad_m): column `l` holds the expansion of
    /// `e^{iθA_m} A_l e^{-iθA_m}` in the generator basis.
    pub fn conjugation(&self, m: usize, theta: f64) -> DMatrix<Complex64> {
        (&self.matrices[m] * (I * theta)).exp()
    }
}

/// Bracket pattern to check.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AlgebraKind {
    /// Generators ordered `A_1..A_n, B_1..B_n, C` with `[A_j, B_l] = i δ_{jl} C`.
    Heisenberg(usize),
    /// First three generators satisfy `[A_1, A_2] = iA_3` cyclically.
    So3,
    Generic,
}

impl fmt::Display for AlgebraKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgebraKind::Heisenberg(n) => write!(f, "heisenberg({n})"),
            AlgebraKind::So3 => write!(f, "so3"),
            AlgebraKind::Generic => write!(f, "generic"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct BracketCheck {
    pub label: String,
    pub residual: f64,
    pub passed: bool,
}

#[derive(Clone, Debug)]
pub struct ValidationReport {
    pub kind: AlgebraKind,
    pub brackets: Vec<BracketCheck>,
    pub jacobi_residual: f64,
    pub purity_residual: f64,
    pub tolerance: f64,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.brackets.iter().all(|b| b.passed) && self.jacobi_residual <= 1e-10
    }

    pub fn max_residual(&self) -> f64 {
        self.brackets.iter().map(|b| b.residual).fold(0.0, f64::max)
    }
}

/// Checks the defining brackets of `kind` directly on the generator matrices.
pub fn validate_algebra(rep: &LieAlgebraRep, kind: AlgebraKind) -> ValidationReport {
    let window = rep.closure_window();
    let names = rep.names();
    let g = rep.generators();
    let mut brackets = Vec::new();

    // residual of [a, b] - rhs on the closure window
    let mut check = |label: String, a: usize, b: usize, rhs: Option<ComplexMatrix>| {
        let comm = commutator(&g[a], &g[b]).expect("generators share a dimension");
        let diff = match rhs {
            Some(r) => &comm - &r,
            None => comm,
        };
        let residual = diff.leading_block(window).max_abs();
        brackets.push(BracketCheck {
            label,
            residual,
            passed: residual <= CLOSURE_TOL,
        });
    };

    match kind {
        AlgebraKind::So3 => {
            if rep.len() < 3 {
                brackets.push(BracketCheck {
                    label: "so(3) needs three generators".into(),
                    residual: f64::INFINITY,
                    passed: false,
                });
            } else {
                for (a, b, r) in [(0, 1, 2), (1, 2, 0), (2, 0, 1)] {
                    check(
                        format!("[{}, {}] = i {}", names[a], names[b], names[r]),
                        a,
                        b,
                        Some(g[r].scale(I)),
                    );
                }
            }
        }
        AlgebraKind::Heisenberg(n) => {
            if rep.len() != 2 * n + 1 || n == 0 {
                brackets.push(BracketCheck {
                    label: format!("heisenberg({n}) needs {} generators", 2 * n + 1),
                    residual: f64::INFINITY,
                    passed: false,
                });
            } else {
                let central = 2 * n;
                for j in 0..n {
                    for l in 0..n {
                        let (a, b) = (j, n + l);
                        let rhs = (j == l).then(|| g[central].scale(I));
                        let label = if j == l {
                            format!("[{}, {}] = i {}", names[a], names[b], names[central])
                        } else {
                            format!("[{}, {}] = 0", names[a], names[b])
                        };
                        check(label, a, b, rhs);
                    }
                }
                for a in 0..2 * n {
                    check(
                        format!("[{}, {}] = 0", names[a], names[central]),
                        a,
                        central,
                        None,
                    );
                }
                for block in [0, n] {
                    for j in 0..n {
                        for l in (j + 1)..n {
                            let (a, b) = (block + j, block + l);
                            check(format!("[{}, {}] = 0", names[a], names[b]), a, b, None);
                        }
                    }
                }
            }
        }
        AlgebraKind::Generic => {}
    }

    ValidationReport {
        kind,
        brackets,
        jacobi_residual: rep.jacobi_residual(),
        purity_residual: rep.purity_residual(),
        tolerance: CLOSURE_TOL,
    }
}

/// Recognizes so(3) or Heisenberg bracket patterns in declaration order.
pub fn detect_kind(rep: &LieAlgebraRep) -> AlgebraKind {
    if rep.len() == 3 && validate_algebra(rep, AlgebraKind::So3).passed() {
        return AlgebraKind::So3;
    }
    if rep.len() >= 3 && rep.len() % 2 == 1 {
        let kind = AlgebraKind::Heisenberg(rep.len() / 2);
        if validate_algebra(rep, kind).passed() {
            return kind;
        }
    }
    AlgebraKind::Generic
}

/// Tilde operators `Ã_j = W_j^† A_j W_j` by explicit matrix products, one per
/// circuit factor.
pub fn tilde_by_conjugation(
    circuit: &CircuitSpec,
    point: &ParameterPoint,
) -> Result<Vec<ComplexMatrix>> {
    let angles = circuit.resolve(point)?;
    let rep = circuit.algebra();
    let factors = circuit.factor_unitaries(&angles);
    let mut suffix = ComplexMatrix::identity(rep.dim());
    let mut out = vec![ComplexMatrix::zeros(rep.dim()); circuit.len()];
    for j in (0..circuit.len()).rev() {
        let a = rep.generator(circuit.generator_index(j));
        out[j] = &(&suffix.adjoint() * a) * &suffix;
        suffix = &factors[j] * &suffix;
    }
    Ok(out)
}

/// Expansion coefficients `v_j` of each tilde operator in the generator basis,
/// computed in the adjoint representation.
pub fn tilde_coefficients(
    circuit: &CircuitSpec,
    point: &ParameterPoint,
) -> Result<Vec<DVector<Complex64>>> {
    let angles = circuit.resolve(point)?;
    let rep = circuit.algebra();
    let adjoint = rep.adjoint();
    let n = rep.len();
    let mut acc = DMatrix::<Complex64>::identity(n, n);
    let mut out = vec![DVector::zeros(n); circuit.len()];
    for j in (0..circuit.len()).rev() {
        let g = circuit.generator_index(j);
        out[j] = acc.column(g).into_owned();
        acc *= adjoint.conjugation(g, angles[j]);
    }
    Ok(out)
}

/// Tilde operators assembled from [`tilde_coefficients`].
pub fn tilde_by_adjoint(
    circuit: &CircuitSpec,
    point: &ParameterPoint,
) -> Result<Vec<ComplexMatrix>> {
    let rep = circuit.algebra();
    Ok(tilde_coefficients(circuit, point)?
        .iter()
        .map(|v| rep.combine(v))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::manifold::CircuitSpec;
    use std::sync::Arc;

    fn spin_half() -> Vec<(String, ComplexMatrix)> {
        let sx = ComplexMatrix::from_real_rows(2, &[0.0, 0.5, 0.5, 0.0]).unwrap();
        let sy =
            ComplexMatrix::from_rows(2, &[c(0.0, 0.0), c(0.0, -0.5), c(0.0, 0.5), c(0.0, 0.0)])
                .unwrap();
        let sz = ComplexMatrix::from_real_rows(2, &[0.5, 0.0, 0.0, -0.5]).unwrap();
        vec![("Sx".into(), sx), ("Sy".into(), sy), ("Sz".into(), sz)]
    }

    #[test]
    fn spin_half_constants_are_cyclic() {
        let rep = extract_structure_constants(spin_half(), false).unwrap();
        for (i, j, k) in [(0, 1, 2), (1, 2, 0), (2, 0, 1)] {
            assert!((rep.structure_constant(i, j, k) - I).norm() < 1e-12);
            assert!((rep.structure_constant(j, i, k) + I).norm() < 1e-12);
        }
        let mut nonzero = 0;
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    if rep.structure_constant(i, j, k).norm() > 1e-12 {
                        nonzero += 1;
                    }
                }
            }
        }
        assert_eq!(nonzero, 6);
        assert!(rep.jacobi_residual() < 1e-12);
        assert!(rep.purity_residual() < 1e-12);
        assert_eq!(detect_kind(&rep), AlgebraKind::So3);
    }

    #[test]
    fn single_generator_is_abelian() {
        let mut gens = spin_half();
        gens.truncate(1);
        let rep = extract_structure_constants(gens, false).unwrap();
        assert_eq!(rep.structure_constant(0, 0, 0), c(0.0, 0.0));
        assert_eq!(detect_kind(&rep), AlgebraKind::Generic);
    }

    #[test]
    fn open_span_is_rejected() {
        let mut gens = spin_half();
        gens.truncate(2);
        match extract_structure_constants(gens, false) {
            Err(Error::NotClosed {
                left,
                right,
                residual,
            }) => {
                assert_eq!((left.as_str(), right.as_str()), ("Sx", "Sy"));
                assert!(residual > 0.1);
            }
            other => panic!("expected NotClosed, got {other:?}"),
        }
    }

    #[test]
    fn dependent_generators_are_rejected() {
        let mut gens = spin_half();
        let dup = gens[0].1.scale_real(2.0);
        gens.push(("twice_Sx".into(), dup));
        assert!(matches!(
            extract_structure_constants(gens, false),
            Err(Error::DependentGenerators { .. })
        ));
    }

    #[test]
    fn non_hermitian_generator_is_named() {
        let mut gens = spin_half();
        gens[1].1 = ComplexMatrix::from_real_rows(2, &[0.0, 1.0, 0.0, 0.0]).unwrap();
        match extract_structure_constants(gens, false) {
            Err(Error::NotHermitian { name, .. }) => assert_eq!(name, "Sy"),
            other => panic!("expected NotHermitian, got {other:?}"),
        }
    }

    #[test]
    fn adjoint_exponential_matches_conjugation() {
        let rep = extract_structure_constants(spin_half(), false).unwrap();
        let adj = rep.adjoint();
        for m in 0..3 {
            for theta in [-2.1, 0.4, 1.3] {
                let coeffs = adj.conjugation(m, theta);
                let u = rep.eigen(m).phase_exp(theta);
                for l in 0..3 {
                    let direct = &(&u.adjoint() * rep.generator(l)) * &u;
                    let via = rep.combine(&coeffs.column(l).into_owned());
                    assert!(direct.max_abs_diff(&via) < 1e-12);
                }
            }
        }
    }

    #[test]
    fn so3_tilde_matches_closed_forms() {
        // (A1, A2, A3) = (Sz, Sx, Sy), circuit A1 A2 A1
        let gens = spin_half();
        let reordered = vec![gens[2].clone(), gens[0].clone(), gens[1].clone()];
        let rep = Arc::new(extract_structure_constants(reordered, false).unwrap());
        let circuit =
            CircuitSpec::new(rep.clone(), &[("Sz", "t1"), ("Sx", "t2"), ("Sz", "t3")]).unwrap();
        let (t1, t2, t3) = (0.3, 0.7, 1.1);
        let point = ParameterPoint::from_pairs(&[("t1", t1), ("t2", t2), ("t3", t3)]);
        let a = rep.generators();
        let expected = [
            &(&a[0].scale_real(t2.cos()) + &a[1].scale_real(t2.sin() * t3.sin()))
                + &a[2].scale_real(t2.sin() * t3.cos()),
            &a[1].scale_real(t3.cos()) - &a[2].scale_real(t3.sin()),
            a[0].clone(),
        ];
        for route in [tilde_by_conjugation, tilde_by_adjoint] {
            let tilde = route(&circuit, &point).unwrap();
            for (got, want) in tilde.iter().zip(expected.iter()) {
                assert!(got.max_abs_diff(want) < 1e-12);
            }
        }
        let coeffs = tilde_coefficients(&circuit, &point).unwrap();
        assert!((coeffs[0][0] - c(t2.cos(), 0.0)).norm() < 1e-12);
    }

    #[test]
    fn zero_angles_leave_generators_alone() {
        let rep = Arc::new(extract_structure_constants(spin_half(), false).unwrap());
        let circuit =
            CircuitSpec::new(rep.clone(), &[("Sx", "a"), ("Sy", "b"), ("Sz", "c")]).unwrap();
        let point = ParameterPoint::from_pairs(&[("a", 0.0), ("b", 0.0), ("c", 0.0)]);
        let tilde = tilde_by_adjoint(&circuit, &point).unwrap();
        for (j, t) in tilde.iter().enumerate() {
            assert!(t.max_abs_diff(rep.generator(j)) < 1e-15);
        }
    }

    #[test]
    fn validation_reports_each_bracket() {
        let rep = extract_structure_constants(spin_half(), false).unwrap();
        let report = validate_algebra(&rep, AlgebraKind::So3);
        assert_eq!(report.brackets.len(), 3);
        assert!(report.passed());
        assert!(report.max_residual() < 1e-15);
        // wrong pattern still yields a report, just a failing one
        let report = validate_algebra(&rep, AlgebraKind::Heisenberg(1));
        assert!(!report.passed());
    }
}
