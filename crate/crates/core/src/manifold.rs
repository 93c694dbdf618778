//! Circuits, state evolution, and the analytic Fubini-Study metric.
//!
//! The metric is computed two independent ways: from exact state
//! derivatives, and from covariances of the tilde generators in the initial
//! state. Both must agree to roundoff.

use std::collections::BTreeMap;
use std::sync::Arc;

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::liealg::{tilde_by_conjugation, LieAlgebraRep};
use crate::linalg::{anticommutator, c, expectation, ComplexMatrix, StateVector};

/// Default scale factor γ.
pub const DEFAULT_GAMMA: f64 = 1.0;

/// Named parameter values ξ^μ.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ParameterPoint(BTreeMap<String, f64>);

impl ParameterPoint {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_pairs(pairs: &[(&str, f64)]) -> Self {
        Self(pairs.iter().map(|(k, v)| (k.to_string(), *v)).collect())
    }

    pub fn get(&self, name: &str) -> Option<f64> {
        self.0.get(name).copied()
    }

    pub fn insert(&mut self, name: impl Into<String>, value: f64) {
        self.0.insert(name.into(), value);
    }

    pub fn with(mut self, name: &str, value: f64) -> Self {
        self.insert(name, value);
        self
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, f64)> {
        self.0.iter().map(|(k, v)| (k.as_str(), *v))
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

#[derive(Clone, Debug)]
struct Factor {
    generator: usize,
    parameter: String,
}

/// Ordered product `U = Π_j exp(-i ξ_j A_j)` of generator exponentials,
/// leftmost factor first. Each factor has its own parameter.
#[derive(Clone, Debug)]
pub struct CircuitSpec {
    algebra: Arc<LieAlgebraRep>,
    factors: Vec<Factor>,
}

impl CircuitSpec {
    pub fn new<G: AsRef<str>, P: AsRef<str>>(
        algebra: Arc<LieAlgebraRep>,
        factors: &[(G, P)],
    ) -> Result<Self> {
        let mut out = Vec::with_capacity(factors.len());
        for (g, p) in factors {
            let generator = algebra
                .index_of(g.as_ref())
                .ok_or_else(|| Error::UnknownGenerator(g.as_ref().to_string()))?;
            if out.iter().any(|f: &Factor| f.parameter == p.as_ref()) {
                return Err(Error::DuplicateParameter(p.as_ref().to_string()));
            }
            out.push(Factor {
                generator,
                parameter: p.as_ref().to_string(),
            });
        }
        Ok(Self {
            algebra,
            factors: out,
        })
    }

    pub fn algebra(&self) -> &LieAlgebraRep {
        &self.algebra
    }

    pub fn shared_algebra(&self) -> Arc<LieAlgebraRep> {
        Arc::clone(&self.algebra)
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn parameter_names(&self) -> Vec<String> {
        self.factors.iter().map(|f| f.parameter.clone()).collect()
    }

    pub fn parameter_index(&self, name: &str) -> Option<usize> {
        self.factors.iter().position(|f| f.parameter == name)
    }

    pub fn generator_index(&self, factor: usize) -> usize {
        self.factors[factor].generator
    }

    pub fn generator_name(&self, factor: usize) -> &str {
        &self.algebra.names()[self.factors[factor].generator]
    }

    /// Parameter values in factor order.
    pub fn resolve(&self, point: &ParameterPoint) -> Result<Vec<f64>> {
        self.factors
            .iter()
            .map(|f| match point.get(&f.parameter) {
                Some(v) if v.is_finite() => Ok(v),
                Some(v) => Err(Error::Parse(format!(
                    "parameter `{}` is not finite ({v})",
                    f.parameter
                ))),
                None => Err(Error::MissingParameter(f.parameter.clone())),
            })
            .collect()
    }

    /// Inverse of [`resolve`](Self::resolve).
    pub fn point(&self, angles: &[f64]) -> ParameterPoint {
        let mut p = ParameterPoint::new();
        for (f, &v) in self.factors.iter().zip(angles) {
            p.insert(f.parameter.clone(), v);
        }
        p
    }

    pub(crate) fn factor_unitaries(&self, angles: &[f64]) -> Vec<ComplexMatrix> {
        self.factors
            .iter()
            .zip(angles)
            .map(|(f, &t)| self.algebra.eigen(f.generator).phase_exp(t))
            .collect()
    }

    pub(crate) fn unitary_at(&self, angles: &[f64]) -> ComplexMatrix {
        self.factor_unitaries(angles)
            .iter()
            .fold(ComplexMatrix::identity(self.dim()), |acc, e| &acc * e)
    }

    /// `E_j v` for factor `j` at angle `t`.
    pub(crate) fn apply_factor(
        &self,
        j: usize,
        t: f64,
        v: &DVector<Complex64>,
    ) -> DVector<Complex64> {
        self.algebra
            .eigen(self.factors[j].generator)
            .apply_phase_exp(t, v)
    }

    pub(crate) fn state_at(&self, angles: &[f64], initial: &StateVector) -> DVector<Complex64> {
        let mut v = initial.amplitudes().clone();
        for j in (0..self.factors.len()).rev() {
            v = self.apply_factor(j, angles[j], &v);
        }
        v
    }

    fn check_state(&self, psi: &StateVector) -> Result<()> {
        if psi.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                actual: psi.dim(),
            });
        }
        Ok(())
    }
}

/// Symmetric metric tensor g_{μν} at a parameter point.
#[derive(Clone, Debug, Serialize)]
pub struct MetricTensor {
    parameters: Vec<String>,
    #[serde(serialize_with = "serialize_rows")]
    g: DMatrix<f64>,
    gamma: f64,
    point: ParameterPoint,
}

fn serialize_rows<S: serde::Serializer>(
    m: &DMatrix<f64>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(m.nrows()))?;
    for i in 0..m.nrows() {
        let row: Vec<f64> = m.row(i).iter().copied().collect();
        seq.serialize_element(&row)?;
    }
    seq.end()
}

impl MetricTensor {
    /// Stores `(g + g^T) / 2`.
    pub fn new(
        parameters: Vec<String>,
        g: DMatrix<f64>,
        gamma: f64,
        point: ParameterPoint,
    ) -> Self {
        let g = (&g + g.transpose()) * 0.5;
        Self {
            parameters,
            g,
            gamma,
            point,
        }
    }

    pub fn dim(&self) -> usize {
        self.g.nrows()
    }

    pub fn get(&self, mu: usize, nu: usize) -> f64 {
        self.g[(mu, nu)]
    }

    pub fn component(&self, mu: &str, nu: &str) -> Option<f64> {
        let i = self.parameters.iter().position(|p| p == mu)?;
        let j = self.parameters.iter().position(|p| p == nu)?;
        Some(self.g[(i, j)])
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.g
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn point(&self) -> &ParameterPoint {
        &self.point
    }

    pub fn parameters(&self) -> &[String] {
        &self.parameters
    }

    /// Ascending eigenvalues.
    pub fn eigenvalues(&self) -> Vec<f64> {
        let mut ev: Vec<f64> = SymmetricEigen::new(self.g.clone())
            .eigenvalues
            .iter()
            .copied()
            .collect();
        ev.sort_by(f64::total_cmp);
        ev
    }

    pub fn max_abs_diff(&self, other: &MetricTensor) -> f64 {
        (&self.g - &other.g).amax()
    }
}

/// Circuit plus initial state: the quantum state manifold `ψ(ξ) = U(ξ) ψ_i`.
#[derive(Clone, Debug)]
pub struct StateManifold {
    pub label: String,
    pub circuit: CircuitSpec,
    pub initial: StateVector,
    pub gamma: f64,
}

impl StateManifold {
    pub fn new(
        label: impl Into<String>,
        circuit: CircuitSpec,
        initial: StateVector,
        gamma: f64,
    ) -> Result<Self> {
        circuit.check_state(&initial)?;
        if !(gamma > 0.0 && gamma.is_finite()) {
            return Err(Error::Parse(format!("gamma must be positive, got {gamma}")));
        }
        Ok(Self {
            label: label.into(),
            circuit,
            initial,
            gamma,
        })
    }

    pub fn with_gamma(&self, gamma: f64) -> Self {
        Self {
            gamma,
            ..self.clone()
        }
    }

    pub fn parameter_names(&self) -> Vec<String> {
        self.circuit.parameter_names()
    }

    pub fn state(&self, point: &ParameterPoint) -> Result<StateVector> {
        evolve(&self.circuit, point, &self.initial)
    }

    /// Analytic metric from state derivatives.
    pub fn metric(&self, point: &ParameterPoint) -> Result<MetricTensor> {
        metric_from_derivatives(&self.circuit, point, &self.initial, self.gamma)
    }

    pub fn metric_by_tilde(&self, point: &ParameterPoint) -> Result<MetricTensor> {
        metric_from_tilde(&self.circuit, point, &self.initial, self.gamma)
    }

    pub(crate) fn metric_matrix_at(&self, angles: &[f64]) -> Result<DMatrix<f64>> {
        let (psi, derivs) = tangents_at(&self.circuit, angles, &self.initial);
        fubini_study(&psi, &derivs, self.gamma)
    }
}

/// `U(ξ)`, left-to-right product of the factor exponentials.
pub fn build_unitary(circuit: &CircuitSpec, point: &ParameterPoint) -> Result<ComplexMatrix> {
    let angles = circuit.resolve(point)?;
    Ok(circuit.unitary_at(&angles))
}

/// `U(ξ) |ψ_i⟩`
pub fn evolve(
    circuit: &CircuitSpec,
    point: &ParameterPoint,
    initial: &StateVector,
) -> Result<StateVector> {
    circuit.check_state(initial)?;
    let angles = circuit.resolve(point)?;
    StateVector::new(circuit.state_at(&angles, initial))
}

fn tangents_at(
    circuit: &CircuitSpec,
    angles: &[f64],
    initial: &StateVector,
) -> (StateVector, Vec<DVector<Complex64>>) {
    let n = circuit.len();
    // suffix[j] = E_j ... E_N ψ_i
    let mut suffix = vec![initial.amplitudes().clone(); n + 1];
    for j in (0..n).rev() {
        suffix[j] = circuit.apply_factor(j, angles[j], &suffix[j + 1]);
    }
    let rep = circuit.algebra();
    let minus_i = c(0.0, -1.0);
    let derivs = (0..n)
        .map(|j| {
            let a = rep.generator(circuit.generator_index(j));
            let mut v = a.apply(&suffix[j]) * minus_i;
            for k in (0..j).rev() {
                v = circuit.apply_factor(k, angles[k], &v);
            }
            v
        })
        .collect();
    let psi = StateVector::new(suffix[0].clone()).expect("unitary evolution preserves the norm");
    (psi, derivs)
}

/// Exact derivatives `∂ψ/∂ξ^μ`, one per factor (not normalized).
pub fn state_derivatives(
    circuit: &CircuitSpec,
    point: &ParameterPoint,
    initial: &StateVector,
) -> Result<Vec<DVector<Complex64>>> {
    circuit.check_state(initial)?;
    let angles = circuit.resolve(point)?;
    Ok(tangents_at(circuit, &angles, initial).1)
}

/// g_{μν} = γ² Re(⟨ψ_μ|ψ_ν⟩ - ⟨ψ_μ|ψ⟩⟨ψ|ψ_ν⟩), symmetrized.
pub fn fubini_study(
    psi: &StateVector,
    derivatives: &[DVector<Complex64>],
    gamma: f64,
) -> Result<DMatrix<f64>> {
    for d in derivatives {
        if d.len() != psi.dim() {
            return Err(Error::DimensionMismatch {
                expected: psi.dim(),
                actual: d.len(),
            });
        }
    }
    let n = derivatives.len();
    let overlaps: Vec<Complex64> = derivatives.iter().map(|d| psi.inner(d)).collect();
    let mut g = DMatrix::zeros(n, n);
    for mu in 0..n {
        for nu in mu..n {
            let val = derivatives[mu].dotc(&derivatives[nu]) - overlaps[mu].conj() * overlaps[nu];
            g[(mu, nu)] = gamma * gamma * val.re;
            g[(nu, mu)] = g[(mu, nu)];
        }
    }
    Ok(g)
}

/// Metric from exact state derivatives.
pub fn metric_from_derivatives(
    circuit: &CircuitSpec,
    point: &ParameterPoint,
    initial: &StateVector,
    gamma: f64,
) -> Result<MetricTensor> {
    circuit.check_state(initial)?;
    let angles = circuit.resolve(point)?;
    let (psi, derivs) = tangents_at(circuit, &angles, initial);
    let g = fubini_study(&psi, &derivs, gamma)?;
    Ok(MetricTensor::new(
        circuit.parameter_names(),
        g,
        gamma,
        circuit.point(&angles),
    ))
}

fn deviations(tilde: &[ComplexMatrix], initial: &StateVector) -> Result<Vec<ComplexMatrix>> {
    tilde
        .iter()
        .map(|a| {
            let mean = expectation(initial, a)?;
            Ok(a - &ComplexMatrix::identity(a.dim()).scale(mean))
        })
        .collect()
}

/// Metric from tilde-operator covariances,
/// `g_{ij} = γ²/2 ⟨{ΔÃ_i, ΔÃ_j}⟩` in the initial state.
pub fn metric_from_tilde(
    circuit: &CircuitSpec,
    point: &ParameterPoint,
    initial: &StateVector,
    gamma: f64,
) -> Result<MetricTensor> {
    circuit.check_state(initial)?;
    let tilde = tilde_by_conjugation(circuit, point)?;
    let delta = deviations(&tilde, initial)?;
    let n = delta.len();
    let mut g = DMatrix::zeros(n, n);
    for i in 0..n {
        for j in i..n {
            let anti = anticommutator(&delta[i], &delta[j])?;
            g[(i, j)] = 0.5 * gamma * gamma * expectation(initial, &anti)?.re;
            g[(j, i)] = g[(i, j)];
        }
    }
    let angles = circuit.resolve(point)?;
    Ok(MetricTensor::new(
        circuit.parameter_names(),
        g,
        gamma,
        circuit.point(&angles),
    ))
}

/// Local basis vectors `γ ΔÃ_j |ψ_i⟩`.
pub fn local_basis_vectors(
    circuit: &CircuitSpec,
    point: &ParameterPoint,
    initial: &StateVector,
    gamma: f64,
) -> Result<Vec<DVector<Complex64>>> {
    circuit.check_state(initial)?;
    let tilde = tilde_by_conjugation(circuit, point)?;
    Ok(deviations(&tilde, initial)?
        .iter()
        .map(|d| d.apply_state(initial) * c(gamma, 0.0))
        .collect())
}

/// Re⟨v_i|v_j⟩
pub fn gram_metric(vectors: &[DVector<Complex64>]) -> DMatrix<f64> {
    let n = vectors.len();
    DMatrix::from_fn(n, n, |i, j| vectors[i].dotc(&vectors[j]).re)
}
