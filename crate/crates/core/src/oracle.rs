//! Finite-difference ground truth for the metric.
//!
//! Nothing here uses tilde operators or analytic derivatives: states are
//! evaluated at shifted parameter values and differenced.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::StateVector;
use crate::manifold::{fubini_study, CircuitSpec, MetricTensor, ParameterPoint};

pub const DEFAULT_STEP: f64 = 1e-4;
pub const MIN_STEP: f64 = 1e-6;
pub const MAX_STEP: f64 = 1e-2;

fn check_step(h: f64) -> Result<()> {
    if (MIN_STEP..=MAX_STEP).contains(&h) {
        Ok(())
    } else {
        Err(Error::StepOutOfRange(h))
    }
}

fn shifted(angles: &[f64], dir: &[f64], s: f64) -> Vec<f64> {
    angles.iter().zip(dir).map(|(a, d)| a + s * d).collect()
}

fn unit(n: usize, mu: usize) -> Vec<f64> {
    let mut v = vec![0.0; n];
    v[mu] = 1.0;
    v
}

/// Metric from central-difference state derivatives, error O(h²).
pub fn fd_metric(
    circuit: &CircuitSpec,
    point: &ParameterPoint,
    initial: &StateVector,
    gamma: f64,
    h: f64,
) -> Result<MetricTensor> {
    check_step(h)?;
    let angles = circuit.resolve(point)?;
    let n = angles.len();
    let psi = StateVector::new(circuit.state_at(&angles, initial))?;
    let derivs: Vec<DVector<Complex64>> = (0..n)
        .map(|mu| {
            let e = unit(n, mu);
            let plus = circuit.state_at(&shifted(&angles, &e, h), initial);
            let minus = circuit.state_at(&shifted(&angles, &e, -h), initial);
            (plus - minus) / Complex64::new(2.0 * h, 0.0)
        })
        .collect();
    let g = fubini_study(&psi, &derivs, gamma)?;
    Ok(MetricTensor::new(
        circuit.parameter_names(),
        g,
        gamma,
        circuit.point(&angles),
    ))
}

/// Metric from state fidelities.
///
/// The quadratic form along a direction `v` is
/// `q(v) = γ² (1 - |⟨ψ(ξ - hv)|ψ(ξ + hv)⟩|²) / (4h²)`, which is even in `h`
/// and therefore second-order accurate. Off-diagonal entries come from the
/// polarization identity `g_{μν} = (q(e_μ + e_ν) - q(e_μ) - q(e_ν)) / 2`.
/// Only overlap moduli enter, so the result ignores global phases.
pub fn fidelity_metric(
    circuit: &CircuitSpec,
    point: &ParameterPoint,
    initial: &StateVector,
    gamma: f64,
    h: f64,
) -> Result<MetricTensor> {
    check_step(h)?;
    let angles = circuit.resolve(point)?;
    let n = angles.len();
    let q = |dir: &[f64]| {
        let a = circuit.state_at(&shifted(&angles, dir, -h), initial);
        let b = circuit.state_at(&shifted(&angles, dir, h), initial);
        let overlap = a.dotc(&b).norm_sqr();
        gamma * gamma * (1.0 - overlap) / (4.0 * h * h)
    };
    let diag: Vec<f64> = (0..n).map(|mu| q(&unit(n, mu))).collect();
    let mut g = DMatrix::zeros(n, n);
    for mu in 0..n {
        g[(mu, mu)] = diag[mu];
        for nu in (mu + 1)..n {
            let mut dir = unit(n, mu);
            dir[nu] = 1.0;
            let val = 0.5 * (q(&dir) - diag[mu] - diag[nu]);
            g[(mu, nu)] = val;
            g[(nu, mu)] = val;
        }
    }
    Ok(MetricTensor::new(
        circuit.parameter_names(),
        g,
        gamma,
        circuit.point(&angles),
    ))
}

#[derive(Clone, Debug, Serialize)]
pub struct PointDiff {
    pub point: ParameterPoint,
    pub max_abs_diff: f64,
    pub worst_component: (usize, usize),
}

/// Componentwise comparison of metric tensors over one or more points.
#[derive(Clone, Debug, Serialize)]
pub struct ComparisonReport {
    pub max_abs_diff: f64,
    pub worst_component: (usize, usize),
    pub worst_parameters: (String, String),
    pub points: Vec<PointDiff>,
    pub tolerance: f64,
}

impl ComparisonReport {
    pub fn passed(&self) -> bool {
        self.max_abs_diff <= self.tolerance
    }

    /// Folds another report into this one, keeping the worst entry.
    pub fn merge(mut self, other: ComparisonReport) -> Self {
        if other.max_abs_diff > self.max_abs_diff {
            self.max_abs_diff = other.max_abs_diff;
            self.worst_component = other.worst_component;
            self.worst_parameters = other.worst_parameters;
        }
        self.points.extend(other.points);
        self.tolerance = self.tolerance.min(other.tolerance);
        self
    }
}

impl std::fmt::Display for ComparisonReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "max |Δg| = {:.3e} at g[{}][{}] ({}, {}) over {} point(s), tol {:.1e}: {}",
            self.max_abs_diff,
            self.worst_component.0,
            self.worst_component.1,
            self.worst_parameters.0,
            self.worst_parameters.1,
            self.points.len(),
            self.tolerance,
            if self.passed() { "pass" } else { "FAIL" }
        )
    }
}

pub fn compare(a: &MetricTensor, b: &MetricTensor, tol: f64) -> Result<ComparisonReport> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            actual: b.dim(),
        });
    }
    if a.parameters() != b.parameters() {
        return Err(Error::PointMismatch("parameter names".into()));
    }
    if a.point() != b.point() {
        return Err(Error::PointMismatch("evaluation point".into()));
    }
    let mut worst = (0, 0);
    let mut max = 0.0;
    for i in 0..a.dim() {
        for j in 0..a.dim() {
            let d = (a.get(i, j) - b.get(i, j)).abs();
            if d > max {
                max = d;
                worst = (i, j);
            }
        }
    }
    let names = a.parameters();
    Ok(ComparisonReport {
        max_abs_diff: max,
        worst_component: worst,
        worst_parameters: (names[worst.0].clone(), names[worst.1].clone()),
        points: vec![PointDiff {
            point: a.point().clone(),
            max_abs_diff: max,
            worst_component: worst,
        }],
        tolerance: tol,
    })
}
