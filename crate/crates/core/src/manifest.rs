//! JSON manifest describing a state manifold: generators, circuit and
//! initial state. Complex numbers are `[re, im]` pairs.
//!
//! ```json
//! {
//!   "name": "spin s=1/2",
//!   "dimension": 2,
//!   "gamma": 1.0,
//!   "algebra": {"kind": "so3", "truncation_aware": false},
//!   "generators": [
//!     {
//!       "name": "Sz",
//!       "matrix": [
//!         [[0.5, 0.0], [0.0, 0.0]],
//!         [[0.0, 0.0], [-0.5, 0.0]]
//!       ]
//!     }
//!   ],
//!   "circuit": [
//!     {"generator": "Sz", "parameter": "theta1"}
//!   ],
//!   "initial_state": [[1.0, 0.0], [0.0, 0.0]]
//! }
//! ```
//!
//! `algebra` is optional; without it the algebra kind is detected and no
//! truncation window is applied.

use std::fmt::Write as _;
use std::sync::Arc;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::liealg::{detect_kind, extract_structure_constants, AlgebraKind, LieAlgebraRep};
use crate::linalg::{ComplexMatrix, StateVector};
use crate::manifold::{CircuitSpec, StateManifold};

/// Allowed deviation of ‖ψ‖² from 1.
pub const NORM_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DeclaredKind {
    So3,
    Heisenberg,
    Generic,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraHint {
    pub kind: DeclaredKind,
    #[serde(default)]
    pub truncation_aware: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorEntry {
    pub name: String,
    pub matrix: Vec<Vec<[f64; 2]>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CircuitEntry {
    pub generator: String,
    pub parameter: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Manifest {
    pub name: String,
    pub dimension: usize,
    pub gamma: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub algebra: Option<AlgebraHint>,
    pub generators: Vec<GeneratorEntry>,
    pub circuit: Vec<CircuitEntry>,
    pub initial_state: Vec<[f64; 2]>,
}

fn pair(z: Complex64) -> [f64; 2] {
    [z.re, z.im]
}

impl Manifest {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("manifest: {e}")))
    }

    pub fn from_path(path: &std::path::Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::from_json(&text)
    }

    /// Describes an existing manifold.
    pub fn from_manifold(manifold: &StateManifold, algebra: Option<AlgebraHint>) -> Self {
        let circuit = &manifold.circuit;
        let rep = circuit.algebra();
        let dim = rep.dim();
        let generators = rep
            .names()
            .iter()
            .zip(rep.generators())
            .map(|(name, m)| GeneratorEntry {
                name: name.clone(),
                matrix: (0..dim)
                    .map(|r| (0..dim).map(|c| pair(m.get(r, c))).collect())
                    .collect(),
            })
            .collect();
        let params = circuit.parameter_names();
        Manifest {
            name: manifold.label.clone(),
            dimension: dim,
            gamma: manifold.gamma,
            algebra,
            generators,
            circuit: (0..circuit.len())
                .map(|f| CircuitEntry {
                    generator: circuit.generator_name(f).to_string(),
                    parameter: params[f].clone(),
                })
                .collect(),
            initial_state: manifold
                .initial
                .amplitudes()
                .iter()
                .map(|&z| pair(z))
                .collect(),
        }
    }

    fn truncation_aware(&self) -> bool {
        self.algebra.as_ref().is_some_and(|a| a.truncation_aware)
    }

    pub fn algebra_rep(&self) -> Result<LieAlgebraRep> {
        let n = self.dimension;
        if n == 0 {
            return Err(Error::Parse("dimension: must be positive".into()));
        }
        if self.generators.is_empty() {
            return Err(Error::Parse(
                "generators: at least one generator is required".into(),
            ));
        }
        let mut named = Vec::with_capacity(self.generators.len());
        for (g, entry) in self.generators.iter().enumerate() {
            if entry.matrix.len() != n {
                return Err(Error::Parse(format!(
                    "generators[{g}].matrix: expected {n} rows, found {}",
                    entry.matrix.len()
                )));
            }
            let mut flat = Vec::with_capacity(n * n);
            for (r, row) in entry.matrix.iter().enumerate() {
                if row.len() != n {
                    return Err(Error::Parse(format!(
                        "generators[{g}].matrix[{r}]: expected {n} entries, found {}",
                        row.len()
                    )));
                }
                flat.extend(row.iter().map(|&[re, im]| Complex64::new(re, im)));
            }
            named.push((entry.name.clone(), ComplexMatrix::from_rows(n, &flat)?));
        }
        extract_structure_constants(named, self.truncation_aware())
    }

    /// Algebra kind to validate against: declared, else detected.
    pub fn kind(&self, rep: &LieAlgebraRep) -> AlgebraKind {
        match self.algebra.as_ref().map(|a| a.kind) {
            Some(DeclaredKind::So3) => AlgebraKind::So3,
            Some(DeclaredKind::Heisenberg) => {
                AlgebraKind::Heisenberg(rep.len().saturating_sub(1) / 2)
            }
            Some(DeclaredKind::Generic) => AlgebraKind::Generic,
            None => detect_kind(rep),
        }
    }

    pub fn initial(&self) -> Result<StateVector> {
        if self.initial_state.len() != self.dimension {
            return Err(Error::Parse(format!(
                "initial_state: expected {} amplitudes, found {}",
                self.dimension,
                self.initial_state.len()
            )));
        }
        let amps: Vec<Complex64> = self
            .initial_state
            .iter()
            .map(|&[re, im]| Complex64::new(re, im))
            .collect();
        StateVector::normalized_within(&amps, NORM_TOL)
    }

    pub fn build(&self) -> Result<StateManifold> {
        let rep = Arc::new(self.algebra_rep()?);
        self.build_with(rep)
    }

    pub fn build_with(&self, rep: Arc<LieAlgebraRep>) -> Result<StateManifold> {
        if self.circuit.is_empty() {
            return Err(Error::Parse(
                "circuit: at least one factor is required".into(),
            ));
        }
        if !(self.gamma.is_finite() && self.gamma > 0.0) {
            return Err(Error::Parse(format!(
                "gamma: must be positive, found {}",
                self.gamma
            )));
        }
        for (f, entry) in self.circuit.iter().enumerate() {
            if rep.index_of(&entry.generator).is_none() {
                return Err(Error::Parse(format!(
                    "circuit[{f}].generator: unknown generator `{}`",
                    entry.generator
                )));
            }
            if entry.parameter.is_empty() {
                return Err(Error::Parse(format!("circuit[{f}].parameter: empty name")));
            }
        }
        let factors: Vec<(&str, &str)> = self
            .circuit
            .iter()
            .map(|e| (e.generator.as_str(), e.parameter.as_str()))
            .collect();
        let circuit = CircuitSpec::new(rep, &factors)?;
        StateManifold::new(self.name.clone(), circuit, self.initial()?, self.gamma)
    }

    /// Canonical text: two-space indentation, one matrix row per line,
    /// shortest round-trip numbers, trailing newline.
    pub fn to_json(&self) -> String {
        let s = |x: &str| serde_json::to_string(x).expect("string serializes");
        let num = |x: f64| serde_json::to_string(&x).expect("finite number");
        let cplx = |p: &[f64; 2]| format!("[{}, {}]", num(p[0]), num(p[1]));
        let mut out = String::new();
        out.push_str("{\n");
        let _ = writeln!(out, "  \"name\": {},", s(&self.name));
        let _ = writeln!(out, "  \"dimension\": {},", self.dimension);
        let _ = writeln!(out, "  \"gamma\": {},", num(self.gamma));
        if let Some(a) = &self.algebra {
            let kind = serde_json::to_string(&a.kind).expect("kind serializes");
            let _ = writeln!(
                out,
                "  \"algebra\": {{\"kind\": {kind}, \"truncation_aware\": {}}},",
                a.truncation_aware
            );
        }
        out.push_str("  \"generators\": [\n");
        for (g, entry) in self.generators.iter().enumerate() {
            out.push_str("    {\n");
            let _ = writeln!(out, "      \"name\": {},", s(&entry.name));
            out.push_str("      \"matrix\": [\n");
            for (r, row) in entry.matrix.iter().enumerate() {
                let cells: Vec<String> = row.iter().map(cplx).collect();
                let sep = if r + 1 < entry.matrix.len() { "," } else { "" };
                let _ = writeln!(out, "        [{}]{sep}", cells.join(", "));
            }
            out.push_str("      ]\n");
            let sep = if g + 1 < self.generators.len() {
                ","
            } else {
                ""
            };
            let _ = writeln!(out, "    }}{sep}");
        }
        out.push_str("  ],\n");
        out.push_str("  \"circuit\": [\n");
        for (f, entry) in self.circuit.iter().enumerate() {
            let sep = if f + 1 < self.circuit.len() { "," } else { "" };
            let _ = writeln!(
                out,
                "    {{\"generator\": {}, \"parameter\": {}}}{sep}",
                s(&entry.generator),
                s(&entry.parameter)
            );
        }
        out.push_str("  ],\n");
        let amps: Vec<String> = self.initial_state.iter().map(cplx).collect();
        let _ = writeln!(out, "  \"initial_state\": [{}]", amps.join(", "));
        out.push_str("}\n");
        out
    }
}
