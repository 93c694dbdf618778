//! Built-in systems: spin-s rotations, the displaced harmonic oscillator,
//! and the two-spin so(3) realizations, plus the Euler-angle decomposition
//! of the two-spin time evolution.
//!
//! Conventions: ħ = 1; spin bases are ordered m = s, s-1, ..., -s; two-qubit
//! bases are ordered |↑↑⟩, |↑↓⟩, |↓↑⟩, |↓↓⟩.

use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::liealg::extract_structure_constants;
use crate::linalg::{c, expm_phase, ComplexMatrix, StateVector, I};
use crate::manifold::{build_unitary, CircuitSpec, ParameterPoint, StateManifold};

pub const CATALOG: [&str; 5] = [
    "spin",
    "oscillator",
    "two_spin_dm_xx",
    "two_spin_sum",
    "two_spin_directional",
];

const NORM_TOL: f64 = 1e-12;

/// Euler-angle parameter names shared by every so(3) model.
pub const EULER_PARAMETERS: [&str; 3] = ["theta1", "theta2", "theta3"];

#[derive(Clone, Debug)]
pub struct SpinOperators {
    pub x: ComplexMatrix,
    pub y: ComplexMatrix,
    pub z: ComplexMatrix,
}

fn check_spin(s: f64) -> Result<usize> {
    let twice = 2.0 * s;
    if s.is_nan() || s <= 0.0 || (twice - twice.round()).abs() > 1e-12 || twice > 400.0 {
        return Err(Error::InvalidSpin(s));
    }
    Ok(twice.round() as usize + 1)
}

/// Angular momentum matrices for spin `s` in the S_z eigenbasis.
pub fn spin_operators(s: f64) -> Result<SpinOperators> {
    let dim = check_spin(s)?;
    let m = |i: usize| s - i as f64;
    let z = ComplexMatrix::from_diagonal(&(0..dim).map(|i| c(m(i), 0.0)).collect::<Vec<_>>());
    // S_+ |m⟩ = sqrt(s(s+1) - m(m+1)) |m+1⟩, and |m+1⟩ sits one index up
    let raise = ComplexMatrix::from_fn(dim, |r, col| {
        if col == r + 1 {
            let mc = m(col);
            c((s * (s + 1.0) - mc * (mc + 1.0)).sqrt(), 0.0)
        } else {
            c(0.0, 0.0)
        }
    });
    let lower = raise.adjoint();
    let x = (&raise + &lower).scale_real(0.5);
    let y = (&raise - &lower).scale(c(0.0, -0.5));
    Ok(SpinOperators { x, y, z })
}

#[derive(Clone, Debug, PartialEq)]
pub enum SpinInitial {
    /// S_z eigenstate with this eigenvalue.
    Eigenvalue(f64),
    /// Amplitudes C_m ordered m = s, s-1, ..., -s; must be normalized.
    Coefficients(Vec<Complex64>),
}

#[derive(Clone, Debug, PartialEq)]
pub struct SpinModelSpec {
    pub s: f64,
    pub initial: SpinInitial,
    pub gamma: f64,
}

impl SpinModelSpec {
    pub fn eigenstate(s: f64, m: f64) -> Self {
        Self {
            s,
            initial: SpinInitial::Eigenvalue(m),
            gamma: 1.0,
        }
    }

    pub fn with_gamma(mut self, gamma: f64) -> Self {
        self.gamma = gamma;
        self
    }
}

/// Sphere radius of an eigenstate orbit, (γ/√2) sqrt(s(s+1) - m²).
pub fn spin_sphere_radius(s: f64, m: f64, gamma: f64) -> f64 {
    gamma / 2f64.sqrt() * (s * (s + 1.0) - m * m).sqrt()
}

/// Allowed projections s, s-1, ..., -s.
pub fn spin_projections(s: f64) -> Result<Vec<f64>> {
    let dim = check_spin(s)?;
    Ok((0..dim).map(|i| s - i as f64).collect())
}

fn spin_initial_state(spec: &SpinModelSpec, dim: usize) -> Result<StateVector> {
    match &spec.initial {
        SpinInitial::Eigenvalue(m) => {
            let idx = spec.s - m;
            if (idx - idx.round()).abs() > 1e-12 || idx < -1e-12 || idx.round() as usize >= dim {
                return Err(Error::Parse(format!(
                    "m = {m} is not a projection of spin {}",
                    spec.s
                )));
            }
            Ok(StateVector::basis(dim, idx.round() as usize))
        }
        SpinInitial::Coefficients(cs) => {
            if cs.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    actual: cs.len(),
                });
            }
            StateVector::normalized_within(cs, NORM_TOL)
        }
    }
}

/// Spin-s rotation manifold with (A_1, A_2, A_3) = (S_z, S_x, S_y) and the
/// Euler circuit A_1 A_2 A_1.
pub fn spin_model(spec: &SpinModelSpec) -> Result<StateManifold> {
    spin_model_from_operators(spec, spin_operators(spec.s)?)
}

/// As [`spin_model`] but with caller-supplied spin matrices.
pub fn spin_model_from_operators(
    spec: &SpinModelSpec,
    ops: SpinOperators,
) -> Result<StateManifold> {
    let dim = check_spin(spec.s)?;
    if ops.z.dim() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            actual: ops.z.dim(),
        });
    }
    let initial = spin_initial_state(spec, dim)?;
    let rep = extract_structure_constants(
        vec![
            ("Sz".into(), ops.z),
            ("Sx".into(), ops.x),
            ("Sy".into(), ops.y),
        ],
        false,
    )?;
    let circuit = CircuitSpec::new(
        Arc::new(rep),
        &[
            ("Sz", EULER_PARAMETERS[0]),
            ("Sx", EULER_PARAMETERS[1]),
            ("Sz", EULER_PARAMETERS[2]),
        ],
    )?;
    let label = match &spec.initial {
        SpinInitial::Eigenvalue(m) => format!("spin s={} m={}", spec.s, m),
        SpinInitial::Coefficients(_) => format!("spin s={} superposition", spec.s),
    };
    StateManifold::new(label, circuit, initial, spec.gamma)
}

#[derive(Clone, Debug, PartialEq)]
pub struct OscillatorModelSpec {
    pub mass: f64,
    pub omega: f64,
    /// Initial Fock level n.
    pub level: usize,
    /// Fock-space dimension.
    pub truncation: usize,
    pub gamma: f64,
    /// Largest |θ|, |φ| the truncation must support.
    pub max_displacement: f64,
}

impl OscillatorModelSpec {
    pub fn new(level: usize, truncation: usize) -> Self {
        Self {
            mass: 1.0,
            omega: 1.0,
            level,
            truncation,
            gamma: 1.0,
            max_displacement: 1.0,
        }
    }
}

/// Population allowed on the two highest Fock levels at the corners of the
/// supported parameter box.
pub const LEAKAGE_TOL: f64 = 1e-8;

/// Position and momentum on an `n`-level Fock space.
pub fn position_momentum(
    mass: f64,
    omega: f64,
    truncation: usize,
) -> (ComplexMatrix, ComplexMatrix) {
    let a = ComplexMatrix::from_fn(truncation, |r, col| {
        if col == r + 1 {
            c((col as f64).sqrt(), 0.0)
        } else {
            c(0.0, 0.0)
        }
    });
    let ad = a.adjoint();
    let x = (&ad + &a).scale_real(1.0 / (2.0 * mass * omega).sqrt());
    let p = (&ad - &a).scale(I * (mass * omega / 2.0).sqrt());
    (x, p)
}

/// Translations exp(-iθx) exp(-iφp) acting on the Fock state |n⟩.
pub fn oscillator_model(spec: &OscillatorModelSpec) -> Result<StateManifold> {
    if !(spec.mass > 0.0 && spec.omega > 0.0) {
        return Err(Error::Parse("mass and frequency must be positive".into()));
    }
    if spec.truncation <= spec.level + 4 {
        return Err(Error::TruncationTooSmall {
            level: spec.level,
            truncation: spec.truncation,
        });
    }
    let n = spec.truncation;
    let (x, p) = position_momentum(spec.mass, spec.omega, n);
    let rep = extract_structure_constants(
        vec![
            ("x".into(), x),
            ("p".into(), p),
            ("I".into(), ComplexMatrix::identity(n)),
        ],
        true,
    )?;
    let circuit = CircuitSpec::new(Arc::new(rep), &[("x", "theta"), ("p", "phi")])?;
    let initial = StateVector::basis(n, spec.level);

    let d = spec.max_displacement;
    for (t, f) in [(d, d), (d, -d), (-d, d), (-d, -d)] {
        let psi = circuit.state_at(&[t, f], &initial);
        let edge: f64 = psi.iter().skip(n - 2).map(|z| z.norm_sqr()).sum();
        if edge > LEAKAGE_TOL {
            return Err(Error::TruncationTooSmall {
                level: spec.level,
                truncation: n,
            });
        }
    }
    StateManifold::new(
        format!("oscillator n={} N={}", spec.level, n),
        circuit,
        initial,
        spec.gamma,
    )
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum TwoSpinVariant {
    /// Dzyaloshinsky-Moriya z-term, XX exchange, staggered z field.
    DmXx,
    /// Symmetric exchange counterpart acting on |↑↑⟩, |↓↓⟩.
    Sum,
    /// Field along n = (sinη cosχ, sinη sinχ, cosη), DM along n, Heisenberg minus n-part.
    Directional { eta: f64, chi: f64 },
}

impl TwoSpinVariant {
    pub fn id(&self) -> &'static str {
        match self {
            TwoSpinVariant::DmXx => "two_spin_dm_xx",
            TwoSpinVariant::Sum => "two_spin_sum",
            TwoSpinVariant::Directional { .. } => "two_spin_directional",
        }
    }

    fn direction(&self) -> [f64; 3] {
        match *self {
            TwoSpinVariant::Directional { eta, chi } => {
                [eta.sin() * chi.cos(), eta.sin() * chi.sin(), eta.cos()]
            }
            _ => [0.0, 0.0, 1.0],
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum TwoSpinInitial {
    UpUp,
    UpDown,
    DownUp,
    DownDown,
    /// |+⟩|−⟩ along the variant's direction (z unless directional).
    PlusMinus,
    MinusPlus,
    /// Four amplitudes in the |↑↑⟩, |↑↓⟩, |↓↑⟩, |↓↓⟩ basis.
    Amplitudes(Vec<Complex64>),
}

#[derive(Clone, Debug, PartialEq)]
pub struct TwoSpinModelSpec {
    pub variant: TwoSpinVariant,
    pub j1: f64,
    pub j2: f64,
    /// h_z for the first two variants, h for the directional one.
    pub field: f64,
    pub initial: TwoSpinInitial,
    pub gamma: f64,
}

impl TwoSpinModelSpec {
    pub fn new(variant: TwoSpinVariant, initial: TwoSpinInitial) -> Self {
        Self {
            variant,
            j1: 1.0,
            j2: 1.0,
            field: 1.0,
            initial,
            gamma: 1.0,
        }
    }
}

fn two_site(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    a.kron(b)
}

/// so(3) generators (A_1, A_2, A_3) of a two-spin variant.
pub fn two_spin_generators(variant: TwoSpinVariant) -> [ComplexMatrix; 3] {
    let s = spin_operators(0.5).expect("spin 1/2");
    let id = ComplexMatrix::identity(2);
    let comps = [&s.x, &s.y, &s.z];
    let first: Vec<ComplexMatrix> = comps.iter().map(|m| two_site(m, &id)).collect();
    let second: Vec<ComplexMatrix> = comps.iter().map(|m| two_site(&id, m)).collect();
    let pair = |i: usize, j: usize| two_site(comps[i], comps[j]);
    let (x, y, z) = (0, 1, 2);
    match variant {
        TwoSpinVariant::DmXx => [
            (&first[z] - &second[z]).scale_real(0.5),
            &pair(x, y) - &pair(y, x),
            &pair(x, x) + &pair(y, y),
        ],
        TwoSpinVariant::Sum => [
            (&first[z] + &second[z]).scale_real(0.5),
            &pair(x, x) - &pair(y, y),
            &pair(x, y) + &pair(y, x),
        ],
        TwoSpinVariant::Directional { .. } => {
            let n = variant.direction();
            let dot = |ops: &[ComplexMatrix]| {
                (0..3).fold(ComplexMatrix::zeros(4), |acc, i| {
                    &acc + &ops[i].scale_real(n[i])
                })
            };
            let a1 = (&dot(&first) - &dot(&second)).scale_real(0.5);
            // n · (S¹ × S²)
            let mut a2 = ComplexMatrix::zeros(4);
            for (i, j, k) in [(0, 1, 2), (1, 2, 0), (2, 0, 1)] {
                a2 = &a2 + &(&pair(j, k) - &pair(k, j)).scale_real(n[i]);
            }
            let heis = (0..3).fold(ComplexMatrix::zeros(4), |acc, i| &acc + &pair(i, i));
            let a3 = &heis - &(&dot(&first) * &dot(&second));
            [a1, a2, a3]
        }
    }
}

fn single_spin_states(variant: TwoSpinVariant) -> ([Complex64; 2], [Complex64; 2]) {
    let (eta, chi) = match variant {
        TwoSpinVariant::Directional { eta, chi } => (eta, chi),
        _ => (0.0, 0.0),
    };
    let phase = Complex64::from_polar(1.0, chi);
    let (ch, sh) = ((eta / 2.0).cos(), (eta / 2.0).sin());
    let plus = [c(ch, 0.0), phase * sh];
    let minus = [c(-sh, 0.0), phase * ch];
    (plus, minus)
}

fn two_spin_initial(spec: &TwoSpinModelSpec) -> Result<StateVector> {
    let product = |a: [Complex64; 2], b: [Complex64; 2]| {
        StateVector::from_slice(&[a[0] * b[0], a[0] * b[1], a[1] * b[0], a[1] * b[1]])
    };
    match &spec.initial {
        TwoSpinInitial::UpUp => Ok(StateVector::basis(4, 0)),
        TwoSpinInitial::UpDown => Ok(StateVector::basis(4, 1)),
        TwoSpinInitial::DownUp => Ok(StateVector::basis(4, 2)),
        TwoSpinInitial::DownDown => Ok(StateVector::basis(4, 3)),
        TwoSpinInitial::PlusMinus => {
            let (p, m) = single_spin_states(spec.variant);
            product(p, m)
        }
        TwoSpinInitial::MinusPlus => {
            let (p, m) = single_spin_states(spec.variant);
            product(m, p)
        }
        TwoSpinInitial::Amplitudes(a) => {
            if a.len() != 4 {
                return Err(Error::DimensionMismatch {
                    expected: 4,
                    actual: a.len(),
                });
            }
            StateVector::normalized_within(a, NORM_TOL)
        }
    }
}

/// Two-spin manifold with the Euler circuit A_1 A_2 A_1.
///
/// For the first variant the angles correspond to θ_1 = h_z t_1,
/// θ_2 = J_1 t_2, θ_3 = h_z t_3 of piecewise-constant pulses.
pub fn two_spin_model(spec: &TwoSpinModelSpec) -> Result<StateManifold> {
    let [a1, a2, a3] = two_spin_generators(spec.variant);
    let rep = extract_structure_constants(
        vec![("A1".into(), a1), ("A2".into(), a2), ("A3".into(), a3)],
        false,
    )?;
    let circuit = CircuitSpec::new(
        Arc::new(rep),
        &[
            ("A1", EULER_PARAMETERS[0]),
            ("A2", EULER_PARAMETERS[1]),
            ("A1", EULER_PARAMETERS[2]),
        ],
    )?;
    let initial = two_spin_initial(spec)?;
    StateManifold::new(spec.variant.id(), circuit, initial, spec.gamma)
}

/// Hamiltonian of a two-spin variant in terms of its generators.
pub fn two_spin_hamiltonian(spec: &TwoSpinModelSpec) -> ComplexMatrix {
    let [a1, a2, a3] = two_spin_generators(spec.variant);
    let (j1, j2, h) = (spec.j1, spec.j2, spec.field);
    match spec.variant {
        TwoSpinVariant::DmXx => &(&a2.scale_real(j1) + &a3.scale_real(j2)) + &a1.scale_real(h),
        TwoSpinVariant::Sum => &(&a3.scale_real(j1) + &a2.scale_real(j2)) + &a1.scale_real(h),
        TwoSpinVariant::Directional { .. } => {
            &(&a1.scale_real(j1) + &a2.scale_real(j2)) + &a3.scale_real(h)
        }
    }
}

/// Euler angles of exp(-iHt) on the |↑↓⟩, |↓↑⟩ subspace.
#[derive(Clone, Debug)]
pub struct EulerBridge {
    /// (θ_1, θ_2, θ_3) with θ_2 ∈ [0, π] and θ_1, θ_3 ∈ (-π, π].
    pub angles: [f64; 3],
    /// sqrt(J_1² + J_2² + h_z²) / 2
    pub omega: f64,
    /// Largest matrix element of exp(-iHt) coupling the subspace to its complement.
    pub leak: f64,
    /// max |block - e^{iφ} U(θ) block| after the best global phase.
    pub reproduction_residual: f64,
    /// tan((θ_1 - θ_3)/2) - J_2/J_1, when both sides are defined.
    pub ratio_residual: Option<f64>,
    /// |sin(s) cos(ωt) - h_z/(2ω) sin(ωt) cos(s)| with s = (θ_1 + θ_3)/2.
    pub sum_residual: f64,
    /// ||cos(θ_2/2) cos(s)| - |cos(ωt)||
    pub cosine_residual: f64,
}

/// Subspace leak tolerance for [`euler_from_time`].
pub const LEAK_TOL: f64 = 1e-10;
const SUBSPACE: [usize; 2] = [1, 2];

fn wrap_angle(x: f64) -> f64 {
    let y = x.rem_euclid(2.0 * PI);
    if y > PI {
        y - 2.0 * PI
    } else {
        y
    }
}

fn block(m: &ComplexMatrix) -> [[Complex64; 2]; 2] {
    let [a, b] = SUBSPACE;
    [[m.get(a, a), m.get(a, b)], [m.get(b, a), m.get(b, b)]]
}

/// Decomposes exp(-iHt) of the DM/XX Hamiltonian into the Euler circuit.
pub fn euler_from_time(spec: &TwoSpinModelSpec, t: f64) -> Result<EulerBridge> {
    if spec.variant != TwoSpinVariant::DmXx {
        return Err(Error::BadVariant(format!(
            "Euler-time bridge is defined for two_spin_dm_xx, not {}",
            spec.variant.id()
        )));
    }
    if !t.is_finite() {
        return Err(Error::Parse(format!("time must be finite, got {t}")));
    }
    let h = two_spin_hamiltonian(spec);
    let u = expm_phase(&h, t)?;
    let mut leak: f64 = 0.0;
    for r in 0..4 {
        for col in 0..4 {
            if SUBSPACE.contains(&r) != SUBSPACE.contains(&col) {
                leak = leak.max(u.get(r, col).norm());
            }
        }
    }
    if leak > LEAK_TOL {
        return Err(Error::SubspaceLeak(leak));
    }

    let [a1, a2, _] = two_spin_generators(spec.variant);
    let (b1, b2) = (block(&a1), block(&a2));
    let off_diag_ok = b2[0][0].norm() < 1e-12 && b2[1][1].norm() < 1e-12;
    if (b1[0][0] - c(0.5, 0.0)).norm() > 1e-12
        || (b1[1][1] + c(0.5, 0.0)).norm() > 1e-12
        || b1[0][1].norm() > 1e-12
        || !off_diag_ok
    {
        return Err(Error::Numerical(
            "unexpected generator blocks on the subspace".into(),
        ));
    }
    // A_2 block = (cosβ σx + sinβ σy)/2
    let beta = (b2[1][0] * 2.0).arg();

    let v = block(&u);
    let (m00, m10) = (v[0][0].norm(), v[1][0].norm());
    let theta2 = 2.0 * m10.atan2(m00);
    let sum = if m00 > 1e-12 {
        -2.0 * v[0][0].arg()
    } else {
        0.0
    };
    let diff = if m10 > 1e-12 {
        2.0 * (v[1][0].arg() + PI / 2.0 - beta)
    } else {
        0.0
    };
    let theta1 = wrap_angle(0.5 * (sum + diff));
    let theta3 = wrap_angle(0.5 * (sum - diff));
    let angles = [theta1, theta2, theta3];

    let model = two_spin_model(spec)?;
    let point = ParameterPoint::from_pairs(&[
        (EULER_PARAMETERS[0], theta1),
        (EULER_PARAMETERS[1], theta2),
        (EULER_PARAMETERS[2], theta3),
    ]);
    let w = block(&build_unitary(&model.circuit, &point)?);
    let overlap: Complex64 = (0..2)
        .flat_map(|i| (0..2).map(move |j| (i, j)))
        .map(|(i, j)| w[i][j].conj() * v[i][j])
        .sum();
    let phase = Complex64::from_polar(1.0, overlap.arg());
    let mut reproduction: f64 = 0.0;
    for i in 0..2 {
        for j in 0..2 {
            reproduction = reproduction.max((v[i][j] - phase * w[i][j]).norm());
        }
    }
    if reproduction > LEAK_TOL {
        return Err(Error::Numerical(format!(
            "Euler angles reproduce the evolution only to {reproduction:e}"
        )));
    }

    let omega = (spec.j1 * spec.j1 + spec.j2 * spec.j2 + spec.field * spec.field).sqrt() / 2.0;
    let half_sum = 0.5 * (theta1 + theta3);
    let half_diff = 0.5 * (theta1 - theta3);
    let ratio_residual = (spec.j1 != 0.0 && m10 > 1e-12 && half_diff.cos().abs() > 1e-12)
        .then(|| half_diff.tan() - spec.j2 / spec.j1);
    let sum_residual = if omega > 0.0 {
        (half_sum.sin() * (omega * t).cos()
            - spec.field / (2.0 * omega) * (omega * t).sin() * half_sum.cos())
        .abs()
    } else {
        0.0
    };
    let cosine_residual = ((0.5 * theta2).cos() * half_sum.cos()).abs() - (omega * t).cos().abs();

    Ok(EulerBridge {
        angles,
        omega,
        leak,
        reproduction_residual: reproduction,
        ratio_residual,
        sum_residual,
        cosine_residual: cosine_residual.abs(),
    })
}
