//! Spin-1 superpositions: variances of the initial state and metric rank.
//!
//! ```bash
//! cargo run --example spin1_superposition
//! ```

use num_complex::Complex64;
use statemetric::geometry::rank_analysis;
use statemetric::linalg::{anticommutator, expectation, ComplexMatrix, StateVector};
use statemetric::manifold::ParameterPoint;
use statemetric::models::{spin_model, spin_operators, SpinInitial, SpinModelSpec};

fn variances(psi: &StateVector) -> statemetric::Result<[f64; 4]> {
    let ops = spin_operators(1.0)?;
    let var = |a: &ComplexMatrix| -> statemetric::Result<f64> {
        let mean = expectation(psi, a)?.re;
        Ok(expectation(psi, &(a * a))?.re - mean * mean)
    };
    let cov = expectation(psi, &anticommutator(&ops.x, &ops.y)?)?.re
        - 2.0 * expectation(psi, &ops.x)?.re * expectation(psi, &ops.y)?.re;
    Ok([var(&ops.z)?, var(&ops.x)?, var(&ops.y)?, cov])
}

pub fn run() -> statemetric::Result<()> {
    let point = ParameterPoint::from_pairs(&[("theta1", 0.5), ("theta2", 1.2), ("theta3", 2.0)]);
    let r = std::f64::consts::FRAC_1_SQRT_2;
    // amplitudes ordered m = 1, 0, -1
    for (label, coeffs) in [
        (
            "C1 = C-1 = 1/sqrt2",
            vec![
                Complex64::new(r, 0.0),
                Complex64::new(0.0, 0.0),
                Complex64::new(r, 0.0),
            ],
        ),
        (
            "generic",
            vec![
                Complex64::new(0.6, 0.0),
                Complex64::new(0.0, 0.48),
                Complex64::new(0.4, -0.5),
            ],
        ),
    ] {
        let psi = StateVector::from_slice(&coeffs)?;
        let spec = SpinModelSpec {
            s: 1.0,
            initial: SpinInitial::Coefficients(psi.amplitudes().iter().copied().collect()),
            gamma: 1.0,
        };
        let model = spin_model(&spec)?;
        let [vz, vx, vy, cxy] = variances(&psi)?;
        let analysis = rank_analysis(&model.metric(&point)?);
        println!(
            "{label}: var(Sz)={vz:.6} var(Sx)={vx:.6} var(Sy)={vy:.6} cov(Sx,Sy)={cxy:.6} rank {} eigenvalues {:?}",
            analysis.rank, analysis.eigenvalues
        );
    }
    Ok(())
}

fn main() {
    if let Err(e) = run() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
