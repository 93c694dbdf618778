//! Conjugated generators from the adjoint representation, compared with
//! direct matrix conjugation.
//!
//! ```bash
//! cargo run --example bch_adjoint
//! ```

use statemetric::liealg::{tilde_by_adjoint, tilde_by_conjugation, tilde_coefficients};
use statemetric::manifold::ParameterPoint;
use statemetric::models::{oscillator_model, spin_model, OscillatorModelSpec, SpinModelSpec};

pub fn run() -> statemetric::Result<()> {
    let model = spin_model(&SpinModelSpec::eigenstate(1.0, 1.0))?;
    let (t2, t3) = (0.8, -1.3);
    let point = ParameterPoint::from_pairs(&[("theta1", 0.4), ("theta2", t2), ("theta3", t3)]);
    let names = model.circuit.algebra().names().to_vec();
    for (j, v) in tilde_coefficients(&model.circuit, &point)?
        .iter()
        .enumerate()
    {
        let terms: Vec<String> = v
            .iter()
            .zip(&names)
            .map(|(c, n)| format!("{:+.6} {n}", c.re))
            .collect();
        println!("A~{} = {}", j + 1, terms.join(" "));
    }
    println!(
        "closed form for A~1: {:+.6} Sz {:+.6} Sx {:+.6} Sy",
        t2.cos(),
        t2.sin() * t3.sin(),
        t2.sin() * t3.cos()
    );

    let a = tilde_by_adjoint(&model.circuit, &point)?;
    let b = tilde_by_conjugation(&model.circuit, &point)?;
    let diff = a
        .iter()
        .zip(&b)
        .map(|(x, y)| x.max_abs_diff(y))
        .fold(0.0, f64::max);
    println!("spin-1: max |adjoint - conjugation| = {diff:.1e}");

    let osc = oscillator_model(&OscillatorModelSpec::new(0, 48))?;
    let point = ParameterPoint::from_pairs(&[("theta", 0.9), ("phi", -0.6)]);
    let window = osc.circuit.algebra().comparison_window();
    let a = tilde_by_adjoint(&osc.circuit, &point)?;
    let b = tilde_by_conjugation(&osc.circuit, &point)?;
    let diff = a
        .iter()
        .zip(&b)
        .map(|(x, y)| {
            x.leading_block(window)
                .max_abs_diff(&y.leading_block(window))
        })
        .fold(0.0, f64::max);
    println!("oscillator: max difference on the leading {window} levels = {diff:.1e}");
    Ok(())
}

fn main() {
    if let Err(e) = run() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
