//! Recovering structure constants from generator matrices.
//!
//! ```bash
//! cargo run --example structure_constants
//! ```

use statemetric::liealg::{detect_kind, extract_structure_constants, validate_algebra};
use statemetric::linalg::ComplexMatrix;
use statemetric::models::position_momentum;
use statemetric::Error;

pub fn run() -> statemetric::Result<()> {
    let i = num_complex::Complex64::i();
    let zero = num_complex::Complex64::new(0.0, 0.0);
    let half = num_complex::Complex64::new(0.5, 0.0);
    let sx = ComplexMatrix::from_rows(2, &[zero, half, half, zero])?;
    let sy = ComplexMatrix::from_rows(2, &[zero, -i * 0.5, i * 0.5, zero])?;
    let sz = ComplexMatrix::from_rows(2, &[half, zero, zero, -half])?;

    let rep = extract_structure_constants(
        vec![
            ("Sx".into(), sx.clone()),
            ("Sy".into(), sy.clone()),
            ("Sz".into(), sz.clone()),
        ],
        false,
    )?;
    let names = rep.names();
    for a in 0..3 {
        for b in (a + 1)..3 {
            let terms: Vec<String> = (0..3)
                .filter(|&c| rep.structure_constant(a, b, c).norm() > 1e-12)
                .map(|c| format!("({}) {}", rep.structure_constant(a, b, c), names[c]))
                .collect();
            println!("[{}, {}] = {}", names[a], names[b], terms.join(" + "));
        }
    }
    let kind = detect_kind(&rep);
    let report = validate_algebra(&rep, kind);
    println!(
        "detected {kind}, Jacobi residual {:.1e}, passed {}",
        report.jacobi_residual,
        report.passed()
    );

    // two generators alone do not close
    match extract_structure_constants(vec![("Sx".into(), sx), ("Sy".into(), sy)], false) {
        Err(Error::NotClosed {
            left,
            right,
            residual,
        }) => {
            println!("span(Sx, Sy) is not closed: [{left}, {right}] misses by {residual:.2}")
        }
        other => println!("unexpected: {other:?}"),
    }

    // truncated oscillator: [x, p] = i everywhere except the last Fock level
    let n = 24;
    let (x, p) = position_momentum(1.0, 1.0, n);
    let generators = vec![
        ("x".to_string(), x),
        ("p".to_string(), p),
        ("I".to_string(), ComplexMatrix::identity(n)),
    ];
    match extract_structure_constants(generators.clone(), false) {
        Err(e) => println!("full {n}-level space: {e}"),
        Ok(_) => println!("full {n}-level space closed"),
    }
    let rep = extract_structure_constants(generators, true)?;
    println!(
        "leading {} levels: c_xp^I = {}, detected {}",
        rep.closure_window(),
        rep.structure_constant(0, 1, 2),
        detect_kind(&rep)
    );
    Ok(())
}

fn main() {
    if let Err(e) = run() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
