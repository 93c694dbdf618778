//! Phase-space translations of a Fock state give a flat plane whose scale
//! grows with the excitation number.
//!
//! ```bash
//! cargo run --example oscillator_plane
//! ```

use statemetric::geometry::{classify, metric_field, Sweep};
use statemetric::manifold::ParameterPoint;
use statemetric::models::{oscillator_model, OscillatorModelSpec};

pub fn run() -> statemetric::Result<()> {
    let sweeps = [
        Sweep::new("theta", -1.0, 1.0, 5),
        Sweep::new("phi", -1.0, 1.0, 5),
    ];
    for n in 0..3 {
        let model = oscillator_model(&OscillatorModelSpec::new(n, 64))?;
        let g = model.metric(&ParameterPoint::from_pairs(&[
            ("theta", 0.7),
            ("phi", -0.2),
        ]))?;
        let field = metric_field(&model, &sweeps, &ParameterPoint::new())?;
        let report = classify(&field)?;
        println!(
            "n={n}: g_tt={:.9} g_pp={:.9} g_tp={:.1e} (2n+1)/2={} variation={:.1e} -> {}",
            g.get(0, 0),
            g.get(1, 1),
            g.get(0, 1),
            (2 * n + 1) as f64 / 2.0,
            report.metric_variation,
            report.classification
        );
    }

    // m and omega rescale x and p in opposite directions
    let spec = OscillatorModelSpec {
        mass: 2.0,
        omega: 1.5,
        ..OscillatorModelSpec::new(0, 64)
    };
    let g = oscillator_model(&spec)?
        .metric(&ParameterPoint::from_pairs(&[("theta", 0.0), ("phi", 0.0)]))?;
    println!(
        "m=2, omega=1.5: g_tt={:.6} g_pp={:.6}",
        g.get(0, 0),
        g.get(1, 1)
    );
    Ok(())
}

fn main() {
    if let Err(e) = run() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
