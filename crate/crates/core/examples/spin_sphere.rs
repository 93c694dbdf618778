//! Spin-s rotations of an S_z eigenstate trace out a sphere.
//!
//! ```bash
//! cargo run --example spin_sphere
//! ```

use statemetric::geometry::{classify, gauss_curvature, metric_field, Sweep, CURVATURE_STEP};
use statemetric::manifold::ParameterPoint;
use statemetric::models::{spin_model, spin_projections, spin_sphere_radius, SpinModelSpec};

pub fn run() -> statemetric::Result<()> {
    let point = ParameterPoint::from_pairs(&[("theta1", 0.3), ("theta2", 1.1), ("theta3", -0.4)]);
    for s in [0.5, 1.0, 1.5] {
        for m in spin_projections(s)? {
            let model = spin_model(&SpinModelSpec::eigenstate(s, m))?;
            let g = model.metric(&point)?;
            let k = gauss_curvature(&model, &point, ("theta1", "theta2"), CURVATURE_STEP)?;
            println!(
                "s={s} m={m:+}: g11={:.6} g22={:.6} g33={:.1e} K={:.6} R={:.6} (expected {:.6})",
                g.get(0, 0),
                g.get(1, 1),
                g.get(2, 2),
                k,
                1.0 / k.sqrt(),
                spin_sphere_radius(s, m, 1.0)
            );
        }
    }

    let model = spin_model(&SpinModelSpec::eigenstate(1.0, 0.0).with_gamma(2.0))?;
    let sweeps = [
        Sweep::new("theta1", -1.0, 1.0, 5),
        Sweep::new("theta2", 0.3, 2.8, 7),
    ];
    let field = metric_field(&model, &sweeps, &point)?;
    let report = classify(&field)?;
    println!(
        "spin-1, m=0, gamma=2 over {} nodes: {} (rank {}, null direction {:?})",
        field.nodes.len(),
        report.classification,
        report.rank,
        report.null_directions[0]
    );
    Ok(())
}

fn main() {
    if let Err(e) = run() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
