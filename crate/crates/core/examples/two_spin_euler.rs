//! Two-spin evolution on span{|↑↓⟩, |↓↑⟩} written as an Euler-angle circuit,
//! and the sphere geometry of the two-spin manifolds.
//!
//! ```bash
//! cargo run --example two_spin_euler
//! ```

use std::f64::consts::PI;

use statemetric::geometry::{classify, metric_field, Sweep};
use statemetric::manifold::ParameterPoint;
use statemetric::models::{
    euler_from_time, two_spin_model, TwoSpinInitial, TwoSpinModelSpec, TwoSpinVariant,
};

pub fn run() -> statemetric::Result<()> {
    let spec = TwoSpinModelSpec {
        j1: 1.0,
        j2: 0.5,
        field: 2.0,
        ..TwoSpinModelSpec::new(TwoSpinVariant::DmXx, TwoSpinInitial::UpDown)
    };
    for t in [0.0, 0.25, 1.0, 2.5] {
        let bridge = euler_from_time(&spec, t)?;
        let [t1, t2, t3] = bridge.angles;
        let ratio = ((t1 - t3) / 2.0).tan();
        println!(
            "t={t:<4} theta=({t1:+.6}, {t2:.6}, {t3:+.6}) tan((t1-t3)/2)={ratio:.9} J2/J1={} reproduction {:.1e}",
            spec.j2 / spec.j1,
            bridge.reproduction_residual
        );
    }

    let sweeps = [
        Sweep::new("theta1", -1.0, 1.0, 3),
        Sweep::new("theta2", 0.4, 2.6, 5),
    ];
    let base = ParameterPoint::from_pairs(&[("theta3", 0.0)]);
    for (variant, initial) in [
        (TwoSpinVariant::DmXx, TwoSpinInitial::UpDown),
        (TwoSpinVariant::Sum, TwoSpinInitial::UpUp),
        (
            TwoSpinVariant::Directional {
                eta: PI / 2.0,
                chi: 0.0,
            },
            TwoSpinInitial::PlusMinus,
        ),
    ] {
        let spec = TwoSpinModelSpec {
            gamma: 3.0,
            ..TwoSpinModelSpec::new(variant, initial)
        };
        let model = two_spin_model(&spec)?;
        let report = classify(&metric_field(&model, &sweeps, &base)?)?;
        println!(
            "{}: {} (gamma/2 = 1.5)",
            variant.id(),
            report.classification
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
