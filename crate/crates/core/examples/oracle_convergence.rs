//! Finite-difference and fidelity metrics against the analytic metric.
//!
//! ```bash
//! cargo run --example oracle_convergence
//! ```

use statemetric::manifold::ParameterPoint;
use statemetric::models::{spin_model, SpinModelSpec};
use statemetric::oracle::{compare, fd_metric, fidelity_metric};
use statemetric::verify::log_log_slope;

pub fn run() -> statemetric::Result<()> {
    let model = spin_model(&SpinModelSpec::eigenstate(1.0, 1.0))?;
    let point = ParameterPoint::from_pairs(&[("theta1", 0.2), ("theta2", 1.3), ("theta3", 0.7)]);
    let exact = model.metric(&point)?;
    let steps = [1e-2, 1e-3, 1e-4];
    let mut errors = Vec::new();
    for h in steps {
        let fd = fd_metric(&model.circuit, &point, &model.initial, model.gamma, h)?;
        let report = compare(&exact, &fd, 1e-6)?;
        println!("h={h:e}: {report}");
        errors.push(report.max_abs_diff);
    }
    println!("log-log slope {:.3}", log_log_slope(&steps, &errors));

    let fd = fd_metric(&model.circuit, &point, &model.initial, model.gamma, 1e-4)?;
    let fid = fidelity_metric(&model.circuit, &point, &model.initial, model.gamma, 1e-4)?;
    println!("fidelity vs fd: {}", compare(&fd, &fid, 1e-5)?);
    Ok(())
}

fn main() {
    if let Err(e) = run() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
