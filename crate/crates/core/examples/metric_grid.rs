//! Metric field on a parameter grid, written as CSV.
//!
//! ```bash
//! cargo run --example metric_grid > sphere.csv
//! ```

use statemetric::cli::grid_csv;
use statemetric::geometry::{metric_field, Sweep};
use statemetric::manifold::ParameterPoint;
use statemetric::models::{spin_model, SpinModelSpec};

pub fn run() -> statemetric::Result<()> {
    let model = spin_model(&SpinModelSpec::eigenstate(0.5, 0.5))?;
    let base = ParameterPoint::from_pairs(&[("theta1", 0.0), ("theta3", 0.0)]);
    let field = metric_field(&model, &[Sweep::new("theta2", 0.1, 3.0, 12)], &base)?;
    print!("{}", grid_csv(&field));
    Ok(())
}

fn main() {
    if let Err(e) = run() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
