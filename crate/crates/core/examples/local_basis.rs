//! Local basis vectors γΔÃ_j|ψ⟩ and their Gram matrix.
//!
//! ```bash
//! cargo run --example local_basis
//! ```

use statemetric::manifold::{gram_metric, local_basis_vectors, ParameterPoint};
use statemetric::models::{spin_model, SpinModelSpec};

pub fn run() -> statemetric::Result<()> {
    let model = spin_model(&SpinModelSpec::eigenstate(1.5, 0.5))?;
    let point = ParameterPoint::from_pairs(&[("theta1", -0.6), ("theta2", 2.1), ("theta3", 0.9)]);
    let vectors = local_basis_vectors(&model.circuit, &point, &model.initial, model.gamma)?;
    for (j, v) in vectors.iter().enumerate() {
        println!("|e_{}| = {:.6}", j + 1, v.norm());
    }
    let gram = gram_metric(&vectors);
    let g = model.metric(&point)?;
    println!("Gram matrix:{gram:.6}");
    println!("max |Gram - g| = {:.1e}", (gram - g.matrix()).abs().max());
    Ok(())
}

fn main() {
    if let Err(e) = run() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
