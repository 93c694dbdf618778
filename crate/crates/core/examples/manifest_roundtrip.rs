//! A hand-written manifest: a qubit rotated about z and then x.
//!
//! ```bash
//! cargo run --example manifest_roundtrip
//! ```

use statemetric::manifest::Manifest;
use statemetric::manifold::ParameterPoint;

const QUBIT: &str = r#"{
  "name": "qubit zx",
  "dimension": 2,
  "gamma": 1.0,
  "generators": [
    {"name": "Z", "matrix": [[[0.5, 0.0], [0.0, 0.0]], [[0.0, 0.0], [-0.5, 0.0]]]},
    {"name": "X", "matrix": [[[0.0, 0.0], [0.5, 0.0]], [[0.5, 0.0], [0.0, 0.0]]]},
    {"name": "Y", "matrix": [[[0.0, 0.0], [0.0, -0.5]], [[0.0, 0.5], [0.0, 0.0]]]}
  ],
  "circuit": [
    {"generator": "Z", "parameter": "phi"},
    {"generator": "X", "parameter": "theta"}
  ],
  "initial_state": [[1.0, 0.0], [0.0, 0.0]]
}"#;

pub fn run() -> statemetric::Result<()> {
    let manifest = Manifest::from_json(QUBIT)?;
    let manifold = manifest.build()?;
    let rep = manifold.circuit.algebra();
    println!(
        "{}: {} generators, algebra {}",
        manifest.name,
        rep.len(),
        manifest.kind(rep)
    );

    let g = manifold.metric(&ParameterPoint::from_pairs(&[("phi", 0.3), ("theta", 1.0)]))?;
    println!("g = {:?}", g.matrix().as_slice());

    let canonical = manifest.to_json();
    let again = Manifest::from_json(&canonical)?.to_json();
    println!("{canonical}");
    println!("re-emitted identically: {}", canonical == again);

    let mut broken = manifest.clone();
    broken.generators[1].matrix[0][1] = [0.5, 0.1];
    if let Err(e) = broken.build() {
        println!("rejected: {e}");
    }
    Ok(())
}

fn main() {
    if let Err(e) = run() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
