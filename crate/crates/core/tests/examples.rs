#[allow(dead_code)]
#[path = "../examples/bch_adjoint.rs"]
mod bch_adjoint;

#[allow(dead_code)]
#[path = "../examples/local_basis.rs"]
mod local_basis;

#[allow(dead_code)]
#[path = "../examples/manifest_roundtrip.rs"]
mod manifest_roundtrip;

#[allow(dead_code)]
#[path = "../examples/metric_grid.rs"]
mod metric_grid;

#[allow(dead_code)]
#[path = "../examples/oracle_convergence.rs"]
mod oracle_convergence;

#[allow(dead_code)]
#[path = "../examples/oscillator_plane.rs"]
mod oscillator_plane;

#[allow(dead_code)]
#[path = "../examples/spin1_superposition.rs"]
mod spin1_superposition;

#[allow(dead_code)]
#[path = "../examples/spin_sphere.rs"]
mod spin_sphere;

#[allow(dead_code)]
#[path = "../examples/structure_constants.rs"]
mod structure_constants;

#[allow(dead_code)]
#[path = "../examples/two_spin_euler.rs"]
mod two_spin_euler;

#[test]
fn bch_adjoint_runs() {
    bch_adjoint::run().expect("bch_adjoint example should run");
}

#[test]
fn local_basis_runs() {
    local_basis::run().expect("local_basis example should run");
}

#[test]
fn manifest_roundtrip_runs() {
    manifest_roundtrip::run().expect("manifest_roundtrip example should run");
}

#[test]
fn metric_grid_runs() {
    metric_grid::run().expect("metric_grid example should run");
}

#[test]
fn oracle_convergence_runs() {
    oracle_convergence::run().expect("oracle_convergence example should run");
}

#[test]
fn oscillator_plane_runs() {
    oscillator_plane::run().expect("oscillator_plane example should run");
}

#[test]
fn spin1_superposition_runs() {
    spin1_superposition::run().expect("spin1_superposition example should run");
}

#[test]
fn spin_sphere_runs() {
    spin_sphere::run().expect("spin_sphere example should run");
}

#[test]
fn structure_constants_runs() {
    structure_constants::run().expect("structure_constants example should run");
}

#[test]
fn two_spin_euler_runs() {
    two_spin_euler::run().expect("two_spin_euler example should run");
}
