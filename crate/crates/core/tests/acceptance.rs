use statemetric::verify::{run_criterion, SuiteConfig};

fn criterion(id: usize) {
    let outcome = run_criterion(id, &SuiteConfig::default()).unwrap();
    println!("{outcome}");
    assert!(outcome.passed, "{outcome}");
}

#[test]
fn c01_three_way_agreement() {
    criterion(1);
}

#[test]
fn c02_sphere_reproduction() {
    criterion(2);
}

#[test]
fn c03_flat_heisenberg() {
    criterion(3);
}

#[test]
fn c04_two_spin_spheres() {
    criterion(4);
}

#[test]
fn c05_adjoint_equivalence() {
    criterion(5);
}

#[test]
fn c06_algebra_validation() {
    criterion(6);
}

#[test]
fn c07_degeneracy_detection() {
    criterion(7);
}

#[test]
fn c08_euler_time_bridge() {
    criterion(8);
}

#[test]
fn c09_spin1_superposition() {
    criterion(9);
}

#[test]
fn c10_oracle_quality() {
    criterion(10);
}
