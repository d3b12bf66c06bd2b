use virasoro_core::properties::{self, PropertyOutcome, CASES};

fn check(o: PropertyOutcome) {
    assert!(o.cases >= 1000);
    assert!(o.pass, "{}: {}", o.name, o.failure.unwrap_or_default());
}

#[test]
fn ring_axioms() {
    check(properties::ring_axioms(CASES));
}

#[test]
fn determinant_vs_cofactor() {
    check(properties::determinant_vs_cofactor(CASES));
}

#[test]
fn factor_round_trip() {
    check(properties::factor_round_trip(CASES));
}

#[test]
fn laurent_round_trip() {
    check(properties::laurent_round_trip(CASES));
}

#[test]
fn linear_solve_residual() {
    check(properties::linear_solve_residual(CASES));
}

#[test]
fn gram_symmetry_and_adjointness() {
    check(properties::gram_symmetry_adjointness(CASES));
}

#[test]
fn virasoro_bracket() {
    check(properties::bracket_consistency(CASES));
}
