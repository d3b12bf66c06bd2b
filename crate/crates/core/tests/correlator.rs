use virasoro_core::algebra::{int, rat, RatFunc};
use virasoro_core::casimir::{casimir_zero_mode_unit, dimension_symbol};
use virasoro_core::correlator::{
    assemble_system, casimir_coefficient, consistency_constraint, derive_dimension, derive_g_polynomial,
    derive_killing, derive_trace_form, determining_level, eliminating_level, expansion_casimir_side,
    expansion_mode_side, mode_side_data, mode_side_trace, scan_levels, solve_ansatz, GAnsatz, Provenance,
};
use virasoro_core::error::Error;
use virasoro_core::verma::{singular_charges, CHARGE};

fn dimension(h: i64) -> RatFunc {
    derive_dimension(h).unwrap().function().unwrap().clone()
}

#[test]
fn levels() {
    assert_eq!([1, 2, 3].map(determining_level), [2, 4, 8]);
    assert_eq!([1, 2, 3].map(eliminating_level), [4, 6, 10]);
}

#[test]
fn killing_form() {
    let k = derive_killing().unwrap();
    let d = RatFunc::var("d");
    let c = RatFunc::var(CHARGE);
    assert_eq!(*k.function().unwrap(), &(&(&c - &d) * &RatFunc::from_int(2)) / &c);
}

#[test]
fn deligne_values_of_d() {
    let d = dimension(1);
    for (c, v) in [(int(1), 3), (int(2), 8), (rat(14, 5), 14), (int(4), 28), (rat(26, 5), 52), (int(6), 78), (int(7), 133), (int(8), 248)] {
        assert_eq!(d.eval(CHARGE, &c).unwrap().constant_value(), Some(int(v)));
    }
}

#[test]
fn d3_at_24() {
    let d3 = dimension(3);
    assert_eq!(d3.eval(CHARGE, &int(24)).unwrap().constant_value(), Some(int(21296876)));
}

#[test]
fn reconstruction_matches_casimir_eigenvalues() {
    // With d = d(C) the solved G reproduces every Casimir coefficient up to
    // the first level that carries a new constraint.
    let d = dimension(1);
    let g = solve_ansatz(1).unwrap();
    let coeffs = g.coeffs.iter().map(|x| x.substitute("d", &d)).collect();
    let g = GAnsatz::new(1, coeffs);
    let series = expansion_casimir_side(&g, 5);
    for n in 0..=5 {
        let expected = &casimir_zero_mode_unit(&int(1), n).unwrap() * &d;
        assert_eq!(casimir_coefficient(&series, 1, n), expected, "n = {n}");
    }
    let modes = expansion_mode_side(&g, 1);
    for (m, e) in mode_side_data(1).unwrap() {
        assert_eq!(modes.coefficient(m as i64), RatFunc::constant(e));
    }
}

#[test]
fn g_is_symmetric() {
    for h in 1..=3 {
        let g = solve_ansatz(h).unwrap();
        let g = g.evaluate(CHARGE, &int(24)).unwrap();
        let g = g.evaluate(&dimension_symbol(h), &int(1000)).unwrap();
        let n = g.numerator();
        let at = |x: i64, y: i64| {
            n.eval("x", &int(x)).unwrap().eval("y", &int(y)).unwrap().constant_value().unwrap()
        };
        assert_eq!(at(2, 5), at(5, 2));
        assert_eq!(at(-3, 7), at(7, -3));
    }
}

#[test]
fn weight_two_g_polynomial() {
    let g = derive_g_polynomial().unwrap();
    let g = g.ansatz().unwrap();
    let s = RatFunc::var(&dimension_symbol(2));
    let c = RatFunc::var(CHARGE);
    assert_eq!(g.coeffs[0], s);
    assert_eq!(g.coeffs[1], &(&s * &RatFunc::from_int(8)) / &c);
    assert_eq!(g.coeffs[3], RatFunc::from_int(4));
    assert_eq!(g.coeffs[4], RatFunc::one());
    let at24 = g.evaluate(CHARGE, &int(24)).unwrap();
    let at24 = at24.evaluate("d2", &int(196883)).unwrap();
    assert!(at24.coeffs.iter().all(|x| x.constant_value().is_some()));
}

#[test]
fn trace_form_and_mode_trace() {
    let t = derive_trace_form().unwrap();
    let s = RatFunc::var("d2");
    let c = RatFunc::var(CHARGE);
    assert_eq!(*t.function().unwrap(), &(&(&s + &RatFunc::one()) * &RatFunc::from_int(8)) / &c);
    // The order-two mode coefficient is g2 − 2, a different quantity.
    let g = solve_ansatz(2).unwrap();
    assert_eq!(mode_side_trace().unwrap(), &g.coeffs[2] - &RatFunc::from_int(2));
}

#[test]
fn dimension_poles_outside_deligne_and_moonshine() {
    let d2 = dimension(2);
    for c in [int(8), rat(47, 2), int(24)] {
        assert!(d2.eval(CHARGE, &c).is_some());
    }
    // The coefficient denominators of G only vanish at Kac-singular charges.
    let g = solve_ansatz(2).unwrap();
    let singular = singular_charges(4).unwrap();
    for x in &g.coeffs {
        let roots = virasoro_core::algebra::factor::rational_roots_of(x.den());
        for r in roots {
            assert!(singular.contains(&r), "pole {r}");
        }
    }
}

#[test]
fn system_provenance() {
    let sys = assemble_system(2, 6).unwrap();
    assert_eq!(sys.unknowns.len(), 6);
    let casimir_rows = sys
        .equations
        .iter()
        .filter(|e| matches!(e.provenance, Provenance::Casimir { .. }))
        .count();
    assert_eq!(casimir_rows, 7);
    // Level 6 is where d2 gets pinned, so leaving it free is inconsistent.
    match sys.solve() {
        Err(Error::InconsistentSystem(why)) => assert!(why.contains('6'), "{why}"),
        other => panic!("{other:?}"),
    }
    assert!(assemble_system(2, 4).unwrap().solve().is_ok());
}

#[test]
fn constraint_levels_checked() {
    assert!(matches!(consistency_constraint(2, 4), Err(Error::InvalidArgument(_))));
    let k = consistency_constraint(1, 6).unwrap();
    assert!(!k.is_zero());
    let at_e8 = k.eval(CHARGE, &int(8)).eval("d", &int(248));
    assert!(at_e8.is_zero());
    let at_e7 = k.eval(CHARGE, &int(7)).eval("d", &int(133));
    assert!(!at_e7.is_zero());
}

#[test]
fn higher_scans() {
    let s = scan_levels(2, 10, None).unwrap();
    assert_eq!(s.surviving, [int(24)]);
    assert!(s.per_level[0].roots.is_none());
    let json = serde_json::to_string(&s).unwrap();
    assert!(json.contains("\"surviving\":[\"24\"]"));
}

#[test]
fn unsupported_weight() {
    assert!(matches!(derive_dimension(4), Err(Error::UnsupportedWeight(_))));
    assert!(matches!(mode_side_data(0), Err(Error::UnsupportedWeight(_))));
}

#[test]
fn mode_data() {
    assert_eq!(mode_side_data(2).unwrap(), [(0, int(1)), (1, int(0))]);
}
