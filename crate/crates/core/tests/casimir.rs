use virasoro_core::algebra::{int, rat, MultiPoly, RatFunc};
use virasoro_core::casimir::{
    casimir_at, casimir_zero_mode, descent_coefficient, descent_defect, dimension_symbol, solve_casimir,
    zero_mode_eigenvalue, zero_mode_ward,
};
use virasoro_core::error::Error;
use virasoro_core::verma::{vacuum_basis, PartitionWord, CHARGE};

fn c() -> RatFunc {
    RatFunc::var(CHARGE)
}

#[test]
fn level_one_vanishes() {
    for h in 1..=3 {
        assert!(solve_casimir(&int(h), 1).unwrap().vector.is_zero());
    }
}

#[test]
fn level_zero_is_signed_dimension() {
    for h in 1..=3 {
        let s = solve_casimir(&int(h), 0).unwrap();
        let sign = if h % 2 == 0 { 1 } else { -1 };
        let d = RatFunc::var(&dimension_symbol(h));
        assert_eq!(s.vector.coeff(&PartitionWord::vacuum()), &d * &RatFunc::from_int(sign));
    }
}

#[test]
fn level_two_multiples_of_omega() {
    // λ⁽²⁾ = −(2d/C) ω, μ⁽²⁾ = (4 d₂/C) ω, ν⁽²⁾ = −(6 d₃/C) ω
    for (h, k) in [(1, -2), (2, 4), (3, -6)] {
        let s = solve_casimir(&int(h), 2).unwrap();
        let d = RatFunc::var(&dimension_symbol(h));
        let expected = &(&d * &RatFunc::from_int(k)) / &c();
        assert_eq!(s.vector.coeff(&PartitionWord::omega()), expected, "h = {h}");
        assert_eq!(s.poles, [int(0)]);
    }
}

#[test]
fn level_four_poles() {
    let s = solve_casimir(&int(1), 4).unwrap();
    assert_eq!(s.poles, [rat(-22, 5), int(0)]);
    assert_eq!(s.assumptions, ["lambda1_zero"]);
}

#[test]
fn level_four_vector() {
    let s = solve_casimir(&int(1), 4).unwrap();
    let d = RatFunc::var("d");
    let k = &(&d * &RatFunc::from_int(-3)) / &(&c() * &(&c().scale(&int(5)) + &RatFunc::from_int(22)));
    let w22 = PartitionWord::new(vec![2, 2]).unwrap();
    let w4 = PartitionWord::new(vec![4]).unwrap();
    assert_eq!(s.vector.coeff(&w22), &k * &RatFunc::from_int(4));
    assert_eq!(s.vector.coeff(&w4), &k * &(&RatFunc::from_int(2) + &c()));
}

#[test]
fn descent_relations_hold() {
    for h in 1..=3 {
        for n in 0..=12 {
            for m in 1..=n {
                assert!(descent_defect(&int(h), n, m).unwrap().is_zero(), "h={h} n={n} m={m}");
            }
        }
    }
}

#[test]
fn descent_coefficient_values() {
    assert_eq!(descent_coefficient(&int(1), 2, 4), int(3));
    assert_eq!(descent_coefficient(&int(2), 1, 3), int(2));
    assert_eq!(descent_coefficient(&int(3), 2, 2), int(3));
}

#[test]
fn poles_lie_in_kac_singular_set() {
    for h in 1..=3 {
        for n in [2, 4, 6, 8] {
            let s = solve_casimir(&int(h), n).unwrap();
            let singular: Vec<_> = (2..=n)
                .flat_map(|k| virasoro_core::verma::singular_charges(k).unwrap())
                .collect();
            for p in &s.poles {
                assert!(singular.contains(p), "pole {p} at h={h} n={n}");
            }
        }
    }
}

#[test]
fn zero_mode_oracles_agree_numerically() {
    for h in 1..=3 {
        let hp = MultiPoly::from_int(h);
        for n in 0..=12 {
            for w in vacuum_basis(n) {
                assert_eq!(zero_mode_eigenvalue(&w, &hp).value, zero_mode_ward(&w, &hp), "h={h} {w}");
            }
        }
    }
}

#[test]
fn zero_mode_oracles_agree_symbolically() {
    let h = MultiPoly::var("h");
    for n in 0..=6 {
        for w in vacuum_basis(n) {
            assert_eq!(zero_mode_eigenvalue(&w, &h).value, zero_mode_ward(&w, &h), "{w}");
        }
    }
}

#[test]
fn omega_zero_mode_is_weight() {
    let h = MultiPoly::var("h");
    let e = zero_mode_eigenvalue(&PartitionWord::omega(), &h).value;
    assert_eq!(e, RatFunc::var("h"));
}

#[test]
fn casimir_eigenvalues_at_level_two() {
    // κ₂ = ε(ω)·coefficient: −2d/C, 8d₂/C, −18d₃/C
    for (h, k) in [(1, -2), (2, 8), (3, -18)] {
        let d = RatFunc::var(&dimension_symbol(h));
        assert_eq!(casimir_zero_mode(&int(h), 2).unwrap(), &(&d * &RatFunc::from_int(k)) / &c());
    }
}

#[test]
fn numeric_charge_rejects_poles() {
    assert!(matches!(
        casimir_at(&int(1), 4, &rat(-22, 5)),
        Err(Error::SingularSolve { .. })
    ));
    let v = casimir_at(&int(1), 4, &int(8)).unwrap();
    assert!(!v.is_zero());
}

#[test]
fn unsupported_weights() {
    assert!(matches!(solve_casimir(&int(0), 2), Err(Error::UnsupportedWeight(_))));
    assert!(matches!(solve_casimir(&rat(1, 2), 2), Err(Error::UnsupportedWeight(_))));
}

#[test]
fn export_is_deterministic() {
    let s = solve_casimir(&int(1), 6).unwrap();
    let a = serde_json::to_string(&s.export()).unwrap();
    let b = serde_json::to_string(&s.export()).unwrap();
    assert_eq!(a, b);
    assert!(a.contains("\"symbol\":\"d\""));
}
