use std::collections::BTreeSet;

use num_bigint::BigInt;
use virasoro_core::algebra::{int, rat};
use virasoro_core::correlator::derive_dimension;
use virasoro_core::error::Error;
use virasoro_core::numerology::*;
use virasoro_core::verma::CHARGE;

#[test]
fn deligne_entries() {
    let t = deligne_table();
    assert_eq!(t.len(), 8);
    let g2 = t.iter().find(|e| e.algebra == "G2").unwrap();
    assert_eq!((g2.h_vee, g2.d, g2.charge.clone()), (4, 14, rat(14, 5)));
    let e8 = t.iter().find(|e| e.algebra == "E8").unwrap();
    assert_eq!((e8.h_vee, e8.d, e8.charge.clone()), (30, 248, int(8)));
    assert_eq!(dual_coxeter(&int(7)), Some(int(18)));
    assert_eq!(dual_coxeter(&int(10)), None);
    assert!(deligne_audit(&t).unwrap().pass);
}

#[test]
fn kac_moody_ratio() {
    let r = kacmoody_ratio_check(&deligne_table());
    assert!(r.pass);
    assert_eq!(r.cells.len(), 8);
}

#[test]
fn d1_has_21_values() {
    let e = enumerate_integral_d1().unwrap();
    assert_eq!(e.solutions.len(), 21);
    assert!(e.solutions.windows(2).all(|w| w[0].charge < w[1].charge));
    for entry in deligne_table() {
        assert_eq!(e.value_at(&entry.charge), Some(&BigInt::from(entry.d)));
    }
    let d = derive_dimension(1).unwrap();
    for s in &e.solutions {
        let v = d.function().unwrap().eval(CHARGE, &s.charge).unwrap().constant_value().unwrap();
        assert_eq!(v, s.value.clone().into());
    }
}

#[test]
fn d1_brute_force_agrees() {
    let e = enumerate_integral_d1().unwrap();
    let exact: BTreeSet<_> = e.solutions.iter().map(|s| (s.charge.clone(), s.value.clone())).collect();
    let brute: BTreeSet<_> = brute_force_d1(10_000).into_iter().collect();
    assert_eq!(exact, brute);
}

#[test]
fn d2_has_36_positive_values() {
    let e = enumerate_integral_d2().unwrap();
    assert_eq!(e.solutions.len(), 36);
    assert_eq!(e.value_at(&int(24)), Some(&BigInt::from(196883)));
    assert_eq!(e.value_at(&rat(47, 2)), Some(&BigInt::from(96255)));
    assert_eq!(e.value_at(&int(8)), Some(&BigInt::from(155)));
    assert!(e.nonpositive.iter().any(|s| s.charge == rat(1, 2) && s.value == BigInt::from(0)));
    assert!(e.nonpositive.iter().all(|s| s.value <= BigInt::from(0)));
    let p = &e.method_audit.parameters;
    assert_eq!(p["charge_denominators"], "1,2,5,7,10,14,35,70");
    assert!(p.contains_key("window") && p.contains_key("tail_bound"));
    let d2 = derive_dimension(2).unwrap();
    for s in e.solutions.iter().chain(&e.nonpositive) {
        let v = d2.function().unwrap().eval(CHARGE, &s.charge).unwrap().constant_value().unwrap();
        assert_eq!(v, s.value.clone().into());
    }
}

#[test]
fn group_orders_round_trip() {
    let r = group_order_audit();
    assert!(r.pass, "{r}");
    assert_eq!(
        monster().order_value().to_string(),
        "808017424794512875886459904961710757005754368000000000"
    );
}

#[test]
fn tables_pass_cell_by_cell() {
    for t in 1..=4 {
        let r = prime_divisor_audit(t).unwrap();
        assert!(r.pass, "{r}");
    }
    let t1 = prime_divisor_audit(1).unwrap();
    assert_eq!(t1.cells.len(), 8 * 5);
    let e7 = t1.cells.iter().find(|c| c.claim.starts_with("E7: d =")).unwrap();
    assert_eq!(e7.computed, "7*19");
    let t2 = prime_divisor_audit(2).unwrap();
    assert!(t2.cells.iter().any(|c| c.claim.starts_with("11C+232") && c.computed == "2^4*31"));
    let t3 = prime_divisor_audit(3).unwrap();
    assert!(t3.cells.iter().any(|c| c.claim.starts_with("7C+68") && c.computed == "3*5*31/2"));
}

#[test]
fn unknown_table() {
    assert!(matches!(prime_divisor_audit(5), Err(Error::InvalidArgument(_))));
}

#[test]
fn failing_report_names_cell() {
    let mut r = AuditReport::new("demo");
    r.check("1 = 1", "1", true);
    r.check("2 = 3", "2", false);
    assert!(!r.pass);
    match r.into_result() {
        Err(Error::AuditFailure { cell, .. }) => assert_eq!(cell, "demo: 2 = 3"),
        other => panic!("{other:?}"),
    }
}

#[test]
fn moonshine() {
    let r = moonshine_dimension_check().unwrap();
    assert!(r.pass, "{r}");
}

#[test]
fn audit_json_schema() {
    let r = prime_divisor_audit(4).unwrap();
    let v: serde_json::Value = serde_json::to_value(&r).unwrap();
    assert_eq!(v["table"], "Table 4");
    assert_eq!(v["pass"], true);
    let cell = &v["cells"][0];
    assert!(cell["claim"].is_string() && cell["computed"].is_string());
    assert_eq!(cell["status"], "pass");
}
