//! Randomized property suites over the exact algebra and the vacuum module.
//!
//! Each suite drives a deterministic proptest runner, so repeated runs see
//! the same cases.

use num_traits::Zero;
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestError, TestRng, TestRunner};
use serde::Serialize;

use crate::algebra::factor::{factor_rational_roots, linear_factor};
use crate::algebra::laurent::{laurent_expand, valuation};
use crate::algebra::matrix::{determinant, linear_solve, PolyMatrix, RatMatrix};
use crate::algebra::rational::{int, rat, BigRational};
use crate::algebra::{MultiPoly, RatFunc};
use crate::verma::{
    apply_mode, apply_mode_word, central_term, gram, pairing, pairing_vectors, vacuum_basis, PartitionWord,
    VermaVector, CHARGE,
};

/// Default number of cases per suite.
pub const CASES: u32 = 1000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PropertyOutcome {
    pub name: String,
    pub cases: u32,
    pub pass: bool,
    /// Shrunk counterexample or the failure message.
    pub failure: Option<String>,
}

fn runner(cases: u32) -> TestRunner {
    let config = Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    };
    TestRunner::new_with_rng(config, TestRng::deterministic_rng(RngAlgorithm::ChaCha))
}

fn run<S: Strategy>(
    name: &str,
    cases: u32,
    strategy: S,
    test: impl Fn(S::Value) -> Result<(), TestCaseError>,
) -> PropertyOutcome
where
    S::Value: std::fmt::Debug,
{
    let result = runner(cases).run(&strategy, test);
    let failure = match result {
        Ok(()) => None,
        Err(TestError::Fail(why, value)) => Some(format!("{why}; minimal input {value:?}")),
        Err(TestError::Abort(why)) => Some(format!("aborted: {why}")),
    };
    PropertyOutcome {
        name: name.into(),
        cases,
        pass: failure.is_none(),
        failure,
    }
}

fn small_rational() -> impl Strategy<Value = BigRational> {
    (-12i64..=12, 1i64..=5).prop_map(|(n, d)| rat(n, d))
}

/// Polynomials in `C` and `d` of degree at most 2 in each.
fn poly2() -> impl Strategy<Value = MultiPoly> {
    prop::collection::vec(((0u32..3, 0u32..3), small_rational()), 0..5)
        .prop_map(|ts| MultiPoly::from_terms(&["C", "d"], ts.into_iter().map(|((i, j), c)| (vec![i, j], c))))
}

fn poly_c(max_deg: usize) -> impl Strategy<Value = MultiPoly> {
    prop::collection::vec(small_rational(), 1..=max_deg + 1).prop_map(|cs| MultiPoly::univariate(CHARGE, &cs))
}

fn ratfunc() -> impl Strategy<Value = RatFunc> {
    (poly_c(3), poly_c(2)).prop_map(|(n, d)| {
        let d = if d.is_zero() { MultiPoly::one() } else { d };
        RatFunc::new(n, d)
    })
}

/// Commutative ring axioms for polynomials in two variables, field axioms
/// for rational functions in `C`.
pub fn ring_axioms(cases: u32) -> PropertyOutcome {
    run(
        "ring axioms",
        cases,
        (poly2(), poly2(), poly2(), ratfunc(), ratfunc()),
        |(a, b, c, f, g)| {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a + &MultiPoly::zero(), a.clone());
            prop_assert_eq!(&a * &MultiPoly::one(), a.clone());
            prop_assert!((&a + &(-&a)).is_zero());
            prop_assert_eq!(&(&f + &g) * &g, &(&f * &g) + &(&g * &g));
            prop_assert_eq!(&f - &g, -&(&g - &f));
            if !f.is_zero() {
                prop_assert!((&f * &f.recip()).is_one());
                prop_assert_eq!(&(&g / &f) * &f, g.clone());
            }
            Ok(())
        },
    )
}

fn cofactor_determinant(rows: &[Vec<MultiPoly>]) -> MultiPoly {
    let n = rows.len();
    if n == 0 {
        return MultiPoly::one();
    }
    let mut acc = MultiPoly::zero();
    for j in 0..n {
        if rows[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<MultiPoly>> = rows[1..]
            .iter()
            .map(|r| r.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, x)| x.clone()).collect())
            .collect();
        let term = &rows[0][j] * &cofactor_determinant(&minor);
        acc = if j % 2 == 0 { &acc + &term } else { &acc - &term };
    }
    acc
}

/// Bareiss determinants against cofactor expansion, on random polynomial
/// matrices and on Gram matrices up to level 6.
pub fn determinant_vs_cofactor(cases: u32) -> PropertyOutcome {
    let matrix = (1usize..=4).prop_flat_map(|n| prop::collection::vec(prop::collection::vec(poly_c(2), n), n));
    run(
        "determinant vs cofactor",
        cases,
        (matrix, 0u32..=6),
        |(rows, level)| {
            let m = PolyMatrix::from_rows(rows.clone());
            prop_assert_eq!(determinant(&m), cofactor_determinant(&rows));
            let g = gram(level);
            prop_assert_eq!(cofactor_determinant(&g.entries.to_rows()), g.det.clone());
            Ok(())
        },
    )
}

/// Rational-root factorization re-expands to its input.
pub fn factor_round_trip(cases: u32) -> PropertyOutcome {
    let roots = prop::collection::vec((small_rational(), 1u32..=3), 0..4);
    run(
        "factor round trip",
        cases,
        (roots, small_rational(), any::<bool>()),
        |(roots, k, irreducible)| {
            prop_assume!(!k.is_zero());
            let mut p = MultiPoly::constant(k);
            for (r, e) in &roots {
                p = &p * &linear_factor(CHARGE, r).pow(*e);
            }
            if irreducible {
                p = &p * &MultiPoly::univariate(CHARGE, &[int(2), int(0), int(1)]);
            }
            let f = factor_rational_roots(&p);
            prop_assert_eq!(f.expand(), p.clone());
            prop_assert_eq!(f.is_complete(), !irreducible);
            let found = f.roots();
            prop_assert!(found.windows(2).all(|w| w[0] < w[1]));
            for (r, _) in &roots {
                prop_assert!(found.contains(r));
            }
            Ok(())
        },
    )
}

/// A truncated Laurent expansion differs from its function only past the
/// truncation order.
pub fn laurent_round_trip(cases: u32) -> PropertyOutcome {
    let t = "t";
    let strategy = (
        prop::collection::vec(small_rational(), 1..5),
        prop::collection::vec(small_rational(), 1..4),
        0u32..3,
        0i64..8,
    );
    run("laurent round trip", cases, strategy, move |(num, den, pole, order)| {
        prop_assume!(!den[0].is_zero());
        let n = MultiPoly::univariate(t, &num);
        let mut d = MultiPoly::univariate(t, &den);
        d = &d * &MultiPoly::var(t).pow(pole);
        let f = RatFunc::new(n, d);
        let series = laurent_expand(&f, t, order);
        let rest = &f - &series.to_ratfunc();
        if let Some(v) = valuation(&rest, t) {
            prop_assert!(v > order, "remainder has valuation {v} at order {order}");
        }
        Ok(())
    })
}

/// `A x = b` holds exactly for solutions of random nonsingular systems.
pub fn linear_solve_residual(cases: u32) -> PropertyOutcome {
    let system = (1usize..=4).prop_flat_map(|n| {
        (
            prop::collection::vec(prop::collection::vec(poly_c(1), n), n),
            prop::collection::vec(poly_c(1), n),
        )
    });
    run("linear solve residual", cases, system, |(rows, rhs)| {
        let m = PolyMatrix::from_rows(rows.clone());
        prop_assume!(!determinant(&m).is_zero());
        let a = RatMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().cloned().map(RatFunc::from_poly).collect())
                .collect(),
        );
        let b: Vec<RatFunc> = rhs.into_iter().map(RatFunc::from_poly).collect();
        let x = linear_solve(&a, &b).map_err(|e| TestCaseError::fail(e.to_string()))?;
        prop_assert_eq!(a.mul_vec(&x), b);
        Ok(())
    })
}

/// A random vacuum word of level at most `max`.
fn word(max: u32) -> impl Strategy<Value = PartitionWord> {
    (0..=max, any::<prop::sample::Index>()).prop_filter_map("empty level", |(level, i)| {
        let basis = vacuum_basis(level);
        (!basis.is_empty()).then(|| basis[i.index(basis.len())].clone())
    })
}

/// The pairing is symmetric and `L_m` is adjoint to `L_{−m}`.
pub fn gram_symmetry_adjointness(cases: u32) -> PropertyOutcome {
    let strategy = (word(8), word(8), 1i64..=4).prop_filter("level too low", |(_, v, m)| v.level() as i64 >= *m);
    run("gram symmetry and adjointness", cases, strategy, |(u, v, m)| {
        prop_assert_eq!(pairing(&u, &v), pairing(&v, &u));
        let lv = apply_mode_word(m, &v);
        let lu = apply_mode_word(-m, &u);
        let left = pairing_vectors(&lu, &VermaVector::from_word(v.clone()));
        let right = pairing_vectors(&VermaVector::from_word(u.clone()), &lv);
        prop_assert_eq!(left, right);
        Ok(())
    })
}

/// `[L_m, L_n] = (m − n) L_{m+n} + δ_{m+n,0} (m³ − m) C/12` on vacuum words.
pub fn bracket_consistency(cases: u32) -> PropertyOutcome {
    run(
        "Virasoro bracket",
        cases,
        (-4i64..=4, -4i64..=4, word(8)),
        |(m, n, w)| {
            let v = VermaVector::from_word(w);
            let lhs = apply_mode(m, &apply_mode(n, &v)).sub(&apply_mode(n, &apply_mode(m, &v)));
            let mut rhs = apply_mode(m + n, &v).scale(&RatFunc::from_int(m - n));
            if m + n == 0 {
                rhs = rhs.add(&v.scale(&RatFunc::from_poly(central_term(m))));
            }
            prop_assert!(lhs.sub(&rhs).is_zero(), "[L_{}, L_{}] mismatch", m, n);
            Ok(())
        },
    )
}

/// Every suite at the given case count.
pub fn all(cases: u32) -> Vec<PropertyOutcome> {
    vec![
        ring_axioms(cases),
        determinant_vs_cofactor(cases),
        factor_round_trip(cases),
        laurent_round_trip(cases),
        linear_solve_residual(cases),
        gram_symmetry_adjointness(cases),
        bracket_consistency(cases),
    ]
}
