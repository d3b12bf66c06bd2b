//! Multivariate gcd by recursive content and primitive remainder sequences.

use super::intpoly::IntPoly;
use super::poly::MultiPoly;

pub(crate) fn poly_gcd(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    if a.is_zero() {
        return b.primitive();
    }
    if b.is_zero() {
        return a.primitive();
    }
    if a.is_constant() || b.is_constant() {
        return MultiPoly::one();
    }
    if a.vars().len() == 1 && a.vars() == b.vars() {
        let var = a.vars()[0].clone();
        let (pa, _) = IntPoly::from_multipoly(a, &var);
        let (pb, _) = IntPoly::from_multipoly(b, &var);
        return pa.gcd(&pb).to_multipoly(&var);
    }
    let x = main_variable(a, b);
    let ca = content_in(a, &x);
    let cb = content_in(b, &x);
    let c = poly_gcd(&ca, &cb);
    let pa = a.exact_div(&ca).expect("content divides");
    let pb = b.exact_div(&cb).expect("content divides");
    let g = primitive_prs(&pa, &pb, &x);
    (&c * &g).primitive()
}

/// Variable of least positive degree across both inputs; ties go to the name.
fn main_variable(a: &MultiPoly, b: &MultiPoly) -> String {
    let mut best: Option<(u32, &String)> = None;
    for v in a.vars().iter().chain(b.vars()) {
        let deg = a.degree_in(v).max(b.degree_in(v));
        if best.is_none_or(|(d, n)| (deg, v) < (d, n)) {
            best = Some((deg, v));
        }
    }
    best.expect("non-constant input").1.clone()
}

/// gcd of the coefficients of `p` viewed as a polynomial in `x`.
fn content_in(p: &MultiPoly, x: &str) -> MultiPoly {
    let mut g = MultiPoly::zero();
    for c in p.to_univariate(x) {
        if c.is_zero() {
            continue;
        }
        g = poly_gcd(&g, &c);
        if g.is_constant() {
            return MultiPoly::one();
        }
    }
    g
}

fn primitive_part_in(p: &MultiPoly, x: &str) -> MultiPoly {
    let c = content_in(p, x);
    p.exact_div(&c).expect("content divides")
}

/// gcd of two polynomials that are primitive with respect to `x`.
fn primitive_prs(a: &MultiPoly, b: &MultiPoly, x: &str) -> MultiPoly {
    let (mut a, mut b) = (a.clone(), b.clone());
    if a.degree_in(x) < b.degree_in(x) {
        std::mem::swap(&mut a, &mut b);
    }
    loop {
        if b.degree_in(x) == 0 {
            return MultiPoly::one();
        }
        let r = pseudo_rem(&a, &b, x);
        if r.is_zero() {
            return b;
        }
        a = b;
        b = primitive_part_in(&r, x);
    }
}

fn pseudo_rem(a: &MultiPoly, b: &MultiPoly, x: &str) -> MultiPoly {
    let db = b.degree_in(x);
    let bc = b.to_univariate(x);
    let lc = bc.last().expect("nonzero divisor").clone();
    let xv = MultiPoly::var(x);
    let mut r = a.clone();
    while !r.is_zero() && r.degree_in(x) >= db {
        let dr = r.degree_in(x);
        let top = r.to_univariate(x).pop().expect("nonzero remainder");
        let shifted = &(&top * &xv.pow(dr - db)) * b;
        r = &(&lc * &r) - &shifted;
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::int;

    #[test]
    fn bivariate_common_factor() {
        let c = MultiPoly::var("C");
        let d = MultiPoly::var("d");
        let common = &(&c * &d) + &MultiPoly::from_int(3);
        let a = &common * &(&c - &d);
        let b = &common * &(&c.scale(&int(2)) + &MultiPoly::one());
        assert_eq!(poly_gcd(&a, &b), common);
        assert_eq!(poly_gcd(&(&c - &d), &(&c + &d)), MultiPoly::one());
    }

    #[test]
    fn gcd_with_variable_missing_on_one_side() {
        let c = MultiPoly::var("C");
        let h = MultiPoly::var("h");
        let a = &(&c + &MultiPoly::one()) * &h;
        let b = &c + &MultiPoly::one();
        assert_eq!(poly_gcd(&a, &b), b);
    }
}
