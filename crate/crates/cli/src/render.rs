//! Text rendering helpers: polynomials in `C` in factored form, constants
//! gathered in front, descending powers inside each factor.

use num_traits::{One, Signed, Zero};

use virasoro_core::algebra::rational::{format_rational, BigRational};
use virasoro_core::algebra::{factor_rational_roots, MultiPoly, RatFunc};
use virasoro_core::verma::{PartitionWord, CHARGE};

/// `constant · ∏ pieces`, where pieces are symbols and factors in `C`.
struct Product {
    constant: BigRational,
    pieces: Vec<String>,
}

fn power(base: String, e: u32) -> String {
    let base = if base.contains(' ') {
        format!("({base})")
    } else {
        base
    };
    if e == 1 {
        base
    } else {
        format!("{base}^{e}")
    }
}

/// `None` when `p` is not a monomial in the other variables times a
/// polynomial in `C`.
fn split(p: &MultiPoly) -> Option<Product> {
    let mut rest = p.clone();
    let mut pieces = Vec::new();
    for v in p.vars().iter().filter(|v| v.as_str() != CHARGE) {
        let x = MultiPoly::var(v);
        let mut e = 0;
        while let Some(q) = rest.exact_div(&x) {
            rest = q;
            e += 1;
        }
        if e > 0 {
            pieces.push(power(v.clone(), e));
        }
    }
    if rest.vars().iter().any(|v| v != CHARGE) && !rest.is_constant() {
        return None;
    }
    let f = factor_rational_roots(&rest);
    let mut factors = f.factors.clone();
    factors.sort_by_key(|lf| !lf.root.is_zero());
    pieces.extend(factors.iter().map(|lf| power(lf.poly.to_string(), lf.mult)));
    if !f.remainder.is_one() {
        pieces.push(power(f.remainder.to_string(), 1));
    }
    Some(Product {
        constant: f.constant,
        pieces,
    })
}

fn wrap(s: String) -> String {
    if s.contains(' ') || s.contains('*') {
        format!("({s})")
    } else {
        s
    }
}

/// `num/den` with rational roots in `C` factored out.
pub fn factored_ratio(num: &MultiPoly, den: &MultiPoly) -> String {
    if num.is_zero() {
        return "0".into();
    }
    let (Some(a), Some(b)) = (split(num), split(den)) else {
        return if den.is_one() {
            num.to_string()
        } else {
            format!("{}/{}", wrap(num.to_string()), wrap(factored_poly(den)))
        };
    };
    let k = &a.constant / &b.constant;
    let sign = if k.is_negative() { "-" } else { "" };
    let k = k.abs();
    let (p, q) = (k.numer().clone(), k.denom().clone());
    if b.pieces.is_empty() {
        let mut top = Vec::new();
        if !k.is_one() || a.pieces.is_empty() {
            top.push(if q.is_one() {
                p.to_string()
            } else {
                format!("({p}/{q})")
            });
        }
        top.extend(a.pieces);
        return format!("{sign}{}", top.join("*"));
    }
    let mut top = Vec::new();
    if !p.is_one() || a.pieces.is_empty() {
        top.push(p.to_string());
    }
    top.extend(a.pieces);
    let mut bottom = Vec::new();
    if !q.is_one() {
        bottom.push(q.to_string());
    }
    bottom.extend(b.pieces);
    let top = top.join("*");
    let bottom = if bottom.len() == 1 {
        bottom.remove(0)
    } else {
        format!("({})", bottom.join("*"))
    };
    format!("{sign}{top}/{bottom}")
}

pub fn factored_poly(p: &MultiPoly) -> String {
    factored_ratio(p, &MultiPoly::one())
}

pub fn factored(f: &RatFunc) -> String {
    factored_ratio(f.num(), f.den())
}

pub fn word(parts: &[u32]) -> String {
    match PartitionWord::new(parts.to_vec()) {
        Ok(w) => w.to_string(),
        Err(_) => format!("{parts:?}"),
    }
}

pub fn rationals(rs: &[BigRational]) -> Vec<String> {
    rs.iter().map(format_rational).collect()
}
