//! Extraction of rational-root linear factors from univariate polynomials.

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::intpoly::IntPoly;
use super::poly::MultiPoly;
use super::rational::{positive_divisors, serde_rational, BigRational};

/// `constant · ∏ factor^mult · remainder`.
///
/// Factors are `b·x − a` with `gcd(a, b) = 1`, `b > 0`, ascending by root
/// `a/b`. The remainder is primitive with positive leading coefficient and has
/// no rational roots.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Factorization {
    pub variable: String,
    #[serde(with = "serde_rational")]
    pub constant: BigRational,
    pub factors: Vec<LinearFactor>,
    pub remainder: MultiPoly,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinearFactor {
    pub poly: MultiPoly,
    pub mult: u32,
    #[serde(with = "serde_rational")]
    pub root: BigRational,
}

impl Factorization {
    /// Distinct rational roots, ascending.
    pub fn roots(&self) -> Vec<BigRational> {
        self.factors.iter().map(|f| f.root.clone()).collect()
    }

    pub fn is_complete(&self) -> bool {
        self.remainder.is_constant()
    }

    pub fn expand(&self) -> MultiPoly {
        self.factors
            .iter()
            .fold(
                &MultiPoly::constant(self.constant.clone()) * &self.remainder,
                |acc, f| &acc * &f.poly.pow(f.mult),
            )
    }

    /// Factored rendering, e.g. `(1/2)*C^2*(5*C + 22)`.
    pub fn render(&self) -> String {
        let mut parts = Vec::new();
        let c = &self.constant;
        let mut out = String::new();
        if c.is_negative() {
            out.push('-');
        }
        let a = c.abs();
        if !a.is_one() || (self.factors.is_empty() && self.remainder.is_one()) {
            parts.push(if a.is_integer() {
                a.to_string()
            } else {
                format!("({})", super::rational::format_rational(&a))
            });
        }
        let wrap = |p: &MultiPoly| {
            if p.num_terms() > 1 {
                format!("({p})")
            } else {
                p.to_string()
            }
        };
        for f in &self.factors {
            let base = wrap(&f.poly);
            parts.push(if f.mult == 1 {
                base
            } else {
                format!("{base}^{}", f.mult)
            });
        }
        if !self.remainder.is_one() {
            parts.push(wrap(&self.remainder));
        }
        out.push_str(&parts.join("*"));
        out
    }
}

/// Factors `p`, which must be univariate or constant and nonzero.
pub fn factor_rational_roots(p: &MultiPoly) -> Factorization {
    assert!(!p.is_zero(), "factorization of the zero polynomial");
    assert!(p.vars().len() <= 1, "expected a univariate polynomial");
    let var = p.vars().first().cloned().unwrap_or_else(|| "C".to_string());
    let (mut rest, constant) = IntPoly::from_multipoly(p, &var);
    let mut factors = Vec::new();
    for root in rational_roots(&rest) {
        let lin = IntPoly::linear_root(&root);
        let mut mult = 0;
        while let Some(q) = rest.exact_div(&lin) {
            rest = q;
            mult += 1;
        }
        debug_assert!(mult > 0);
        factors.push(LinearFactor {
            poly: lin.to_multipoly(&var),
            mult,
            root,
        });
    }
    Factorization {
        variable: var.clone(),
        constant,
        factors,
        remainder: rest.to_multipoly(&var),
    }
}

/// Distinct rational roots of `p`, ascending.
pub fn rational_roots(p: &IntPoly) -> Vec<BigRational> {
    if p.degree().unwrap_or(0) == 0 {
        return Vec::new();
    }
    let sqf = p.squarefree_part();
    let mut roots = Vec::new();
    let v = sqf.valuation().unwrap_or(0);
    if v > 0 {
        roots.push(BigRational::zero());
    }
    let core = IntPoly::new(sqf.coeffs()[v..].to_vec());
    if core.degree().unwrap_or(0) > 0 {
        let a0 = core.coeffs()[0].clone();
        let lc = core.leading_coeff();
        let nums = positive_divisors(&a0);
        let dens = positive_divisors(&lc);
        for a in &nums {
            for b in &dens {
                if !num_integer::Integer::gcd(a, b).is_one() {
                    continue;
                }
                for s in [a.clone(), -a.clone()] {
                    let r = BigRational::new(s, b.clone());
                    if core.has_root(&r) {
                        roots.push(r);
                    }
                }
            }
        }
    }
    roots.sort();
    roots
}

/// Rational roots of a univariate polynomial given as a `MultiPoly`.
pub fn rational_roots_of(p: &MultiPoly) -> Vec<BigRational> {
    if p.is_zero() || p.is_constant() {
        return Vec::new();
    }
    assert_eq!(p.vars().len(), 1, "expected a univariate polynomial");
    let (ip, _) = IntPoly::from_multipoly(p, &p.vars()[0]);
    rational_roots(&ip)
}

/// Convenience: `b·x − a` as a `MultiPoly` in `var`.
pub fn linear_factor(var: &str, root: &BigRational) -> MultiPoly {
    let b = BigRational::from_integer(root.denom().clone());
    let a = BigRational::from_integer(root.numer().clone());
    &MultiPoly::var(var).scale(&b) - &MultiPoly::constant(a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::{int, rat};

    fn c() -> MultiPoly {
        MultiPoly::var("C")
    }

    #[test]
    fn linear_input() {
        let p = &c().scale(&int(5)) + &MultiPoly::from_int(22);
        let f = factor_rational_roots(&p);
        assert_eq!(f.constant, int(1));
        assert_eq!(f.factors.len(), 1);
        assert_eq!(f.factors[0].poly, p);
        assert!(f.remainder.is_one());
    }

    #[test]
    fn level_four_determinant() {
        let lin = &c().scale(&int(5)) + &MultiPoly::from_int(22);
        let p = &(&c() * &c()).scale(&rat(1, 2)) * &lin;
        let f = factor_rational_roots(&p);
        assert_eq!(f.constant, rat(1, 2));
        assert_eq!(f.roots(), vec![rat(-22, 5), int(0)]);
        assert_eq!(f.factors[1].mult, 2);
        assert_eq!(f.expand(), p);
        assert_eq!(f.render(), "(1/2)*(5*C + 22)*C^2");
    }

    #[test]
    fn irreducible_remainder_is_kept() {
        let p = &(&c() * &c()) + &MultiPoly::from_int(1);
        let f = factor_rational_roots(&(&p * &c()));
        assert_eq!(f.roots(), vec![int(0)]);
        assert_eq!(f.remainder, p);
    }
}
