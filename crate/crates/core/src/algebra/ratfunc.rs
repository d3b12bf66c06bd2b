//! Reduced rational functions `num / den` over ℚ.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::poly::MultiPoly;
use super::rational::BigRational;

/// Always stored reduced: `gcd(num, den) = 1` and `den` has leading
/// coefficient one under the graded-lex order. Zero is `0 / 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RatFuncWire")]
pub struct RatFunc {
    num: MultiPoly,
    den: MultiPoly,
}

#[derive(Deserialize)]
struct RatFuncWire {
    num: MultiPoly,
    den: MultiPoly,
}

impl TryFrom<RatFuncWire> for RatFunc {
    type Error = String;
    fn try_from(w: RatFuncWire) -> Result<Self, String> {
        if w.den.is_zero() {
            return Err("zero denominator".into());
        }
        Ok(RatFunc::new(w.num, w.den))
    }
}

impl Default for RatFunc {
    fn default() -> Self {
        Self::zero()
    }
}

impl RatFunc {
    pub fn new(num: MultiPoly, den: MultiPoly) -> Self {
        assert!(!den.is_zero(), "rational function with zero denominator");
        if num.is_zero() {
            return Self::zero();
        }
        let g = num.gcd(&den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (
                num.exact_div(&g).expect("gcd divides numerator"),
                den.exact_div(&g).expect("gcd divides denominator"),
            )
        };
        Self::normalized(num, den)
    }

    /// Skips the gcd; the caller guarantees the parts are coprime.
    pub fn from_coprime(num: MultiPoly, den: MultiPoly) -> Self {
        assert!(!den.is_zero(), "rational function with zero denominator");
        if num.is_zero() {
            return Self::zero();
        }
        Self::normalized(num, den)
    }

    fn normalized(num: MultiPoly, den: MultiPoly) -> Self {
        let lc = den.leading_coeff();
        if lc.is_one() {
            return RatFunc { num, den };
        }
        let inv = lc.recip();
        RatFunc {
            num: num.scale(&inv),
            den: den.scale(&inv),
        }
    }

    pub fn zero() -> Self {
        RatFunc {
            num: MultiPoly::zero(),
            den: MultiPoly::one(),
        }
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        RatFunc {
            num: MultiPoly::constant(c),
            den: MultiPoly::one(),
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_poly(MultiPoly::from_int(n))
    }

    pub fn var(name: &str) -> Self {
        Self::from_poly(MultiPoly::var(name))
    }

    pub fn from_poly(p: MultiPoly) -> Self {
        RatFunc {
            num: p,
            den: MultiPoly::one(),
        }
    }

    pub fn num(&self) -> &MultiPoly {
        &self.num
    }

    pub fn den(&self) -> &MultiPoly {
        &self.den
    }

    pub fn into_parts(self) -> (MultiPoly, MultiPoly) {
        (self.num, self.den)
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn constant_value(&self) -> Option<BigRational> {
        match (self.num.constant_value(), self.den.constant_value()) {
            (Some(n), Some(d)) => Some(n / d),
            _ => None,
        }
    }

    /// Sorted union of the variables of numerator and denominator.
    pub fn vars(&self) -> Vec<String> {
        let mut v: Vec<String> = self.num.vars().iter().chain(self.den.vars()).cloned().collect();
        v.sort();
        v.dedup();
        v
    }

    pub fn recip(&self) -> RatFunc {
        assert!(!self.is_zero(), "reciprocal of zero");
        RatFunc::from_coprime(self.den.clone(), self.num.clone())
    }

    pub fn scale(&self, c: &BigRational) -> RatFunc {
        if c.is_zero() {
            return RatFunc::zero();
        }
        RatFunc {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn pow(&self, e: i32) -> RatFunc {
        let base = if e < 0 { self.recip() } else { self.clone() };
        let k = e.unsigned_abs();
        RatFunc {
            num: base.num.pow(k),
            den: base.den.pow(k),
        }
    }

    pub fn substitute(&self, name: &str, value: &RatFunc) -> RatFunc {
        if !self.num.has_var(name) && !self.den.has_var(name) {
            return self.clone();
        }
        // Homogenize: p(v/w) = P(v, w) / w^deg p.
        let subst = |p: &MultiPoly, deg: u32| -> MultiPoly {
            let coeffs = p.to_univariate(name);
            let mut acc = MultiPoly::zero();
            for (k, c) in coeffs.iter().enumerate() {
                let t = &(c * &value.num.pow(k as u32)) * &value.den.pow(deg - k as u32);
                acc = &acc + &t;
            }
            acc
        };
        let dn = self.num.degree_in(name);
        let dd = self.den.degree_in(name);
        let n = subst(&self.num, dn);
        let d = subst(&self.den, dd);
        // Balance the w powers.
        let (n, d) = if dn >= dd {
            (n, &d * &value.den.pow(dn - dd))
        } else {
            (&n * &value.den.pow(dd - dn), d)
        };
        RatFunc::new(n, d)
    }

    /// Evaluates one variable; `None` if the denominator vanishes there.
    pub fn eval(&self, name: &str, value: &BigRational) -> Option<RatFunc> {
        let d = self.den.eval(name, value);
        if d.is_zero() {
            return None;
        }
        Some(RatFunc::new(self.num.eval(name, value), d))
    }

    /// Full evaluation; `None` on a pole or a missing variable.
    pub fn eval_all(&self, values: &BTreeMap<String, BigRational>) -> Option<BigRational> {
        let d = self.den.eval_all(values)?;
        if d.is_zero() {
            return None;
        }
        Some(self.num.eval_all(values)? / d)
    }

    pub fn derivative(&self, name: &str) -> RatFunc {
        let n = &(&self.num.derivative(name) * &self.den) - &(&self.num * &self.den.derivative(name));
        RatFunc::new(n, &self.den * &self.den)
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        let wrap = |p: &MultiPoly| {
            if p.num_terms() > 1 {
                format!("({p})")
            } else {
                p.to_string()
            }
        };
        write!(f, "{}/{}", wrap(&self.num), wrap(&self.den))
    }
}

impl<'a> Add<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return RatFunc::new(&self.num + &rhs.num, self.den.clone());
        }
        let g = self.den.gcd(&rhs.den);
        let a = self.den.exact_div(&g).expect("gcd divides");
        let b = rhs.den.exact_div(&g).expect("gcd divides");
        let num = &(&self.num * &b) + &(&rhs.num * &a);
        RatFunc::new(num, &(&a * &b) * &g)
    }
}

impl<'a> Sub<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() || rhs.is_zero() {
            return RatFunc::zero();
        }
        if let Some(c) = rhs.constant_value() {
            return self.scale(&c);
        }
        if let Some(c) = self.constant_value() {
            return rhs.scale(&c);
        }
        // Cross-cancel first so the products stay small.
        let g1 = self.num.gcd(&rhs.den);
        let g2 = rhs.num.gcd(&self.den);
        let n1 = self.num.exact_div(&g1).expect("gcd divides");
        let d2 = rhs.den.exact_div(&g1).expect("gcd divides");
        let n2 = rhs.num.exact_div(&g2).expect("gcd divides");
        let d1 = self.den.exact_div(&g2).expect("gcd divides");
        RatFunc::from_coprime(&n1 * &n2, &d1 * &d2)
    }
}

impl<'a> Div<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn div(self, rhs: &RatFunc) -> RatFunc {
        self * &rhs.recip()
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr<RatFunc> for RatFunc {
            type Output = RatFunc;
            fn $method(self, rhs: RatFunc) -> RatFunc {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&RatFunc> for RatFunc {
            type Output = RatFunc;
            fn $method(self, rhs: &RatFunc) -> RatFunc {
                (&self).$method(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl From<MultiPoly> for RatFunc {
    fn from(p: MultiPoly) -> Self {
        RatFunc::from_poly(p)
    }
}

impl From<BigRational> for RatFunc {
    fn from(c: BigRational) -> Self {
        RatFunc::constant(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::{int, rat};

    fn c() -> RatFunc {
        RatFunc::var("C")
    }

    #[test]
    fn reduces_and_normalizes() {
        let num = &MultiPoly::var("C") * &(&MultiPoly::var("C").scale(&int(5)) + &MultiPoly::from_int(22));
        let den = MultiPoly::var("C").scale(&int(-2));
        let r = RatFunc::new(num, den);
        assert_eq!(r.den(), &MultiPoly::one());
        assert_eq!(r.to_string(), "-(5/2)*C - 11");
    }

    #[test]
    fn field_operations() {
        let a = &RatFunc::from_int(1) / &c();
        let b = &RatFunc::from_int(1) / &(&c() + &RatFunc::from_int(1));
        let s = &a - &b;
        let expected = &RatFunc::from_int(1) / &(&c() * &(&c() + &RatFunc::from_int(1)));
        assert_eq!(s, expected);
        assert_eq!(&(&s * &c()) * &(&c() + &RatFunc::from_int(1)), RatFunc::one());
    }

    #[test]
    fn substitution_and_evaluation() {
        // d(C) = C(5C+22)/(10-C)
        let d = &(&c() * &(&c().scale(&int(5)) + &RatFunc::from_int(22))) / &(&RatFunc::from_int(10) - &c());
        assert_eq!(d.eval("C", &int(8)).unwrap().constant_value(), Some(int(248)));
        assert_eq!(d.eval("C", &rat(14, 5)).unwrap().constant_value(), Some(int(14)));
        assert!(d.eval("C", &int(10)).is_none());
        let t = RatFunc::var("t");
        let shifted = d.substitute("C", &(&RatFunc::one() / &t));
        assert_eq!(shifted.eval("t", &rat(1, 8)).unwrap().constant_value(), Some(int(248)));
    }
}
