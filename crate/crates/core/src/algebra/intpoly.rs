//! Dense univariate polynomials over ℤ.
//!
//! This is the workhorse behind Gram determinants and univariate gcds: the
//! sparse `MultiPoly` is general but pays for it in map traffic.

use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::poly::MultiPoly;
use super::rational::{common_denominator, BigRational};

/// Coefficients in ascending order, with no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64s(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    /// `x - r` scaled to `b x - a` for `r = a/b`.
    pub fn linear_root(r: &BigRational) -> Self {
        Self::new(vec![-r.numer().clone(), r.denom().clone()])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coeff(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    /// Index of the lowest nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// Splits `p` (univariate in `var`, or constant) as `scale * P` with `P`
    /// primitive and of positive leading coefficient.
    pub fn from_multipoly(p: &MultiPoly, var: &str) -> (IntPoly, BigRational) {
        assert!(
            p.vars().iter().all(|v| v == var),
            "expected a polynomial in {var} only, got variables {:?}",
            p.vars()
        );
        if p.is_zero() {
            return (IntPoly::zero(), BigRational::one());
        }
        let coeffs = p.to_univariate(var);
        let rats: Vec<BigRational> = coeffs
            .iter()
            .map(|c| c.constant_value().unwrap_or_default())
            .collect();
        let den = common_denominator(&rats);
        let ints: Vec<BigInt> = rats
            .iter()
            .map(|r| (r * &den).to_integer())
            .collect();
        let raw = IntPoly::new(ints);
        let (prim, content) = raw.primitive_with_content();
        (prim, BigRational::new(content, den))
    }

    pub fn to_multipoly(&self, var: &str) -> MultiPoly {
        let rats: Vec<BigRational> = self
            .coeffs
            .iter()
            .map(|c| BigRational::from_integer(c.clone()))
            .collect();
        MultiPoly::univariate(var, &rats)
    }

    /// Signed content: the gcd of the coefficients, carrying the sign of the
    /// leading coefficient.
    pub fn content(&self) -> BigInt {
        let g = self
            .coeffs
            .iter()
            .fold(BigInt::zero(), |acc, c| acc.gcd(c));
        if self.leading_coeff().is_negative() {
            -g
        } else {
            g
        }
    }

    pub fn primitive_with_content(&self) -> (IntPoly, BigInt) {
        if self.is_zero() {
            return (IntPoly::zero(), BigInt::one());
        }
        let c = self.content();
        (self.div_scalar(&c), c)
    }

    pub fn primitive(&self) -> IntPoly {
        self.primitive_with_content().0
    }

    pub fn scale(&self, c: &BigInt) -> IntPoly {
        if c.is_zero() {
            return IntPoly::zero();
        }
        IntPoly {
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    /// Divides every coefficient by `c`, which must divide all of them.
    pub fn div_scalar(&self, c: &BigInt) -> IntPoly {
        IntPoly {
            coeffs: self
                .coeffs
                .iter()
                .map(|x| {
                    debug_assert!((x % c).is_zero());
                    x / c
                })
                .collect(),
        }
    }

    /// Multiplies by `x^k`.
    pub fn shift(&self, k: usize) -> IntPoly {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        IntPoly { coeffs }
    }

    /// Exact quotient over ℤ, or `None` if `d` does not divide `self` in ℤ[x].
    pub fn exact_div(&self, d: &IntPoly) -> Option<IntPoly> {
        assert!(!d.is_zero(), "division by the zero polynomial");
        if self.is_zero() {
            return Some(IntPoly::zero());
        }
        let dd = d.degree().unwrap();
        let sd = self.degree().unwrap();
        if sd < dd {
            return None;
        }
        if dd == 0 {
            let c = &d.coeffs[0];
            if self.coeffs.iter().any(|x| !(x % c).is_zero()) {
                return None;
            }
            return Some(self.div_scalar(c));
        }
        let lc = d.leading_coeff();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); sd - dd + 1];
        for k in (0..=sd - dd).rev() {
            let top = &rem[k + dd];
            if top.is_zero() {
                continue;
            }
            let (q, r) = top.div_rem(&lc);
            if !r.is_zero() {
                return None;
            }
            for (i, dc) in d.coeffs.iter().enumerate() {
                if !dc.is_zero() {
                    rem[k + i] -= &q * dc;
                }
            }
            quot[k] = q;
        }
        if rem.iter().any(|x| !x.is_zero()) {
            return None;
        }
        Some(IntPoly::new(quot))
    }

    /// Pseudo-remainder: `lc(d)^(deg self - deg d + 1) * self mod d`.
    pub fn pseudo_rem(&self, d: &IntPoly) -> IntPoly {
        assert!(!d.is_zero());
        let dd = d.degree().unwrap();
        let mut r = self.clone();
        let lc = d.leading_coeff();
        while let Some(rd) = r.degree() {
            if rd < dd {
                break;
            }
            let top = r.leading_coeff();
            // r <- lc * r - top * x^(rd-dd) * d
            let mut coeffs: Vec<BigInt> = r.coeffs.iter().map(|x| x * &lc).collect();
            for (i, dc) in d.coeffs.iter().enumerate() {
                coeffs[rd - dd + i] -= &top * dc;
            }
            r = IntPoly::new(coeffs);
        }
        r
    }

    /// Primitive gcd with positive leading coefficient; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() {
            return other.primitive();
        }
        if other.is_zero() {
            return self.primitive();
        }
        let mut a = self.primitive();
        let mut b = other.primitive();
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        loop {
            if b.degree() == Some(0) {
                return IntPoly::one();
            }
            let r = a.pseudo_rem(&b);
            if r.is_zero() {
                return b;
            }
            a = b;
            b = r.primitive();
        }
    }

    pub fn derivative(&self) -> IntPoly {
        IntPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + BigRational::from_integer(c.clone());
        }
        acc
    }

    /// `true` when `self(a/b) = 0`, tested without leaving ℤ.
    pub fn has_root(&self, r: &BigRational) -> bool {
        let (a, b) = (r.numer(), r.denom());
        let n = match self.degree() {
            Some(n) => n,
            None => return true,
        };
        // Σ c_i a^i b^(n-i)
        let mut acc = BigInt::zero();
        let mut apow = BigInt::one();
        let mut bpows = Vec::with_capacity(n + 1);
        let mut bp = BigInt::one();
        for _ in 0..=n {
            bpows.push(bp.clone());
            bp *= b;
        }
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                acc += c * &apow * &bpows[n - i];
            }
            apow *= a;
        }
        acc.is_zero()
    }

    /// Squarefree part, primitive with positive leading coefficient.
    pub fn squarefree_part(&self) -> IntPoly {
        let g = self.gcd(&self.derivative());
        self.primitive()
            .exact_div(&g)
            .expect("gcd divides its argument")
            .primitive()
    }
}

impl Add for &IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.coeffs.get(i);
            let b = rhs.coeffs.get(i);
            out.push(match (a, b) {
                (Some(a), Some(b)) => a + b,
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            });
        }
        IntPoly::new(out)
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        IntPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: &IntPoly) -> IntPoly {
        self + &(-rhs)
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        IntPoly::new(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::rat;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    #[test]
    fn gcd_of_shared_linear_factor() {
        let a = &p(&[22, 5]) * &p(&[-1, 2]);
        let b = &p(&[22, 5]) * &p(&[68, 7]);
        assert_eq!(a.gcd(&b), p(&[22, 5]));
        assert_eq!(p(&[1, 1]).gcd(&p(&[2, 1])), IntPoly::one());
    }

    #[test]
    fn exact_division_over_z() {
        let a = &p(&[22, 5]) * &p(&[0, 0, 1]);
        assert_eq!(a.exact_div(&p(&[22, 5])).unwrap(), p(&[0, 0, 1]));
        assert!(a.exact_div(&p(&[1, 1])).is_none());
        assert!(p(&[1, 1]).exact_div(&p(&[2, 2])).is_none());
    }

    #[test]
    fn squarefree_and_roots() {
        let a = &(&p(&[22, 5]) * &p(&[22, 5])) * &p(&[0, 3]);
        assert_eq!(a.squarefree_part(), &p(&[22, 5]) * &p(&[0, 1]));
        assert!(a.has_root(&rat(-22, 5)));
        assert!(!a.has_root(&rat(22, 5)));
    }
}
