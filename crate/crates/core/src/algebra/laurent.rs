//! Truncated Laurent expansions of rational functions about zero.

use std::fmt;

use serde::Serialize;

use super::poly::MultiPoly;
use super::ratfunc::RatFunc;

/// `Σ coeffs[k] · param^(leading_exponent + k)` for exponents up to and
/// including `truncation_order`. Coefficients may involve other variables.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LaurentSeries {
    pub param: String,
    pub leading_exponent: i64,
    pub coeffs: Vec<RatFunc>,
    pub truncation_order: i64,
}

impl LaurentSeries {
    /// The zero series known up to `truncation_order`.
    pub fn zero(param: &str, truncation_order: i64) -> Self {
        LaurentSeries {
            param: param.to_string(),
            leading_exponent: truncation_order + 1,
            coeffs: Vec::new(),
            truncation_order,
        }
    }

    /// Coefficient of `param^e`; zero below the leading exponent.
    ///
    /// Panics above the truncation order, where the coefficient is unknown.
    pub fn coefficient(&self, e: i64) -> RatFunc {
        assert!(
            e <= self.truncation_order,
            "coefficient {e} lies beyond the truncation order {}",
            self.truncation_order
        );
        if e < self.leading_exponent {
            return RatFunc::zero();
        }
        self.coeffs[(e - self.leading_exponent) as usize].clone()
    }

    /// Sets a common lower exponent, padding with zeros.
    fn aligned(&self, lead: i64, trunc: i64) -> Vec<RatFunc> {
        (lead..=trunc)
            .map(|e| {
                if e > self.truncation_order {
                    unreachable!("alignment beyond truncation")
                }
                self.coefficient(e)
            })
            .collect()
    }

    pub fn add(&self, other: &LaurentSeries) -> LaurentSeries {
        assert_eq!(self.param, other.param, "series in different parameters");
        let trunc = self.truncation_order.min(other.truncation_order);
        let lead = self.leading_exponent.min(other.leading_exponent).min(trunc + 1);
        let a = self.aligned(lead, trunc);
        let b = other.aligned(lead, trunc);
        LaurentSeries {
            param: self.param.clone(),
            leading_exponent: lead,
            coeffs: a.iter().zip(&b).map(|(x, y)| x + y).collect(),
            truncation_order: trunc,
        }
    }

    /// Product; the result is exact up to the smaller of the two orders
    /// shifted by the other series' leading exponent.
    pub fn mul(&self, other: &LaurentSeries) -> LaurentSeries {
        assert_eq!(self.param, other.param, "series in different parameters");
        let lead = self.leading_exponent + other.leading_exponent;
        let trunc = (self.truncation_order + other.leading_exponent)
            .min(other.truncation_order + self.leading_exponent);
        let n = (trunc - lead + 1).max(0) as usize;
        let mut coeffs = vec![RatFunc::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                if i + j < n {
                    coeffs[i + j] = &coeffs[i + j] + &(a * b);
                }
            }
        }
        LaurentSeries {
            param: self.param.clone(),
            leading_exponent: lead,
            coeffs,
            truncation_order: trunc,
        }
    }

    pub fn scale(&self, c: &RatFunc) -> LaurentSeries {
        LaurentSeries {
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
            ..self.clone()
        }
    }

    /// The truncated sum as a rational function.
    pub fn to_ratfunc(&self) -> RatFunc {
        let t = RatFunc::var(&self.param);
        let mut acc = RatFunc::zero();
        for (k, c) in self.coeffs.iter().enumerate() {
            let e = self.leading_exponent + k as i64;
            acc = &acc + &(c * &t.pow(e as i32));
        }
        acc
    }
}

impl fmt::Display for LaurentSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let e = self.leading_exponent + k as i64;
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let mono = match e {
                0 => String::new(),
                1 => self.param.clone(),
                _ => format!("{}^{}", self.param, e),
            };
            match (c.is_one(), mono.is_empty()) {
                (_, true) => write!(f, "({c})")?,
                (true, false) => write!(f, "{mono}")?,
                (false, false) => write!(f, "({c})*{mono}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O({}^{})", self.param, self.truncation_order + 1)
    }
}

/// Lowest power of `param` present in `p`, or `None` for zero.
fn poly_valuation(p: &[MultiPoly]) -> Option<usize> {
    p.iter().position(|c| !c.is_zero())
}

/// Exponent of the lowest-order term of `f` in `param`; `None` for zero.
pub fn valuation(f: &RatFunc, param: &str) -> Option<i64> {
    let n = poly_valuation(&f.num().to_univariate(param))?;
    let d = poly_valuation(&f.den().to_univariate(param)).expect("nonzero denominator");
    Some(n as i64 - d as i64)
}

/// Expands `f` about `param = 0` through `param^order`.
pub fn laurent_expand(f: &RatFunc, param: &str, order: i64) -> LaurentSeries {
    let num = f.num().to_univariate(param);
    let den = f.den().to_univariate(param);
    let Some(vn) = poly_valuation(&num) else {
        return LaurentSeries::zero(param, order);
    };
    let vd = poly_valuation(&den).expect("nonzero denominator");
    let lead = vn as i64 - vd as i64;
    if order < lead {
        return LaurentSeries::zero(param, order);
    }
    let n = &num[vn..];
    let d = &den[vd..];
    let d0 = RatFunc::from_poly(d[0].clone()).recip();
    let len = (order - lead + 1) as usize;
    let mut q: Vec<RatFunc> = Vec::with_capacity(len);
    for k in 0..len {
        let mut acc = n.get(k).cloned().map(RatFunc::from_poly).unwrap_or_default();
        for i in 1..=k.min(d.len() - 1) {
            if !d[i].is_zero() && !q[k - i].is_zero() {
                acc = &acc - &(&RatFunc::from_poly(d[i].clone()) * &q[k - i]);
            }
        }
        q.push(&acc * &d0);
    }
    LaurentSeries {
        param: param.to_string(),
        leading_exponent: lead,
        coeffs: q,
        truncation_order: order,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::int;

    fn t() -> RatFunc {
        RatFunc::var("t")
    }

    #[test]
    fn geometric_series() {
        let f = &RatFunc::one() / &(&RatFunc::one() - &t());
        let s = laurent_expand(&f, "t", 2);
        assert_eq!(s.leading_exponent, 0);
        assert_eq!(s.coeffs, vec![RatFunc::one(); 3]);
    }

    #[test]
    fn shifted_geometric_series() {
        let f = &t().pow(-2) / &(&RatFunc::one() + &t());
        let s = laurent_expand(&f, "t", 0);
        assert_eq!(s.leading_exponent, -2);
        assert_eq!(
            s.coeffs,
            vec![RatFunc::one(), RatFunc::from_int(-1), RatFunc::one()]
        );
        let residual = &f - &s.to_ratfunc();
        assert!(valuation(&residual, "t").unwrap() > 0);
        assert_eq!(s.to_string(), "t^-2 + (-1)*t^-1 + (1) + O(t^1)");
    }

    #[test]
    fn symbolic_coefficients() {
        let p = RatFunc::var("P");
        let f = &(&p + &t()) / &(&RatFunc::one() - &t().scale(&int(2)));
        let s = laurent_expand(&f, "t", 1);
        assert_eq!(s.coefficient(0), p);
        assert_eq!(s.coefficient(1), &p.scale(&int(2)) + &RatFunc::one());
        assert_eq!(s.coefficient(-3), RatFunc::zero());
    }

    #[test]
    fn product_tracks_truncation() {
        let a = laurent_expand(&(&RatFunc::one() / &(&RatFunc::one() - &t())), "t", 3);
        let b = laurent_expand(&(&RatFunc::one() - &t()), "t", 3);
        let p = a.mul(&b);
        assert_eq!(p.coefficient(0), RatFunc::one());
        for e in 1..=3 {
            assert!(p.coefficient(e).is_zero());
        }
    }
}
