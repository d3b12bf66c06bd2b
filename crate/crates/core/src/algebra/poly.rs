//! Sparse multivariate polynomials over ℚ in named variables.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::intpoly::IntPoly;
use super::rational::{format_rational, serde_rational, BigRational};

/// Exponent vector, ordered graded-lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    fn div(&self, other: &Monomial) -> Option<Monomial> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(Monomial)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A polynomial with rational coefficients.
///
/// The variable list is sorted and holds exactly the variables that occur, so
/// structurally equal polynomials compare equal regardless of how they were
/// built.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    vars: Vec<String>,
    terms: BTreeMap<Monomial, BigRational>,
}

impl Default for MultiPoly {
    fn default() -> Self {
        Self::zero()
    }
}

impl MultiPoly {
    pub fn zero() -> Self {
        MultiPoly {
            vars: Vec::new(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial(Vec::new()), c);
        }
        MultiPoly {
            vars: Vec::new(),
            terms,
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn var(name: &str) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(Monomial(vec![1]), BigRational::one());
        MultiPoly {
            vars: vec![name.to_string()],
            terms,
        }
    }

    /// Builds from `(exponents, coeff)` pairs over the given variable list.
    /// Duplicate exponent vectors are summed.
    pub fn from_terms<I>(vars: &[&str], terms: I) -> Self
    where
        I: IntoIterator<Item = (Vec<u32>, BigRational)>,
    {
        let vars: Vec<String> = vars.iter().map(|s| s.to_string()).collect();
        let mut map: BTreeMap<Monomial, BigRational> = BTreeMap::new();
        for (e, c) in terms {
            assert_eq!(e.len(), vars.len(), "exponent arity mismatch");
            accumulate(&mut map, Monomial(e), c);
        }
        Self::from_raw(vars, map)
    }

    /// Univariate polynomial from ascending coefficients.
    pub fn univariate(name: &str, coeffs: &[BigRational]) -> Self {
        Self::from_terms(
            &[name],
            coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| (vec![i as u32], c.clone())),
        )
    }

    /// The polynomial of degree `< xs.len()` in `name` through the given
    /// points, by Newton divided differences. Nodes must be distinct.
    pub fn interpolate(name: &str, xs: &[BigRational], ys: &[BigRational]) -> Self {
        assert_eq!(xs.len(), ys.len(), "node and value counts differ");
        let n = xs.len();
        let mut dd = ys.to_vec();
        for k in 1..n {
            for i in (k..n).rev() {
                let den = &xs[i] - &xs[i - k];
                assert!(!den.is_zero(), "repeated interpolation node");
                dd[i] = (&dd[i] - &dd[i - 1]) / den;
            }
        }
        // Horner on the Newton basis, ascending coefficient vector.
        let mut acc: Vec<BigRational> = Vec::new();
        for i in (0..n).rev() {
            // acc = acc * (x - xs[i]) + dd[i]
            let mut next = vec![BigRational::zero(); acc.len() + 1];
            for (j, c) in acc.iter().enumerate() {
                next[j + 1] += c;
                next[j] -= c * &xs[i];
            }
            next[0] += &dd[i];
            acc = next;
        }
        Self::univariate(name, &acc)
    }

    /// Sorts the variables and drops unused ones.
    fn from_raw(vars: Vec<String>, terms: BTreeMap<Monomial, BigRational>) -> Self {
        let n = vars.len();
        let used: Vec<bool> = (0..n)
            .map(|i| terms.keys().any(|m| m.0[i] > 0))
            .collect();
        let mut order: Vec<usize> = (0..n).filter(|&i| used[i]).collect();
        order.sort_by(|&a, &b| vars[a].cmp(&vars[b]));
        let identity = order.len() == n && order.iter().enumerate().all(|(k, &i)| k == i);
        if identity {
            return MultiPoly { vars, terms };
        }
        let new_vars = order.iter().map(|&i| vars[i].clone()).collect();
        let terms = terms
            .into_iter()
            .map(|(m, c)| (Monomial(order.iter().map(|&i| m.0[i]).collect()), c))
            .collect();
        MultiPoly {
            vars: new_vars,
            terms,
        }
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.constant_value().is_some_and(|c| c.is_one())
    }

    pub fn is_constant(&self) -> bool {
        self.vars.is_empty()
    }

    /// The value if the polynomial has no variables.
    pub fn constant_value(&self) -> Option<BigRational> {
        if !self.vars.is_empty() {
            return None;
        }
        Some(
            self.terms
                .values()
                .next()
                .cloned()
                .unwrap_or_else(BigRational::zero),
        )
    }

    pub fn has_var(&self, name: &str) -> bool {
        self.var_index(name).is_some()
    }

    fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.binary_search_by(|v| v.as_str().cmp(name)).ok()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn degree_in(&self, name: &str) -> u32 {
        match self.var_index(name) {
            Some(i) => self.terms.keys().map(|m| m.0[i]).max().unwrap_or(0),
            None => 0,
        }
    }

    /// Largest term under the graded-lex order.
    pub fn leading_term(&self) -> Option<(&Monomial, &BigRational)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coeff(&self) -> BigRational {
        self.leading_term()
            .map(|(_, c)| c.clone())
            .unwrap_or_else(BigRational::zero)
    }

    /// Coefficient of the monomial with the given exponents (same arity as `vars()`).
    pub fn coeff(&self, exponents: &[u32]) -> BigRational {
        self.terms
            .get(&Monomial(exponents.to_vec()))
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    /// Re-expresses the terms over `target`, which must contain every variable.
    fn embed(&self, target: &[String]) -> BTreeMap<Monomial, BigRational> {
        if self.vars == target {
            return self.terms.clone();
        }
        let pos: Vec<usize> = self
            .vars
            .iter()
            .map(|v| target.iter().position(|t| t == v).expect("variable missing"))
            .collect();
        self.terms
            .iter()
            .map(|(m, c)| {
                let mut e = vec![0; target.len()];
                for (k, &p) in pos.iter().enumerate() {
                    e[p] = m.0[k];
                }
                (Monomial(e), c.clone())
            })
            .collect()
    }

    fn merged_vars(&self, other: &MultiPoly) -> Vec<String> {
        if self.vars == other.vars {
            return self.vars.clone();
        }
        let mut v: Vec<String> = self.vars.iter().chain(&other.vars).cloned().collect();
        v.sort();
        v.dedup();
        v
    }

    pub fn scale(&self, c: &BigRational) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero();
        }
        MultiPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> MultiPoly {
        let mut base = self.clone();
        let mut acc = MultiPoly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Exact quotient `self / d`, or `None` if `d` does not divide `self`.
    pub fn exact_div(&self, d: &MultiPoly) -> Option<MultiPoly> {
        assert!(!d.is_zero(), "division by the zero polynomial");
        if let Some(c) = d.constant_value() {
            return Some(self.scale(&c.recip()));
        }
        if self.is_zero() {
            return Some(MultiPoly::zero());
        }
        if let (Some(a), Some(b)) = (self.as_intpoly_var(), d.as_intpoly_var()) {
            if a == b {
                return self.exact_div_univariate(d, &a);
            }
        }
        let vars = self.merged_vars(d);
        let dv = d.embed(&vars);
        let (dlm, dlc) = dv.iter().next_back().map(|(m, c)| (m.clone(), c.clone()))?;
        let mut rem = self.embed(&vars);
        let mut quot = BTreeMap::new();
        while let Some((rm, rc)) = rem.iter().next_back() {
            let qm = rm.div(&dlm)?;
            let qc = rc / &dlc;
            for (m, c) in &dv {
                accumulate(&mut rem, m.mul(&qm), -(c * &qc));
            }
            quot.insert(qm, qc);
        }
        Some(MultiPoly::from_raw(vars, quot))
    }

    fn exact_div_univariate(&self, d: &MultiPoly, var: &str) -> Option<MultiPoly> {
        let (a, sa) = IntPoly::from_multipoly(self, var);
        let (b, sb) = IntPoly::from_multipoly(d, var);
        let q = a.exact_div(&b)?;
        Some(q.to_multipoly(var).scale(&(sa / sb)))
    }

    /// The single variable, if the polynomial is univariate.
    fn as_intpoly_var(&self) -> Option<String> {
        (self.vars.len() == 1).then(|| self.vars[0].clone())
    }

    /// Coefficients in `name`, ascending; each coefficient lacks `name`.
    pub fn to_univariate(&self, name: &str) -> Vec<MultiPoly> {
        let Some(i) = self.var_index(name) else {
            return if self.is_zero() {
                Vec::new()
            } else {
                vec![self.clone()]
            };
        };
        let deg = self.degree_in(name) as usize;
        let mut buckets: Vec<BTreeMap<Monomial, BigRational>> = vec![BTreeMap::new(); deg + 1];
        for (m, c) in &self.terms {
            let mut e = m.0.clone();
            let k = e[i] as usize;
            e[i] = 0;
            buckets[k].insert(Monomial(e), c.clone());
        }
        buckets
            .into_iter()
            .map(|t| MultiPoly::from_raw(self.vars.clone(), t))
            .collect()
    }

    /// Inverse of `to_univariate`.
    pub fn from_univariate(name: &str, coeffs: &[MultiPoly]) -> MultiPoly {
        let x = MultiPoly::var(name);
        let mut acc = MultiPoly::zero();
        for c in coeffs.iter().rev() {
            acc = &(&acc * &x) + c;
        }
        acc
    }

    /// Replaces `name` by `value` everywhere.
    pub fn substitute(&self, name: &str, value: &MultiPoly) -> MultiPoly {
        if !self.has_var(name) {
            return self.clone();
        }
        let coeffs = self.to_univariate(name);
        let mut acc = MultiPoly::zero();
        for c in coeffs.iter().rev() {
            acc = &(&acc * value) + c;
        }
        acc
    }

    pub fn eval(&self, name: &str, value: &BigRational) -> MultiPoly {
        self.substitute(name, &MultiPoly::constant(value.clone()))
    }

    /// Full evaluation; `None` if some variable has no assigned value.
    pub fn eval_all(&self, values: &BTreeMap<String, BigRational>) -> Option<BigRational> {
        let point: Vec<&BigRational> = self
            .vars
            .iter()
            .map(|v| values.get(v))
            .collect::<Option<_>>()?;
        let mut sum = BigRational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(&m.0) {
                t *= num_traits::pow((*x).clone(), e as usize);
            }
            sum += t;
        }
        Some(sum)
    }

    pub fn derivative(&self, name: &str) -> MultiPoly {
        let Some(i) = self.var_index(name) else {
            return MultiPoly::zero();
        };
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            if m.0[i] > 0 {
                let mut e = m.0.clone();
                e[i] -= 1;
                terms.insert(Monomial(e), c * BigInt::from(m.0[i]));
            }
        }
        MultiPoly::from_raw(self.vars.clone(), terms)
    }

    /// Positive rational `c` with `self / c` having coprime integer
    /// coefficients; the sign makes the leading coefficient of `self / c`
    /// positive. Zero has content one.
    pub fn content(&self) -> BigRational {
        if self.is_zero() {
            return BigRational::one();
        }
        let mut num = BigInt::zero();
        let mut den = BigInt::one();
        for c in self.terms.values() {
            num = num.gcd(c.numer());
            den = den.lcm(c.denom());
        }
        let c = BigRational::new(num, den);
        if self.leading_coeff().is_negative() {
            -c
        } else {
            c
        }
    }

    /// `self` scaled to coprime integers with positive leading coefficient.
    pub fn primitive(&self) -> MultiPoly {
        self.scale(&self.content().recip())
    }

    /// `self` scaled so the leading coefficient is one.
    pub fn monic(&self) -> MultiPoly {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&self.leading_coeff().recip())
    }

    /// Greatest common divisor, primitive with positive leading coefficient.
    pub fn gcd(&self, other: &MultiPoly) -> MultiPoly {
        super::gcd::poly_gcd(self, other)
    }

    /// Renders with the given coefficient style; terms descend.
    fn render(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            let mono: Vec<String> = self
                .vars
                .iter()
                .zip(&m.0)
                .filter(|(_, &e)| e > 0)
                .map(|(v, &e)| {
                    if e == 1 {
                        v.clone()
                    } else {
                        format!("{v}^{e}")
                    }
                })
                .collect();
            let coeff = if a.is_integer() {
                format_rational(&a)
            } else {
                format!("({})", format_rational(&a))
            };
            match (mono.is_empty(), a.is_one()) {
                (true, _) => write!(f, "{}", format_rational(&a))?,
                (false, true) => write!(f, "{}", mono.join("*"))?,
                (false, false) => write!(f, "{}*{}", coeff, mono.join("*"))?,
            }
        }
        Ok(())
    }
}

fn accumulate(map: &mut BTreeMap<Monomial, BigRational>, m: Monomial, c: BigRational) {
    if c.is_zero() {
        return;
    }
    use std::collections::btree_map::Entry;
    match map.entry(m) {
        Entry::Vacant(v) => {
            v.insert(c);
        }
        Entry::Occupied(mut o) => {
            *o.get_mut() += c;
            if o.get().is_zero() {
                o.remove();
            }
        }
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.render(f)
    }
}

impl<'a> Add<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        if rhs.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return rhs.clone();
        }
        let vars = self.merged_vars(rhs);
        let mut terms = self.embed(&vars);
        for (m, c) in rhs.embed(&vars) {
            accumulate(&mut terms, m, c);
        }
        MultiPoly::from_raw(vars, terms)
    }
}

impl<'a> Sub<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        if self.is_zero() || rhs.is_zero() {
            return MultiPoly::zero();
        }
        if let Some(c) = rhs.constant_value() {
            return self.scale(&c);
        }
        if let Some(c) = self.constant_value() {
            return rhs.scale(&c);
        }
        let vars = self.merged_vars(rhs);
        let a = self.embed(&vars);
        let b = rhs.embed(&vars);
        let mut terms = BTreeMap::new();
        for (ma, ca) in &a {
            for (mb, cb) in &b {
                accumulate(&mut terms, ma.mul(mb), ca * cb);
            }
        }
        MultiPoly::from_raw(vars, terms)
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr<MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $method(self, rhs: MultiPoly) -> MultiPoly {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $method(self, rhs: &MultiPoly) -> MultiPoly {
                (&self).$method(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}

impl From<BigRational> for MultiPoly {
    fn from(c: BigRational) -> Self {
        MultiPoly::constant(c)
    }
}

/// Wire form: `{"variables": [...], "terms": [{"exponents": [...], "coeff": "p/q"}]}`,
/// terms in descending monomial order.
#[derive(Serialize, Deserialize)]
struct PolyWire {
    variables: Vec<String>,
    terms: Vec<TermWire>,
}

#[derive(Serialize, Deserialize)]
struct TermWire {
    exponents: Vec<u32>,
    #[serde(with = "serde_rational")]
    coeff: BigRational,
}

impl Serialize for MultiPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        PolyWire {
            variables: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .rev()
                .map(|(m, c)| TermWire {
                    exponents: m.0.clone(),
                    coeff: c.clone(),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for MultiPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let w = PolyWire::deserialize(d)?;
        let n = w.variables.len();
        if w.terms.iter().any(|t| t.exponents.len() != n) {
            return Err(serde::de::Error::custom("exponent arity mismatch"));
        }
        let vars: Vec<&str> = w.variables.iter().map(String::as_str).collect();
        Ok(MultiPoly::from_terms(
            &vars,
            w.terms.into_iter().map(|t| (t.exponents, t.coeff)),
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::{int, rat};

    fn c() -> MultiPoly {
        MultiPoly::var("C")
    }

    fn lin(a: i64, b: i64) -> MultiPoly {
        &c().scale(&int(a)) + &MultiPoly::from_int(b)
    }

    #[test]
    fn basic_products() {
        assert_eq!(&c() * &lin(5, 22), MultiPoly::univariate("C", &[int(0), int(22), int(5)]));
        assert!((&lin(5, 22) - &lin(5, 22)).is_zero());
        let p = &lin(2, -1) * &lin(7, 68);
        assert_eq!(p, MultiPoly::univariate("C", &[int(-68), int(129), int(14)]));
        assert_eq!(p.to_string(), "14*C^2 + 129*C - 68");
    }

    #[test]
    fn variables_unify_by_name() {
        let d = MultiPoly::var("d");
        let p = &c() + &d;
        assert_eq!(p.vars(), ["C", "d"]);
        let q = &p - &d;
        assert_eq!(q, c());
        assert_eq!(q.vars(), ["C"]);
    }

    #[test]
    fn exact_division() {
        let x = MultiPoly::var("x");
        let y = MultiPoly::var("y");
        let a = &(&x + &y) * &(&x - &y.scale(&rat(1, 2)));
        assert_eq!(a.exact_div(&(&x + &y)).unwrap(), &x - &y.scale(&rat(1, 2)));
        assert!(a.exact_div(&(&x + &MultiPoly::one())).is_none());
        let u = &lin(5, 22) * &lin(2, -1);
        assert_eq!(u.exact_div(&lin(2, -1)).unwrap(), lin(5, 22));
        assert!(u.exact_div(&lin(1, 1)).is_none());
    }

    #[test]
    fn substitution_and_eval() {
        let p = &lin(5, 22) * &c();
        let q = p.substitute("C", &(&MultiPoly::var("t") + &MultiPoly::one()));
        assert_eq!(q.eval("t", &int(0)).constant_value().unwrap(), int(27));
        let mut pt = BTreeMap::new();
        pt.insert("C".to_string(), rat(47, 2));
        assert_eq!(p.eval_all(&pt).unwrap(), rat(47, 2) * rat(279, 2));
    }

    #[test]
    fn json_round_trip() {
        let p = &lin(5, 22) * &MultiPoly::var("d").scale(&rat(-3, 2));
        let s = serde_json::to_string(&p).unwrap();
        let back: MultiPoly = serde_json::from_str(&s).unwrap();
        assert_eq!(p, back);
    }
}
