//! Quadratic Casimir vectors as vacuum descendants, and zero-mode
//! eigenvalues of vacuum descendants between two weight-h primaries.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use rayon::prelude::*;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::laurent::laurent_expand;
use crate::algebra::matrix::{fraction_free_solve, Matrix};
use crate::algebra::rational::{format_rational, BigRational};
use crate::algebra::{factor, MultiPoly, PolyMatrix, RatFunc};
use crate::error::{Error, Result};
use crate::verma::{self, apply_mode, central_term, gram, vacuum_basis, PartitionWord, VermaVector, CHARGE};

/// Symbol for a generic primary weight.
pub const WEIGHT: &str = "h";

/// Name of the dimension symbol for weight `h`: `d` for currents, `d{h}` above.
pub fn dimension_symbol(h: i64) -> String {
    if h == 1 {
        "d".to_string()
    } else {
        format!("d{h}")
    }
}

/// `(h − 1) m + n − h`: the scalar in `L_m λ⁽ⁿ⁾ = (...) λ⁽ⁿ⁻ᵐ⁾`.
pub fn descent_coefficient(h: &BigRational, m: i64, n: i64) -> BigRational {
    assert!(m >= 1, "descent relations hold for positive modes");
    (h - BigRational::one()) * BigInt::from(m) + BigInt::from(n) - h
}

/// A Casimir vector at one level, linear in the dimension symbol.
#[derive(Clone, Debug)]
pub struct CasimirSolution {
    pub weight: i64,
    pub level: u32,
    /// Coefficients in ℚ(C) times the dimension symbol.
    pub vector: VermaVector,
    /// `vector` divided by the dimension symbol.
    pub unit: VermaVector,
    /// Values of C where the solve breaks down.
    pub poles: Vec<BigRational>,
    pub assumptions: Vec<String>,
}

impl CasimirSolution {
    pub fn symbol(&self) -> String {
        dimension_symbol(self.weight)
    }

    pub fn export(&self) -> CasimirExport {
        CasimirExport {
            weight: self.weight,
            level: self.level,
            symbol: self.symbol(),
            terms: self
                .vector
                .terms()
                .iter()
                .map(|(w, c)| TermExport {
                    parts: w.parts().to_vec(),
                    coeff_num: c.num().clone(),
                    coeff_den: c.den().clone(),
                })
                .collect(),
            poles: self.poles.clone(),
            assumptions: self.assumptions.clone(),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct TermExport {
    pub parts: Vec<u32>,
    pub coeff_num: MultiPoly,
    pub coeff_den: MultiPoly,
}

/// JSON shape of a Casimir solution.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct CasimirExport {
    pub weight: i64,
    pub level: u32,
    pub symbol: String,
    pub terms: Vec<TermExport>,
    #[serde(with = "crate::algebra::rational::serde_rational_vec")]
    pub poles: Vec<BigRational>,
    pub assumptions: Vec<String>,
}

fn integral_weight(h: &BigRational) -> Result<i64> {
    if !h.is_integer() || !h.is_positive() {
        return Err(Error::UnsupportedWeight(format_rational(h)));
    }
    h.to_integer()
        .to_i64()
        .ok_or_else(|| Error::UnsupportedWeight(format_rational(h)))
}

/// `⟨w, λ⟩ / d_h` for a basis word `w` of level `n`, by peeling parts.
fn descent_functional(h: &BigRational, w: &PartitionWord) -> BigRational {
    let mut acc = if integral_weight(h).unwrap_or(1) % 2 == 0 {
        BigRational::one()
    } else {
        -BigRational::one()
    };
    let mut n = w.level() as i64;
    for &k in w.parts() {
        acc *= descent_coefficient(h, k as i64, n);
        n -= k as i64;
    }
    acc
}

type CasimirKey = (i64, u32);

fn casimir_cache() -> &'static RwLock<HashMap<CasimirKey, Arc<CasimirSolution>>> {
    static CACHE: OnceLock<RwLock<HashMap<CasimirKey, Arc<CasimirSolution>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Solves for the weight-`h` Casimir vector at level `n`.
///
/// The pairing of the unknown vector with each basis word is fixed by the
/// descent relations and the base value `(−1)^h d_h 𝟙`; the Gram matrix then
/// determines the coefficients.
pub fn solve_casimir(h: &BigRational, n: u32) -> Result<Arc<CasimirSolution>> {
    let weight = integral_weight(h)?;
    let key = (weight, n);
    if let Some(s) = casimir_cache().read().unwrap().get(&key) {
        return Ok(s.clone());
    }
    let sol = Arc::new(compute_casimir(h, weight, n)?);
    Ok(casimir_cache()
        .write()
        .unwrap()
        .entry(key)
        .or_insert(sol)
        .clone())
}

fn compute_casimir(h: &BigRational, weight: i64, n: u32) -> Result<CasimirSolution> {
    let assumptions = vec!["lambda1_zero".to_string()];
    let basis = vacuum_basis(n);
    if basis.is_empty() {
        return Ok(CasimirSolution {
            weight,
            level: n,
            vector: VermaVector::zero(n as i64),
            unit: VermaVector::zero(n as i64),
            poles: Vec::new(),
            assumptions,
        });
    }
    let g = gram(n);
    let rhs: Vec<BigRational> = basis.iter().map(|w| descent_functional(h, w)).collect();
    if g.det.is_zero() {
        return Err(Error::SingularMatrix {
            det: g.det.to_string(),
        });
    }
    let numerators = adjugate_numerators(&g.entries, &rhs, &g.det);
    let sym = MultiPoly::var(&dimension_symbol(weight));
    let mut terms = Vec::with_capacity(basis.len());
    let mut unit_terms = Vec::with_capacity(basis.len());
    let mut pole_set = Vec::new();
    for (w, xi) in basis.iter().zip(&numerators) {
        let (c, poles) = reduce_against(xi, &g.det, &g.factored);
        for r in poles {
            if !pole_set.contains(&r) {
                pole_set.push(r);
            }
        }
        let (num, den) = c.clone().into_parts();
        terms.push((w.clone(), RatFunc::from_coprime(&num * &sym, den)));
        unit_terms.push((w.clone(), c));
    }
    let vector = VermaVector::from_terms(n as i64, terms)?;
    let unit = VermaVector::from_terms(n as i64, unit_terms)?;
    pole_set.sort();
    Ok(CasimirSolution {
        weight,
        level: n,
        vector,
        unit,
        poles: pole_set,
        assumptions,
    })
}

/// Numerators `N` of the solution `x = N / det` of `M x = b` with `M` a
/// polynomial matrix in `C` and `b` constant, recovered by solving at
/// integer points and interpolating.
fn adjugate_numerators(m: &PolyMatrix, b: &[BigRational], det: &MultiPoly) -> Vec<MultiPoly> {
    let n = m.rows();
    // Each adjugate entry is a sum of products of n − 1 entries, one per row.
    let row_degrees: Vec<u32> = (0..n)
        .map(|i| m.row(i).iter().map(|p| p.degree_in(CHARGE)).max().unwrap_or(0))
        .collect();
    let bound = row_degrees.iter().sum::<u32>() - row_degrees.iter().min().copied().unwrap_or(0);
    let bound = bound.max(det.degree_in(CHARGE));
    let mut nodes = Vec::with_capacity(bound as usize + 1);
    let mut c = 1i64;
    while nodes.len() <= bound as usize {
        let x = BigRational::from_integer(BigInt::from(c));
        if !det.eval(CHARGE, &x).is_zero() {
            nodes.push(x);
        }
        c += 1;
    }
    // Row scalings making every entry and right-hand side integral.
    let scales: Vec<BigRational> = (0..n)
        .map(|i| {
            let den = m
                .row(i)
                .iter()
                .flat_map(|p| p.terms().map(|(_, c)| c.denom().clone()))
                .chain(std::iter::once(b[i].denom().clone()))
                .fold(BigInt::one(), |a, d| a.lcm(&d));
            BigRational::from_integer(den)
        })
        .collect();
    let col: Vec<BigInt> = (0..n).map(|i| (&b[i] * &scales[i]).to_integer()).collect();
    let values: Vec<Vec<BigRational>> = nodes
        .par_iter()
        .map(|x| {
            let a = Matrix::from_fn(n, n, |i, j| {
                let v = m.get(i, j).eval(CHARGE, x).constant_value().expect("univariate entry");
                (v * &scales[i]).to_integer()
            });
            let dx = det.eval(CHARGE, x).constant_value().expect("univariate determinant");
            let (dd, sol) = fraction_free_solve(&a, &[col.clone()]).expect("nonzero determinant");
            let f = dx / BigRational::from_integer(dd);
            sol[0].iter().map(|xi| &f * xi).collect()
        })
        .collect();
    (0..n)
        .map(|i| {
            let ys: Vec<BigRational> = values.iter().map(|v| v[i].clone()).collect();
            MultiPoly::interpolate(CHARGE, &nodes, &ys)
        })
        .collect()
}

/// `num / den` with the common linear factors of `den` cancelled by
/// synthetic division at its known roots, together with the roots that
/// survive in the denominator.
fn reduce_against(num: &MultiPoly, den: &MultiPoly, f: &factor::Factorization) -> (RatFunc, Vec<BigRational>) {
    if num.is_zero() {
        return (RatFunc::zero(), Vec::new());
    }
    if !f.is_complete() {
        let r = RatFunc::new(num.clone(), den.clone());
        let poles = factor::rational_roots_of(r.den());
        return (r, poles);
    }
    let mut coeffs: Vec<BigRational> = num
        .to_univariate(CHARGE)
        .iter()
        .map(|c| c.constant_value().expect("univariate numerator"))
        .collect();
    let mut reduced = MultiPoly::one();
    let mut poles = Vec::new();
    for lf in &f.factors {
        let mut left = lf.mult;
        while left > 0 {
            match divide_linear(&coeffs, &lf.root) {
                Some(q) => {
                    // lf.poly = b·(C − root)
                    let b = lf.poly.leading_coeff();
                    coeffs = q.into_iter().map(|c| c / &b).collect();
                    left -= 1;
                }
                None => break,
            }
        }
        if left > 0 {
            poles.push(lf.root.clone());
            reduced = &reduced * &lf.poly.pow(left);
        }
    }
    let unit = &f.constant * f.remainder.constant_value().expect("complete factorization");
    let num = MultiPoly::univariate(CHARGE, &coeffs).scale(&unit.recip());
    (RatFunc::from_coprime(num, reduced), poles)
}

/// Quotient of an ascending coefficient vector by `(x − r)` when exact.
fn divide_linear(coeffs: &[BigRational], r: &BigRational) -> Option<Vec<BigRational>> {
    let n = coeffs.len();
    if n < 2 {
        return None;
    }
    let mut q = vec![BigRational::zero(); n - 1];
    let mut carry = BigRational::zero();
    for k in (1..n).rev() {
        carry = &coeffs[k] + &carry * r;
        q[k - 1] = carry.clone();
    }
    (&coeffs[0] + &carry * r).is_zero().then_some(q)
}

/// A zero-mode eigenvalue `ε` with `⟨a, o(v) b⟩ = ε ⟨a, b⟩`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ZeroModeValue {
    pub word: PartitionWord,
    /// The primary weight: a number, or the symbol `h`.
    pub weight: MultiPoly,
    pub value: RatFunc,
}

/// A word `L_{-n1} ⋯ L_{-nk} b` in the Verma module over a primary `b`,
/// parts `≥ 1`, non-increasing.
type PrimaryWord = Vec<u32>;
type PrimaryVec = BTreeMap<PrimaryWord, MultiPoly>;

fn add_into(acc: &mut PrimaryVec, w: &PrimaryWord, c: &MultiPoly) {
    if c.is_zero() {
        return;
    }
    let e = acc.entry(w.clone()).or_insert_with(MultiPoly::zero);
    *e = &*e + c;
    if e.is_zero() {
        acc.remove(w);
    }
}

/// Mode-product evaluation of zero modes over the abstract Verma module of a
/// primary of weight `h`.
struct PrimaryModule {
    h: MultiPoly,
    modes: RwLock<HashMap<(i64, PrimaryWord), Arc<PrimaryVec>>>,
    zero_modes: RwLock<HashMap<(PartitionWord, PrimaryWord), MultiPoly>>,
}

impl PrimaryModule {
    fn new(h: MultiPoly) -> Self {
        PrimaryModule {
            h,
            modes: Default::default(),
            zero_modes: Default::default(),
        }
    }

    /// `L_n` on a primary-module word, normal ordered.
    fn apply(&self, n: i64, w: &PrimaryWord) -> Arc<PrimaryVec> {
        let key = (n, w.clone());
        if let Some(v) = self.modes.read().unwrap().get(&key) {
            return v.clone();
        }
        let v = Arc::new(self.compute_apply(n, w));
        self.modes.write().unwrap().entry(key).or_insert(v).clone()
    }

    fn compute_apply(&self, n: i64, w: &PrimaryWord) -> PrimaryVec {
        let mut out = PrimaryVec::new();
        let Some((&k1, rest)) = w.split_first() else {
            match n.signum() {
                1 => {}
                0 => {
                    if !self.h.is_zero() {
                        out.insert(Vec::new(), self.h.clone());
                    }
                }
                _ => {
                    out.insert(vec![(-n) as u32], MultiPoly::one());
                }
            }
            return out;
        };
        let rest: PrimaryWord = rest.to_vec();
        let k = k1 as i64;
        if n < 0 && -n >= k {
            let mut v = vec![(-n) as u32];
            v.extend_from_slice(w);
            out.insert(v, MultiPoly::one());
            return out;
        }
        for (u, c) in self.apply(n, &rest).iter() {
            for (u2, c2) in self.apply(-k, u).iter() {
                add_into(&mut out, u2, &(c * c2));
            }
        }
        if n + k != 0 {
            let f = MultiPoly::from_int(n + k);
            for (u, c) in self.apply(n - k, &rest).iter() {
                add_into(&mut out, u, &(&f * c));
            }
        }
        if n == k {
            add_into(&mut out, &rest, &central_term(n));
        }
        out
    }

    /// `⟨a, v_(wt v − 1 + level X) X⟩ / ⟨a, b⟩` for a vacuum word `v` and a
    /// primary-module word `X`.
    ///
    /// Uses the iterate formula with `v = ω_(1−k) v'`: the terms with a
    /// Virasoro mode on the left vanish against the primary `a`, leaving
    /// `Σ_i (−1)^(k+i) binom(1−k, i) ⟨a, v'_(…) L_{i−1} X⟩`.
    fn zero_mode(&self, v: &PartitionWord, x: &PrimaryWord) -> MultiPoly {
        let Some((k, rest)) = v.split_first() else {
            return if x.is_empty() {
                MultiPoly::one()
            } else {
                MultiPoly::zero()
            };
        };
        let key = (v.clone(), x.clone());
        if let Some(e) = self.zero_modes.read().unwrap().get(&key) {
            return e.clone();
        }
        let level_x: u32 = x.iter().sum();
        let p = BigRational::from_integer(BigInt::from(1 - k as i64));
        let mut binom = BigRational::one();
        let mut acc = MultiPoly::zero();
        for i in 0..=(level_x as i64 + 1) {
            if i > 0 {
                binom = binom * (&p - BigInt::from(i - 1)) / BigInt::from(i);
            }
            let sign = if (k as i64 + i) % 2 == 0 { 1 } else { -1 };
            let coeff = &binom * BigInt::from(sign);
            if coeff.is_zero() {
                continue;
            }
            let mut inner = MultiPoly::zero();
            for (y, c) in self.apply(i - 1, x).iter() {
                let e = self.zero_mode(&rest, y);
                if !e.is_zero() {
                    inner = &inner + &(c * &e);
                }
            }
            acc = &acc + &inner.scale(&coeff);
        }
        self.zero_modes
            .write()
            .unwrap()
            .entry(key)
            .or_insert(acc)
            .clone()
    }
}

fn primary_module(h: &MultiPoly) -> Arc<PrimaryModule> {
    static MODULES: OnceLock<RwLock<HashMap<MultiPoly, Arc<PrimaryModule>>>> = OnceLock::new();
    let map = MODULES.get_or_init(Default::default);
    if let Some(m) = map.read().unwrap().get(h) {
        return m.clone();
    }
    map.write()
        .unwrap()
        .entry(h.clone())
        .or_insert_with(|| Arc::new(PrimaryModule::new(h.clone())))
        .clone()
}

fn check_weight(h: &MultiPoly) {
    assert!(
        h.vars().iter().all(|v| v == WEIGHT),
        "primary weight must be a number or the symbol {WEIGHT}"
    );
}

/// Zero-mode eigenvalue by the mode-product recursion.
pub fn zero_mode_eigenvalue(word: &PartitionWord, h: &MultiPoly) -> ZeroModeValue {
    check_weight(h);
    let value = primary_module(h).zero_mode(word, &Vec::new());
    ZeroModeValue {
        word: word.clone(),
        weight: h.clone(),
        value: RatFunc::from_poly(value),
    }
}

fn ward_cache() -> &'static RwLock<HashMap<(PartitionWord, MultiPoly), RatFunc>> {
    static CACHE: OnceLock<RwLock<HashMap<(PartitionWord, MultiPoly), RatFunc>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Zero-mode eigenvalue by the Ward-identity recursion on
/// `⟨a, Y(ω, z) Y(w, 1) b⟩`, a rational function of `s = z − 1`:
///
/// `Σ_{j=−1}^{|w|} ε(L_j w) s^{−j−2} + h ε(w) (1+s)^{−2} − ε(L_{−1} w) (1+s)^{−1}`,
///
/// whose `s^{k−2}` coefficient is `ε(L_{−k} w)`.
pub fn zero_mode_ward(word: &PartitionWord, h: &MultiPoly) -> RatFunc {
    check_weight(h);
    let key = (word.clone(), h.clone());
    if let Some(v) = ward_cache().read().unwrap().get(&key) {
        return v.clone();
    }
    let value = match word.split_first() {
        None => RatFunc::one(),
        Some((k, rest)) => {
            let s = RatFunc::var("s");
            let one = RatFunc::one();
            let eps = zero_mode_ward(&rest, h);
            let n_w = rest.level() as i64;
            let mut f = RatFunc::zero();
            let mut a_minus_one = RatFunc::zero();
            for j in -1..=n_w {
                let image = verma::apply_mode_word(j, &rest);
                let a_j = ward_vector(&image, h);
                if j == -1 {
                    a_minus_one = a_j.clone();
                }
                f = &f + &(&a_j * &s.pow(-(j as i32) - 2));
            }
            let hh = RatFunc::from_poly(h.clone());
            let one_plus_s = &one + &s;
            f = &f + &(&(&hh * &eps) * &one_plus_s.pow(-2));
            f = &f - &(&a_minus_one * &one_plus_s.recip());
            let series = laurent_expand(&f, "s", k as i64 - 2);
            series.coefficient(k as i64 - 2)
        }
    };
    ward_cache()
        .write()
        .unwrap()
        .entry(key)
        .or_insert(value)
        .clone()
}

/// Ward-route eigenvalue of a vector (linear extension).
pub fn ward_vector(v: &VermaVector, h: &MultiPoly) -> RatFunc {
    v.terms()
        .iter()
        .fold(RatFunc::zero(), |acc, (w, c)| &acc + &(c * &zero_mode_ward(w, h)))
}

/// Mode-product eigenvalue of a vector (linear extension).
pub fn zero_mode_vector(v: &VermaVector, h: &MultiPoly) -> RatFunc {
    v.terms().iter().fold(RatFunc::zero(), |acc, (w, c)| {
        &acc + &(c * &zero_mode_eigenvalue(w, h).value)
    })
}

/// `⟨a, λ₀⁽ⁿ⁾ b⟩ / ⟨a, b⟩`, linear in the dimension symbol.
pub fn casimir_zero_mode(h: &BigRational, n: u32) -> Result<RatFunc> {
    let unit = casimir_zero_mode_unit(h, n)?;
    let sym = MultiPoly::var(&dimension_symbol(integral_weight(h)?));
    let (num, den) = unit.into_parts();
    Ok(RatFunc::from_coprime(&num * &sym, den))
}

/// [`casimir_zero_mode`] divided by the dimension symbol: a function of `C`.
pub fn casimir_zero_mode_unit(h: &BigRational, n: u32) -> Result<RatFunc> {
    let sol = solve_casimir(h, n)?;
    Ok(zero_mode_vector(&sol.unit, &MultiPoly::constant(h.clone())))
}

/// `L_m λ⁽ⁿ⁾ − c · λ⁽ⁿ⁻ᵐ⁾` for the solved vectors, divided by the dimension
/// symbol; zero when the descent relation holds.
pub fn descent_defect(h: &BigRational, n: u32, m: u32) -> Result<VermaVector> {
    let top = solve_casimir(h, n)?;
    let lhs = apply_mode(m as i64, &top.unit);
    let lower = n as i64 - m as i64;
    let rhs = if lower == 1 {
        VermaVector::zero(1)
    } else {
        let c = descent_coefficient(h, m as i64, n as i64);
        solve_casimir(h, lower as u32)?
            .unit
            .scale(&RatFunc::constant(c))
    };
    Ok(lhs.sub(&rhs))
}

/// The Casimir vector at a numeric central charge, divided by the dimension
/// symbol; rejects poles.
pub fn casimir_at(h: &BigRational, n: u32, charge: &BigRational) -> Result<VermaVector> {
    let sol = solve_casimir(h, n)?;
    if sol.poles.contains(charge) {
        return Err(Error::SingularSolve {
            weight: format_rational(h),
            level: n as usize,
            charge: format_rational(charge),
        });
    }
    let terms = sol
        .unit
        .terms()
        .iter()
        .map(|(w, c)| (w.clone(), c.eval(CHARGE, charge).expect("pole excluded above")));
    VermaVector::from_terms(n as i64, terms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::{int, rat};

    fn w(p: &[u32]) -> PartitionWord {
        PartitionWord::new(p.to_vec()).unwrap()
    }

    #[test]
    fn descent_coefficients() {
        assert_eq!(descent_coefficient(&int(1), 3, 7), int(6));
        assert_eq!(descent_coefficient(&int(2), 3, 7), int(8));
        assert_eq!(descent_coefficient(&int(3), 1, 10), int(9));
    }

    #[test]
    fn lambda_two_and_one() {
        let s = solve_casimir(&int(1), 2).unwrap();
        let d = RatFunc::var("d");
        let expected = &(&d * &RatFunc::from_int(-2)) / &RatFunc::var("C");
        assert_eq!(s.vector.coeff(&w(&[2])), expected);
        assert!(solve_casimir(&int(1), 1).unwrap().vector.is_zero());
        assert_eq!(s.poles, vec![int(0)]);
    }

    #[test]
    fn zero_modes_of_small_words() {
        let h = MultiPoly::var(WEIGHT);
        let hv = RatFunc::var(WEIGHT);
        assert_eq!(zero_mode_eigenvalue(&PartitionWord::vacuum(), &h).value, RatFunc::one());
        assert_eq!(zero_mode_eigenvalue(&w(&[2]), &h).value, hv);
        assert_eq!(zero_mode_eigenvalue(&w(&[3]), &h).value, hv.scale(&int(-2)));
        let hh2 = &hv * &(&hv + &RatFunc::from_int(2));
        assert_eq!(zero_mode_eigenvalue(&w(&[2, 2]), &h).value, hh2);
        assert_eq!(zero_mode_ward(&w(&[2, 2]), &h), hh2);
        let _ = rat(1, 2);
    }
}
