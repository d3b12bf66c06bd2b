//! The vacuum Verma module V(C, 0): level bases, normal ordering of Virasoro
//! words, the invariant pairing and Gram matrices.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::factor::{factor_rational_roots, Factorization};
use crate::algebra::matrix::{determinant, PolyMatrix};
use crate::algebra::rational::{serde_rational, BigRational};
use crate::algebra::{MultiPoly, RatFunc};
use crate::error::{Error, Result};

/// The central charge symbol.
pub const CHARGE: &str = "C";

/// `L_{-n1} ⋯ L_{-nk} 𝟙` with `n1 ≥ ⋯ ≥ nk ≥ 2`. The empty word is the vacuum.
///
/// Ordering is lexicographic on the descending part lists, so `[2, 2]`
/// precedes `[4]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct PartitionWord(Vec<u32>);

impl PartitionWord {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.iter().any(|&p| p < 2) {
            return Err(Error::InvalidArgument(format!(
                "vacuum word parts must be at least 2, got {parts:?}"
            )));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidArgument(format!(
                "vacuum word parts must be non-increasing, got {parts:?}"
            )));
        }
        Ok(PartitionWord(parts))
    }

    /// Sorts the parts first; still rejects parts below 2.
    pub fn from_unsorted(mut parts: Vec<u32>) -> Result<Self> {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Self::new(parts)
    }

    pub fn vacuum() -> Self {
        PartitionWord(Vec::new())
    }

    /// `ω = L_{-2} 𝟙`.
    pub fn omega() -> Self {
        PartitionWord(vec![2])
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn level(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_vacuum(&self) -> bool {
        self.0.is_empty()
    }

    /// The first (largest) part and the remaining word.
    pub fn split_first(&self) -> Option<(u32, PartitionWord)> {
        self.0
            .split_first()
            .map(|(&k, rest)| (k, PartitionWord(rest.to_vec())))
    }

    fn prepend(&self, k: u32) -> PartitionWord {
        debug_assert!(self.0.first().is_none_or(|&f| k >= f));
        let mut v = Vec::with_capacity(self.0.len() + 1);
        v.push(k);
        v.extend_from_slice(&self.0);
        PartitionWord(v)
    }
}

impl TryFrom<Vec<u32>> for PartitionWord {
    type Error = Error;
    fn try_from(v: Vec<u32>) -> Result<Self> {
        PartitionWord::new(v)
    }
}

impl From<PartitionWord> for Vec<u32> {
    fn from(w: PartitionWord) -> Vec<u32> {
        w.0
    }
}

impl fmt::Display for PartitionWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for p in &self.0 {
            write!(f, "L_{{-{p}}}")?;
        }
        write!(f, "1")
    }
}

/// Partitions of `n` into parts `≥ 2`, in ascending word order.
pub fn vacuum_basis(n: u32) -> Vec<PartitionWord> {
    fn rec(rem: u32, max: u32, prefix: &mut Vec<u32>, out: &mut Vec<PartitionWord>) {
        if rem == 0 {
            out.push(PartitionWord(prefix.clone()));
            return;
        }
        for p in 2..=max.min(rem) {
            prefix.push(p);
            rec(rem - p, p, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out.sort();
    out
}

/// A combination of vacuum words of a single level.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VermaVector {
    level: i64,
    terms: BTreeMap<PartitionWord, RatFunc>,
}

impl VermaVector {
    pub fn zero(level: i64) -> Self {
        VermaVector {
            level,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_word(w: PartitionWord) -> Self {
        let level = w.level() as i64;
        let mut terms = BTreeMap::new();
        terms.insert(w, RatFunc::one());
        VermaVector { level, terms }
    }

    /// Builds from `(word, coefficient)` pairs; all words must have `level`.
    pub fn from_terms<I>(level: i64, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (PartitionWord, RatFunc)>,
    {
        let mut v = VermaVector::zero(level);
        for (w, c) in terms {
            if w.level() as i64 != level {
                return Err(Error::InvalidArgument(format!(
                    "word {w} does not lie at level {level}"
                )));
            }
            v.add_term(w, c);
        }
        Ok(v)
    }

    fn add_term(&mut self, w: PartitionWord, c: RatFunc) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(w) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let s = e.get() + &c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn level(&self) -> i64 {
        self.level
    }

    pub fn terms(&self) -> &BTreeMap<PartitionWord, RatFunc> {
        &self.terms
    }

    pub fn coeff(&self, w: &PartitionWord) -> RatFunc {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &VermaVector) -> VermaVector {
        assert!(
            self.is_zero() || other.is_zero() || self.level == other.level,
            "adding vectors of different levels"
        );
        let mut out = if self.is_zero() {
            VermaVector::zero(other.level)
        } else {
            self.clone()
        };
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &VermaVector) -> VermaVector {
        self.add(&other.scale(&RatFunc::from_int(-1)))
    }

    pub fn scale(&self, c: &RatFunc) -> VermaVector {
        if c.is_zero() {
            return VermaVector::zero(self.level);
        }
        VermaVector {
            level: self.level,
            terms: self.terms.iter().map(|(w, x)| (w.clone(), x * c)).collect(),
        }
    }
}

impl fmt::Display for VermaVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(w, c)| format!("({c})*{w}"))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Words with polynomial coefficients in C; the internal currency.
pub(crate) type PolyVec = BTreeMap<PartitionWord, MultiPoly>;

fn add_into(acc: &mut PolyVec, w: &PartitionWord, c: &MultiPoly) {
    if c.is_zero() {
        return;
    }
    use std::collections::btree_map::Entry;
    match acc.entry(w.clone()) {
        Entry::Vacant(e) => {
            e.insert(c.clone());
        }
        Entry::Occupied(mut e) => {
            let s = e.get() + c;
            if s.is_zero() {
                e.remove();
            } else {
                *e.get_mut() = s;
            }
        }
    }
}

/// `(m³ − m) C / 12`.
pub(crate) fn central_term(m: i64) -> MultiPoly {
    MultiPoly::var(CHARGE).scale(&BigRational::new(
        BigInt::from(m * m * m - m),
        BigInt::from(12),
    ))
}

/// Shared memo tables for the vacuum module. Entries are written once and
/// only read afterwards.
#[derive(Default)]
struct VacuumCache {
    modes: RwLock<HashMap<(i64, PartitionWord), Arc<PolyVec>>>,
    pairs: RwLock<HashMap<(PartitionWord, PartitionWord), MultiPoly>>,
    grams: RwLock<BTreeMap<u32, Arc<GramMatrix>>>,
}

fn cache() -> &'static VacuumCache {
    static CACHE: OnceLock<VacuumCache> = OnceLock::new();
    CACHE.get_or_init(VacuumCache::default)
}

/// `L_m` applied to a single vacuum word, normal ordered.
pub(crate) fn apply_mode_word_poly(m: i64, w: &PartitionWord) -> Arc<PolyVec> {
    let key = (m, w.clone());
    if let Some(v) = cache().modes.read().unwrap().get(&key) {
        return v.clone();
    }
    let v = Arc::new(compute_mode(m, w));
    cache().modes.write().unwrap().entry(key).or_insert(v).clone()
}

fn compute_mode(m: i64, w: &PartitionWord) -> PolyVec {
    let mut out = PolyVec::new();
    let Some((k1, rest)) = w.split_first() else {
        if m <= -2 {
            out.insert(PartitionWord(vec![(-m) as u32]), MultiPoly::one());
        }
        return out;
    };
    let k1i = k1 as i64;
    if m <= -2 && -m >= k1i {
        out.insert(w.prepend((-m) as u32), MultiPoly::one());
        return out;
    }
    // L_m L_{-k1} X = L_{-k1} L_m X + (m + k1) L_{m-k1} X + δ_{m,k1} (m³-m)C/12 X
    for (u, c) in apply_mode_word_poly(m, &rest).iter() {
        for (u2, c2) in apply_mode_word_poly(-k1i, u).iter() {
            add_into(&mut out, u2, &(c * c2));
        }
    }
    let f = m + k1i;
    if f != 0 {
        let fc = MultiPoly::from_int(f);
        for (u, c) in apply_mode_word_poly(m - k1i, &rest).iter() {
            add_into(&mut out, u, &(&fc * c));
        }
    }
    if m == k1i {
        add_into(&mut out, &rest, &central_term(m));
    }
    out
}

/// `L_m` applied to a vacuum word.
pub fn apply_mode_word(m: i64, w: &PartitionWord) -> VermaVector {
    let v = apply_mode_word_poly(m, w);
    let mut out = VermaVector::zero(w.level() as i64 - m);
    for (u, c) in v.iter() {
        out.add_term(u.clone(), RatFunc::from_poly(c.clone()));
    }
    out
}

/// `L_m v`, re-expressed in the normal-ordered basis.
pub fn apply_mode(m: i64, v: &VermaVector) -> VermaVector {
    let mut out = VermaVector::zero(v.level - m);
    for (w, c) in &v.terms {
        for (u, x) in apply_mode_word_poly(m, w).iter() {
            out.add_term(u.clone(), c * &RatFunc::from_poly(x.clone()));
        }
    }
    out
}

/// The invariant pairing `⟨u, v⟩` with `⟨𝟙, 𝟙⟩ = 1`, a polynomial in C.
pub fn pairing(u: &PartitionWord, v: &PartitionWord) -> MultiPoly {
    if u.level() != v.level() {
        return MultiPoly::zero();
    }
    if u.is_vacuum() {
        return MultiPoly::one();
    }
    let key = if u <= v {
        (u.clone(), v.clone())
    } else {
        (v.clone(), u.clone())
    };
    if let Some(p) = cache().pairs.read().unwrap().get(&key) {
        return p.clone();
    }
    // ⟨L_{-k} u', v⟩ = ⟨u', L_k v⟩, peeling from the word with more parts
    // keeps the recursion shallow.
    let (a, b) = if u.parts().len() <= v.parts().len() {
        (v, u)
    } else {
        (u, v)
    };
    let (k, rest) = a.split_first().expect("non-vacuum word");
    let mut acc = MultiPoly::zero();
    for (w, c) in apply_mode_word_poly(k as i64, b).iter() {
        acc = &acc + &(c * &pairing(&rest, w));
    }
    cache()
        .pairs
        .write()
        .unwrap()
        .entry(key)
        .or_insert(acc)
        .clone()
}

/// Pairing of vectors, bilinear over the coefficient field.
pub fn pairing_vectors(u: &VermaVector, v: &VermaVector) -> RatFunc {
    let mut acc = RatFunc::zero();
    for (a, x) in &u.terms {
        for (b, y) in &v.terms {
            let p = pairing(a, b);
            if !p.is_zero() {
                acc = &acc + &(&(x * y) * &RatFunc::from_poly(p));
            }
        }
    }
    acc
}

/// The level-`n` Gram matrix with its determinant and factorization.
#[derive(Clone, Debug)]
pub struct GramMatrix {
    pub level: u32,
    pub basis: Vec<PartitionWord>,
    pub entries: PolyMatrix,
    pub det: MultiPoly,
    pub factored: Factorization,
}

impl GramMatrix {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn export(&self) -> GramExport {
        GramExport {
            level: self.level,
            basis: self.basis.iter().map(|w| w.parts().to_vec()).collect(),
            entries: self.entries.to_rows(),
            det: self.det.clone(),
            factors: self
                .factored
                .factors
                .iter()
                .map(|f| FactorExport {
                    poly: f.poly.clone(),
                    mult: f.mult,
                })
                .collect(),
            remainder: self.factored.remainder.clone(),
            constant: self.factored.constant.clone(),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct FactorExport {
    pub poly: MultiPoly,
    pub mult: u32,
}

/// JSON shape of a Gram matrix.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct GramExport {
    pub level: u32,
    pub basis: Vec<Vec<u32>>,
    pub entries: Vec<Vec<MultiPoly>>,
    pub det: MultiPoly,
    pub factors: Vec<FactorExport>,
    pub remainder: MultiPoly,
    #[serde(with = "serde_rational")]
    pub constant: BigRational,
}

/// The Gram matrix at level `n`; cached per level.
pub fn gram(n: u32) -> Arc<GramMatrix> {
    if let Some(g) = cache().grams.read().unwrap().get(&n) {
        return g.clone();
    }
    let basis = vacuum_basis(n);
    let k = basis.len();
    let cells: Vec<(usize, usize)> = (0..k).flat_map(|i| (i..k).map(move |j| (i, j))).collect();
    let values: HashMap<(usize, usize), MultiPoly> = cells
        .par_iter()
        .map(|&(i, j)| ((i, j), pairing(&basis[i], &basis[j])))
        .collect();
    let entries = PolyMatrix::from_fn(k, k, |i, j| {
        values[&(i.min(j), i.max(j))].clone()
    });
    let det = determinant(&entries);
    let factored = factor_rational_roots(&det);
    let g = Arc::new(GramMatrix {
        level: n,
        basis,
        entries,
        det,
        factored,
    });
    cache().grams.write().unwrap().entry(n).or_insert(g).clone()
}

/// Distinct values of C at which the level-`n` Kac determinant vanishes.
pub fn singular_charges(n: u32) -> Result<Vec<BigRational>> {
    let g = gram(n);
    if !g.factored.is_complete() {
        return Err(Error::IncompleteFactorization {
            level: n as usize,
            remainder: g.factored.remainder.to_string(),
        });
    }
    Ok(g.factored.roots())
}

/// `dim V⁽ⁿ⁾(C, 0)` without building the basis.
pub fn level_dimension(n: u32) -> usize {
    // Partitions into parts ≥ 2 by the usual coin-change recurrence.
    let n = n as usize;
    let mut ways = vec![0usize; n + 1];
    ways[0] = 1;
    for part in 2..=n {
        for s in part..=n {
            ways[s] += ways[s - part];
        }
    }
    ways[n]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::{int, rat};

    fn w(p: &[u32]) -> PartitionWord {
        PartitionWord::new(p.to_vec()).unwrap()
    }

    fn c() -> MultiPoly {
        MultiPoly::var(CHARGE)
    }

    #[test]
    fn bases_and_dimensions() {
        assert_eq!(vacuum_basis(0), vec![PartitionWord::vacuum()]);
        assert_eq!(vacuum_basis(4), vec![w(&[2, 2]), w(&[4])]);
        assert_eq!(
            vacuum_basis(6),
            vec![w(&[2, 2, 2]), w(&[3, 3]), w(&[4, 2]), w(&[6])]
        );
        let dims: Vec<usize> = (0..=12).map(|n| vacuum_basis(n).len()).collect();
        assert_eq!(dims, vec![1, 0, 1, 1, 2, 2, 4, 4, 7, 8, 12, 14, 21]);
        for n in 0..=12 {
            assert_eq!(level_dimension(n), dims[n as usize]);
        }
    }

    #[test]
    fn rejects_malformed_words() {
        assert!(PartitionWord::new(vec![1]).is_err());
        assert!(PartitionWord::new(vec![2, 3]).is_err());
        assert_eq!(PartitionWord::from_unsorted(vec![2, 3]).unwrap(), w(&[3, 2]));
    }

    #[test]
    fn mode_actions() {
        let v = apply_mode_word(2, &w(&[2]));
        assert_eq!(v.coeff(&PartitionWord::vacuum()), RatFunc::from_poly(c().scale(&rat(1, 2))));
        assert!(apply_mode_word(1, &w(&[2])).is_zero());
        let v = apply_mode_word(4, &w(&[2, 2]));
        assert_eq!(v.coeff(&PartitionWord::vacuum()), RatFunc::from_poly(c().scale(&int(3))));
        assert!(apply_mode_word(-1, &PartitionWord::vacuum()).is_zero());
        assert_eq!(apply_mode_word(-3, &w(&[2])), VermaVector::from_word(w(&[3, 2])));
    }

    #[test]
    fn level_four_gram() {
        let g = gram(4);
        let expect = [
            [&c() * &(&MultiPoly::from_int(4) + &c().scale(&rat(1, 2))), c().scale(&int(3))],
            [c().scale(&int(3)), c().scale(&int(5))],
        ];
        for i in 0..2 {
            for j in 0..2 {
                assert_eq!(g.entries.get(i, j), &expect[i][j]);
            }
        }
        assert_eq!(singular_charges(4).unwrap(), vec![rat(-22, 5), int(0)]);
        assert_eq!(singular_charges(2).unwrap(), vec![int(0)]);
    }
}
