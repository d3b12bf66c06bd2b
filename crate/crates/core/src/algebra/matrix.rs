//! Dense matrices over exact rings, with Bareiss elimination.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use super::intpoly::IntPoly;
use super::poly::MultiPoly;
use super::ratfunc::RatFunc;
use super::rational::BigRational;
use crate::error::{Error, Result};

/// An integral domain in which exact division is computable.
pub trait ExactRing: Clone + PartialEq + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    /// `self / rhs`, where the caller knows the quotient exists.
    fn div_exact(&self, rhs: &Self) -> Self;
}

impl ExactRing for IntPoly {
    fn zero() -> Self {
        IntPoly::zero()
    }
    fn one() -> Self {
        IntPoly::one()
    }
    fn is_zero(&self) -> bool {
        IntPoly::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn div_exact(&self, rhs: &Self) -> Self {
        self.exact_div(rhs).expect("inexact division in ℤ[x]")
    }
}

impl ExactRing for MultiPoly {
    fn zero() -> Self {
        MultiPoly::zero()
    }
    fn one() -> Self {
        MultiPoly::one()
    }
    fn is_zero(&self) -> bool {
        MultiPoly::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn div_exact(&self, rhs: &Self) -> Self {
        self.exact_div(rhs).expect("inexact polynomial division")
    }
}

impl ExactRing for RatFunc {
    fn zero() -> Self {
        RatFunc::zero()
    }
    fn one() -> Self {
        RatFunc::one()
    }
    fn is_zero(&self) -> bool {
        RatFunc::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn div_exact(&self, rhs: &Self) -> Self {
        self / rhs
    }
}

impl ExactRing for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn div_exact(&self, rhs: &Self) -> Self {
        self / rhs
    }
}

impl ExactRing for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn div_exact(&self, rhs: &Self) -> Self {
        debug_assert!(Zero::is_zero(&(self % rhs)));
        self / rhs
    }
}

/// Row-major rectangular matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix<R> {
    rows: usize,
    cols: usize,
    data: Vec<R>,
}

pub type PolyMatrix = Matrix<MultiPoly>;
pub type RatMatrix = Matrix<RatFunc>;

impl<R: Clone> Matrix<R> {
    pub fn from_rows(rows: Vec<Vec<R>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix");
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> R) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &R {
        &self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[R] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<R>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn map<S: Clone>(&self, f: impl FnMut(&R) -> S) -> Matrix<S> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }
}

impl<R: ExactRing> Matrix<R> {
    pub fn identity(n: usize) -> Self {
        Matrix::from_fn(n, n, |i, j| if i == j { R::one() } else { R::zero() })
    }

    pub fn mul_vec(&self, v: &[R]) -> Vec<R> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(R::zero(), |acc, (a, x)| acc.add(&a.mul(x)))
            })
            .collect()
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }
}

impl<R: Serialize> Serialize for Matrix<R> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let mut seq = s.serialize_seq(Some(self.rows))?;
        for i in 0..self.rows {
            seq.serialize_element(&self.data[i * self.cols..(i + 1) * self.cols])?;
        }
        seq.end()
    }
}

/// Bareiss forward elimination in place on the leading `n` columns of
/// `a` (an `n x m` array, `m >= n`). Returns the final pivot, which is
/// `±det` of the leading block, and whether the row swaps were odd.
/// A zero return means the leading block is singular.
fn bareiss_forward<R: ExactRing>(a: &mut [Vec<R>], n: usize) -> (R, bool) {
    if n == 0 {
        return (R::one(), false);
    }
    let mut odd = false;
    let mut prev = R::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                return (R::zero(), odd);
            };
            a.swap(k, p);
            odd = !odd;
        }
        if k + 1 == n {
            break;
        }
        let (top, rest) = a.split_at_mut(k + 1);
        let pivot_row = &top[k];
        let pivot = &pivot_row[k];
        rest[..n - k - 1].par_iter_mut().for_each(|row| {
            let lead = row[k].clone();
            for j in k + 1..row.len() {
                let t = row[j].mul(pivot).sub(&lead.mul(&pivot_row[j]));
                row[j] = t.div_exact(&prev);
            }
            row[k] = R::zero();
        });
        prev = a[k][k].clone();
    }
    (a[n - 1][n - 1].clone(), odd)
}

/// Determinant by fraction-free elimination.
pub fn bareiss_determinant<R: ExactRing>(m: &Matrix<R>) -> R {
    assert!(m.is_square(), "determinant of a non-square matrix");
    let mut a = m.to_rows();
    let (d, odd) = bareiss_forward(&mut a, m.rows);
    if odd {
        d.neg()
    } else {
        d
    }
}

/// Fraction-free solve of `A X = D b` for every right-hand side column.
///
/// Returns `(D, X)` with `D = ±det A` and `X[k]` the ring-valued numerators
/// for column `k`, so the field solution is `X[k][i] / D`. `None` if `A` is
/// singular.
pub fn fraction_free_solve<R: ExactRing>(a: &Matrix<R>, rhs: &[Vec<R>]) -> Option<(R, Vec<Vec<R>>)> {
    assert!(a.is_square(), "solve with a non-square matrix");
    let n = a.rows;
    for b in rhs {
        assert_eq!(b.len(), n, "right-hand side length mismatch");
    }
    let mut aug: Vec<Vec<R>> = (0..n)
        .map(|i| {
            let mut row = a.row(i).to_vec();
            row.extend(rhs.iter().map(|b| b[i].clone()));
            row
        })
        .collect();
    let (d, _) = bareiss_forward(&mut aug, n);
    if d.is_zero() {
        return None;
    }
    let sols = (0..rhs.len())
        .into_par_iter()
        .map(|k| {
            let mut x = vec![R::zero(); n];
            for i in (0..n).rev() {
                let mut acc = d.mul(&aug[i][n + k]);
                for j in i + 1..n {
                    if !aug[i][j].is_zero() {
                        acc = acc.sub(&aug[i][j].mul(&x[j]));
                    }
                }
                x[i] = acc.div_exact(&aug[i][i]);
            }
            x
        })
        .collect();
    Some((d, sols))
}

/// Common variable of univariate polynomial entries, if there is one.
fn single_variable<'a>(entries: impl IntoIterator<Item = &'a MultiPoly>) -> Option<Option<String>> {
    let mut var: Option<String> = None;
    for p in entries {
        match p.vars() {
            [] => {}
            [v] => match &var {
                None => var = Some(v.clone()),
                Some(w) if w == v => {}
                Some(_) => return None,
            },
            _ => return None,
        }
    }
    Some(var)
}

/// Scales each row to integer polynomials in `var`; returns the matrix and
/// the per-row scale factors `L_i` (row_i(int) = L_i row_i(original)).
fn to_int_rows(rows: &[Vec<MultiPoly>], var: &str) -> (Vec<Vec<IntPoly>>, Vec<BigInt>) {
    let mut out = Vec::with_capacity(rows.len());
    let mut scales = Vec::with_capacity(rows.len());
    for row in rows {
        let den = row.iter().fold(<BigInt as One>::one(), |acc, p| {
            p.terms()
                .fold(acc, |acc, (_, c)| num_integer::Integer::lcm(&acc, c.denom()))
        });
        let scale = BigRational::from_integer(den.clone());
        let ints = row
            .iter()
            .map(|p| {
                let q = p.scale(&scale);
                let mut coeffs = vec![<BigInt as Zero>::zero(); q.degree_in(var) as usize + 1];
                for (k, c) in q.to_univariate(var).iter().enumerate() {
                    coeffs[k] = c.constant_value().unwrap_or_default().to_integer();
                }
                IntPoly::new(coeffs)
            })
            .collect();
        out.push(ints);
        scales.push(den);
    }
    (out, scales)
}

/// Exact determinant of a polynomial matrix.
pub fn determinant(m: &PolyMatrix) -> MultiPoly {
    assert!(m.is_square(), "determinant of a non-square matrix");
    match single_variable(m.data.iter()) {
        Some(var) => {
            let var = var.unwrap_or_else(|| "x".to_string());
            let (ints, scales) = to_int_rows(&m.to_rows(), &var);
            let d = bareiss_determinant(&Matrix::from_rows(ints));
            let total = scales.iter().fold(<BigInt as One>::one(), |a, s| a * s);
            d.to_multipoly(&var)
                .scale(&BigRational::new(<BigInt as One>::one(), total))
        }
        None => bareiss_determinant(m),
    }
}

/// Exact solution of `A x = b` over rational functions.
pub fn linear_solve(a: &RatMatrix, b: &[RatFunc]) -> Result<Vec<RatFunc>> {
    assert!(a.is_square(), "solve with a non-square matrix");
    assert_eq!(b.len(), a.rows, "right-hand side length mismatch");
    let n = a.rows;
    // Clear denominators row by row.
    let mut rows: Vec<Vec<MultiPoly>> = Vec::with_capacity(n);
    let mut rhs: Vec<MultiPoly> = Vec::with_capacity(n);
    for i in 0..n {
        let mut l = MultiPoly::one();
        for f in a.row(i).iter().chain(std::iter::once(&b[i])) {
            let g = l.gcd(f.den());
            l = &l * &f.den().exact_div(&g).expect("gcd divides");
        }
        let clear = |f: &RatFunc| {
            f.num() * &l.exact_div(f.den()).expect("lcm is a multiple")
        };
        rows.push(a.row(i).iter().map(clear).collect());
        rhs.push(clear(&b[i]));
    }
    let (d, x) = match single_variable(rows.iter().flatten().chain(&rhs)) {
        Some(var) => {
            let var = var.unwrap_or_else(|| "x".to_string());
            let mut all = rows.clone();
            for (row, r) in all.iter_mut().zip(&rhs) {
                row.push(r.clone());
            }
            let (ints, _) = to_int_rows(&all, &var);
            let mat = Matrix::from_fn(n, n, |i, j| ints[i][j].clone());
            let col: Vec<IntPoly> = ints.iter().map(|r| r[n].clone()).collect();
            let (d, x) = fraction_free_solve(&mat, &[col]).ok_or_else(|| Error::SingularMatrix {
                det: "0".into(),
            })?;
            (
                d.to_multipoly(&var),
                x[0].iter().map(|p| p.to_multipoly(&var)).collect::<Vec<_>>(),
            )
        }
        None => {
            let mat = Matrix::from_rows(rows);
            let (d, x) = fraction_free_solve(&mat, &[rhs]).ok_or_else(|| Error::SingularMatrix {
                det: "0".into(),
            })?;
            (d, x.into_iter().next().unwrap())
        }
    };
    Ok(x.into_iter().map(|xi| RatFunc::new(xi, d.clone())).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::{int, rat};

    fn c() -> MultiPoly {
        MultiPoly::var("C")
    }

    #[test]
    fn small_determinants() {
        let m = PolyMatrix::from_rows(vec![vec![c().scale(&rat(1, 2))]]);
        assert_eq!(determinant(&m), c().scale(&rat(1, 2)));
        let m = PolyMatrix::from_rows(vec![
            vec![c(), MultiPoly::zero()],
            vec![MultiPoly::zero(), MultiPoly::one()],
        ]);
        assert_eq!(determinant(&m), c());
        assert_eq!(determinant(&PolyMatrix::from_rows(vec![])), MultiPoly::one());
    }

    #[test]
    fn pivoting_handles_zero_diagonal() {
        let m = Matrix::from_rows(vec![
            vec![int(0), int(1)],
            vec![int(1), int(0)],
        ]);
        assert_eq!(bareiss_determinant(&m), int(-1));
    }

    #[test]
    fn solve_scalar_system() {
        let a = RatMatrix::from_rows(vec![vec![RatFunc::from_poly(c().scale(&rat(1, 2)))]]);
        let b = vec![-RatFunc::var("d")];
        let x = linear_solve(&a, &b).unwrap();
        let expected = &RatFunc::var("d").scale(&int(-2)) / &RatFunc::var("C");
        assert_eq!(x, vec![expected]);
    }

    #[test]
    fn singular_is_reported() {
        let a = RatMatrix::from_rows(vec![
            vec![RatFunc::var("C"), RatFunc::var("C")],
            vec![RatFunc::one(), RatFunc::one()],
        ]);
        assert!(matches!(
            linear_solve(&a, &[RatFunc::one(), RatFunc::one()]),
            Err(Error::SingularMatrix { .. })
        ));
    }
}
