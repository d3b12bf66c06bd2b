//! Exact arithmetic: rationals, polynomials, rational functions, matrices,
//! root factoring and Laurent series.

pub mod factor;
mod gcd;
pub mod intpoly;
pub mod laurent;
pub mod linear;
pub mod matrix;
pub mod poly;
pub mod ratfunc;
pub mod rational;

pub use factor::{factor_rational_roots, Factorization, LinearFactor};
pub use intpoly::IntPoly;
pub use laurent::{laurent_expand, LaurentSeries};
pub use linear::{row_reduce, EchelonForm};
pub use matrix::{determinant, linear_solve, ExactRing, Matrix, PolyMatrix, RatMatrix};
pub use poly::{Monomial, MultiPoly};
pub use ratfunc::RatFunc;
pub use rational::{int, parse_rational, rat, BigRational};

/// `a op b` on polynomials.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PolyOp {
    Add,
    Sub,
    Mul,
}

pub fn poly_arith(a: &MultiPoly, b: &MultiPoly, op: PolyOp) -> MultiPoly {
    match op {
        PolyOp::Add => a + b,
        PolyOp::Sub => a - b,
        PolyOp::Mul => a * b,
    }
}
