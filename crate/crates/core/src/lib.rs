//! Exact computations in the vacuum Verma module of the Virasoro algebra:
//! Gram matrices and Kac determinants, quadratic Casimir vectors, the
//! two-point functions they constrain, and the numerology that falls out.

pub mod acceptance;
pub mod algebra;
pub mod casimir;
pub mod correlator;
pub mod error;
pub mod numerology;
pub mod properties;
pub mod verma;

pub use error::{Error, Result};
