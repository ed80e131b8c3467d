//! Exact computations over short artinian algebras.
//!
//! The crate builds graded and local algebras over prime fields, computes
//! minimal free resolutions and Betti tables, searches for exact zero
//! divisors and Conca generators, constructs Gorenstein algebras from cubic
//! forms, and checks Poincaré-series identities to finite caps.

pub mod error;
pub mod exactla;
pub mod invsys;
pub mod laws;
pub mod par;
pub mod polyspace;
pub mod quotient;
pub mod resolve;
pub mod series;
pub mod survey;
pub mod zerodiv;

pub use error::{Error, Result};
