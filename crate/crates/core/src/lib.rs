//! Exact combinatorics of the geometric Satake correspondence.

pub mod affine_galleries;
pub mod cli;
pub mod deodhar;
pub mod error;
pub mod hecke;
pub mod mvcells;
pub mod oracle;
pub mod poly;
pub mod rootdata;
pub mod vinberg;

pub use error::{Result, SatakeError};
pub use poly::{LaurentHalfPoly, Rat, ZPoly};
pub use rootdata::RootDatum;
