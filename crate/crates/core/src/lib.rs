//! Pólya groups of real quadratic and totally real bi-quadratic number
//! fields, computed from fundamental units and the ramification data of the
//! three quadratic subfields, together with the tools used to check explicit
//! families of bi-quadratic Pólya fields and the arithmetic of the compositum
//! of Shanks' simplest cubic and Lehmer's quintic fields.

pub mod arith;
pub mod cli;
pub mod compositum;
mod decimal;
pub mod error;
pub mod families;
pub mod polya;
pub mod quadratic;
pub mod squareclass;

pub use error::{Error, Result};
