//! Exact arithmetic in the endomorphism ring `End(Z_p x Z_{p^m})`.
//!
//! Every endomorphism of the abelian group `Z_p x Z_{p^m}` is represented by a
//! 2x2 matrix
//!
//! ```text
//! [ a            b ]      a, b, c in Z_p
//! [ p^(m-1) c    d ]      d in Z_{p^m}
//! ```
//!
//! and composition of endomorphisms becomes a (noncommutative) matrix product.
//! The crate provides:
//!
//! * [`digits`]: `Z_{p^m}` arithmetic carried out on base-`p` digit vectors
//!   with explicit carry chains.
//! * [`matrix`]: the matrix ring itself, invertibility, two independent
//!   inversion routes and the quadratic annihilating polynomial.
//! * [`poly`]: integer polynomials and their evaluation at ring elements.
//! * [`action`]: matrices acting on points of `Z_p x Z_{p^m}`.
//! * [`oracle`]: brute-force reference arithmetic on plain integers used to
//!   cross-check everything above.
//!
//! ```
//! use endoring_core::{EndoMatrix, RingParams};
//!
//! let params = RingParams::new(5, 3).unwrap();
//! let a = EndoMatrix::from_entries(params, 2, 3, 75, 67).unwrap();
//! let inv = a.inverse_via_minpoly().unwrap();
//! assert_eq!(inv, EndoMatrix::from_entries(params, 3, 3, 75, 103).unwrap());
//! assert_eq!(a.mul(&inv).unwrap(), EndoMatrix::identity(params));
//! ```
#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod action;
pub mod digits;
mod error;
pub mod matrix;
pub mod oracle;
pub mod poly;

pub use action::ModulePoint;
pub use digits::{CarryState, Digits, RingParams};
pub use error::{Error, InvertibilityFailure, Result};
pub use matrix::{census, Census, EndoMatrix};
pub use poly::{AnnPoly, IntPoly};
