//! Exact-arithmetic engine for almost hypercomplex pseudo-Hermitian
//! structures and a four-parameter family of four-dimensional Lie groups.
//!
//! Everything is computed over a [`Scalar`] ring: [`Rational`] for a fixed
//! parameter vector, [`Poly`] for the whole family at once.

pub mod analysis;
pub mod decompose;
pub mod audit;
pub mod error;
pub mod hypercomplex;
pub mod lie;
pub mod matrix;
pub mod reference;
pub mod report;
pub mod scalar;
pub mod tensor;
pub mod verify;

pub use error::{Error, Result};
pub use scalar::{Monomial, Poly, Rational, Scalar};
