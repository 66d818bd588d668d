//! Exact projectively equivariant symbol calculus for differential operators
//! mapping p-forms to functions on ℝⁿ.
//!
//! Everything is computed over exact rationals with polynomial coefficients:
//! the Koszul complex on symbols, the geometric and operator Lie derivatives,
//! the two Casimir operators of the projective algebra, the unique
//! `sl(n+1)`-equivariant quantization, and a brute-force classifier of
//! invariant maps.

pub mod action;
pub mod casimir;
pub mod error;
pub mod field;
pub mod koszul;
pub mod linalg;
pub mod lie;
pub mod midx;
pub mod operator;
pub mod par;
pub mod poly;
pub mod quantization;
pub mod scalar;
pub mod search;
pub mod serial;
pub mod symbol;
pub mod verify;
pub mod word;

pub use error::{Error, Result};
pub use field::VectorField;
pub use midx::MIdx;
pub use operator::{DiffOp, PForm};
pub use poly::Poly;
pub use scalar::Rat;
pub use symbol::{SymKey, Symbol};
pub use word::Word;
