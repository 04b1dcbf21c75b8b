//! Exact arithmetic over binary fields GF(2^k), unit-circle subgroups of
//! their quadratic extensions, and the verification machinery for a family
//! of permutation trinomials built from Niho-type exponents.
//!
//! Everything is deterministic and exact: elements are `u64` bit vectors,
//! multiplication is table-driven or shift-reduce (the two must agree
//! bit-for-bit), and every higher-level verdict (permutation or not,
//! identity holds or not) reduces to finite arithmetic that the test suite
//! replays against independent oracles.

pub mod arith;
pub mod circle;
pub mod error;
pub mod f2poly;
pub mod field;
pub mod lemmas;
pub mod niho;
pub mod perm;
pub mod poly;

pub use error::{Error, Result};
pub use f2poly::is_irreducible;
pub use field::{make_field, Field, FieldElement};
