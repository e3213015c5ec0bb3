//! Exact verification toolkit for p-adic congruences of truncated
//! hypergeometric series.
//!
//! Everything here is computed over exact rationals (or Gaussian rationals);
//! there is no floating point anywhere. The crate is organized bottom-up:
//!
//! * [`exactnum`] - arbitrary-precision rationals, Gaussian rationals,
//!   p-adic valuations, and residue arithmetic modulo prime powers.
//! * [`pgamma`] - the Morita p-adic Gamma function over `Z_p`, backed by
//!   cached product tables, plus checks for its functional equations.
//! * [`hyper`] - Pochhammer symbols, truncated hypergeometric evaluation
//!   with exact pole detection, and the weighted series families under test.
//! * [`identities`] - randomized checkers for the classical transformation
//!   identities the congruence proofs rest on.
//! * [`verifier`] - the statement catalogue: admissible `(p, r)` enumeration,
//!   congruence verification at the stated modulus, and valuation probing at
//!   higher precision.

pub mod error;
pub mod exactnum;
pub mod hyper;
pub mod identities;
pub mod pgamma;
pub mod verifier;

pub use error::{Error, Result};
