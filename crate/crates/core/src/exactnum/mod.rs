//! Exact number types: rationals, Gaussian rationals, valuations, and
//! residue arithmetic modulo odd prime powers.

mod gaussian;
mod padic;
mod rational;

pub use gaussian::GaussianRational;
pub(crate) use padic::residue_u64;
pub use padic::{congruent, is_prime, residue, PadicContext, ResidueClass};
pub use rational::{
    format_rational, make_rational, padic_valuation, parse_rational, Rational, Valuation,
};
