//! Arbitrary-precision rationals and p-adic valuations.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{Signed, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exactnum::padic::is_prime;

/// Exact rational number. All arithmetic in this crate reduces to `Rational`
/// operations; nothing is ever rounded.
pub type Rational = Ratio<BigInt>;

/// Builds the reduced rational `num/den`.
///
/// The result is always in lowest terms with a positive denominator, so
/// `make_rational(2, 4)` and `make_rational(-3, -6)` both yield `1/2`.
pub fn make_rational(num: i64, den: i64) -> Result<Rational> {
    if den == 0 {
        return Err(Error::InvalidInput(format!("zero denominator in {num}/0")));
    }
    Ok(Ratio::new(BigInt::from(num), BigInt::from(den)))
}

/// Parses `[-]digits` or `[-]digits/digits` into a reduced rational.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::InvalidInput(format!("cannot parse {s:?} as a rational"));
    let (num_str, den_str) = match s.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (s, None),
    };
    let num: BigInt = num_str.trim().parse().map_err(|_| bad())?;
    let den: BigInt = match den_str {
        Some(d) => d.trim().parse().map_err(|_| bad())?,
        None => BigInt::from(1),
    };
    if den.is_zero() {
        return Err(Error::InvalidInput(format!("zero denominator in {s:?}")));
    }
    Ok(Ratio::new(num, den))
}

/// Formats a rational as `n` or `n/d` (reduced, denominator positive).
pub fn format_rational(x: &Rational) -> String {
    x.to_string()
}

/// A p-adic valuation: either a finite integer or `+infinity` (the valuation
/// of zero).
///
/// The ordering places `Infinite` above every finite value, matching the
/// usual convention `nu_p(0) = +inf`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Valuation {
    Finite(i64),
    Infinite,
}

impl Valuation {
    /// True when the valuation is at least `bound`.
    pub fn is_at_least(self, bound: i64) -> bool {
        match self {
            Valuation::Finite(v) => v >= bound,
            Valuation::Infinite => true,
        }
    }

    /// The finite value, if any.
    pub fn finite(self) -> Option<i64> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinite => None,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinite => write!(f, "inf"),
        }
    }
}

impl Serialize for Valuation {
    /// Finite valuations serialize as integers, the infinite one as the
    /// string `"inf"`.
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Valuation::Finite(v) => serializer.serialize_i64(*v),
            Valuation::Infinite => serializer.serialize_str("inf"),
        }
    }
}

/// The p-adic valuation `nu_p(x)`: the exponent of `p` in `x`, negative when
/// `p` divides the denominator, `Infinite` for `x = 0`.
pub fn padic_valuation(x: &Rational, p: u64) -> Valuation {
    debug_assert!(is_prime(p), "padic_valuation called with composite p = {p}");
    if x.is_zero() {
        return Valuation::Infinite;
    }
    let count = |n: &BigInt| -> i64 {
        let p = BigInt::from(p);
        let mut n = n.abs();
        let mut v = 0i64;
        loop {
            let (q, r) = n.div_rem(&p);
            if r.is_zero() {
                v += 1;
                n = q;
            } else {
                return v;
            }
        }
    };
    // The numerator and denominator are coprime, so at most one of the two
    // counts is nonzero.
    let v_num = count(x.numer());
    if v_num > 0 {
        return Valuation::Finite(v_num);
    }
    Valuation::Finite(-count(x.denom()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        make_rational(n, d).unwrap()
    }

    #[test]
    fn make_rational_reduces_and_normalizes_sign() {
        assert_eq!(q(2, 4), q(1, 2));
        assert_eq!(q(0, 5), q(0, 1));
        assert_eq!(q(-3, -6), q(1, 2));
        assert_eq!(q(3, -6), q(-1, 2));
        assert!(make_rational(1, 0).is_err());
    }

    #[test]
    fn parse_and_format_round_trip() {
        for s in ["0", "7", "-3/10", "1/2", "123456789123456789/2"] {
            let x = parse_rational(s).unwrap();
            assert_eq!(format_rational(&x), s);
        }
        assert_eq!(parse_rational("4/6").unwrap(), q(2, 3));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("a/b").is_err());
        assert!(parse_rational("1/2/3").is_err());
        assert!(parse_rational("").is_err());
    }

    #[test]
    fn valuation_examples() {
        assert_eq!(padic_valuation(&q(50, 1), 5), Valuation::Finite(2));
        assert_eq!(padic_valuation(&q(3, 7), 7), Valuation::Finite(-1));
        assert_eq!(padic_valuation(&q(0, 1), 11), Valuation::Infinite);
        assert_eq!(padic_valuation(&q(-75, 2), 5), Valuation::Finite(2));
        assert_eq!(padic_valuation(&q(1, 1), 3), Valuation::Finite(0));
    }

    #[test]
    fn valuation_ordering() {
        assert!(Valuation::Infinite > Valuation::Finite(i64::MAX));
        assert!(Valuation::Finite(2) > Valuation::Finite(-3));
        assert!(Valuation::Infinite.is_at_least(100));
        assert!(Valuation::Finite(4).is_at_least(4));
        assert!(!Valuation::Finite(3).is_at_least(4));
        assert_eq!(Valuation::Finite(5).finite(), Some(5));
        assert_eq!(Valuation::Infinite.finite(), None);
    }

    #[test]
    fn valuation_display() {
        assert_eq!(Valuation::Finite(-2).to_string(), "-2");
        assert_eq!(Valuation::Infinite.to_string(), "inf");
    }
}
