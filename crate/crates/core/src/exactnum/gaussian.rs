//! Gaussian rationals `a + b*i` with exact components.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_traits::{One, Zero};

use crate::error::Error;
use crate::exactnum::rational::{format_rational, parse_rational, Rational};

/// An element of `Q(i)`: a pair of exact rationals `re + im*i`.
///
/// Arithmetic is componentwise-exact; there is no normalization beyond what
/// [`Rational`] itself performs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaussianRational {
    pub re: Rational,
    pub im: Rational,
}

impl GaussianRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        GaussianRational { re, im }
    }

    pub fn from_rational(re: Rational) -> Self {
        GaussianRational { re, im: Rational::zero() }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(Rational::from_integer(n.into()))
    }

    pub fn zero() -> Self {
        Self::from_int(0)
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        GaussianRational { re: Rational::zero(), im: Rational::one() }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    /// True when the imaginary part is exactly zero.
    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        GaussianRational { re: self.re.clone(), im: -self.im.clone() }
    }

    /// `re^2 + im^2`, the norm over `Q`.
    pub fn norm_sqr(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    /// Componentwise scaling by a rational.
    pub fn scale(&self, c: &Rational) -> Self {
        GaussianRational { re: &self.re * c, im: &self.im * c }
    }
}

impl From<Rational> for GaussianRational {
    fn from(re: Rational) -> Self {
        Self::from_rational(re)
    }
}

impl From<i64> for GaussianRational {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl Add for &GaussianRational {
    type Output = GaussianRational;
    fn add(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational { re: &self.re + &rhs.re, im: &self.im + &rhs.im }
    }
}

impl Sub for &GaussianRational {
    type Output = GaussianRational;
    fn sub(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational { re: &self.re - &rhs.re, im: &self.im - &rhs.im }
    }
}

impl Mul for &GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
}

impl Div for &GaussianRational {
    type Output = GaussianRational;

    /// Exact division. Panics on a zero divisor; callers that can hit zero
    /// (series denominators) must check first.
    fn div(self, rhs: &GaussianRational) -> GaussianRational {
        let n = rhs.norm_sqr();
        assert!(!n.is_zero(), "division of Gaussian rational by zero");
        let c = rhs.conj();
        let prod = self * &c;
        GaussianRational { re: prod.re / &n, im: prod.im / &n }
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational { re: -self.re.clone(), im: -self.im.clone() }
    }
}

macro_rules! forward_owned_binop {
    ($($trait:ident::$method:ident),*) => {$(
        impl $trait for GaussianRational {
            type Output = GaussianRational;
            fn $method(self, rhs: GaussianRational) -> GaussianRational {
                $trait::$method(&self, &rhs)
            }
        }
    )*};
}
forward_owned_binop!(Add::add, Sub::sub, Mul::mul, Div::div);

impl Neg for GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        -&self
    }
}

impl fmt::Display for GaussianRational {
    /// `a`, `b*i`, `a+b*i`, or `a-b*i`, with each component in reduced
    /// rational form.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use num_traits::Signed;
        if self.im.is_zero() {
            return write!(f, "{}", format_rational(&self.re));
        }
        if self.re.is_zero() {
            return write!(f, "{}*i", format_rational(&self.im));
        }
        if self.im.is_negative() {
            write!(f, "{}-{}*i", format_rational(&self.re), format_rational(&(-self.im.clone())))
        } else {
            write!(f, "{}+{}*i", format_rational(&self.re), format_rational(&self.im))
        }
    }
}

impl FromStr for GaussianRational {
    type Err = Error;

    /// Parses the formats produced by `Display`: `a`, `b*i`, `a+b*i`,
    /// `a-b*i`, where each component is `[-]digits[/digits]`.
    fn from_str(s: &str) -> Result<Self, Error> {
        let s = s.trim();
        let bad = || Error::InvalidInput(format!("cannot parse {s:?} as a Gaussian rational"));
        match s.strip_suffix("*i") {
            None => Ok(GaussianRational::from_rational(parse_rational(s)?)),
            Some(body) => {
                // Components carry signs only in leading position, so the
                // first interior +/- splits real from imaginary.
                let split = body
                    .char_indices()
                    .skip(1)
                    .find(|&(_, c)| c == '+' || c == '-')
                    .map(|(idx, _)| idx);
                match split {
                    None => Ok(GaussianRational::new(Rational::zero(), parse_rational(body)?)),
                    Some(idx) => {
                        let re = parse_rational(&body[..idx]).map_err(|_| bad())?;
                        let sign = if body[idx..].starts_with('-') { -1 } else { 1 };
                        let im = parse_rational(&body[idx + 1..]).map_err(|_| bad())?;
                        let im = if sign < 0 { -im } else { im };
                        Ok(GaussianRational::new(re, im))
                    }
                }
            }
        }
    }
}
