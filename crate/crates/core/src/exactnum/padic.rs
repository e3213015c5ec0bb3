//! Residue arithmetic modulo odd prime powers.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exactnum::gaussian::GaussianRational;
use crate::exactnum::rational::{padic_valuation, Rational, Valuation};

/// Deterministic Miller-Rabin primality test, exact for all `u64`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n.is_multiple_of(p) {
            return false;
        }
    }
    // n is odd and > 37 here. Write n - 1 = d * 2^s.
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    let mul = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let pow = |mut base: u64, mut e: u64| {
        let mut acc = 1u64;
        base %= n;
        while e > 0 {
            if e & 1 == 1 {
                acc = mul(acc, base);
            }
            base = mul(base, base);
            e >>= 1;
        }
        acc
    };
    // This witness set is known to be exact below 2^64.
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// A modulus `p^n` for an odd prime `p >= 3` and precision `n >= 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PadicContext {
    p: u64,
    n: u32,
    modulus: BigUint,
}

impl PadicContext {
    pub fn new(p: u64, n: u32) -> Result<Self> {
        if p < 3 || !is_prime(p) {
            return Err(Error::InvalidInput(format!("p = {p} is not an odd prime")));
        }
        if n == 0 {
            return Err(Error::InvalidInput("precision n must be at least 1".into()));
        }
        Ok(PadicContext { p, n, modulus: BigUint::from(p).pow(n) })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn modulus(&self) -> &BigUint {
        &self.modulus
    }

    /// The same prime at a different precision.
    pub fn with_precision(&self, n: u32) -> Result<Self> {
        PadicContext::new(self.p, n)
    }
}

/// An element of `Z / p^n`, stored as its least nonnegative representative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidueClass {
    value: BigUint,
    ctx: PadicContext,
}

impl ResidueClass {
    /// Wraps `value`, reducing it into `[0, p^n)`.
    pub fn new(value: BigUint, ctx: PadicContext) -> Self {
        let value = value % &ctx.modulus;
        ResidueClass { value, ctx }
    }

    pub fn from_u64(value: u64, ctx: PadicContext) -> Self {
        Self::new(BigUint::from(value), ctx)
    }

    pub fn value(&self) -> &BigUint {
        &self.value
    }

    pub fn context(&self) -> &PadicContext {
        &self.ctx
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    fn check_ctx(&self, other: &ResidueClass) {
        assert_eq!(self.ctx, other.ctx, "residue arithmetic across different moduli");
    }

    pub fn add(&self, other: &ResidueClass) -> ResidueClass {
        self.check_ctx(other);
        ResidueClass::new(&self.value + &other.value, self.ctx.clone())
    }

    pub fn sub(&self, other: &ResidueClass) -> ResidueClass {
        self.check_ctx(other);
        let v = (&self.value + &self.ctx.modulus) - &other.value;
        ResidueClass::new(v, self.ctx.clone())
    }

    pub fn mul(&self, other: &ResidueClass) -> ResidueClass {
        self.check_ctx(other);
        ResidueClass::new(&self.value * &other.value, self.ctx.clone())
    }

    pub fn neg(&self) -> ResidueClass {
        if self.value.is_zero() {
            return self.clone();
        }
        ResidueClass { value: &self.ctx.modulus - &self.value, ctx: self.ctx.clone() }
    }

    pub fn pow(&self, e: u64) -> ResidueClass {
        let v = self.value.modpow(&BigUint::from(e), &self.ctx.modulus);
        ResidueClass { value: v, ctx: self.ctx.clone() }
    }

    /// The multiplicative inverse; fails when `p` divides the value.
    pub fn inv(&self) -> Result<ResidueClass> {
        let m = BigInt::from(self.ctx.modulus.clone());
        let v = BigInt::from(self.value.clone());
        let inv = mod_inverse(&v, &m).ok_or_else(|| {
            Error::InvalidInput(format!(
                "{} is not a unit modulo {}^{}",
                self.value, self.ctx.p, self.ctx.n
            ))
        })?;
        Ok(ResidueClass {
            value: inv.to_biguint().expect("reduced inverse is nonnegative"),
            ctx: self.ctx.clone(),
        })
    }

    /// `nu_p` of the representative, relative to this modulus. Zero reports
    /// `Infinite`, meaning only that the valuation is at least `n`.
    pub fn valuation(&self) -> Valuation {
        if self.value.is_zero() {
            return Valuation::Infinite;
        }
        let p = BigUint::from(self.ctx.p);
        let mut v = 0i64;
        let mut rest = self.value.clone();
        loop {
            let (q, r) = rest.div_rem(&p);
            if r.is_zero() {
                v += 1;
                rest = q;
            } else {
                return Valuation::Finite(v);
            }
        }
    }
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let g = a.extended_gcd(m);
    if !g.gcd.is_one() {
        return None;
    }
    Some(g.x.mod_floor(m))
}

/// The least nonnegative residue of a p-integral rational modulo `p^n`.
///
/// Fails with [`Error::NotPIntegral`] when `p` divides the denominator.
pub fn residue(x: &Rational, ctx: &PadicContext) -> Result<ResidueClass> {
    let m = BigInt::from(ctx.modulus.clone());
    let den = x.denom();
    if den.mod_floor(&BigInt::from(ctx.p)).is_zero() {
        return Err(Error::NotPIntegral { value: x.to_string(), p: ctx.p });
    }
    let den_inv = mod_inverse(den, &m).expect("denominator coprime to p^n");
    let num = x.numer().mod_floor(&m);
    let v = (num * den_inv).mod_floor(&m);
    Ok(ResidueClass::new(v.to_biguint().expect("mod_floor is nonnegative"), ctx.clone()))
}

/// Reduces a p-integral rational to a `u64` residue. Only valid when the
/// modulus fits in a `u64`, which the gamma table layer guarantees.
pub(crate) fn residue_u64(x: &Rational, ctx: &PadicContext) -> Result<u64> {
    let r = residue(x, ctx)?;
    r.value().to_u64().ok_or_else(|| {
        Error::Range(format!("residue does not fit in u64 at p^n = {}", ctx.modulus))
    })
}

/// Componentwise congruence of Gaussian rationals modulo `p^n`.
///
/// Requires `x - y` to be p-integral in both components; a `p` in a
/// denominator of the difference is a domain error, not a `false`.
pub fn congruent(x: &GaussianRational, y: &GaussianRational, ctx: &PadicContext) -> Result<bool> {
    let d = x - y;
    let n = i64::from(ctx.n);
    let mut ok = true;
    for part in [&d.re, &d.im] {
        match padic_valuation(part, ctx.p) {
            Valuation::Finite(v) if v < 0 => {
                return Err(Error::NotPIntegral { value: d.to_string(), p: ctx.p });
            }
            val => ok &= val.is_at_least(n),
        }
    }
    Ok(ok)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rational::make_rational;

    fn q(n: i64, d: i64) -> Rational {
        make_rational(n, d).unwrap()
    }

    #[test]
    fn primality_small_and_structured() {
        let primes: Vec<u64> = (0..60).filter(|&n| is_prime(n)).collect();
        assert_eq!(primes, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59]);
        assert!(is_prime(2_147_483_647)); // 2^31 - 1
        assert!(!is_prime(3_215_031_751)); // strong pseudoprime to bases 2,3,5,7
        assert!(is_prime(18_446_744_073_709_551_557)); // largest u64 prime
        assert!(!is_prime(u64::MAX));
    }

    #[test]
    fn context_rejects_bad_parameters() {
        assert!(PadicContext::new(2, 1).is_err());
        assert!(PadicContext::new(9, 1).is_err());
        assert!(PadicContext::new(7, 0).is_err());
        let ctx = PadicContext::new(7, 3).unwrap();
        assert_eq!(ctx.modulus(), &BigUint::from(343u32));
    }

    #[test]
    fn residue_examples() {
        let ctx = PadicContext::new(7, 1).unwrap();
        assert_eq!(residue(&q(1, 3), &ctx).unwrap().value(), &BigUint::from(5u32));
        assert_eq!(residue(&q(-1, 5), &ctx).unwrap().value(), &BigUint::from(4u32));
        assert_eq!(residue(&q(0, 1), &ctx).unwrap().value(), &BigUint::from(0u32));
        assert!(matches!(residue(&q(1, 7), &ctx), Err(Error::NotPIntegral { .. })));
        let ctx2 = PadicContext::new(7, 2).unwrap();
        // 1/3 mod 49: 3 * 33 = 99 = 2*49 + 1
        assert_eq!(residue(&q(1, 3), &ctx2).unwrap().value(), &BigUint::from(33u32));
    }

    #[test]
    fn residue_arithmetic_and_inverse() {
        let ctx = PadicContext::new(5, 3).unwrap();
        let a = residue(&q(7, 3), &ctx).unwrap();
        let b = residue(&q(-2, 9), &ctx).unwrap();
        let sum = residue(&q(7 * 9 - 2 * 3, 27), &ctx).unwrap();
        assert_eq!(a.add(&b), sum);
        let prod = residue(&q(-14, 27), &ctx).unwrap();
        assert_eq!(a.mul(&b), prod);
        assert_eq!(a.sub(&a).value(), &BigUint::from(0u32));
        let inv = a.inv().unwrap();
        assert_eq!(a.mul(&inv).value(), &BigUint::from(1u32));
        let five = residue(&q(5, 1), &ctx).unwrap();
        assert!(five.inv().is_err());
        assert_eq!(five.valuation(), Valuation::Finite(1));
        assert_eq!(a.sub(&a).valuation(), Valuation::Infinite);
        assert_eq!(a.neg().add(&a).value(), &BigUint::from(0u32));
        assert_eq!(a.pow(3), a.mul(&a).mul(&a));
    }

    #[test]
    fn congruence_over_gaussians() {
        let ctx = PadicContext::new(7, 2).unwrap();
        let x = GaussianRational::new(q(1, 3), q(50, 1));
        let y = GaussianRational::new(q(1, 3) + q(49, 2), q(1, 1));
        assert!(congruent(&x, &y, &ctx).unwrap());
        let z = GaussianRational::new(q(1, 3) + q(7, 1), q(1, 1));
        assert!(!congruent(&x, &z, &ctx).unwrap());
        let w = GaussianRational::new(q(1, 7), q(0, 1));
        assert!(congruent(&x, &w, &ctx).is_err());
    }
}
