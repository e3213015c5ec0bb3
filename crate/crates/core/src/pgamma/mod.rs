//! The Morita p-adic Gamma function and its functional equations.
//!
//! For a natural number `m`, `gamma(m) = (-1)^m * prod(k : 1 <= k < m, p
//! does not divide k)`. The function extends continuously to `Z_p`; its
//! value modulo `p^n` depends only on the argument modulo `p^n`, which is
//! what lets a finite table represent it exactly at finite precision.

mod cache;
mod provider;
mod table;

pub use provider::GammaProvider;
pub use table::GammaTable;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactnum::{
    make_rational, padic_valuation, residue, PadicContext, Rational, ResidueClass, Valuation,
};

use crate::exactnum::residue_u64;

/// `gamma(m) mod p^n` for an already-reduced natural argument `m < p^n`.
pub fn gamma_p_nat(provider: &GammaProvider, m: u64, ctx: &PadicContext) -> Result<ResidueClass> {
    let table = provider.table(ctx.p(), ctx.n())?;
    let v = table.gamma_nat(m)?;
    Ok(ResidueClass::from_u64(v, ctx.clone()))
}

/// `gamma(x) mod p^n` for a p-integral rational `x`, via its residue.
pub fn gamma_p(provider: &GammaProvider, x: &Rational, ctx: &PadicContext) -> Result<ResidueClass> {
    let m = residue_u64(x, ctx)?;
    gamma_p_nat(provider, m, ctx)
}

/// Checks the reflection equation `gamma(x) * gamma(1 - x) = (-1)^(e - 1)`
/// modulo `p^n`, where `e` is the least nonnegative residue of `-x` mod `p`.
pub fn verify_reflection(
    provider: &GammaProvider,
    x: &Rational,
    ctx: &PadicContext,
) -> Result<bool> {
    let ctx1 = ctx.with_precision(1)?;
    let e = residue_u64(&-x.clone(), &ctx1)?;
    let lhs = gamma_p(provider, x, ctx)?.mul(&gamma_p(provider, &(Rational::one() - x), ctx)?);
    let one = ResidueClass::from_u64(1, ctx.clone());
    let rhs = if e % 2 == 1 { one } else { one.neg() };
    Ok(lhs == rhs)
}

/// Checks the shift equation modulo `p^n`:
/// `gamma(x + 1) = -x * gamma(x)` when `x` is a p-adic unit, and
/// `gamma(x + 1) = -gamma(x)` when `p` divides `x`.
pub fn verify_shift(provider: &GammaProvider, x: &Rational, ctx: &PadicContext) -> Result<bool> {
    let gx = gamma_p(provider, x, ctx)?;
    let lhs = gamma_p(provider, &(x + Rational::one()), ctx)?;
    let rhs = match padic_valuation(x, ctx.p()) {
        Valuation::Finite(0) => residue(x, ctx)?.mul(&gx).neg(),
        _ => gx.neg(),
    };
    Ok(lhs == rhs)
}

/// `sum(1 / (start + j)^e : 0 <= j < count)`, exactly.
///
/// With `skip_p = Some(p)`, terms whose base is divisible by `p` are
/// omitted (the usual primed harmonic sums). Without it, a zero base is a
/// pole error reporting the offending `j`.
pub fn harmonic_power_sum(
    start: &Rational,
    count: u64,
    e: u32,
    skip_p: Option<u64>,
) -> Result<Rational> {
    if let Some(p) = skip_p {
        if !crate::exactnum::is_prime(p) {
            return Err(Error::InvalidInput(format!("skip modulus {p} is not prime")));
        }
    }
    let mut sum = Rational::zero();
    let mut base = start.clone();
    for j in 0..count {
        // A zero base is a pole even when skipping: skipping is for unit
        // denominators, not for rescuing a genuinely undefined term.
        if base.is_zero() {
            return Err(Error::Pole { k: j });
        }
        let skip = match skip_p {
            Some(p) => padic_valuation(&base, p).is_at_least(1),
            None => false,
        };
        if !skip {
            let mut term = Rational::one();
            for _ in 0..e {
                term /= &base;
            }
            sum += term;
        }
        base += Rational::one();
    }
    Ok(sum)
}

/// Checks the quadratic gamma product expansion modulo `p^4` for `p >= 7`:
///
/// `gamma(a + m p) * gamma(a - m p) = gamma(a)^2 * (1 + m^2 p^2 * H)`
///
/// where `H` sums `1/j^2` over `1 <= j <= <-a> mod p^2` with `p | j`
/// skipped. Both `a` and `m` must be p-integral.
pub fn verify_gamma_product(
    provider: &GammaProvider,
    a: &Rational,
    m: &Rational,
    p: u64,
) -> Result<bool> {
    if p < 7 || !crate::exactnum::is_prime(p) {
        return Err(Error::InvalidInput(format!(
            "gamma product check requires a prime p >= 7, got {p}"
        )));
    }
    let ctx4 = PadicContext::new(p, 4)?;
    let ctx2 = PadicContext::new(p, 2)?;
    let count = residue_u64(&-a.clone(), &ctx2)?;
    let h = harmonic_power_sum(&Rational::one(), count, 2, Some(p))?;
    let p_rat = make_rational(p as i64, 1)?;
    let factor = Rational::one() + m * m * &p_rat * &p_rat * h;

    let shift = m * &p_rat;
    let lhs =
        gamma_p(provider, &(a + &shift), &ctx4)?.mul(&gamma_p(provider, &(a - &shift), &ctx4)?);
    let ga = gamma_p(provider, a, &ctx4)?;
    let rhs = ga.mul(&ga).mul(&residue(&factor, &ctx4)?);
    Ok(lhs == rhs)
}
