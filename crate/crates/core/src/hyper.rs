//! Pochhammer symbols, truncated hypergeometric series over Gaussian
//! rationals, and the two weighted series families under congruence test.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactnum::{
    congruent, is_prime, make_rational, padic_valuation, residue, GaussianRational, PadicContext,
    Rational,
};
use crate::pgamma::harmonic_power_sum;

/// The rising factorial `(a)_k = a (a+1) ... (a+k-1)`, with `(a)_0 = 1`.
pub fn pochhammer(a: &GaussianRational, k: u64) -> GaussianRational {
    let mut acc = GaussianRational::one();
    let mut factor = a.clone();
    let one = GaussianRational::one();
    for _ in 0..k {
        acc = &acc * &factor;
        factor = &factor + &one;
    }
    acc
}

/// Rational-argument rising factorial.
pub fn pochhammer_rational(a: &Rational, k: u64) -> Rational {
    let mut acc = Rational::one();
    let mut factor = a.clone();
    for _ in 0..k {
        acc *= &factor;
        factor += Rational::one();
    }
    acc
}

/// Rising factorial that reports where it vanishes: `Err(Pole { k: j })`
/// when `a + j = 0` for some `j < k`. Used for prefactor denominators.
pub(crate) fn pochhammer_checked(a: &Rational, k: u64) -> Result<Rational> {
    let mut acc = Rational::one();
    let mut factor = a.clone();
    for j in 0..k {
        if factor.is_zero() {
            return Err(Error::Pole { k: j });
        }
        acc *= &factor;
        factor += Rational::one();
    }
    Ok(acc)
}

/// A truncated `(r+1)F_r` evaluation problem.
#[derive(Clone, Debug)]
pub struct HyperSpec {
    /// Upper parameters `a_0 ... a_r`; exactly one more than `lower`.
    pub upper: Vec<GaussianRational>,
    /// Lower parameters `b_1 ... b_r`.
    pub lower: Vec<GaussianRational>,
    /// The series argument `z`.
    pub argument: GaussianRational,
    /// Inclusive truncation index `N`.
    pub truncation: u64,
}

/// `sum(k = 0..=N) prod (upper)_k / prod (lower)_k * z^k / k!`, exactly.
///
/// Terms update incrementally: `term(k+1) = term(k) * prod(upper + k) /
/// prod(lower + k) * z / (k+1)`. A vanishing lower factor is a pole error
/// reporting that `k`, even when an upper factor vanishes at the same
/// index; a series that already terminated (some earlier upper factor made
/// the term exactly zero) stops quietly instead.
pub fn truncated_hyper(spec: &HyperSpec) -> Result<GaussianRational> {
    if spec.upper.len() != spec.lower.len() + 1 {
        return Err(Error::InvalidInput(format!(
            "{} upper and {} lower parameters do not form an (r+1)Fr series",
            spec.upper.len(),
            spec.lower.len()
        )));
    }
    let mut sum = GaussianRational::zero();
    let mut term = GaussianRational::one();
    for k in 0..=spec.truncation {
        sum = &sum + &term;
        if k == spec.truncation || term.is_zero() {
            break;
        }
        let kq = GaussianRational::from_int(k as i64);
        let mut den = GaussianRational::from_int((k + 1) as i64);
        for b in &spec.lower {
            den = &den * &(b + &kq);
        }
        if den.is_zero() {
            return Err(Error::Pole { k });
        }
        let mut num = spec.argument.clone();
        for a in &spec.upper {
            num = &num * &(a + &kq);
        }
        term = &(&term * &num) / &den;
    }
    Ok(sum)
}

/// The two weighted series shapes whose partial sums are under test: a
/// quintic family with weight `10k + r` and fifth powers of `(r/5)_k/k!`,
/// and a sextic family with weight `6k + r` and sixth powers of
/// `(r/3)_k/k!`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeriesFamily {
    Quintic { r: i64 },
    Sextic { r: i64 },
}

impl SeriesFamily {
    /// Quintic family; `r` must be odd, at most 1, and coprime to 5.
    pub fn quintic(r: i64) -> Result<Self> {
        if r > 1 || r % 2 == 0 || r % 5 == 0 {
            return Err(Error::InvalidInput(format!(
                "quintic family needs odd r <= 1 coprime to 5, got r = {r}"
            )));
        }
        Ok(SeriesFamily::Quintic { r })
    }

    /// Sextic family; `r` must be at most 1 and coprime to 3.
    pub fn sextic(r: i64) -> Result<Self> {
        if r > 1 || r % 3 == 0 {
            return Err(Error::InvalidInput(format!(
                "sextic family needs r <= 1 coprime to 3, got r = {r}"
            )));
        }
        Ok(SeriesFamily::Sextic { r })
    }

    pub fn r(&self) -> i64 {
        match *self {
            SeriesFamily::Quintic { r } | SeriesFamily::Sextic { r } => r,
        }
    }

    /// The base `r/d` of the powered Pochhammer ratio.
    pub fn base(&self) -> Rational {
        match *self {
            SeriesFamily::Quintic { r } => make_rational(r, 5).expect("nonzero denominator"),
            SeriesFamily::Sextic { r } => make_rational(r, 3).expect("nonzero denominator"),
        }
    }

    /// The weight slope: `10` for quintic terms `(10k + r)`, `6` for sextic.
    pub fn weight_slope(&self) -> i64 {
        match self {
            SeriesFamily::Quintic { .. } => 10,
            SeriesFamily::Sextic { .. } => 6,
        }
    }

    /// The power on the Pochhammer ratio: 5 or 6.
    pub fn power(&self) -> u32 {
        match self {
            SeriesFamily::Quintic { .. } => 5,
            SeriesFamily::Sextic { .. } => 6,
        }
    }
}

/// The weighted partial sum `sum(k = 0..=N) (slope*k + r) * ((r/d)_k /
/// (1)_k)^power`, exactly.
pub fn weighted_series(family: &SeriesFamily, n: u64) -> Rational {
    let r = family.r();
    let base = family.base();
    let slope = family.weight_slope();
    let power = family.power();
    let mut sum = Rational::zero();
    let mut ratio = Rational::one(); // (base)_k / k!
    for k in 0..=n {
        let weight = Rational::from_integer((slope * k as i64 + r).into());
        let mut powered = Rational::one();
        for _ in 0..power {
            powered *= &ratio;
        }
        sum += weight * powered;
        let kq = Rational::from_integer((k as i64).into());
        ratio = ratio * (&base + &kq) / (kq + Rational::one());
    }
    sum
}

/// The finite symmetrized sum appearing on the statement right-hand sides.
///
/// Quintic: `sum(k = 0..=(1-r)/2) ((r-1)/2)_k (r/5)_k^3 / ((1)_k (2r/5)_k^2
/// (1/2 + 3r/10)_k)`. Sextic: `sum(k = 0..=1-r) (r-1)_k (r/3)_k^3 / ((1)_k
/// (2r/3)_k^3)`. Both are pole-free for every admissible `r`.
pub fn symmetrized_rhs_sum(family: &SeriesFamily) -> Rational {
    let r = family.r();
    let mut sum = Rational::zero();
    match family {
        SeriesFamily::Quintic { .. } => {
            let n = ((1 - r) / 2) as u64;
            let a = make_rational((r - 1) / 2, 1).expect("integer");
            let b = make_rational(r, 5).expect("nonzero denominator");
            let c = make_rational(2 * r, 5).expect("nonzero denominator");
            let d = make_rational(5 + 3 * r, 10).expect("nonzero denominator");
            for k in 0..=n {
                let num = pochhammer_rational(&a, k) * pochhammer_rational(&b, k).pow(3);
                let den = pochhammer_rational(&Rational::one(), k)
                    * pochhammer_rational(&c, k).pow(2)
                    * pochhammer_rational(&d, k);
                sum += num / den;
            }
        }
        SeriesFamily::Sextic { .. } => {
            let n = (1 - r) as u64;
            let a = make_rational(r - 1, 1).expect("integer");
            let b = make_rational(r, 3).expect("nonzero denominator");
            let c = make_rational(2 * r, 3).expect("nonzero denominator");
            for k in 0..=n {
                let num = pochhammer_rational(&a, k) * pochhammer_rational(&b, k).pow(3);
                let den =
                    pochhammer_rational(&Rational::one(), k) * pochhammer_rational(&c, k).pow(3);
                sum += num / den;
            }
        }
    }
    sum
}

/// Checks the four-fold Pochhammer congruence modulo `p^5`:
///
/// `(u+vp)_k (u-vp)_k (u+vip)_k (u-vip)_k = (u)_k^4 * (1 - v^4 p^4 *
/// sum(j = 0..k-1) 1/(u+j)^4)`,
///
/// for p-integral `u`, `v` and `0 <= k <= <-u> mod p`. The Gaussian product
/// pairs conjugates, so its imaginary part must vanish identically; a
/// nonzero imaginary part makes the check fail.
pub fn verify_pochhammer_product(u: &Rational, v: &Rational, p: u64, k: u64) -> Result<bool> {
    if p < 3 || !is_prime(p) {
        return Err(Error::InvalidInput(format!("p = {p} is not an odd prime")));
    }
    for (name, x) in [("u", u), ("v", v)] {
        if !padic_valuation(x, p).is_at_least(0) {
            return Err(Error::NotPIntegral { value: format!("{name} = {x}"), p });
        }
    }
    let ctx1 = PadicContext::new(p, 1)?;
    let bound = residue(&-u.clone(), &ctx1)?;
    use num_traits::ToPrimitive;
    let bound = bound.value().to_u64().expect("residue below p");
    if k > bound {
        return Err(Error::Range(format!(
            "k = {k} exceeds <-u> mod p = {bound}; the expansion is only valid below the pole"
        )));
    }

    let p_rat = make_rational(p as i64, 1)?;
    let vp = v * &p_rat;
    let real_pair = pochhammer_rational(&(u + &vp), k) * pochhammer_rational(&(u - &vp), k);
    let gauss_plus = GaussianRational::new(u.clone(), vp.clone());
    let gauss_minus = GaussianRational::new(u.clone(), -vp);
    let gauss_pair = &pochhammer(&gauss_plus, k) * &pochhammer(&gauss_minus, k);
    let lhs = gauss_pair.scale(&real_pair);
    if !lhs.is_real() {
        return Ok(false);
    }

    let tail = harmonic_power_sum(u, k, 4, None)?;
    let v4p4 = (v * v * v * v) * (&p_rat * &p_rat * &p_rat * &p_rat);
    let rhs = pochhammer_rational(u, k).pow(4) * (Rational::one() - v4p4 * tail);
    let ctx5 = PadicContext::new(p, 5)?;
    congruent(&lhs, &GaussianRational::from_rational(rhs), &ctx5)
}
