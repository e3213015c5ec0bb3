//! Product tables for the Morita p-adic Gamma function on `Z / p^n`.
//!
//! `gamma(m)` for a natural `m < p^n` is `(-1)^m` times the product of the
//! positive integers below `m` that are prime to `p`. A table is one full
//! sweep over `[1, p^n)`; small moduli are stored densely, large ones keep
//! evenly spaced prefix-product checkpoints and finish each query with a
//! short resumed scan.

use std::path::Path;

use crate::error::{Error, Result};
use crate::exactnum::is_prime;
use crate::pgamma::cache;

/// Moduli up to this size get a dense value table (and are eligible for the
/// on-disk cache); larger ones use checkpoints.
pub(crate) const FULL_TABLE_LIMIT: u64 = 1 << 21;

/// Number of checkpoint intervals aimed for in sparse mode; the stride is
/// rounded to a power of two so the sweep can test positions with a mask.
const CHECKPOINT_TARGET: u64 = 1 << 12;

/// Fixed-modulus Montgomery arithmetic for odd moduli below `2^63`.
///
/// The gamma sweep is a single long chain of modular multiplications, which
/// Montgomery reduction performs without any hardware division.
struct Montgomery {
    m: u64,
    /// `-m^{-1} mod 2^64`.
    neg_inv: u64,
    /// `2^128 mod m`, used to enter Montgomery form.
    r2: u64,
    /// `2^64 mod m`, the Montgomery image of 1.
    one: u64,
}

impl Montgomery {
    fn new(m: u64) -> Self {
        debug_assert!(m & 1 == 1 && (3..(1 << 63)).contains(&m));
        // Newton iteration doubles the number of correct low bits each step;
        // an odd seed is correct to 3 bits, so six steps cover 64.
        let mut inv = m;
        for _ in 0..6 {
            inv = inv.wrapping_mul(2u64.wrapping_sub(m.wrapping_mul(inv)));
        }
        debug_assert_eq!(m.wrapping_mul(inv), 1);
        let m128 = m as u128;
        let r2 = (((u128::MAX % m128) + 1) % m128) as u64;
        let one = ((1u128 << 64) % m128) as u64;
        Montgomery { m, neg_inv: inv.wrapping_neg(), r2, one }
    }

    /// Montgomery reduction of `t < m * 2^64`.
    #[inline(always)]
    fn redc(&self, t: u128) -> u64 {
        let k = (t as u64).wrapping_mul(self.neg_inv);
        let t = t + (k as u128) * (self.m as u128);
        let r = (t >> 64) as u64;
        if r >= self.m {
            r - self.m
        } else {
            r
        }
    }

    #[inline(always)]
    fn mul(&self, a: u64, b: u64) -> u64 {
        self.redc(a as u128 * b as u128)
    }

    #[inline(always)]
    fn to_mont(&self, x: u64) -> u64 {
        self.mul(x % self.m, self.r2)
    }

    #[inline(always)]
    fn demont(&self, x: u64) -> u64 {
        self.redc(x as u128)
    }

    /// Addition of reduced values, used to step a running counter without
    /// leaving Montgomery form.
    #[inline(always)]
    fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.m {
            s - self.m
        } else {
            s
        }
    }
}

enum Storage {
    /// `values[m] = gamma(m)` for every `m < p^n`, sign included.
    Full(Vec<u64>),
    /// `prefix[i]` is the unsigned product of `k` in `[1, i * stride]` prime
    /// to `p`; queries resume the sweep from the nearest checkpoint.
    Checkpoints { stride: u64, prefix: Vec<u64> },
}

/// One fully built gamma table for a fixed `(p, n)`.
pub struct GammaTable {
    p: u64,
    n: u32,
    modulus: u64,
    mont: Montgomery,
    storage: Storage,
}

impl GammaTable {
    /// Builds the table from scratch.
    pub fn build(p: u64, n: u32) -> Result<Self> {
        Self::build_with_cache(p, n, None)
    }

    /// Builds the table, consulting (and refreshing) the on-disk cache for
    /// dense tables when a directory is given. Cache I/O failures are
    /// silently treated as misses; the table is recomputed.
    pub fn build_with_cache(p: u64, n: u32, cache_dir: Option<&Path>) -> Result<Self> {
        if p < 3 || !is_prime(p) {
            return Err(Error::InvalidInput(format!("p = {p} is not an odd prime")));
        }
        if n == 0 {
            return Err(Error::InvalidInput("precision n must be at least 1".into()));
        }
        let modulus = checked_pow(p, n)?;
        let mont = Montgomery::new(modulus);
        if modulus <= FULL_TABLE_LIMIT {
            if let Some(dir) = cache_dir {
                if let Some(values) = cache::load(dir, p, n, modulus) {
                    return Ok(GammaTable { p, n, modulus, mont, storage: Storage::Full(values) });
                }
            }
            let values = build_full(p, modulus, &mont);
            if let Some(dir) = cache_dir {
                // Best effort; a read-only or missing directory is not an error.
                let _ = cache::store(dir, p, n, &values);
            }
            Ok(GammaTable { p, n, modulus, mont, storage: Storage::Full(values) })
        } else {
            let storage = build_checkpoints(p, modulus, &mont);
            Ok(GammaTable { p, n, modulus, mont, storage })
        }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// `gamma(m) mod p^n` for a reduced natural argument `m < p^n`.
    pub fn gamma_nat(&self, m: u64) -> Result<u64> {
        if m >= self.modulus {
            return Err(Error::Range(format!(
                "gamma argument {m} is not reduced modulo {}^{}",
                self.p, self.n
            )));
        }
        let unsigned = match &self.storage {
            Storage::Full(values) => return Ok(values[m as usize]),
            Storage::Checkpoints { stride, prefix } => {
                // The factors of gamma(m) are the k < m prime to p.
                let t = m.saturating_sub(1);
                let i = t / stride;
                let mut acc = self.mont.to_mont(prefix[i as usize]);
                let mut k = i * stride + 1;
                let mut mont_k = self.mont.to_mont(k);
                while k <= t {
                    if !k.is_multiple_of(self.p) {
                        acc = self.mont.mul(acc, mont_k);
                    }
                    mont_k = self.mont.add(mont_k, self.mont.one);
                    k += 1;
                }
                self.mont.demont(acc)
            }
        };
        Ok(apply_sign(unsigned, m, self.modulus))
    }
}

/// `(-1)^m * u mod p^n` for an unsigned prefix product `u`.
#[inline]
fn apply_sign(u: u64, m: u64, modulus: u64) -> u64 {
    if m % 2 == 1 && u != 0 {
        modulus - u
    } else {
        u
    }
}

fn checked_pow(p: u64, n: u32) -> Result<u64> {
    let mut acc: u64 = 1;
    for _ in 0..n {
        acc = acc.checked_mul(p).filter(|&v| v < (1 << 63)).ok_or_else(|| {
            Error::Range(format!("p^n = {p}^{n} exceeds the table backend limit"))
        })?;
    }
    Ok(acc)
}

fn build_full(p: u64, modulus: u64, mont: &Montgomery) -> Vec<u64> {
    let mut values = Vec::with_capacity(modulus as usize);
    values.push(1); // gamma(0) = 1, the empty product
    let mut acc = mont.one; // running unsigned product in Montgomery form
    let mut mont_k = mont.one;
    let mut to_p = p - 1; // distance until k is the next multiple of p
    for m in 1..modulus {
        values.push(apply_sign(mont.demont(acc), m, modulus));
        // Fold k = m into the product for the next entry.
        if to_p == 0 {
            to_p = p - 1;
        } else {
            to_p -= 1;
            acc = mont.mul(acc, mont_k);
        }
        mont_k = mont.add(mont_k, mont.one);
    }
    values
}

fn build_checkpoints(p: u64, modulus: u64, mont: &Montgomery) -> Storage {
    let mut stride: u64 = 1;
    while modulus / stride > CHECKPOINT_TARGET {
        stride <<= 1;
    }
    let mask = stride - 1;
    let mut prefix = Vec::with_capacity((modulus / stride + 1) as usize);
    prefix.push(1); // empty product
    let mut acc = mont.one;
    let mut mont_k = mont.one;
    let mut to_p = p - 1;
    let mut k: u64 = 1;
    while k < modulus {
        if to_p == 0 {
            to_p = p - 1;
        } else {
            to_p -= 1;
            acc = mont.mul(acc, mont_k);
        }
        if k & mask == 0 {
            prefix.push(mont.demont(acc));
        }
        mont_k = mont.add(mont_k, mont.one);
        k += 1;
    }
    Storage::Checkpoints { stride, prefix }
}
