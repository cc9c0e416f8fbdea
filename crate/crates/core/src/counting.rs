//! Exact combinatorial counts used by the bound formulas.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{domain, Result};

/// Exact rational number used for every non-rate bound.
pub type ExactRational = BigRational;

/// C(n, k), zero outside 0 <= k <= n.
pub fn binomial(n: i64, k: i64) -> BigUint {
    if n < 0 || k < 0 || k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= BigUint::from((n - i) as u64);
        acc /= BigUint::from((i + 1) as u64);
    }
    acc
}

/// Number of compositions of `n` into `k` parts, each at least `d`: C(n - k(d-1) - 1, k - 1).
pub fn composition_count(n: i64, k: i64, d: i64) -> BigUint {
    binomial(n - k * (d - 1) - 1, k - 1)
}

/// delta(r, s): sum_{i=0}^{s} C(r-s, i) for r > s >= 0, 1 for s = r >= 0, 0 otherwise.
pub fn delta(r: i64, s: i64) -> BigUint {
    if s < 0 || s > r {
        BigUint::zero()
    } else if s == r {
        BigUint::one()
    } else {
        (0..=s).map(|i| binomial(r - s, i)).sum()
    }
}

fn pow(q: u64, e: u64) -> BigUint {
    num_traits::pow(BigUint::from(q), e as usize)
}

/// Size of I_s(x) for x of length n - s: sum_{j=0}^{s} C(n, j)(q-1)^j.
pub fn iota(q: u64, s: u64, n: u64) -> BigUint {
    (0..=s).map(|j| binomial(n as i64, j as i64) * pow(q - 1, j)).sum()
}

/// Lower bound on |D_s(x)| for x of length `n` with `r` runs (valid for r > 2).
pub fn dset_size_lower(r: i64, s: i64, n: i64) -> Result<BigUint> {
    if r <= 2 {
        return domain(format!("deletion-set lower bound needs more than 2 runs, got {r}"));
    }
    if r > n || s >= n || s < 0 {
        return domain(format!("need 0 <= s < n and r <= n, got r={r} s={s} n={n}"));
    }
    let lo = s + r - n - 1;
    let hi = (s - 2).min(r - 3);
    let tail: BigUint = (lo..=hi).map(|i| delta(r - 2, i)).sum();
    Ok(delta(r, s) + tail)
}

/// Upper bound C(r+s-1, s) on |D_s(x)| for x with `r` runs.
pub fn dset_size_upper(r: i64, s: i64) -> BigUint {
    binomial(r + s - 1, s)
}

/// Number of q-ary strings of length `m` with exactly `r` runs: q(q-1)^{r-1} C(m-1, r-1).
pub fn count_strings_with_runs(q: u64, m: u64, r: u64) -> BigUint {
    if r == 0 {
        return if m == 0 { BigUint::one() } else { BigUint::zero() };
    }
    BigUint::from(q) * pow(q - 1, r - 1) * binomial(m as i64 - 1, r as i64 - 1)
}

pub fn ratio(num: impl Into<BigInt>, den: impl Into<BigInt>) -> ExactRational {
    BigRational::new(num.into(), den.into())
}

pub fn from_uint(v: &BigUint) -> ExactRational {
    BigRational::from_integer(BigInt::from(v.clone()))
}

/// Floor of a rational as a big integer.
pub fn floor(v: &ExactRational) -> BigInt {
    v.numer().div_floor(v.denom())
}

/// "num/den", or just "num" for integers.
pub fn render(v: &ExactRational) -> String {
    if v.denom().is_one() {
        v.numer().to_string()
    } else {
        format!("{}/{}", v.numer(), v.denom())
    }
}

pub fn parse_rational(text: &str) -> Option<ExactRational> {
    let text = text.trim();
    match text.split_once('/') {
        Some((a, b)) => {
            let den: BigInt = b.trim().parse().ok()?;
            if den.is_zero() {
                return None;
            }
            Some(BigRational::new(a.trim().parse().ok()?, den))
        }
        None => Some(BigRational::from_integer(text.parse().ok()?)),
    }
}

/// Nearest f64; exact for moderate sizes, correctly scaled for huge ones.
pub fn to_f64(v: &ExactRational) -> f64 {
    if let (Some(n), Some(d)) = (v.numer().to_f64(), v.denom().to_f64()) {
        if n.is_finite() && d.is_finite() && d != 0.0 {
            return n / d;
        }
    }
    let shift = v.numer().bits() as i64 - v.denom().bits() as i64;
    let scaled = if shift > 0 {
        BigRational::new(v.numer().clone(), v.denom() << shift as usize)
    } else {
        BigRational::new(v.numer() << (-shift) as usize, v.denom().clone())
    };
    let sign = if v.is_negative() { -1.0 } else { 1.0 };
    sign * scaled.abs().to_f64().unwrap_or(f64::NAN) * 2f64.powi(shift as i32)
}
