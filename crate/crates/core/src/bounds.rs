//! Closed-form and enumerative upper bounds on the size of s-deletion codes.

use std::collections::{BTreeMap, HashMap};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::counting::{self, binomial, count_strings_with_runs, dset_size_lower, from_uint, ExactRational};
use crate::error::{domain, Error, Result};
use crate::qary::all_strings;

/// Default cap on the number of strings any enumeration may visit.
pub const DEFAULT_MAX_STRINGS: u64 = 1 << 20;

fn pow(q: u64, e: u64) -> BigUint {
    num_traits::pow(BigUint::from(q), e as usize)
}

fn check_q(q: u64) -> Result<()> {
    if q < 2 {
        return domain(format!("alphabet size must be at least 2, got {q}"));
    }
    Ok(())
}

/// (q^n - q) / ((q-1)(n-1)), the single-deletion bound.
pub fn single_deletion_bound(q: u64, n: u64) -> Result<ExactRational> {
    check_q(q)?;
    if n < 2 {
        return domain(format!("single-deletion bound needs n >= 2, got {n}"));
    }
    let num = BigInt::from(pow(q, n)) - BigInt::from(q);
    Ok(BigRational::new(num, BigInt::from((q - 1) * (n - 1))))
}

pub(crate) fn checked_count(q: u64, len: u64, cap: u64) -> Result<u64> {
    let needed = (q as u128).checked_pow(len as u32).unwrap_or(u128::MAX);
    if needed > cap as u128 {
        return Err(Error::Resource { what: "string enumeration", needed, cap: cap as u128 });
    }
    Ok(needed as u64)
}

/// Histogram of |D_s(x)| over all x of length m.
pub fn deletion_size_histogram(q: u64, s: u64, m: u64, cap: u64) -> Result<BTreeMap<u64, u64>> {
    checked_count(q, m, cap)?;
    let mut hist: HashMap<u64, u64> = HashMap::new();
    for x in all_strings(q as u8, m as usize) {
        let size = crate::qary::distinct_subsequences(x.symbols(), m.saturating_sub(s) as usize);
        *hist.entry(size).or_default() += 1;
    }
    Ok(hist.into_iter().collect())
}

/// sum over x in F_q^{n-s} of 1/|D_s(x)|, by enumeration.
pub fn transversal_sum_bound(q: u64, s: u64, n: u64, cap: u64) -> Result<ExactRational> {
    check_q(q)?;
    if s == 0 || n < 2 * s {
        return domain(format!("transversal sum needs n >= 2s >= 2, got s={s} n={n}"));
    }
    let hist = deletion_size_histogram(q, s, n - s, cap)?;
    Ok(hist
        .into_iter()
        .map(|(size, count)| BigRational::new(BigInt::from(count), BigInt::from(size)))
        .sum())
}

/// U_{q,s,n}: the run-count bound for multiple deletions.
pub fn u_bound(q: u64, s: u64, n: u64) -> Result<ExactRational> {
    check_q(q)?;
    if s == 0 || n <= 2 * s {
        return domain(format!("U bound needs n > 2s >= 2, got s={s} n={n}"));
    }
    let m = n - s;
    let mut total = ExactRational::zero();
    for r in 3..=m {
        let den = dset_size_lower(r as i64, s as i64, m as i64)?;
        total += BigRational::new(count_strings_with_runs(q, m, r).into(), den.into());
    }
    for r in 1..=2.min(m) {
        total += from_uint(&count_strings_with_runs(q, m, r));
    }
    Ok(total)
}

/// Lower bound on U_{q,s,n}: (q^n - q sum_{r<s}(q-1)^r C(n-1,r)) / ((q-1)^s C(n-1,s)).
pub fn u_lower(q: u64, s: u64, n: u64) -> Result<ExactRational> {
    check_q(q)?;
    if s == 0 || n <= 2 * s {
        return domain(format!("U lower bound needs n > 2s >= 2, got s={s} n={n}"));
    }
    let head: BigUint = (0..s).map(|r| pow(q - 1, r) * binomial(n as i64 - 1, r as i64)).sum();
    let num = BigInt::from(pow(q, n)) - BigInt::from(head * q);
    let den = pow(q - 1, s) * binomial(n as i64 - 1, s as i64);
    Ok(BigRational::new(num, den.into()))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LevenshteinBound {
    #[serde(serialize_with = "ser_rational")]
    pub value: ExactRational,
    /// Minimizing r; `None` when no r is admissible and the trivial bound is used.
    pub argmin: Option<u64>,
}

/// Levenshtein's bound minimized over the admissible r (r >= 1 and s <= r + 1 <= n).
pub fn levenshtein_bound(q: u64, s: u64, n: u64) -> Result<LevenshteinBound> {
    check_q(q)?;
    if s == 0 || s > n {
        return domain(format!("Levenshtein bound needs 1 <= s <= n, got s={s} n={n}"));
    }
    let mut best: Option<LevenshteinBound> = None;
    let lo = s.saturating_sub(1).max(1);
    for r in lo..n {
        let den: BigUint = (0..=s).map(|i| binomial((r + 1 - s) as i64, i as i64)).sum();
        let ball: BigUint = (0..r).map(|i| binomial(n as i64 - 1, i as i64) * pow(q - 1, i)).sum();
        let value = BigRational::new(pow(q, n - s).into(), den.into()) + from_uint(&(ball * q));
        if best.as_ref().is_none_or(|b| value < b.value) {
            best = Some(LevenshteinBound { value, argmin: Some(r) });
        }
    }
    Ok(best.unwrap_or_else(|| LevenshteinBound { value: from_uint(&trivial_bound(q, s, n)), argmin: None }))
}

/// (q^{n-1} + (n-2)q^{n-2} + q) / n.
pub fn levenshtein92_bound(q: u64, n: u64) -> Result<ExactRational> {
    check_q(q)?;
    if n < 2 {
        return domain(format!("needs n >= 2, got {n}"));
    }
    let num = pow(q, n - 1) + pow(q, n - 2) * (n - 2) + q;
    Ok(BigRational::new(num.into(), BigInt::from(n)))
}

/// q^{n-s}.
pub fn trivial_bound(q: u64, s: u64, n: u64) -> BigUint {
    pow(q, n.saturating_sub(s))
}

pub(crate) fn ser_rational<S: serde::Serializer>(v: &ExactRational, ser: S) -> std::result::Result<S::Ok, S::Error> {
    ser.serialize_str(&counting::render(v))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundEntry {
    #[serde(serialize_with = "ser_rational")]
    pub exact: ExactRational,
    #[serde(serialize_with = "ser_bigint")]
    pub floored: BigInt,
}

fn ser_bigint<S: serde::Serializer>(v: &BigInt, ser: S) -> std::result::Result<S::Ok, S::Error> {
    ser.serialize_str(&v.to_string())
}

impl BoundEntry {
    pub fn new(exact: ExactRational) -> Self {
        let floored = counting::floor(&exact);
        BoundEntry { exact, floored }
    }
}

/// Named bound values for one instance.
#[derive(Clone, Debug, Default, Serialize)]
pub struct BoundReport {
    pub q: u64,
    pub s: u64,
    pub n: u64,
    pub entries: BTreeMap<String, BoundEntry>,
}

impl BoundReport {
    pub fn new(q: u64, s: u64, n: u64) -> Self {
        BoundReport { q, s, n, entries: BTreeMap::new() }
    }

    pub fn insert(&mut self, name: &str, value: ExactRational) {
        self.entries.insert(name.to_string(), BoundEntry::new(value));
    }

    pub fn get(&self, name: &str) -> Option<&BoundEntry> {
        self.entries.get(name)
    }

    /// Every bound whose preconditions hold. Enumerative entries are skipped past `cap`.
    pub fn compute(q: u64, s: u64, n: u64, cap: u64) -> Result<Self> {
        let mut rep = BoundReport::new(q, s, n);
        rep.insert("trivial", from_uint(&trivial_bound(q, s, n)));
        rep.insert("levenshtein", levenshtein_bound(q, s, n)?.value);
        if s == 1 && n >= 2 {
            rep.insert("closed_form_single", single_deletion_bound(q, n)?);
            rep.insert("levenshtein92", levenshtein92_bound(q, n)?);
        }
        if n > 2 * s {
            rep.insert("u_bound", u_bound(q, s, n)?);
            rep.insert("u_lower", u_lower(q, s, n)?);
        }
        if n >= 2 * s {
            match transversal_sum_bound(q, s, n, cap) {
                Ok(v) => rep.insert("transversal_sum", v),
                Err(Error::Resource { .. }) => {}
                Err(e) => return Err(e),
            }
        }
        rep.check_order()?;
        Ok(rep)
    }

    /// u_lower <= transversal_sum <= u_bound, and transversal_sum <= closed form.
    pub fn check_order(&self) -> Result<()> {
        let chain = [("u_lower", "transversal_sum"), ("transversal_sum", "u_bound"), ("transversal_sum", "closed_form_single")];
        for (a, b) in chain {
            if let (Some(x), Some(y)) = (self.get(a), self.get(b)) {
                if x.exact > y.exact {
                    return Err(Error::Internal(format!(
                        "{a} = {} exceeds {b} = {} at q={} s={} n={}",
                        counting::render(&x.exact),
                        counting::render(&y.exact),
                        self.q,
                        self.s,
                        self.n
                    )));
                }
            }
        }
        Ok(())
    }
}

pub fn is_integer(v: &ExactRational) -> bool {
    v.denom().is_one()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::counting::{floor, ratio};

    #[test]
    fn single_deletion_examples() {
        assert_eq!(single_deletion_bound(2, 8).unwrap(), ratio(254, 7));
        assert_eq!(floor(&single_deletion_bound(2, 8).unwrap()), 36.into());
        assert_eq!(single_deletion_bound(3, 8).unwrap(), ratio(6558, 14));
        assert_eq!(floor(&single_deletion_bound(3, 8).unwrap()), 468.into());
        assert_eq!(floor(&single_deletion_bound(5, 6).unwrap()), 781.into());
        assert!(single_deletion_bound(2, 1).is_err());
    }

    #[test]
    fn levenshtein_examples() {
        assert_eq!(floor(&levenshtein_bound(2, 1, 8).unwrap().value), 58.into());
        assert_eq!(floor(&levenshtein_bound(3, 1, 5).unwrap().value), 43.into());
        assert_eq!(floor(&levenshtein_bound(2, 1, 14).unwrap().value), 2232.into());
        let one = levenshtein_bound(2, 1, 1).unwrap();
        assert_eq!(one.argmin, None);
        assert_eq!(one.value, ratio(1, 1));
        let b = levenshtein_bound(2, 4, 30).unwrap();
        let r = b.argmin.unwrap();
        assert!(1 <= 4 && 4 <= r + 1 && r < 30);
    }

    #[test]
    fn levenshtein92_examples() {
        assert_eq!(levenshtein92_bound(2, 8).unwrap(), ratio(514, 8));
        assert_eq!(levenshtein92_bound(2, 4).unwrap(), ratio(18, 4));
        let ratios: Vec<f64> = (4..=24)
            .map(|n| counting::to_f64(&(levenshtein92_bound(3, n).unwrap() / single_deletion_bound(3, n).unwrap())))
            .collect();
        assert!(ratios.windows(2).all(|w| w[1] > w[0]));
    }

    #[test]
    fn trivial_examples() {
        assert_eq!(trivial_bound(2, 1, 4), BigUint::from(8u32));
        assert_eq!(trivial_bound(2, 5, 5), BigUint::one());
        assert_eq!(trivial_bound(3, 2, 5), BigUint::from(27u32));
    }

    #[test]
    fn u_bound_for_single_deletion_overcounts_two_run_strings() {
        // two-run strings enter with weight 1 instead of 1/2
        for q in 2..=5u64 {
            for n in 3..=12u64 {
                let excess = ratio((q * (q - 1) * (n - 2)) as i64, 2);
                assert_eq!(u_bound(q, 1, n).unwrap(), single_deletion_bound(q, n).unwrap() + excess, "q={q} n={n}");
                assert_eq!(u_lower(q, 1, n).unwrap(), single_deletion_bound(q, n).unwrap());
            }
        }
        assert!(u_bound(2, 2, 4).is_err());
    }

    #[test]
    fn transversal_sum_examples() {
        assert_eq!(transversal_sum_bound(3, 1, 4, DEFAULT_MAX_STRINGS).unwrap(), ratio(13, 1));
        let t = transversal_sum_bound(2, 2, 6, DEFAULT_MAX_STRINGS).unwrap();
        assert!(t <= u_bound(2, 2, 6).unwrap());
        assert!(matches!(transversal_sum_bound(2, 1, 40, 1 << 10), Err(Error::Resource { .. })));
    }

    #[test]
    fn report_collects_entries() {
        let rep = BoundReport::compute(2, 1, 8, DEFAULT_MAX_STRINGS).unwrap();
        assert_eq!(rep.get("closed_form_single").unwrap().floored, 36.into());
        assert_eq!(rep.get("transversal_sum").unwrap().exact, ratio(254, 7));
        assert_eq!(rep.get("levenshtein").unwrap().floored, 58.into());
    }
}
