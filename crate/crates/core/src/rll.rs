//! Run-length-limited sources and codes for them.
//!
//! A (d,k)-RLL string has isolated 1s, starts and ends with a 0-run, and every
//! 0-run has length in [d, k]. Only k = infinity carries a closed-form bound.

use num_traits::Zero;
use serde::Serialize;

use crate::bounds::{checked_count, BoundReport, DEFAULT_MAX_STRINGS};
use crate::counting::{self, binomial, from_uint, iota, ratio, ExactRational};
use crate::error::{domain, Result};
use crate::exact::{max_independent_set, LineGraph, MisOptions, DEFAULT_MAX_LINE_VERTICES};
use crate::hypergraph::{DeletionHypergraph, HypergraphLimits};
use crate::lp::{solve_fractional_matching, LpMode, LpOptions, LpStatus};
use crate::qary::{all_strings, deletion_set, deletion_set_size, QaryString, StringSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RllSpec {
    pub n: usize,
    pub d: usize,
    /// Maximum 0-run length; `None` is unbounded.
    pub k: Option<usize>,
}

impl RllSpec {
    pub fn new(n: usize, d: usize, k: Option<usize>) -> Result<Self> {
        if d <= 1 || d > n {
            return domain(format!("need 1 < d <= n, got n={n} d={d}"));
        }
        if k.is_some_and(|k| k < d) {
            return domain("need k >= d");
        }
        Ok(RllSpec { n, d, k })
    }

    pub fn unbounded(n: usize, d: usize) -> Result<Self> {
        Self::new(n, d, None)
    }

    pub fn admits(&self, x: &QaryString) -> bool {
        x.q() == 2 && x.len() == self.n && is_rll(x, self.d, self.k)
    }
}

fn is_rll(x: &QaryString, d: usize, k: Option<usize>) -> bool {
    let runs = x.run_profile();
    let zero_ok = |len: usize| len >= d && k.is_none_or(|k| len <= k);
    !runs.is_empty()
        && runs[0].0 == 0
        && runs[runs.len() - 1].0 == 0
        && runs.iter().all(|&(sym, len)| if sym == 1 { len == 1 } else { zero_ok(len) })
}

/// Run profile of a string one 0-run short of being RLL: exactly one 0-run of
/// length d-1 (possibly the first or last), every other 0-run at least d.
fn is_rll_prime(x: &QaryString, d: usize) -> bool {
    let runs = x.run_profile();
    !runs.is_empty()
        && runs[0].0 == 0
        && runs[runs.len() - 1].0 == 0
        && runs.iter().all(|&(sym, len)| if sym == 1 { len == 1 } else { len >= d - 1 })
        && runs.iter().filter(|&&(sym, len)| sym == 0 && len == d - 1).count() == 1
}

pub fn rll_set(spec: RllSpec) -> Result<StringSet> {
    checked_count(2, spec.n as u64, DEFAULT_MAX_STRINGS)?;
    Ok(all_strings(2, spec.n).filter(|x| spec.admits(x)).collect())
}

/// S'_m(d): the extra single deletions of (d,inf)-RLL strings of length m+1.
pub fn rll_prime_set(m: usize, d: usize) -> Result<StringSet> {
    if d <= 1 || m + 1 < d {
        return domain(format!("need 1 < d <= m+1, got m={m} d={d}"));
    }
    checked_count(2, m as u64, DEFAULT_MAX_STRINGS)?;
    Ok(all_strings(2, m).filter(|x| is_rll_prime(x, d)).collect())
}

/// D_1(S_n(d,inf)) = S_{n-1}(d,inf) + S'_{n-1}(d), checked by enumeration.
pub fn rll_decomposition_check(n: usize, d: usize) -> Result<bool> {
    let source = rll_set(RllSpec::unbounded(n, d)?)?;
    let mut lhs = StringSet::new();
    for x in source.iter() {
        lhs = lhs.union(&deletion_set(x, 1)?);
    }
    let plain = if n > d { rll_set(RllSpec::unbounded(n - 1, d)?)? } else { StringSet::new() };
    let prime = rll_prime_set(n - 1, d)?;
    Ok(!plain.intersects(&prime) && lhs == plain.union(&prime))
}

/// Number of strings in S_m(d,inf) with 2r+1 runs.
pub fn rll_count_with_runs(m: usize, d: usize, r: usize) -> num_bigint::BigUint {
    let (m, d, r) = (m as i64, d as i64, r as i64);
    binomial(m - 1 - r - (d - 1) * (r + 1), r)
}

/// Sum of 1/r(x) over D_1(S_n(d,inf)), by run-profile counting.
///
/// The two sums cover strings with at least three runs; when n = d the single
/// deletion 0^(d-1) has one run and contributes 1 on top.
pub fn rll_bound(n: usize, d: usize) -> Result<ExactRational> {
    RllSpec::unbounded(n, d)?;
    let (ni, di) = (n as i64, d as i64);
    let r_bar = (ni - 1 - di).div_euclid(di + 1);
    let r_bar_prime = (ni - di).div_euclid(di + 1);
    let mut total = ExactRational::zero();
    for r in 0..=r_bar {
        let count = binomial(ni - 2 - r - (di - 1) * (r + 1), r);
        total += from_uint(&count) / ratio(2 * r + 1, 1);
    }
    for r in 1..=r_bar_prime {
        let count = binomial(ni - 2 - r - (di - 1) * (r + 1), r - 1) * num_bigint::BigUint::from((r + 1) as u64);
        total += from_uint(&count) / ratio(2 * r + 1, 1);
    }
    if n == d {
        total += ratio(1, 1);
    }
    Ok(total)
}

/// Sum of 1/r(x) over S_{n-1}(d,inf) and S'_{n-1}(d), enumerated.
pub fn rll_direct_sum(n: usize, d: usize) -> Result<ExactRational> {
    RllSpec::unbounded(n, d)?;
    let plain = if n > d { rll_set(RllSpec::unbounded(n - 1, d)?)? } else { StringSet::new() };
    let prime = rll_prime_set(n - 1, d)?;
    Ok(plain.iter().chain(prime.iter()).map(|x| ratio(1, x.runs() as i64)).sum())
}

#[derive(Clone, Debug, Serialize)]
pub struct ConstrainedBounds {
    /// Entries: "constrained_lower", "constrained_upper", and when computed
    /// "fractional_matching" (exact LP) and "matching" (proven optimum).
    pub report: BoundReport,
    pub fractional_matching: Option<f64>,
    pub matching: Option<usize>,
    pub matching_proven: bool,
}

#[derive(Clone, Debug)]
pub struct ConstrainedOptions {
    pub limits: HypergraphLimits,
    pub lp: bool,
    pub exact_search: bool,
    pub budget_nodes: u64,
}

impl Default for ConstrainedOptions {
    fn default() -> Self {
        ConstrainedOptions {
            limits: HypergraphLimits::default(),
            lp: true,
            exact_search: true,
            budget_nodes: crate::exact::DEFAULT_BUDGET_NODES,
        }
    }
}

/// Greedy-style lower bound |S| / (C(n+s-1,s) iota(q,s,n)) and the transversal
/// upper bound sum over D_s(S) of 1/|D_s(x)|, plus the LP and exact matching.
pub fn constrained_bounds(set: &StringSet, s: usize, opts: &ConstrainedOptions) -> Result<ConstrainedBounds> {
    let Some(n) = set.uniform_length() else {
        return domain("source set must be nonempty with one string length");
    };
    if n < 2 * s {
        return domain(format!("need n >= 2s, got n={n} s={s}"));
    }
    let q = set.members()[0].q();
    let mut report = BoundReport::new(q as u64, s as u64, n as u64);
    let den = binomial((n + s - 1) as i64, s as i64) * iota(q as u64, s as u64, n as u64);
    report.insert("constrained_lower", ratio(set.len() as i64, 1) / from_uint(&den));

    let h = DeletionHypergraph::build_constrained(set, s, opts.limits)?;
    let mut upper = ExactRational::zero();
    for x in h.vertices().iter() {
        upper += ratio(1, deletion_set_size(x, s)? as i64);
    }
    report.insert("constrained_upper", upper);

    let mut out = ConstrainedBounds { report, fractional_matching: None, matching: None, matching_proven: false };
    if opts.lp {
        let sol = solve_fractional_matching(&h, &LpOptions { mode: LpMode::Exact, ..Default::default() })?;
        if sol.status == LpStatus::Optimal {
            out.fractional_matching = Some(sol.value);
            if let Some(v) = &sol.exact {
                out.report.insert("fractional_matching", v.clone());
            }
        }
    }
    if opts.exact_search && h.num_edges() <= DEFAULT_MAX_LINE_VERTICES {
        let g = LineGraph::from_hypergraph(&h, DEFAULT_MAX_LINE_VERTICES)?;
        let r = max_independent_set(&g, &MisOptions { budget_nodes: opts.budget_nodes, ..Default::default() })?;
        out.matching = Some(r.size);
        out.matching_proven = r.proven_optimal;
        if r.proven_optimal {
            out.report.insert("matching", ratio(r.size as i64, 1));
        }
    }
    Ok(out)
}

/// Checks lower <= matching <= fractional_matching <= upper on the entries present.
pub fn check_constrained_chain(b: &ConstrainedBounds) -> bool {
    let names = ["constrained_lower", "matching", "fractional_matching", "constrained_upper"];
    let vals: Vec<&ExactRational> = names.iter().filter_map(|k| b.report.get(k)).map(|e| &e.exact).collect();
    let ordered = vals.windows(2).all(|w| w[0] <= w[1]);
    let lp_ok = match (b.fractional_matching, b.report.get("constrained_upper"), b.matching) {
        (Some(v), Some(u), m) => v <= counting::to_f64(&u.exact) + 1e-6 && m.is_none_or(|m| m as f64 <= v + 1e-6),
        _ => true,
    };
    ordered && lp_ok
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(xs: &[&str]) -> StringSet {
        xs.iter().map(|t| QaryString::parse(2, t).unwrap()).collect()
    }

    #[test]
    fn small_sets() {
        assert_eq!(rll_set(RllSpec::unbounded(5, 2).unwrap()).unwrap(), set(&["00000", "00100"]));
        for d in 2..6 {
            assert_eq!(rll_set(RllSpec::unbounded(d, d).unwrap()).unwrap().len(), 1);
        }
        assert!(RllSpec::unbounded(5, 1).is_err());
        assert!(RllSpec::unbounded(3, 4).is_err());
    }

    #[test]
    fn finite_k_filters_long_runs() {
        let s = rll_set(RllSpec::new(7, 2, Some(3)).unwrap()).unwrap();
        assert_eq!(s, set(&["0001000"]));
    }

    #[test]
    fn run_counts_match_compositions() {
        for d in 2..=4 {
            for m in d..=14 {
                let s = rll_set(RllSpec::unbounded(m, d).unwrap()).unwrap();
                for r in 0..=m {
                    let by_enum = s.iter().filter(|x| x.runs() == 2 * r + 1).count();
                    assert_eq!(num_bigint::BigUint::from(by_enum), rll_count_with_runs(m, d, r), "m={m} d={d} r={r}");
                }
                assert!(s.iter().all(|x| x.runs() % 2 == 1 && x.runs() <= 2 * ((m - d) / (d + 1)) + 1));
            }
        }
    }

    #[test]
    fn prime_set_profile() {
        let p = rll_prime_set(5, 2).unwrap();
        assert_eq!(p, set(&["01000", "00010"]));
        for d in 2..=4 {
            for m in d..=12 {
                let p = rll_prime_set(m, d).unwrap();
                assert!(!p.intersects(&rll_set(RllSpec::unbounded(m, d).unwrap()).unwrap()));
                assert!(p.iter().all(|x| x.runs() % 2 == 1 && x.runs() >= 3));
            }
        }
        assert_eq!(rll_prime_set(2, 3).unwrap(), set(&["00"]));
    }

    #[test]
    fn rll_decomposition_examples() {
        assert!(rll_decomposition_check(5, 2).unwrap());
        assert!(rll_decomposition_check(8, 3).unwrap());
        assert!(rll_decomposition_check(12, 2).unwrap());
        assert!(rll_decomposition_check(3, 3).unwrap());
    }

    #[test]
    fn bound_examples() {
        assert_eq!(rll_bound(5, 2).unwrap(), ratio(5, 3));
        assert_eq!(rll_bound(4, 4).unwrap(), ratio(1, 1));
        for d in 2..=4 {
            for n in d..=12 {
                assert_eq!(rll_bound(n, d).unwrap(), rll_direct_sum(n, d).unwrap(), "n={n} d={d}");
            }
        }
    }

    #[test]
    fn constrained_full_space_matches_transversal_sum() {
        let all: StringSet = all_strings(2, 6).collect();
        let b = constrained_bounds(&all, 1, &ConstrainedOptions { exact_search: false, ..Default::default() }).unwrap();
        let t = crate::bounds::transversal_sum_bound(2, 1, 6, DEFAULT_MAX_STRINGS).unwrap();
        assert_eq!(b.report.get("constrained_upper").unwrap().exact, t);
    }

    #[test]
    fn constrained_singleton_and_rll() {
        let one = set(&["0110"]);
        let b = constrained_bounds(&one, 1, &ConstrainedOptions::default()).unwrap();
        assert_eq!(b.matching, Some(1));
        assert!(b.report.get("constrained_lower").unwrap().exact <= ratio(1, 1));
        assert!(b.report.get("constrained_upper").unwrap().exact >= ratio(1, 1));
        let s8 = rll_set(RllSpec::unbounded(8, 2).unwrap()).unwrap();
        let b = constrained_bounds(&s8, 1, &ConstrainedOptions::default()).unwrap();
        assert!(b.matching_proven);
        assert!(check_constrained_chain(&b));
    }
}
