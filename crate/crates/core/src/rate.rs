//! Upper bound on the asymptotic rate of codes correcting a fraction tau of deletions.
//!
//! For tau < 1/2 the bound is max over rho of N(rho; tau) - D(rho; tau), where N is the
//! exponent of the number of strings with rho*n runs and D is the exponent of the
//! smallest deletion set among them. Above 1/2 the trivial bound 1 - tau is used.
//! Results carry roughly 1e-5 absolute accuracy.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{domain, Result};

/// Coarse grid step for the outer maximization over rho.
pub const RHO_STEP: f64 = 1e-3;
const GOLDEN_TOL: f64 = 1e-10;

/// Binary entropy in bits, continuous at 0 and 1.
pub fn h(x: f64) -> f64 {
    let x = x.clamp(0.0, 1.0);
    let term = |p: f64| if p <= 0.0 { 0.0 } else { -p * p.log2() };
    term(x) + term(1.0 - x)
}

/// q-ary entropy: -x log_q x - (1-x) log_q(1-x) + x log_q(q-1).
pub fn h_q(x: f64, q: u32) -> f64 {
    let x = x.clamp(0.0, 1.0);
    let lq = (q as f64).log2();
    h(x) / lq + x * ((q - 1) as f64).log2() / lq
}

/// N(rho; tau) = (1 - tau) h_q(rho / (1 - tau)).
pub fn numerator_exponent(rho: f64, tau: f64, q: u32) -> f64 {
    if tau >= 1.0 {
        return 0.0;
    }
    (1.0 - tau) * h_q(rho / (1.0 - tau), q)
}

fn inner(mu: f64, rho: f64, q: u32) -> f64 {
    let gap = rho - mu;
    if gap <= 0.0 {
        return 0.0;
    }
    gap * h((mu / gap).min(0.5)) / (q as f64).log2()
}

/// D1(rho; tau): the inner maximand at mu = tau (zero unless rho > tau).
pub fn d1_exponent(rho: f64, tau: f64, q: u32) -> f64 {
    if rho <= tau {
        return 0.0;
    }
    inner(tau, rho, q)
}

fn golden_max(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64) -> (f64, f64) {
    let phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - phi * (b - a);
    let mut d = a + phi * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    while b - a > GOLDEN_TOL {
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + phi * (b - a);
            fd = f(d);
        }
    }
    let x = (a + b) / 2.0;
    (x, f(x))
}

/// D(rho; tau): max over mu in [max(2tau+rho-1, 0), min(tau, rho)] of the inner term.
/// The inner term is concave in mu, so golden-section search finds the maximum.
pub fn denominator_exponent(rho: f64, tau: f64, q: u32) -> f64 {
    let hi = tau.min(rho);
    let lo = (2.0 * tau + rho - 1.0).max(0.0).min(hi);
    if hi - lo <= GOLDEN_TOL {
        return inner(hi, rho, q);
    }
    let f = |mu: f64| inner(mu, rho, q);
    let (_, best) = golden_max(f, lo, hi);
    best.max(f(lo)).max(f(hi))
}

fn objective(rho: f64, tau: f64, q: u32) -> f64 {
    numerator_exponent(rho, tau, q) - denominator_exponent(rho, tau, q)
}

/// Upper bound on R_q(tau).
pub fn rate_bound(q: u32, tau: f64) -> Result<f64> {
    if q < 2 {
        return domain(format!("alphabet size must be at least 2, got {q}"));
    }
    if !(0.0..=1.0).contains(&tau) {
        return domain(format!("deletion fraction must lie in [0, 1], got {tau}"));
    }
    if tau >= 0.5 {
        return Ok(1.0 - tau);
    }
    let width = 1.0 - tau;
    let steps = (width / RHO_STEP).ceil() as usize;
    let grid: Vec<f64> = (0..=steps).map(|i| (i as f64 * RHO_STEP).min(width)).collect();
    let (mut best_i, mut best) = (0, f64::NEG_INFINITY);
    for (i, &rho) in grid.iter().enumerate() {
        let v = objective(rho, tau, q);
        if v > best {
            best = v;
            best_i = i;
        }
    }
    let a = grid[best_i.saturating_sub(1)];
    let b = grid[(best_i + 1).min(steps)];
    let (_, refined) = golden_max(|rho| objective(rho, tau, q), a, b);
    Ok(best.max(refined).clamp(0.0, 1.0))
}

#[derive(Clone, Debug, Serialize)]
pub struct RateCurve {
    pub q: u32,
    pub points: Vec<(f64, f64)>,
}

/// Where a curve bottoms out and how far it climbs afterwards.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct MinimumThenRise {
    pub tau_min: f64,
    pub bound_min: f64,
    pub rise: f64,
}

impl RateCurve {
    /// The global minimum and the largest later increase over it.
    pub fn minimum_then_rise(&self) -> Option<MinimumThenRise> {
        let (m, &(tau_min, bound_min)) = self
            .points
            .iter()
            .enumerate()
            .min_by(|a, b| a.1 .1.total_cmp(&b.1 .1).then(a.0.cmp(&b.0)))?;
        let rise = self.points[m..].iter().map(|p| p.1 - bound_min).fold(0.0, f64::max);
        Some(MinimumThenRise { tau_min, bound_min, rise })
    }

    /// True when the minimum is interior and the curve later climbs by more than `threshold`.
    pub fn has_minimum_then_increase(&self, threshold: f64) -> bool {
        match self.minimum_then_rise() {
            Some(mr) => {
                let last = self.points.last().map(|p| p.0).unwrap_or(0.0);
                mr.tau_min < last && mr.rise > threshold
            }
            None => false,
        }
    }
}

/// Evaluates the bound on each grid point (in parallel, order preserved).
pub fn rate_curve(q: u32, grid: &[f64]) -> Result<RateCurve> {
    if grid.windows(2).any(|w| w[1] <= w[0]) {
        return domain("rate grid must be strictly increasing");
    }
    let points = grid
        .par_iter()
        .map(|&tau| rate_bound(q, tau).map(|b| (tau, b)))
        .collect::<Result<Vec<_>>>()?;
    Ok(RateCurve { q, points })
}

/// `start, start+step, ...` strictly below `end`, computed by index to avoid drift.
pub fn uniform_grid(start: f64, end: f64, step: f64) -> Vec<f64> {
    (0..)
        .map(|i| start + i as f64 * step)
        .take_while(|&t| t < end - step * 1e-9)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn endpoints() {
        for q in 2..=5 {
            assert!((rate_bound(q, 0.0).unwrap() - 1.0).abs() < 1e-5);
            assert_eq!(rate_bound(q, 0.5).unwrap(), 0.5);
            assert_eq!(rate_bound(q, 0.75).unwrap(), 0.25);
            assert_eq!(rate_bound(q, 1.0).unwrap(), 0.0);
        }
        assert!(rate_bound(2, 1.5).is_err());
        assert!(rate_bound(2, -0.1).is_err());
    }

    #[test]
    fn binary_threshold_point() {
        assert!(rate_bound(2, 0.0757).unwrap() < 0.7729);
    }

    #[test]
    fn entropy_continuity() {
        assert_eq!(h(0.0), 0.0);
        assert_eq!(h(1.0), 0.0);
        assert!((h(0.5) - 1.0).abs() < 1e-15);
        assert!((h_q(2.0 / 3.0, 3) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn denominator_dominates_d1() {
        for q in 2..=5 {
            for i in 1..50 {
                let tau = i as f64 * 0.01;
                for j in 0..=100 {
                    let rho = (1.0 - tau) * j as f64 / 100.0;
                    if rho > tau && 2.0 * tau + rho - 1.0 <= tau {
                        let d = denominator_exponent(rho, tau, q);
                        assert!(d + 1e-12 >= d1_exponent(rho, tau, q), "q={q} tau={tau} rho={rho}");
                    }
                }
            }
        }
    }

    #[test]
    fn grid_is_index_based() {
        let g = uniform_grid(0.0, 0.5, 0.005);
        assert_eq!(g.len(), 100);
        assert!(g.last().copied().unwrap() < 0.5);
    }
}
