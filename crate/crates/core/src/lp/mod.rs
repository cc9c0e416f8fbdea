//! Fractional matching and transversal LPs of a deletion hypergraph.

pub mod mps;
pub mod problem;
pub mod simplex;
pub mod symmetry;

use num_rational::BigRational;
use serde::Serialize;

use crate::counting::{self, ExactRational};
use crate::error::{Error, Result};
use crate::hypergraph::{DeletionHypergraph, Side, WeightVector};
pub use problem::{LpProblem, RowKind, Sense};
use simplex::{SimplexOptions, SimplexResult, Status};
use symmetry::Folding;

/// Largest LP (in structural variables) solved in exact arithmetic.
pub const EXACT_MAX_VARS: usize = 1 << 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum LpMode {
    Float,
    Exact,
}

#[derive(Clone, Debug)]
pub struct LpOptions {
    pub mode: LpMode,
    /// Solve the orbit-folded LP instead of the full one.
    pub symmetry: bool,
    pub exact_max_vars: usize,
    pub simplex: SimplexOptions,
}

impl Default for LpOptions {
    fn default() -> Self {
        LpOptions { mode: LpMode::Float, symmetry: true, exact_max_vars: EXACT_MAX_VARS, simplex: SimplexOptions::default() }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    ResourceLimit,
}

#[derive(Clone, Debug)]
pub struct LpSolution {
    pub status: LpStatus,
    pub value: f64,
    /// Present when the optimum was obtained in exact arithmetic.
    pub exact: Option<ExactRational>,
    /// Primal weights over the full (unfolded) index space, verified feasible.
    pub weights: WeightVector,
    pub iterations: usize,
    pub lp_rows: usize,
    pub lp_cols: usize,
}

impl LpSolution {
    /// floor(value), taken exactly when possible and with a 1e-6 allowance otherwise.
    pub fn floor(&self) -> i64 {
        match &self.exact {
            Some(v) => counting::floor(v).try_into().unwrap_or(i64::MAX),
            None => (self.value + 1e-6).floor() as i64,
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "status": self.status,
            "value": self.value,
            "exact": self.exact.as_ref().map(counting::render),
            "side": self.weights.side,
            "iterations": self.iterations,
            "lp_rows": self.lp_rows,
            "lp_cols": self.lp_cols,
            "weights": self.weights.to_json(),
        })
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Kind {
    Matching,
    Transversal,
}

/// nu*(H): max 1'z subject to A z <= 1, z >= 0.
pub fn solve_fractional_matching(h: &DeletionHypergraph, opts: &LpOptions) -> Result<LpSolution> {
    solve_kind(h, opts, Kind::Matching)
}

/// tau*(H): min 1'w subject to A'w >= 1, w >= 0.
pub fn solve_fractional_transversal(h: &DeletionHypergraph, opts: &LpOptions) -> Result<LpSolution> {
    solve_kind(h, opts, Kind::Transversal)
}

fn solve_kind(h: &DeletionHypergraph, opts: &LpOptions, kind: Kind) -> Result<LpSolution> {
    let fold = if opts.symmetry { Folding::new(h) } else { Folding::identity(h) };
    let (lp, orbits, side) = match kind {
        Kind::Matching => (fold.matching_lp(h), &fold.edges, Side::Edges),
        Kind::Transversal => (fold.transversal_lp(h), &fold.vertices, Side::Vertices),
    };
    let float: SimplexResult<f64> = simplex::solve(&lp, &opts.simplex);
    let base = |status, value, exact, weights| LpSolution {
        status,
        value,
        exact,
        weights,
        iterations: float.iterations,
        lp_rows: lp.num_rows(),
        lp_cols: lp.num_cols(),
    };
    match float.status {
        Status::Optimal => {}
        Status::IterationLimit => {
            let w = WeightVector::float(side, Folding::expand(orbits, &float.x));
            return Ok(base(LpStatus::ResourceLimit, float.objective, None, w));
        }
        Status::Infeasible => {
            return Ok(base(LpStatus::Infeasible, f64::NAN, None, WeightVector::float(side, Vec::new())));
        }
        Status::Unbounded => return Err(Error::Internal(format!("LP {} reported unbounded", lp.name))),
    }

    if opts.mode == LpMode::Exact && lp.num_cols() <= opts.exact_max_vars {
        let exact: SimplexResult<BigRational> = simplex::solve_with_basis(&lp, Some(&float.basis), &opts.simplex);
        if exact.status != Status::Optimal {
            return Err(Error::Internal(format!("exact re-solve of {} ended with {:?}", lp.name, exact.status)));
        }
        let w = WeightVector::exact(side, Folding::expand(orbits, &exact.x));
        certify(h, &w, kind)?;
        let total = w.total_exact().expect("exact weights");
        if total != exact.objective {
            return Err(Error::Internal("expanded weight differs from folded objective".into()));
        }
        let mut sol = base(LpStatus::Optimal, counting::to_f64(&total), Some(total), w);
        sol.iterations += exact.iterations;
        return Ok(sol);
    }

    let w = snap(h, WeightVector::float(side, Folding::expand(orbits, &float.x)), kind)?;
    certify(h, &w, kind)?;
    Ok(base(LpStatus::Optimal, float.objective, None, w))
}

/// Clears tiny negatives and rescales so constraints hold despite rounding.
fn snap(h: &DeletionHypergraph, w: WeightVector, kind: Kind) -> Result<WeightVector> {
    let mut v: Vec<f64> = (0..w.len()).map(|i| w.get_f64(i).max(0.0)).collect();
    match kind {
        Kind::Matching => {
            let load = (0..h.num_vertices())
                .map(|x| h.vertex_edges(x).iter().map(|&e| v[e as usize]).sum::<f64>())
                .fold(0.0, f64::max);
            if load > 1.0 {
                v.iter_mut().for_each(|z| *z /= load);
            }
        }
        Kind::Transversal => {
            let cover = (0..h.num_edges())
                .map(|e| h.edge_vertices(e).iter().map(|&x| v[x as usize]).sum::<f64>())
                .fold(f64::INFINITY, f64::min);
            if cover < 1.0 && cover > 0.0 {
                v.iter_mut().for_each(|z| *z /= cover);
            }
        }
    }
    Ok(WeightVector::float(w.side, v))
}

fn certify(h: &DeletionHypergraph, w: &WeightVector, kind: Kind) -> Result<()> {
    let check = match kind {
        Kind::Matching => h.verify_matching(w)?,
        Kind::Transversal => h.verify_transversal(w)?,
    };
    if check.feasible {
        Ok(())
    } else {
        Err(Error::Internal(format!(
            "LP solution violates {} constraints (first: {:?})",
            check.violated.len(),
            check.violated.first()
        )))
    }
}

/// |nu* - tau*| for one instance, solving both LPs.
pub fn duality_gap(h: &DeletionHypergraph, opts: &LpOptions) -> Result<(LpSolution, LpSolution, f64)> {
    let m = solve_fractional_matching(h, opts)?;
    let t = solve_fractional_transversal(h, opts)?;
    let gap = match (&m.exact, &t.exact) {
        (Some(a), Some(b)) => counting::to_f64(&(a - b)).abs(),
        _ => (m.value - t.value).abs(),
    };
    Ok((m, t, gap))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::HypergraphLimits;

    fn h(q: u8, s: usize, n: usize) -> DeletionHypergraph {
        DeletionHypergraph::build(q, s, n, HypergraphLimits::default()).unwrap()
    }

    #[test]
    fn table_values_small() {
        let opts = LpOptions::default();
        assert_eq!(solve_fractional_matching(&h(2, 1, 8), &opts).unwrap().floor(), 30);
        assert_eq!(solve_fractional_matching(&h(3, 1, 4), &opts).unwrap().floor(), 12);
        assert_eq!(solve_fractional_matching(&h(5, 1, 3), &opts).unwrap().floor(), 11);
    }

    #[test]
    fn folded_equals_unfolded_exactly() {
        let exact = LpOptions { mode: LpMode::Exact, ..Default::default() };
        let plain = LpOptions { symmetry: false, ..exact.clone() };
        for (q, s, n) in [(2, 1, 5), (2, 1, 6), (3, 1, 4), (2, 2, 6)] {
            let g = h(q, s, n);
            let a = solve_fractional_matching(&g, &exact).unwrap();
            let b = solve_fractional_matching(&g, &plain).unwrap();
            assert_eq!(a.exact, b.exact, "q={q} s={s} n={n}");
            let t = solve_fractional_transversal(&g, &exact).unwrap();
            assert_eq!(a.exact, t.exact);
        }
    }

    #[test]
    fn degenerate_instance_with_empty_vertex() {
        let g = h(2, 1, 1);
        let sol = solve_fractional_matching(&g, &LpOptions { mode: LpMode::Exact, ..Default::default() }).unwrap();
        assert_eq!(sol.exact, Some(BigRational::from_integer(1.into())));
    }
}
