//! Two-phase revised simplex over a generic scalar field.
//!
//! The basis inverse is kept explicitly (column-major, dense storage) and updated by
//! product-form pivots that skip zero entries. Pricing is Dantzig's rule, switching
//! to Bland's rule after a run of degenerate pivots and back after the next
//! nondegenerate one, so the method cannot cycle.

use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::problem::{LpProblem, RowKind, Sense};

pub trait Scalar: Clone + std::fmt::Debug + Send + Sync {
    const EXACT: bool;
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn div(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn is_pos(&self) -> bool;
    fn is_neg(&self) -> bool;
    fn is_zero(&self) -> bool {
        !self.is_pos() && !self.is_neg()
    }
    /// Exactly zero, used to skip work in sparse updates.
    fn is_structural_zero(&self) -> bool;
    fn abs_f64(&self) -> f64 {
        self.to_f64().abs()
    }
    fn to_f64(&self) -> f64;
    fn less(&self, o: &Self) -> bool;
    fn snap(self) -> Self {
        self
    }
}

/// Tolerance for signs of reduced costs, pivots and basic values in f64 mode.
pub const EPS: f64 = 1e-9;

impl Scalar for f64 {
    const EXACT: bool = false;
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn from_i64(v: i64) -> Self {
        v as f64
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div(&self, o: &Self) -> Self {
        self / o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn is_pos(&self) -> bool {
        *self > EPS
    }
    fn is_neg(&self) -> bool {
        *self < -EPS
    }
    fn is_structural_zero(&self) -> bool {
        self.abs() < 1e-14
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn less(&self, o: &Self) -> bool {
        self < o
    }
    fn snap(self) -> Self {
        if self.abs() < 1e-13 {
            0.0
        } else {
            self
        }
    }
}

impl Scalar for BigRational {
    const EXACT: bool = true;
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(v.into())
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div(&self, o: &Self) -> Self {
        self / o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn is_pos(&self) -> bool {
        self.is_positive()
    }
    fn is_neg(&self) -> bool {
        self.is_negative()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_structural_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn to_f64(&self) -> f64 {
        crate::counting::to_f64(self)
    }
    fn less(&self, o: &Self) -> bool {
        self < o
    }
    fn abs_f64(&self) -> f64 {
        ToPrimitive::to_f64(&self.abs()).unwrap_or(f64::INFINITY)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Optimal,
    Infeasible,
    Unbounded,
    IterationLimit,
}

#[derive(Clone, Debug)]
pub struct SimplexOptions {
    pub max_iterations: usize,
    /// Consecutive degenerate pivots before switching to Bland's rule.
    pub degenerate_switch: usize,
    /// Pivots between residual checks (f64 only).
    pub check_every: usize,
    /// Always use Bland's rule.
    pub bland_only: bool,
}

impl Default for SimplexOptions {
    fn default() -> Self {
        SimplexOptions { max_iterations: 1_000_000, degenerate_switch: 50, check_every: 100, bland_only: false }
    }
}

#[derive(Clone, Debug)]
pub struct SimplexResult<T> {
    pub status: Status,
    /// Objective in the problem's own sense.
    pub objective: T,
    pub x: Vec<T>,
    /// Row duals in the problem's own sense (nonnegative for L rows of a max problem).
    pub y: Vec<T>,
    /// Basic variable per row, indices into structural ++ logical ++ artificial.
    pub basis: Vec<usize>,
    pub iterations: usize,
}

fn compare<T: Scalar>(a: &T, b: &T) -> std::cmp::Ordering {
    use std::cmp::Ordering;
    if T::EXACT {
        if a.less(b) {
            Ordering::Less
        } else if b.less(a) {
            Ordering::Greater
        } else {
            Ordering::Equal
        }
    } else {
        let d = a.to_f64() - b.to_f64();
        if d < -1e-12 {
            Ordering::Less
        } else if d > 1e-12 {
            Ordering::Greater
        } else {
            Ordering::Equal
        }
    }
}

struct Tableau<T: Scalar> {
    m: usize,
    n_struct: usize,
    art_start: usize,
    cols: Vec<Vec<(u32, T)>>,
    cost2: Vec<T>,
    rhs: Vec<T>,
    art_of_row: Vec<Option<usize>>,
    basis: Vec<usize>,
    pos: Vec<Option<usize>>,
    binv: Vec<T>,
    xb: Vec<T>,
    y: Vec<T>,
    cost: Vec<T>,
    allowed: Vec<bool>,
    iterations: usize,
}

enum Step {
    Pivoted { degenerate: bool },
    Optimal,
    Unbounded,
}

impl<T: Scalar> Tableau<T> {
    fn new(p: &LpProblem) -> Self {
        let m = p.num_rows();
        let n_struct = p.num_cols();
        let mut cols: Vec<Vec<(u32, T)>> = Vec::with_capacity(n_struct + 2 * m);
        // rows with negative rhs are negated so every rhs is nonnegative
        let flip: Vec<bool> = p.rhs.iter().map(|&b| b < 0).collect();
        for col in &p.columns {
            cols.push(
                col.iter()
                    .map(|&(i, a)| (i, T::from_i64(if flip[i as usize] { -a } else { a })))
                    .collect(),
            );
        }
        let kinds: Vec<RowKind> = p
            .row_kinds
            .iter()
            .zip(&flip)
            .map(|(&k, &f)| match (k, f) {
                (k, false) => k,
                (RowKind::Le, true) => RowKind::Ge,
                (RowKind::Ge, true) => RowKind::Le,
            })
            .collect();
        for (i, k) in kinds.iter().enumerate() {
            let sign = if *k == RowKind::Le { 1 } else { -1 };
            cols.push(vec![(i as u32, T::from_i64(sign))]);
        }
        let art_start = cols.len();
        let mut art_of_row = vec![None; m];
        for (i, k) in kinds.iter().enumerate() {
            if *k == RowKind::Ge {
                art_of_row[i] = Some(cols.len());
                cols.push(vec![(i as u32, T::one())]);
            }
        }
        let total = cols.len();
        let sign = if p.sense == Sense::Maximize { 1 } else { -1 };
        let mut cost2 = vec![T::zero(); total];
        for (j, &c) in p.objective.iter().enumerate() {
            cost2[j] = T::from_i64(sign * c);
        }
        let rhs: Vec<T> = p.rhs.iter().map(|&b| T::from_i64(b.abs())).collect();
        let basis: Vec<usize> = (0..m).map(|i| art_of_row[i].unwrap_or(n_struct + i)).collect();
        let mut t = Tableau {
            m,
            n_struct,
            art_start,
            cols,
            cost2,
            rhs,
            art_of_row,
            basis,
            pos: vec![None; total],
            binv: Vec::new(),
            xb: Vec::new(),
            y: Vec::new(),
            cost: vec![T::zero(); total],
            allowed: vec![true; total],
            iterations: 0,
        };
        t.reset_positions();
        t
    }

    fn reset_positions(&mut self) {
        self.pos.iter_mut().for_each(|p| *p = None);
        for (i, &b) in self.basis.iter().enumerate() {
            self.pos[b] = Some(i);
        }
    }

    fn is_art(&self, j: usize) -> bool {
        j >= self.art_start
    }

    /// Recomputes B^{-1}, x_B and duals from scratch. Returns false if B is singular.
    fn reinvert(&mut self) -> bool {
        let m = self.m;
        // a: row-major dense B, inv: row-major identity
        let mut a = vec![T::zero(); m * m];
        for (k, &j) in self.basis.iter().enumerate() {
            for (i, v) in &self.cols[j] {
                a[*i as usize * m + k] = v.clone();
            }
        }
        let mut inv = vec![T::zero(); m * m];
        for i in 0..m {
            inv[i * m + i] = T::one();
        }
        for c in 0..m {
            let piv = if T::EXACT {
                (c..m).find(|&r| !a[r * m + c].is_structural_zero())
            } else {
                (c..m)
                    .filter(|&r| !a[r * m + c].is_structural_zero())
                    .max_by(|&r, &s| a[r * m + c].abs_f64().total_cmp(&a[s * m + c].abs_f64()))
            };
            let Some(r) = piv else { return false };
            if !T::EXACT && a[r * m + c].abs_f64() < 1e-11 {
                return false;
            }
            if r != c {
                for k in 0..m {
                    a.swap(r * m + k, c * m + k);
                    inv.swap(r * m + k, c * m + k);
                }
            }
            let p = a[c * m + c].clone();
            let a_nz: Vec<usize> = (0..m).filter(|&k| !a[c * m + k].is_structural_zero()).collect();
            let i_nz: Vec<usize> = (0..m).filter(|&k| !inv[c * m + k].is_structural_zero()).collect();
            for &k in &a_nz {
                a[c * m + k] = a[c * m + k].div(&p);
            }
            for &k in &i_nz {
                inv[c * m + k] = inv[c * m + k].div(&p);
            }
            for r2 in 0..m {
                if r2 == c {
                    continue;
                }
                let f = a[r2 * m + c].clone();
                if f.is_structural_zero() {
                    continue;
                }
                for &k in &a_nz {
                    let v = a[r2 * m + k].sub(&f.mul(&a[c * m + k]));
                    a[r2 * m + k] = v.snap();
                }
                for &k in &i_nz {
                    let v = inv[r2 * m + k].sub(&f.mul(&inv[c * m + k]));
                    inv[r2 * m + k] = v.snap();
                }
            }
        }
        // store column-major: binv[k*m + i] = (B^-1)_{i,k}
        let mut binv = vec![T::zero(); m * m];
        for i in 0..m {
            for k in 0..m {
                binv[k * m + i] = std::mem::replace(&mut inv[i * m + k], T::zero());
            }
        }
        self.binv = binv;
        self.recompute_primal();
        self.recompute_duals();
        true
    }

    fn recompute_primal(&mut self) {
        let m = self.m;
        let mut xb = vec![T::zero(); m];
        for k in 0..m {
            if self.rhs[k].is_structural_zero() {
                continue;
            }
            for i in 0..m {
                let b = &self.binv[k * m + i];
                if !b.is_structural_zero() {
                    xb[i] = xb[i].add(&b.mul(&self.rhs[k]));
                }
            }
        }
        if !T::EXACT {
            for v in xb.iter_mut() {
                if v.is_zero() {
                    *v = T::zero();
                }
            }
        }
        self.xb = xb;
    }

    fn recompute_duals(&mut self) {
        let m = self.m;
        let cb: Vec<(usize, T)> = self
            .basis
            .iter()
            .enumerate()
            .filter(|(_, &j)| !self.cost[j].is_structural_zero())
            .map(|(i, &j)| (i, self.cost[j].clone()))
            .collect();
        self.y = (0..m)
            .map(|k| {
                cb.iter()
                    .fold(T::zero(), |acc, (i, c)| acc.add(&c.mul(&self.binv[k * m + i])))
            })
            .collect();
    }

    fn reduced_cost(&self, j: usize) -> T {
        self.cols[j]
            .iter()
            .fold(self.cost[j].clone(), |acc, (i, a)| acc.sub(&self.y[*i as usize].mul(a)))
    }

    fn ftran(&self, j: usize) -> Vec<T> {
        let m = self.m;
        let mut alpha = vec![T::zero(); m];
        for (k, a) in &self.cols[j] {
            let k = *k as usize;
            for i in 0..m {
                let b = &self.binv[k * m + i];
                if !b.is_structural_zero() {
                    alpha[i] = alpha[i].add(&b.mul(a));
                }
            }
        }
        alpha
    }

    fn price(&self, bland: bool) -> Option<(usize, T)> {
        let mut best: Option<(usize, T)> = None;
        for j in 0..self.cols.len() {
            if self.pos[j].is_some() || !self.allowed[j] {
                continue;
            }
            let d = self.reduced_cost(j);
            if !d.is_pos() {
                continue;
            }
            if bland {
                return Some((j, d));
            }
            if best.as_ref().is_none_or(|(_, b)| b.less(&d)) {
                best = Some((j, d));
            }
        }
        best
    }

    fn ratio_test(&self, alpha: &[T], bland: bool) -> Option<usize> {
        // basic artificials are pinned at zero and leave on any nonzero entry
        for i in 0..self.m {
            if self.is_art(self.basis[i]) && !self.allowed[self.basis[i]] && !alpha[i].is_zero() {
                return Some(i);
            }
        }
        let mut best: Option<(usize, T)> = None;
        for i in 0..self.m {
            if !alpha[i].is_pos() {
                continue;
            }
            let ratio = self.xb[i].div(&alpha[i]);
            let better = match &best {
                None => true,
                Some((bi, br)) => match compare(&ratio, br) {
                    std::cmp::Ordering::Less => true,
                    std::cmp::Ordering::Greater => false,
                    std::cmp::Ordering::Equal if bland => self.basis[i] < self.basis[*bi],
                    std::cmp::Ordering::Equal => alpha[*bi].abs_f64() < alpha[i].abs_f64(),
                },
            };
            if better {
                best = Some((i, ratio));
            }
        }
        best.map(|(i, _)| i)
    }

    fn pivot(&mut self, enter: usize, r: usize, alpha: &[T], d: &T) {
        let m = self.m;
        let ar = alpha[r].clone();
        let theta = self.xb[r].div(&ar);
        let alpha_nz: Vec<usize> = (0..m).filter(|&i| !alpha[i].is_structural_zero()).collect();
        if !theta.is_structural_zero() {
            for &i in &alpha_nz {
                self.xb[i] = self.xb[i].sub(&theta.mul(&alpha[i])).snap();
                if !T::EXACT && self.xb[i].is_zero() {
                    self.xb[i] = T::zero();
                }
            }
        }
        self.xb[r] = theta;
        let rho: Vec<(usize, T)> = (0..m)
            .map(|k| (k, self.binv[k * m + r].clone()))
            .filter(|(_, v)| !v.is_structural_zero())
            .collect();
        let dd = d.div(&ar);
        for (k, v) in &rho {
            self.y[*k] = self.y[*k].add(&dd.mul(v));
        }
        for (k, v) in &rho {
            let f = v.div(&ar);
            let col = &mut self.binv[k * m..(k + 1) * m];
            for &i in &alpha_nz {
                if i != r {
                    col[i] = col[i].sub(&f.mul(&alpha[i])).snap();
                }
            }
            col[r] = f;
        }
        let leave = self.basis[r];
        self.pos[leave] = None;
        self.basis[r] = enter;
        self.pos[enter] = Some(r);
        self.iterations += 1;
    }

    fn step(&mut self, bland: bool) -> Step {
        let Some((enter, d)) = self.price(bland) else { return Step::Optimal };
        let alpha = self.ftran(enter);
        let Some(r) = self.ratio_test(&alpha, bland) else { return Step::Unbounded };
        let degenerate = self.xb[r].is_zero();
        self.pivot(enter, r, &alpha, &d);
        Step::Pivoted { degenerate }
    }

    fn residual(&self) -> f64 {
        let mut r: Vec<f64> = self.rhs.iter().map(|v| v.to_f64()).collect();
        for (i, &j) in self.basis.iter().enumerate() {
            let x = self.xb[i].to_f64();
            for (k, a) in &self.cols[j] {
                r[*k as usize] -= a.to_f64() * x;
            }
        }
        r.iter().fold(0.0, |acc, v| acc.max(v.abs()))
    }

    fn run(&mut self, opts: &SimplexOptions) -> Status {
        let mut bland = opts.bland_only;
        let mut streak = 0usize;
        let mut rechecks = 0usize;
        let mut since_check = 0usize;
        loop {
            if self.iterations >= opts.max_iterations {
                return Status::IterationLimit;
            }
            match self.step(bland) {
                Step::Optimal => {
                    if T::EXACT || rechecks >= 3 {
                        return Status::Optimal;
                    }
                    // confirm on a fresh factorization before declaring optimality
                    rechecks += 1;
                    if !self.reinvert() {
                        return Status::Optimal;
                    }
                    if self.price(false).is_none() {
                        return Status::Optimal;
                    }
                }
                Step::Unbounded => return Status::Unbounded,
                Step::Pivoted { degenerate } => {
                    if degenerate {
                        streak += 1;
                        if streak >= opts.degenerate_switch {
                            bland = true;
                        }
                    } else {
                        streak = 0;
                        bland = opts.bland_only;
                    }
                    since_check += 1;
                    if !T::EXACT && since_check >= opts.check_every {
                        since_check = 0;
                        if self.residual() > 1e-9 {
                            self.reinvert();
                        } else {
                            self.recompute_duals();
                        }
                    }
                }
            }
        }
    }

    fn set_phase(&mut self, phase: u8) {
        let total = self.cols.len();
        for j in 0..total {
            let art = self.is_art(j);
            self.cost[j] = match (phase, art) {
                (1, true) => T::one().neg(),
                (1, false) => T::zero(),
                (_, true) => T::zero(),
                (_, false) => self.cost2[j].clone(),
            };
            self.allowed[j] = phase == 1 || !art;
        }
        if self.binv.len() == self.m * self.m {
            self.recompute_duals();
        }
    }

    fn objective_internal(&self) -> T {
        self.basis
            .iter()
            .zip(&self.xb)
            .fold(T::zero(), |acc, (&j, x)| acc.add(&self.cost[j].mul(x)))
    }

    /// Pivots basic artificials (at zero) out where a non-artificial column can replace them.
    fn drive_out_artificials(&mut self) {
        let m = self.m;
        for r in 0..m {
            if !self.is_art(self.basis[r]) {
                continue;
            }
            let rho: Vec<T> = (0..m).map(|k| self.binv[k * m + r].clone()).collect();
            let cand = (0..self.art_start).find(|&j| {
                self.pos[j].is_none()
                    && !self.cols[j]
                        .iter()
                        .fold(T::zero(), |acc, (i, a)| acc.add(&rho[*i as usize].mul(a)))
                        .is_zero()
            });
            if let Some(j) = cand {
                let alpha = self.ftran(j);
                let d = self.reduced_cost(j);
                self.pivot(j, r, &alpha, &d);
            }
        }
    }

    fn has_artificials(&self) -> bool {
        self.art_of_row.iter().any(Option::is_some)
    }
}

/// Solves `p` from the all-logical basis.
pub fn solve<T: Scalar>(p: &LpProblem, opts: &SimplexOptions) -> SimplexResult<T> {
    solve_with_basis(p, None, opts)
}

/// Solves `p`, starting from `start` when it is a nonsingular primal-feasible basis.
pub fn solve_with_basis<T: Scalar>(p: &LpProblem, start: Option<&[usize]>, opts: &SimplexOptions) -> SimplexResult<T> {
    let mut t: Tableau<T> = Tableau::new(p);
    let mut warm = false;
    if let Some(b) = start {
        if b.len() == t.m && b.iter().all(|&j| j < t.cols.len()) {
            let saved = std::mem::replace(&mut t.basis, b.to_vec());
            t.reset_positions();
            t.set_phase(2);
            let ok = t.reinvert()
                && t.xb.iter().all(|v| !v.is_neg())
                && t.basis.iter().zip(&t.xb).all(|(&j, v)| !t.is_art(j) || v.is_zero());
            if ok {
                warm = true;
            } else {
                t.basis = saved;
                t.reset_positions();
            }
        }
    }
    if !warm {
        t.set_phase(1);
        t.reinvert();
        if t.has_artificials() {
            let status = t.run(opts);
            if status == Status::IterationLimit {
                return finish(t, p, status);
            }
            if t.objective_internal().is_neg() {
                return finish(t, p, Status::Infeasible);
            }
            t.drive_out_artificials();
        }
        t.set_phase(2);
    }
    let status = t.run(opts);
    finish(t, p, status)
}

fn finish<T: Scalar>(t: Tableau<T>, p: &LpProblem, status: Status) -> SimplexResult<T> {
    let mut x = vec![T::zero(); t.n_struct];
    for (i, &j) in t.basis.iter().enumerate() {
        if j < t.n_struct {
            x[j] = t.xb[i].clone();
        }
    }
    let obj: T = x
        .iter()
        .zip(&p.objective)
        .fold(T::zero(), |acc, (v, &c)| acc.add(&v.mul(&T::from_i64(c))));
    let flip_sense = p.sense == Sense::Minimize;
    let y = t
        .y
        .iter()
        .zip(&p.rhs)
        .map(|(v, &b)| {
            let v = if b < 0 { v.neg() } else { v.clone() };
            if flip_sense {
                v.neg()
            } else {
                v
            }
        })
        .collect();
    SimplexResult { status, objective: obj, x, y, basis: t.basis, iterations: t.iterations }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(sense: Sense, obj: Vec<i64>, rows: Vec<(RowKind, Vec<i64>, i64)>) -> LpProblem {
        let n = obj.len();
        let mut columns = vec![Vec::new(); n];
        for (i, (_, coeffs, _)) in rows.iter().enumerate() {
            for (j, &a) in coeffs.iter().enumerate() {
                if a != 0 {
                    columns[j].push((i as u32, a));
                }
            }
        }
        LpProblem {
            name: "t".into(),
            sense,
            objective: obj,
            columns,
            row_kinds: rows.iter().map(|r| r.0).collect(),
            rhs: rows.iter().map(|r| r.2).collect(),
            col_names: (0..n).map(|j| format!("x{j}")).collect(),
            row_names: (0..rows.len()).map(|i| format!("r{i}")).collect(),
            integer: false,
        }
    }

    #[test]
    fn triangle_fractional_matching() {
        // edges {0,1},{1,2},{0,2}: nu* = 3/2
        let p = lp(
            Sense::Maximize,
            vec![1, 1, 1],
            vec![
                (RowKind::Le, vec![1, 0, 1], 1),
                (RowKind::Le, vec![1, 1, 0], 1),
                (RowKind::Le, vec![0, 1, 1], 1),
            ],
        );
        let f: SimplexResult<f64> = solve(&p, &SimplexOptions::default());
        assert_eq!(f.status, Status::Optimal);
        assert!((f.objective - 1.5).abs() < 1e-9);
        let e: SimplexResult<BigRational> = solve(&p, &SimplexOptions::default());
        assert_eq!(e.objective, BigRational::new(3.into(), 2.into()));
        let y: BigRational = e.y.iter().sum();
        assert_eq!(y, e.objective);
    }

    #[test]
    fn covering_needs_phase_one() {
        let p = lp(
            Sense::Minimize,
            vec![1, 1, 1],
            vec![
                (RowKind::Ge, vec![1, 1, 0], 1),
                (RowKind::Ge, vec![0, 1, 1], 1),
                (RowKind::Ge, vec![1, 0, 1], 1),
            ],
        );
        let e: SimplexResult<BigRational> = solve(&p, &SimplexOptions::default());
        assert_eq!(e.status, Status::Optimal);
        assert_eq!(e.objective, BigRational::new(3.into(), 2.into()));
        let f: SimplexResult<f64> = solve(&p, &SimplexOptions { bland_only: true, ..Default::default() });
        assert!((f.objective - 1.5).abs() < 1e-9);
    }

    #[test]
    fn detects_infeasible_and_unbounded() {
        let inf = lp(Sense::Minimize, vec![1], vec![(RowKind::Ge, vec![1], 2), (RowKind::Le, vec![1], 1)]);
        let r: SimplexResult<BigRational> = solve(&inf, &SimplexOptions::default());
        assert_eq!(r.status, Status::Infeasible);
        let unb = lp(Sense::Maximize, vec![1, 0], vec![(RowKind::Ge, vec![1, -1], 0)]);
        let r: SimplexResult<f64> = solve(&unb, &SimplexOptions::default());
        assert_eq!(r.status, Status::Unbounded);
    }

    #[test]
    fn warm_start_from_optimal_basis_needs_no_pivots() {
        let p = lp(
            Sense::Maximize,
            vec![3, 2],
            vec![(RowKind::Le, vec![1, 1], 4), (RowKind::Le, vec![1, 3], 6), (RowKind::Le, vec![1, 0], 3)],
        );
        let f: SimplexResult<f64> = solve(&p, &SimplexOptions::default());
        assert!((f.objective - 11.0).abs() < 1e-9);
        let e: SimplexResult<BigRational> = solve_with_basis(&p, Some(&f.basis), &SimplexOptions::default());
        assert_eq!(e.iterations, 0);
        assert_eq!(e.objective, BigRational::from_integer(11.into()));
    }
}
