use crate::hypergraph::DeletionHypergraph;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sense {
    Maximize,
    Minimize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RowKind {
    /// sum <= rhs
    Le,
    /// sum >= rhs
    Ge,
}

/// A linear program with integer data, nonnegative variables and sparse columns.
#[derive(Clone, Debug, PartialEq)]
pub struct LpProblem {
    pub name: String,
    pub sense: Sense,
    pub objective: Vec<i64>,
    /// Column j as (row, coefficient) pairs sorted by row.
    pub columns: Vec<Vec<(u32, i64)>>,
    pub row_kinds: Vec<RowKind>,
    pub rhs: Vec<i64>,
    pub col_names: Vec<String>,
    pub row_names: Vec<String>,
    /// Marks the integer program (exported with integrality markers).
    pub integer: bool,
}

impl LpProblem {
    pub fn num_rows(&self) -> usize {
        self.rhs.len()
    }

    pub fn num_cols(&self) -> usize {
        self.columns.len()
    }

    pub fn nonzeros(&self) -> usize {
        self.columns.iter().map(Vec::len).sum()
    }

    /// Row-major copy of the constraint matrix.
    pub fn rows(&self) -> Vec<Vec<(u32, i64)>> {
        let mut rows = vec![Vec::new(); self.num_rows()];
        for (j, col) in self.columns.iter().enumerate() {
            for &(i, a) in col {
                rows[i as usize].push((j as u32, a));
            }
        }
        rows
    }

    /// max 1'z subject to A z <= 1, one variable per hyperedge and one row per vertex.
    pub fn matching(h: &DeletionHypergraph) -> Self {
        LpProblem {
            name: format!("matching_q{}_s{}_n{}", h.q(), h.s(), h.n()),
            sense: Sense::Maximize,
            objective: vec![1; h.num_edges()],
            columns: h.incidence().iter().map(|vs| vs.iter().map(|&v| (v, 1)).collect()).collect(),
            row_kinds: vec![RowKind::Le; h.num_vertices()],
            rhs: vec![1; h.num_vertices()],
            col_names: h.edges().iter().map(|y| format!("z{y}")).collect(),
            row_names: h.vertices().iter().map(|x| format!("v{x}")).collect(),
            integer: false,
        }
    }

    /// min 1'w subject to A' w >= 1, one variable per vertex and one row per hyperedge.
    pub fn transversal(h: &DeletionHypergraph) -> Self {
        LpProblem {
            name: format!("transversal_q{}_s{}_n{}", h.q(), h.s(), h.n()),
            sense: Sense::Minimize,
            objective: vec![1; h.num_vertices()],
            columns: (0..h.num_vertices()).map(|v| h.vertex_edges(v).iter().map(|&e| (e, 1)).collect()).collect(),
            row_kinds: vec![RowKind::Ge; h.num_edges()],
            rhs: vec![1; h.num_edges()],
            col_names: h.vertices().iter().map(|x| format!("w{x}")).collect(),
            row_names: h.edges().iter().map(|y| format!("e{y}")).collect(),
            integer: false,
        }
    }

    pub fn as_integer(mut self) -> Self {
        self.integer = true;
        self
    }

    /// Objective value of a point, evaluated in f64.
    pub fn evaluate(&self, x: &[f64]) -> f64 {
        self.objective.iter().zip(x).map(|(&c, &v)| c as f64 * v).sum()
    }
}
