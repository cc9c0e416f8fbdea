//! The deletion hypergraph and weight vectors over its vertices or edges.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::bounds::DEFAULT_MAX_STRINGS;
use crate::counting::{to_f64, ExactRational};
use crate::error::{domain, Error, Result};
use crate::qary::{all_strings, deletion_set, deletion_set_size, QaryString, StringSet};

/// Float weights within this slack of a constraint count as satisfying it.
pub const FEAS_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug)]
pub struct HypergraphLimits {
    /// Largest admissible number of hyperedges.
    pub max_edges: u64,
}

impl Default for HypergraphLimits {
    fn default() -> Self {
        HypergraphLimits { max_edges: DEFAULT_MAX_STRINGS }
    }
}

/// Vertices are strings of length n - s; edge y covers D_s(y).
#[derive(Clone, Debug)]
pub struct DeletionHypergraph {
    q: u8,
    s: usize,
    n: usize,
    vertices: StringSet,
    edges: StringSet,
    incidence: Vec<Vec<u32>>,
    vertex_edges: Vec<Vec<u32>>,
    complete: bool,
}

fn invert(incidence: &[Vec<u32>], nv: usize) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new(); nv];
    for (e, vs) in incidence.iter().enumerate() {
        for &v in vs {
            out[v as usize].push(e as u32);
        }
    }
    out
}

impl DeletionHypergraph {
    /// H(q, s, n) over all of F_q^n. `s = n` is allowed (one vertex, the empty string).
    pub fn build(q: u8, s: usize, n: usize, limits: HypergraphLimits) -> Result<Self> {
        if q < 2 {
            return domain(format!("alphabet size must be at least 2, got {q}"));
        }
        if s == 0 || s > n {
            return domain(format!("need 1 <= s <= n, got s={s} n={n}"));
        }
        let ne = crate::bounds::checked_count(q as u64, n as u64, limits.max_edges)?;
        let edges: Vec<QaryString> = all_strings(q, n).collect();
        let incidence: Vec<Vec<u32>> = edges
            .par_iter()
            .map(|y| {
                let d = deletion_set(y, s).expect("s <= n checked above");
                d.iter().map(|x| x.rank() as u32).collect()
            })
            .collect();
        let vertices: StringSet = all_strings(q, n - s).collect();
        let vertex_edges = invert(&incidence, vertices.len());
        debug_assert_eq!(edges.len() as u64, ne);
        Ok(DeletionHypergraph {
            q,
            s,
            n,
            vertices,
            edges: edges.into_iter().collect(),
            incidence,
            vertex_edges,
            complete: true,
        })
    }

    /// The partial hypergraph with edges S and vertices D_s(S).
    pub fn build_constrained(source: &StringSet, s: usize, limits: HypergraphLimits) -> Result<Self> {
        let Some(first) = source.members().first() else {
            return domain("source set is empty");
        };
        let Some(n) = source.uniform_length() else {
            return domain("source strings must share one length");
        };
        let q = first.q();
        if source.iter().any(|x| x.q() != q) {
            return domain("source strings must share one alphabet");
        }
        if s == 0 || s > n {
            return domain(format!("need 1 <= s <= n, got s={s} n={n}"));
        }
        if source.len() as u64 > limits.max_edges {
            return Err(Error::Resource {
                what: "hyperedges",
                needed: source.len() as u128,
                cap: limits.max_edges as u128,
            });
        }
        let dsets: Vec<StringSet> = source
            .members()
            .par_iter()
            .map(|y| deletion_set(y, s).expect("s <= n checked above"))
            .collect();
        let vertices: StringSet = dsets.iter().flat_map(|d| d.iter().cloned()).collect();
        let incidence: Vec<Vec<u32>> = dsets
            .iter()
            .map(|d| d.iter().map(|x| vertices.index_of(x).expect("vertex present") as u32).collect())
            .collect();
        let vertex_edges = invert(&incidence, vertices.len());
        Ok(DeletionHypergraph {
            q,
            s,
            n,
            vertices,
            edges: source.clone(),
            incidence,
            vertex_edges,
            complete: false,
        })
    }

    pub fn q(&self) -> u8 {
        self.q
    }
    pub fn s(&self) -> usize {
        self.s
    }
    pub fn n(&self) -> usize {
        self.n
    }
    pub fn vertices(&self) -> &StringSet {
        &self.vertices
    }
    pub fn edges(&self) -> &StringSet {
        &self.edges
    }
    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }
    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }
    /// True when the edge set is all of F_q^n.
    pub fn is_complete(&self) -> bool {
        self.complete
    }
    /// Sorted vertex indices covered by edge `e`.
    pub fn edge_vertices(&self, e: usize) -> &[u32] {
        &self.incidence[e]
    }
    /// Edge indices covering vertex `v`.
    pub fn vertex_edges(&self, v: usize) -> &[u32] {
        &self.vertex_edges[v]
    }
    pub fn incidence(&self) -> &[Vec<u32>] {
        &self.incidence
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.vertex_edges.iter().map(Vec::len).collect()
    }

    pub fn is_regular(&self) -> bool {
        let d = self.degrees();
        d.windows(2).all(|w| w[0] == w[1])
    }

    /// Number of vertices edges `a` and `b` share.
    pub fn shared(&self, a: usize, b: usize) -> usize {
        let (x, y) = (&self.incidence[a], &self.incidence[b]);
        let (mut i, mut j, mut k) = (0, 0, 0);
        while i < x.len() && j < y.len() {
            match x[i].cmp(&y[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    k += 1;
                    i += 1;
                    j += 1;
                }
            }
        }
        k
    }

    /// w(x) = 1/|D_s(x)|, checked feasible before it is returned.
    pub fn inverse_size_transversal(&self) -> Result<WeightVector> {
        if self.n < 2 * self.s {
            return domain(format!(
                "vertices of length {} have no {}-deletion set",
                self.n - self.s,
                self.s
            ));
        }
        let weights: Vec<ExactRational> = self
            .vertices
            .iter()
            .map(|x| {
                let d = deletion_set_size(x, self.s).expect("length checked");
                BigRational::new(BigInt::from(1), BigInt::from(d))
            })
            .collect();
        let w = WeightVector::exact(Side::Vertices, weights);
        let check = self.verify_transversal(&w)?;
        if !check.feasible {
            let e = check.violated[0];
            return Err(Error::Internal(format!(
                "reciprocal deletion-set weights leave edge {} uncovered",
                self.edges.members()[e]
            )));
        }
        Ok(w)
    }

    /// Checks sum_{x in D_s(y)} w(x) >= 1 for every edge y.
    pub fn verify_transversal(&self, w: &WeightVector) -> Result<Verification> {
        if w.side != Side::Vertices || w.len() != self.num_vertices() {
            return domain(format!(
                "transversal needs {} vertex weights, got {} {:?} weights",
                self.num_vertices(),
                w.len(),
                w.side
            ));
        }
        if !w.is_nonnegative() {
            return Ok(Verification::negative());
        }
        let violated = (0..self.num_edges())
            .filter(|&e| !w.covers(&self.incidence[e], Cmp::AtLeastOne))
            .collect();
        Ok(Verification::from_violations(violated))
    }

    /// Checks sum_{y covering x} z(y) <= 1 for every vertex x.
    pub fn verify_matching(&self, z: &WeightVector) -> Result<Verification> {
        if z.side != Side::Edges || z.len() != self.num_edges() {
            return domain(format!(
                "matching needs {} edge weights, got {} {:?} weights",
                self.num_edges(),
                z.len(),
                z.side
            ));
        }
        if !z.is_nonnegative() {
            return Ok(Verification::negative());
        }
        let violated = (0..self.num_vertices())
            .filter(|&v| !z.covers(&self.vertex_edges[v], Cmp::AtMostOne))
            .collect();
        Ok(Verification::from_violations(violated))
    }

    pub fn to_json(&self) -> serde_json::Value {
        #[derive(Serialize)]
        struct Edge {
            string: String,
            vertices: Vec<u32>,
        }
        #[derive(Serialize)]
        struct Dump {
            q: u8,
            s: usize,
            n: usize,
            vertices: Vec<String>,
            edges: Vec<Edge>,
        }
        let dump = Dump {
            q: self.q,
            s: self.s,
            n: self.n,
            vertices: self.vertices.iter().map(|x| x.to_string()).collect(),
            edges: self
                .edges
                .iter()
                .zip(&self.incidence)
                .map(|(y, vs)| Edge { string: y.to_string(), vertices: vs.clone() })
                .collect(),
        };
        serde_json::to_value(dump).expect("plain data serializes")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Side {
    Vertices,
    Edges,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Weights {
    Exact(Vec<ExactRational>),
    Float(Vec<f64>),
}

/// Nonnegative weights over the vertices (transversal) or edges (matching).
#[derive(Clone, Debug, PartialEq)]
pub struct WeightVector {
    pub side: Side,
    pub weights: Weights,
}

#[derive(Clone, Copy)]
enum Cmp {
    AtLeastOne,
    AtMostOne,
}

impl WeightVector {
    pub fn exact(side: Side, w: Vec<ExactRational>) -> Self {
        WeightVector { side, weights: Weights::Exact(w) }
    }
    pub fn float(side: Side, w: Vec<f64>) -> Self {
        WeightVector { side, weights: Weights::Float(w) }
    }
    pub fn zeros(side: Side, len: usize) -> Self {
        Self::exact(side, vec![ExactRational::zero(); len])
    }
    pub fn ones(side: Side, len: usize) -> Self {
        Self::exact(side, vec![BigRational::from_integer(1.into()); len])
    }
    /// 0/1 indicator of the given indices.
    pub fn indicator(side: Side, len: usize, members: impl IntoIterator<Item = usize>) -> Self {
        let mut w = vec![ExactRational::zero(); len];
        for i in members {
            w[i] = BigRational::from_integer(1.into());
        }
        Self::exact(side, w)
    }

    pub fn len(&self) -> usize {
        match &self.weights {
            Weights::Exact(w) => w.len(),
            Weights::Float(w) => w.len(),
        }
    }
    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
    pub fn is_exact(&self) -> bool {
        matches!(self.weights, Weights::Exact(_))
    }

    pub fn get_f64(&self, i: usize) -> f64 {
        match &self.weights {
            Weights::Exact(w) => to_f64(&w[i]),
            Weights::Float(w) => w[i],
        }
    }

    pub fn total_f64(&self) -> f64 {
        match &self.weights {
            Weights::Exact(w) => to_f64(&w.iter().sum()),
            Weights::Float(w) => w.iter().sum(),
        }
    }

    pub fn total_exact(&self) -> Option<ExactRational> {
        match &self.weights {
            Weights::Exact(w) => Some(w.iter().sum()),
            Weights::Float(_) => None,
        }
    }

    pub fn is_nonnegative(&self) -> bool {
        match &self.weights {
            Weights::Exact(w) => w.iter().all(|v| !v.is_negative()),
            Weights::Float(w) => w.iter().all(|&v| v >= -FEAS_TOL),
        }
    }

    fn covers(&self, idx: &[u32], cmp: Cmp) -> bool {
        match &self.weights {
            Weights::Exact(w) => {
                let sum: ExactRational = idx.iter().map(|&i| &w[i as usize]).sum();
                let one = BigRational::from_integer(1.into());
                match cmp {
                    Cmp::AtLeastOne => sum >= one,
                    Cmp::AtMostOne => sum <= one,
                }
            }
            Weights::Float(w) => {
                let sum: f64 = idx.iter().map(|&i| w[i as usize]).sum();
                match cmp {
                    Cmp::AtLeastOne => sum >= 1.0 - FEAS_TOL,
                    Cmp::AtMostOne => sum <= 1.0 + FEAS_TOL,
                }
            }
        }
    }

    /// index -> value map for JSON output.
    pub fn to_json(&self) -> serde_json::Value {
        let map: serde_json::Map<String, serde_json::Value> = match &self.weights {
            Weights::Exact(w) => w
                .iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .map(|(i, v)| (i.to_string(), serde_json::Value::String(crate::counting::render(v))))
                .collect(),
            Weights::Float(w) => w
                .iter()
                .enumerate()
                .filter(|(_, v)| **v != 0.0)
                .map(|(i, v)| (i.to_string(), serde_json::json!(v)))
                .collect(),
        };
        serde_json::Value::Object(map)
    }
}

/// Outcome of a feasibility check, listing violated constraint indices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verification {
    pub feasible: bool,
    pub violated: Vec<usize>,
    pub negative_entries: bool,
}

impl Verification {
    fn from_violations(violated: Vec<usize>) -> Self {
        Verification { feasible: violated.is_empty(), violated, negative_entries: false }
    }
    fn negative() -> Self {
        Verification { feasible: false, violated: Vec::new(), negative_entries: true }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::{single_deletion_bound, transversal_sum_bound};
    use crate::counting::iota;

    fn h(q: u8, s: usize, n: usize) -> DeletionHypergraph {
        DeletionHypergraph::build(q, s, n, HypergraphLimits::default()).unwrap()
    }

    #[test]
    fn small_instance_shape() {
        let g = h(2, 1, 3);
        assert_eq!(g.num_vertices(), 4);
        assert_eq!(g.num_edges(), 8);
        let e = g.edges().index_of(&QaryString::parse(2, "010").unwrap()).unwrap();
        let covered: Vec<String> = g.edge_vertices(e).iter().map(|&v| g.vertices().members()[v as usize].to_string()).collect();
        assert_eq!(covered, vec!["00", "01", "10"]);
    }

    #[test]
    fn regular_with_insertion_degree() {
        for n in 2..=10 {
            let g = h(2, 1, n);
            assert!(g.is_regular());
            assert_eq!(g.degrees()[0] as u64, iota(2, 1, n as u64).try_into().unwrap_or(0u64));
        }
        let g = h(3, 2, 5);
        assert!(g.degrees().iter().all(|&d| d as u64 == 1 + 5 * 2 + 10 * 4));
    }

    #[test]
    fn incidence_sizes_match_runs() {
        let g = h(2, 1, 7);
        for (e, y) in g.edges().iter().enumerate() {
            assert_eq!(g.edge_vertices(e).len(), y.runs());
        }
        let g = h(2, 2, 4);
        let sizes: Vec<usize> = (0..g.num_edges()).map(|e| g.edge_vertices(e).len()).collect();
        assert_eq!(*sizes.iter().min().unwrap(), 1);
        assert_eq!(*sizes.iter().max().unwrap(), 4);
    }

    #[test]
    fn inverse_size_transversal_weight() {
        for n in 2..=12u64 {
            let g = h(2, 1, n as usize);
            let w = g.inverse_size_transversal().unwrap();
            assert_eq!(w.total_exact().unwrap(), single_deletion_bound(2, n).unwrap());
        }
        let g = h(3, 2, 6);
        let w = g.inverse_size_transversal().unwrap();
        assert_eq!(w.total_exact().unwrap(), transversal_sum_bound(3, 2, 6, 1 << 20).unwrap());
    }

    #[test]
    fn trivial_weight_vectors() {
        let g = h(2, 1, 5);
        let zero = WeightVector::zeros(Side::Vertices, g.num_vertices());
        let v = g.verify_transversal(&zero).unwrap();
        assert!(!v.feasible);
        assert_eq!(v.violated.len(), g.num_edges());
        assert!(g.verify_transversal(&WeightVector::ones(Side::Vertices, g.num_vertices())).unwrap().feasible);
        assert!(g.verify_matching(&WeightVector::zeros(Side::Edges, g.num_edges())).unwrap().feasible);
        assert!(g.verify_matching(&zero).is_err());
        let pair = ["000", "001"].map(|t| g.edges().index_of(&QaryString::parse(2, &format!("00{t}")).unwrap()).unwrap());
        assert!(!g.verify_matching(&WeightVector::indicator(Side::Edges, g.num_edges(), pair)).unwrap().feasible);
    }

    #[test]
    fn constrained_on_everything_equals_full() {
        let full = h(3, 1, 4);
        let all: StringSet = all_strings(3, 4).collect();
        let part = DeletionHypergraph::build_constrained(&all, 1, HypergraphLimits::default()).unwrap();
        assert_eq!(full.vertices(), part.vertices());
        assert_eq!(full.incidence(), part.incidence());
        let single: StringSet = [QaryString::parse(2, "01101").unwrap()].into_iter().collect();
        let one = DeletionHypergraph::build_constrained(&single, 2, HypergraphLimits::default()).unwrap();
        assert_eq!(one.num_edges(), 1);
        assert_eq!(one.edge_vertices(0).len(), deletion_set(&single.members()[0], 2).unwrap().len());
        assert!(DeletionHypergraph::build_constrained(&StringSet::new(), 1, HypergraphLimits::default()).is_err());
    }

    #[test]
    fn caps_and_degenerate_sizes() {
        let r = DeletionHypergraph::build(2, 1, 12, HypergraphLimits { max_edges: 1000 });
        assert!(matches!(r, Err(Error::Resource { .. })));
        let g = h(2, 1, 1);
        assert_eq!(g.num_vertices(), 1);
        assert_eq!(g.num_edges(), 2);
    }
}
