//! Exact matching number via maximum independent sets in the line graph.
//!
//! Two hyperedges are adjacent when their deletion sets meet, so independent sets
//! are codes. The search is a bitset branch and bound in the style of MCQ: the
//! candidate set is greedily partitioned into cliques of the line graph, and a
//! branch is cut when the chosen set plus the number of cliques cannot beat the
//! incumbent.

use serde::Serialize;

use std::cell::Cell;
use std::rc::Rc;

use crate::error::{Error, Result};
use crate::hypergraph::DeletionHypergraph;
use crate::lp::simplex::{self, SimplexOptions, Status};
use crate::lp::symmetry::edge_stabilizer;
use crate::lp::{LpProblem, RowKind, Sense};
use crate::qary::{QaryString, StringSet};

/// Default cap on line-graph vertices.
pub const DEFAULT_MAX_LINE_VERTICES: usize = 1 << 14;
/// Default candidate count above which nodes get an LP bound.
pub const DEFAULT_LP_MIN_CANDIDATES: usize = 48;
/// Default search-node budget.
pub const DEFAULT_BUDGET_NODES: u64 = 10_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
struct Bits {
    words: Vec<u64>,
}

impl Bits {
    fn empty(n: usize) -> Self {
        Bits { words: vec![0; n.div_ceil(64)] }
    }
    fn full(n: usize) -> Self {
        let mut b = Self::empty(n);
        for i in 0..n {
            b.set(i);
        }
        b
    }
    fn set(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }
    fn clear(&mut self, i: usize) {
        self.words[i / 64] &= !(1 << (i % 64));
    }
    fn get(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }
    fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }
    fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }
    fn first(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(k, &w)| k * 64 + w.trailing_zeros() as usize)
    }
    fn and_assign(&mut self, o: &Bits) {
        for (a, b) in self.words.iter_mut().zip(&o.words) {
            *a &= b;
        }
    }
    fn and(&self, o: &Bits) -> Bits {
        let mut r = self.clone();
        r.and_assign(o);
        r
    }
    fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(k, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let t = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(k * 64 + t)
            })
        })
    }
}

/// Line graph of a deletion hypergraph: one vertex per hyperedge, adjacency when
/// the deletion sets intersect.
#[derive(Clone, Debug)]
pub struct LineGraph {
    adj: Vec<Bits>,
    labels: StringSet,
    // hyperedge -> hypergraph vertices, when built from a hypergraph
    cover: Vec<Vec<u32>>,
    cover_vertices: usize,
    // vertex permutations induced by symbol relabeling and reversal
    automorphisms: Vec<Vec<u32>>,
    pub s: usize,
    pub provenance: String,
}

impl LineGraph {
    pub fn from_hypergraph(h: &DeletionHypergraph, max_vertices: usize) -> Result<Self> {
        let n = h.num_edges();
        if n > max_vertices {
            return Err(Error::Resource { what: "line-graph vertices", needed: n as u128, cap: max_vertices as u128 });
        }
        let mut adj = vec![Bits::empty(n); n];
        for v in 0..h.num_vertices() {
            let clique = h.vertex_edges(v);
            for (i, &a) in clique.iter().enumerate() {
                for &b in &clique[i + 1..] {
                    adj[a as usize].set(b as usize);
                    adj[b as usize].set(a as usize);
                }
            }
        }
        let provenance = if h.is_complete() {
            format!("q={} s={} n={}", h.q(), h.s(), h.n())
        } else {
            format!("constrained s={} n={} |S|={}", h.s(), h.n(), n)
        };
        let cover = (0..n).map(|e| h.edge_vertices(e).to_vec()).collect();
        let labels = h.edges();
        let automorphisms = edge_stabilizer(h)
            .iter()
            .filter_map(|g| {
                let image: Option<Vec<u32>> =
                    labels.iter().map(|x| labels.index_of(&g.apply(x)).map(|i| i as u32)).collect();
                image.filter(|im| im.iter().enumerate().any(|(i, &j)| i != j as usize))
            })
            .collect();
        Ok(LineGraph {
            adj,
            labels: labels.clone(),
            cover,
            cover_vertices: h.num_vertices(),
            automorphisms,
            s: h.s(),
            provenance,
        })
    }

    /// A graph given by explicit edges; labels are the vertex names.
    pub fn from_edges(labels: StringSet, edges: &[(usize, usize)]) -> Self {
        let n = labels.len();
        let mut adj = vec![Bits::empty(n); n];
        for &(a, b) in edges {
            if a != b {
                adj[a].set(b);
                adj[b].set(a);
            }
        }
        LineGraph { adj, labels, cover: Vec::new(), cover_vertices: 0, automorphisms: Vec::new(), s: 0, provenance: "explicit".into() }
    }

    pub fn len(&self) -> usize {
        self.adj.len()
    }
    pub fn is_empty(&self) -> bool {
        self.adj.is_empty()
    }
    pub fn labels(&self) -> &StringSet {
        &self.labels
    }
    pub fn adjacent(&self, a: usize, b: usize) -> bool {
        self.adj[a].get(b)
    }
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count()
    }
    pub fn max_degree(&self) -> usize {
        (0..self.len()).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn is_independent(&self, set: &[usize]) -> bool {
        set.iter().enumerate().all(|(i, &a)| set[i + 1..].iter().all(|&b| a != b && !self.adjacent(a, b)))
    }

    fn witness(&self, idx: &[usize]) -> StringSet {
        idx.iter().map(|&i| self.labels.members()[i].clone()).collect::<Vec<QaryString>>().into_iter().collect()
    }
}

#[derive(Clone, Debug)]
pub struct MisOptions {
    pub budget_nodes: u64,
    /// Known upper bound (for example floor of the LP optimum); the search stops once it is met.
    pub root_upper_bound: Option<usize>,
    /// Known independent set used as the starting incumbent.
    pub initial: Option<Vec<usize>>,
    /// Solve a fractional matching LP at nodes with at least this many candidates
    /// (graphs built from a hypergraph only).
    pub lp_min_candidates: usize,
}

impl Default for MisOptions {
    fn default() -> Self {
        MisOptions { budget_nodes: DEFAULT_BUDGET_NODES, root_upper_bound: None, initial: None, lp_min_candidates: DEFAULT_LP_MIN_CANDIDATES }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct MisResult {
    pub size: usize,
    #[serde(skip)]
    pub witness: StringSet,
    pub witness_indices: Vec<usize>,
    pub proven_optimal: bool,
    /// Best upper bound established (equals `size` when proven optimal).
    pub upper_bound: usize,
    pub nodes: u64,
    /// Node LPs solved and their total simplex iterations.
    pub lp_solves: u64,
    pub lp_iterations: u64,
}

struct Search<'a> {
    g: &'a LineGraph,
    // relabeled graph: position -> original vertex
    order: Vec<usize>,
    adj: Vec<Bits>,
    non_adj: Vec<Bits>,
    cover: Vec<Vec<u32>>,
    best: Vec<usize>,
    nodes: u64,
    budget: u64,
    aborted: bool,
    target: usize,
    lp_min_candidates: usize,
    simplex: SimplexOptions,
    lp_solves: Cell<u64>,
    lp_iterations: Cell<u64>,
    // images of each position under the automorphisms, in positions
    images: Vec<Vec<usize>>,
}

/// Nonnegative weights on hypergraph vertices covering every candidate edge.
type Dual = Rc<Vec<f64>>;

impl Search<'_> {
    fn color_sort(&self, p: &Bits) -> (Vec<usize>, Vec<usize>) {
        let mut u = p.clone();
        let mut order = Vec::with_capacity(p.count());
        let mut colors = Vec::with_capacity(order.capacity());
        let mut k = 0;
        while !u.is_empty() {
            k += 1;
            let mut q = u.clone();
            while let Some(v) = q.first() {
                q.clear(v);
                u.clear(v);
                q.and_assign(&self.adj[v]);
                order.push(v);
                colors.push(k);
            }
        }
        (order, colors)
    }

    /// Vertices of the hypergraph touched by candidate edges.
    fn support(&self, p: &Bits) -> Vec<u32> {
        let mut seen = vec![false; self.g.cover_vertices];
        let mut out = Vec::new();
        for e in p.iter() {
            for &x in &self.cover[e] {
                if !seen[x as usize] {
                    seen[x as usize] = true;
                    out.push(x);
                }
            }
        }
        out
    }

    /// Weak-duality bound from weights that cover every candidate edge.
    fn dual_bound(&self, p: &Bits, w: &[f64]) -> f64 {
        self.support(p).iter().map(|&x| w[x as usize]).sum()
    }

    /// Solves the fractional matching LP on the candidates and returns a covering
    /// dual scaled to be feasible, with its value.
    fn node_lp(&self, p: &Bits) -> Option<(Dual, f64)> {
        let rows = self.support(p);
        let mut row_of = vec![u32::MAX; self.g.cover_vertices];
        for (i, &x) in rows.iter().enumerate() {
            row_of[x as usize] = i as u32;
        }
        let cols: Vec<usize> = p.iter().collect();
        let columns: Vec<Vec<(u32, i64)>> = cols
            .iter()
            .map(|&e| {
                let mut c: Vec<(u32, i64)> = self.cover[e].iter().map(|&x| (row_of[x as usize], 1)).collect();
                c.sort_unstable();
                c
            })
            .collect();
        let lp = LpProblem {
            name: String::new(),
            sense: Sense::Maximize,
            objective: vec![1; cols.len()],
            columns,
            row_kinds: vec![RowKind::Le; rows.len()],
            rhs: vec![1; rows.len()],
            col_names: vec![String::new(); cols.len()],
            row_names: vec![String::new(); rows.len()],
            integer: false,
        };
        let r = simplex::solve::<f64>(&lp, &self.simplex);
        self.lp_solves.set(self.lp_solves.get() + 1);
        self.lp_iterations.set(self.lp_iterations.get() + r.iterations as u64);
        if r.status != Status::Optimal {
            return None;
        }
        let mut w = vec![0.0; self.g.cover_vertices];
        for (i, &x) in rows.iter().enumerate() {
            w[x as usize] = r.y[i].max(0.0);
        }
        let min_cover = cols
            .iter()
            .map(|&e| self.cover[e].iter().map(|&x| w[x as usize]).sum::<f64>())
            .fold(f64::INFINITY, f64::min);
        if !(min_cover > 0.5) {
            return None;
        }
        let scale = (1.0 + 1e-9) / min_cover.min(1.0);
        w.iter_mut().for_each(|v| *v *= scale);
        let value = rows.iter().map(|&x| w[x as usize]).sum();
        Some((Rc::new(w), value))
    }

    /// Drops candidates whose reduced cost alone rules out beating the incumbent:
    /// a completion using y is worth at most bound - (w(y) - 1).
    fn fix_by_reduced_cost(&self, chosen: usize, p: &mut Bits, w: &[f64]) {
        let bound = self.dual_bound(p, w);
        let drop: Vec<usize> = p
            .iter()
            .filter(|&e| {
                let rc = self.cover[e].iter().map(|&x| w[x as usize]).sum::<f64>() - 1.0;
                self.cut(chosen, bound - rc)
            })
            .collect();
        for e in drop {
            p.clear(e);
        }
    }

    fn cut(&self, chosen: usize, bound: f64) -> bool {
        // the best completion is an integer no larger than bound
        (chosen as f64 + bound + 1e-7).floor() as usize <= self.best.len()
    }

    fn expand(&mut self, chosen: &mut Vec<usize>, mut p: Bits, mut dual: Option<Dual>) {
        self.nodes += 1;
        if self.nodes > self.budget {
            self.aborted = true;
            return;
        }
        if !self.cover.is_empty() {
            if let Some(w) = &dual {
                if self.cut(chosen.len(), self.dual_bound(&p, w)) {
                    return;
                }
            }
            if p.count() >= self.lp_min_candidates {
                if let Some((w, value)) = self.node_lp(&p) {
                    if self.cut(chosen.len(), value) {
                        return;
                    }
                    dual = Some(w);
                }
            }
            if let Some(w) = &dual {
                self.fix_by_reduced_cost(chosen.len(), &mut p, w);
                if p.is_empty() {
                    return;
                }
            }
        }
        let (order, colors) = self.color_sort(&p);
        for i in (0..order.len()).rev() {
            if chosen.len() + colors[i] <= self.best.len() || self.best.len() >= self.target {
                return;
            }
            let v = order[i];
            // at the root, every set through a vertex no longer in p is settled,
            // so v can be skipped when a symmetric image of it is settled
            if chosen.is_empty() && self.images[v].iter().any(|&u| !p.get(u)) {
                p.clear(v);
                continue;
            }
            chosen.push(v);
            let np = p.and(&self.non_adj[v]);
            if np.is_empty() {
                if chosen.len() > self.best.len() {
                    self.best = chosen.clone();
                }
            } else {
                self.expand(chosen, np, dual.clone());
            }
            chosen.pop();
            p.clear(v);
            if self.aborted {
                return;
            }
        }
    }
}

/// Maximum independent set by branch and bound, within a node budget.
pub fn max_independent_set(g: &LineGraph, opts: &MisOptions) -> Result<MisResult> {
    let n = g.len();
    if n == 0 {
        return Ok(MisResult { size: 0, witness: StringSet::new(), witness_indices: vec![], proven_optimal: true, upper_bound: 0, nodes: 0, lp_solves: 0, lp_iterations: 0 });
    }
    // fewest line-graph neighbours first (most non-neighbours), ties by rank
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (g.degree(v), v));
    let mut pos = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let mut adj = vec![Bits::empty(n); n];
    for (i, &v) in order.iter().enumerate() {
        for w in g.adj[v].iter() {
            adj[i].set(pos[w]);
        }
    }
    let all = Bits::full(n);
    let non_adj: Vec<Bits> = (0..n)
        .map(|i| {
            let mut b = all.clone();
            for (x, y) in b.words.iter_mut().zip(&adj[i].words) {
                *x &= !y;
            }
            b.clear(i);
            b
        })
        .collect();
    let cover = if g.cover.is_empty() { Vec::new() } else { order.iter().map(|&v| g.cover[v].clone()).collect() };

    let greedy = greedy_lower(g).1;
    let mut incumbent: Vec<usize> = greedy.iter().map(|&v| pos[v]).collect();
    if let Some(init) = &opts.initial {
        if init.iter().any(|&v| v >= n) || !g.is_independent(init) {
            return Err(Error::Domain("initial set is not independent".into()));
        }
        if init.len() > incumbent.len() {
            incumbent = init.iter().map(|&v| pos[v]).collect();
        }
    }
    let mut search = Search {
        g,
        order: order.clone(),
        adj,
        non_adj,
        cover,
        best: incumbent,
        nodes: 0,
        budget: opts.budget_nodes,
        aborted: false,
        target: opts.root_upper_bound.unwrap_or(usize::MAX),
        lp_min_candidates: opts.lp_min_candidates,
        simplex: SimplexOptions::default(),
        lp_solves: Cell::new(0),
        lp_iterations: Cell::new(0),
        images: (0..n)
            .map(|i| g.automorphisms.iter().map(|a| pos[a[order[i]] as usize]).filter(|&j| j != i).collect())
            .collect(),
    };
    let (_, root_colors) = search.color_sort(&all);
    let mut root_bound = root_colors.last().copied().unwrap_or(0).min(search.target);
    if !search.cover.is_empty() && n >= opts.lp_min_candidates {
        if let Some((_, value)) = search.node_lp(&all) {
            root_bound = root_bound.min((value + 1e-7).floor() as usize);
        }
    }
    search.target = root_bound;
    if search.best.len() < root_bound {
        search.expand(&mut Vec::new(), all, None);
    }
    let best: Vec<usize> = {
        let mut b: Vec<usize> = search.best.iter().map(|&i| search.order[i]).collect();
        b.sort_unstable();
        b
    };
    if !g.is_independent(&best) {
        return Err(Error::Internal("search returned a dependent set".into()));
    }
    let proven = !search.aborted || best.len() >= root_bound;
    Ok(MisResult {
        size: best.len(),
        witness: g.witness(&best),
        witness_indices: best.clone(),
        proven_optimal: proven,
        upper_bound: if proven { best.len() } else { root_bound },
        nodes: search.nodes,
        lp_solves: search.lp_solves.get(),
        lp_iterations: search.lp_iterations.get(),
    })
}

/// Min-degree greedy: repeatedly take a vertex of least remaining degree.
pub fn greedy_lower(g: &LineGraph) -> (usize, Vec<usize>) {
    let n = g.len();
    let mut alive = Bits::full(n);
    let mut picked = Vec::new();
    while !alive.is_empty() {
        let v = alive
            .iter()
            .min_by_key(|&v| (g.adj[v].and(&alive).count(), v))
            .expect("nonempty");
        picked.push(v);
        alive.clear(v);
        for w in g.adj[v].iter() {
            alive.clear(w);
        }
    }
    picked.sort_unstable();
    (picked.len(), picked)
}
