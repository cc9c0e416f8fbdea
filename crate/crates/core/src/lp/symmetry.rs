//! Folding the matching and transversal LPs by the symbol-permutation and reversal symmetry.
//!
//! Deletion commutes with relabeling symbols and with reversal, so averaging an
//! optimal solution over the group keeps it optimal. The folded LP has one
//! variable per orbit; coefficients count orbit members meeting a representative.

use std::collections::BTreeMap;

use super::problem::{LpProblem, RowKind, Sense};
use crate::hypergraph::DeletionHypergraph;
use crate::qary::{QaryString, StringSet};

/// A symbol permutation, optionally followed by reversal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Symmetry {
    pub perm: Vec<u8>,
    pub reverse: bool,
}

impl Symmetry {
    pub fn apply(&self, x: &QaryString) -> QaryString {
        let y = x.relabeled(&self.perm);
        if self.reverse {
            y.reversed()
        } else {
            y
        }
    }
}

fn permutations(q: u8) -> Vec<Vec<u8>> {
    fn go(prefix: &mut Vec<u8>, used: &mut Vec<bool>, out: &mut Vec<Vec<u8>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for c in 0..used.len() {
            if !used[c] {
                used[c] = true;
                prefix.push(c as u8);
                go(prefix, used, out);
                prefix.pop();
                used[c] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; q as usize], &mut out);
    out
}

/// All symbol permutations times {identity, reversal}.
pub fn full_group(q: u8) -> Vec<Symmetry> {
    permutations(q)
        .into_iter()
        .flat_map(|perm| [false, true].map(|reverse| Symmetry { perm: perm.clone(), reverse }))
        .collect()
}

/// Group elements mapping the edge set of `h` onto itself.
pub fn edge_stabilizer(h: &DeletionHypergraph) -> Vec<Symmetry> {
    let group = full_group(h.q());
    if h.is_complete() {
        return group;
    }
    group
        .into_iter()
        .filter(|g| h.edges().iter().all(|y| h.edges().contains(&g.apply(y))))
        .collect()
}

#[derive(Clone, Debug)]
pub struct Orbits {
    /// Orbit id of each element.
    pub orbit_of: Vec<u32>,
    /// Members of each orbit; the first is the representative.
    pub members: Vec<Vec<u32>>,
}

fn orbits(set: &StringSet, group: &[Symmetry], by_rank: bool) -> Orbits {
    let mut orbit_of = vec![u32::MAX; set.len()];
    let mut members = Vec::new();
    for (i, x) in set.iter().enumerate() {
        if orbit_of[i] != u32::MAX {
            continue;
        }
        let id = members.len() as u32;
        let mut orbit = Vec::new();
        for g in group {
            let y = g.apply(x);
            let j = if by_rank { y.rank() as usize } else { set.index_of(&y).expect("set is invariant") };
            if orbit_of[j] == u32::MAX {
                orbit_of[j] = id;
                orbit.push(j as u32);
            }
        }
        orbit.sort_unstable();
        members.push(orbit);
    }
    Orbits { orbit_of, members }
}

/// Orbits of the edges and vertices under the stabilizer of the edge set.
#[derive(Clone, Debug)]
pub struct Folding {
    pub group_order: usize,
    pub edges: Orbits,
    pub vertices: Orbits,
}

impl Folding {
    pub fn new(h: &DeletionHypergraph) -> Self {
        let group = edge_stabilizer(h);
        let by_rank = h.is_complete();
        Folding {
            group_order: group.len(),
            edges: orbits(h.edges(), &group, by_rank),
            vertices: orbits(h.vertices(), &group, by_rank),
        }
    }

    /// Trivial folding: every element its own orbit.
    pub fn identity(h: &DeletionHypergraph) -> Self {
        let single = |n: usize| Orbits { orbit_of: (0..n as u32).collect(), members: (0..n as u32).map(|i| vec![i]).collect() };
        Folding { group_order: 1, edges: single(h.num_edges()), vertices: single(h.num_vertices()) }
    }

    fn grouped(counts: impl Iterator<Item = u32>, orbit_of: &[u32]) -> Vec<(u32, i64)> {
        let mut acc: BTreeMap<u32, i64> = BTreeMap::new();
        for k in counts {
            *acc.entry(orbit_of[k as usize]).or_default() += 1;
        }
        acc.into_iter().collect()
    }

    /// max sum |O| z_O subject to, for each vertex orbit, sum_O c(x, O) z_O <= 1.
    pub fn matching_lp(&self, h: &DeletionHypergraph) -> LpProblem {
        let nrows = self.vertices.members.len();
        let mut columns = vec![Vec::new(); self.edges.members.len()];
        for (r, vorb) in self.vertices.members.iter().enumerate() {
            let rep = vorb[0] as usize;
            for (o, c) in Self::grouped(h.vertex_edges(rep).iter().copied(), &self.edges.orbit_of) {
                columns[o as usize].push((r as u32, c));
            }
        }
        LpProblem {
            name: format!("matching_q{}_s{}_n{}_folded", h.q(), h.s(), h.n()),
            sense: Sense::Maximize,
            objective: self.edges.members.iter().map(|m| m.len() as i64).collect(),
            columns,
            row_kinds: vec![RowKind::Le; nrows],
            rhs: vec![1; nrows],
            col_names: self.edges.members.iter().map(|m| format!("z{}", h.edges().members()[m[0] as usize])).collect(),
            row_names: self.vertices.members.iter().map(|m| format!("v{}", h.vertices().members()[m[0] as usize])).collect(),
            integer: false,
        }
    }

    /// min sum |V| w_V subject to, for each edge orbit, sum_V |D(y) cap V| w_V >= 1.
    pub fn transversal_lp(&self, h: &DeletionHypergraph) -> LpProblem {
        let nrows = self.edges.members.len();
        let mut columns = vec![Vec::new(); self.vertices.members.len()];
        for (r, eorb) in self.edges.members.iter().enumerate() {
            let rep = eorb[0] as usize;
            for (o, c) in Self::grouped(h.edge_vertices(rep).iter().copied(), &self.vertices.orbit_of) {
                columns[o as usize].push((r as u32, c));
            }
        }
        LpProblem {
            name: format!("transversal_q{}_s{}_n{}_folded", h.q(), h.s(), h.n()),
            sense: Sense::Minimize,
            objective: self.vertices.members.iter().map(|m| m.len() as i64).collect(),
            columns,
            row_kinds: vec![RowKind::Ge; nrows],
            rhs: vec![1; nrows],
            col_names: self.vertices.members.iter().map(|m| format!("w{}", h.vertices().members()[m[0] as usize])).collect(),
            row_names: self.edges.members.iter().map(|m| format!("e{}", h.edges().members()[m[0] as usize])).collect(),
            integer: false,
        }
    }

    /// Spreads orbit values back to every member.
    pub fn expand<T: Clone>(orbits: &Orbits, values: &[T]) -> Vec<T> {
        orbits.orbit_of.iter().map(|&o| values[o as usize].clone()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::HypergraphLimits;

    #[test]
    fn group_orders() {
        assert_eq!(full_group(2).len(), 4);
        assert_eq!(full_group(3).len(), 12);
        assert_eq!(full_group(5).len(), 240);
    }

    #[test]
    fn orbits_partition_and_sizes() {
        let h = DeletionHypergraph::build(2, 1, 6, HypergraphLimits::default()).unwrap();
        let f = Folding::new(&h);
        let total: usize = f.edges.members.iter().map(Vec::len).sum();
        assert_eq!(total, 64);
        assert!(f.edges.members.iter().all(|m| [1, 2, 4].contains(&m.len())));
        let h3 = DeletionHypergraph::build(3, 1, 4, HypergraphLimits::default()).unwrap();
        let f3 = Folding::new(&h3);
        let total: usize = f3.vertices.members.iter().map(Vec::len).sum();
        assert_eq!(total, 27);
    }

    #[test]
    fn folded_rows_are_consistent_across_orbit() {
        // every vertex in an orbit sees the same orbit counts
        let h = DeletionHypergraph::build(3, 1, 5, HypergraphLimits::default()).unwrap();
        let f = Folding::new(&h);
        for orb in &f.vertices.members {
            let counts: Vec<_> = orb.iter().map(|&v| Folding::grouped(h.vertex_edges(v as usize).iter().copied(), &f.edges.orbit_of)).collect();
            assert!(counts.windows(2).all(|w| w[0] == w[1]));
        }
    }
}
