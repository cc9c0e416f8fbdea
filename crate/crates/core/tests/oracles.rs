use delbound::bounds::{transversal_sum_bound, DEFAULT_MAX_STRINGS};
use delbound::counting::to_f64;
use delbound::exact::{max_independent_set, LineGraph, MisOptions};
use delbound::hypergraph::{DeletionHypergraph, HypergraphLimits};
use delbound::lp::{solve_fractional_matching, solve_fractional_transversal, LpMode, LpOptions};
use delbound::qary::{all_strings, deletion_set, edit_distance, QaryString};

const SMALL: &[(u8, usize, usize)] =
    &[(2, 1, 2), (2, 1, 3), (2, 1, 4), (2, 1, 5), (2, 1, 6), (2, 2, 4), (2, 2, 5), (2, 2, 6), (3, 1, 2), (3, 1, 3), (3, 2, 3), (4, 1, 3)];

/// Largest set of length-n strings with pairwise edit distance above 2s, by plain branching.
fn brute_code(q: u8, s: usize, n: usize) -> usize {
    let xs: Vec<QaryString> = all_strings(q, n).collect();
    assert!(xs.len() <= 64);
    let conflict: Vec<u64> = xs
        .iter()
        .map(|a| xs.iter().enumerate().filter(|(_, b)| edit_distance(a, b) <= 2 * s).fold(0, |m, (j, _)| m | 1 << j))
        .collect();
    fn go(cand: u64, size: usize, conflict: &[u64], best: &mut usize) {
        if cand == 0 {
            *best = (*best).max(size);
            return;
        }
        if size + cand.count_ones() as usize <= *best {
            return;
        }
        let v = cand.trailing_zeros() as usize;
        go(cand & !conflict[v], size + 1, conflict, best);
        go(cand & !(1 << v), size, conflict, best);
    }
    let mut best = 0;
    let all = if xs.len() == 64 { u64::MAX } else { (1u64 << xs.len()) - 1 };
    go(all, 0, &conflict, &mut best);
    best
}

fn hypergraph(q: u8, s: usize, n: usize) -> DeletionHypergraph {
    DeletionHypergraph::build(q, s, n, HypergraphLimits::default()).unwrap()
}

#[test]
fn exact_search_matches_brute_force() {
    for &(q, s, n) in SMALL {
        let g = LineGraph::from_hypergraph(&hypergraph(q, s, n), 1 << 14).unwrap();
        let r = max_independent_set(&g, &MisOptions::default()).unwrap();
        assert!(r.proven_optimal);
        assert_eq!(r.size, brute_code(q, s, n), "q={q} s={s} n={n}");
        for (i, a) in r.witness.iter().enumerate() {
            for b in r.witness.iter().skip(i + 1) {
                assert!(edit_distance(a, b) > 2 * s);
            }
        }
    }
}

#[test]
fn binary_single_deletion_optima() {
    let want = [2, 2, 4, 6, 10, 16, 30];
    for (n, &w) in (2..=8).zip(&want) {
        let g = LineGraph::from_hypergraph(&hypergraph(2, 1, n), 1 << 14).unwrap();
        assert_eq!(max_independent_set(&g, &MisOptions::default()).unwrap().size, w, "n={n}");
    }
}

#[test]
fn incidence_matches_direct_deletions() {
    for &(q, s, n) in SMALL {
        let h = hypergraph(q, s, n);
        assert_eq!(h.num_edges() as u64, (q as u64).pow(n as u32));
        assert_eq!(h.num_vertices() as u64, (q as u64).pow((n - s) as u32));
        for (e, y) in h.edges().iter().enumerate() {
            let got: Vec<&QaryString> = h.edge_vertices(e).iter().map(|&v| &h.vertices().members()[v as usize]).collect();
            let want = deletion_set(y, s).unwrap();
            assert_eq!(got, want.iter().collect::<Vec<_>>());
        }
    }
}

#[test]
fn lp_chain_holds_on_small_instances() {
    for &(q, s, n) in SMALL {
        let h = hypergraph(q, s, n);
        let nu = brute_code(q, s, n) as f64;
        let exact = LpOptions { mode: LpMode::Exact, ..LpOptions::default() };
        let m = solve_fractional_matching(&h, &exact).unwrap();
        let t = solve_fractional_transversal(&h, &exact).unwrap();
        assert_eq!(m.exact, t.exact, "strong duality q={q} s={s} n={n}");
        assert!(nu <= m.value + 1e-9);
        if n < 2 * s {
            continue;
        }

        let w = h.inverse_size_transversal().unwrap();
        assert!(h.verify_transversal(&w).unwrap().feasible);
        // Independent feasibility check from the deletion sets themselves.
        let vertex = |x: &QaryString| h.vertices().members().binary_search(x).unwrap();
        for y in h.edges().iter() {
            let cover: f64 = deletion_set(y, s).unwrap().iter().map(|x| w.get_f64(vertex(x))).sum();
            assert!(cover >= 1.0 - 1e-12);
        }
        let constructed = to_f64(&transversal_sum_bound(q as u64, s as u64, n as u64, DEFAULT_MAX_STRINGS).unwrap());
        assert!((w.total_f64() - constructed).abs() < 1e-9);
        assert!(t.value <= constructed + 1e-9);
    }
}

#[test]
fn float_and_exact_lp_agree() {
    for &(q, s, n) in SMALL {
        let h = hypergraph(q, s, n);
        let f = solve_fractional_matching(&h, &LpOptions::default()).unwrap();
        let e = solve_fractional_transversal(&h, &LpOptions { mode: LpMode::Exact, symmetry: false, ..LpOptions::default() }).unwrap();
        assert!((f.value - to_f64(e.exact.as_ref().unwrap())).abs() < 1e-7);
        assert!(h.verify_matching(&f.weights).unwrap().feasible);
    }
}
