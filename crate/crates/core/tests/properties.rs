use delbound::codebooks::{verify_codebook, Codebook, Provenance};
use delbound::counting::{iota, parse_rational, ratio, render};
use delbound::exact::{max_independent_set, LineGraph, MisOptions};
use delbound::lp::mps::{parse_mps, write_mps};
use delbound::lp::{LpProblem, RowKind, Sense};
use delbound::qary::{
    all_strings, deletion_set, deletion_set_size, edit_distance, insertion_set, is_subsequence, lcs_len, QaryString,
    StringSet,
};
use proptest::prelude::*;

fn qary(max_q: u8, max_len: usize) -> impl Strategy<Value = QaryString> {
    (2..=max_q).prop_flat_map(move |q| {
        prop::collection::vec(0..q, 0..=max_len).prop_map(move |v| QaryString::new(q, v).unwrap())
    })
}

fn pair(max_q: u8, max_len: usize) -> impl Strategy<Value = (QaryString, QaryString)> {
    (2..=max_q).prop_flat_map(move |q| {
        let s = prop::collection::vec(0..q, 0..=max_len);
        (s.clone(), s).prop_map(move |(a, b)| (QaryString::new(q, a).unwrap(), QaryString::new(q, b).unwrap()))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn deletion_count_matches_enumeration(x in qary(4, 11), s in 0usize..4) {
        prop_assume!(s <= x.len());
        prop_assert_eq!(deletion_set_size(&x, s).unwrap(), deletion_set(&x, s).unwrap().len() as u64);
    }

    #[test]
    fn single_deletions_equal_runs(x in qary(5, 14)) {
        prop_assume!(!x.is_empty());
        prop_assert_eq!(deletion_set(&x, 1).unwrap().len(), x.runs());
    }

    #[test]
    fn insertion_size_is_iota(x in qary(4, 8), s in 0usize..3) {
        let want = iota(x.q() as u64, s as u64, (x.len() + s) as u64);
        prop_assert_eq!(num_bigint::BigUint::from(insertion_set(&x, s).len()), want);
    }

    #[test]
    fn deletion_and_insertion_are_inverse(x in qary(3, 7), s in 1usize..3) {
        prop_assume!(s <= x.len());
        for y in deletion_set(&x, s).unwrap().iter() {
            prop_assert!(is_subsequence(y, &x));
            prop_assert!(insertion_set(y, s).contains(&x));
        }
    }

    #[test]
    fn edit_distance_is_a_metric((a, b) in pair(3, 10), c in prop::collection::vec(0u8..2, 0..10)) {
        let c = QaryString::new(a.q(), c).unwrap();
        prop_assert_eq!(edit_distance(&a, &b), edit_distance(&b, &a));
        prop_assert_eq!(edit_distance(&a, &a), 0);
        prop_assert!(edit_distance(&a, &c) <= edit_distance(&a, &b) + edit_distance(&b, &c));
        prop_assert_eq!(edit_distance(&a, &b), a.len() + b.len() - 2 * lcs_len(a.symbols(), b.symbols()));
    }

    #[test]
    fn close_iff_deletion_sets_meet(
        (a, b) in (2u8..=3, 2usize..9).prop_flat_map(|(q, n)| {
            let s = prop::collection::vec(0..q, n);
            (s.clone(), s).prop_map(move |(a, b)| (QaryString::new(q, a).unwrap(), QaryString::new(q, b).unwrap()))
        }),
        s in 1usize..3,
    ) {
        let meet = deletion_set(&a, s).unwrap().intersects(&deletion_set(&b, s).unwrap());
        prop_assert_eq!(edit_distance(&a, &b) <= 2 * s, meet);
    }

    #[test]
    fn rank_roundtrip(x in qary(5, 12)) {
        prop_assert_eq!(QaryString::from_rank(x.q(), x.len(), x.rank()), x);
    }

    #[test]
    fn text_roundtrip(xs in prop::collection::vec(prop::collection::vec(0u8..3, 5), 0..20)) {
        let set: StringSet = xs.into_iter().map(|v| QaryString::new(3, v).unwrap()).collect();
        prop_assert_eq!(StringSet::from_text(3, &set.to_text()).unwrap(), set);
    }

    #[test]
    fn rational_roundtrip(a in -10_000i64..10_000, b in 1i64..10_000) {
        let v = ratio(a, b);
        prop_assert_eq!(parse_rational(&render(&v)).unwrap(), v);
    }

    #[test]
    fn verify_agrees_with_pairwise_check(picks in prop::collection::btree_set(0u64..64, 1..12)) {
        let set: StringSet = picks.iter().map(|&r| QaryString::from_rank(2, 6, r)).collect();
        let c = Codebook::new(2, 1, set.clone(), Provenance::User).unwrap();
        let m = set.members();
        let brute = (0..m.len()).all(|i| (i + 1..m.len()).all(|j| edit_distance(&m[i], &m[j]) > 2));
        prop_assert_eq!(verify_codebook(&c).unwrap().valid, brute);
    }

    #[test]
    fn mps_roundtrip(
        rows in 1usize..6,
        cols in prop::collection::vec(prop::collection::vec((0u32..6, -5i64..6), 0..5), 1..6),
        max in any::<bool>(),
        integer in any::<bool>(),
    ) {
        let columns: Vec<Vec<(u32, i64)>> = cols
            .iter()
            .map(|c| {
                let mut c: Vec<(u32, i64)> = c.iter().filter(|&&(i, a)| (i as usize) < rows && a != 0).copied().collect();
                c.sort_unstable();
                c.dedup_by_key(|e| e.0);
                c
            })
            .collect();
        let n = columns.len();
        let p = LpProblem {
            name: "t".into(),
            sense: if max { Sense::Maximize } else { Sense::Minimize },
            objective: (0..n as i64).map(|j| j - 1).collect(),
            columns,
            row_kinds: (0..rows).map(|i| if i % 2 == 0 { RowKind::Le } else { RowKind::Ge }).collect(),
            rhs: (0..rows as i64).map(|i| i - 2).collect(),
            col_names: (0..n).map(|j| format!("x{j}")).collect(),
            row_names: (0..rows).map(|i| format!("r{i}")).collect(),
            integer,
        };
        prop_assert_eq!(parse_mps(&write_mps(&p)).unwrap(), p);
    }

    #[test]
    fn mis_matches_exhaustive(n in 1usize..13, edges in prop::collection::vec((0usize..13, 0usize..13), 0..40)) {
        let labels: StringSet = all_strings(2, 4).take(n).collect();
        let edges: Vec<(usize, usize)> = edges.into_iter().filter(|&(a, b)| a < n && b < n).collect();
        let g = LineGraph::from_edges(labels, &edges);
        let best = (0u32..1 << n)
            .filter(|&m| edges.iter().all(|&(a, b)| a == b || m >> a & 1 == 0 || m >> b & 1 == 0))
            .map(|m| m.count_ones() as usize)
            .max()
            .unwrap();
        let r = max_independent_set(&g, &MisOptions::default()).unwrap();
        prop_assert!(r.proven_optimal);
        prop_assert_eq!(r.size, best);
        prop_assert!(g.is_independent(&r.witness_indices));
    }
}
