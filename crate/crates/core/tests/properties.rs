use num_bigint::BigUint;
use patlab::bigraph::{graph_of_pattern, ContractionPlan};
use patlab::enumeration::{
    count_multiset_avoiders, stirling_product, stirling_rational, total_words,
};
use patlab::reference;
use patlab::{
    adjacency, canonicalize, contained_patterns, contains, contract, fiber_size, matrix_contains,
    ordered_contains, perm_to_matrix, BinaryMatrix, BipartiteGraph, MultisetSpec, Word,
};
use proptest::prelude::*;

fn word(max_len: usize, alphabet: u32) -> impl Strategy<Value = Word> {
    prop::collection::vec(1..=alphabet, 1..=max_len).prop_map(|v| canonicalize(&v))
}

fn permutation(max_len: usize) -> impl Strategy<Value = Word> {
    (1..=max_len)
        .prop_flat_map(|n| Just((1..=n as u32).collect::<Vec<_>>()).prop_shuffle())
        .prop_map(|v| Word::new(v).unwrap())
}

fn graph(max_left: usize, max_right: usize) -> impl Strategy<Value = BipartiteGraph> {
    (1..=max_left, 1..=max_right).prop_flat_map(|(l, r)| {
        (0u64..1 << (l * r))
            .prop_map(move |bits| BipartiteGraph::from_cell_bits(l, r, bits).unwrap())
    })
}

fn matrix(max_rows: usize, max_cols: usize) -> impl Strategy<Value = BinaryMatrix> {
    graph(max_rows, max_cols).prop_map(|g| adjacency(&g))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn canonicalize_is_idempotent_and_order_preserving(v in prop::collection::vec(1u32..50, 1..12)) {
        let c = canonicalize(&v);
        prop_assert_eq!(canonicalize(c.entries()), c.clone());
        for i in 0..v.len() {
            for j in 0..v.len() {
                prop_assert_eq!(v[i].cmp(&v[j]), c.entries()[i].cmp(&c.entries()[j]));
            }
        }
    }

    #[test]
    fn containment_matches_definition(w in word(9, 6), q in word(4, 4)) {
        prop_assert_eq!(
            contains(&w, &q).unwrap(),
            reference::contains_by_subsequences(w.entries(), q.entries())
        );
    }

    #[test]
    fn every_word_contains_itself(w in word(10, 8)) {
        prop_assert!(contains(&w, &w).unwrap());
    }

    #[test]
    fn appending_preserves_containment(w in word(8, 5), q in word(4, 4), v in 1u32..8) {
        if contains(&w, &q).unwrap() {
            let longer = canonicalize(&w.appended(v));
            prop_assert!(contains(&longer, &q).unwrap());
        }
    }

    #[test]
    fn containment_commutes_with_symmetries(w in word(9, 6), q in word(4, 4)) {
        let base = contains(&w, &q).unwrap();
        prop_assert_eq!(contains(&w.reverse(), &q.reverse()).unwrap(), base);
        prop_assert_eq!(contains(&w.complement(), &q.complement()).unwrap(), base);
    }

    #[test]
    fn sub_patterns_are_transitively_contained(w in word(8, 5), k in 1usize..4, j in 1usize..4) {
        prop_assume!(k <= w.len() && j <= k);
        for q in contained_patterns(&w, k).unwrap() {
            prop_assert!(contains(&w, &q).unwrap());
            for r in contained_patterns(&q, j).unwrap() {
                prop_assert!(contains(&w, &r).unwrap());
            }
        }
    }

    #[test]
    fn permutation_matrices_mirror_word_containment(p in permutation(7), q in permutation(4)) {
        prop_assert_eq!(
            matrix_contains(&perm_to_matrix(&p).unwrap(), &perm_to_matrix(&q).unwrap()),
            contains(&p, &q).unwrap()
        );
    }

    #[test]
    fn matrix_containment_matches_submatrix_scan(p in matrix(5, 5), q in matrix(3, 3)) {
        prop_assert_eq!(matrix_contains(&p, &q), reference::matrix_contains_by_submatrices(&p, &q));
    }

    #[test]
    fn graph_containment_matches_injection_scan(p in graph(5, 5), q in graph(3, 3)) {
        let fast = ordered_contains(&p, &q);
        prop_assert_eq!(fast, reference::ordered_contains_by_injections(&p, &q));
        prop_assert_eq!(fast, matrix_contains(&adjacency(&p), &adjacency(&q)));
    }

    #[test]
    fn word_graphs_encode_permutation_containment(w in word(8, 5), q in permutation(3)) {
        let gw = graph_of_pattern(&w).unwrap();
        let gq = graph_of_pattern(&q).unwrap();
        prop_assert_eq!(ordered_contains(&gw, &gq), contains(&w, &q).unwrap());
    }

    #[test]
    fn contraction_inherits_avoidance(
        n in 2usize..4,
        m in 1usize..4,
        bits in any::<u64>(),
        q in permutation(3),
    ) {
        let cells = n * m * n;
        let g = BipartiteGraph::from_cell_bits(n * m, n, bits & ((1u64 << cells) - 1)).unwrap();
        let gq = graph_of_pattern(&q).unwrap();
        if !ordered_contains(&g, &gq) {
            let c = contract(&g, &ContractionPlan::regular(n, m).unwrap()).unwrap();
            prop_assert!(!ordered_contains(&c, &gq));
        }
    }

    #[test]
    fn fiber_size_matches_inversion(mults in prop::collection::vec(1usize..4, 1..3), right in 1usize..3, bits in any::<u64>()) {
        let spec = MultisetSpec::new(mults).unwrap();
        prop_assume!(spec.total_length() * right <= 16);
        let plan = ContractionPlan::new(&spec);
        let cells = spec.n() * right;
        let gp = BipartiteGraph::from_cell_bits(spec.n(), right, bits & ((1u64 << cells) - 1)).unwrap();
        let size: BigUint = fiber_size(&gp, &plan).unwrap();
        prop_assert_eq!(size, BigUint::from(reference::fiber_by_inversion(&gp, &plan)));
    }

    #[test]
    fn pruned_counter_matches_exhaustive_count(mults in prop::collection::vec(1usize..3, 1..5), q in word(3, 3)) {
        let spec = MultisetSpec::new(mults).unwrap();
        let record = count_multiset_avoiders(&spec, &q).unwrap();
        prop_assert_eq!(record.count, BigUint::from(reference::count_avoiders_unpruned(&spec, q.entries())));
        prop_assert_eq!(record.total, total_words::<BigUint>(&spec));
    }
}

#[test]
fn stirling_rational_is_the_product_for_small_parameters() {
    for n in 1..=8 {
        for m in 1..=4 {
            let r = stirling_rational::<BigUint>(n, m);
            assert!(r.is_integer(), "n={n} m={m}");
            assert_eq!(r.to_integer(), stirling_product::<BigUint>(n, m));
        }
    }
}
