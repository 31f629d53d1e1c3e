use std::cmp::Ordering;

use maxint_core::io::{decode_collection, encode_collection};
use maxint_core::models::{extend_with_missing_prefix_terms, GenericityWindow};
use maxint_core::oracle::brute_force_max_lcp;
use maxint_core::{
    canonicalize, compare_lex, containment_prefix_len, intersection_size, lcp_length,
    reverse_order_metric, Collection, Document, Oracle, PrefixIndex,
};
use proptest::prelude::*;

fn document(max_rank: i64, max_len: usize) -> impl Strategy<Value = Document> {
    prop::collection::vec(1..=max_rank, 0..=max_len).prop_map(|raw| canonicalize(raw).unwrap())
}

fn collection(max_docs: usize) -> impl Strategy<Value = Collection> {
    prop::collection::vec(document(24, 8), 1..=max_docs).prop_map(Collection::external)
}

/// Pairwise scan with no index: the reference for the counting oracle.
fn naive_max_intersection(c: &Collection, q: &Document) -> (usize, usize) {
    let mut best = (0, 0);
    for (i, d) in c.docs().iter().enumerate() {
        let common = q
            .terms()
            .iter()
            .filter(|t| d.terms().iter().any(|u| u == *t))
            .count();
        if common > best.1 {
            best = (i, common);
        }
    }
    best
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn match_notions_are_ordered(a in document(40, 12), b in document(40, 12)) {
        let lcp = lcp_length(&a, &b);
        let prefix = containment_prefix_len(&a, &b);
        let common = intersection_size(&a, &b);
        prop_assert!(lcp <= prefix && prefix <= common);
        prop_assert!(lcp <= a.len().min(b.len()));
    }

    #[test]
    fn symmetric_scores(a in document(40, 12), b in document(40, 12)) {
        prop_assert_eq!(intersection_size(&a, &b), intersection_size(&b, &a));
        prop_assert_eq!(lcp_length(&a, &b), lcp_length(&b, &a));
    }

    #[test]
    fn metric_triangle_and_order_reversal(
        a in document(30, 10),
        b in document(30, 10),
        c in document(30, 10),
        slack in 0usize..4,
    ) {
        let m = a.len().max(b.len()).max(c.len()).max(1) + slack;
        let d = |x: &Document, y: &Document| reverse_order_metric(x, y, m).unwrap();
        prop_assert!(d(&a, &c) <= d(&a, &b) + d(&b, &c) + 1e-12);
        prop_assert!((0.0..=1.0).contains(&d(&a, &b)));
        let by_overlap = intersection_size(&a, &b).cmp(&intersection_size(&a, &c));
        let by_distance = d(&a, &c).partial_cmp(&d(&a, &b)).unwrap();
        prop_assert_eq!(by_overlap, by_distance);
    }

    #[test]
    fn lex_order_is_total(a in document(6, 5), b in document(6, 5), c in document(6, 5)) {
        prop_assert_eq!(compare_lex(&a, &b), compare_lex(&b, &a).reverse());
        prop_assert_eq!(compare_lex(&a, &b) == Ordering::Equal, a == b);
        if compare_lex(&a, &b) != Ordering::Greater && compare_lex(&b, &c) != Ordering::Greater {
            prop_assert_ne!(compare_lex(&a, &c), Ordering::Greater);
        }
    }

    #[test]
    fn canonicalize_is_idempotent(raw in prop::collection::vec(1i64..100, 0..20)) {
        let once = canonicalize(raw).unwrap();
        let twice = canonicalize(once.ranks().map(i64::from)).unwrap();
        prop_assert_eq!(once, twice);
    }

    #[test]
    fn extension_preserves_genericity(d in document(200, 12), count in 0usize..6, delta in 0.05f64..0.95) {
        let ext = extend_with_missing_prefix_terms(&d, count);
        prop_assert_eq!(ext.len(), d.len() + count);
        prop_assert!(d.terms().iter().all(|&t| ext.contains(t)));
        let w = GenericityWindow::new(delta, 5_000);
        prop_assert!(!w.accepts(&d) || w.accepts(&ext));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn index_finds_the_longest_prefix(c in collection(64), q in document(24, 8)) {
        let idx = PrefixIndex::build(&c);
        let (found, stats) = idx.query(&q).unwrap();
        prop_assert_eq!(found.lcp, brute_force_max_lcp(&c, &q));
        prop_assert_eq!(found.lcp, lcp_length(&q, c.get(found.doc_index)));
        let log = (c.len() as f64).log2().ceil() as usize;
        prop_assert!(stats.sequence_comparisons <= log + 2);
        prop_assert!(stats.term_comparisons <= stats.sequence_comparisons * (q.len() + 1));
        prop_assert_eq!(idx.query(&q).unwrap(), (found, stats));
    }

    #[test]
    fn oracle_matches_pairwise_scan(c in collection(48), q in document(24, 8)) {
        let oracle = Oracle::new(&c);
        let best = oracle.max_intersection(&q).unwrap();
        prop_assert_eq!((best.doc_index, best.intersection), naive_max_intersection(&c, &q));

        let (prefix, at) = oracle.max_containment_prefix(&q).unwrap();
        let naive_prefix = c.docs().iter().map(|d| containment_prefix_len(&q, d)).max().unwrap();
        prop_assert_eq!(prefix, naive_prefix);
        prop_assert_eq!(containment_prefix_len(&q, c.get(at)), prefix);

        let (index_answer, _) = PrefixIndex::build(&c).query(&q).unwrap();
        prop_assert!(index_answer.intersection <= best.intersection);
    }

    #[test]
    fn existence_predicates_are_monotone(c in collection(32), q in document(24, 8)) {
        let oracle = Oracle::new(&c);
        let mut last_any = true;
        let mut last_prefix = true;
        for level in 0..=q.len() {
            let any = oracle.exists_any_match(&q, level).unwrap();
            let prefix = oracle.exists_prefix_containment(&q, level).unwrap();
            prop_assert!(!prefix || any);
            prop_assert!(last_any || !any);
            prop_assert!(last_prefix || !prefix);
            last_any = any;
            last_prefix = prefix;
        }
    }

    #[test]
    fn collection_files_round_trip(c in collection(20)) {
        let bytes = encode_collection(&c);
        let back = decode_collection(&bytes).unwrap();
        prop_assert_eq!(&back, &c);
        prop_assert_eq!(encode_collection(&back), bytes);
    }
}
