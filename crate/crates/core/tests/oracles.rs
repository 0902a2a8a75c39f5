//! Matching trees on small random graphs, checked against brute force.

use fixedbitset::FixedBitSet;
use gridmorse::comb::census_from_tree;
use gridmorse::complexes::{independence_complex, reduced_euler};
use gridmorse::homology::{morse_inequality_violations, reduced_homology};
use gridmorse::morse::{
    check_partition, collect_pairing, critical_cells, residual_set, run_strategy, sigma_count,
    verify_acyclic, GreedyStrategy, Step,
};
use gridmorse::{Graph, VertexLabel};
use proptest::prelude::*;

const CAP: usize = 1 << 12;

fn arb_graph() -> impl Strategy<Value = Graph> {
    (1u32..=9).prop_flat_map(|n| {
        let pairs: Vec<(u32, u32)> = (1..=n)
            .flat_map(|u| (u + 1..=n).map(move |v| (u, v)))
            .collect();
        let k = pairs.len();
        proptest::collection::vec(any::<bool>(), k).prop_map(move |keep| {
            let edges = pairs
                .iter()
                .zip(&keep)
                .filter(|(_, &k)| k)
                .map(|(&(u, v), _)| (VertexLabel::Plain(u), VertexLabel::Plain(v)));
            Graph::new("random", vec![], (1..=n).map(VertexLabel::Plain), edges).unwrap()
        })
    })
}

/// Independent sets by scanning every subset.
fn brute_force_faces(g: &Graph) -> u128 {
    let n = g.vertex_count();
    (0u32..1 << n)
        .filter(|&mask| {
            g.edges()
                .all(|(u, v)| mask & (1 << u) == 0 || mask & (1 << v) == 0)
        })
        .count() as u128
}

/// Picks a residual vertex from `seed` and frees, matches or splits it
/// according to its live degree.
fn seeded(seed: u64) -> impl Fn(&Graph, &FixedBitSet, &FixedBitSet) -> Option<Step> {
    move |g, a, b| {
        let r = residual_set(g, a, b);
        let live: Vec<usize> = r.ones().collect();
        if live.is_empty() {
            return None;
        }
        let v = live[(seed as usize).wrapping_add(a.count_ones(..) * 7) % live.len()];
        let mut nbrs = g.adjacency_bits(v).intersection(&r);
        Some(match (nbrs.next(), nbrs.next()) {
            (None, _) => Step::Free(v),
            (Some(u), None) => Step::Match { p: v, v: u },
            _ => Step::Split(v),
        })
    }
}

fn check_tree(g: &Graph, strategy: &dyn gridmorse::Strategy) -> Result<(), TestCaseError> {
    let tree = run_strategy(g, strategy).unwrap();
    let complex = independence_complex(g, CAP).unwrap();
    prop_assert_eq!(sigma_count(g, tree.node(tree.root())), brute_force_faces(g));
    prop_assert_eq!(complex.face_count() as u128, brute_force_faces(g));

    let pairing = collect_pairing(&tree, CAP).unwrap();
    let critical = critical_cells(&tree);
    prop_assert!(check_partition(&complex, &pairing, &critical).is_ok());
    prop_assert!(verify_acyclic(&complex, &pairing).unwrap().acyclic);

    let census = census_from_tree(&tree);
    prop_assert_eq!(census.euler(), reduced_euler(&complex));
    let report = reduced_homology(&complex).unwrap();
    prop_assert!(morse_inequality_violations(&census, &report).is_empty());
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn greedy_tree_is_a_morse_matching(g in arb_graph()) {
        check_tree(&g, &GreedyStrategy)?;
    }

    #[test]
    fn any_split_order_is_a_morse_matching(g in arb_graph(), seed in any::<u64>()) {
        check_tree(&g, &seeded(seed))?;
    }
}
