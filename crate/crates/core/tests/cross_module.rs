use std::collections::BTreeSet;

use cubes_core::debruijn::{
    circuit_to_sequence, edges_for_class, eulerian_circuit, windows, Alphabet, DeBruijnGraph,
};
use cubes_core::residue::{class_of, decompose, Residue, ResidueTriple};
use cubes_core::search::{scan_range, search_k, search_k_parallel, SearchBounds};
use num_bigint::BigInt;
use proptest::prelude::*;

#[test]
fn class_edges_are_the_ordered_views_of_decompose() {
    let g = DeBruijnGraph::full(Alphabet::cubic(), 3).unwrap();
    for z in Residue::all() {
        let from_graph: BTreeSet<ResidueTriple> = edges_for_class(&g, z)
            .unwrap()
            .iter()
            .map(|e| {
                let d = e.as_bytes();
                ResidueTriple::from_values([d[0] - b'0', d[1] - b'0', d[2] - b'0']).unwrap()
            })
            .collect();
        let expected: BTreeSet<ResidueTriple> = decompose(z).into_iter().collect();
        assert_eq!(from_graph, expected, "class {z}");
    }
}

#[test]
fn found_paths_lie_on_class_edges() {
    let g = DeBruijnGraph::full(Alphabet::cubic(), 3).unwrap();
    for r in scan_range(-40..=40, SearchBounds::new(25).unwrap(), None).unwrap() {
        let class_edges: BTreeSet<String> = edges_for_class(&g, r.class())
            .unwrap()
            .iter()
            .map(|e| e.to_string())
            .collect();
        for rep in &r.representations {
            let v = rep.path().values();
            let gram = format!("{}{}{}", v[0], v[1], v[2]);
            assert!(class_edges.contains(&gram), "{rep}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn circuit_round_trips_through_sequence(k in 1usize..=3, n in 2usize..=4) {
        let g = DeBruijnGraph::full(Alphabet::new(&"018"[..k]).unwrap(), n).unwrap();
        let c = eulerian_circuit(&g).unwrap();
        let s = circuit_to_sequence(&c).unwrap();
        prop_assert_eq!(windows(&s, n), c);
    }

    #[test]
    fn every_hit_is_exact(k in -200i64..200, b in 1u64..40) {
        let k = BigInt::from(k);
        let r = search_k(&k, SearchBounds::new(b).unwrap());
        prop_assert_eq!(r.skipped, class_of(&k).is_infeasible());
        for rep in &r.representations {
            prop_assert!(rep.x() <= rep.y() && rep.y() <= rep.z());
            let sum = rep.x().pow(3) + rep.y().pow(3) + rep.z().pow(3);
            prop_assert_eq!(&sum, &k);
        }
    }

    #[test]
    fn parallel_search_agrees(k in -100i64..100, b in 1u64..300) {
        let k = BigInt::from(k);
        let bounds = SearchBounds::new(b).unwrap();
        prop_assert_eq!(search_k(&k, bounds), search_k_parallel(&k, bounds));
    }
}
