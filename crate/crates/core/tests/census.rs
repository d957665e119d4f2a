use std::collections::HashSet;

use cospec::cospectral::{classify, classify_shard, merge};
use cospec::{
    canonical_code, complement, enumerate, structure_class, CanonicalCode, GraphFilter, MatrixKind, SpectrumKey,
    WorkPartition,
};

#[test]
fn order_eight_count() {
    let codes: HashSet<_> = enumerate(8, GraphFilter::All, WorkPartition::whole())
        .unwrap()
        .map(|g| canonical_code(&g))
        .collect();
    assert_eq!(codes.len(), 12346);
}

#[test]
fn connected_counts() {
    let expected = [1, 1, 1, 2, 6, 21, 112, 853, 11117];
    for n in 1..=8 {
        let count = enumerate(n, GraphFilter::Connected, WorkPartition::whole()).unwrap().count();
        assert_eq!(count, expected[n], "order {n}");
    }
}

#[test]
fn sharding_does_not_change_the_census() {
    let whole = classify(8, MatrixKind::Q, GraphFilter::All, 1).unwrap();
    for shards in [4, 8] {
        let parts: Vec<_> = WorkPartition::all(shards)
            .unwrap()
            .into_iter()
            .rev()
            .map(|p| classify_shard(8, MatrixKind::Q, GraphFilter::All, p).unwrap())
            .collect();
        let counts: Vec<usize> = parts.iter().map(|c| c.graph_count()).collect();
        assert_eq!(counts.iter().sum::<usize>(), 12346);
        assert_eq!(merge(parts).unwrap(), whole, "{shards} shards");
    }
}

#[test]
fn laplacian_classes_are_closed_under_complement() {
    for n in 1..=7 {
        let census = classify(n, MatrixKind::L, GraphFilter::All, 1).unwrap();
        for (_, members) in census.classes() {
            let keys: HashSet<SpectrumKey> = members
                .iter()
                .map(|c| SpectrumKey::of(&complement(&c.to_graph()), MatrixKind::L))
                .collect();
            assert_eq!(keys.len(), 1, "order {n}");
            let key = keys.into_iter().next().unwrap();
            assert_eq!(census.class(&key).unwrap().len(), members.len());
        }
    }
}

#[test]
fn filters_are_sound_and_complete() {
    let filters = [
        GraphFilter::Connected,
        GraphFilter::Trees,
        GraphFilter::Unicyclic,
        GraphFilter::ConnectedNonBipartite,
        GraphFilter::ConnectedBipartite,
        GraphFilter::Bipartite,
        "bounds:3-9:1-4".parse().unwrap(),
    ];
    for n in 1..=7 {
        let all: Vec<_> = enumerate(n, GraphFilter::All, WorkPartition::whole()).unwrap().collect();
        for f in filters {
            let emitted: HashSet<CanonicalCode> =
                enumerate(n, f, WorkPartition::whole()).unwrap().map(|g| canonical_code(&g)).collect();
            let expected: HashSet<CanonicalCode> = all
                .iter()
                .filter(|g| {
                    let sc = structure_class(g);
                    let m = g.edge_count();
                    let degrees: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
                    match f {
                        GraphFilter::Connected => sc.is_connected(),
                        GraphFilter::Trees => sc.is_tree(),
                        GraphFilter::Unicyclic => sc.is_unicyclic(),
                        GraphFilter::ConnectedNonBipartite => sc.is_connected() && !sc.is_bipartite,
                        GraphFilter::ConnectedBipartite => sc.is_connected() && sc.is_bipartite,
                        GraphFilter::Bipartite => sc.is_bipartite,
                        _ => (3..=9).contains(&m) && degrees.iter().all(|d| (1..=4).contains(d)),
                    }
                })
                .map(canonical_code)
                .collect();
            assert_eq!(emitted, expected, "order {n}, filter {f}");
        }
    }
}

#[test]
fn bipartite_laplacian_and_signless_classes_coincide() {
    for n in 1..=8 {
        let partition = |kind| {
            let c = classify(n, kind, GraphFilter::Bipartite, 1).unwrap();
            let mut classes: Vec<Vec<CanonicalCode>> = c.classes().map(|(_, m)| m.to_vec()).collect();
            classes.sort();
            classes
        };
        assert_eq!(partition(MatrixKind::L), partition(MatrixKind::Q), "order {n}");
    }
}
