mod common;

use std::fmt::Write as _;

use circgnn::graph::{
    load_edge_list, load_labels, sample_neighbors, synthetic_graph, Graph, GraphStats,
};
use circgnn::Error;
use proptest::prelude::*;

/// Writes files with the shape of the Cora benchmark: 2708 nodes, 10556
/// arcs (5278 undirected pairs), 1433 binary features and 7 labels.
fn write_cora_shaped(dir: &std::path::Path) {
    let n = 2708usize;
    let mut edges = String::from("# src dst\n");
    // a ring of n pairs plus 2570 chords of length 2
    let pairs = (0..n)
        .map(|u| (u, (u + 1) % n))
        .chain((0..2570).map(|u| (u, (u + 2) % n)));
    for (u, v) in pairs {
        let _ = writeln!(edges, "{u} {v}\n{v} {u}");
    }
    std::fs::write(dir.join("cora.cites"), edges).unwrap();

    let mut feats = String::new();
    for u in 0..n {
        let row: Vec<&str> = (0..1433)
            .map(|j| {
                if (u * 31 + j * 17) % 53 == 0 {
                    "1"
                } else {
                    "0"
                }
            })
            .collect();
        feats.push_str(&row.join(","));
        feats.push('\n');
    }
    std::fs::write(dir.join("cora.features.csv"), feats).unwrap();

    let labels: String = (0..n).map(|u| format!("{}\n", u % 7)).collect();
    std::fs::write(dir.join("cora.labels"), labels).unwrap();
}

#[test]
fn cora_shaped_files_report_benchmark_stats() {
    let dir = tempfile::tempdir().unwrap();
    write_cora_shaped(dir.path());
    let g = load_edge_list(
        dir.path().join("cora.cites"),
        Some(&dir.path().join("cora.features.csv")),
    )
    .unwrap();
    let (_, classes) = load_labels(&dir.path().join("cora.labels")).unwrap();
    assert_eq!(g.stats(classes), GraphStats::CORA);
    assert_eq!(GraphStats::named("cr"), Some(GraphStats::CORA));
}

#[test]
fn fixture_graph_csr() {
    let dir = common::fixture("gcn5");
    let g = load_edge_list(dir.join("graph.txt"), Some(&dir.join("features.csv"))).unwrap();
    assert_eq!(g.csr_offsets(), &[0, 3, 5, 8, 10, 12]);
    assert_eq!(g.neighbors(0), &[1, 2, 4]);
    assert_eq!(g.feature(3), &[-1.0, 0.75, 0.25, 0.0]);
}

#[test]
fn malformed_inputs() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("bad.txt");
    std::fs::write(&p, "0 1\n2 -3\n").unwrap();
    assert!(matches!(
        load_edge_list(&p, None),
        Err(Error::Parse { line: 2, .. })
    ));
    std::fs::write(&p, "").unwrap();
    assert!(matches!(load_edge_list(&p, None), Err(Error::Parse { .. })));
    let missing = dir.path().join("nope.txt");
    assert!(matches!(
        load_edge_list(&missing, None),
        Err(Error::Io { .. })
    ));

    let f = dir.path().join("f.csv");
    std::fs::write(&p, "0 1\n").unwrap();
    std::fs::write(&f, "1,2\n3\n").unwrap();
    assert!(matches!(
        load_edge_list(&p, Some(&f)),
        Err(Error::Parse { line: 2, .. })
    ));
    std::fs::write(&f, "1,2\n").unwrap();
    assert!(
        load_edge_list(&p, Some(&f)).is_err(),
        "one feature row for two nodes"
    );
}

proptest! {
    #![proptest_config(common::fixed(0x6A4F, 64))]

    #[test]
    fn csr_roundtrips_edge_set(n in 1usize..60, raw in prop::collection::vec((0usize..60, 0usize..60), 0..200)) {
        let edges: Vec<(usize, usize)> = raw.into_iter().map(|(a, b)| (a % n, b % n)).collect();
        let g = Graph::from_edges(n, edges.clone(), None).unwrap();
        let mut expect = edges;
        expect.sort_unstable();
        expect.dedup();
        prop_assert_eq!(g.edges().collect::<Vec<_>>(), expect);
        prop_assert_eq!(g.degrees().iter().sum::<usize>(), g.num_edges());
        prop_assert_eq!(*g.csr_offsets().last().unwrap(), g.num_edges());
    }

    #[test]
    fn samples_come_from_the_neighborhood(seed in any::<u64>(), v in 0usize..40, count in 1usize..30) {
        let g = synthetic_graph(40, 3, 2, seed).unwrap();
        let s = sample_neighbors(&g, v, count, seed).unwrap();
        prop_assert_eq!(s.len(), count);
        if g.degree(v) == 0 {
            prop_assert!(s.iter().all(|&u| u == v));
        } else {
            prop_assert!(s.iter().all(|u| g.neighbors(v).contains(u)));
        }
        prop_assert_eq!(s, sample_neighbors(&g, v, count, seed).unwrap());
    }
}
