//! Loads an edge list, builds the CSR graph and draws reproducible
//! neighbor samples.
//!
//! ```text
//! cargo run --example neighbor_sampling
//! ```

use std::path::Path;

use circgnn::graph::{derive_seed, load_edge_list, sample_neighbors};

fn main() -> circgnn::Result<()> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/gcn5");
    let g = load_edge_list(dir.join("graph.txt"), Some(&dir.join("features.csv")))?;
    println!(
        "{} nodes, {} arcs, feature width {}",
        g.num_nodes(),
        g.num_edges(),
        g.feature_dim()
    );
    println!("offsets:   {:?}", g.csr_offsets());
    println!("neighbors: {:?}\n", g.csr_neighbors());

    for v in 0..g.num_nodes() {
        let seed = derive_seed(7, v, 1);
        let s = sample_neighbors(&g, v, 6, seed)?;
        let again = sample_neighbors(&g, v, 6, seed)?;
        assert_eq!(s, again);
        println!("node {v} (degree {}): {:?}", g.degree(v), s);
    }
    Ok(())
}
