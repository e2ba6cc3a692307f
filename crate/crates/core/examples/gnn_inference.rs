//! Two-layer inference for every variant on a synthetic graph, with
//! block-circulant weights and with their dense expansions.
//!
//! ```text
//! cargo run --release --example gnn_inference
//! ```

use std::time::Instant;

use circgnn::gnn::{GnnModel, GnnModelConfig, LayerDims, Variant};
use circgnn::graph::synthetic_graph;
use circgnn::linalg::max_abs_diff;

fn main() -> circgnn::Result<()> {
    let g = synthetic_graph(2_000, 8, 256, 11)?;
    let batch: Vec<usize> = (0..256).collect();
    println!(
        "graph: {} nodes, {} arcs, {} features",
        g.num_nodes(),
        g.num_edges(),
        g.feature_dim()
    );
    println!(
        "{:<8} {:>12} {:>12} {:>12}",
        "variant", "circulant ms", "dense ms", "max diff"
    );
    for variant in Variant::ALL {
        let mut cfg = GnnModelConfig::new(
            variant,
            vec![LayerDims::new(256, 256), LayerDims::new(256, 128)],
            vec![10, 5],
            64,
        );
        if variant == Variant::Gat {
            cfg = cfg.with_gat_heads(2, 64);
        }
        let model = GnnModel::random(cfg, 5)?;
        let dense = model.densified();

        let t = Instant::now();
        let a = model.forward(&g, &batch, 99)?;
        let t_circ = t.elapsed();
        let t = Instant::now();
        let b = dense.forward(&g, &batch, 99)?;
        let t_dense = t.elapsed();

        println!(
            "{:<8} {:>12.1} {:>12.1} {:>12.2e}",
            variant.name(),
            t_circ.as_secs_f64() * 1e3,
            t_dense.as_secs_f64() * 1e3,
            max_abs_diff(a.as_slice(), b.as_slice())
        );
    }
    Ok(())
}
