//! FLOPs and arithmetic intensity per variant and phase for 512-wide
//! layers on a Reddit-sized graph, dense and with block size 128.
//!
//! ```text
//! cargo run --example profile_table
//! ```

use circgnn::gnn::Variant;
use circgnn::profiler::{profile, ProfileSetup};

fn main() -> circgnn::Result<()> {
    let setup = ProfileSetup::reddit();
    println!(
        "{} nodes, {} -> {}, {} samples, GAT {} x {}\n",
        setup.num_nodes,
        setup.input_dim,
        setup.output_dim,
        setup.samples,
        setup.gat_heads,
        setup.gat_head_dim
    );
    let report = profile(&setup, &Variant::ALL, Some(128))?;
    print!("{}", report.to_table());

    println!("\nmemory-bound phases (below 10 FLOP/byte):");
    for e in &report.entries {
        if e.intensity.is_some_and(|ai| ai < 10.0) {
            println!("  {} {}", e.variant, e.phase);
        }
    }
    Ok(())
}
