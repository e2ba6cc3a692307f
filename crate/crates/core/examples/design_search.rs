//! Searches accelerator parameters for two-layer GS-Pool on the four
//! benchmark datasets and compares against the reference configurations.
//!
//! ```text
//! cargo run --release --example design_search
//! ```

use std::time::Instant;

use circgnn::graph::GraphStats;
use circgnn::perfmodel::{
    search_optimal, total_cycles, CostCoefficients, HardwareConfig, WorkloadSpec,
};

fn main() -> circgnn::Result<()> {
    let coeffs = CostCoefficients::N128;
    let reference = [
        (
            "CR",
            GraphStats::CORA,
            HardwareConfig::new(18, 7, 6, 4, 1, 1, 128),
            24.9e6,
        ),
        (
            "CS",
            GraphStats::CITESEER,
            HardwareConfig::new(21, 4, 6, 4, 1, 1, 128),
            64.4e6,
        ),
        (
            "PB",
            GraphStats::PUBMED,
            HardwareConfig::new(14, 15, 4, 4, 1, 1, 128),
            95.4e6,
        ),
        (
            "RD",
            GraphStats::REDDIT,
            HardwareConfig::new(15, 13, 5, 4, 1, 1, 128),
            1240.3e6,
        ),
    ];
    println!(
        "{:<3} {:<34} {:>5} {:>14} {:>14} {:>14} {:>9} {:>8}",
        "set", "searched", "dsp", "cycles", "ref cycles", "reported", "explored", "secs"
    );
    for (name, stats, ref_hw, reported) in reference {
        search_one(name, &stats, ref_hw, reported, &coeffs, false)?;
    }
    println!("\nfirst layer reading raw feature width:");
    for (name, stats, ref_hw, reported) in reference {
        search_one(name, &stats, ref_hw, reported, &coeffs, true)?;
    }
    Ok(())
}

fn search_one(
    name: &str,
    stats: &GraphStats,
    ref_hw: HardwareConfig,
    reported: f64,
    coeffs: &CostCoefficients,
    raw_input: bool,
) -> circgnn::Result<()> {
    {
        let w = if raw_input {
            WorkloadSpec::gspool_raw_input(stats, 512, &[25, 10], 128)
        } else {
            WorkloadSpec::gspool_hidden(stats, 512, &[25, 10], 128)
        };
        let t = Instant::now();
        let res = search_optimal(&w, coeffs)?;
        let ref_cycles = total_cycles(&w, &ref_hw, coeffs).total_cycles;
        println!(
            "{:<3} {:<34} {:>5} {:>14} {:>14} {:>14.0} {:>9} {:>8.2}",
            name,
            res.config.to_string(),
            res.dsp_used,
            res.estimate.total_cycles,
            ref_cycles,
            reported,
            res.explored,
            t.elapsed().as_secs_f64()
        );
        for (k, l) in res.estimate.layers.iter().enumerate() {
            println!(
                "      layer {}: {} cycles, bottleneck {}",
                k + 1,
                l.layer_max,
                l.bottleneck
            );
        }
    }
    Ok(())
}
