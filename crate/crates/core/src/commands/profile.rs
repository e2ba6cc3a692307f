use serde::{Deserialize, Serialize};
use serde_json::json;

use super::{timed, to_value, Command, RunContext, RunOutcome};
use crate::error::{Error, Result};
use crate::gnn::Variant;
use crate::graph::GraphStats;
use crate::profiler::{self, ProfileSetup};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ProfileArgs {
    /// Benchmark name (`cora`, `citeseer`, `pubmed`, `reddit`).
    pub dataset: String,
    /// Overrides the dataset's node count.
    pub nodes: Option<u64>,
    pub input_dim: u64,
    pub output_dim: u64,
    pub samples: u64,
    pub gat_heads: u64,
    pub gat_head_dim: u64,
    /// Empty means all variants.
    pub variants: Vec<Variant>,
    /// Adds block-circulant FLOP counts.
    pub block_size: Option<u64>,
}

impl Default for ProfileArgs {
    fn default() -> Self {
        Self {
            dataset: "reddit".into(),
            nodes: None,
            input_dim: 512,
            output_dim: 512,
            samples: 25,
            gat_heads: 2,
            gat_head_dim: 128,
            variants: Vec::new(),
            block_size: None,
        }
    }
}

pub fn profile(args: &ProfileArgs, ctx: RunContext) -> Result<RunOutcome> {
    timed(Command::Profile, ctx, || {
        let stats = GraphStats::named(&args.dataset)
            .ok_or_else(|| Error::Config(format!("unknown dataset {:?}", args.dataset)))?;
        let mut setup = ProfileSetup::new(&stats, args.input_dim, args.output_dim, args.samples)
            .with_gat_heads(args.gat_heads, args.gat_head_dim);
        if let Some(n) = args.nodes {
            setup.num_nodes = n;
        }
        let variants = if args.variants.is_empty() {
            Variant::ALL.to_vec()
        } else {
            args.variants.clone()
        };
        let report = profiler::profile(&setup, &variants, args.block_size)?;
        let inputs = json!({ "args": to_value(args)?, "setup": to_value(&setup)? });
        Ok((inputs, to_value(&report)?, report.to_table()))
    })
}
