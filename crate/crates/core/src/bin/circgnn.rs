use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use circgnn::commands::{self, CompressArgs, InferArgs, ProfileArgs, RunContext, SearchArgs};
use circgnn::gnn::Variant;
use circgnn::Error;

/// Block-circulant GNN inference, compression, accelerator search and profiling.
#[derive(Parser)]
#[command(name = "circgnn", version)]
struct Cli {
    /// Seed for sampling and random weights.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Write the JSON run report here.
    #[arg(long, global = true)]
    report: Option<PathBuf>,
    /// Worker threads (defaults to all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Print the JSON report instead of the table.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Forward pass over a batch of nodes.
    Infer {
        /// Model config JSON.
        #[arg(long)]
        config: PathBuf,
        /// Edge list, one `src dst` per line.
        #[arg(long)]
        graph: PathBuf,
        /// CSV node features.
        #[arg(long)]
        features: Option<PathBuf>,
        /// Weight file JSON; random weights from --seed if omitted.
        #[arg(long)]
        weights: Option<PathBuf>,
        /// `all`, ids, or `a..b` ranges, comma separated.
        #[arg(long, default_value = "all")]
        batch: String,
        /// CSV file for the output features.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Project dense weights onto block-circulant matrices.
    Compress {
        #[arg(long)]
        weights: PathBuf,
        #[arg(long = "block-size", short = 'n')]
        block_size: usize,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Search accelerator parameters for a workload.
    Search {
        /// Workload JSON.
        #[arg(long)]
        workload: PathBuf,
        /// DSP budget override.
        #[arg(long)]
        budget: Option<u64>,
        /// Include the workload's combination matvecs.
        #[arg(long)]
        with_combination: bool,
    },
    /// FLOP and arithmetic-intensity table per variant and phase.
    Profile {
        #[arg(long, default_value = "reddit")]
        dataset: String,
        #[arg(long)]
        nodes: Option<u64>,
        #[arg(long, default_value_t = 512)]
        input_dim: u64,
        #[arg(long, default_value_t = 512)]
        output_dim: u64,
        #[arg(long, default_value_t = 25)]
        samples: u64,
        #[arg(long, default_value_t = 2)]
        heads: u64,
        #[arg(long, default_value_t = 128)]
        head_dim: u64,
        /// Restrict to these variants.
        #[arg(long = "variant", value_parser = parse_variant)]
        variants: Vec<Variant>,
        #[arg(long = "block-size", short = 'n')]
        block_size: Option<u64>,
    },
}

fn parse_variant(s: &str) -> Result<Variant, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn run(cli: Cli) -> circgnn::Result<()> {
    if let Some(t) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
            .map_err(|e| Error::Config(e.to_string()))?;
    }
    let ctx = RunContext {
        seed: cli.seed,
        threads: cli.threads,
    };
    let outcome = match cli.command {
        Cmd::Infer {
            config,
            graph,
            features,
            weights,
            batch,
            output,
        } => commands::infer(
            &InferArgs {
                config,
                graph,
                features,
                weights,
                batch,
                output,
            },
            ctx,
        )?,
        Cmd::Compress {
            weights,
            block_size,
            output,
        } => commands::compress(
            &CompressArgs {
                weights,
                block_size,
                output,
            },
            ctx,
        )?,
        Cmd::Search {
            workload,
            budget,
            with_combination,
        } => commands::search(
            &SearchArgs {
                workload,
                budget,
                with_combination,
            },
            ctx,
        )?,
        Cmd::Profile {
            dataset,
            nodes,
            input_dim,
            output_dim,
            samples,
            heads,
            head_dim,
            variants,
            block_size,
        } => commands::profile(
            &ProfileArgs {
                dataset,
                nodes,
                input_dim,
                output_dim,
                samples,
                gat_heads: heads,
                gat_head_dim: head_dim,
                variants,
                block_size,
            },
            ctx,
        )?,
    };
    let json = outcome.report.to_json();
    if let Some(p) = &cli.report {
        std::fs::write(p, format!("{json}\n")).map_err(|e| Error::Io {
            path: p.clone(),
            source: e,
        })?;
    }
    if cli.json {
        println!("{json}");
    } else {
        print!("{}", outcome.table);
        println!("wall time: {:.3} s", outcome.report.wall_time_s);
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
