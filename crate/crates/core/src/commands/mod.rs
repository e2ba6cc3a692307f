//! The four runs behind the `circgnn` binary. Each returns a [`RunReport`]
//! that echoes its effective inputs, plus a human-readable table.

mod compress;
mod infer;
mod profile;
mod search;

pub use compress::{compress, compress_weights, CompressArgs, MatrixCompression};
pub use infer::{infer, parse_batch, FeatureDigest, InferArgs};
pub use profile::{profile, ProfileArgs};
pub use search::{search, SearchArgs};

use std::fmt;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    Infer,
    Compress,
    Search,
    Profile,
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Command::Infer => "infer",
            Command::Compress => "compress",
            Command::Search => "search",
            Command::Profile => "profile",
        })
    }
}

/// Structured record of one run. `outputs` depends only on `inputs` and
/// `seed`; `wall_time_s` is the only field that varies between reruns.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub command: Command,
    pub seed: u64,
    pub threads: Option<usize>,
    pub inputs: Value,
    pub outputs: Value,
    pub wall_time_s: f64,
}

impl RunReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).unwrap_or_default()
    }
}

/// A finished run.
#[derive(Debug, Clone)]
pub struct RunOutcome {
    pub report: RunReport,
    pub table: String,
}

/// Shared run settings.
#[derive(Debug, Clone, Copy, Default)]
pub struct RunContext {
    pub seed: u64,
    pub threads: Option<usize>,
}

pub(crate) fn to_value<T: Serialize>(v: &T) -> Result<Value> {
    serde_json::to_value(v).map_err(|e| Error::Internal(e.to_string()))
}

pub(crate) fn timed(
    command: Command,
    ctx: RunContext,
    body: impl FnOnce() -> Result<(Value, Value, String)>,
) -> Result<RunOutcome> {
    let start = Instant::now();
    let (inputs, outputs, table) = body()?;
    Ok(RunOutcome {
        report: RunReport {
            command,
            seed: ctx.seed,
            threads: ctx.threads,
            inputs,
            outputs,
            wall_time_s: start.elapsed().as_secs_f64(),
        },
        table,
    })
}
