use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::PathBuf;

use serde::{Deserialize, Serialize};
use serde_json::json;

use super::{timed, to_value, Command, RunContext, RunOutcome};
use crate::circulant::{compression_stats, project_to_block_circulant};
use crate::error::{Error, Result};
use crate::schema::{load_weights, save_json, MatrixRecord, WeightsFile};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CompressArgs {
    pub weights: PathBuf,
    pub block_size: usize,
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixCompression {
    pub layer: usize,
    pub name: String,
    pub rows: usize,
    pub cols: usize,
    pub block_size: usize,
    /// Frobenius norm of the projection residual.
    pub projection_error: f64,
    pub relative_error: f64,
    pub tcr: f64,
    pub sr: f64,
}

/// Weight matrices are the entries named `W...`; vectors pass through.
fn is_matrix(name: &str) -> bool {
    name.starts_with('W')
}

/// Projects every weight matrix of `file` onto block size `n`.
pub fn compress_weights(
    file: &WeightsFile,
    n: usize,
) -> Result<(WeightsFile, Vec<MatrixCompression>)> {
    if !n.is_power_of_two() {
        return Err(Error::NotPowerOfTwo(n));
    }
    let mut rows = Vec::new();
    let mut layers = Vec::with_capacity(file.layers.len());
    for (k, layer) in file.layers.iter().enumerate() {
        let mut out = BTreeMap::new();
        for (name, rec) in layer {
            if !is_matrix(name) {
                out.insert(name.clone(), rec.clone());
                continue;
            }
            let dense = rec.to_weight(name)?.to_dense();
            let (new_rec, err) = if n == 1 {
                (MatrixRecord::dense(&dense), 0.0)
            } else {
                let bc = project_to_block_circulant(&dense, n)?;
                let err = bc.to_dense().frobenius_distance(&dense)?;
                (MatrixRecord::circulant(&bc), err)
            };
            let norm = dense.as_slice().iter().map(|x| x * x).sum::<f64>().sqrt();
            let stats = compression_stats(dense.rows(), dense.cols(), n)?;
            rows.push(MatrixCompression {
                layer: k + 1,
                name: name.clone(),
                rows: dense.rows(),
                cols: dense.cols(),
                block_size: n,
                projection_error: err,
                relative_error: if norm > 0.0 { err / norm } else { 0.0 },
                tcr: stats.tcr,
                sr: stats.sr,
            });
            out.insert(name.clone(), new_rec);
        }
        layers.push(out);
    }
    Ok((WeightsFile { layers }, rows))
}

pub fn compress(args: &CompressArgs, ctx: RunContext) -> Result<RunOutcome> {
    timed(Command::Compress, ctx, || {
        let file = load_weights(&args.weights)?;
        let (compressed, rows) = compress_weights(&file, args.block_size)?;
        if let Some(p) = &args.output {
            save_json(p, &compressed)?;
        }
        let mut table = format!(
            "{:>5} {:<8} {:>11} {:>12} {:>10} {:>8} {:>8}\n",
            "layer", "weight", "shape", "frob error", "relative", "TCR", "SR"
        );
        for r in &rows {
            let _ = writeln!(
                table,
                "{:>5} {:<8} {:>11} {:>12.4e} {:>10.4} {:>8.2} {:>8.1}",
                r.layer,
                r.name,
                format!("{}x{}", r.rows, r.cols),
                r.projection_error,
                r.relative_error,
                r.tcr,
                r.sr
            );
        }
        Ok((
            to_value(args)?,
            json!({ "matrices": to_value(&rows)? }),
            table,
        ))
    })
}
