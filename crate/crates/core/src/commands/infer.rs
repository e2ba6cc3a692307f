use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;

use serde::{Deserialize, Serialize};
use serde_json::json;

use super::{timed, to_value, Command, RunContext, RunOutcome};
use crate::error::{Error, Result};
use crate::gnn::GnnModel;
use crate::graph::load_edge_list;
use crate::linalg::DenseMatrix;
use crate::schema::{load_model_config, load_weights};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct InferArgs {
    pub config: PathBuf,
    pub graph: PathBuf,
    pub features: Option<PathBuf>,
    /// Random weights from the run seed when absent.
    pub weights: Option<PathBuf>,
    /// `all`, or comma-separated ids and `a..b` ranges.
    pub batch: String,
    /// CSV destination for the output rows.
    pub output: Option<PathBuf>,
}

/// Per-dimension mean and max over the output rows.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FeatureDigest {
    pub rows: usize,
    pub cols: usize,
    pub mean: Vec<f64>,
    pub max: Vec<f64>,
}

impl FeatureDigest {
    pub fn of(m: &DenseMatrix) -> Self {
        let (rows, cols) = (m.rows(), m.cols());
        let mut mean = vec![0.0; cols];
        let mut max = vec![f64::NEG_INFINITY; cols];
        for r in 0..rows {
            for (c, &x) in m.row(r).iter().enumerate() {
                mean[c] += x;
                max[c] = max[c].max(x);
            }
        }
        if rows > 0 {
            mean.iter_mut().for_each(|x| *x /= rows as f64);
        } else {
            max.fill(0.0);
        }
        Self {
            rows,
            cols,
            mean,
            max,
        }
    }
}

/// Parses `all`, `3`, `0,2,5`, `0..4` (exclusive end) or mixtures.
pub fn parse_batch(spec: &str, num_nodes: usize) -> Result<Vec<usize>> {
    let spec = spec.trim();
    if spec.eq_ignore_ascii_case("all") {
        return Ok((0..num_nodes).collect());
    }
    let bad = |part: &str| Error::Config(format!("bad batch entry {part:?}"));
    let mut out = Vec::new();
    for part in spec.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        if let Some((a, b)) = part.split_once("..") {
            let a: usize = a.trim().parse().map_err(|_| bad(part))?;
            let b: usize = b.trim().parse().map_err(|_| bad(part))?;
            out.extend(a..b);
        } else {
            out.push(part.parse().map_err(|_| bad(part))?);
        }
    }
    if out.is_empty() {
        return Err(Error::Config("empty batch".into()));
    }
    if let Some(&v) = out.iter().find(|&&v| v >= num_nodes) {
        return Err(Error::Index {
            index: v,
            len: num_nodes,
        });
    }
    Ok(out)
}

fn write_csv(path: &PathBuf, m: &DenseMatrix) -> Result<()> {
    let mut s = String::new();
    for r in 0..m.rows() {
        let row: Vec<String> = m.row(r).iter().map(|x| x.to_string()).collect();
        s.push_str(&row.join(","));
        s.push('\n');
    }
    fs::write(path, s).map_err(|e| Error::io(path, e))
}

/// Loads a model and graph and runs a forward pass over the batch.
pub fn infer(args: &InferArgs, ctx: RunContext) -> Result<RunOutcome> {
    timed(Command::Infer, ctx, || {
        let config = load_model_config(&args.config)?;
        let graph = load_edge_list(&args.graph, args.features.as_deref())?;
        let model = match &args.weights {
            Some(p) => load_weights(p)?.to_model(config.clone())?,
            None => GnnModel::random(config.clone(), ctx.seed)?,
        };
        let batch = parse_batch(&args.batch, graph.num_nodes())?;
        let out = model.forward(&graph, &batch, ctx.seed)?;
        if let Some(p) = &args.output {
            write_csv(p, &out)?;
        }
        let digest = FeatureDigest::of(&out);

        let mut table = format!(
            "{} model, {} layers, {} nodes / {} arcs, batch of {}\n{:>5} {:>14} {:>14}\n",
            config.variant,
            config.num_layers,
            graph.num_nodes(),
            graph.num_edges(),
            batch.len(),
            "dim",
            "mean",
            "max"
        );
        for (c, (m, x)) in digest.mean.iter().zip(&digest.max).enumerate() {
            let _ = writeln!(table, "{c:>5} {m:>14.6} {x:>14.6}");
        }
        let inputs = json!({
            "args": to_value(args)?,
            "model": to_value(&config)?,
            "graph": {"num_nodes": graph.num_nodes(), "num_arcs": graph.num_edges(), "feature_dim": graph.feature_dim()},
            "batch": batch,
        });
        let outputs = json!({ "digest": to_value(&digest)? });
        Ok((inputs, outputs, table))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn batch_specs() {
        assert_eq!(parse_batch("all", 3).unwrap(), vec![0, 1, 2]);
        assert_eq!(parse_batch("0..3, 7", 8).unwrap(), vec![0, 1, 2, 7]);
        assert!(matches!(parse_batch("9", 8), Err(Error::Index { .. })));
        assert!(parse_batch("x", 8).is_err());
        assert!(parse_batch("", 8).is_err());
    }

    #[test]
    fn digest_values() {
        let m = DenseMatrix::from_row_major(2, 2, vec![1.0, -1.0, 3.0, -5.0]).unwrap();
        let d = FeatureDigest::of(&m);
        assert_eq!(d.mean, vec![2.0, -3.0]);
        assert_eq!(d.max, vec![3.0, -1.0]);
    }
}
