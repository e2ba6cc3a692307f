use serde::{Deserialize, Serialize};

use super::CostCoefficients;
use crate::error::{Error, Result};
use crate::graph::GraphStats;

/// One block-circulant matvec workload per node: `samples` input vectors
/// through a `p x q` block matrix with `rows` real outputs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LayerWorkload {
    pub samples: u64,
    pub p: u64,
    pub q: u64,
    pub rows: u64,
}

impl LayerWorkload {
    /// `p = ceil(output/n)`, `q = ceil(input/n)`.
    pub fn from_dims(samples: u64, input: u64, output: u64, n: u64) -> Self {
        Self {
            samples,
            p: output.div_ceil(n),
            q: input.div_ceil(n),
            rows: output,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WorkloadSpec {
    pub num_nodes: u64,
    pub block_size: u64,
    pub layers: Vec<LayerWorkload>,
}

impl WorkloadSpec {
    pub fn new(num_nodes: u64, block_size: u64, layers: Vec<LayerWorkload>) -> Self {
        Self {
            num_nodes,
            block_size,
            layers,
        }
    }

    /// Two-layer GS-Pool aggregation workload over a benchmark dataset with
    /// every weight `hidden x hidden`.
    pub fn gspool_hidden(stats: &GraphStats, hidden: u64, samples: &[u64], n: u64) -> Self {
        let layers = samples
            .iter()
            .map(|&s| LayerWorkload::from_dims(s, hidden, hidden, n))
            .collect();
        Self::new(stats.num_nodes, n, layers)
    }

    /// Like [`gspool_hidden`](Self::gspool_hidden) but the first layer reads
    /// the dataset's raw feature width.
    pub fn gspool_raw_input(stats: &GraphStats, hidden: u64, samples: &[u64], n: u64) -> Self {
        let layers = samples
            .iter()
            .enumerate()
            .map(|(k, &s)| {
                let input = if k == 0 { stats.feature_dim } else { hidden };
                LayerWorkload::from_dims(s, input, hidden, n)
            })
            .collect();
        Self::new(stats.num_nodes, n, layers)
    }

    /// Appends the GS-Pool combination matvecs (`2*input -> output`, one
    /// vector per node) as extra layers.
    pub fn with_gspool_combination(mut self, dims: &[(u64, u64)]) -> Self {
        for &(input, output) in dims {
            self.layers.push(LayerWorkload::from_dims(
                1,
                2 * input,
                output,
                self.block_size,
            ));
        }
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !self.block_size.is_power_of_two() {
            return Err(Error::NotPowerOfTwo(self.block_size as usize));
        }
        if self.layers.is_empty() {
            return Err(Error::Config("workload has no layers".into()));
        }
        if self
            .layers
            .iter()
            .any(|l| l.samples == 0 || l.p == 0 || l.q == 0 || l.rows == 0)
        {
            return Err(Error::Config("workload layer with a zero count".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct WorkloadLayerDoc {
    pub samples: u64,
    pub input_dim: u64,
    pub output_dim: u64,
}

/// On-disk workload document read by the `search` command.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WorkloadDoc {
    #[serde(default)]
    pub name: Option<String>,
    pub num_nodes: u64,
    pub block_size: u64,
    /// Aggregation matvec layers.
    pub layers: Vec<WorkloadLayerDoc>,
    /// Combination matvecs, one vector per node each. Only counted when
    /// requested.
    #[serde(default)]
    pub combination: Vec<WorkloadLayerDoc>,
    /// Defaults to the tabulated coefficients for `block_size`.
    #[serde(default)]
    pub coefficients: Option<CostCoefficients>,
    /// Overrides the coefficients' budget.
    #[serde(default)]
    pub dsp_budget: Option<u64>,
}

impl WorkloadDoc {
    pub fn to_spec(&self, include_combination: bool) -> Result<(WorkloadSpec, CostCoefficients)> {
        let n = self.block_size;
        let extra: &[WorkloadLayerDoc] = if include_combination {
            &self.combination
        } else {
            &[]
        };
        let layers = self
            .layers
            .iter()
            .chain(extra)
            .map(|l| LayerWorkload::from_dims(l.samples, l.input_dim, l.output_dim, n))
            .collect();
        let spec = WorkloadSpec::new(self.num_nodes, n, layers);
        spec.validate()?;
        let mut coeffs = match self.coefficients {
            Some(c) => c,
            None => CostCoefficients::for_block_size(n)?,
        };
        if let Some(b) = self.dsp_budget {
            coeffs.dsp_budget = b;
        }
        coeffs.validate()?;
        Ok((spec, coeffs))
    }
}
