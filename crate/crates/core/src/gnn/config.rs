use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Variant {
    #[serde(rename = "gcn", alias = "GCN")]
    Gcn,
    #[serde(rename = "gs-pool", alias = "GS-Pool", alias = "gspool")]
    GsPool,
    #[serde(rename = "g-gcn", alias = "G-GCN", alias = "ggcn")]
    Ggcn,
    #[serde(rename = "gat", alias = "GAT")]
    Gat,
}

impl Variant {
    pub const ALL: [Variant; 4] = [Variant::Gcn, Variant::GsPool, Variant::Ggcn, Variant::Gat];

    pub fn name(self) -> &'static str {
        match self {
            Variant::Gcn => "GCN",
            Variant::GsPool => "GS-Pool",
            Variant::Ggcn => "G-GCN",
            Variant::Gat => "GAT",
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace('_', "-").as_str() {
            "gcn" => Ok(Variant::Gcn),
            "gs-pool" | "gspool" | "graphsage-pool" => Ok(Variant::GsPool),
            "g-gcn" | "ggcn" => Ok(Variant::Ggcn),
            "gat" => Ok(Variant::Gat),
            _ => Err(Error::Config(format!("unknown GNN variant {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LayerDims {
    pub input: usize,
    pub output: usize,
}

impl LayerDims {
    pub const fn new(input: usize, output: usize) -> Self {
        Self { input, output }
    }
}

fn default_block_size() -> usize {
    1
}

fn default_heads() -> usize {
    1
}

/// Model shape. `dims[k]` and `sample_sizes[k]` belong to layer `k + 1`;
/// layer 1 reads the raw node features.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GnnModelConfig {
    pub variant: Variant,
    pub num_layers: usize,
    pub dims: Vec<LayerDims>,
    pub sample_sizes: Vec<usize>,
    /// 1 keeps every weight dense.
    #[serde(default = "default_block_size")]
    pub block_size: usize,
    #[serde(default = "default_heads")]
    pub gat_heads: usize,
    #[serde(default)]
    pub gat_head_dim: usize,
    /// Weight names (`W`, `W_pool`, `W_H`, `W_C`, `W_att`) kept dense even
    /// when `block_size > 1`. `["W"]` compresses only the aggregators.
    #[serde(default)]
    pub dense_weights: Vec<String>,
}

impl GnnModelConfig {
    pub fn new(
        variant: Variant,
        dims: Vec<LayerDims>,
        sample_sizes: Vec<usize>,
        block_size: usize,
    ) -> Self {
        Self {
            variant,
            num_layers: dims.len(),
            dims,
            sample_sizes,
            block_size,
            gat_heads: 1,
            gat_head_dim: 0,
            dense_weights: Vec::new(),
        }
    }

    pub fn with_gat_heads(mut self, heads: usize, head_dim: usize) -> Self {
        self.gat_heads = heads;
        self.gat_head_dim = head_dim;
        self
    }

    pub fn with_dense_weights<S: Into<String>>(
        mut self,
        names: impl IntoIterator<Item = S>,
    ) -> Self {
        self.dense_weights = names.into_iter().map(Into::into).collect();
        self
    }

    /// Input width of the combination weight `W` for a layer.
    pub fn combine_input_dim(&self, layer: usize) -> usize {
        let d = self.dims[layer].input;
        match self.variant {
            Variant::Gcn | Variant::Ggcn => d,
            Variant::GsPool => 2 * d,
            Variant::Gat => self.gat_heads * d,
        }
    }

    /// Whether the named weight uses the block-circulant path.
    pub fn is_compressed(&self, weight_name: &str) -> bool {
        self.block_size > 1 && !self.dense_weights.iter().any(|n| n == weight_name)
    }

    pub fn validate(&self) -> Result<()> {
        if self.num_layers == 0 {
            return Err(Error::Config("model needs at least one layer".into()));
        }
        if self.dims.len() != self.num_layers {
            return Err(Error::Config(format!(
                "{} layers declared but {} dimension entries given",
                self.num_layers,
                self.dims.len()
            )));
        }
        if self.sample_sizes.len() != self.num_layers {
            return Err(Error::Config(format!(
                "{} layers declared but {} sample sizes given",
                self.num_layers,
                self.sample_sizes.len()
            )));
        }
        if let Some(k) = self.sample_sizes.iter().position(|&s| s == 0) {
            return Err(Error::Config(format!("layer {} has sample size 0", k + 1)));
        }
        for (k, d) in self.dims.iter().enumerate() {
            if d.input == 0 || d.output == 0 {
                return Err(Error::Config(format!(
                    "layer {} has a zero dimension",
                    k + 1
                )));
            }
        }
        for k in 1..self.num_layers {
            if self.dims[k].input != self.dims[k - 1].output {
                return Err(Error::Config(format!(
                    "layer {} expects input {} but layer {} outputs {}",
                    k + 1,
                    self.dims[k].input,
                    k,
                    self.dims[k - 1].output
                )));
            }
        }
        if !self.block_size.is_power_of_two() {
            return Err(Error::NotPowerOfTwo(self.block_size));
        }
        if self.variant == Variant::Gat && (self.gat_heads == 0 || self.gat_head_dim == 0) {
            return Err(Error::Config(
                "GAT needs at least one head of nonzero width".into(),
            ));
        }
        Ok(())
    }
}
