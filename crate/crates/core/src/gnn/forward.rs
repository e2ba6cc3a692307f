use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;

use super::aggregate::{
    aggregate_gat, aggregate_gcn, aggregate_ggcn, aggregate_gspool, combine, lookup, FeatureLookup,
};
use super::config::GnnModelConfig;
use super::weights::LayerWeights;
use crate::error::{Error, Result};
use crate::graph::{derive_seed, sample_neighbors, Graph};
use crate::linalg::DenseMatrix;

/// A configured model with weights for every layer.
#[derive(Debug, Clone)]
pub struct GnnModel {
    config: GnnModelConfig,
    layers: Vec<LayerWeights>,
}

type Samples = BTreeMap<usize, Vec<usize>>;

impl GnnModel {
    pub fn new(config: GnnModelConfig, layers: Vec<LayerWeights>) -> Result<Self> {
        config.validate()?;
        if layers.len() != config.num_layers {
            return Err(Error::dims(
                "weight layers",
                config.num_layers,
                layers.len(),
            ));
        }
        for (k, l) in layers.iter().enumerate() {
            l.validate(&config, k)?;
        }
        Ok(Self { config, layers })
    }

    pub fn random(config: GnnModelConfig, seed: u64) -> Result<Self> {
        config.validate()?;
        let layers = (0..config.num_layers)
            .map(|k| LayerWeights::random(&config, k, seed))
            .collect::<Result<Vec<_>>>()?;
        Self::new(config, layers)
    }

    pub fn config(&self) -> &GnnModelConfig {
        &self.config
    }

    pub fn layers(&self) -> &[LayerWeights] {
        &self.layers
    }

    /// The same model with every weight expanded to a dense matrix.
    pub fn densified(&self) -> GnnModel {
        GnnModel {
            config: GnnModelConfig {
                block_size: 1,
                ..self.config.clone()
            },
            layers: self.layers.iter().map(LayerWeights::densified).collect(),
        }
    }

    /// Runs `K` layers of sample, aggregate, combine for each node of
    /// `batch`. Returns one output row per batch entry, in batch order.
    ///
    /// Layer `k` input for a node is that node's layer `k-1` output, computed
    /// recursively over the sampling tree. Samples are drawn with a seed
    /// derived from `(seed, node, layer)`, so a node's representation at a
    /// layer does not depend on which batch node reached it, and the
    /// per-node work runs in parallel with the same result as a serial run.
    pub fn forward(&self, g: &Graph, batch: &[usize], seed: u64) -> Result<DenseMatrix> {
        let k_max = self.config.num_layers;
        if let Some(&v) = batch.iter().find(|&&v| v >= g.num_nodes()) {
            return Err(Error::Index {
                index: v,
                len: g.num_nodes(),
            });
        }
        if g.feature_dim() != self.config.dims[0].input {
            return Err(Error::dims(
                "graph feature width",
                self.config.dims[0].input,
                g.feature_dim(),
            ));
        }

        // Top-down: which nodes are needed at each layer and their samples.
        let mut needed: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); k_max + 1];
        let mut samples: Vec<Samples> = vec![Samples::new(); k_max + 1];
        needed[k_max] = batch.iter().copied().collect();
        for k in (1..=k_max).rev() {
            let size = self.config.sample_sizes[k - 1];
            let drawn = needed[k]
                .par_iter()
                .map(|&v| Ok((v, sample_neighbors(g, v, size, derive_seed(seed, v, k))?)))
                .collect::<Result<Vec<_>>>()?;
            let mut below = needed[k].clone();
            for (v, s) in drawn {
                below.extend(s.iter().copied());
                samples[k].insert(v, s);
            }
            needed[k - 1] = below;
        }

        // Bottom-up evaluation.
        let mut current: BTreeMap<usize, Vec<f64>> = BTreeMap::new();
        for k in 1..=k_max {
            let weights = &self.layers[k - 1];
            let next = {
                let eval = |v: usize| -> Result<(usize, Vec<f64>)> {
                    let s = &samples[k][&v];
                    let out = if k == 1 {
                        self.layer_node(weights, g, g.features(), v, s)?
                    } else {
                        self.layer_node(weights, g, &current, v, s)?
                    };
                    Ok((v, out))
                };
                needed[k]
                    .par_iter()
                    .map(|&v| eval(v))
                    .collect::<Result<BTreeMap<_, _>>>()?
            };
            current = next;
        }

        let out_dim = self.config.dims[k_max - 1].output;
        let mut out = DenseMatrix::zeros(batch.len(), out_dim);
        for (row, v) in batch.iter().enumerate() {
            out.row_mut(row).copy_from_slice(&current[v]);
        }
        Ok(out)
    }

    fn layer_node(
        &self,
        weights: &LayerWeights,
        g: &Graph,
        h: &(impl FeatureLookup + Sync),
        v: usize,
        samples: &[usize],
    ) -> Result<Vec<f64>> {
        let h_v = lookup(h, v)?;
        let rows = || {
            samples
                .iter()
                .map(|&u| lookup(h, u))
                .collect::<Result<Vec<&[f64]>>>()
        };
        let a_v = match weights {
            LayerWeights::Gcn { .. } => aggregate_gcn(g, h, v, samples)?,
            LayerWeights::GsPool { w_pool, bias, .. } => aggregate_gspool(&rows()?, w_pool, bias)?,
            LayerWeights::Ggcn { w_h, w_c, .. } => aggregate_ggcn(&rows()?, h_v, w_h, w_c)?,
            LayerWeights::Gat { heads, .. } => aggregate_gat(&rows()?, h_v, heads)?,
        };
        combine(self.config.variant, &a_v, h_v, weights.combiner())
    }
}
