use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::config::{GnnModelConfig, Variant};
use crate::circulant::{precompute_spectral, BlockCirculantMatrix, SpectralWeights};
use crate::error::{Error, Result};
use crate::graph::derive_seed;
use crate::linalg::DenseMatrix;

/// A weight matrix on either compute path.
#[allow(clippy::large_enum_variant)]
#[derive(Debug, Clone)]
pub enum Weight {
    Dense(DenseMatrix),
    Circulant {
        matrix: BlockCirculantMatrix,
        spectral: SpectralWeights,
    },
}

impl Weight {
    pub fn circulant(matrix: BlockCirculantMatrix) -> Self {
        let spectral = precompute_spectral(&matrix);
        Weight::Circulant { matrix, spectral }
    }

    pub fn rows(&self) -> usize {
        match self {
            Weight::Dense(d) => d.rows(),
            Weight::Circulant { matrix, .. } => matrix.rows(),
        }
    }

    pub fn cols(&self) -> usize {
        match self {
            Weight::Dense(d) => d.cols(),
            Weight::Circulant { matrix, .. } => matrix.cols(),
        }
    }

    /// 1 for dense weights.
    pub fn block_size(&self) -> usize {
        match self {
            Weight::Dense(_) => 1,
            Weight::Circulant { matrix, .. } => matrix.block_size(),
        }
    }

    pub fn matvec(&self, x: &[f64]) -> Result<Vec<f64>> {
        match self {
            Weight::Dense(d) => d.matvec(x),
            Weight::Circulant { spectral, .. } => spectral.bc_matvec(x),
        }
    }

    pub fn to_dense(&self) -> DenseMatrix {
        match self {
            Weight::Dense(d) => d.clone(),
            Weight::Circulant { matrix, .. } => matrix.to_dense(),
        }
    }

    /// The same linear map on the dense path.
    pub fn densified(&self) -> Weight {
        Weight::Dense(self.to_dense())
    }

    fn check_shape(&self, name: &str, rows: usize, cols: usize) -> Result<()> {
        if self.rows() != rows {
            return Err(Error::dims(format!("{name} rows"), rows, self.rows()));
        }
        if self.cols() != cols {
            return Err(Error::dims(format!("{name} cols"), cols, self.cols()));
        }
        Ok(())
    }
}

/// Attention projection and scoring vector of one GAT head.
#[derive(Debug, Clone)]
pub struct AttentionHead {
    /// `head_dim x input_dim`
    pub projection: Weight,
    /// Length `2 * head_dim`, scores `[W h_v || W h_u]`.
    pub attention: Vec<f64>,
}

#[derive(Debug, Clone)]
#[allow(clippy::large_enum_variant)]
pub enum LayerWeights {
    Gcn {
        w: Weight,
    },
    GsPool {
        w_pool: Weight,
        bias: Vec<f64>,
        w: Weight,
    },
    Ggcn {
        w_h: Weight,
        w_c: Weight,
        w: Weight,
    },
    Gat {
        heads: Vec<AttentionHead>,
        w: Weight,
    },
}

impl LayerWeights {
    pub fn variant(&self) -> Variant {
        match self {
            LayerWeights::Gcn { .. } => Variant::Gcn,
            LayerWeights::GsPool { .. } => Variant::GsPool,
            LayerWeights::Ggcn { .. } => Variant::Ggcn,
            LayerWeights::Gat { .. } => Variant::Gat,
        }
    }

    /// The combination weight.
    pub fn combiner(&self) -> &Weight {
        match self {
            LayerWeights::Gcn { w }
            | LayerWeights::GsPool { w, .. }
            | LayerWeights::Ggcn { w, .. }
            | LayerWeights::Gat { w, .. } => w,
        }
    }

    /// Replaces every block-circulant weight with its dense expansion.
    pub fn densified(&self) -> LayerWeights {
        match self {
            LayerWeights::Gcn { w } => LayerWeights::Gcn { w: w.densified() },
            LayerWeights::GsPool { w_pool, bias, w } => LayerWeights::GsPool {
                w_pool: w_pool.densified(),
                bias: bias.clone(),
                w: w.densified(),
            },
            LayerWeights::Ggcn { w_h, w_c, w } => LayerWeights::Ggcn {
                w_h: w_h.densified(),
                w_c: w_c.densified(),
                w: w.densified(),
            },
            LayerWeights::Gat { heads, w } => LayerWeights::Gat {
                heads: heads
                    .iter()
                    .map(|h| AttentionHead {
                        projection: h.projection.densified(),
                        attention: h.attention.clone(),
                    })
                    .collect(),
                w: w.densified(),
            },
        }
    }

    /// Checks every weight against the shapes `config` implies for `layer`.
    pub fn validate(&self, config: &GnnModelConfig, layer: usize) -> Result<()> {
        if self.variant() != config.variant {
            return Err(Error::Config(format!(
                "layer {} holds {} weights for a {} model",
                layer + 1,
                self.variant(),
                config.variant
            )));
        }
        let d = config.dims[layer];
        self.combiner()
            .check_shape("W", d.output, config.combine_input_dim(layer))?;
        match self {
            LayerWeights::Gcn { .. } => {}
            LayerWeights::GsPool { w_pool, bias, .. } => {
                w_pool.check_shape("W_pool", d.input, d.input)?;
                if bias.len() != d.input {
                    return Err(Error::dims("GS-Pool bias", d.input, bias.len()));
                }
            }
            LayerWeights::Ggcn { w_h, w_c, .. } => {
                // gates multiply features element-wise, so they keep the width
                w_h.check_shape("W_H", d.input, d.input)?;
                w_c.check_shape("W_C", d.input, d.input)?;
            }
            LayerWeights::Gat { heads, .. } => {
                if heads.len() != config.gat_heads {
                    return Err(Error::dims("GAT heads", config.gat_heads, heads.len()));
                }
                for head in heads {
                    head.projection
                        .check_shape("W_att", config.gat_head_dim, d.input)?;
                    if head.attention.len() != 2 * config.gat_head_dim {
                        return Err(Error::dims(
                            "GAT attention vector",
                            2 * config.gat_head_dim,
                            head.attention.len(),
                        ));
                    }
                }
            }
        }
        Ok(())
    }

    /// Random weights for one layer: block-circulant where `config`
    /// compresses the name, dense otherwise, all uniform in
    /// `[-1/sqrt(cols), 1/sqrt(cols)]`.
    pub fn random(config: &GnnModelConfig, layer: usize, seed: u64) -> Result<LayerWeights> {
        let d = config.dims[layer];
        let mut salt = 0usize;
        let mut next_seed = || {
            salt += 1;
            derive_seed(seed, salt, layer)
        };
        let mut weight = |name: &str, rows: usize, cols: usize| -> Result<Weight> {
            let s = next_seed();
            if config.is_compressed(name) {
                Ok(Weight::circulant(BlockCirculantMatrix::new_random(
                    rows,
                    cols,
                    config.block_size,
                    s,
                )?))
            } else {
                Ok(Weight::Dense(random_dense(rows, cols, s)))
            }
        };
        let w = weight("W", d.output, config.combine_input_dim(layer))?;
        Ok(match config.variant {
            Variant::Gcn => LayerWeights::Gcn { w },
            Variant::GsPool => LayerWeights::GsPool {
                w_pool: weight("W_pool", d.input, d.input)?,
                bias: random_vector(
                    d.input,
                    1.0 / (d.input as f64).sqrt(),
                    derive_seed(seed, 1000, layer),
                ),
                w,
            },
            Variant::Ggcn => LayerWeights::Ggcn {
                w_h: weight("W_H", d.input, d.input)?,
                w_c: weight("W_C", d.input, d.input)?,
                w,
            },
            Variant::Gat => {
                let heads = (0..config.gat_heads)
                    .map(|h| {
                        Ok(AttentionHead {
                            projection: weight("W_att", config.gat_head_dim, d.input)?,
                            attention: random_vector(
                                2 * config.gat_head_dim,
                                1.0 / ((2 * config.gat_head_dim) as f64).sqrt(),
                                derive_seed(seed, 2000 + h, layer),
                            ),
                        })
                    })
                    .collect::<Result<Vec<_>>>()?;
                LayerWeights::Gat { heads, w }
            }
        })
    }
}

fn random_dense(rows: usize, cols: usize, seed: u64) -> DenseMatrix {
    let bound = 1.0 / (cols as f64).sqrt();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    DenseMatrix::from_fn(rows, cols, |_, _| rng.random_range(-bound..=bound))
}

fn random_vector(len: usize, bound: f64, seed: u64) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..len).map(|_| rng.random_range(-bound..=bound)).collect()
}
