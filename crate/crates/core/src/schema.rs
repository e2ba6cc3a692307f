//! JSON documents for model configs and weight files.
//!
//! A weight file holds one map per layer from weight name to matrix:
//!
//! ```json
//! {"layers": [{"W": {"rows": 4, "cols": 8, "block_size": 4,
//!                    "defining_vectors": [[1, 0, 0, 0], [0, 1, 0, 0]]}}]}
//! ```
//!
//! `block_size` 1 stores the matrix row-major under `data`; larger sizes
//! store one defining vector (first column) per block, blocks in row-major
//! order. Vectors (`b`, `a_<h>`) are `rows x 1` dense matrices. GAT heads
//! use `W_att_<h>` and `a_<h>`.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::circulant::BlockCirculantMatrix;
use crate::error::{Error, Result};
use crate::gnn::{AttentionHead, GnnModel, GnnModelConfig, LayerWeights, Variant, Weight};
use crate::linalg::DenseMatrix;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixRecord {
    pub rows: usize,
    pub cols: usize,
    pub block_size: usize,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub data: Vec<f64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub defining_vectors: Vec<Vec<f64>>,
}

impl MatrixRecord {
    pub fn dense(m: &DenseMatrix) -> Self {
        Self {
            rows: m.rows(),
            cols: m.cols(),
            block_size: 1,
            data: m.as_slice().to_vec(),
            defining_vectors: Vec::new(),
        }
    }

    pub fn vector(v: &[f64]) -> Self {
        Self {
            rows: v.len(),
            cols: 1,
            block_size: 1,
            data: v.to_vec(),
            defining_vectors: Vec::new(),
        }
    }

    pub fn circulant(m: &BlockCirculantMatrix) -> Self {
        Self {
            rows: m.rows(),
            cols: m.cols(),
            block_size: m.block_size(),
            data: Vec::new(),
            defining_vectors: m
                .defining_vectors()
                .chunks(m.block_size())
                .map(<[f64]>::to_vec)
                .collect(),
        }
    }

    pub fn from_weight(w: &Weight) -> Self {
        match w {
            Weight::Dense(d) => Self::dense(d),
            Weight::Circulant { matrix, .. } => Self::circulant(matrix),
        }
    }

    pub fn to_weight(&self, name: &str) -> Result<Weight> {
        if self.block_size <= 1 {
            Ok(Weight::Dense(self.to_dense_matrix(name)?))
        } else {
            if !self.data.is_empty() {
                return Err(Error::Schema(format!(
                    "{name}: block size {} stores defining_vectors, not data",
                    self.block_size
                )));
            }
            let n = self.block_size;
            if let Some(v) = self.defining_vectors.iter().find(|v| v.len() != n) {
                return Err(Error::dims(format!("{name} defining vector"), n, v.len()));
            }
            let flat = self.defining_vectors.concat();
            Ok(Weight::circulant(BlockCirculantMatrix::new(
                self.rows, self.cols, n, flat,
            )?))
        }
    }

    /// The dense contents; fails for block-circulant records.
    pub fn to_dense_matrix(&self, name: &str) -> Result<DenseMatrix> {
        if self.block_size > 1 {
            return Err(Error::Schema(format!(
                "{name} is block-circulant, expected dense"
            )));
        }
        if !self.defining_vectors.is_empty() {
            return Err(Error::Schema(format!("{name}: dense records store data")));
        }
        if self.data.len() != self.rows * self.cols {
            return Err(Error::dims(
                format!("{name} data length"),
                self.rows * self.cols,
                self.data.len(),
            ));
        }
        DenseMatrix::from_row_major(self.rows, self.cols, self.data.clone())
    }

    fn to_vector(&self, name: &str) -> Result<Vec<f64>> {
        if self.cols != 1 {
            return Err(Error::dims(format!("{name} cols"), 1, self.cols));
        }
        Ok(self.to_dense_matrix(name)?.into_vec())
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct WeightsFile {
    pub layers: Vec<BTreeMap<String, MatrixRecord>>,
}

impl WeightsFile {
    pub fn from_model(model: &GnnModel) -> Self {
        let layers = model
            .layers()
            .iter()
            .map(|l| {
                let mut m = BTreeMap::new();
                m.insert("W".to_string(), MatrixRecord::from_weight(l.combiner()));
                match l {
                    LayerWeights::Gcn { .. } => {}
                    LayerWeights::GsPool { w_pool, bias, .. } => {
                        m.insert("W_pool".into(), MatrixRecord::from_weight(w_pool));
                        m.insert("b".into(), MatrixRecord::vector(bias));
                    }
                    LayerWeights::Ggcn { w_h, w_c, .. } => {
                        m.insert("W_H".into(), MatrixRecord::from_weight(w_h));
                        m.insert("W_C".into(), MatrixRecord::from_weight(w_c));
                    }
                    LayerWeights::Gat { heads, .. } => {
                        for (h, head) in heads.iter().enumerate() {
                            m.insert(
                                format!("W_att_{h}"),
                                MatrixRecord::from_weight(&head.projection),
                            );
                            m.insert(format!("a_{h}"), MatrixRecord::vector(&head.attention));
                        }
                    }
                }
                m
            })
            .collect();
        Self { layers }
    }

    /// Builds and validates a model from these weights.
    pub fn to_model(&self, config: GnnModelConfig) -> Result<GnnModel> {
        config.validate()?;
        if self.layers.len() != config.num_layers {
            return Err(Error::dims(
                "weight file layers",
                config.num_layers,
                self.layers.len(),
            ));
        }
        let layers = self
            .layers
            .iter()
            .enumerate()
            .map(|(k, m)| {
                let get = |name: &str| {
                    m.get(name).ok_or_else(|| {
                        Error::Schema(format!("layer {} is missing weight {name:?}", k + 1))
                    })
                };
                let w = get("W")?.to_weight("W")?;
                Ok(match config.variant {
                    Variant::Gcn => LayerWeights::Gcn { w },
                    Variant::GsPool => LayerWeights::GsPool {
                        w_pool: get("W_pool")?.to_weight("W_pool")?,
                        bias: get("b")?.to_vector("b")?,
                        w,
                    },
                    Variant::Ggcn => LayerWeights::Ggcn {
                        w_h: get("W_H")?.to_weight("W_H")?,
                        w_c: get("W_C")?.to_weight("W_C")?,
                        w,
                    },
                    Variant::Gat => {
                        let heads = (0..config.gat_heads)
                            .map(|h| {
                                let (pn, an) = (format!("W_att_{h}"), format!("a_{h}"));
                                Ok(AttentionHead {
                                    projection: get(&pn)?.to_weight(&pn)?,
                                    attention: get(&an)?.to_vector(&an)?,
                                })
                            })
                            .collect::<Result<Vec<_>>>()?;
                        LayerWeights::Gat { heads, w }
                    }
                })
            })
            .collect::<Result<Vec<_>>>()?;
        GnnModel::new(config, layers)
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::io(path, e))
}

fn json_error(path: &Path, e: serde_json::Error) -> Error {
    Error::Schema(format!("{}: {e}", path.display()))
}

pub fn load_weights(path: &Path) -> Result<WeightsFile> {
    serde_json::from_str(&read(path)?).map_err(|e| json_error(path, e))
}

pub fn save_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let text = serde_json::to_string_pretty(value).map_err(|e| Error::Internal(e.to_string()))?;
    fs::write(path, text + "\n").map_err(|e| Error::io(path, e))
}

/// Parses a model config. An unrecognized variant name is a configuration
/// error rather than a schema error.
pub fn parse_model_config(text: &str, path: &Path) -> Result<GnnModelConfig> {
    let mut value: serde_json::Value =
        serde_json::from_str(text).map_err(|e| json_error(path, e))?;
    let variant = value
        .get("variant")
        .and_then(|v| v.as_str())
        .ok_or_else(|| {
            Error::Schema(format!(
                "{}: missing string field \"variant\"",
                path.display()
            ))
        })?;
    let variant: Variant = variant.parse()?;
    value["variant"] = serde_json::to_value(variant).map_err(|e| Error::Internal(e.to_string()))?;
    let config: GnnModelConfig = serde_json::from_value(value).map_err(|e| json_error(path, e))?;
    config.validate()?;
    Ok(config)
}

pub fn load_model_config(path: &Path) -> Result<GnnModelConfig> {
    parse_model_config(&read(path)?, path)
}

pub fn load_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T> {
    serde_json::from_str(&read(path)?).map_err(|e| json_error(path, e))
}
