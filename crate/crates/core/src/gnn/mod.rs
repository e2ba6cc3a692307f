//! Forward inference for GCN, GS-Pool, G-GCN and GAT layers.
//!
//! Every weight multiplication goes through [`Weight::matvec`], which uses
//! the block-circulant FFT path for compressed weights and a dense product
//! otherwise. [`GnnModel::densified`] gives the dense-expansion twin used to
//! check the two paths against each other.

mod activation;
mod aggregate;
mod config;
mod forward;
mod weights;

pub use activation::{activation, Activation, LEAKY_RELU_SLOPE};
pub use aggregate::{
    aggregate_gat, aggregate_gcn, aggregate_ggcn, aggregate_gspool, combine, gat_attention,
    ggcn_gates, FeatureLookup,
};
pub use config::{GnnModelConfig, LayerDims, Variant};
pub use forward::GnnModel;
pub use weights::{AttentionHead, LayerWeights, Weight};
