//! Aggregation functions of the four GNN variants and the shared
//! combination step.

use std::collections::BTreeMap;

use super::activation::Activation;
use super::config::Variant;
use super::weights::{AttentionHead, Weight};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::linalg::DenseMatrix;

/// Row access to node features of one layer.
pub trait FeatureLookup {
    fn feature(&self, v: usize) -> Option<&[f64]>;
}

impl FeatureLookup for DenseMatrix {
    fn feature(&self, v: usize) -> Option<&[f64]> {
        (v < self.rows()).then(|| self.row(v))
    }
}

impl FeatureLookup for BTreeMap<usize, Vec<f64>> {
    fn feature(&self, v: usize) -> Option<&[f64]> {
        self.get(&v).map(Vec::as_slice)
    }
}

pub(crate) fn lookup(h: &impl FeatureLookup, v: usize) -> Result<&[f64]> {
    h.feature(v)
        .ok_or_else(|| Error::Internal(format!("features of node {v} were not computed")))
}

fn add_into(acc: &mut [f64], x: &[f64], scale: f64) {
    for (a, v) in acc.iter_mut().zip(x) {
        *a += scale * v;
    }
}

/// `a_v = sum_u h_u / sqrt(deg(u) * deg(v))` over the sample, summed left
/// to right. Zero degrees count as 1 (the self-fallback sample).
pub fn aggregate_gcn(
    g: &Graph,
    h: &impl FeatureLookup,
    v: usize,
    samples: &[usize],
) -> Result<Vec<f64>> {
    let deg = |u: usize| g.degree(u).max(1) as f64;
    let deg_v = deg(v);
    let first = lookup(
        h,
        *samples
            .first()
            .ok_or_else(|| Error::Config("empty sample".into()))?,
    )?;
    let mut acc = vec![0.0; first.len()];
    for &u in samples {
        let hu = lookup(h, u)?;
        if hu.len() != acc.len() {
            return Err(Error::dims("GCN neighbor feature", acc.len(), hu.len()));
        }
        add_into(&mut acc, hu, 1.0 / (deg(u) * deg_v).sqrt());
    }
    Ok(acc)
}

/// `a_v = max_u Relu(W_pool h_u + b)`, element-wise.
pub fn aggregate_gspool(h_samples: &[&[f64]], w_pool: &Weight, bias: &[f64]) -> Result<Vec<f64>> {
    if h_samples.is_empty() {
        return Err(Error::Config("empty sample".into()));
    }
    if bias.len() != w_pool.rows() {
        return Err(Error::dims("GS-Pool bias", w_pool.rows(), bias.len()));
    }
    let mut acc = vec![f64::NEG_INFINITY; w_pool.rows()];
    for hu in h_samples {
        let z = w_pool.matvec(hu)?;
        for ((a, zi), b) in acc.iter_mut().zip(&z).zip(bias) {
            *a = a.max(Activation::Relu.apply(zi + b));
        }
    }
    Ok(acc)
}

/// Gates of every sampled neighbor: `eta_u = sigmoid(W_H h_u + W_C h_v)`.
pub fn ggcn_gates(
    h_samples: &[&[f64]],
    h_v: &[f64],
    w_h: &Weight,
    w_c: &Weight,
) -> Result<Vec<Vec<f64>>> {
    if w_h.rows() != h_v.len() || w_c.rows() != h_v.len() {
        return Err(Error::Config(format!(
            "G-GCN gate width ({}, {}) must equal the feature width {}",
            w_h.rows(),
            w_c.rows(),
            h_v.len()
        )));
    }
    let center = w_c.matvec(h_v)?;
    h_samples
        .iter()
        .map(|hu| {
            let mut z = w_h.matvec(hu)?;
            for (zi, ci) in z.iter_mut().zip(&center) {
                *zi = Activation::Sigmoid.apply(*zi + ci);
            }
            Ok(z)
        })
        .collect()
}

/// `a_v = sum_u eta_u ⊙ h_u`.
pub fn aggregate_ggcn(
    h_samples: &[&[f64]],
    h_v: &[f64],
    w_h: &Weight,
    w_c: &Weight,
) -> Result<Vec<f64>> {
    let gates = ggcn_gates(h_samples, h_v, w_h, w_c)?;
    let mut acc = vec![0.0; h_v.len()];
    for (eta, hu) in gates.iter().zip(h_samples) {
        if hu.len() != acc.len() {
            return Err(Error::dims("G-GCN neighbor feature", acc.len(), hu.len()));
        }
        for ((a, e), x) in acc.iter_mut().zip(eta).zip(*hu) {
            *a += e * x;
        }
    }
    Ok(acc)
}

/// Softmax-normalized attention of one head over the sample:
/// `e_u = LeakyRelu(a . [W h_v || W h_u])`.
pub fn gat_attention(h_samples: &[&[f64]], h_v: &[f64], head: &AttentionHead) -> Result<Vec<f64>> {
    if h_samples.is_empty() {
        return Err(Error::Config("empty sample".into()));
    }
    let head_dim = head.projection.rows();
    if head.attention.len() != 2 * head_dim {
        return Err(Error::dims(
            "GAT attention vector",
            2 * head_dim,
            head.attention.len(),
        ));
    }
    let (a_self, a_neigh) = head.attention.split_at(head_dim);
    let wv = head.projection.matvec(h_v)?;
    let self_term: f64 = a_self.iter().zip(&wv).map(|(a, x)| a * x).sum();
    let scores = h_samples
        .iter()
        .map(|hu| {
            let wu = head.projection.matvec(hu)?;
            let s: f64 = a_neigh.iter().zip(&wu).map(|(a, x)| a * x).sum();
            Ok(Activation::LeakyRelu.apply(self_term + s))
        })
        .collect::<Result<Vec<f64>>>()?;
    let max = scores.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let exps: Vec<f64> = scores.iter().map(|s| (s - max).exp()).collect();
    let total: f64 = exps.iter().sum();
    Ok(exps.into_iter().map(|e| e / total).collect())
}

/// Per head `sum_u alpha_u h_u` over the raw neighbor features; heads are
/// concatenated.
pub fn aggregate_gat(
    h_samples: &[&[f64]],
    h_v: &[f64],
    heads: &[AttentionHead],
) -> Result<Vec<f64>> {
    if heads.is_empty() {
        return Err(Error::Config("GAT needs at least one head".into()));
    }
    let d = h_v.len();
    let mut out = Vec::with_capacity(heads.len() * d);
    for head in heads {
        let alpha = gat_attention(h_samples, h_v, head)?;
        let mut acc = vec![0.0; d];
        for (a, hu) in alpha.iter().zip(h_samples) {
            if hu.len() != d {
                return Err(Error::dims("GAT neighbor feature", d, hu.len()));
            }
            add_into(&mut acc, hu, *a);
        }
        out.extend(acc);
    }
    Ok(out)
}

/// Applies the combination weight and the variant's activation. GS-Pool
/// feeds `a_v || h_v`; GAT finishes with ELU, the others with ReLU.
pub fn combine(variant: Variant, a_v: &[f64], h_v: &[f64], w: &Weight) -> Result<Vec<f64>> {
    let mut out = match variant {
        Variant::GsPool => {
            let mut cat = Vec::with_capacity(a_v.len() + h_v.len());
            cat.extend_from_slice(a_v);
            cat.extend_from_slice(h_v);
            w.matvec(&cat)?
        }
        _ => w.matvec(a_v)?,
    };
    let act = match variant {
        Variant::Gat => Activation::Elu,
        _ => Activation::Relu,
    };
    act.apply_in_place(&mut out);
    Ok(out)
}
