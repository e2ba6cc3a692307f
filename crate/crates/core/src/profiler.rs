//! Closed-form FLOP and byte counts per GNN variant and phase.
//!
//! Conventions: one multiply-accumulate is 2 FLOPs, every element-wise op
//! (add, scale, activation, max comparison) is 1 FLOP. Bytes are 4 per
//! real. Each phase reads its weights once and streams per node the
//! vectors its formula consumes:
//!
//! | variant | aggregation input per node | combination input per node |
//! |---------|----------------------------|----------------------------|
//! | GCN     | `S` neighbor rows          | `a_v`                      |
//! | GS-Pool | `S` neighbor rows          | `a_v` (`h_v` stays on chip) |
//! | G-GCN   | `S` pairs `(h_v, h_u)`     | `a_v`                      |
//! | GAT     | `S` neighbor rows + `h_v`  | `a_v`                      |
//!
//! Outputs are not counted.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gnn::Variant;
use crate::graph::GraphStats;

const BYTES_PER_REAL: u64 = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Phase {
    Aggregation,
    Combination,
}

impl Phase {
    pub const ALL: [Phase; 2] = [Phase::Aggregation, Phase::Combination];
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Phase::Aggregation => "aggregation",
            Phase::Combination => "combination",
        })
    }
}

/// One layer's shape and the graph size it runs over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProfileSetup {
    pub num_nodes: u64,
    pub input_dim: u64,
    pub output_dim: u64,
    pub samples: u64,
    pub gat_heads: u64,
    pub gat_head_dim: u64,
}

impl ProfileSetup {
    pub fn new(stats: &GraphStats, input_dim: u64, output_dim: u64, samples: u64) -> Self {
        Self {
            num_nodes: stats.num_nodes,
            input_dim,
            output_dim,
            samples,
            gat_heads: 1,
            gat_head_dim: output_dim,
        }
    }

    pub fn with_gat_heads(mut self, heads: u64, head_dim: u64) -> Self {
        self.gat_heads = heads;
        self.gat_head_dim = head_dim;
        self
    }

    /// Reddit, 512 -> 512, 25 samples, two 128-wide attention heads.
    pub fn reddit() -> Self {
        Self::new(&GraphStats::REDDIT, 512, 512, 25).with_gat_heads(2, 128)
    }

    fn combine_input(&self, variant: Variant) -> u64 {
        match variant {
            Variant::GsPool => 2 * self.input_dim,
            Variant::Gat => self.gat_heads * self.gat_head_dim,
            Variant::Gcn | Variant::Ggcn => self.input_dim,
        }
    }

    /// Width of the aggregated vector `a_v`.
    fn aggregate_width(&self, variant: Variant) -> u64 {
        match variant {
            Variant::Gat => self.gat_heads * self.gat_head_dim,
            _ => self.input_dim,
        }
    }
}

/// FLOPs split into weight-matvec work and everything else.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct FlopBreakdown {
    pub matvec: u64,
    pub elementwise: u64,
}

impl FlopBreakdown {
    pub fn total(&self) -> u64 {
        self.matvec + self.elementwise
    }

    /// Matvec work scaled by `log2(n)/n`; `n = 1` leaves it unchanged.
    pub fn compressed(&self, n: u64) -> Result<f64> {
        if !n.is_power_of_two() {
            return Err(Error::NotPowerOfTwo(n as usize));
        }
        let scale = if n == 1 {
            1.0
        } else {
            f64::from(n.trailing_zeros()) / n as f64
        };
        Ok(self.matvec as f64 * scale + self.elementwise as f64)
    }

    fn scaled(self, k: u64) -> Self {
        Self {
            matvec: self.matvec * k,
            elementwise: self.elementwise * k,
        }
    }
}

/// Per-node FLOPs of one phase.
fn per_node(variant: Variant, phase: Phase, s: &ProfileSetup) -> FlopBreakdown {
    let (d, o, n_s) = (s.input_dim, s.output_dim, s.samples);
    match phase {
        Phase::Aggregation => match variant {
            // scale and add per neighbor
            Variant::Gcn => FlopBreakdown {
                matvec: 0,
                elementwise: 2 * n_s * d,
            },
            // W_pool h_u, bias, relu, max
            Variant::GsPool => FlopBreakdown {
                matvec: n_s * 2 * d * d,
                elementwise: n_s * 3 * d,
            },
            // W_H h_u and W_C h_v per neighbor; add, sigmoid, gate, sum
            Variant::Ggcn => FlopBreakdown {
                matvec: n_s * 4 * d * d,
                elementwise: n_s * 4 * d,
            },
            Variant::Gat => {
                let hd = s.gat_head_dim;
                // projections of v and every neighbor
                let matvec = (n_s + 1) * 2 * hd * d;
                // score dot (2*hd MACs), leaky relu, exp; normalize sum and
                // divide; weighted sum over the projected row
                let elementwise = n_s * (4 * hd + 2) + 2 * n_s + 2 * n_s * hd;
                FlopBreakdown {
                    matvec,
                    elementwise,
                }
                .scaled(s.gat_heads)
            }
        },
        Phase::Combination => FlopBreakdown {
            matvec: 2 * s.combine_input(variant) * o,
            elementwise: o,
        },
    }
}

pub fn flop_breakdown(variant: Variant, phase: Phase, setup: &ProfileSetup) -> FlopBreakdown {
    per_node(variant, phase, setup).scaled(setup.num_nodes)
}

pub fn count_flops(variant: Variant, phase: Phase, setup: &ProfileSetup) -> u64 {
    flop_breakdown(variant, phase, setup).total()
}

/// FLOPs with every weight matvec on the block-circulant path of size `n`.
pub fn compressed_flops(
    variant: Variant,
    phase: Phase,
    setup: &ProfileSetup,
    n: u64,
) -> Result<f64> {
    flop_breakdown(variant, phase, setup).compressed(n)
}

fn weight_reals(variant: Variant, phase: Phase, s: &ProfileSetup) -> u64 {
    let d = s.input_dim;
    match phase {
        Phase::Aggregation => match variant {
            Variant::Gcn => 0,
            Variant::GsPool => d * d + d,
            Variant::Ggcn => 2 * d * d,
            Variant::Gat => s.gat_heads * (s.gat_head_dim * d + 2 * s.gat_head_dim),
        },
        Phase::Combination => s.combine_input(variant) * s.output_dim,
    }
}

fn streamed_reals(variant: Variant, phase: Phase, s: &ProfileSetup) -> u64 {
    let (d, n_s) = (s.input_dim, s.samples);
    match phase {
        Phase::Aggregation => match variant {
            Variant::Gcn | Variant::GsPool => n_s * d,
            Variant::Ggcn => 2 * n_s * d,
            Variant::Gat => (n_s + 1) * d,
        },
        Phase::Combination => s.aggregate_width(variant),
    }
}

pub fn bytes_moved(variant: Variant, phase: Phase, setup: &ProfileSetup) -> u64 {
    BYTES_PER_REAL
        * (setup.num_nodes * streamed_reals(variant, phase, setup)
            + weight_reals(variant, phase, setup))
}

pub fn intensity(flops: u64, bytes: u64) -> Result<f64> {
    if bytes == 0 {
        return Err(Error::UndefinedIntensity);
    }
    Ok(flops as f64 / bytes as f64)
}

/// FLOPs per byte moved.
pub fn arithmetic_intensity(variant: Variant, phase: Phase, setup: &ProfileSetup) -> Result<f64> {
    intensity(
        count_flops(variant, phase, setup),
        bytes_moved(variant, phase, setup),
    )
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProfileEntry {
    pub variant: Variant,
    pub phase: Phase,
    pub flops: u64,
    pub matvec_flops: u64,
    pub bytes_moved: u64,
    /// `None` when no bytes move.
    pub intensity: Option<f64>,
    /// Present when a block size was requested.
    pub compressed_flops: Option<f64>,
}

/// Variant x phase grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProfileReport {
    pub setup: ProfileSetup,
    pub block_size: Option<u64>,
    pub entries: Vec<ProfileEntry>,
}

impl ProfileReport {
    pub fn entry(&self, variant: Variant, phase: Phase) -> Option<&ProfileEntry> {
        self.entries
            .iter()
            .find(|e| e.variant == variant && e.phase == phase)
    }

    pub fn to_table(&self) -> String {
        let mut out = format!(
            "{:<8} {:<12} {:>12} {:>12} {:>10}",
            "variant", "phase", "flops", "bytes", "flop/byte"
        );
        if self.block_size.is_some() {
            out.push_str(&format!(" {:>14}", "circulant"));
        }
        out.push('\n');
        for e in &self.entries {
            let ai = e
                .intensity
                .map_or("undefined".to_string(), |v| format!("{v:.1}"));
            out.push_str(&format!(
                "{:<8} {:<12} {:>12.3e} {:>12.3e} {:>10}",
                e.variant.name(),
                e.phase.to_string(),
                e.flops as f64,
                e.bytes_moved as f64,
                ai
            ));
            if let Some(c) = e.compressed_flops {
                out.push_str(&format!(" {c:>14.3e}"));
            }
            out.push('\n');
        }
        out
    }
}

/// Profiles `variants` over both phases, optionally with compressed counts
/// at block size `n`.
pub fn profile(
    setup: &ProfileSetup,
    variants: &[Variant],
    block_size: Option<u64>,
) -> Result<ProfileReport> {
    let mut entries = Vec::with_capacity(variants.len() * 2);
    for &variant in variants {
        for phase in Phase::ALL {
            let fb = flop_breakdown(variant, phase, setup);
            let bytes = bytes_moved(variant, phase, setup);
            entries.push(ProfileEntry {
                variant,
                phase,
                flops: fb.total(),
                matvec_flops: fb.matvec,
                bytes_moved: bytes,
                intensity: intensity(fb.total(), bytes).ok(),
                compressed_flops: block_size.map(|n| fb.compressed(n)).transpose()?,
            });
        }
    }
    Ok(ProfileReport {
        setup: *setup,
        block_size,
        entries,
    })
}
