//! Analytic cycle and DSP model of the FFT → systolic MAC → IFFT pipeline
//! plus vector unit, and an exhaustive search for the hardware parameters
//! that minimize predicted cycles under a DSP budget.
//!
//! Per layer `k`, with `S` sampled neighbors, `p x q` blocks of size `n`
//! and `N` output rows:
//!
//! ```text
//! fft  = alpha(n) * ceil(S*q / x)
//! mac  = S * ceil(q/r) * ceil(p/c) * ceil(n/l)
//! ifft = alpha(n) * ceil(S*p / y)
//! vpu  = ceil(S*N / (16*m))
//! layer = max(fft, mac, ifft, vpu)          total = sum(layer) * |V|
//! dsp  = beta(n)*(x+y) + r*c*gamma*l + m*eta  <= budget
//! ```

mod search;
mod workload;

pub use search::{search_optimal, SearchResult, MAX_ARRAY_DIM};
pub use workload::{LayerWorkload, WorkloadDoc, WorkloadLayerDoc, WorkloadSpec};

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Searchable accelerator parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct HardwareConfig {
    /// FFT channels.
    pub x: u64,
    /// IFFT channels.
    pub y: u64,
    /// Systolic array rows.
    pub r: u64,
    /// Systolic array columns.
    pub c: u64,
    /// MACs per PE per cycle (pack width).
    pub l: u64,
    /// VPU lanes, 16 elements each.
    pub m: u64,
    /// Block size.
    pub n: u64,
}

impl HardwareConfig {
    pub const fn new(x: u64, y: u64, r: u64, c: u64, l: u64, m: u64, n: u64) -> Self {
        Self {
            x,
            y,
            r,
            c,
            l,
            m,
            n,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let fields = [self.x, self.y, self.r, self.c, self.l, self.m];
        if fields.contains(&0) {
            return Err(Error::Config(format!(
                "hardware parameters must be >= 1: {self}"
            )));
        }
        if !self.n.is_power_of_two() {
            return Err(Error::NotPowerOfTwo(self.n as usize));
        }
        Ok(())
    }
}

impl fmt::Display for HardwareConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "x={} y={} r={} c={} l={} m={} (n={})",
            self.x, self.y, self.r, self.c, self.l, self.m, self.n
        )
    }
}

/// Latency and DSP coefficients of one implementation at one block size.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CostCoefficients {
    /// Cycles for one FFT or IFFT channel to transform `n` points.
    pub alpha_n: u64,
    /// DSPs per FFT or IFFT channel.
    pub beta_n: u64,
    /// DSPs per PE per unit of `l`.
    pub gamma_per_l: u64,
    /// DSPs per VPU lane.
    pub eta: u64,
    pub dsp_budget: u64,
}

impl CostCoefficients {
    /// Measured values for n = 128 with 32-bit fixed point on a 900-DSP part.
    pub const N128: CostCoefficients = CostCoefficients {
        alpha_n: 484,
        beta_n: 18,
        gamma_per_l: 16,
        eta: 64,
        dsp_budget: 900,
    };

    /// Coefficients are only tabulated for n = 128; other block sizes need
    /// user-supplied values.
    pub fn for_block_size(n: u64) -> Result<CostCoefficients> {
        match n {
            128 => Ok(Self::N128),
            _ => Err(Error::Config(format!(
                "no tabulated cost coefficients for block size {n}; supply alpha_n and beta_n"
            ))),
        }
    }

    pub fn with_budget(mut self, dsp_budget: u64) -> Self {
        self.dsp_budget = dsp_budget;
        self
    }

    pub fn gamma(&self, l: u64) -> u64 {
        self.gamma_per_l * l
    }

    pub fn validate(&self) -> Result<()> {
        if self.alpha_n == 0 || self.beta_n == 0 || self.gamma_per_l == 0 || self.eta == 0 {
            return Err(Error::Config("cost coefficients must be positive".into()));
        }
        Ok(())
    }

    /// DSPs of the smallest legal design (every parameter 1).
    pub fn minimum_dsps(&self) -> u64 {
        2 * self.beta_n + self.gamma(1) + self.eta
    }
}

/// Pipeline stage, in the tie-break priority order used for bottlenecks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Stage {
    Fft,
    Mac,
    Ifft,
    Vpu,
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Stage::Fft => "FFT",
            Stage::Mac => "MAC",
            Stage::Ifft => "IFFT",
            Stage::Vpu => "VPU",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LayerCycles {
    pub fft_cycles: u64,
    pub mac_cycles: u64,
    pub ifft_cycles: u64,
    pub vpu_cycles: u64,
    pub layer_max: u64,
    pub bottleneck: Stage,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleEstimate {
    pub layers: Vec<LayerCycles>,
    pub total_cycles: u64,
}

pub fn cycle_fft(samples: u64, q: u64, x: u64, alpha_n: u64) -> u64 {
    alpha_n * (samples * q).div_ceil(x)
}

pub fn cycle_mac(samples: u64, q: u64, p: u64, r: u64, c: u64, n: u64, l: u64) -> u64 {
    samples * q.div_ceil(r) * p.div_ceil(c) * n.div_ceil(l)
}

pub fn cycle_ifft(samples: u64, p: u64, y: u64, alpha_n: u64) -> u64 {
    alpha_n * (samples * p).div_ceil(y)
}

pub fn cycle_vpu(samples: u64, rows: u64, m: u64) -> u64 {
    (samples * rows).div_ceil(m * 16)
}

pub fn layer_cycles(
    layer: &LayerWorkload,
    hw: &HardwareConfig,
    coeffs: &CostCoefficients,
) -> LayerCycles {
    let fft_cycles = cycle_fft(layer.samples, layer.q, hw.x, coeffs.alpha_n);
    let mac_cycles = cycle_mac(layer.samples, layer.q, layer.p, hw.r, hw.c, hw.n, hw.l);
    let ifft_cycles = cycle_ifft(layer.samples, layer.p, hw.y, coeffs.alpha_n);
    let vpu_cycles = cycle_vpu(layer.samples, layer.rows, hw.m);
    let stages = [
        (Stage::Fft, fft_cycles),
        (Stage::Mac, mac_cycles),
        (Stage::Ifft, ifft_cycles),
        (Stage::Vpu, vpu_cycles),
    ];
    let layer_max = stages.iter().map(|s| s.1).max().unwrap_or(0);
    let bottleneck = stages
        .iter()
        .find(|s| s.1 == layer_max)
        .map(|s| s.0)
        .unwrap_or(Stage::Fft);
    LayerCycles {
        fft_cycles,
        mac_cycles,
        ifft_cycles,
        vpu_cycles,
        layer_max,
        bottleneck,
    }
}

pub fn total_cycles(
    w: &WorkloadSpec,
    hw: &HardwareConfig,
    coeffs: &CostCoefficients,
) -> CycleEstimate {
    let layers: Vec<LayerCycles> = w
        .layers
        .iter()
        .map(|l| layer_cycles(l, hw, coeffs))
        .collect();
    let per_node: u64 = layers.iter().map(|l| l.layer_max).sum();
    CycleEstimate {
        layers,
        total_cycles: per_node * w.num_nodes,
    }
}

pub fn dsp_usage(hw: &HardwareConfig, coeffs: &CostCoefficients) -> u64 {
    coeffs.beta_n * (hw.x + hw.y) + hw.r * hw.c * coeffs.gamma(hw.l) + hw.m * coeffs.eta
}

pub fn is_feasible(hw: &HardwareConfig, coeffs: &CostCoefficients) -> bool {
    dsp_usage(hw, coeffs) <= coeffs.dsp_budget
}
