#![allow(dead_code)]

use circgnn::perfmodel::{dsp_usage, total_cycles, CostCoefficients, HardwareConfig, WorkloadSpec};
use proptest::test_runner::{Config, RngSeed};

/// Fixed-seed proptest settings so every run explores the same cases.
pub fn fixed(seed: u64, cases: u32) -> Config {
    Config {
        cases,
        rng_seed: RngSeed::Fixed(seed),
        failure_persistence: None,
        ..Config::default()
    }
}

pub fn fixture(rel: &str) -> std::path::PathBuf {
    std::path::Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(rel)
}

/// Every point of the grid, no pruning, no parallelism.
pub fn brute_force(w: &WorkloadSpec, k: &CostCoefficients) -> Option<(u64, u64, HardwareConfig)> {
    let mut best: Option<(u64, u64, HardwareConfig)> = None;
    let xy_max = k.dsp_budget / k.beta_n;
    let m_max = k.dsp_budget / k.eta;
    for x in 1..=xy_max {
        for y in 1..=xy_max {
            for r in 1..=32 {
                for c in 1..=32 {
                    for l in (0..=7).map(|e| 1u64 << e) {
                        for m in 1..=m_max {
                            let hw = HardwareConfig::new(x, y, r, c, l, m, w.block_size);
                            let dsp = dsp_usage(&hw, k);
                            if dsp > k.dsp_budget {
                                continue;
                            }
                            let cand = (total_cycles(w, &hw, k).total_cycles, dsp, hw);
                            if best.is_none_or(|b| cand < b) {
                                best = Some(cand);
                            }
                        }
                    }
                }
            }
        }
    }
    best
}
