//! One PASS/FAIL line per acceptance criterion. Exits nonzero if any fails.

mod common;

use std::fs;
use std::process::ExitCode;
use std::time::Instant;

use circgnn::circulant::{compression_stats, counters, precompute_spectral, BlockCirculantMatrix};
use circgnn::gnn::{GnnModel, GnnModelConfig, LayerDims, Variant};
use circgnn::graph::{synthetic_graph, GraphStats};
use circgnn::linalg::max_abs_diff;
use circgnn::perfmodel::{
    dsp_usage, layer_cycles, search_optimal, total_cycles, CostCoefficients, HardwareConfig,
    LayerWorkload, Stage, WorkloadSpec,
};
use circgnn::profiler::{arithmetic_intensity, count_flops, Phase, ProfileSetup};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn reference_configs() -> [(&'static str, GraphStats, HardwareConfig, f64, u64); 4] {
    [
        (
            "CR",
            GraphStats::CORA,
            HardwareConfig::new(18, 7, 6, 4, 1, 1, 128),
            24.9e6,
            898,
        ),
        (
            "CS",
            GraphStats::CITESEER,
            HardwareConfig::new(21, 4, 6, 4, 1, 1, 128),
            64.4e6,
            898,
        ),
        (
            "PB",
            GraphStats::PUBMED,
            HardwareConfig::new(14, 15, 4, 4, 1, 1, 128),
            95.4e6,
            842,
        ),
        (
            "RD",
            GraphStats::REDDIT,
            HardwareConfig::new(15, 13, 5, 4, 1, 1, 128),
            1240.3e6,
            888,
        ),
    ]
}

fn ac1_oracle_equivalence() -> Check {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0xAC1);
    let mut worst = 0.0f64;
    for case in 0..200 {
        let rows = rng.random_range(4..=512);
        let cols = rng.random_range(4..=512);
        let n = 1usize << rng.random_range(1..=7);
        let w = BlockCirculantMatrix::new_random(rows, cols, n, case).map_err(|e| e.to_string())?;
        let x: Vec<f64> = (0..cols).map(|_| rng.random_range(-1.0..1.0)).collect();
        let fast = precompute_spectral(&w)
            .bc_matvec(&x)
            .map_err(|e| e.to_string())?;
        let dense = w.to_dense().matvec(&x).map_err(|e| e.to_string())?;
        let err = max_abs_diff(&fast, &dense);
        worst = worst.max(err);
        ensure(err < 1e-9, || {
            format!("case {case}: {rows}x{cols} n={n} error {err:.3e}")
        })?;
    }
    let secs = start.elapsed().as_secs_f64();
    ensure(secs < 30.0, || format!("took {secs:.1} s"))?;
    Ok(format!("200 cases, max error {worst:.2e}, {secs:.2} s"))
}

fn ac2_ifft_count() -> Check {
    let mut detail = Vec::new();
    for (rows, cols, n) in [(512, 512, 128), (300, 200, 32), (64, 256, 8), (17, 5, 2)] {
        let w = BlockCirculantMatrix::new_random(rows, cols, n, 2).map_err(|e| e.to_string())?;
        let s = precompute_spectral(&w);
        let x: Vec<f64> = (0..cols).map(|i| (i as f64).cos()).collect();
        let (a, ca) = counters::measure(|| s.bc_matvec(&x));
        let (b, cb) = counters::measure(|| s.bc_matvec_per_block_ifft(&x));
        let (a, b) = (a.map_err(|e| e.to_string())?, b.map_err(|e| e.to_string())?);
        let err = max_abs_diff(&a, &b);
        ensure(err < 1e-9, || {
            format!("{rows}x{cols}: results differ by {err:.3e}")
        })?;
        let (p, q) = (w.p() as u64, w.q() as u64);
        ensure(
            ca.inverse_transforms == p && cb.inverse_transforms == p * q,
            || {
                format!(
                    "{rows}x{cols}: IFFTs {} / {}, expected {p} / {}",
                    ca.inverse_transforms,
                    cb.inverse_transforms,
                    p * q
                )
            },
        )?;
        detail.push(format!(
            "{}/{}",
            ca.inverse_transforms, cb.inverse_transforms
        ));
    }
    Ok(format!(
        "IFFT calls spectral/per-block: {}",
        detail.join(", ")
    ))
}

fn ac3_compression_arithmetic() -> Check {
    let mut detail = Vec::new();
    for (n, tcr, sr) in [
        (16, 4.0, 16.0),
        (32, 6.4, 32.0),
        (64, 10.7, 64.0),
        (128, 18.3, 128.0),
    ] {
        let s = compression_stats(512, 512, n).map_err(|e| e.to_string())?;
        ensure((s.tcr - tcr).abs() <= 0.05 && s.sr == sr, || {
            format!("n={n}: ({:.2}, {}) vs ({tcr}, {sr})", s.tcr, s.sr)
        })?;
        detail.push(format!("n={n} ({:.2}, {})", s.tcr, s.sr));
    }
    Ok(detail.join(", "))
}

fn ac4_resource_model() -> Check {
    let k = CostCoefficients::N128;
    let mut detail = Vec::new();
    for (name, _, hw, _, expected) in reference_configs() {
        let d = dsp_usage(&hw, &k);
        ensure(d == expected && d <= 900, || {
            format!("{name}: {d} DSPs, expected {expected}")
        })?;
        detail.push(format!("{name} {d}"));
    }
    Ok(format!("DSPs {} (budget 900)", detail.join(", ")))
}

fn ac5_cycle_model() -> Check {
    let k = CostCoefficients::N128;
    let cr = HardwareConfig::new(18, 7, 6, 4, 1, 1, 128);
    let lc = layer_cycles(&LayerWorkload::from_dims(25, 512, 512, 128), &cr, &k);
    let stages = (lc.fft_cycles, lc.mac_cycles, lc.ifft_cycles, lc.vpu_cycles);
    ensure(
        stages == (2904, 3200, 7260, 800) && lc.layer_max == 7260 && lc.bottleneck == Stage::Ifft,
        || {
            format!(
                "stages {stages:?}, max {}, bottleneck {}",
                lc.layer_max, lc.bottleneck
            )
        },
    )?;
    let mut totals = Vec::new();
    for w in [
        WorkloadSpec::gspool_hidden(&GraphStats::CORA, 512, &[25, 10], 128),
        WorkloadSpec::gspool_raw_input(&GraphStats::CORA, 512, &[25, 10], 128),
    ] {
        let t = total_cycles(&w, &cr, &k).total_cycles as f64;
        let ratio = t / 24.9e6;
        ensure((0.5..=2.0).contains(&ratio), || {
            format!("total {t:.3e} is {ratio:.2}x the reference")
        })?;
        totals.push(format!("{:.1}M ({ratio:.2}x)", t / 1e6));
    }
    Ok(format!(
        "stages 2904/3200/7260/800, CR totals {}",
        totals.join(" and ")
    ))
}

fn ac6_search() -> Check {
    let k = CostCoefficients::N128;
    let mut detail = Vec::new();
    for (name, stats, ref_hw, _, _) in reference_configs() {
        for (label, w) in [
            (
                "hidden",
                WorkloadSpec::gspool_hidden(&stats, 512, &[25, 10], 128),
            ),
            (
                "raw",
                WorkloadSpec::gspool_raw_input(&stats, 512, &[25, 10], 128),
            ),
        ] {
            let start = Instant::now();
            let res = search_optimal(&w, &k).map_err(|e| e.to_string())?;
            let secs = start.elapsed().as_secs_f64();
            let ref_cycles = total_cycles(&w, &ref_hw, &k).total_cycles;
            ensure(secs < 60.0, || format!("{name}/{label}: {secs:.1} s"))?;
            ensure(dsp_usage(&res.config, &k) <= 900, || {
                format!("{name}/{label}: infeasible {}", res.config)
            })?;
            ensure(res.estimate.total_cycles <= ref_cycles, || {
                format!(
                    "{name}/{label}: {} cycles vs reference {ref_cycles}",
                    res.estimate.total_cycles
                )
            })?;
            ensure(res.dsp_used * 10 >= 900 * 9, || {
                format!("{name}/{label}: uses only {} DSPs", res.dsp_used)
            })?;
            if label == "hidden" {
                detail.push(format!("{name} {} DSPs", res.dsp_used));
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0xAC6);
    for _ in 0..4 {
        let budget = rng.random_range(116..=300);
        let layers = (0..rng.random_range(1..=3))
            .map(|_| {
                LayerWorkload::from_dims(
                    rng.random_range(1..=30),
                    rng.random_range(1..=1500),
                    rng.random_range(1..=1500),
                    128,
                )
            })
            .collect();
        let w = WorkloadSpec::new(rng.random_range(1..=5000), 128, layers);
        let kb = k.with_budget(budget);
        let res = search_optimal(&w, &kb).map_err(|e| e.to_string())?;
        let brute = common::brute_force(&w, &kb).ok_or("brute force found nothing")?;
        ensure(
            (res.estimate.total_cycles, res.dsp_used, res.config) == brute,
            || {
                format!(
                    "budget {budget}: search {} vs brute force {}",
                    res.config, brute.2
                )
            },
        )?;
    }
    Ok(format!(
        "8 workloads beat the reference configs, {}; brute force agrees at 4 budgets <= 300",
        detail.join(", ")
    ))
}

fn ac7_gnn_equivalence() -> Check {
    let g = synthetic_graph(20, 4, 32, 77).map_err(|e| e.to_string())?;
    let batch: Vec<usize> = (0..20).collect();
    let mut detail = Vec::new();
    for variant in Variant::ALL {
        let mut cfg = GnnModelConfig::new(
            variant,
            vec![LayerDims::new(32, 64), LayerDims::new(64, 32)],
            vec![3, 2],
            8,
        );
        if variant == Variant::Gat {
            cfg = cfg.with_gat_heads(2, 16);
        }
        let model = GnnModel::random(cfg, 5).map_err(|e| e.to_string())?;
        let a = model.forward(&g, &batch, 13).map_err(|e| e.to_string())?;
        let b = model
            .densified()
            .forward(&g, &batch, 13)
            .map_err(|e| e.to_string())?;
        let err = max_abs_diff(a.as_slice(), b.as_slice());
        ensure(err < 1e-6, || format!("{variant}: error {err:.3e}"))?;
        detail.push(format!("{variant} {err:.1e}"));
    }
    Ok(detail.join(", "))
}

fn ac8_profiler() -> Check {
    let s = ProfileSetup::reddit();
    let reference = [
        (Variant::Gcn, 3.7e9, 7.5e10),
        (Variant::GsPool, 1.9e12, 1.5e11),
        (Variant::Ggcn, 3.7e12, 7.5e10),
        (Variant::Gat, 1.9e12, 7.5e10),
    ];
    let (mut lo, mut hi) = (f64::MAX, 0.0f64);
    for (v, agg, comb) in reference {
        for (p, target) in [(Phase::Aggregation, agg), (Phase::Combination, comb)] {
            let r = count_flops(v, p, &s) as f64 / target;
            ensure((0.5..=2.0).contains(&r), || format!("{v} {p}: {r:.2}x"))?;
            lo = lo.min(r);
            hi = hi.max(r);
            let ai = arithmetic_intensity(v, p, &s).map_err(|e| e.to_string())?;
            if (v, p) == (Variant::Gcn, Phase::Aggregation) {
                ensure(ai < 10.0, || format!("GCN aggregation intensity {ai}"))?;
            } else {
                ensure(ai > 100.0, || format!("{v} {p} intensity {ai}"))?;
            }
        }
    }
    let ratio = count_flops(Variant::Ggcn, Phase::Aggregation, &s) as f64
        / count_flops(Variant::GsPool, Phase::Aggregation, &s) as f64;
    ensure((1.8..=2.2).contains(&ratio), || {
        format!("G-GCN/GS-Pool {ratio:.3}")
    })?;
    Ok(format!(
        "FLOPs {lo:.2}x..{hi:.2}x of reference, G-GCN/GS-Pool {ratio:.3}, intensity split holds"
    ))
}

fn ac9_property_suites() -> Check {
    let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/tests");
    let suites = [
        "circulant_props",
        "gnn_props",
        "perfmodel_props",
        "profiler_tests",
        "graph_io",
    ];
    let mut blocks = 0;
    for s in suites {
        let text = fs::read_to_string(format!("{dir}/{s}.rs")).map_err(|e| format!("{s}: {e}"))?;
        let n = text.matches("proptest! {").count();
        ensure(n > 0 && text.matches("common::fixed(").count() == n, || {
            format!("{s}: every proptest block must use a fixed seed")
        })?;
        blocks += n;
    }
    let common = fs::read_to_string(format!("{dir}/common/mod.rs")).map_err(|e| e.to_string())?;
    ensure(common.contains("RngSeed::Fixed"), || {
        "shared config does not fix the seed".into()
    })?;
    Ok(format!(
        "{blocks} fixed-seed proptest blocks across {} suites",
        suites.len()
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("AC1 oracle equivalence", ac1_oracle_equivalence),
        ("AC2 IFFT count", ac2_ifft_count),
        ("AC3 compression arithmetic", ac3_compression_arithmetic),
        ("AC4 resource model", ac4_resource_model),
        ("AC5 cycle model", ac5_cycle_model),
        ("AC6 search", ac6_search),
        ("AC7 GNN equivalence", ac7_gnn_equivalence),
        ("AC8 profiler", ac8_profiler),
        ("AC9 property suites", ac9_property_suites),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        match check() {
            Ok(detail) => println!("PASS {name}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL {name}: {detail}");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
