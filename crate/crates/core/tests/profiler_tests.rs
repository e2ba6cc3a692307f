mod common;

use circgnn::gnn::Variant;
use circgnn::profiler::{
    arithmetic_intensity, compressed_flops, count_flops, flop_breakdown, Phase, ProfileSetup,
};
use proptest::prelude::*;

/// Reported totals: (variant, aggregation, combination).
const REFERENCE: [(Variant, f64, f64); 4] = [
    (Variant::Gcn, 3.7e9, 7.5e10),
    (Variant::GsPool, 1.9e12, 1.5e11),
    (Variant::Ggcn, 3.7e12, 7.5e10),
    (Variant::Gat, 1.9e12, 7.5e10),
];

#[test]
fn reddit_flops_within_factor_two() {
    let s = ProfileSetup::reddit();
    for (v, agg, comb) in REFERENCE {
        for (phase, target) in [(Phase::Aggregation, agg), (Phase::Combination, comb)] {
            let ratio = count_flops(v, phase, &s) as f64 / target;
            assert!((0.5..=2.0).contains(&ratio), "{v} {phase}: ratio {ratio}");
        }
    }
}

#[test]
fn reddit_intensity_split() {
    let s = ProfileSetup::reddit();
    for v in Variant::ALL {
        for p in Phase::ALL {
            let ai = arithmetic_intensity(v, p, &s).unwrap();
            if (v, p) == (Variant::Gcn, Phase::Aggregation) {
                assert!(ai < 10.0, "{ai}");
                assert!((ai - 0.5).abs() < 1e-12);
            } else {
                assert!(ai > 100.0, "{v} {p}: {ai}");
            }
        }
    }
    let gs = arithmetic_intensity(Variant::GsPool, Phase::Combination, &s).unwrap();
    assert!((gs - 512.2).abs() < 5.0, "{gs}");
}

#[test]
fn gated_aggregation_costs_twice_pooling() {
    let s = ProfileSetup::reddit();
    let r = count_flops(Variant::Ggcn, Phase::Aggregation, &s) as f64
        / count_flops(Variant::GsPool, Phase::Aggregation, &s) as f64;
    assert!((1.8..=2.2).contains(&r), "{r}");
}

#[test]
fn pure_matvec_compression_factor() {
    let s = ProfileSetup::reddit();
    let fb = flop_breakdown(Variant::GsPool, Phase::Combination, &s);
    let matvec_only = circgnn::profiler::FlopBreakdown {
        matvec: fb.matvec,
        elementwise: 0,
    };
    let r = matvec_only.total() as f64 / matvec_only.compressed(128).unwrap();
    assert!((r - 18.29).abs() < 0.01, "{r}");
    assert_eq!(matvec_only.compressed(2).unwrap(), fb.matvec as f64 / 2.0);
}

fn setups() -> impl Strategy<Value = ProfileSetup> {
    (
        0u64..100_000,
        1u64..1024,
        1u64..1024,
        1u64..64,
        1u64..5,
        1u64..256,
    )
        .prop_map(|(v, d, o, s, h, hd)| ProfileSetup {
            num_nodes: v,
            input_dim: d,
            output_dim: o,
            samples: s,
            gat_heads: h,
            gat_head_dim: hd,
        })
}

fn variants() -> impl Strategy<Value = Variant> {
    prop::sample::select(Variant::ALL.to_vec())
}

proptest! {
    #![proptest_config(common::fixed(0xF10B, 256))]

    #[test]
    fn linear_in_nodes(s in setups(), v in variants(), k in 1u64..8) {
        let scaled = ProfileSetup { num_nodes: s.num_nodes * k, ..s };
        for p in Phase::ALL {
            prop_assert_eq!(count_flops(v, p, &scaled), k * count_flops(v, p, &s));
        }
    }

    #[test]
    fn aggregation_linear_in_samples(s in setups(), v in variants(), k in 1u64..8) {
        // GAT also projects h_v once per head, outside the per-sample work
        let unit = ProfileSetup { samples: 1, ..s };
        let two = ProfileSetup { samples: 2, ..s };
        let bigger = ProfileSetup { samples: k, ..s };
        let f = |x: &ProfileSetup| count_flops(v, Phase::Aggregation, x) as i128;
        let per_sample = f(&two) - f(&unit);
        let fixed = f(&unit) - per_sample;
        prop_assert_eq!(f(&bigger), fixed + k as i128 * per_sample);
        if v != Variant::Gat {
            prop_assert_eq!(fixed, 0);
        }
    }

    #[test]
    fn compression_reduces_matvec_phases(s in setups(), v in variants(), e in 2u32..8) {
        prop_assume!(s.num_nodes > 0);
        let n = 1u64 << e;
        for p in Phase::ALL {
            let fb = flop_breakdown(v, p, &s);
            let c = compressed_flops(v, p, &s, n).unwrap();
            if fb.matvec > 0 {
                prop_assert!(c < fb.total() as f64);
            } else {
                prop_assert_eq!(c, fb.total() as f64);
            }
        }
    }

    #[test]
    fn intensity_is_flops_over_bytes(s in setups(), v in variants()) {
        prop_assume!(s.num_nodes > 0);
        for p in Phase::ALL {
            let ai = arithmetic_intensity(v, p, &s).unwrap();
            let expect = count_flops(v, p, &s) as f64 / circgnn::profiler::bytes_moved(v, p, &s) as f64;
            prop_assert_eq!(ai, expect);
            prop_assert!(ai >= 0.0);
        }
    }
}
