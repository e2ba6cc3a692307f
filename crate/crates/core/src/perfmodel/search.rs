use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{
    dsp_usage, total_cycles, CostCoefficients, CycleEstimate, HardwareConfig, WorkloadSpec,
};
use crate::error::{Error, Result};

/// Upper bound on systolic array rows and columns.
pub const MAX_ARRAY_DIM: u64 = 32;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchResult {
    pub config: HardwareConfig,
    pub estimate: CycleEstimate,
    pub dsp_used: u64,
    pub dsp_budget: u64,
    /// Feasible configurations evaluated.
    pub explored: u64,
}

type Key = (u64, u64, HardwareConfig);

/// Exhaustive search over `x, y >= 1`, `r, c` in `1..=32`, `l` a power of
/// two up to `n`, and `m >= 1`, skipping every point over the DSP budget.
///
/// Picks the fewest total cycles, then fewest DSPs, then the
/// lexicographically smallest `(x, y, r, c, l, m)`. The result does not
/// depend on the thread count.
pub fn search_optimal(w: &WorkloadSpec, coeffs: &CostCoefficients) -> Result<SearchResult> {
    w.validate()?;
    coeffs.validate()?;
    let minimum = coeffs.minimum_dsps();
    if coeffs.dsp_budget < minimum {
        return Err(Error::Infeasible {
            budget: coeffs.dsp_budget,
            minimum,
        });
    }
    let n = w.block_size;
    let budget = coeffs.dsp_budget;

    let mut outer = Vec::new();
    let mut l = 1;
    while l <= n {
        for r in 1..=MAX_ARRAY_DIM {
            for c in 1..=MAX_ARRAY_DIM {
                let pe = r * c * coeffs.gamma(l);
                if pe + 2 * coeffs.beta_n + coeffs.eta <= budget {
                    outer.push((r, c, l));
                }
            }
        }
        l *= 2;
    }

    let (best, explored) = outer
        .par_iter()
        .map(|&(r, c, l)| {
            let mut best: Option<Key> = None;
            let mut explored = 0u64;
            let pe = r * c * coeffs.gamma(l);
            let mut m = 1;
            while pe + 2 * coeffs.beta_n + m * coeffs.eta <= budget {
                let rest = budget - pe - m * coeffs.eta;
                let max_xy = rest / coeffs.beta_n;
                for x in 1..max_xy {
                    for y in 1..=(max_xy - x) {
                        let hw = HardwareConfig::new(x, y, r, c, l, m, n);
                        explored += 1;
                        let cycles = total_cycles(w, &hw, coeffs).total_cycles;
                        let key = (cycles, dsp_usage(&hw, coeffs), hw);
                        if best.is_none_or(|b| key < b) {
                            best = Some(key);
                        }
                    }
                }
                m += 1;
            }
            (best, explored)
        })
        .reduce(
            || (None, 0),
            |(a, ea), (b, eb)| {
                let best = match (a, b) {
                    (Some(a), Some(b)) => Some(a.min(b)),
                    (a, b) => a.or(b),
                };
                (best, ea + eb)
            },
        );

    let (_, dsp_used, config) = best.ok_or(Error::Infeasible { budget, minimum })?;
    Ok(SearchResult {
        config,
        estimate: total_cycles(w, &config, coeffs),
        dsp_used,
        dsp_budget: budget,
        explored,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perfmodel::LayerWorkload;

    fn tiny() -> WorkloadSpec {
        WorkloadSpec::new(3, 128, vec![LayerWorkload::from_dims(25, 512, 512, 128)])
    }

    #[test]
    fn minimum_budget_gives_all_ones() {
        let res = search_optimal(&tiny(), &CostCoefficients::N128.with_budget(116)).unwrap();
        assert_eq!(res.config, HardwareConfig::new(1, 1, 1, 1, 1, 1, 128));
        assert_eq!(res.explored, 1);
        assert_eq!(res.dsp_used, 116);
    }

    #[test]
    fn below_minimum_is_infeasible() {
        for budget in [0, 115] {
            let err =
                search_optimal(&tiny(), &CostCoefficients::N128.with_budget(budget)).unwrap_err();
            assert!(matches!(err, Error::Infeasible { minimum: 116, .. }));
        }
    }

    #[test]
    fn result_fits_budget() {
        let k = CostCoefficients::N128.with_budget(300);
        let res = search_optimal(&tiny(), &k).unwrap();
        assert!(res.dsp_used <= 300);
        assert_eq!(res.dsp_used, dsp_usage(&res.config, &k));
        assert!(res.explored > 1);
    }
}
