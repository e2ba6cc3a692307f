use std::fmt::Write as _;
use std::path::PathBuf;

use serde::{Deserialize, Serialize};
use serde_json::json;

use super::{timed, to_value, Command, RunContext, RunOutcome};
use crate::error::Result;
use crate::perfmodel::{search_optimal, WorkloadDoc};
use crate::schema::load_json;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SearchArgs {
    pub workload: PathBuf,
    /// Overrides the document's budget.
    pub budget: Option<u64>,
    /// Counts the document's combination matvecs too.
    pub with_combination: bool,
}

pub fn search(args: &SearchArgs, ctx: RunContext) -> Result<RunOutcome> {
    timed(Command::Search, ctx, || {
        let mut doc: WorkloadDoc = load_json(&args.workload)?;
        if args.budget.is_some() {
            doc.dsp_budget = args.budget;
        }
        let (spec, coeffs) = doc.to_spec(args.with_combination)?;
        let res = search_optimal(&spec, &coeffs)?;

        let hw = res.config;
        let mut table = format!(
            "{}\nbest: {hw}\nDSPs: {} / {}\ntotal cycles: {}\nexplored: {} configurations\n\n{:>5} {:>8} {:>8} {:>8} {:>8} {:>10}\n",
            doc.name.as_deref().unwrap_or("workload"),
            res.dsp_used,
            res.dsp_budget,
            res.estimate.total_cycles,
            res.explored,
            "layer",
            "fft",
            "mac",
            "ifft",
            "vpu",
            "bottleneck"
        );
        for (k, l) in res.estimate.layers.iter().enumerate() {
            let _ = writeln!(
                table,
                "{:>5} {:>8} {:>8} {:>8} {:>8} {:>10}",
                k + 1,
                l.fft_cycles,
                l.mac_cycles,
                l.ifft_cycles,
                l.vpu_cycles,
                l.bottleneck.to_string()
            );
        }
        let inputs = json!({
            "args": to_value(args)?,
            "workload": to_value(&spec)?,
            "coefficients": to_value(&coeffs)?,
        });
        Ok((inputs, to_value(&res)?, table))
    })
}
