//! Overparameterized-depth study: iterations to converge vs circuit depth
//! swept in multiples of L². The decay is steep at first, then saturates.

use fgs_core::BoundaryCondition;
use vqa_engine::Verdict;

use super::{execute_run, protocol_cells, Ctx, RunLabel};
use crate::campaign::{run_jobs, write_csv, CheckOutcome, ExperimentOutcome};
use crate::stats;
use crate::targets::TargetFamily;
use crate::Result;

struct DepthCell {
    l: usize,
    p: usize,
    mean_iters: f64,
    std_iters: f64,
    converged: usize,
    capped: usize,
}

pub fn run(ctx: &Ctx) -> Result<ExperimentOutcome> {
    let cfg = ctx.cfg;
    let fam = TargetFamily::Ising;
    let (family, bc) = protocol_cells(cfg)?.first().copied().unwrap_or((
        vqa_engine::ProtocolFamily::SiteIndependent,
        BoundaryCondition::Periodic,
    ));

    let mut cells: Vec<DepthCell> = Vec::new();
    for &l in &cfg.l {
        for p in cfg.depths_for(l)? {
            let jobs: Vec<RunLabel> = (0..cfg.seeds.count)
                .map(|rep| RunLabel {
                    family,
                    bc,
                    l,
                    p,
                    target: fam.label(),
                    target_index: 0,
                    replicate: rep,
                })
                .collect();
            let results = run_jobs(jobs, ctx.workers, |label| execute_run(cfg, label, &fam));
            let mut iters = Vec::new();
            let mut capped = 0usize;
            for r in results {
                let (summary, _) = r?;
                match summary.verdict {
                    Verdict::ConvergedToTarget => iters.push(summary.iterations as f64),
                    Verdict::IterationCap => capped += 1,
                    Verdict::ConvergedLocal => {}
                }
            }
            cells.push(DepthCell {
                l,
                p,
                mean_iters: stats::mean(&iters),
                std_iters: stats::std_dev(&iters),
                converged: iters.len(),
                capped,
            });
        }
    }

    let rows: Vec<Vec<String>> = cells
        .iter()
        .map(|c| {
            vec![
                c.l.to_string(),
                c.p.to_string(),
                (c.p as f64 / (c.l * c.l) as f64).to_string(),
                c.mean_iters.to_string(),
                c.std_iters.to_string(),
                c.converged.to_string(),
                c.capped.to_string(),
            ]
        })
        .collect();
    write_csv(
        &ctx.out.join("aggregate.csv"),
        &ctx.provenance,
        &[
            "l",
            "p",
            "p_over_l_sq",
            "mean_iterations",
            "std_iterations",
            "converged",
            "capped",
        ],
        &rows,
    )?;

    // decay: iterations at p = L²/8 exceed those at p = L²/2 by ≥ 25%;
    // saturation: p = L² and p = 2L² agree within 10%
    let mut checks = Vec::new();
    for &l in &cfg.l {
        let at = |ratio: f64| -> Option<&DepthCell> {
            let want = (ratio * (l * l) as f64).ceil() as usize;
            cells.iter().find(|c| c.l == l && c.p == want)
        };
        if let (Some(early), Some(mid)) = (at(0.125), at(0.5)) {
            let passed = early.mean_iters >= 1.25 * mid.mean_iters;
            checks.push(CheckOutcome::new(
                format!("decay_L{l}"),
                passed,
                format!(
                    "mean iters at p=L²/8: {:.1}, at p=L²/2: {:.1} (need ≥ 25% higher)",
                    early.mean_iters, mid.mean_iters
                ),
            ));
        }
        if let (Some(sat), Some(deep)) = (at(1.0), at(2.0)) {
            let rel = (sat.mean_iters - deep.mean_iters).abs() / sat.mean_iters.max(1.0);
            checks.push(CheckOutcome::new(
                format!("saturation_L{l}"),
                rel <= 0.10,
                format!(
                    "mean iters at p=L²: {:.1}, at p=2L²: {:.1} (rel diff {:.1}%, need ≤ 10%)",
                    sat.mean_iters,
                    deep.mean_iters,
                    100.0 * rel
                ),
            ));
        }
    }
    if cfg.seeds.count < 2 {
        checks.push(CheckOutcome::new(
            "sufficient_statistics",
            false,
            "single-seed config: insufficient statistics for depth means",
        ));
    }

    let outcome = ExperimentOutcome::new("overparam_depth", checks, ctx.provenance.clone());
    outcome.write_acceptance_json(&ctx.out)?;
    Ok(outcome)
}
