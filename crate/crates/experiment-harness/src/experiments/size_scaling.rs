//! Size-scaling study: iterations to converge vs lattice size, in the
//! exactly parameterized regime (`p = ⌈L/2⌉`) and the overparameterized
//! regime (`p = 8L`), with fitted power-law exponents.

use fgs_core::BoundaryCondition;
use vqa_engine::Verdict;

use super::{execute_run, protocol_cells, Ctx, RunLabel};
use crate::campaign::{run_jobs, write_csv, CheckOutcome, ExperimentOutcome};
use crate::config::DepthRule;
use crate::stats;
use crate::targets::TargetFamily;
use crate::Result;

pub fn run(ctx: &Ctx) -> Result<ExperimentOutcome> {
    let cfg = ctx.cfg;
    let fam = TargetFamily::Ising;
    let (family, bc) = protocol_cells(cfg)?.first().copied().unwrap_or((
        vqa_engine::ProtocolFamily::SiteIndependent,
        BoundaryCondition::Periodic,
    ));

    // regime label -> (L, mean iterations)
    let mut curves: Vec<(String, Vec<(usize, f64, f64)>)> = Vec::new();
    for rule_text in &cfg.p {
        let rule = DepthRule::parse(rule_text)?;
        let mut curve = Vec::new();
        for &l in &cfg.l {
            let p = rule.depth(l);
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
            for r in results {
                let (summary, _) = r?;
                if summary.verdict == Verdict::ConvergedToTarget {
                    iters.push(summary.iterations as f64);
                }
            }
            curve.push((l, stats::mean(&iters), stats::std_dev(&iters)));
        }
        curves.push((rule_text.clone(), curve));
    }

    let mut rows = Vec::new();
    for (regime, curve) in &curves {
        for (l, m, s) in curve {
            rows.push(vec![
                regime.clone(),
                l.to_string(),
                m.to_string(),
                s.to_string(),
            ]);
        }
    }
    write_csv(
        &ctx.out.join("aggregate.csv"),
        &ctx.provenance,
        &["regime", "l", "mean_iterations", "std_iterations"],
        &rows,
    )?;

    // fit iterations ∝ L^β per regime
    let mut exponents = Vec::new();
    for (regime, curve) in &curves {
        let xs: Vec<f64> = curve.iter().map(|(l, _, _)| *l as f64).collect();
        let ys: Vec<f64> = curve.iter().map(|(_, m, _)| *m).collect();
        let beta = stats::power_law_exponent(&xs, &ys);
        exponents.push((regime.clone(), beta));
    }

    let mut checks = Vec::new();
    let exact = exponents.iter().find(|(r, _)| r.contains("l/2"));
    let over = exponents
        .iter()
        .find(|(r, _)| DepthRule::parse(r).ok() == Some(DepthRule::Linear(8.0)));
    if let (Some((_, b_exact)), Some((_, b_over))) = (exact, over) {
        checks.push(CheckOutcome::new(
            "overparameterized_exponent_window",
            (0.5..=1.5).contains(b_over),
            format!("β(overparameterized) = {b_over:.3}, need within [0.5, 1.5]"),
        ));
        checks.push(CheckOutcome::new(
            "exponent_separation",
            b_exact - b_over >= 0.5,
            format!("β(exact) = {b_exact:.3}, β(overparameterized) = {b_over:.3}, need gap ≥ 0.5"),
        ));
    } else {
        checks.push(CheckOutcome::new(
            "regimes_present",
            false,
            "config must sweep both p = l/2 and p = 8*l",
        ));
    }

    let outcome = ExperimentOutcome::new("size_scaling", checks, ctx.provenance.clone());
    outcome.write_acceptance_json(&ctx.out)?;
    Ok(outcome)
}
