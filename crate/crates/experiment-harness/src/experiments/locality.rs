//! Locality study: how the interaction range of the target Hamiltonian
//! affects optimization hardness, per protocol family.
//!
//! Site-independent cells record the success ratio over many random
//! initializations (local minima appear); site-dependent cells record
//! iterations to converge (never trapped). The acceptance checks are
//! Spearman rank correlations of the aggregate curve against the locality
//! parameter with the predicted signs: success falls as interactions become
//! longer-ranged, iterations fall as well.

use fgs_core::BoundaryCondition;
use vqa_engine::{ProtocolFamily, Verdict};

use super::{execute_run, Ctx, RunLabel};
use crate::campaign::{run_jobs, write_csv, CheckOutcome, ExperimentOutcome};
use crate::stats;
use crate::targets::TargetFamily;
use crate::Result;

/// Locality coordinate: larger = more non-local. For the exponential-decay
/// family that is `1/α`; for the string families it is `k`.
fn nonlocality(f: &TargetFamily) -> f64 {
    match f {
        TargetFamily::LongRange { alpha } => 1.0 / alpha,
        TargetFamily::LocalGeneric { k } | TargetFamily::Cluster { k } => *k as f64,
        _ => 0.0,
    }
}

fn family_name(f: &TargetFamily) -> &'static str {
    match f {
        TargetFamily::LongRange { .. } => "long_range",
        TargetFamily::LocalGeneric { .. } => "local_generic",
        TargetFamily::Cluster { .. } => "cluster",
        TargetFamily::Ising => "ising",
        TargetFamily::RandomSymmetric => "random_symmetric",
    }
}

fn family_values(cfg: &crate::config::ExperimentConfig, name: &str, l: usize) -> Vec<TargetFamily> {
    let ks: Vec<usize> = if cfg.ks.is_empty() {
        (0..(l / 2).saturating_sub(1)).collect()
    } else {
        cfg.ks.iter().copied().filter(|&k| k + 2 <= l).collect()
    };
    match name {
        "long_range" => cfg
            .alphas
            .iter()
            .map(|&alpha| TargetFamily::LongRange { alpha })
            .collect(),
        "local_generic" => ks
            .iter()
            .map(|&k| TargetFamily::LocalGeneric { k })
            .collect(),
        "cluster" => ks.iter().map(|&k| TargetFamily::Cluster { k }).collect(),
        _ => vec![],
    }
}

struct CellAggregate {
    family: ProtocolFamily,
    target_family: String,
    l: usize,
    param: f64,
    /// success ratio (site-independent) or mean iterations (site-dependent)
    value: f64,
    spread: f64,
    runs: usize,
}

pub fn run(ctx: &Ctx) -> Result<ExperimentOutcome> {
    let cfg = ctx.cfg;
    let bc = BoundaryCondition::Periodic;
    let mut aggregates: Vec<CellAggregate> = Vec::new();

    for proto_name in &cfg.protocols {
        let family: ProtocolFamily = proto_name.parse().map_err(crate::HarnessError::Config)?;
        let inits = match family {
            ProtocolFamily::SiteDependent => cfg.site_dep_inits,
            ProtocolFamily::SiteIndependent => cfg.site_indep_inits,
        };
        for &l in &cfg.l {
            let p = l.div_ceil(2);
            for target_name in &cfg.targets {
                for fam in family_values(cfg, target_name, l) {
                    let n_targets = if fam.is_random() {
                        cfg.targets_per_cell
                    } else {
                        1
                    };
                    let reps = inits.div_ceil(n_targets);
                    let mut jobs = Vec::new();
                    for t in 0..n_targets {
                        for rep in 0..reps {
                            jobs.push(RunLabel {
                                family,
                                bc,
                                l,
                                p,
                                target: fam.label(),
                                target_index: t,
                                replicate: rep,
                            });
                        }
                    }
                    let results =
                        run_jobs(jobs, ctx.workers, |label| execute_run(cfg, label, &fam));
                    let mut successes = 0usize;
                    let mut iters: Vec<f64> = Vec::new();
                    let mut total = 0usize;
                    for r in results {
                        let (summary, _) = r?;
                        total += 1;
                        if summary.verdict == Verdict::ConvergedToTarget {
                            successes += 1;
                            iters.push(summary.iterations as f64);
                        }
                    }
                    let (value, spread) = match family {
                        ProtocolFamily::SiteIndependent => {
                            let ratio = successes as f64 / total as f64;
                            (ratio, (ratio * (1.0 - ratio) / total as f64).sqrt())
                        }
                        ProtocolFamily::SiteDependent => {
                            (stats::mean(&iters), stats::std_dev(&iters))
                        }
                    };
                    aggregates.push(CellAggregate {
                        family,
                        target_family: family_name(&fam).to_string(),
                        l,
                        param: nonlocality(&fam),
                        value,
                        spread,
                        runs: total,
                    });
                }
            }
        }
    }

    let rows: Vec<Vec<String>> = aggregates
        .iter()
        .map(|a| {
            vec![
                a.family.to_string(),
                a.target_family.clone(),
                a.l.to_string(),
                a.param.to_string(),
                a.value.to_string(),
                a.spread.to_string(),
                a.runs.to_string(),
            ]
        })
        .collect();
    write_csv(
        &ctx.out.join("aggregate.csv"),
        &ctx.provenance,
        &[
            "protocol",
            "target_family",
            "l",
            "nonlocality",
            "value",
            "spread",
            "runs",
        ],
        &rows,
    )?;

    // Trend checks per (protocol, target family, L): success decreases with
    // non-locality (site-independent), iterations decrease with non-locality
    // (site-dependent); both are negative Spearman correlations.
    let mut checks = Vec::new();
    let mut groups: Vec<(ProtocolFamily, String, usize)> = aggregates
        .iter()
        .map(|a| (a.family, a.target_family.clone(), a.l))
        .collect();
    groups.sort_by(|a, b| format!("{}{}{}", a.0, a.1, a.2).cmp(&format!("{}{}{}", b.0, b.1, b.2)));
    groups.dedup();
    for (family, tf, l) in groups {
        let cells: Vec<&CellAggregate> = aggregates
            .iter()
            .filter(|a| a.family == family && a.target_family == tf && a.l == l)
            .collect();
        if cells.len() < 3 {
            continue;
        }
        let xs: Vec<f64> = cells.iter().map(|c| c.param).collect();
        let ys: Vec<f64> = cells.iter().map(|c| c.value).collect();
        let rho = stats::spearman(&xs, &ys);
        let curve: Vec<String> = cells
            .iter()
            .map(|c| format!("{:.3}:{:.3}", c.param, c.value))
            .collect();
        checks.push(CheckOutcome::new(
            format!("locality_trend_{family}_{tf}_L{l}"),
            rho <= -0.6,
            format!(
                "spearman ρ = {rho:.3} (need ≤ -0.6); curve {}",
                curve.join(" ")
            ),
        ));
    }

    let outcome = ExperimentOutcome::new("locality", checks, ctx.provenance.clone());
    outcome.write_acceptance_json(&ctx.out)?;
    Ok(outcome)
}
