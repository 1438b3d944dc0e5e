//! Depth-cost tradeoff: iterations, folded angle sum and optimizer wall
//! time as the depth sweeps past the saturation point. The angle sum grows
//! linearly with depth (more gates to run on hardware), while the wall time
//! develops an interior minimum once the quadratic cost of the dense
//! inverse-Hessian dominates.

use std::time::Instant;

use fgs_core::BoundaryCondition;
use vqa_engine::{sum_of_angles, ParameterVector, Verdict};

use super::{build_cost, protocol_cells, Ctx, RunLabel};
use crate::campaign::{run_jobs, write_csv, CheckOutcome, ExperimentOutcome};
use crate::stats;
use crate::targets::TargetFamily;
use crate::Result;

struct DepthPoint {
    protocol: String,
    p: usize,
    mean_log_iters: f64,
    mean_angle_sum: f64,
    mean_log_wall_s: f64,
    converged: usize,
}

pub fn run(ctx: &Ctx) -> Result<ExperimentOutcome> {
    let cfg = ctx.cfg;
    let fam = TargetFamily::RandomSymmetric;
    let bc = BoundaryCondition::Periodic;
    let l = cfg.l[0];

    let mut points: Vec<DepthPoint> = Vec::new();
    for (family, _) in protocol_cells(cfg)? {
        for p in cfg.depths_for(l)? {
            let mut jobs = Vec::new();
            for t in 0..cfg.targets_per_cell {
                for rep in 0..cfg.seeds.count {
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
            let results = run_jobs(jobs, ctx.workers, |label| -> Result<_> {
                let cf = build_cost(cfg, label, &fam)?;
                let spec = *cf.protocol();
                let seed = super::init_seed_for(cfg.seeds.base, label);
                let theta0 = vqa_engine::random_initial_theta(&spec, seed, cfg.init_scale)?;
                let mut opts = super::bfgs_options(cfg);
                opts.max_iters = Some(super::iteration_cap(cfg, &spec));
                let t0 = Instant::now();
                let trace = vqa_engine::bfgs_minimize(&cf, &theta0, &opts)?;
                let wall = t0.elapsed().as_secs_f64();
                let final_theta = ParameterVector::new(&spec, trace.final_theta.clone())?;
                Ok((
                    trace.verdict,
                    trace.iterations,
                    sum_of_angles(&final_theta, &spec),
                    wall,
                ))
            });
            let mut log_iters = Vec::new();
            let mut angle_sums = Vec::new();
            let mut log_walls = Vec::new();
            for r in results {
                let (verdict, iters, angles, wall) = r?;
                if verdict == Verdict::ConvergedToTarget {
                    log_iters.push((iters as f64).ln());
                    angle_sums.push(angles);
                    log_walls.push(wall.max(1e-9).ln());
                }
            }
            points.push(DepthPoint {
                protocol: family.to_string(),
                p,
                mean_log_iters: stats::mean(&log_iters),
                mean_angle_sum: stats::mean(&angle_sums),
                mean_log_wall_s: stats::mean(&log_walls),
                converged: log_iters.len(),
            });
        }
    }

    let rows: Vec<Vec<String>> = points
        .iter()
        .map(|pt| {
            vec![
                pt.protocol.clone(),
                l.to_string(),
                pt.p.to_string(),
                pt.mean_log_iters.to_string(),
                pt.mean_angle_sum.to_string(),
                pt.mean_log_wall_s.to_string(),
                pt.converged.to_string(),
            ]
        })
        .collect();
    write_csv(
        &ctx.out.join("aggregate.csv"),
        &ctx.provenance,
        &[
            "protocol",
            "l",
            "p",
            "mean_log_iterations",
            "mean_angle_sum",
            "mean_log_wall_s",
            "converged",
        ],
        &rows,
    )?;

    let mut checks = Vec::new();
    for (family, _) in protocol_cells(cfg)? {
        let name = family.to_string();
        let curve: Vec<&DepthPoint> = points.iter().filter(|pt| pt.protocol == name).collect();
        if curve.len() < 3 {
            continue;
        }
        let ps: Vec<f64> = curve.iter().map(|pt| pt.p as f64).collect();
        let sums: Vec<f64> = curve.iter().map(|pt| pt.mean_angle_sum).collect();
        let fit = stats::linear_fit(&ps, &sums);
        checks.push(CheckOutcome::new(
            format!("angle_sum_linear_{name}"),
            fit.r_squared >= 0.9 && fit.slope > 0.0,
            format!(
                "angle sum vs p: slope {:.3}, R² = {:.3} (need ≥ 0.9)",
                fit.slope, fit.r_squared
            ),
        ));
        let walls: Vec<f64> = curve.iter().map(|pt| pt.mean_log_wall_s).collect();
        let min_idx = walls
            .iter()
            .enumerate()
            .min_by(|a, b| a.1.partial_cmp(b.1).unwrap())
            .map(|(i, _)| i)
            .unwrap_or(0);
        checks.push(CheckOutcome::new(
            format!("wall_time_interior_minimum_{name}"),
            min_idx > 0 && min_idx + 1 < walls.len(),
            format!(
                "wall-time minimum at sweep index {min_idx} of {} (interior required)",
                walls.len()
            ),
        ));
    }

    let outcome = ExperimentOutcome::new("depth_cost", checks, ctx.provenance.clone());
    outcome.write_acceptance_json(&ctx.out)?;
    Ok(outcome)
}
