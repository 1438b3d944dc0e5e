//! Center-angle gradient variance, sampled over uniform angles and plotted
//! against the inverse dynamical-algebra dimension and against depth.

use fgs_core::{BoundaryCondition, CovarianceMatrix};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use lie_closure::{closure, protocol_generators, Protocol};
use vqa_engine::{CostFunction, ParameterVector, ProtocolFamily, ProtocolSpec};

use super::{protocol_cells, Ctx};
use crate::campaign::{derive_seed, run_jobs, write_csv, CheckOutcome, ExperimentOutcome};
use crate::stats;
use crate::targets::TargetFamily;
use crate::Result;

/// Index of the "center angle": middle layer; Z sublayer; middle site for
/// the site-dependent family.
fn center_angle_index(spec: &ProtocolSpec) -> usize {
    let layer = spec.p / 2;
    let q = spec.params_per_layer();
    let base = layer * q + spec.xx_count();
    match spec.family {
        ProtocolFamily::SiteIndependent => base,
        ProtocolFamily::SiteDependent => base + spec.l / 2,
    }
}

fn lie_protocol(family: ProtocolFamily) -> Protocol {
    match family {
        ProtocolFamily::SiteIndependent => Protocol::SiteIndependent,
        ProtocolFamily::SiteDependent => Protocol::SiteDependent,
    }
}

/// Sample the variance of `∂e/∂θ_center` over uniform angles.
pub fn sample_center_variance(
    cfg: &crate::config::ExperimentConfig,
    family: ProtocolFamily,
    bc: BoundaryCondition,
    l: usize,
    p: usize,
    target: &TargetFamily,
    samples: usize,
    workers: usize,
) -> Result<f64> {
    let spec = ProtocolSpec::new(family, bc, l, p)?;
    let target_seed = derive_seed(cfg.seeds.base, &["gradvar-target", &l.to_string()]);
    let h = target.build(l, bc, target_seed)?;
    let cf = CostFunction::new(h, spec, CovarianceMatrix::z_polarized(l))?;
    let center = center_angle_index(&spec);
    let half_period = vqa_engine::ANGLE_PERIOD / 2.0;

    let jobs: Vec<u64> = (0..samples as u64).collect();
    let grads = run_jobs(jobs, workers, |&i| -> Result<f64> {
        let seed = derive_seed(
            cfg.seeds.base,
            &["gradvar", &l.to_string(), &p.to_string(), &i.to_string()],
        );
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let theta: Vec<f64> = (0..spec.param_count())
            .map(|_| rng.gen_range(-half_period..half_period))
            .collect();
        let t = ParameterVector::new(&spec, theta)?;
        let (_, grad) = cf.cost_and_gradient(&t)?;
        Ok(grad[center])
    });
    let mut vals = Vec::with_capacity(samples);
    for g in grads {
        vals.push(g?);
    }
    let m = stats::mean(&vals);
    Ok(vals.iter().map(|v| (v - m) * (v - m)).sum::<f64>() / (vals.len() - 1) as f64)
}

pub fn run(ctx: &Ctx) -> Result<ExperimentOutcome> {
    let cfg = ctx.cfg;
    let (family, bc) = protocol_cells(cfg)?
        .first()
        .copied()
        .unwrap_or((ProtocolFamily::SiteDependent, BoundaryCondition::Periodic));
    let fam = TargetFamily::Ising;

    // variance vs 1/dim u across lattice sizes at fixed p/L
    let mut rows = Vec::new();
    let mut inv_dims = Vec::new();
    let mut variances = Vec::new();
    for &l in &cfg.l {
        let p = cfg.depths_for(l)?[0];
        let var = sample_center_variance(cfg, family, bc, l, p, &fam, cfg.samples, ctx.workers)?;
        let gens = protocol_generators(lie_protocol(family), l, bc)?;
        let dim_u = closure(&gens, 8 * (2 * l) * (2 * l))?.dimension;
        rows.push(vec![
            l.to_string(),
            p.to_string(),
            dim_u.to_string(),
            var.to_string(),
        ]);
        inv_dims.push(1.0 / dim_u as f64);
        variances.push(var);
    }
    write_csv(
        &ctx.out.join("aggregate.csv"),
        &ctx.provenance,
        &["l", "p", "dim_u", "variance"],
        &rows,
    )?;

    // variance vs p at the smallest lattice size
    let l0 = cfg.l[0];
    let mut p_rows = Vec::new();
    for mult in [1usize, 2, 4, 8] {
        let p = mult * l0;
        let var =
            sample_center_variance(cfg, family, bc, l0, p, &fam, cfg.samples / 2, ctx.workers)?;
        p_rows.push(vec![l0.to_string(), p.to_string(), var.to_string()]);
    }
    write_csv(
        &ctx.out.join("variance_vs_p.csv"),
        &ctx.provenance,
        &["l", "p", "variance"],
        &p_rows,
    )?;

    let mut checks = Vec::new();
    if variances.iter().any(|v| *v <= 0.0) {
        checks.push(CheckOutcome::new(
            "variance_positive",
            false,
            "a sampled variance was non-positive",
        ));
    } else {
        let slope = stats::power_law_exponent(&inv_dims, &variances);
        checks.push(CheckOutcome::new(
            "variance_slope_vs_inverse_dim",
            (0.7..=1.3).contains(&slope),
            format!("log-log slope = {slope:.3}, need within [0.7, 1.3]"),
        ));
    }

    let outcome = ExperimentOutcome::new("grad_variance", checks, ctx.provenance.clone());
    outcome.write_acceptance_json(&ctx.out)?;
    Ok(outcome)
}
