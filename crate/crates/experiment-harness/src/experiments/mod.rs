//! One module per campaign. Each takes the shared [`Ctx`] and returns an
//! [`ExperimentOutcome`] whose checks quantify the trend the campaign
//! reproduces.

pub mod depth_cost;
pub mod grad_variance;
pub mod lie_dim;
pub mod linear_quantifier;
pub mod locality;
pub mod overparam;
pub mod p_hat;
pub mod size_scaling;
pub mod staircase;
pub mod traces;
pub mod validate;

use std::path::PathBuf;

use fgs_core::{BoundaryCondition, CovarianceMatrix};
use vqa_engine::{
    bfgs_minimize_observed, random_initial_theta, BfgsOptions, CostFunction, OptimizationTrace,
    ProtocolFamily, ProtocolSpec, Verdict,
};

use crate::campaign::{derive_seed, fnv1a, Provenance};
use crate::config::ExperimentConfig;
use crate::targets::TargetFamily;
use crate::Result;

/// Shared execution context.
pub struct Ctx<'a> {
    pub cfg: &'a ExperimentConfig,
    pub out: PathBuf,
    pub workers: usize,
    pub provenance: Provenance,
    /// Write per-run trace files (the CLI always does; bulk statistical
    /// suites may skip them).
    pub write_runs: bool,
}

impl<'a> Ctx<'a> {
    pub fn new(cfg: &'a ExperimentConfig, out: PathBuf, workers: usize, write_runs: bool) -> Self {
        Self {
            cfg,
            out,
            workers,
            provenance: Provenance::new(cfg),
            write_runs,
        }
    }
}

/// Identity of one optimization run within a campaign grid.
#[derive(Debug, Clone)]
pub struct RunLabel {
    pub family: ProtocolFamily,
    pub bc: BoundaryCondition,
    pub l: usize,
    pub p: usize,
    pub target: String,
    pub target_index: usize,
    pub replicate: usize,
}

impl RunLabel {
    pub fn parts(&self) -> Vec<String> {
        vec![
            format!("proto={}", self.family),
            format!("bc={}", self.bc),
            format!("l={}", self.l),
            format!("p={}", self.p),
            format!("target={}", self.target),
            format!("tidx={}", self.target_index),
            format!("rep={}", self.replicate),
        ]
    }

    pub fn key(&self) -> String {
        self.parts().join("|")
    }

    pub fn hash(&self) -> u64 {
        fnv1a(self.key().as_bytes())
    }
}

/// Summary of one completed run.
#[derive(Debug, Clone)]
pub struct RunSummary {
    pub label: RunLabel,
    pub seed: u64,
    pub verdict: Verdict,
    pub iterations: usize,
    pub final_cost: f64,
    pub line_search_failed: bool,
}

pub fn bfgs_options(cfg: &ExperimentConfig) -> BfgsOptions {
    BfgsOptions {
        target_tol: cfg.target_tol,
        grad_tol: cfg.grad_tol,
        ..Default::default()
    }
}

pub fn iteration_cap(cfg: &ExperimentConfig, spec: &ProtocolSpec) -> usize {
    cfg.iter_cap_factor * spec.params_per_layer() * spec.p * spec.l
}

/// Build the cost function for a run label (samples the target with the
/// derived seed and the retry policy).
pub fn build_cost(
    cfg: &ExperimentConfig,
    label: &RunLabel,
    family: &TargetFamily,
) -> Result<CostFunction> {
    let target_seed = derive_seed(
        cfg.seeds.base,
        &[
            "target",
            &label.target,
            &label.l.to_string(),
            &label.target_index.to_string(),
        ],
    );
    let h = family.build(label.l, label.bc, target_seed)?;
    let spec = ProtocolSpec::new(label.family, label.bc, label.l, label.p)?;
    Ok(CostFunction::new(
        h,
        spec,
        CovarianceMatrix::z_polarized(label.l),
    )?)
}

/// Initialization seed of a labeled run.
pub fn init_seed_for(base: u64, label: &RunLabel) -> u64 {
    let mut parts = label.parts();
    parts.push("init".to_string());
    let refs: Vec<&str> = parts.iter().map(|s| s.as_str()).collect();
    derive_seed(base, &refs)
}

/// Execute one seeded optimization run.
pub fn execute_run(
    cfg: &ExperimentConfig,
    label: &RunLabel,
    family: &TargetFamily,
) -> Result<(RunSummary, OptimizationTrace)> {
    let cf = build_cost(cfg, label, family)?;
    let spec = *cf.protocol();
    let init_seed = init_seed_for(cfg.seeds.base, label);
    let theta0 = random_initial_theta(&spec, init_seed, cfg.init_scale)?;
    let mut opts = bfgs_options(cfg);
    opts.max_iters = Some(iteration_cap(cfg, &spec));
    let trace = bfgs_minimize_observed(&cf, &theta0, &opts, |_, _, _| {})?;
    Ok((
        RunSummary {
            label: label.clone(),
            seed: init_seed,
            verdict: trace.verdict,
            iterations: trace.iterations,
            final_cost: trace.final_cost,
            line_search_failed: trace.line_search_failed,
        },
        trace,
    ))
}

/// Write the per-run trace pair (`trace_<hash>.csv` / `.json`).
pub fn write_run_artifacts(
    ctx: &Ctx,
    label: &RunLabel,
    seed: u64,
    trace: &OptimizationTrace,
) -> Result<()> {
    std::fs::create_dir_all(&ctx.out)?;
    let stem = format!("trace_{:016x}", label.hash());
    let meta = vqa_engine::serialize::TraceMeta {
        protocol: label.family.to_string(),
        bc: label.bc.to_string(),
        l: label.l,
        p: label.p,
        target: label.target.clone(),
        seed,
        init_scale: ctx.cfg.init_scale,
        target_tol: ctx.cfg.target_tol,
        grad_tol: ctx.cfg.grad_tol,
        evolution_scale: fgs_core::conventions::EVOLUTION_SCALE,
        angle_period: vqa_engine::ANGLE_PERIOD,
    };
    let mut csv = Vec::new();
    csv.extend_from_slice(ctx.provenance.csv_comment_block().as_bytes());
    vqa_engine::serialize::write_trace_csv(&mut csv, trace)?;
    std::fs::write(ctx.out.join(format!("{stem}.csv")), csv)?;
    let mut json = Vec::new();
    vqa_engine::serialize::write_trace_json(&mut json, trace, &meta)?;
    std::fs::write(ctx.out.join(format!("{stem}.json")), json)?;
    Ok(())
}

/// Parse the (protocol, bc) cells of a config.
pub fn protocol_cells(cfg: &ExperimentConfig) -> Result<Vec<(ProtocolFamily, BoundaryCondition)>> {
    let mut out = Vec::new();
    for proto in &cfg.protocols {
        let family: ProtocolFamily = proto.parse().map_err(crate::HarnessError::Config)?;
        for bc in &cfg.bcs {
            let bc: BoundaryCondition = bc
                .parse()
                .map_err(|e: fgs_core::FgsError| crate::HarnessError::Config(e.to_string()))?;
            out.push((family, bc));
        }
    }
    Ok(out)
}
