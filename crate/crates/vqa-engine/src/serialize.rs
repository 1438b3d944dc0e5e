//! Trace serialization: one JSON object per run plus a CSV of per-iteration
//! records with the exact column set
//! `iter,cost,grad_norm,step_len,delta_cost,l_quantifier,wall_ns`.

use std::io::Write;

use serde::Serialize;

use crate::optimizer::OptimizationTrace;

/// Run-level metadata carried next to the trace. Kept to plain fields so
/// the JSON schema is stable.
#[derive(Debug, Clone, Serialize)]
pub struct TraceMeta {
    pub protocol: String,
    pub bc: String,
    pub l: usize,
    pub p: usize,
    pub target: String,
    pub seed: u64,
    pub init_scale: f64,
    pub target_tol: f64,
    pub grad_tol: f64,
    /// Frozen convention constants, recorded for provenance.
    pub evolution_scale: f64,
    pub angle_period: f64,
}

#[derive(Debug, Serialize)]
pub struct TraceDocument<'a> {
    pub meta: &'a TraceMeta,
    pub verdict: crate::optimizer::Verdict,
    pub iterations: usize,
    pub final_cost: f64,
    pub final_grad_norm: f64,
    pub line_search_failed: bool,
    pub h0_rescale: f64,
    pub func_evals: usize,
    pub final_theta: &'a [f64],
}

/// Serialize the run-level JSON document.
pub fn write_trace_json<W: Write>(
    w: &mut W,
    trace: &OptimizationTrace,
    meta: &TraceMeta,
) -> std::io::Result<()> {
    let doc = TraceDocument {
        meta,
        verdict: trace.verdict,
        iterations: trace.iterations,
        final_cost: trace.final_cost,
        final_grad_norm: trace.final_grad_norm,
        line_search_failed: trace.line_search_failed,
        h0_rescale: trace.h0_rescale,
        func_evals: trace.func_evals,
        final_theta: &trace.final_theta,
    };
    serde_json::to_writer_pretty(&mut *w, &doc)?;
    w.write_all(b"\n")
}

pub const TRACE_CSV_HEADER: &str = "iter,cost,grad_norm,step_len,delta_cost,l_quantifier,wall_ns";

/// Write the per-iteration CSV. Floats use the shortest round-trip
/// representation, so identical runs produce byte-identical columns; absent
/// optional fields are empty per RFC 4180.
pub fn write_trace_csv<W: Write>(w: &mut W, trace: &OptimizationTrace) -> std::io::Result<()> {
    writeln!(w, "{TRACE_CSV_HEADER}")?;
    for r in &trace.records {
        let step = r.step_len.map(|v| v.to_string()).unwrap_or_default();
        let l = r.l_quantifier.map(|v| v.to_string()).unwrap_or_default();
        writeln!(
            w,
            "{},{},{},{},{},{},{}",
            r.iter, r.cost, r.grad_norm, step, r.delta_cost, l, r.wall_ns
        )?;
    }
    Ok(())
}
