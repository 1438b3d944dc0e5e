//! Campaign plumbing: deterministic seed derivation, provenance blocks,
//! parallel job execution and artifact writing.

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::config::ExperimentConfig;
use crate::Result;

/// FNV-1a 64-bit over bytes; stable by construction (seed grids must not
/// shift across platforms or releases).
pub fn fnv1a(bytes: &[u8]) -> u64 {
    let mut h: u64 = 0xcbf29ce484222325;
    for &b in bytes {
        h ^= b as u64;
        h = h.wrapping_mul(0x100000001b3);
    }
    h
}

/// Run seed derived from the base seed and the cell labels, so grids can be
/// extended without disturbing completed cells.
pub fn derive_seed(base: u64, parts: &[&str]) -> u64 {
    let mut key = format!("base={base}");
    for p in parts {
        let _ = write!(key, "|{p}");
    }
    fnv1a(key.as_bytes())
}

/// Provenance carried by every emitted artifact.
#[derive(Debug, Clone, Serialize)]
pub struct Provenance {
    pub config_hash: String,
    pub version: String,
    pub evolution_scale: f64,
    pub z_block_sign: f64,
    pub wrap_sign: f64,
    pub angle_period: f64,
    pub target_tol: f64,
    pub grad_tol: f64,
}

impl Provenance {
    pub fn new(cfg: &ExperimentConfig) -> Self {
        Self {
            config_hash: format!("{:016x}", fnv1a(cfg.canonical_toml().as_bytes())),
            version: env!("CARGO_PKG_VERSION").to_string(),
            evolution_scale: fgs_core::conventions::EVOLUTION_SCALE,
            z_block_sign: fgs_core::conventions::Z_BLOCK_SIGN,
            wrap_sign: fgs_core::conventions::WRAP_SIGN,
            angle_period: vqa_engine::ANGLE_PERIOD,
            target_tol: cfg.target_tol,
            grad_tol: cfg.grad_tol,
        }
    }

    /// `#`-prefixed comment block prepended to CSV artifacts (the data
    /// section below it is plain RFC 4180).
    pub fn csv_comment_block(&self) -> String {
        format!(
            "# config_hash={}\n# version={}\n# evolution_scale={}\n# z_block_sign={}\n# wrap_sign={}\n# angle_period={}\n# target_tol={}\n# grad_tol={}\n",
            self.config_hash,
            self.version,
            self.evolution_scale,
            self.z_block_sign,
            self.wrap_sign,
            self.angle_period,
            self.target_tol,
            self.grad_tol
        )
    }
}

/// RFC-4180 quoting: quote when the field contains a comma, quote or
/// newline.
pub fn csv_field(s: &str) -> String {
    if s.contains(',') || s.contains('"') || s.contains('\n') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub fn write_csv(
    path: &Path,
    provenance: &Provenance,
    header: &[&str],
    rows: &[Vec<String>],
) -> Result<()> {
    if let Some(dir) = path.parent() {
        std::fs::create_dir_all(dir)?;
    }
    let mut f = std::fs::File::create(path)?;
    f.write_all(provenance.csv_comment_block().as_bytes())?;
    writeln!(f, "{}", header.join(","))?;
    for row in rows {
        let line: Vec<String> = row.iter().map(|s| csv_field(s)).collect();
        writeln!(f, "{}", line.join(","))?;
    }
    Ok(())
}

/// Run the (ordered) job list on a dedicated pool; output order follows the
/// input order regardless of scheduling.
pub fn run_jobs<J, R, F>(jobs: Vec<J>, workers: usize, f: F) -> Vec<R>
where
    J: Send + Sync,
    R: Send,
    F: Fn(&J) -> R + Sync + Send,
{
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .expect("worker pool");
    pool.install(|| {
        use rayon::prelude::*;
        jobs.par_iter().map(|j| f(j)).collect()
    })
}

/// Outcome of one named acceptance check of an experiment.
#[derive(Debug, Clone, Serialize)]
pub struct CheckOutcome {
    pub name: String,
    pub passed: bool,
    pub details: String,
}

impl CheckOutcome {
    pub fn new(name: impl Into<String>, passed: bool, details: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            passed,
            details: details.into(),
        }
    }
}

/// Per-experiment result: artifacts on disk plus the machine-readable
/// acceptance report.
#[derive(Debug, Serialize)]
pub struct ExperimentOutcome {
    pub experiment: String,
    pub passed: bool,
    pub checks: Vec<CheckOutcome>,
    pub provenance: Provenance,
}

impl ExperimentOutcome {
    pub fn new(experiment: &str, checks: Vec<CheckOutcome>, provenance: Provenance) -> Self {
        let passed = checks.iter().all(|c| c.passed);
        Self {
            experiment: experiment.to_string(),
            passed,
            checks,
            provenance,
        }
    }

    pub fn write_acceptance_json(&self, out_dir: &Path) -> Result<PathBuf> {
        std::fs::create_dir_all(out_dir)?;
        let path = out_dir.join("acceptance.json");
        let mut f = std::fs::File::create(&path)?;
        serde_json::to_writer_pretty(&mut f, self)?;
        f.write_all(b"\n")?;
        Ok(path)
    }

    pub fn print_summary(&self) {
        for c in &self.checks {
            println!(
                "[{}] {}: {} — {}",
                self.experiment,
                c.name,
                if c.passed { "PASS" } else { "FAIL" },
                c.details
            );
        }
    }
}
