//! Declarative experiment configuration (TOML).
//!
//! The schema is a single document; unknown keys are rejected. Depth grids
//! are given as rules evaluated per lattice size: a plain integer, or the
//! forms `"l/2"` (⌈L/2⌉), `"N*l"`, `"l^2"`, `"l^2/N"`, `"N*l^2"`.

use serde::{Deserialize, Serialize};

use crate::{HarnessError, Result};

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ExperimentConfig {
    /// Lattice sizes.
    pub l: Vec<usize>,
    /// Depth rules (see module docs).
    pub p: Vec<String>,
    /// `site_dependent` / `site_independent`.
    pub protocols: Vec<String>,
    /// `obc` / `pbc`.
    pub bcs: Vec<String>,
    /// Target families: `ising`, `random_symmetric`, `long_range`,
    /// `local_generic`, `cluster`.
    pub targets: Vec<String>,
    /// Decay rates for the long-range family.
    pub alphas: Vec<f64>,
    /// Locality ranges for the cluster / local_generic families; empty means
    /// `0..L/2-1` per lattice size.
    pub ks: Vec<usize>,
    pub seeds: SeedConfig,
    /// Random target Hamiltonians per cell (random families only).
    pub targets_per_cell: usize,
    /// Random initializations per cell for the site-dependent protocol.
    pub site_dep_inits: usize,
    /// Random initializations per cell for the site-independent protocol.
    pub site_indep_inits: usize,
    /// Samples per cell for the gradient-variance study.
    pub samples: usize,
    pub target_tol: f64,
    pub grad_tol: f64,
    /// Iteration cap as a multiple of `q·p·L`.
    pub iter_cap_factor: usize,
    /// Half-width of the uniform initialization window.
    pub init_scale: f64,
    /// Eigenstates tracked by the staircase overlap study.
    pub n_overlap_states: usize,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SeedConfig {
    pub count: usize,
    pub base: u64,
}

impl Default for SeedConfig {
    fn default() -> Self {
        Self { count: 5, base: 42 }
    }
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            l: vec![8, 12],
            p: vec!["l/2".into()],
            protocols: vec!["site_independent".into(), "site_dependent".into()],
            bcs: vec!["pbc".into()],
            targets: vec!["ising".into()],
            alphas: vec![0.25, 0.5, 1.0, 2.0, 4.0],
            ks: vec![],
            seeds: SeedConfig::default(),
            targets_per_cell: 5,
            site_dep_inits: 50,
            site_indep_inits: 200,
            samples: 2000,
            target_tol: 1e-10,
            grad_tol: 1e-8,
            iter_cap_factor: 10,
            init_scale: vqa_engine::DEFAULT_INIT_SCALE,
            n_overlap_states: 10,
        }
    }
}

impl ExperimentConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        let cfg: ExperimentConfig =
            toml::from_str(text).map_err(|e| HarnessError::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &std::path::Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| HarnessError::Config(format!("{}: {e}", path.display())))?;
        Self::from_toml(&text)
    }

    pub fn validate(&self) -> Result<()> {
        if self.l.is_empty() {
            return Err(HarnessError::Config("empty lattice-size grid".into()));
        }
        if self.p.is_empty() {
            return Err(HarnessError::Config("empty depth grid".into()));
        }
        if self.seeds.count == 0 {
            return Err(HarnessError::Config("seed count must be >= 1".into()));
        }
        for rule in &self.p {
            DepthRule::parse(rule)?;
        }
        for l in &self.l {
            if *l < 2 {
                return Err(HarnessError::Config(format!("lattice size {l} < 2")));
            }
            for rule in &self.p {
                let p = DepthRule::parse(rule)?.depth(*l);
                if p == 0 {
                    return Err(HarnessError::Config(format!(
                        "depth rule '{rule}' gives p = 0 at L = {l}"
                    )));
                }
            }
        }
        for proto in &self.protocols {
            proto
                .parse::<vqa_engine::ProtocolFamily>()
                .map_err(HarnessError::Config)?;
        }
        for bc in &self.bcs {
            bc.parse::<fgs_core::BoundaryCondition>()
                .map_err(|e| HarnessError::Config(e.to_string()))?;
        }
        for t in &self.targets {
            crate::targets::TargetFamily::validate_name(t)?;
        }
        Ok(())
    }

    pub fn canonical_toml(&self) -> String {
        toml::to_string(self).expect("config serializes")
    }

    pub fn depths_for(&self, l: usize) -> Result<Vec<usize>> {
        self.p
            .iter()
            .map(|r| Ok(DepthRule::parse(r)?.depth(l)))
            .collect()
    }
}

/// A depth expressed as a function of lattice size.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DepthRule {
    Abs(usize),
    /// `⌈L/2⌉`
    CeilHalf,
    /// `⌈c·L⌉`
    Linear(f64),
    /// `⌈c·L²⌉`
    Quadratic(f64),
}

impl DepthRule {
    pub fn parse(text: &str) -> Result<Self> {
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let s = s.to_ascii_lowercase();
        if let Ok(n) = s.parse::<usize>() {
            return Ok(DepthRule::Abs(n));
        }
        if s == "l/2" {
            return Ok(DepthRule::CeilHalf);
        }
        // forms: [c*]l^2[/d]  |  [c*]l[/d]
        let (coef, rest) = match s.find(|c: char| !c.is_ascii_digit() && c != '.') {
            Some(0) => (1.0, s.as_str()),
            Some(idx) => {
                let c: f64 = s[..idx]
                    .parse()
                    .map_err(|_| HarnessError::Config(format!("bad depth rule '{text}'")))?;
                let r = s[idx..].strip_prefix('*').unwrap_or(&s[idx..]);
                (c, r)
            }
            None => return Err(HarnessError::Config(format!("bad depth rule '{text}'"))),
        };
        let (quadratic, rest) = if let Some(r) = rest.strip_prefix("l^2") {
            (true, r)
        } else if let Some(r) = rest.strip_prefix("l") {
            (false, r)
        } else {
            return Err(HarnessError::Config(format!("bad depth rule '{text}'")));
        };
        let divisor = if rest.is_empty() {
            1.0
        } else if let Some(d) = rest.strip_prefix('/') {
            d.parse::<f64>()
                .map_err(|_| HarnessError::Config(format!("bad depth rule '{text}'")))?
        } else {
            return Err(HarnessError::Config(format!("bad depth rule '{text}'")));
        };
        let c = coef / divisor;
        Ok(if quadratic {
            DepthRule::Quadratic(c)
        } else {
            DepthRule::Linear(c)
        })
    }

    pub fn depth(&self, l: usize) -> usize {
        match self {
            DepthRule::Abs(n) => *n,
            DepthRule::CeilHalf => l.div_ceil(2),
            DepthRule::Linear(c) => (c * l as f64).ceil() as usize,
            DepthRule::Quadratic(c) => (c * (l * l) as f64).ceil() as usize,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn depth_rules_parse() {
        assert_eq!(DepthRule::parse("12").unwrap(), DepthRule::Abs(12));
        assert_eq!(DepthRule::parse("l/2").unwrap(), DepthRule::CeilHalf);
        assert_eq!(DepthRule::parse("8*l").unwrap(), DepthRule::Linear(8.0));
        assert_eq!(DepthRule::parse("8l").unwrap(), DepthRule::Linear(8.0));
        assert_eq!(
            DepthRule::parse("l^2/4").unwrap(),
            DepthRule::Quadratic(0.25)
        );
        assert_eq!(
            DepthRule::parse("2*l^2").unwrap(),
            DepthRule::Quadratic(2.0)
        );
        assert_eq!(DepthRule::parse("l^2").unwrap(), DepthRule::Quadratic(1.0));
        assert!(DepthRule::parse("q/3").is_err());
    }

    #[test]
    fn depth_evaluation() {
        assert_eq!(DepthRule::CeilHalf.depth(5), 3);
        assert_eq!(DepthRule::Linear(8.0).depth(12), 96);
        assert_eq!(DepthRule::Quadratic(0.25).depth(10), 25);
        assert_eq!(DepthRule::Quadratic(0.125).depth(12), 18);
    }

    #[test]
    fn toml_roundtrip_and_validation() {
        let cfg = ExperimentConfig::default();
        let text = cfg.canonical_toml();
        let back = ExperimentConfig::from_toml(&text).unwrap();
        assert_eq!(back.l, cfg.l);

        assert!(ExperimentConfig::from_toml("l = []").is_err());
        assert!(ExperimentConfig::from_toml("unknown_key = 1").is_err());
        let zero_depth = r#"
            l = [4]
            p = ["0"]
        "#;
        assert!(ExperimentConfig::from_toml(zero_depth).is_err());
    }
}
