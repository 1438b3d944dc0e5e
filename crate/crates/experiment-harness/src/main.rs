//! `fgsvqa`: config-driven experiment campaigns over the covariance-matrix
//! simulator. Exit codes: 0 success, 1 acceptance failure, 2 config error.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use experiment_harness::config::ExperimentConfig;
use experiment_harness::experiments::{self, Ctx};
use experiment_harness::{HarnessError, EXIT_ACCEPTANCE_FAILURE, EXIT_CONFIG_ERROR};

#[derive(Parser)]
#[command(
    name = "fgsvqa",
    about = "Free-fermion variational circuit experiments over covariance matrices",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args)]
struct CampaignArgs {
    /// Experiment config (TOML); built-in defaults when omitted.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Output directory.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Concurrent worker count.
    #[arg(long, default_value_t = default_workers())]
    workers: usize,
    /// Override of the base seed.
    #[arg(long)]
    seed: Option<u64>,
}

fn default_workers() -> usize {
    std::thread::available_parallelism()
        .map(|n| n.get())
        .unwrap_or(1)
}

#[derive(Subcommand)]
enum Command {
    /// Optimization traces across protocols, targets, sizes and depths.
    Traces(CampaignArgs),
    /// Saturation-depth sweep (p-hat determination).
    PHat(CampaignArgs),
    /// Locality vs optimization-hardness study.
    Locality(CampaignArgs),
    /// Iterations vs depth in the overparameterized regime.
    OverparamDepth(CampaignArgs),
    /// Iterations vs lattice size in both depth regimes.
    SizeScaling(CampaignArgs),
    /// Per-iteration linear-model quantifier study.
    LinearQuantifier(CampaignArgs),
    /// Center-angle gradient variance sampling.
    GradVariance(CampaignArgs),
    /// Staircase overlap decomposition (dense-oracle bound).
    StaircaseOverlaps(CampaignArgs),
    /// Iterations / angle sum / wall time vs depth.
    DepthCost(CampaignArgs),
    /// Dynamical Lie algebra dimension table (CSV to stdout).
    LieDim {
        #[arg(long, default_value = "dep")]
        protocol: String,
        #[arg(long, default_value = "pbc")]
        bc: String,
        #[arg(long, default_value_t = 2)]
        lmin: usize,
        #[arg(long, default_value_t = 8)]
        lmax: usize,
        /// Restrict to a parity sector: "+1" or "-1".
        #[arg(long, allow_hyphen_values = true)]
        parity: Option<String>,
    },
    /// Oracle cross-validation and dimension suites.
    Validate {
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn default_config(kind: &str) -> ExperimentConfig {
    let mut cfg = ExperimentConfig::default();
    match kind {
        "traces" => {
            cfg.l = vec![8, 12, 16, 20];
            cfg.p = vec!["l/2".into(), "l^2/4".into()];
            cfg.targets = vec!["ising".into(), "random_symmetric".into()];
            cfg.targets_per_cell = 3;
        }
        "p_hat" => {
            cfg.l = vec![4, 6, 8, 10];
            cfg.p = vec!["l/2".into()];
            cfg.protocols = vec!["site_dependent".into(), "site_independent".into()];
            cfg.bcs = vec!["obc".into(), "pbc".into()];
            cfg.targets = vec!["random_symmetric".into()];
        }
        "locality" => {
            cfg.l = vec![12, 16];
            cfg.p = vec!["l/2".into()];
            cfg.targets = vec![
                "long_range".into(),
                "local_generic".into(),
                "cluster".into(),
            ];
        }
        "overparam_depth" => {
            cfg.l = vec![8, 12];
            cfg.p = vec![
                "l^2/8".into(),
                "l^2/4".into(),
                "l^2/2".into(),
                "l^2".into(),
                "2*l^2".into(),
            ];
            cfg.protocols = vec!["site_independent".into()];
            cfg.seeds.count = 10;
        }
        "size_scaling" => {
            cfg.l = vec![8, 12, 16, 20, 24];
            cfg.p = vec!["l/2".into(), "8*l".into()];
            cfg.protocols = vec!["site_independent".into()];
            cfg.seeds.count = 10;
        }
        "linear_quantifier" => {
            cfg.l = vec![12, 16];
            cfg.p = vec!["l/2".into(), "8*l".into()];
            cfg.protocols = vec!["site_independent".into()];
        }
        "grad_variance" => {
            cfg.l = vec![6, 8, 10, 12];
            cfg.p = vec!["2*l".into()];
            cfg.protocols = vec!["site_dependent".into()];
        }
        "staircase_overlaps" => {
            cfg.l = vec![8, 10];
            cfg.p = vec!["l/2".into()];
            cfg.protocols = vec!["site_independent".into()];
            cfg.seeds.count = 6;
        }
        "depth_cost" => {
            cfg.l = vec![12];
            cfg.p = vec![
                "6".into(),
                "9".into(),
                "12".into(),
                "18".into(),
                "24".into(),
                "36".into(),
                "48".into(),
                "72".into(),
            ];
            cfg.targets = vec!["random_symmetric".into()];
            cfg.targets_per_cell = 5;
        }
        _ => {}
    }
    cfg
}

fn load_config(kind: &str, args: &CampaignArgs) -> Result<ExperimentConfig, HarnessError> {
    let mut cfg = match &args.config {
        Some(path) => ExperimentConfig::load(path)?,
        None => default_config(kind),
    };
    if let Some(seed) = args.seed {
        cfg.seeds.base = seed;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn run_campaign(
    kind: &str,
    args: &CampaignArgs,
    f: impl Fn(&Ctx) -> experiment_harness::Result<experiment_harness::campaign::ExperimentOutcome>,
) -> ExitCode {
    let cfg = match load_config(kind, args) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("config error: {e}");
            return ExitCode::from(EXIT_CONFIG_ERROR as u8);
        }
    };
    let out = args
        .out
        .clone()
        .unwrap_or_else(|| PathBuf::from("out").join(kind));
    let ctx = Ctx::new(&cfg, out, args.workers, true);
    match f(&ctx) {
        Ok(outcome) => {
            outcome.print_summary();
            if outcome.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_ACCEPTANCE_FAILURE as u8)
            }
        }
        Err(HarnessError::Config(msg)) => {
            eprintln!("config error: {msg}");
            ExitCode::from(EXIT_CONFIG_ERROR as u8)
        }
        Err(e) => {
            eprintln!("run failed: {e}");
            ExitCode::from(EXIT_ACCEPTANCE_FAILURE as u8)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Traces(a) => run_campaign("traces", &a, experiments::traces::run),
        Command::PHat(a) => run_campaign("p_hat", &a, experiments::p_hat::run),
        Command::Locality(a) => run_campaign("locality", &a, experiments::locality::run),
        Command::OverparamDepth(a) => {
            run_campaign("overparam_depth", &a, experiments::overparam::run)
        }
        Command::SizeScaling(a) => run_campaign("size_scaling", &a, experiments::size_scaling::run),
        Command::LinearQuantifier(a) => {
            run_campaign("linear_quantifier", &a, experiments::linear_quantifier::run)
        }
        Command::GradVariance(a) => {
            run_campaign("grad_variance", &a, experiments::grad_variance::run)
        }
        Command::StaircaseOverlaps(a) => {
            run_campaign("staircase_overlaps", &a, experiments::staircase::run)
        }
        Command::DepthCost(a) => run_campaign("depth_cost", &a, experiments::depth_cost::run),
        Command::LieDim {
            protocol,
            bc,
            lmin,
            lmax,
            parity,
        } => {
            let proto: lie_closure::Protocol = match protocol.parse() {
                Ok(p) => p,
                Err(_) => {
                    eprintln!("config error: unknown protocol '{protocol}'");
                    return ExitCode::from(EXIT_CONFIG_ERROR as u8);
                }
            };
            let bc: fgs_core::BoundaryCondition = match bc.parse() {
                Ok(b) => b,
                Err(e) => {
                    eprintln!("config error: {e}");
                    return ExitCode::from(EXIT_CONFIG_ERROR as u8);
                }
            };
            let parity = match parity.as_deref() {
                None => None,
                Some("+1") | Some("1") => Some(1),
                Some("-1") => Some(-1),
                Some(other) => {
                    eprintln!("config error: parity must be +1 or -1, got '{other}'");
                    return ExitCode::from(EXIT_CONFIG_ERROR as u8);
                }
            };
            if lmin < 2 || lmax < lmin {
                eprintln!("config error: need 2 <= lmin <= lmax");
                return ExitCode::from(EXIT_CONFIG_ERROR as u8);
            }
            let mut stdout = std::io::stdout().lock();
            match experiments::lie_dim::write_table(&mut stdout, proto, bc, lmin, lmax, parity) {
                Ok(()) => ExitCode::SUCCESS,
                Err(e) => {
                    eprintln!("run failed: {e}");
                    ExitCode::from(EXIT_ACCEPTANCE_FAILURE as u8)
                }
            }
        }
        Command::Validate { out } => {
            let out = out.unwrap_or_else(|| PathBuf::from("out").join("validate"));
            match experiments::validate::run(&out) {
                Ok(outcome) => {
                    outcome.print_summary();
                    if outcome.passed {
                        ExitCode::SUCCESS
                    } else {
                        ExitCode::from(EXIT_ACCEPTANCE_FAILURE as u8)
                    }
                }
                Err(e) => {
                    eprintln!("run failed: {e}");
                    ExitCode::from(EXIT_ACCEPTANCE_FAILURE as u8)
                }
            }
        }
    }
}
