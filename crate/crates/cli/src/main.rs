use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use paramodular::groups::GroupKind;
use paramodular::siegel::{RConvention, SiegelSeries};
use paramodular::sp4f2::{enumerate_sp4f2, uniqueness_audit, F2Matrix};
use paramodular_cli::{checks, delta_series, run_all, Check, ConfigError, Report, RunConfig};

/// Exit status for configuration errors (bad prime, cap, tolerance).
const CONFIG_ERROR: u8 = 2;

#[derive(Parser)]
#[command(name = "paramodular", version, about = "Verify the level-2 Fricke-extended paramodular group and its weight-3 cusp form")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Common {
    #[arg(long, default_value_t = 3)]
    p: u64,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    #[arg(long, default_value_t = 1000)]
    samples: usize,
    #[arg(long, default_value_t = 24)]
    cap: i64,
    #[arg(long, default_value_t = 1e-4)]
    tol: f64,
    /// Write the report here as well as to stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Convention::I)]
    convention: Convention,
    #[arg(long, default_value = ".paramodular-cache")]
    cache_dir: PathBuf,
}

#[derive(Clone, Copy, ValueEnum)]
enum Convention {
    I,
    #[value(name = "no-i")]
    NoI,
}

#[derive(Clone, Copy, ValueEnum)]
enum Group {
    Circle,
    #[value(name = "circle-2")]
    Circle2,
    Star,
    #[value(name = "star-2")]
    Star2,
}

#[derive(Subcommand)]
enum Command {
    /// Exact identities of the paramodular group and its Fricke extension.
    VerifyGroup(Common),
    /// Enumerate Sp(4, F2).
    EnumerateSp4f2 {
        /// Print class and involution counts.
        #[arg(long)]
        stats: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Narrow the possible images of the Fricke element to iota.
    AuditUniqueness(Common),
    /// Build the product expansion and write it to a file.
    BuildDelta(Common),
    /// Slash-ratio character values for sampled group elements.
    CheckCharacters {
        #[arg(long)]
        series: PathBuf,
        #[arg(long, value_enum, default_value_t = Group::Circle)]
        group: Group,
        #[arg(long, default_value_t = 1)]
        weight: i32,
        #[arg(long, default_value_t = 6)]
        order: u32,
        #[command(flatten)]
        common: Common,
    },
    /// The period matrix identity for the dual surface.
    CheckDualIdentity(Common),
    /// Every check in order.
    RunAll(Common),
}

impl Common {
    fn config(&self) -> Result<RunConfig, ConfigError> {
        let mut c = RunConfig::new(self.p)?;
        c.seed = self.seed;
        c.samples = self.samples;
        c.cap = self.cap;
        c.tolerance = self.tol;
        c.convention = match self.convention {
            Convention::I => RConvention::I,
            Convention::NoI => RConvention::NoI,
        };
        c.out = self.out.clone();
        c.cache_dir = self.cache_dir.clone();
        c.validate()?;
        Ok(c)
    }
}

fn emit(report: &Report, out: Option<&PathBuf>) -> ExitCode {
    let text = report.to_text();
    print!("{text}");
    if let Some(path) = out {
        if let Err(e) = fs::write(path, &text) {
            eprintln!("error: cannot write {}: {e}", path.display());
            return ExitCode::from(report.exit_code().max(1));
        }
    }
    ExitCode::from(report.exit_code())
}

fn run(command: Command) -> Result<ExitCode, ConfigError> {
    let mut r = Report::default();
    let cfg = match &command {
        Command::VerifyGroup(c) | Command::AuditUniqueness(c) | Command::BuildDelta(c) => c.config()?,
        Command::CheckDualIdentity(c) | Command::RunAll(c) => c.config()?,
        Command::EnumerateSp4f2 { common, .. } | Command::CheckCharacters { common, .. } => common.config()?,
    };
    match command {
        Command::VerifyGroup(_) => {
            r.extend(checks::exact_core(&cfg));
            r.extend(checks::paramodular(&cfg));
        }
        Command::EnumerateSp4f2 { stats, .. } => {
            if stats {
                let t = enumerate_sp4f2();
                let involutions = t.elements().iter().filter(|m| m.mul(**m) == F2Matrix::IDENTITY).count() - 1;
                println!("# order={} derived={} classes={} involutions={}", t.order(), t.derived_order(), t.conjugacy_classes().len(), involutions);
            }
            r.extend(checks::finite_group());
        }
        Command::AuditUniqueness(_) => {
            if let Ok(a) = uniqueness_audit(cfg.p) {
                for line in a.to_string().lines() {
                    println!("# {line}");
                }
            }
            r.extend(checks::audit(cfg.p));
        }
        Command::BuildDelta(_) => {
            let (series, check) = delta_series(&cfg, cfg.cap);
            r.extend([check]);
            if let (Some(s), Some(path)) = (series, cfg.out.as_ref()) {
                let written = fs::write(path, s.to_text());
                let name = "series_written";
                r.extend([match written {
                    Ok(()) => Check::exact(name, true, path.display(), "file", "output"),
                    Err(e) => Check::error(name, e, "output"),
                }]);
            }
            // the report itself goes to stdout only; --out names the series file
            return Ok(emit(&r, None));
        }
        Command::CheckCharacters { series, group, weight, order, .. } => {
            let loaded = fs::read_to_string(&series)
                .map_err(|e| e.to_string())
                .and_then(|t| SiegelSeries::parse(&t).map_err(|e| e.to_string()));
            match loaded {
                Ok(sr) => {
                    let kind = match group {
                        Group::Circle => GroupKind::GammaCircle,
                        Group::Circle2 => GroupKind::GammaCircleLevel2,
                        Group::Star => GroupKind::GammaStar,
                        Group::Star2 => GroupKind::GammaStarLevel2,
                    };
                    r.extend(checks::character_table(&cfg, &sr, kind, weight, order));
                }
                Err(e) => r.extend([Check::error("series", e, "input")]),
            }
        }
        Command::CheckDualIdentity(_) => r.extend(checks::dual_identity(&cfg)),
        Command::RunAll(_) => r = run_all(&cfg)?,
    }
    Ok(emit(&r, cfg.out.as_ref()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(CONFIG_ERROR)
        }
    }
}
