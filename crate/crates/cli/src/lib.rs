//! Batch verification runs with line-oriented `key=value` reports.

pub mod cache;
pub mod checks;
pub mod report;

use std::fmt;
use std::path::PathBuf;

use paramodular::exact::Prime;
use paramodular::siegel::{RConvention, MAX_CAP};

pub use cache::{Origin, SeriesCache};
pub use report::{Check, Report, Status};

#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub p: Prime,
    pub seed: u64,
    pub samples: usize,
    pub cap: i64,
    pub tolerance: f64,
    pub convention: RConvention,
    /// Report file; the report always goes to stdout as well.
    pub out: Option<PathBuf>,
    pub cache_dir: PathBuf,
}

#[derive(Clone, Debug, PartialEq)]
pub enum ConfigError {
    Prime(paramodular::Error),
    Tolerance(f64),
    Cap(i64),
    Samples,
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConfigError::Prime(e) => write!(f, "{e}"),
            ConfigError::Tolerance(t) => write!(f, "tolerance must be positive, got {t}"),
            ConfigError::Cap(c) => write!(f, "cap must lie in 6..={MAX_CAP}, got {c}"),
            ConfigError::Samples => f.write_str("samples must be at least 1"),
        }
    }
}

impl std::error::Error for ConfigError {}

impl RunConfig {
    /// Defaults: seed 42, 1000 samples, cap 24, tolerance 1e-4.
    pub fn new(p: u64) -> Result<RunConfig, ConfigError> {
        Ok(RunConfig {
            p: Prime::new(p).map_err(ConfigError::Prime)?,
            seed: 42,
            samples: 1000,
            cap: 24,
            tolerance: 1e-4,
            convention: RConvention::I,
            out: None,
            cache_dir: PathBuf::from(".paramodular-cache"),
        })
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        if !(self.tolerance > 0.0) {
            return Err(ConfigError::Tolerance(self.tolerance));
        }
        if !(6..=MAX_CAP).contains(&self.cap) {
            return Err(ConfigError::Cap(self.cap));
        }
        if self.samples == 0 {
            return Err(ConfigError::Samples);
        }
        Ok(())
    }

    pub fn cache(&self) -> SeriesCache {
        SeriesCache::new(&self.cache_dir)
    }
}

/// The product expansion at `cap` through the cache, with a check line for
/// the build itself.
pub fn delta_series(cfg: &RunConfig, cap: i64) -> (Option<paramodular::siegel::SiegelSeries>, Check) {
    let name = format!("delta_build_cap{cap}");
    match cfg.cache().delta1(cap, cfg.convention) {
        Ok((s, origin, write_err)) => {
            // where the series came from stays out of the report so reruns are byte-identical
            match (origin, write_err) {
                (Origin::Cached, _) => eprintln!("cap {cap}: cached series"),
                (Origin::Built, None) => eprintln!("cap {cap}: built and cached"),
                (Origin::Built, Some(e)) => eprintln!("cap {cap}: built, cache write failed: {e}"),
            }
            let check = Check::exact(&name, true, format!("{} terms", s.len()), "integral", "borcherds-product");
            (Some(s), check)
        }
        Err(e) => (None, Check::error(&name, e, "borcherds-product")),
    }
}

/// Every phase in order: exact arithmetic, the paramodular group, the finite
/// group and the reduction map, the uniqueness audit, the coefficient table,
/// the product expansion and the character scans.
pub fn run_all(cfg: &RunConfig) -> Result<Report, ConfigError> {
    cfg.validate()?;
    let mut r = Report::default();
    r.extend(checks::exact_core(cfg));
    r.extend(checks::paramodular(cfg));
    r.extend(checks::dual_identity(cfg));
    r.extend(checks::finite_group());
    r.extend(checks::lemma(cfg));
    r.extend(checks::audit(cfg.p));
    r.extend(checks::f_table());
    let (lo, c_lo) = delta_series(cfg, cfg.cap);
    let (hi, c_hi) = delta_series(cfg, (cfg.cap + 6).min(MAX_CAP));
    r.extend([c_lo, c_hi]);
    match (&lo, &hi) {
        (Some(lo), Some(hi)) => {
            r.extend(checks::delta(lo, hi));
            r.extend(checks::characters(cfg, lo));
        }
        _ => r.extend([Check::skip("characters", "no series", "characters")]),
    }
    Ok(r)
}
