//! Character values from slash ratios at adaptively chosen sample points.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::eval::{evaluate, expansion_matrix, slash_ratio_expansion, EvalConfig};
use super::{from_expansion_chart, to_expansion_chart, SiegelSeries};
use crate::error::{Error, Result};
use crate::exact::{Prime, ScaledMatrix, SymplecticForm};
use crate::groups::{default_generators, mobius_act_f64, Element, Sampler, SamplerConfig, SiegelPoint};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ScanConfig {
    pub eval: EvalConfig,
    /// Largest spread of the ratio across sample points.
    pub constancy_tol: f64,
    /// Largest distance to the nearest root of unity for a snap.
    pub snap_tol: f64,
    /// Sample points per element.
    pub points: usize,
    pub search: PointSearch,
}

impl Default for ScanConfig {
    fn default() -> Self {
        ScanConfig {
            eval: EvalConfig::default(),
            constancy_tol: 1e-4,
            snap_tol: 1e-4,
            points: 3,
            search: PointSearch::default(),
        }
    }
}

/// Random-restart hill climbing for points `z` where both `z` and `g z` sit
/// well inside the region of convergence of the truncated series.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PointSearch {
    pub seed: u64,
    pub starts: usize,
    pub iters: usize,
    /// Attempts at perturbing the optimum into distinct accepted points.
    pub spread_attempts: usize,
}

impl Default for PointSearch {
    fn default() -> Self {
        PointSearch {
            seed: 0x5eed,
            starts: 6,
            iters: 400,
            spread_attempts: 200,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CharacterReport {
    pub element: Element,
    pub weight: i32,
    pub order: u32,
    pub ratio: Complex64,
    /// `k` with `ratio ~ e^(2 pi i k / order)`.
    pub snapped: Option<u32>,
    pub residual: f64,
    pub spread: f64,
    pub points: usize,
}

impl CharacterReport {
    pub fn snapped_value(&self) -> Option<Complex64> {
        self.snapped
            .map(|k| Complex64::from_polar(1.0, 2.0 * PI * k as f64 / self.order as f64))
    }
}

/// Nearest `order`-th root of unity as `(k, |z - e^(2 pi i k / order)|)`.
pub fn snap_root_of_unity(z: Complex64, order: u32) -> (u32, f64) {
    let n = order.max(1) as f64;
    let k = (z.arg() * n / (2.0 * PI)).round().rem_euclid(n) as u32;
    let root = Complex64::from_polar(1.0, 2.0 * PI * k as f64 / n);
    (k, (z - root).norm())
}

/// Eigenvalues of the imaginary part after rescaling `z3` by the level, so
/// that the Fourier exponents of both cusp directions decay alike.
fn balanced_eigen(z: &SiegelPoint) -> (f64, f64) {
    let (y1, y2, y3) = z.imag();
    let b = 3f64.sqrt() * y2;
    let d = 3.0 * y3;
    let mean = 0.5 * (y1 + d);
    let rad = (0.25 * (y1 - d) * (y1 - d) + b * b).sqrt();
    (mean - rad, mean + rad)
}

fn point_from(v: &[f64; 6]) -> Option<SiegelPoint> {
    let (l11, l21, l22) = (v[3].exp(), v[4], v[5].exp());
    // balanced imaginary part L L^T, then undo the rescaling
    let yb = [l11 * l11, l11 * l21, l21 * l21 + l22 * l22];
    let s3 = 3f64.sqrt();
    SiegelPoint::new(
        Complex64::new(v[0], yb[0]),
        Complex64::new(v[1], yb[1] / s3),
        Complex64::new(v[2], yb[2] / 3.0),
    )
    .ok()
}

fn objective(gg: &[[f64; 4]; 4], v: &[f64; 6]) -> f64 {
    let Some(z) = point_from(v) else {
        return f64::NEG_INFINITY;
    };
    let Ok(gz) = mobius_act_f64(gg, &z) else {
        return f64::NEG_INFINITY;
    };
    let (lo1, hi1) = balanced_eigen(&z);
    let (lo2, hi2) = balanced_eigen(&gz);
    lo1.min(lo2).min(1.0) - 0.02 * (hi1 + hi2)
}

fn hill_climb(gg: &[[f64; 4]; 4], search: &PointSearch, rng: &mut ChaCha8Rng) -> [f64; 6] {
    let mut best: Option<([f64; 6], f64)> = None;
    for _ in 0..search.starts.max(1) {
        let mut v: [f64; 6] = std::array::from_fn(|_| rng.gen_range(-1.0..1.0));
        let mut fv = objective(gg, &v);
        let mut step = 0.5;
        for it in 0..search.iters {
            let w: [f64; 6] = std::array::from_fn(|i| v[i] + step * rng.gen_range(-1.0..1.0));
            let fw = objective(gg, &w);
            if fw > fv {
                v = w;
                fv = fw;
            } else if it % 50 == 49 {
                step *= 0.6;
            }
        }
        if best.as_ref().map_or(true, |(_, b)| fv > *b) {
            best = Some((v, fv));
        }
    }
    best.expect("at least one start").0
}

fn accepted(sr: &SiegelSeries, gg: &[[f64; 4]; 4], z: &SiegelPoint, cfg: &EvalConfig) -> Result<()> {
    let gz = mobius_act_f64(gg, z)?;
    evaluate(sr, z, cfg)?;
    evaluate(sr, &gz, cfg)?;
    Ok(())
}

/// Points in the original chart at which the slash ratio of `g` can be
/// computed within the tail tolerance.
pub fn find_sample_points(
    sr: &SiegelSeries,
    g: &Element,
    cfg: &ScanConfig,
) -> Result<Vec<SiegelPoint>> {
    let gg = expansion_matrix(g)?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.search.seed);
    let center = hill_climb(&gg, &cfg.search, &mut rng);
    let mut out: Vec<SiegelPoint> = Vec::new();
    let mut last_err = Error::PrecisionLoss {
        tail: f64::INFINITY,
        tolerance: cfg.eval.tolerance,
    };
    let mut consider = |v: &[f64; 6], out: &mut Vec<SiegelPoint>| {
        if let Some(z) = point_from(v) {
            match accepted(sr, &gg, &z, &cfg.eval) {
                Ok(()) => out.push(from_expansion_chart(&z)),
                Err(e) => last_err = e,
            }
        }
    };
    consider(&center, &mut out);
    for _ in 0..cfg.search.spread_attempts {
        if out.len() >= cfg.points {
            break;
        }
        let v: [f64; 6] = std::array::from_fn(|i| {
            let r = if i < 3 { 0.15 } else { 0.08 };
            center[i] + rng.gen_range(-r..r)
        });
        consider(&v, &mut out);
    }
    if out.len() < cfg.points {
        return Err(last_err);
    }
    Ok(out)
}

/// Slash ratios of `g` at the given points of the original chart, checked for
/// constancy and snapped to an `order`-th root of unity.
pub fn character_report(
    sr: &SiegelSeries,
    g: &Element,
    weight: i32,
    order: u32,
    taus: &[SiegelPoint],
    cfg: &ScanConfig,
) -> Result<CharacterReport> {
    let gg = expansion_matrix(g)?;
    let mut ratios = Vec::with_capacity(taus.len());
    for tau in taus {
        ratios.push(slash_ratio_expansion(sr, &gg, weight, &to_expansion_chart(tau), &cfg.eval)?);
    }
    let first = *ratios.first().ok_or(Error::ConstancyFailure {
        spread: f64::INFINITY,
        tolerance: cfg.constancy_tol,
    })?;
    let spread = ratios.iter().map(|r| (r - first).norm()).fold(0.0, f64::max);
    if spread > cfg.constancy_tol {
        return Err(Error::ConstancyFailure {
            spread,
            tolerance: cfg.constancy_tol,
        });
    }
    let mean = ratios.iter().sum::<Complex64>() / ratios.len() as f64;
    let (k, residual) = snap_root_of_unity(mean, order);
    Ok(CharacterReport {
        element: g.clone(),
        weight,
        order,
        ratio: mean,
        snapped: (residual <= cfg.snap_tol).then_some(k),
        residual,
        spread,
        points: ratios.len(),
    })
}

/// [`character_report`] for each element at a shared list of points.
pub fn character_scan_at(
    sr: &SiegelSeries,
    elements: &[Element],
    weight: i32,
    order: u32,
    taus: &[SiegelPoint],
    cfg: &ScanConfig,
) -> Vec<Result<CharacterReport>> {
    elements
        .iter()
        .map(|g| character_report(sr, g, weight, order, taus, cfg))
        .collect()
}

/// [`character_report`] for each element at its own adaptively chosen points.
pub fn character_scan(
    sr: &SiegelSeries,
    elements: &[Element],
    weight: i32,
    order: u32,
    cfg: &ScanConfig,
) -> Vec<Result<CharacterReport>> {
    elements
        .iter()
        .map(|g| {
            let taus = find_sample_points(sr, g, cfg)?;
            character_report(sr, g, weight, order, &taus, cfg)
        })
        .collect()
}

/// Short random words (length 1 to `max_len`) in the default generators;
/// long words push sample points towards the boundary.
pub fn short_word_elements(p: Prime, count: usize, seed: u64, max_len: usize) -> Result<Vec<ScaledMatrix>> {
    let mut s = Sampler::new(&SamplerConfig::new(p, seed, 1))?;
    let max_len = max_len.max(1);
    Ok((0..count).map(|i| s.word(1 + i % max_len)).collect())
}

/// Level-2 elements built from squares of generators, their conjugates by
/// generators and products of two squares, in seeded order.
pub fn level2_scan_elements(p: Prime, count: usize, seed: u64) -> Vec<ScaledMatrix> {
    let form = SymplecticForm::LambdaP(p);
    let gens = default_generators(p);
    let mut letters = gens.clone();
    letters.extend(gens.iter().map(|g| g.symplectic_inverse(form).expect("generator")));
    let squares: Vec<ScaledMatrix> = letters.iter().map(|g| g.mul(g).expect("integral")).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out: Vec<ScaledMatrix> = Vec::new();
    let push = |g: ScaledMatrix, out: &mut Vec<ScaledMatrix>| {
        if !g.is_identity() && !out.contains(&g) {
            out.push(g);
        }
    };
    for s in &squares {
        push(s.clone(), &mut out);
    }
    let mut guard = 0;
    while out.len() < count && guard < 100 * count + 1000 {
        guard += 1;
        let s = &squares[rng.gen_range(0..squares.len())];
        let g = if rng.gen_bool(0.5) {
            let h = rng.gen_range(0..letters.len());
            let inv = letters[(h + gens.len()) % letters.len()].clone();
            letters[h].mul(s).and_then(|x| x.mul(&inv)).expect("integral")
        } else {
            let t = &squares[rng.gen_range(0..squares.len())];
            s.mul(t).expect("integral")
        };
        push(g, &mut out);
    }
    out.truncate(count);
    out
}
