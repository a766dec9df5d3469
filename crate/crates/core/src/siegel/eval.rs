//! Numerical evaluation and the slash action.

use std::f64::consts::PI;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};

use super::{weight, SiegelSeries, LEVEL};
use crate::error::{Error, Result};
use crate::groups::{mobius_with_det, Element, SiegelPoint};

/// How `r` is substituted: `e^(2 pi i z2)` (`I`) or `e^(2 pi z2)` (`NoI`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum RConvention {
    #[default]
    I,
    NoI,
}

impl std::str::FromStr for RConvention {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "i" => Ok(RConvention::I),
            "no-i" => Ok(RConvention::NoI),
            _ => Err(Error::Parse(format!("unknown convention `{s}` (expected i or no-i)"))),
        }
    }
}

impl std::fmt::Display for RConvention {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            RConvention::I => "i",
            RConvention::NoI => "no-i",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EvalConfig {
    pub convention: RConvention,
    /// Largest accepted ratio of the tail estimate to the value.
    pub tolerance: f64,
}

impl Default for EvalConfig {
    fn default() -> Self {
        EvalConfig {
            convention: RConvention::I,
            tolerance: 1e-7,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Evaluation {
    pub value: Complex64,
    /// Estimated size of the dropped terms plus rounding.
    pub tail: f64,
}

impl Evaluation {
    pub fn relative_tail(&self) -> f64 {
        if self.value.norm() == 0.0 {
            f64::INFINITY
        } else {
            self.tail / self.value.norm()
        }
    }
}

fn exponent(conv: RConvention, (a, b, c): (i64, i64, i64), z: &SiegelPoint) -> Complex64 {
    let two_pi_i = Complex64::new(0.0, 2.0 * PI);
    let qs = two_pi_i * (z.tau1 * (a as f64 / 6.0) + z.tau3 * (c as f64 / 2.0));
    let r = match conv {
        RConvention::I => two_pi_i * z.tau2 * (b as f64 / 2.0),
        RConvention::NoI => z.tau2 * (PI * b as f64),
    };
    qs + r
}

fn to_f64(v: &BigInt) -> f64 {
    v.to_f64().unwrap_or(f64::INFINITY)
}

/// Sums the series at a point of the expansion chart. Fails with
/// `PrecisionLoss` when the relative tail exceeds `cfg.tolerance`.
pub fn evaluate(sr: &SiegelSeries, z: &SiegelPoint, cfg: &EvalConfig) -> Result<Evaluation> {
    let ev = evaluate_unchecked(sr, z, cfg.convention);
    if sr.is_empty() {
        return Ok(ev);
    }
    let rel = ev.relative_tail();
    if !(rel <= cfg.tolerance) {
        return Err(Error::PrecisionLoss {
            tail: rel,
            tolerance: cfg.tolerance,
        });
    }
    Ok(ev)
}

/// Value and tail estimate without the tolerance check.
pub fn evaluate_unchecked(sr: &SiegelSeries, z: &SiegelPoint, conv: RConvention) -> Evaluation {
    let mut value = Complex64::new(0.0, 0.0);
    let mut abs_sum = 0.0;
    for (&k, v) in sr.terms() {
        let t = exponent(conv, k, z).exp() * to_f64(v);
        value += t;
        abs_sum += t.norm();
    }
    if sr.is_empty() {
        return Evaluation { value, tail: 0.0 };
    }
    let tail = dropped_shell_bound(sr, z, conv) + 4.0 * f64::EPSILON * abs_sum;
    Evaluation {
        value,
        tail: if tail.is_nan() { f64::INFINITY } else { tail },
    }
}

/// Bound on the next shell of weights `cap < a + c <= cap + 12` over the
/// positive cone `4 a c >= 3 b^2`, scaled by the coefficient growth seen in
/// the top stored shells.
fn dropped_shell_bound(sr: &SiegelSeries, z: &SiegelPoint, conv: RConvention) -> f64 {
    let cap = sr.cap();
    let (&(a0, b0, c0), _) = sr.terms().next().expect("nonempty");
    let amin = sr.terms().map(|(k, _)| k.0).min().unwrap_or(0).max(0);
    let cmin = sr.terms().map(|(k, _)| k.2).min().unwrap_or(0).max(0);
    let (ra, rb, rc) = (a0.rem_euclid(6), b0.rem_euclid(2), c0.rem_euclid(6));
    let shell_max = |lo: i64, hi: i64| {
        sr.terms()
            .filter(|(&k, _)| weight(k) > lo && weight(k) <= hi)
            .map(|(_, v)| to_f64(v).abs())
            .fold(0.0, f64::max)
    };
    let top = shell_max(cap - 12, cap).max(1.0);
    let prev = shell_max(cap - 24, cap - 12).max(1.0);
    let growth = top * (top / prev).max(1.0);
    let first = |r: i64, min: i64| min + (r - min).rem_euclid(6);
    let mut sum = 0.0;
    let mut a = first(ra, amin);
    while a <= cap + 12 {
        let mut c = first(rc, cmin);
        while a + c <= cap + 12 {
            if a + c > cap {
                let bmax = ((4 * a * c) as f64 / 3.0).sqrt().floor() as i64 + 1;
                let mut b = -bmax;
                if (b - rb).rem_euclid(2) != 0 {
                    b += 1;
                }
                while b <= bmax {
                    if 3 * b * b <= 4 * a * c {
                        sum += exponent(conv, (a, b, c), z).re.min(700.0).exp();
                    }
                    b += 2;
                }
            }
            c += 6;
        }
        a += 6;
    }
    growth * sum
}

/// `(tau1, tau2 / p, tau3 / p^2)`: the point of the expansion chart
/// corresponding to `tau` in the original chart, for `p = 3`.
pub fn to_expansion_chart(tau: &SiegelPoint) -> SiegelPoint {
    let p = LEVEL as f64;
    SiegelPoint {
        tau1: tau.tau1,
        tau2: tau.tau2 / p,
        tau3: tau.tau3 / (p * p),
    }
}

pub fn from_expansion_chart(z: &SiegelPoint) -> SiegelPoint {
    let p = LEVEL as f64;
    SiegelPoint {
        tau1: z.tau1,
        tau2: z.tau2 * p,
        tau3: z.tau3 * p * p,
    }
}

/// The element acting on the expansion chart: conjugation of the
/// original-chart matrix by `diag(1, 1/p, 1, p)`.
pub fn expansion_matrix(g: &Element) -> Result<[[f64; 4]; 4]> {
    if g.p().get() != LEVEL {
        return Err(Error::ChartMismatch);
    }
    let p = BigRational::from_integer(BigInt::from(LEVEL));
    let one = BigRational::one();
    let diag = [one.clone(), one.clone() / &p, one, p];
    Ok(g.to_untilde().conjugate_diagonal(diag).to_f64())
}

/// `F(g z) / (det(C z + D)^k F(z))` for a real matrix acting on the expansion chart.
pub(crate) fn slash_ratio_expansion(
    sr: &SiegelSeries,
    gg: &[[f64; 4]; 4],
    k: i32,
    z: &SiegelPoint,
    cfg: &EvalConfig,
) -> Result<Complex64> {
    let (gz, det) = mobius_with_det(gg, z)?;
    let num = evaluate(sr, &gz, cfg)?.value;
    let den = evaluate(sr, z, cfg)?.value * det.powi(k);
    Ok(num / den)
}

/// `F(g tau) / (det(C tau + D)^k F(tau))` with `tau` in the original chart.
pub fn slash_ratio(
    sr: &SiegelSeries,
    g: &Element,
    weight: i32,
    tau: &SiegelPoint,
    cfg: &EvalConfig,
) -> Result<Complex64> {
    let gg = expansion_matrix(g)?;
    slash_ratio_expansion(sr, &gg, weight, &to_expansion_chart(tau), cfg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{Prime, ScaledMatrix};
    use crate::groups::make_vbar;
    use crate::jacobi::expand_f_table;
    use crate::siegel::{build_delta1, required_qmax, series_power};

    fn delta(cap: i64) -> SiegelSeries {
        build_delta1(cap, &expand_f_table(required_qmax(cap))).unwrap()
    }

    #[test]
    fn empty_series_is_zero() {
        let z = SiegelPoint::diagonal(1.0, 1.0).unwrap();
        let ev = evaluate(&SiegelSeries::zero(10), &z, &EvalConfig::default()).unwrap();
        assert_eq!(ev.value, Complex64::new(0.0, 0.0));
    }

    #[test]
    fn leading_term_dominates_far_out() {
        // Δ1 is odd in z2, so stay off the diagonal
        let d = delta(24);
        let z = SiegelPoint::new(
            Complex64::new(0.0, 10.0),
            Complex64::new(0.1, 0.1),
            Complex64::new(0.0, 10.0),
        )
        .unwrap();
        let ev = evaluate(&d, &z, &EvalConfig::default()).unwrap();
        let lead = exponent(RConvention::I, (1, 1, 1), &z).exp()
            - exponent(RConvention::I, (1, -1, 1), &z).exp();
        let err = (ev.value - lead).norm();
        assert!(err / lead.norm() < 1e-12, "{err}");
        assert!(ev.relative_tail() < 1e-12);
    }

    #[test]
    fn convergence_in_cap() {
        let z = SiegelPoint::new(
            Complex64::new(0.1, 1.1),
            Complex64::new(0.2, 0.15),
            Complex64::new(-0.1, 0.4),
        )
        .unwrap();
        let lo = evaluate_unchecked(&delta(24), &z, RConvention::I);
        let hi = evaluate_unchecked(&delta(48), &z, RConvention::I);
        assert!((lo.value - hi.value).norm() < lo.tail, "{} vs {}", (lo.value - hi.value).norm(), lo.tail);
    }

    #[test]
    fn identity_ratio() {
        let d = delta(24);
        let p = Prime::new(3).unwrap();
        let tau = SiegelPoint::new(
            Complex64::new(0.1, 1.1),
            Complex64::new(0.2, 0.45),
            Complex64::new(-0.1, 3.6),
        )
        .unwrap();
        let r = slash_ratio(&d, &ScaledMatrix::identity(p).into(), 1, &tau, &EvalConfig::default()).unwrap();
        assert!((r - 1.0).norm() < 1e-12);
    }

    #[test]
    fn fricke_on_cube() {
        let d3 = series_power(&delta(36), 3);
        let p = Prime::new(3).unwrap();
        let tau = SiegelPoint::new(
            Complex64::new(0.13, 1.05),
            Complex64::new(0.21, 0.3),
            Complex64::new(-0.07, 3.2),
        )
        .unwrap();
        let r = slash_ratio(&d3, &make_vbar(p).into(), 3, &tau, &EvalConfig::default()).unwrap();
        assert!((r + 1.0).norm() < 1e-4, "{r}");
    }
}
