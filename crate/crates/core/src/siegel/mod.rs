//! Truncated Fourier expansions on the Siegel upper half-space of degree 2.
//!
//! A monomial `(a, b, c)` stands for `q^(a/6) r^(b/2) s^(c/2)` with
//! `q = e(z1)`, `r = e(z2)`, `s = e(z3)` in the expansion chart of the level-3
//! paramodular group, where the Borcherds product for `Δ1` is written. Series
//! are truncated by the weight `a + c <= cap`, which is symmetric in `q` and `s`
//! and so preserved by the Fricke involution.

mod eval;
mod scan;

pub use eval::{
    evaluate, expansion_matrix, slash_ratio, to_expansion_chart, from_expansion_chart,
    EvalConfig, Evaluation, RConvention,
};
pub use scan::{
    character_report, character_scan, character_scan_at, find_sample_points, level2_scan_elements,
    short_word_elements, snap_root_of_unity, CharacterReport, PointSearch, ScanConfig,
};

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::jacobi::{binomial_power_coeff, FTable};

/// Exponent triple `(a, b, c)` of `q^(a/6) r^(b/2) s^(c/2)`.
pub type Exponent = (i64, i64, i64);

/// Largest cap accepted by [`build_delta1`].
pub const MAX_CAP: i64 = 240;

/// The level of the paramodular group `Δ1` belongs to.
pub const LEVEL: u64 = 3;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SiegelSeries {
    cap: i64,
    coeffs: BTreeMap<Exponent, BigInt>,
}

#[inline]
pub fn weight((a, _, c): Exponent) -> i64 {
    a + c
}

impl SiegelSeries {
    pub fn zero(cap: i64) -> Self {
        SiegelSeries {
            cap,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn one(cap: i64) -> Self {
        Self::from_terms(cap, [((0, 0, 0), BigInt::one())])
    }

    pub fn from_terms(cap: i64, terms: impl IntoIterator<Item = (Exponent, BigInt)>) -> Self {
        let mut s = Self::zero(cap);
        for (k, c) in terms {
            s.add_term(k, c);
        }
        s
    }

    pub fn add_term(&mut self, k: Exponent, c: BigInt) {
        if weight(k) > self.cap || c.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(k).or_default();
        *slot += c;
        if slot.is_zero() {
            self.coeffs.remove(&k);
        }
    }

    /// Every coefficient with `a + c <= cap` is exact.
    pub fn cap(&self) -> i64 {
        self.cap
    }

    pub fn get(&self, k: Exponent) -> BigInt {
        self.coeffs.get(&k).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &BigInt)> {
        self.coeffs.iter()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn min_weight(&self) -> Option<i64> {
        self.coeffs.keys().map(|&k| weight(k)).min()
    }

    pub fn truncate(&self, cap: i64) -> SiegelSeries {
        let cap = cap.min(self.cap);
        SiegelSeries {
            cap,
            coeffs: self
                .coeffs
                .iter()
                .filter(|(&k, _)| weight(k) <= cap)
                .map(|(&k, v)| (k, v.clone()))
                .collect(),
        }
    }

    pub fn shift(&self, (da, db, dc): Exponent) -> SiegelSeries {
        SiegelSeries {
            cap: self.cap + da + dc,
            coeffs: self
                .coeffs
                .iter()
                .map(|(&(a, b, c), v)| ((a + da, b + db, c + dc), v.clone()))
                .collect(),
        }
    }

    /// Largest coefficient modulus as a float.
    pub fn max_abs_coeff(&self) -> f64 {
        self.coeffs
            .values()
            .map(|v| v.to_f64().unwrap_or(f64::INFINITY).abs())
            .fold(0.0, f64::max)
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("siegel cap={}\n", self.cap);
        for (&(a, b, c), v) in &self.coeffs {
            writeln!(s, "{a} {b} {c} {v}").expect("string write");
        }
        s
    }

    pub fn parse(text: &str) -> Result<SiegelSeries> {
        let mut lines = text.lines();
        let header = lines.next().ok_or_else(|| Error::Parse("empty series".into()))?;
        let cap: i64 = header
            .strip_prefix("siegel cap=")
            .and_then(|v| v.trim().parse().ok())
            .ok_or_else(|| Error::Parse(format!("bad header `{header}`")))?;
        let mut s = SiegelSeries::zero(cap);
        for line in lines.filter(|l| !l.trim().is_empty()) {
            let bad = || Error::Parse(format!("bad line `{line}`"));
            let parts: Vec<&str> = line.split_whitespace().collect();
            if parts.len() != 4 {
                return Err(bad());
            }
            let a: i64 = parts[0].parse().map_err(|_| bad())?;
            let b: i64 = parts[1].parse().map_err(|_| bad())?;
            let c: i64 = parts[2].parse().map_err(|_| bad())?;
            let v: BigInt = parts[3].parse().map_err(|_| bad())?;
            if a + c > cap {
                return Err(bad());
            }
            s.add_term((a, b, c), v);
        }
        Ok(s)
    }
}

/// Product, exact up to `min(cap_a + wmin_b, cap_b + wmin_a)`.
pub fn series_mul(a: &SiegelSeries, b: &SiegelSeries) -> SiegelSeries {
    let cap = match (a.min_weight(), b.min_weight()) {
        (Some(wa), Some(wb)) => (a.cap + wb).min(b.cap + wa),
        _ => a.cap.min(b.cap),
    };
    mul_truncated(a, b, cap)
}

/// Product truncated at `cap`; the caller vouches for exactness.
fn mul_truncated(a: &SiegelSeries, b: &SiegelSeries, cap: i64) -> SiegelSeries {
    let mut acc: BTreeMap<Exponent, BigInt> = BTreeMap::new();
    // group the right factor by weight so that each left term stops early
    let mut by_weight: Vec<(i64, Exponent, &BigInt)> =
        b.coeffs.iter().map(|(&k, v)| (weight(k), k, v)).collect();
    by_weight.sort_by_key(|t| t.0);
    for (&(a1, b1, c1), x) in &a.coeffs {
        let room = cap - (a1 + c1);
        for &(w, (a2, b2, c2), y) in &by_weight {
            if w > room {
                break;
            }
            *acc.entry((a1 + a2, b1 + b2, c1 + c2)).or_default() += x * y;
        }
    }
    acc.retain(|_, v| !v.is_zero());
    SiegelSeries { cap, coeffs: acc }
}

pub fn series_power(sr: &SiegelSeries, k: u32) -> SiegelSeries {
    assert!(k >= 1, "power must be positive");
    let mut acc = sr.clone();
    for _ in 1..k {
        acc = series_mul(&acc, sr);
    }
    acc
}

/// `(1 - x)^e` for the monomial `x = (da, db, dc)`, truncated at weight `cap`.
fn binomial_series(x: Exponent, e: &BigInt, cap: i64) -> Result<SiegelSeries> {
    let w = weight(x);
    let mut s = SiegelSeries::one(cap);
    let kmax: u64 = if w > 0 {
        (cap / w) as u64
    } else if e.sign() == num_bigint::Sign::Minus {
        // an infinite series in a weight-zero direction cannot be truncated
        return Err(Error::CapTooLarge { cap, max: 0 });
    } else {
        e.to_u64().ok_or(Error::CapTooLarge { cap, max: 0 })?
    };
    for k in 1..=kmax {
        let c = binomial_power_coeff(e, k);
        let k = k as i64;
        s.add_term((x.0 * k, x.1 * k, x.2 * k), c);
    }
    Ok(s)
}

/// The Borcherds product
/// `q^(1/6) r^(1/2) s^(1/2) prod (1 - q^n r^l s^(3m))^f(nm, l)`
/// over `n, m >= 0` and `l < 0` when `n = m = 0`, truncated at weight `cap`.
pub fn build_delta1(cap: i64, f: &FTable) -> Result<SiegelSeries> {
    if cap > MAX_CAP {
        return Err(Error::CapTooLarge { cap, max: MAX_CAP });
    }
    let budget = cap - 2;
    if budget < 0 {
        return Ok(SiegelSeries::zero(cap));
    }
    let nm_max = budget / 6;
    let need = (0..=nm_max).map(|n| n * (nm_max - n)).max().unwrap_or(0);
    if need > f.qmax() {
        return Err(Error::FTableTooSmall {
            need,
            have: f.qmax(),
        });
    }
    let mut prod = SiegelSeries::one(budget);
    for n in 0..=nm_max {
        for m in 0..=(nm_max - n) {
            let rows: Vec<(i64, BigInt)> = f.row(n * m).map(|(l, e)| (l, e.clone())).collect();
            for (l, e) in rows {
                if n == 0 && m == 0 && l >= 0 {
                    continue;
                }
                let factor = binomial_series((6 * n, 2 * l, 6 * m), &e, budget)?;
                prod = mul_truncated(&prod, &factor, budget);
            }
        }
    }
    Ok(prod.shift((1, 1, 1)))
}

/// The `f`-table order that [`build_delta1`] needs at this cap.
pub fn required_qmax(cap: i64) -> i64 {
    let nm_max = ((cap - 2).max(0)) / 6;
    (0..=nm_max).map(|n| n * (nm_max - n)).max().unwrap_or(0)
}

/// The leading exponent: least weight, then least `a`, then the largest `b`
/// (each product factor is `1 - x`, so the `r`-power of the prefactor is the
/// top one in its slice).
pub fn cusp_leading_exponents(sr: &SiegelSeries) -> Option<Exponent> {
    sr.coeffs.keys().copied().min_by_key(|&(a, b, c)| (a + c, a, -b))
}

/// Whether the leading exponent has all three components positive.
pub fn is_cuspidal_at_standard_cusp(sr: &SiegelSeries) -> bool {
    matches!(cusp_leading_exponents(sr), Some((a, b, c)) if a > 0 && b > 0 && c > 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jacobi::expand_f_table;

    fn delta(cap: i64) -> SiegelSeries {
        build_delta1(cap, &expand_f_table(required_qmax(cap))).unwrap()
    }

    #[test]
    fn leading_term() {
        let d = delta(24);
        assert_eq!(cusp_leading_exponents(&d), Some((1, 1, 1)));
        assert_eq!(d.get((1, 1, 1)), BigInt::one());
        assert!(is_cuspidal_at_standard_cusp(&d));
        assert!(!is_cuspidal_at_standard_cusp(&SiegelSeries::one(10)));
        assert_eq!(cusp_leading_exponents(&SiegelSeries::one(10)), Some((0, 0, 0)));
    }

    #[test]
    fn weight_two_part_is_theta_like() {
        // the only weight-zero factor is (1 - r^-1)
        let d = delta(12);
        let low: Vec<(Exponent, BigInt)> = d
            .terms()
            .filter(|(k, _)| k.0 == 1 && k.2 == 1)
            .map(|(k, v)| (*k, v.clone()))
            .collect();
        assert_eq!(low, vec![((1, -1, 1), BigInt::from(-1)), ((1, 1, 1), BigInt::one())]);
    }

    #[test]
    fn truncation_stability() {
        let a = delta(18);
        let b = delta(24).truncate(18);
        assert_eq!(a, b);
    }

    #[test]
    fn cube_leading_term() {
        let d = delta(18);
        let d3 = series_power(&d, 3);
        assert_eq!(d3.cap(), 22);
        assert_eq!(cusp_leading_exponents(&d3), Some((3, 3, 3)));
        assert_eq!(d3.get((3, 3, 3)), BigInt::one());
        assert_eq!(series_power(&d, 1), d);
        let chain = series_mul(&series_mul(&d, &d), &d);
        assert_eq!(chain, d3);
    }

    #[test]
    fn fricke_symmetry_of_coefficients() {
        // the Fricke involution swaps q and s up to a sign
        let d = delta(30);
        for (&(a, b, c), v) in d.terms() {
            let w = d.get((c, b, a));
            assert!(w == *v || w == -v, "({a},{b},{c})");
        }
    }

    #[test]
    fn guards() {
        let f = expand_f_table(2);
        assert!(matches!(build_delta1(60, &f), Err(Error::FTableTooSmall { .. })));
        assert!(matches!(build_delta1(1000, &f), Err(Error::CapTooLarge { .. })));
    }

    #[test]
    fn text_round_trip() {
        let d = delta(14);
        let t = d.to_text();
        assert!(t.starts_with("siegel cap=14\n"));
        assert_eq!(SiegelSeries::parse(&t).unwrap(), d);
    }
}
