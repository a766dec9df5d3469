//! Truncated Laurent series in `(q, r)` and the coefficient table `f(n, l)` of
//! the weak Jacobi form
//!
//! ```text
//! sum f(n, l) q^n r^l = r^-1 prod_{n >= 1} ((1 + q^(n-1) r)(1 + q^n r^-1)(1 - q^(2n-1) r^2)(1 - q^(2n-1) r^-2))^2
//! ```

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Sparse series `sum c(n, l) q^n r^l` with `n <= qmax`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BiSeries {
    qmax: i64,
    coeffs: BTreeMap<(i64, i64), BigInt>,
}

impl BiSeries {
    pub fn zero(qmax: i64) -> Self {
        BiSeries {
            qmax,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn one(qmax: i64) -> Self {
        Self::from_terms(qmax, [((0, 0), BigInt::one())])
    }

    /// Terms beyond `qmax` are dropped, zeros are not stored.
    pub fn from_terms(qmax: i64, terms: impl IntoIterator<Item = ((i64, i64), BigInt)>) -> Self {
        let mut s = Self::zero(qmax);
        for (k, c) in terms {
            s.add_term(k, c);
        }
        s
    }

    pub fn add_term(&mut self, (n, l): (i64, i64), c: BigInt) {
        if n > self.qmax || c.is_zero() {
            return;
        }
        let slot = self.coeffs.entry((n, l)).or_default();
        *slot += c;
        if slot.is_zero() {
            self.coeffs.remove(&(n, l));
        }
    }

    pub fn qmax(&self) -> i64 {
        self.qmax
    }

    pub fn get(&self, n: i64, l: i64) -> BigInt {
        self.coeffs.get(&(n, l)).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(i64, i64), &BigInt)> {
        self.coeffs.iter()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Largest `|l|` among stored terms.
    pub fn l_extent(&self) -> i64 {
        self.coeffs.keys().map(|&(_, l)| l.abs()).max().unwrap_or(0)
    }

    /// Multiplies every exponent pair by `r^shift`.
    pub fn shift_r(&self, shift: i64) -> BiSeries {
        BiSeries {
            qmax: self.qmax,
            coeffs: self.coeffs.iter().map(|(&(n, l), c)| ((n, l + shift), c.clone())).collect(),
        }
    }
}

/// Truncated product at `min(a.qmax, b.qmax)`. Fails if a product exponent
/// leaves `|l| <= lcap`.
pub fn bi_mul(a: &BiSeries, b: &BiSeries, lcap: i64) -> Result<BiSeries> {
    let qmax = a.qmax.min(b.qmax);
    let mut out = BiSeries::zero(qmax);
    for (&(n1, l1), x) in &a.coeffs {
        if n1 > qmax {
            continue;
        }
        for (&(n2, l2), y) in &b.coeffs {
            let n = n1 + n2;
            if n > qmax {
                break;
            }
            let l = l1 + l2;
            if l.abs() > lcap {
                return Err(Error::WindowOverflow { exponent: l, cap: lcap });
            }
            out.add_term((n, l), x * y);
        }
    }
    Ok(out)
}

/// Default hard cap on the `r` window for a given truncation order.
pub fn default_window(qmax: i64) -> i64 {
    2 * qmax + 4
}

/// The coefficients `f(n, l)` for `0 <= n <= qmax`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FTable {
    qmax: i64,
    entries: BTreeMap<(i64, i64), BigInt>,
}

impl FTable {
    pub fn qmax(&self) -> i64 {
        self.qmax
    }

    pub fn get(&self, n: i64, l: i64) -> BigInt {
        self.entries.get(&(n, l)).cloned().unwrap_or_default()
    }

    /// Nonzero entries in lexicographic order.
    pub fn entries(&self) -> impl Iterator<Item = (&(i64, i64), &BigInt)> {
        self.entries.iter()
    }

    /// Nonzero `(l, f(n, l))` for one `n`.
    pub fn row(&self, n: i64) -> impl Iterator<Item = (i64, &BigInt)> {
        self.entries.range((n, i64::MIN)..=(n, i64::MAX)).map(|(&(_, l), f)| (l, f))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Whether every nonzero entry satisfies `l^2 <= a n + b`.
    pub fn satisfies_bound(&self, a: i64, b: i64) -> bool {
        self.entries.keys().all(|&(n, l)| l * l <= a * n + b)
    }

    /// Entries breaking `l^2 <= a n + b`.
    pub fn bound_violations(&self, a: i64, b: i64) -> Vec<(i64, i64)> {
        self.entries.keys().copied().filter(|&(n, l)| l * l > a * n + b).collect()
    }

    /// Largest `|l|` with `f(n, l) != 0`, per `n`.
    pub fn support_extent(&self) -> Vec<(i64, i64)> {
        (0..=self.qmax)
            .map(|n| (n, self.row(n).map(|(l, _)| l.abs()).max().unwrap_or(0)))
            .collect()
    }

    pub fn is_symmetric(&self) -> bool {
        self.entries.iter().all(|(&(n, l), f)| self.get(n, -l) == *f)
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("ftable qmax={}\n", self.qmax);
        for (&(n, l), f) in &self.entries {
            writeln!(s, "{n} {l} {f}").expect("string write");
        }
        s
    }

    pub fn parse(text: &str) -> Result<FTable> {
        let mut lines = text.lines();
        let header = lines.next().ok_or_else(|| Error::Parse("empty f-table".into()))?;
        let qmax: i64 = header
            .strip_prefix("ftable qmax=")
            .and_then(|v| v.trim().parse().ok())
            .ok_or_else(|| Error::Parse(format!("bad header `{header}`")))?;
        let mut entries = BTreeMap::new();
        for line in lines.filter(|l| !l.trim().is_empty()) {
            let parts: Vec<&str> = line.split_whitespace().collect();
            if parts.len() != 3 {
                return Err(Error::Parse(format!("bad line `{line}`")));
            }
            let bad = || Error::Parse(format!("bad line `{line}`"));
            let n: i64 = parts[0].parse().map_err(|_| bad())?;
            let l: i64 = parts[1].parse().map_err(|_| bad())?;
            let f: BigInt = parts[2].parse().map_err(|_| bad())?;
            if n < 0 || n > qmax {
                return Err(bad());
            }
            if !f.is_zero() {
                entries.insert((n, l), f);
            }
        }
        Ok(FTable { qmax, entries })
    }
}

fn binomial_factor(qmax: i64, n: i64, l: i64, sign: i64) -> BiSeries {
    BiSeries::from_terms(qmax, [((0, 0), BigInt::one()), ((n, l), BigInt::from(sign))])
}

/// `f(n, l)` for `n <= qmax`, with the `r` window capped at `lcap`.
pub fn expand_f_table_with_window(qmax: i64, lcap: i64) -> Result<FTable> {
    let qmax = qmax.max(0);
    let mut prod = BiSeries::one(qmax);
    for n in 1..=qmax + 1 {
        for (dn, dl, sign) in [(n - 1, 1, 1), (n, -1, 1), (2 * n - 1, 2, -1), (2 * n - 1, -2, -1)] {
            if dn <= qmax {
                prod = bi_mul(&prod, &binomial_factor(qmax, dn, dl, sign), lcap)?;
            }
        }
    }
    let sq = bi_mul(&prod, &prod, lcap)?.shift_r(-1);
    if sq.l_extent() > lcap {
        return Err(Error::WindowOverflow {
            exponent: sq.l_extent(),
            cap: lcap,
        });
    }
    Ok(FTable {
        qmax,
        entries: sq.coeffs,
    })
}

pub fn expand_f_table(qmax: i64) -> FTable {
    expand_f_table_with_window(qmax, default_window(qmax))
        .expect("the true support lies well inside the default window")
}

/// Second implementation of [`expand_f_table`] on dense arrays, multiplying
/// the factors in the opposite order. Used as a cross-check.
pub fn expand_f_table_dense(qmax: i64) -> FTable {
    let q = qmax.max(0) as usize;
    let off = 2 * q + 8;
    let width = 2 * off + 1;
    let zero = || vec![vec![BigInt::zero(); width]; q + 1];
    let mut prod = zero();
    prod[0][off] = BigInt::one();
    let mut factors = Vec::new();
    for n in 1..=q as i64 + 1 {
        factors.extend([(n - 1, 1, 1), (n, -1, 1), (2 * n - 1, 2, -1), (2 * n - 1, -2, -1)]);
    }
    for &(dn, dl, sign) in factors.iter().rev() {
        if dn as usize > q {
            continue;
        }
        let (dn, dl) = (dn as usize, dl as isize);
        let mut next = prod.clone();
        for n in 0..=q - dn {
            for (j, x) in prod[n].iter().enumerate() {
                if !x.is_zero() {
                    let k = (j as isize + dl) as usize;
                    next[n + dn][k] += x * sign;
                }
            }
        }
        prod = next;
    }
    let mut entries = BTreeMap::new();
    for n1 in 0..=q {
        for (j1, x) in prod[n1].iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for n2 in 0..=q - n1 {
                for (j2, y) in prod[n2].iter().enumerate().filter(|(_, y)| !y.is_zero()) {
                    let l = j1 as i64 + j2 as i64 - 2 * off as i64 - 1;
                    *entries.entry(((n1 + n2) as i64, l)).or_insert_with(BigInt::zero) += x * y;
                }
            }
        }
    }
    entries.retain(|_, v: &mut BigInt| !v.is_zero());
    FTable {
        qmax: q as i64,
        entries,
    }
}

/// Coefficient of `x^k` in `(1 - x)^e`, for any integer `e`.
pub fn binomial_power_coeff(e: &BigInt, k: u64) -> BigInt {
    let mut c = BigInt::one();
    for i in 1..=k {
        c = -(c * (e - BigInt::from(i - 1))) / BigInt::from(i);
    }
    c
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(qmax: i64, terms: &[((i64, i64), i64)]) -> BiSeries {
        BiSeries::from_terms(qmax, terms.iter().map(|&(k, c)| (k, BigInt::from(c))))
    }

    #[test]
    fn binomial_product() {
        let a = s(5, &[((0, 0), 1), ((1, 1), 1)]);
        let b = s(5, &[((0, 0), 1), ((1, -1), 1)]);
        let want = s(5, &[((0, 0), 1), ((1, 1), 1), ((1, -1), 1), ((2, 0), 1)]);
        assert_eq!(bi_mul(&a, &b, 20).unwrap(), want);
        assert_eq!(bi_mul(&a, &BiSeries::one(5), 20).unwrap(), a);
    }

    #[test]
    fn truncation_and_window() {
        let a = s(2, &[((2, 3), 1)]);
        assert!(bi_mul(&a, &a, 20).unwrap().is_empty());
        let b = s(4, &[((1, 3), 1)]);
        assert_eq!(
            bi_mul(&b, &b, 5),
            Err(Error::WindowOverflow { exponent: 6, cap: 5 })
        );
    }

    #[test]
    fn leading_row() {
        let f = expand_f_table(4);
        assert_eq!(f.get(0, -1), BigInt::from(1));
        assert_eq!(f.get(0, 0), BigInt::from(2));
        assert_eq!(f.get(0, 1), BigInt::from(1));
        assert!(f.row(0).all(|(l, _)| l.abs() <= 1));
        assert_eq!(f.get(1, 0), BigInt::from(4));
        assert_eq!(f.get(1, 3), BigInt::from(-2));
        assert_eq!(f.get(2, 5), BigInt::from(1));
        assert_eq!(f.get(2, 0), BigInt::from(12));
    }

    #[test]
    fn symmetric_and_bounded() {
        let f = expand_f_table(12);
        assert!(f.is_symmetric());
        assert!(f.satisfies_bound(12, 9));
        assert!(!f.satisfies_bound(4, 1));
    }

    #[test]
    fn window_sufficiency() {
        let q = 10;
        let a = expand_f_table_with_window(q, default_window(q)).unwrap();
        let b = expand_f_table_with_window(q, default_window(q) + 4).unwrap();
        assert_eq!(a, b);
        assert!(expand_f_table_with_window(q, 3).is_err());
    }

    #[test]
    fn dense_oracle_agrees() {
        for q in [0, 1, 6, 10] {
            assert_eq!(expand_f_table_dense(q), expand_f_table(q));
        }
    }

    #[test]
    fn text_round_trip() {
        let f = expand_f_table(5);
        let t = f.to_text();
        assert!(t.starts_with("ftable qmax=5\n0 -1 1\n"));
        assert_eq!(FTable::parse(&t).unwrap(), f);
        assert!(FTable::parse("nonsense").is_err());
    }

    #[test]
    fn generalized_binomial() {
        let c = |e: i64, k| binomial_power_coeff(&BigInt::from(e), k);
        assert_eq!(c(2, 1), BigInt::from(-2));
        assert_eq!(c(2, 2), BigInt::from(1));
        assert_eq!(c(2, 3), BigInt::from(0));
        // (1 - x)^-2 = 1 + 2x + 3x^2 + ...
        assert_eq!(c(-2, 1), BigInt::from(2));
        assert_eq!(c(-2, 4), BigInt::from(5));
        assert_eq!(c(-1, 7), BigInt::from(1));
    }
}
