//! Exact 4x4 matrix arithmetic over `Z[1/sqrt(p)]` and `Q`.
//!
//! Group elements of the Fricke-extended paramodular group all have the shape
//! `M` or `M / sqrt(p)` with `M` integral, so [`ScaledMatrix`] stores the
//! integer matrix together with the exponent of `1/sqrt(p)`. Elements of the
//! paramodular group in its original (untilde) chart have a `p^-1 Z` entry
//! and are held as [`RationalMatrix`].

mod form;
mod rational;
mod scaled;

pub use form::SymplecticForm;
pub use rational::{rational_to_tilde, tilde_to_rational, RationalMatrix};
pub use scaled::ScaledMatrix;

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// An odd prime `p >= 3`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Prime(u64);

impl Prime {
    pub fn new(p: u64) -> Result<Self> {
        if p < 3 || p % 2 == 0 {
            return Err(Error::InvalidPrime(p));
        }
        let mut d = 3;
        while d * d <= p {
            if p % d == 0 {
                return Err(Error::InvalidPrime(p));
            }
            d += 2;
        }
        Ok(Prime(p))
    }

    pub fn get(self) -> u64 {
        self.0
    }

    pub fn as_i64(self) -> i64 {
        self.0 as i64
    }

    pub fn big(self) -> BigInt {
        BigInt::from(self.0)
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Row-major 4x4 integer matrix.
pub type IntMatrix = [[BigInt; 4]; 4];

pub(crate) fn int_from_rows(rows: [[i64; 4]; 4]) -> IntMatrix {
    std::array::from_fn(|i| std::array::from_fn(|j| BigInt::from(rows[i][j])))
}

pub(crate) fn int_identity() -> IntMatrix {
    std::array::from_fn(|i| {
        std::array::from_fn(|j| if i == j { BigInt::one() } else { BigInt::zero() })
    })
}

pub(crate) fn int_mul(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    std::array::from_fn(|i| {
        std::array::from_fn(|j| {
            let mut acc = BigInt::zero();
            for k in 0..4 {
                if !a[i][k].is_zero() && !b[k][j].is_zero() {
                    acc += &a[i][k] * &b[k][j];
                }
            }
            acc
        })
    })
}

pub(crate) fn int_transpose(a: &IntMatrix) -> IntMatrix {
    std::array::from_fn(|i| std::array::from_fn(|j| a[j][i].clone()))
}

pub(crate) fn int_scale(a: &IntMatrix, k: &BigInt) -> IntMatrix {
    std::array::from_fn(|i| std::array::from_fn(|j| &a[i][j] * k))
}

/// Divides every entry by `d`, or returns `None` if some entry is not divisible.
pub(crate) fn int_exact_div(a: &IntMatrix, d: &BigInt) -> Option<IntMatrix> {
    if a.iter().flatten().any(|x| !(x % d).is_zero()) {
        return None;
    }
    Some(std::array::from_fn(|i| std::array::from_fn(|j| &a[i][j] / d)))
}

pub(crate) fn all_divisible(a: &IntMatrix, d: &BigInt) -> bool {
    a.iter().flatten().all(|x| (x % d).is_zero())
}

/// Parses `16 integers [/sqrt(p)]`, returning the entries and scale exponent.
pub(crate) fn parse_literal_parts(s: &str, p: Prime) -> Result<(IntMatrix, u8)> {
    let mut tokens: Vec<&str> = s.split_whitespace().collect();
    let mut scale_exp = 0;
    if let Some(last) = tokens.last() {
        if let Some(rest) = last.strip_prefix("/sqrt(").and_then(|r| r.strip_suffix(')')) {
            let q: u64 = rest
                .parse()
                .map_err(|_| Error::Parse(format!("bad scale suffix `{last}`")))?;
            if q != p.get() {
                return Err(Error::PrimeMismatch(q, p.get()));
            }
            scale_exp = 1;
            tokens.pop();
        }
    }
    if tokens.len() != 16 {
        return Err(Error::Parse(format!(
            "expected 16 integers, found {}",
            tokens.len()
        )));
    }
    let mut values = Vec::with_capacity(16);
    for t in tokens {
        let v: BigInt = t
            .parse()
            .map_err(|_| Error::Parse(format!("bad integer `{t}`")))?;
        values.push(v);
    }
    let entries = std::array::from_fn(|i| std::array::from_fn(|j| values[4 * i + j].clone()));
    Ok((entries, scale_exp))
}

pub(crate) fn fmt_literal(
    f: &mut fmt::Formatter<'_>,
    entries: &IntMatrix,
    scale_exp: u8,
    p: Prime,
) -> fmt::Result {
    let mut first = true;
    for x in entries.iter().flatten() {
        if !first {
            f.write_str(" ")?;
        }
        first = false;
        write!(f, "{x}")?;
    }
    if scale_exp == 1 {
        write!(f, " /sqrt({p})")?;
    }
    Ok(())
}
