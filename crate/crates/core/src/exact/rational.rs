use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use super::{IntMatrix, Prime, ScaledMatrix, SymplecticForm};
use crate::error::{Error, Result};

/// A 4x4 rational matrix with value `entries / sqrt(p)^scale_exp`.
///
/// Holds elements of the paramodular group in its original chart, where the
/// `(4, 2)` entry lives in `p^-1 Z`, and the Fricke elements `V_p`, `V̄_p`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalMatrix {
    p: Prime,
    scale_exp: u8,
    entries: [[BigRational; 4]; 4],
}

fn q(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

impl RationalMatrix {
    pub fn new(p: Prime, entries: [[BigRational; 4]; 4], scale_exp: u8) -> Result<Self> {
        if scale_exp > 1 {
            return Err(Error::ScaleOverflow);
        }
        Ok(RationalMatrix {
            p,
            scale_exp,
            entries,
        })
    }

    pub fn from_integers(p: Prime, rows: [[i64; 4]; 4], scale_exp: u8) -> Result<Self> {
        Self::new(
            p,
            std::array::from_fn(|i| std::array::from_fn(|j| q(rows[i][j]))),
            scale_exp,
        )
    }

    /// Entries given as `(numerator, denominator)` pairs.
    pub fn from_fractions(p: Prime, rows: [[(i64, i64); 4]; 4]) -> Result<Self> {
        if rows.iter().flatten().any(|&(_, d)| d == 0) {
            return Err(Error::Parse("zero denominator".into()));
        }
        Self::new(
            p,
            std::array::from_fn(|i| {
                std::array::from_fn(|j| {
                    let (n, d) = rows[i][j];
                    BigRational::new(BigInt::from(n), BigInt::from(d))
                })
            }),
            0,
        )
    }

    pub fn identity(p: Prime) -> Self {
        RationalMatrix {
            p,
            scale_exp: 0,
            entries: std::array::from_fn(|i| {
                std::array::from_fn(|j| if i == j { BigRational::one() } else { BigRational::zero() })
            }),
        }
    }

    pub fn p(&self) -> Prime {
        self.p
    }

    pub fn scale_exp(&self) -> u8 {
        self.scale_exp
    }

    pub fn entries(&self) -> &[[BigRational; 4]; 4] {
        &self.entries
    }

    pub fn entry(&self, i: usize, j: usize) -> &BigRational {
        &self.entries[i][j]
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.p)
    }

    pub fn mul(&self, other: &RationalMatrix) -> Result<RationalMatrix> {
        if self.p != other.p {
            return Err(Error::PrimeMismatch(self.p.get(), other.p.get()));
        }
        let mut entries: [[BigRational; 4]; 4] =
            std::array::from_fn(|i| std::array::from_fn(|j| {
                let mut acc = BigRational::zero();
                for k in 0..4 {
                    acc += &self.entries[i][k] * &other.entries[k][j];
                }
                acc
            }));
        let mut scale_exp = self.scale_exp + other.scale_exp;
        if scale_exp == 2 {
            let p = q(self.p.as_i64());
            for x in entries.iter_mut().flatten() {
                *x = &*x / &p;
            }
            scale_exp = 0;
        }
        Ok(RationalMatrix {
            p: self.p,
            scale_exp,
            entries,
        })
    }

    pub fn transpose(&self) -> RationalMatrix {
        RationalMatrix {
            p: self.p,
            scale_exp: self.scale_exp,
            entries: std::array::from_fn(|i| std::array::from_fn(|j| self.entries[j][i].clone())),
        }
    }

    fn form(&self, form: SymplecticForm) -> RationalMatrix {
        Self::from_integers(self.p, form.rows(), 0).expect("exponent 0")
    }

    /// `g Phi g^T == Phi` on values.
    pub fn preserves(&self, form: SymplecticForm) -> bool {
        let phi = self.form(form);
        let lhs = self
            .mul(&phi)
            .and_then(|m| m.mul(&self.transpose()))
            .expect("same prime");
        lhs == phi
    }

    pub fn symplectic_inverse(&self, form: SymplecticForm) -> Result<RationalMatrix> {
        if !self.preserves(form) {
            return Err(Error::NotSymplectic);
        }
        let (num, den) = form.inverse_parts();
        let den = BigRational::from_integer(den);
        let phi_inv = RationalMatrix {
            p: self.p,
            scale_exp: 0,
            entries: std::array::from_fn(|i| {
                std::array::from_fn(|j| BigRational::from_integer(num[i][j].clone()) / &den)
            }),
        };
        self.form(form).mul(&self.transpose())?.mul(&phi_inv)
    }

    pub fn is_integral(&self) -> bool {
        self.entries.iter().flatten().all(|x| x.is_integer())
    }

    pub fn to_f64(&self) -> [[f64; 4]; 4] {
        let s = if self.scale_exp == 1 {
            (self.p.get() as f64).sqrt().recip()
        } else {
            1.0
        };
        std::array::from_fn(|i| {
            std::array::from_fn(|j| self.entries[i][j].to_f64().unwrap_or(f64::NAN) * s)
        })
    }

    /// Conjugation `D g D^-1` by a diagonal matrix with rational entries.
    pub fn conjugate_diagonal(&self, diag: [BigRational; 4]) -> RationalMatrix {
        RationalMatrix {
            p: self.p,
            scale_exp: self.scale_exp,
            entries: std::array::from_fn(|i| {
                std::array::from_fn(|j| &self.entries[i][j] * &diag[i] / &diag[j])
            }),
        }
    }

    /// The integer matrix underlying an integral value.
    pub fn to_integer_entries(&self) -> Option<IntMatrix> {
        if !self.is_integral() {
            return None;
        }
        Some(std::array::from_fn(|i| {
            std::array::from_fn(|j| self.entries[i][j].to_integer())
        }))
    }
}

impl From<&ScaledMatrix> for RationalMatrix {
    fn from(g: &ScaledMatrix) -> Self {
        RationalMatrix {
            p: g.p(),
            scale_exp: g.scale_exp(),
            entries: std::array::from_fn(|i| {
                std::array::from_fn(|j| BigRational::from_integer(g.entry(i, j).clone()))
            }),
        }
    }
}

impl fmt::Display for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for x in self.entries.iter().flatten() {
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            write!(f, "{x}")?;
        }
        if self.scale_exp == 1 {
            write!(f, " /sqrt({})", self.p)?;
        }
        Ok(())
    }
}

fn rp_diagonal(p: Prime) -> [BigRational; 4] {
    [q(1), q(1), q(1), q(p.as_i64())]
}

/// Conjugates an untilde-chart matrix by `R_p = diag(1, 1, 1, p)` into the
/// integral tilde chart.
pub fn rational_to_tilde(g: &RationalMatrix) -> Result<ScaledMatrix> {
    let conj = g.conjugate_diagonal(rp_diagonal(g.p()));
    let entries = conj.to_integer_entries().ok_or(Error::NotConjugatable)?;
    ScaledMatrix::new(g.p(), entries, g.scale_exp()).map_err(|_| Error::NotConjugatable)
}

/// Inverse of [`rational_to_tilde`]: `R_p^-1 g R_p`.
pub fn tilde_to_rational(g: &ScaledMatrix) -> RationalMatrix {
    let p = g.p();
    let inv = [q(1), q(1), q(1), BigRational::new(BigInt::one(), p.big())];
    RationalMatrix::from(g).conjugate_diagonal(inv)
}
