use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::{
    all_divisible, fmt_literal, int_exact_div, int_from_rows, int_identity, int_mul, int_scale,
    int_transpose, parse_literal_parts, IntMatrix, Prime, SymplecticForm,
};
use crate::error::{Error, Result};
use crate::sp4f2::F2Matrix;

/// A 4x4 matrix with value `entries / sqrt(p)^scale_exp`, `scale_exp` in `{0, 1}`.
///
/// Canonical form: when `scale_exp = 1` not every entry is divisible by `p`,
/// so two values are equal iff their representations are equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ScaledMatrix {
    p: Prime,
    scale_exp: u8,
    entries: IntMatrix,
}

impl ScaledMatrix {
    pub fn integral(p: Prime, entries: IntMatrix) -> Self {
        ScaledMatrix {
            p,
            scale_exp: 0,
            entries,
        }
    }

    pub fn from_rows(p: Prime, rows: [[i64; 4]; 4]) -> Self {
        Self::integral(p, int_from_rows(rows))
    }

    /// `entries / sqrt(p)^scale_exp`. Rejects exponents outside `{0, 1}` and
    /// `sqrt(p)`-multiples of integer matrices, which have no canonical form.
    pub fn new(p: Prime, entries: IntMatrix, scale_exp: u8) -> Result<Self> {
        match scale_exp {
            0 => Ok(Self::integral(p, entries)),
            1 if all_divisible(&entries, &p.big()) => Err(Error::ScaleOverflow),
            1 => Ok(ScaledMatrix {
                p,
                scale_exp,
                entries,
            }),
            _ => Err(Error::ScaleOverflow),
        }
    }

    pub fn from_scaled_rows(p: Prime, rows: [[i64; 4]; 4]) -> Result<Self> {
        Self::new(p, int_from_rows(rows), 1)
    }

    pub fn identity(p: Prime) -> Self {
        Self::integral(p, int_identity())
    }

    pub fn p(&self) -> Prime {
        self.p
    }

    pub fn scale_exp(&self) -> u8 {
        self.scale_exp
    }

    pub fn entries(&self) -> &IntMatrix {
        &self.entries
    }

    pub fn entry(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i][j]
    }

    pub fn is_identity(&self) -> bool {
        self.scale_exp == 0 && self.entries == int_identity()
    }

    pub fn is_integral(&self) -> bool {
        self.scale_exp == 0
    }

    /// Exact product. Two `1/sqrt(p)` factors combine to `1/p`, which must
    /// divide the integer product.
    pub fn mul(&self, other: &ScaledMatrix) -> Result<ScaledMatrix> {
        if self.p != other.p {
            return Err(Error::PrimeMismatch(self.p.get(), other.p.get()));
        }
        let product = int_mul(&self.entries, &other.entries);
        match self.scale_exp + other.scale_exp {
            2 => {
                let reduced = int_exact_div(&product, &self.p.big()).ok_or(Error::ScaleOverflow)?;
                Ok(Self::integral(self.p, reduced))
            }
            e => Self::new(self.p, product, e),
        }
    }

    pub fn pow(&self, k: u32) -> Result<ScaledMatrix> {
        let mut acc = Self::identity(self.p);
        for _ in 0..k {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// `g Phi g^T == Phi` for the value of `g`; for `scale_exp = 1` this reads
    /// `M Phi M^T == p Phi` on the integer part.
    pub fn preserves(&self, form: SymplecticForm) -> bool {
        let phi = form.matrix();
        let lhs = int_mul(&int_mul(&self.entries, &phi), &int_transpose(&self.entries));
        let rhs = if self.scale_exp == 1 {
            int_scale(&phi, &self.p.big())
        } else {
            phi
        };
        lhs == rhs
    }

    /// Inverse via `Phi g^T Phi^-1`, valid whenever `g Phi g^T = Phi`.
    pub fn symplectic_inverse(&self, form: SymplecticForm) -> Result<ScaledMatrix> {
        if !self.preserves(form) {
            return Err(Error::NotSymplectic);
        }
        let (inv_num, inv_den) = form.inverse_parts();
        let num = int_mul(&int_mul(&form.matrix(), &int_transpose(&self.entries)), &inv_num);
        let entries = int_exact_div(&num, &inv_den).ok_or(Error::NonIntegral)?;
        Self::new(self.p, entries, self.scale_exp)
    }

    /// Entrywise reduction modulo 2.
    pub fn mod2(&self) -> Result<F2Matrix> {
        if self.scale_exp != 0 {
            return Err(Error::NonIntegral);
        }
        let two = BigInt::from(2);
        Ok(F2Matrix::from_fn(|i, j| {
            !self.entries[i][j].mod_floor(&two).is_zero()
        }))
    }

    pub fn is_identity_mod2(&self) -> bool {
        self.mod2().map(|m| m == F2Matrix::IDENTITY).unwrap_or(false)
    }

    pub fn neg(&self) -> ScaledMatrix {
        ScaledMatrix {
            p: self.p,
            scale_exp: self.scale_exp,
            entries: int_scale(&self.entries, &-BigInt::one()),
        }
    }

    /// Largest entry size in bits, a cheap growth measure for sampled words.
    pub fn max_bits(&self) -> u64 {
        self.entries.iter().flatten().map(|x| x.bits()).max().unwrap_or(0)
    }

    /// Floating-point value, including the `1/sqrt(p)` factor.
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

    /// Parses the literal format `a11 a12 ... a44 [/sqrt(p)]`.
    pub fn parse_literal(s: &str, p: Prime) -> Result<ScaledMatrix> {
        let (entries, scale_exp) = parse_literal_parts(s, p)?;
        Self::new(p, entries, scale_exp)
    }
}

impl fmt::Display for ScaledMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_literal(f, &self.entries, self.scale_exp, self.p)
    }
}
