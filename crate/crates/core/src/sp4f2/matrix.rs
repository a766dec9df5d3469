use std::fmt;

/// A 4x4 matrix over F2, bit `4 i + j` holding entry `(i, j)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct F2Matrix(u16);

/// Reduction mod 2 of the standard form; `Lambda_p` reduces to the same
/// matrix for odd `p`.
const FORM: F2Matrix = F2Matrix::from_row_bits([0b0100, 0b1000, 0b0001, 0b0010]);

impl F2Matrix {
    pub const IDENTITY: F2Matrix = F2Matrix::from_row_bits([0b0001, 0b0010, 0b0100, 0b1000]);

    /// Block double swap `diag(S, S)` with `S = [[0, 1], [1, 0]]`.
    pub const IOTA: F2Matrix = F2Matrix::from_row_bits([0b0010, 0b0001, 0b1000, 0b0100]);

    pub const FORM: F2Matrix = FORM;

    /// Row `i` is given as a nibble whose bit `j` is entry `(i, j)`.
    pub const fn from_row_bits(rows: [u16; 4]) -> F2Matrix {
        F2Matrix(
            (rows[0] & 0xF) | ((rows[1] & 0xF) << 4) | ((rows[2] & 0xF) << 8) | ((rows[3] & 0xF) << 12),
        )
    }

    pub fn from_rows(rows: [[u8; 4]; 4]) -> F2Matrix {
        F2Matrix::from_fn(|i, j| rows[i][j] % 2 == 1)
    }

    pub fn from_fn(f: impl Fn(usize, usize) -> bool) -> F2Matrix {
        let mut bits = 0u16;
        for i in 0..4 {
            for j in 0..4 {
                if f(i, j) {
                    bits |= 1 << (4 * i + j);
                }
            }
        }
        F2Matrix(bits)
    }

    pub const fn from_bits(bits: u16) -> F2Matrix {
        F2Matrix(bits)
    }

    pub const fn bits(self) -> u16 {
        self.0
    }

    #[inline]
    pub fn row(self, i: usize) -> u16 {
        (self.0 >> (4 * i)) & 0xF
    }

    #[inline]
    pub fn get(self, i: usize, j: usize) -> bool {
        (self.0 >> (4 * i + j)) & 1 == 1
    }

    #[inline]
    pub fn mul(self, other: F2Matrix) -> F2Matrix {
        let mut out = 0u16;
        for i in 0..4 {
            let r = self.row(i);
            let mut acc = 0u16;
            for k in 0..4 {
                if (r >> k) & 1 == 1 {
                    acc ^= other.row(k);
                }
            }
            out |= acc << (4 * i);
        }
        F2Matrix(out)
    }

    pub fn transpose(self) -> F2Matrix {
        F2Matrix::from_fn(|i, j| self.get(j, i))
    }

    pub fn is_symplectic(self) -> bool {
        self.mul(FORM).mul(self.transpose()) == FORM
    }

    /// Inverse of a symplectic matrix, `J m^T J`.
    pub fn symplectic_inverse(self) -> F2Matrix {
        FORM.mul(self.transpose()).mul(FORM)
    }

    pub fn pow(self, k: u32) -> F2Matrix {
        (0..k).fold(F2Matrix::IDENTITY, |acc, _| acc.mul(self))
    }

    /// 2x2 blocks `(A, B, C, D)`, each as `[[a11, a12], [a21, a22]]`.
    pub fn blocks(self) -> [[[bool; 2]; 2]; 4] {
        let block = |r: usize, c: usize| {
            [
                [self.get(r, c), self.get(r, c + 1)],
                [self.get(r + 1, c), self.get(r + 1, c + 1)],
            ]
        };
        [block(0, 0), block(0, 2), block(2, 0), block(2, 2)]
    }

    pub fn block_diagonal(a: [[bool; 2]; 2], d: [[bool; 2]; 2]) -> F2Matrix {
        F2Matrix::from_fn(|i, j| match (i < 2, j < 2) {
            (true, true) => a[i][j],
            (false, false) => d[i - 2][j - 2],
            _ => false,
        })
    }
}

impl fmt::Debug for F2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F2Matrix[")?;
        for i in 0..4 {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..4 {
                write!(f, "{}", self.get(i, j) as u8)?;
            }
        }
        write!(f, "]")
    }
}

impl fmt::Display for F2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..4 {
            if i > 0 {
                f.write_str(" / ")?;
            }
            for j in 0..4 {
                write!(f, "{}", self.get(i, j) as u8)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constants_are_symplectic() {
        assert!(F2Matrix::IDENTITY.is_symplectic());
        assert!(F2Matrix::IOTA.is_symplectic());
        assert_eq!(F2Matrix::IOTA.mul(F2Matrix::IOTA), F2Matrix::IDENTITY);
    }

    #[test]
    fn from_rows_matches_bits() {
        let iota = F2Matrix::from_rows([[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]]);
        assert_eq!(iota, F2Matrix::IOTA);
        assert!(iota.get(0, 1));
        assert!(!iota.get(0, 0));
    }

    #[test]
    fn multiplication_agrees_with_definition() {
        let a = F2Matrix::from_bits(0b1011_0110_1100_0011);
        let b = F2Matrix::from_bits(0b0110_1001_0101_1110);
        let c = a.mul(b);
        for i in 0..4 {
            for j in 0..4 {
                let v = (0..4).fold(false, |acc, k| acc ^ (a.get(i, k) & b.get(k, j)));
                assert_eq!(c.get(i, j), v);
            }
        }
    }
}
