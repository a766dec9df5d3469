use num_bigint::BigInt;

use super::{int_from_rows, IntMatrix, Prime};

/// The alternating form a matrix is checked against.
///
/// `StandardJ` is `[[0, 1], [-1, 0]]` in 2x2 blocks; `LambdaP` replaces the
/// identity blocks with `diag(1, p)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SymplecticForm {
    StandardJ,
    LambdaP(Prime),
}

impl SymplecticForm {
    pub fn rows(self) -> [[i64; 4]; 4] {
        let e = match self {
            SymplecticForm::StandardJ => 1,
            SymplecticForm::LambdaP(p) => p.as_i64(),
        };
        [[0, 0, 1, 0], [0, 0, 0, e], [-1, 0, 0, 0], [0, -e, 0, 0]]
    }

    pub fn matrix(self) -> IntMatrix {
        int_from_rows(self.rows())
    }

    /// `(N, d)` with `N / d` the inverse of the form matrix.
    pub(crate) fn inverse_parts(self) -> (IntMatrix, BigInt) {
        match self {
            SymplecticForm::StandardJ => (
                int_from_rows([[0, 0, -1, 0], [0, 0, 0, -1], [1, 0, 0, 0], [0, 1, 0, 0]]),
                BigInt::from(1),
            ),
            SymplecticForm::LambdaP(p) => {
                let p = p.as_i64();
                (
                    int_from_rows([[0, 0, -p, 0], [0, 0, 0, -1], [p, 0, 0, 0], [0, 1, 0, 0]]),
                    BigInt::from(p),
                )
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int_identity, int_mul, int_scale};

    #[test]
    fn inverse_parts_invert() {
        for form in [
            SymplecticForm::StandardJ,
            SymplecticForm::LambdaP(Prime::new(3).unwrap()),
            SymplecticForm::LambdaP(Prime::new(7).unwrap()),
        ] {
            let (n, d) = form.inverse_parts();
            assert_eq!(int_mul(&form.matrix(), &n), int_scale(&int_identity(), &d));
        }
    }
}
