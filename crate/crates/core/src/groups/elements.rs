//! Distinguished matrices.

use crate::error::{Error, Result};
use crate::exact::{tilde_to_rational, Prime, RationalMatrix, ScaledMatrix};

/// `V̂_p` for a solution of `x p - y = 1`; the value is `sqrt(p) V_p`.
pub fn make_vhat_with(p: Prime, x: i64, y: i64) -> Result<ScaledMatrix> {
    let q = p.as_i64();
    if x * q - y != 1 {
        return Err(Error::Parse(format!("x p - y = {} (expected 1)", x * q - y)));
    }
    Ok(ScaledMatrix::from_rows(
        p,
        [[q * x, -1, 0, 0], [-y * q, q, 0, 0], [0, 0, q, y * q], [0, 0, 1, q * x]],
    ))
}

/// `V̂_p` with `(x, y) = (1, p - 1)`.
pub fn make_vhat(p: Prime) -> ScaledMatrix {
    make_vhat_with(p, 1, p.as_i64() - 1).expect("(1, p-1) solves x p - y = 1")
}

/// `V_p = V̂_p / sqrt(p)` in the original chart.
pub fn make_v_with(p: Prime, x: i64, y: i64) -> Result<RationalMatrix> {
    let vhat = make_vhat_with(p, x, y)?;
    let scaled = ScaledMatrix::new(p, vhat.entries().clone(), 1)?;
    Ok(RationalMatrix::from(&scaled))
}

pub fn make_v(p: Prime) -> RationalMatrix {
    make_v_with(p, 1, p.as_i64() - 1).expect("(1, p-1) solves x p - y = 1")
}

/// `V̄_p` in the original chart.
pub fn make_vbar(p: Prime) -> RationalMatrix {
    let q = p.as_i64();
    RationalMatrix::from_integers(p, [[0, 1, 0, 0], [q, 0, 0, 0], [0, 0, 0, q], [0, 0, 1, 0]], 1)
        .expect("exponent 1")
}

/// `W̃_p = R_p V̄_p R_p^-1`.
pub fn make_wtilde(p: Prime) -> ScaledMatrix {
    let q = p.as_i64();
    ScaledMatrix::from_scaled_rows(p, [[0, 1, 0, 0], [q, 0, 0, 0], [0, 0, 0, 1], [0, 0, q, 0]])
        .expect("canonical")
}

/// The element `g` of the integral group with `pi(g) = iota` used to build
/// `κ̃_p = W̃_p g`.
pub fn kappa_cofactor(p: Prime) -> ScaledMatrix {
    let q = p.as_i64();
    ScaledMatrix::from_rows(
        p,
        [
            [q - 1, 2 - q, 0, 0],
            [q, 1 - q, 0, 0],
            [0, 0, q - 1, 1],
            [0, 0, q * (2 - q), 1 - q],
        ],
    )
}

/// The cofactor in the original chart; for `p = 3` this is
/// `[[2, -1, 0, 0], [3, -2, 0, 0], [0, 0, 2, 3], [0, 0, -1, -2]]`.
pub fn kappa_cofactor_untilde(p: Prime) -> RationalMatrix {
    tilde_to_rational(&kappa_cofactor(p))
}

/// `κ̃_p = Ṽ_p / sqrt(p)`, generating the kernel of `pi*` over the level-2 group.
pub fn make_kappa(p: Prime) -> ScaledMatrix {
    let q = p.as_i64();
    ScaledMatrix::from_scaled_rows(
        p,
        [
            [q, 1 - q, 0, 0],
            [q * (q - 1), q * (2 - q), 0, 0],
            [0, 0, q * (2 - q), 1 - q],
            [0, 0, q * (q - 1), q],
        ],
    )
    .expect("canonical")
}

/// `R_p = diag(1, 1, 1, p)`.
pub fn make_rp(p: Prime) -> ScaledMatrix {
    ScaledMatrix::from_rows(p, [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, p.as_i64()]])
}

pub fn h1(p: Prime) -> ScaledMatrix {
    ScaledMatrix::from_rows(p, [[1, 0, 0, 1], [0, 1, p.as_i64(), 0], [0, 0, 1, 0], [0, 0, 0, 1]])
}

pub fn h2(p: Prime) -> ScaledMatrix {
    ScaledMatrix::from_rows(p, [[1, 0, 0, 0], [0, 1, 0, 0], [0, 1, 1, 0], [p.as_i64(), 0, 0, 1]])
}

/// Excludes `A = 1` for the image of `W̃_p`.
pub fn exclusion_identity(p: Prime) -> ScaledMatrix {
    ScaledMatrix::from_rows(p, [[1, 1, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, -p.as_i64(), 1]])
}

/// Excludes the two unipotent choices of `A`.
pub fn exclusion_unipotent(p: Prime) -> ScaledMatrix {
    ScaledMatrix::from_rows(p, [[1, 0, 0, 0], [p.as_i64(), 1, 0, 0], [0, 0, 1, -1], [0, 0, 0, 1]])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rational_to_tilde, SymplecticForm};
    use crate::sp4f2::{pi_star, F2Matrix};

    fn p3() -> Prime {
        Prime::new(3).unwrap()
    }

    #[test]
    fn displayed_values_at_three() {
        assert_eq!(
            make_vhat(p3()),
            ScaledMatrix::from_rows(p3(), [[3, -1, 0, 0], [-6, 3, 0, 0], [0, 0, 3, 6], [0, 0, 1, 3]])
        );
        assert_eq!(
            make_kappa(p3()),
            ScaledMatrix::from_scaled_rows(
                p3(),
                [[3, -2, 0, 0], [6, -3, 0, 0], [0, 0, -3, -2], [0, 0, 6, 3]]
            )
            .unwrap()
        );
        assert_eq!(
            kappa_cofactor_untilde(p3()),
            RationalMatrix::from_integers(
                p3(),
                [[2, -1, 0, 0], [3, -2, 0, 0], [0, 0, 2, 3], [0, 0, -1, -2]],
                0
            )
            .unwrap()
        );
    }

    #[test]
    fn kappa_is_fricke_times_cofactor() {
        for p in [3, 5, 7, 11] {
            let p = Prime::new(p).unwrap();
            let k = make_wtilde(p).mul(&kappa_cofactor(p)).unwrap();
            assert_eq!(k, make_kappa(p));
            assert_eq!(kappa_cofactor(p).mod2().unwrap(), F2Matrix::IOTA);
        }
    }

    #[test]
    fn wtilde_is_conjugate_of_vbar() {
        for p in [3, 5, 13] {
            let p = Prime::new(p).unwrap();
            assert_eq!(rational_to_tilde(&make_vbar(p)).unwrap(), make_wtilde(p));
        }
    }

    #[test]
    fn displayed_elements_preserve_lambda() {
        for p in [3, 5, 7] {
            let p = Prime::new(p).unwrap();
            let form = SymplecticForm::LambdaP(p);
            for g in [h1(p), h2(p), exclusion_identity(p), exclusion_unipotent(p), kappa_cofactor(p)] {
                assert!(g.preserves(form), "{g}");
            }
            assert!(make_wtilde(p).preserves(form));
            assert!(make_kappa(p).preserves(form));
            assert!(make_v(p).preserves(SymplecticForm::StandardJ));
            assert!(make_vbar(p).preserves(SymplecticForm::StandardJ));
        }
    }

    #[test]
    fn displayed_g_maps_to_iota() {
        let g = rational_to_tilde(&kappa_cofactor_untilde(p3())).unwrap();
        assert_eq!(pi_star(&g), Ok(F2Matrix::IOTA));
        assert_eq!(g.mod2(), Ok(F2Matrix::IOTA));
    }

    #[test]
    fn bad_vhat_parameters() {
        assert!(make_vhat_with(p3(), 1, 1).is_err());
        assert!(make_vhat_with(p3(), 4, 11).is_ok());
    }
}
