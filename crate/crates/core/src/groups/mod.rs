//! The paramodular group of level `p`, its level-2 subgroup, and their
//! Fricke extensions, in both the original chart and the integral chart
//! obtained by conjugating with `R_p = diag(1, 1, 1, p)`.

mod elements;
mod h2;
mod sampler;

pub use elements::*;
pub use h2::{
    dual_period_identity_residual, mobius_act, mobius_act_f64, mobius_with_det, random_points, SiegelPoint,
};
pub use sampler::{default_generators, Sampler, SamplerConfig};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{rational_to_tilde, tilde_to_rational, Prime, RationalMatrix, ScaledMatrix, SymplecticForm};
use crate::sp4f2::{pi_star, F2Matrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GroupKind {
    /// The paramodular group.
    GammaCircle,
    /// Its principal congruence subgroup of level 2.
    GammaCircleLevel2,
    /// The Fricke extension, index 2 over `GammaCircle`.
    GammaStar,
    /// The kernel of the extended reduction map on `GammaStar`.
    GammaStarLevel2,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Chart {
    /// Integral chart, preserving `Lambda_p`.
    Tilde,
    /// Original chart, preserving the standard form.
    Untilde,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GroupId {
    pub kind: GroupKind,
    pub chart: Chart,
    pub p: Prime,
}

impl GroupId {
    pub fn new(kind: GroupKind, chart: Chart, p: Prime) -> Self {
        GroupId { kind, chart, p }
    }

    pub fn tilde(kind: GroupKind, p: Prime) -> Self {
        Self::new(kind, Chart::Tilde, p)
    }

    pub fn untilde(kind: GroupKind, p: Prime) -> Self {
        Self::new(kind, Chart::Untilde, p)
    }
}

/// A group element in one of the two charts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Element {
    Tilde(ScaledMatrix),
    Untilde(RationalMatrix),
}

impl Element {
    pub fn chart(&self) -> Chart {
        match self {
            Element::Tilde(_) => Chart::Tilde,
            Element::Untilde(_) => Chart::Untilde,
        }
    }

    pub fn p(&self) -> Prime {
        match self {
            Element::Tilde(g) => g.p(),
            Element::Untilde(g) => g.p(),
        }
    }

    /// The same element in the untilde chart.
    pub fn to_untilde(&self) -> RationalMatrix {
        match self {
            Element::Tilde(g) => tilde_to_rational(g),
            Element::Untilde(g) => g.clone(),
        }
    }

    pub fn to_tilde(&self) -> Result<ScaledMatrix> {
        match self {
            Element::Tilde(g) => Ok(g.clone()),
            Element::Untilde(g) => rational_to_tilde(g),
        }
    }

    pub fn mul(&self, other: &Element) -> Result<Element> {
        match (self, other) {
            (Element::Tilde(a), Element::Tilde(b)) => Ok(Element::Tilde(a.mul(b)?)),
            (Element::Untilde(a), Element::Untilde(b)) => Ok(Element::Untilde(a.mul(b)?)),
            _ => Err(Error::ChartMismatch),
        }
    }

    pub fn inverse(&self) -> Result<Element> {
        match self {
            Element::Tilde(g) => Ok(Element::Tilde(
                g.symplectic_inverse(SymplecticForm::LambdaP(g.p()))?,
            )),
            Element::Untilde(g) => Ok(Element::Untilde(
                g.symplectic_inverse(SymplecticForm::StandardJ)?,
            )),
        }
    }
}

impl From<ScaledMatrix> for Element {
    fn from(g: ScaledMatrix) -> Self {
        Element::Tilde(g)
    }
}

impl From<RationalMatrix> for Element {
    fn from(g: RationalMatrix) -> Self {
        Element::Untilde(g)
    }
}

fn in_tilde_gamma_circle(g: &ScaledMatrix) -> bool {
    g.is_integral() && g.preserves(SymplecticForm::LambdaP(g.p()))
}

fn in_tilde_gamma_star(g: &ScaledMatrix) -> bool {
    if in_tilde_gamma_circle(g) {
        return true;
    }
    let w = make_wtilde(g.p());
    w.mul(g).map(|wg| in_tilde_gamma_circle(&wg)).unwrap_or(false)
}

/// Entry pattern of the paramodular group in the original chart: row-major
/// multipliers, where `1` means `Z`, `p` means `pZ` and `0` marks the
/// `p^-1 Z` entry.
const PATTERN: [[u8; 4]; 4] = [[1, 1, 1, 2], [2, 1, 2, 2], [1, 1, 1, 2], [1, 0, 1, 1]];

/// Checks `g` (for `scale = 1`) or `g - 1` (for `scale = 2`) against the
/// pattern scaled by `scale`.
fn fits_pattern(g: &RationalMatrix, scale: i64) -> bool {
    let p = g.p().big();
    let scale = BigInt::from(scale);
    (0..4).all(|i| {
        (0..4).all(|j| {
            let mut x = g.entry(i, j).clone();
            if i == j && !scale.is_one() {
                x -= BigRational::one();
            }
            let unit = match PATTERN[i][j] {
                1 => BigRational::from_integer(scale.clone()),
                2 => BigRational::from_integer(&scale * &p),
                _ => BigRational::new(scale.clone(), p.clone()),
            };
            (x / unit).is_integer()
        })
    })
}

fn in_untilde_gamma_circle(g: &RationalMatrix) -> bool {
    g.scale_exp() == 0 && fits_pattern(g, 1) && g.preserves(SymplecticForm::StandardJ)
}

/// Group membership. The element's chart and prime must match the group's.
pub fn is_member(g: &Element, group: GroupId) -> Result<bool> {
    if g.chart() != group.chart || g.p() != group.p {
        return Err(Error::ChartMismatch);
    }
    Ok(match (g, group.kind) {
        (Element::Tilde(g), GroupKind::GammaCircle) => in_tilde_gamma_circle(g),
        (Element::Tilde(g), GroupKind::GammaCircleLevel2) => {
            in_tilde_gamma_circle(g) && g.is_identity_mod2()
        }
        (Element::Tilde(g), GroupKind::GammaStar) => in_tilde_gamma_star(g),
        (Element::Tilde(g), GroupKind::GammaStarLevel2) => {
            in_tilde_gamma_star(g) && pi_star(g).map(|m| m == F2Matrix::IDENTITY).unwrap_or(false)
        }
        (Element::Untilde(g), GroupKind::GammaCircle) => in_untilde_gamma_circle(g),
        (Element::Untilde(g), GroupKind::GammaCircleLevel2) => {
            in_untilde_gamma_circle(g) && fits_pattern(g, 2)
        }
        (Element::Untilde(u), kind) => match rational_to_tilde(u) {
            Ok(t) => is_member(&Element::Tilde(t), GroupId::tilde(kind, group.p))?,
            Err(_) => false,
        },
    })
}

/// `a^-1 b` lies in the paramodular group of the shared chart.
pub fn coset_equal(a: &Element, b: &Element, p: Prime) -> Result<bool> {
    if a.chart() != b.chart() || a.p() != p || b.p() != p {
        return Err(Error::ChartMismatch);
    }
    let q = a.inverse()?.mul(b)?;
    is_member(&q, GroupId::new(GroupKind::GammaCircle, a.chart(), p))
}

/// The HKW congruences `a21 = b21 = c21 = d21 = 0 (mod p)` for an integral
/// tilde-chart element.
pub fn hkw_divisible(g: &ScaledMatrix) -> bool {
    let p = g.p().big();
    [(1, 0), (1, 2), (3, 0), (3, 2)]
        .iter()
        .all(|&(i, j)| g.entry(i, j).mod_floor(&p).is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p3() -> Prime {
        Prime::new(3).unwrap()
    }

    #[test]
    fn fricke_is_in_star_only() {
        let w: Element = make_wtilde(p3()).into();
        assert!(is_member(&w, GroupId::tilde(GroupKind::GammaStar, p3())).unwrap());
        assert!(!is_member(&w, GroupId::tilde(GroupKind::GammaCircle, p3())).unwrap());
        assert!(!is_member(&w, GroupId::tilde(GroupKind::GammaStarLevel2, p3())).unwrap());
    }

    #[test]
    fn identity_everywhere() {
        for kind in [
            GroupKind::GammaCircle,
            GroupKind::GammaCircleLevel2,
            GroupKind::GammaStar,
            GroupKind::GammaStarLevel2,
        ] {
            let t: Element = ScaledMatrix::identity(p3()).into();
            let u: Element = RationalMatrix::identity(p3()).into();
            assert!(is_member(&t, GroupId::tilde(kind, p3())).unwrap());
            assert!(is_member(&u, GroupId::untilde(kind, p3())).unwrap());
        }
    }

    #[test]
    fn kappa_is_in_level_two_star() {
        let k: Element = make_kappa(p3()).into();
        assert!(is_member(&k, GroupId::tilde(GroupKind::GammaStarLevel2, p3())).unwrap());
        assert!(!is_member(&k, GroupId::tilde(GroupKind::GammaCircle, p3())).unwrap());
    }

    #[test]
    fn chart_mismatch() {
        let t: Element = ScaledMatrix::identity(p3()).into();
        assert_eq!(
            is_member(&t, GroupId::untilde(GroupKind::GammaCircle, p3())),
            Err(Error::ChartMismatch)
        );
        let p5 = Prime::new(5).unwrap();
        assert_eq!(
            is_member(&t, GroupId::tilde(GroupKind::GammaCircle, p5)),
            Err(Error::ChartMismatch)
        );
    }

    #[test]
    fn untilde_pattern() {
        // translation tau_2 -> tau_2 + p is allowed, tau_2 -> tau_2 + 1 is not
        let ok = RationalMatrix::from_integers(
            p3(),
            [[1, 0, 0, 3], [0, 1, 3, 0], [0, 0, 1, 0], [0, 0, 0, 1]],
            0,
        )
        .unwrap();
        let bad = RationalMatrix::from_integers(
            p3(),
            [[1, 0, 0, 1], [0, 1, 1, 0], [0, 0, 1, 0], [0, 0, 0, 1]],
            0,
        )
        .unwrap();
        let g = GroupId::untilde(GroupKind::GammaCircle, p3());
        assert!(is_member(&ok.clone().into(), g).unwrap());
        assert!(!is_member(&bad.into(), g).unwrap());
        let l2 = GroupId::untilde(GroupKind::GammaCircleLevel2, p3());
        assert!(!is_member(&ok.into(), l2).unwrap());
        let ok2 = RationalMatrix::from_integers(
            p3(),
            [[1, 0, 0, 6], [0, 1, 6, 0], [0, 0, 1, 0], [0, 0, 0, 1]],
            0,
        )
        .unwrap();
        assert!(is_member(&ok2.into(), l2).unwrap());
    }

    #[test]
    fn untilde_fractional_entry() {
        // lower unipotent with the p^-1 Z entry in position (4, 2)
        let g = RationalMatrix::from_fractions(
            p3(),
            [
                [(1, 1), (0, 1), (0, 1), (0, 1)],
                [(0, 1), (1, 1), (0, 1), (0, 1)],
                [(0, 1), (1, 1), (1, 1), (0, 1)],
                [(1, 1), (1, 3), (0, 1), (1, 1)],
            ],
        )
        .unwrap();
        assert!(is_member(&g.clone().into(), GroupId::untilde(GroupKind::GammaCircle, p3())).unwrap());
        let t = rational_to_tilde(&g).unwrap();
        assert!(is_member(&t.into(), GroupId::tilde(GroupKind::GammaCircle, p3())).unwrap());
    }

    #[test]
    fn coset_of_v_and_vbar() {
        let v: Element = make_v(p3()).into();
        let vbar: Element = make_vbar(p3()).into();
        assert!(coset_equal(&v, &vbar, p3()).unwrap());
        assert!(coset_equal(&v, &v, p3()).unwrap());
        let id: Element = RationalMatrix::identity(p3()).into();
        assert!(!coset_equal(&id, &vbar, p3()).unwrap());
    }

    #[test]
    fn vhat_choice_is_irrelevant() {
        let a: Element = make_v_with(p3(), 1, 2).unwrap().into();
        let b: Element = make_v_with(p3(), 4, 11).unwrap().into();
        assert!(coset_equal(&a, &b, p3()).unwrap());
        assert!(make_v_with(p3(), 1, 1).is_err());
    }
}
