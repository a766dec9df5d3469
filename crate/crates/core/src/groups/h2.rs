//! The Siegel upper half-space of degree 2 and the action on it.

use std::fmt;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{make_vbar, Element};
use crate::error::{Error, Result};
use crate::exact::Prime;

/// A symmetric complex 2x2 matrix `[[tau1, tau2], [tau2, tau3]]` with
/// positive-definite imaginary part.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SiegelPoint {
    pub tau1: Complex64,
    pub tau2: Complex64,
    pub tau3: Complex64,
}

type C2 = [[Complex64; 2]; 2];

impl SiegelPoint {
    pub fn new(tau1: Complex64, tau2: Complex64, tau3: Complex64) -> Result<Self> {
        let pt = SiegelPoint { tau1, tau2, tau3 };
        if pt.is_valid() {
            Ok(pt)
        } else {
            Err(Error::NotInUpperHalfSpace)
        }
    }

    /// `diag(i y1, i y3)`.
    pub fn diagonal(y1: f64, y3: f64) -> Result<Self> {
        Self::new(Complex64::new(0.0, y1), Complex64::new(0.0, 0.0), Complex64::new(0.0, y3))
    }

    pub fn is_valid(&self) -> bool {
        let (y1, y2, y3) = (self.tau1.im, self.tau2.im, self.tau3.im);
        [self.tau1, self.tau2, self.tau3].iter().all(|z| z.re.is_finite() && z.im.is_finite())
            && y1 > 0.0
            && y1 * y3 - y2 * y2 > 0.0
    }

    pub fn matrix(&self) -> C2 {
        [[self.tau1, self.tau2], [self.tau2, self.tau3]]
    }

    /// Imaginary part as `(y1, y2, y3)`.
    pub fn imag(&self) -> (f64, f64, f64) {
        (self.tau1.im, self.tau2.im, self.tau3.im)
    }

    pub fn max_abs_diff(&self, other: &SiegelPoint) -> f64 {
        (self.tau1 - other.tau1)
            .norm()
            .max((self.tau2 - other.tau2).norm())
            .max((self.tau3 - other.tau3).norm())
    }
}

impl fmt::Display for SiegelPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.tau1, self.tau2, self.tau3)
    }
}

fn mul2(a: &C2, b: &C2) -> C2 {
    std::array::from_fn(|i| std::array::from_fn(|j| a[i][0] * b[0][j] + a[i][1] * b[1][j]))
}

fn add2(a: &C2, b: &C2) -> C2 {
    std::array::from_fn(|i| std::array::from_fn(|j| a[i][j] + b[i][j]))
}

fn block(g: &[[f64; 4]; 4], r: usize, c: usize) -> C2 {
    std::array::from_fn(|i| std::array::from_fn(|j| Complex64::new(g[r + i][c + j], 0.0)))
}

/// `g tau` together with `det(C tau + D)`, for a real matrix `g` preserving
/// the standard form.
pub fn mobius_with_det(g: &[[f64; 4]; 4], tau: &SiegelPoint) -> Result<(SiegelPoint, Complex64)> {
    let t = tau.matrix();
    let num = add2(&mul2(&block(g, 0, 0), &t), &block(g, 0, 2));
    let den = add2(&mul2(&block(g, 2, 0), &t), &block(g, 2, 2));
    let det = den[0][0] * den[1][1] - den[0][1] * den[1][0];
    let scale = den.iter().flatten().map(|z| z.norm()).fold(0.0, f64::max);
    if !det.is_finite() || det.norm() <= 1e-13 * scale * scale {
        return Err(Error::SingularDenominator);
    }
    let inv = [[den[1][1] / det, -den[0][1] / det], [-den[1][0] / det, den[0][0] / det]];
    let w = mul2(&num, &inv);
    let out = SiegelPoint {
        tau1: w[0][0],
        tau2: (w[0][1] + w[1][0]) * 0.5,
        tau3: w[1][1],
    };
    if !out.is_valid() {
        return Err(Error::NotInUpperHalfSpace);
    }
    Ok((out, det))
}

pub fn mobius_act_f64(g: &[[f64; 4]; 4], tau: &SiegelPoint) -> Result<SiegelPoint> {
    mobius_with_det(g, tau).map(|(pt, _)| pt)
}

/// `(A tau + B)(C tau + D)^-1`; tilde-chart elements are first moved to the
/// original chart, where they preserve the standard form.
pub fn mobius_act(g: &Element, tau: &SiegelPoint) -> Result<SiegelPoint> {
    mobius_act_f64(&g.to_untilde().to_f64(), tau)
}

/// Seeded points with real parts in `[-1, 1)` and imaginary part `L L^T`,
/// `L` lower triangular with diagonal in `[0.3, 2)`.
pub fn random_points(count: usize, seed: u64) -> Vec<SiegelPoint> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let (a, b, c) = (rng.gen_range(0.3..2.0), rng.gen_range(-1.0..1.0), rng.gen_range(0.3..2.0));
            let x: [f64; 3] = std::array::from_fn(|_| rng.gen_range(-1.0..1.0));
            SiegelPoint {
                tau1: Complex64::new(x[0], a * a),
                tau2: Complex64::new(x[1], a * b),
                tau3: Complex64::new(x[2], b * b + c * c),
            }
        })
        .collect()
}

/// Largest entry of `S Ω' diag(S, S) - (diag(1, p), V̄_p(tau))`, where `Ω'` is
/// the period matrix of the dual surface and `S` the 2x2 swap.
pub fn dual_period_identity_residual(tau: &SiegelPoint, p: Prime) -> Result<f64> {
    let pf = p.get() as f64;
    let c = |x: f64| Complex64::new(x, 0.0);
    let omega: [[Complex64; 4]; 2] = [
        [c(pf), c(0.0), tau.tau1 * pf, tau.tau2],
        [c(0.0), c(1.0), tau.tau2, tau.tau3 / pf],
    ];
    // S on the left swaps the rows, diag(S, S) on the right swaps columns in pairs
    let lhs: [[Complex64; 4]; 2] = std::array::from_fn(|i| std::array::from_fn(|j| omega[i ^ 1][j ^ 1]));
    let v = mobius_act(&make_vbar(p).into(), tau)?.matrix();
    let rhs: [[Complex64; 4]; 2] = [
        [c(1.0), c(0.0), v[0][0], v[0][1]],
        [c(0.0), c(pf), v[1][0], v[1][1]],
    ];
    Ok(lhs
        .iter()
        .flatten()
        .zip(rhs.iter().flatten())
        .map(|(a, b)| (a - b).norm())
        .fold(0.0, f64::max))
}
