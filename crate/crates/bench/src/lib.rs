//! Fixtures shared by the benchmarks.

use num_complex::Complex64;
use paramodular::jacobi::expand_f_table;
use paramodular::siegel::{build_delta1, required_qmax, SiegelSeries};
use paramodular::SiegelPoint;

/// The product expansion at `cap`.
pub fn delta(cap: i64) -> SiegelSeries {
    build_delta1(cap, &expand_f_table(required_qmax(cap))).expect("cap within range")
}

/// A point of the expansion chart where the series converge quickly.
pub fn point() -> SiegelPoint {
    SiegelPoint::new(
        Complex64::new(0.1, 1.4),
        Complex64::new(0.2, 0.1),
        Complex64::new(-0.1, 0.6),
    )
    .expect("positive imaginary part")
}
