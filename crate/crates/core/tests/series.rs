use num_bigint::BigInt;
use num_complex::Complex64;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use paramodular::groups::SiegelPoint;
use paramodular::jacobi::{
    binomial_power_coeff, bi_mul, expand_f_table, expand_f_table_with_window, BiSeries, FTable,
};
use paramodular::siegel::{
    build_delta1, evaluate, required_qmax, series_mul, series_power, EvalConfig, RConvention,
    SiegelSeries,
};

fn bi_series(qmax: i64) -> impl Strategy<Value = BiSeries> {
    prop::collection::vec(((0..=qmax, -6i64..=6), -5i64..=5), 0..8).prop_map(move |terms| {
        BiSeries::from_terms(qmax, terms.into_iter().map(|(k, c)| (k, BigInt::from(c))))
    })
}

fn siegel_series(cap: i64) -> impl Strategy<Value = SiegelSeries> {
    prop::collection::vec(((0..=cap / 2, -8i64..=8, 0..=cap / 2), -9i64..=9), 0..12).prop_map(
        move |terms| SiegelSeries::from_terms(cap, terms.into_iter().map(|(k, c)| (k, BigInt::from(c)))),
    )
}

/// The product formula with the factors multiplied in a shuffled order.
fn delta_shuffled(cap: i64, seed: u64) -> SiegelSeries {
    let f = expand_f_table(required_qmax(cap));
    let budget = cap - 2;
    let nm_max = budget / 6;
    let mut factors = Vec::new();
    for n in 0..=nm_max {
        for m in 0..=nm_max - n {
            for (l, e) in f.row(n * m) {
                if n == 0 && m == 0 && l >= 0 {
                    continue;
                }
                let w = 6 * (n + m);
                let kmax = if w > 0 { (budget / w) as u64 } else { 1 };
                let terms = (0..=kmax).map(|k| {
                    let ki = k as i64;
                    ((6 * n * ki, 2 * l * ki, 6 * m * ki), binomial_power_coeff(e, k))
                });
                factors.push(SiegelSeries::from_terms(budget, terms));
            }
        }
    }
    factors.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    factors
        .iter()
        .fold(SiegelSeries::one(budget), |acc, x| series_mul(&acc, x))
        .shift((1, 1, 1))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn bi_mul_is_associative_and_commutative(a in bi_series(6), b in bi_series(6), c in bi_series(6)) {
        let w = 100;
        let ab_c = bi_mul(&bi_mul(&a, &b, w).unwrap(), &c, w).unwrap();
        let a_bc = bi_mul(&a, &bi_mul(&b, &c, w).unwrap(), w).unwrap();
        prop_assert_eq!(&ab_c, &a_bc);
        prop_assert_eq!(bi_mul(&a, &b, w).unwrap(), bi_mul(&b, &a, w).unwrap());
    }

    #[test]
    fn series_mul_is_associative_and_commutative(
        a in siegel_series(20),
        b in siegel_series(20),
        c in siegel_series(20),
    ) {
        let ab_c = series_mul(&series_mul(&a, &b), &c);
        let a_bc = series_mul(&a, &series_mul(&b, &c));
        let cap = ab_c.cap().min(a_bc.cap());
        prop_assert_eq!(ab_c.truncate(cap), a_bc.truncate(cap));
        prop_assert_eq!(series_mul(&a, &b), series_mul(&b, &a));
    }

    #[test]
    fn siegel_text_round_trip(a in siegel_series(30)) {
        prop_assert_eq!(SiegelSeries::parse(&a.to_text()).unwrap(), a);
    }

    #[test]
    fn factor_order_is_irrelevant(seed in any::<u64>()) {
        let cap = 30;
        let want = build_delta1(cap, &expand_f_table(required_qmax(cap))).unwrap();
        prop_assert_eq!(delta_shuffled(cap, seed), want);
    }
}

#[test]
fn f_table_window_and_text() {
    for q in [0, 3, 8] {
        let f = expand_f_table(q);
        assert_eq!(expand_f_table_with_window(q, 4 * q + 20).unwrap(), f);
        assert_eq!(FTable::parse(&f.to_text()).unwrap(), f);
        assert!(f.is_symmetric() || q == 0);
    }
}

#[test]
fn truncation_stability_and_integrality() {
    let d = |cap| build_delta1(cap, &expand_f_table(required_qmax(cap))).unwrap();
    let (lo, hi) = (d(36), d(48));
    assert_eq!(hi.truncate(36), lo);
    let cube_lo = series_power(&lo, 3);
    let cube_hi = series_power(&hi, 3);
    assert_eq!(cube_lo.cap(), 40);
    assert_eq!(cube_hi.truncate(40), cube_lo);
}

#[test]
fn convention_switch_changes_values() {
    let d = build_delta1(48, &expand_f_table(required_qmax(48))).unwrap();
    let z = SiegelPoint::new(
        Complex64::new(0.1, 1.4),
        Complex64::new(0.2, 0.1),
        Complex64::new(-0.1, 0.6),
    )
    .unwrap();
    let i = evaluate(&d, &z, &EvalConfig::default()).unwrap().value;
    let cfg = EvalConfig {
        convention: RConvention::NoI,
        ..EvalConfig::default()
    };
    let no_i = evaluate(&d, &z, &cfg).map(|e| e.value);
    assert!(no_i.map_or(true, |v| (v - i).norm() > 1e-6));
}
