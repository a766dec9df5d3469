use paramodular::exact::{Prime, ScaledMatrix};
use paramodular::groups::Element;
use paramodular::jacobi::expand_f_table;
use paramodular::siegel::{
    build_delta1, character_scan, required_qmax, series_power, short_word_elements, EvalConfig, RConvention, ScanConfig,
    SiegelSeries,
};

fn cube(cap: i64) -> SiegelSeries {
    series_power(&build_delta1(cap, &expand_f_table(required_qmax(cap))).unwrap(), 3)
}

#[test]
fn identity_has_trivial_character() {
    let p = Prime::new(3).unwrap();
    let r = character_scan(&cube(48), &[ScaledMatrix::identity(p).into()], 3, 6, &ScanConfig::default());
    let r = r[0].as_ref().unwrap();
    assert_eq!(r.snapped, Some(0));
    assert!(r.residual < 1e-12);
}

#[test]
fn only_the_imaginary_convention_is_modular() {
    // the Fricke element only swaps z1 and z3, so it cannot tell the two apart
    let p = Prime::new(3).unwrap();
    let d1 = build_delta1(72, &expand_f_table(required_qmax(72))).unwrap();
    let words: Vec<Element> = short_word_elements(p, 12, 7, 2)
        .unwrap()
        .into_iter()
        .map(Element::from)
        .collect();
    let good = character_scan(&d1, &words, 1, 6, &ScanConfig::default());
    assert!(good.iter().all(|r| r.as_ref().is_ok_and(|r| r.snapped.is_some())));
    let cfg = ScanConfig {
        eval: EvalConfig {
            convention: RConvention::NoI,
            ..EvalConfig::default()
        },
        ..ScanConfig::default()
    };
    let bad = character_scan(&d1, &words, 1, 6, &cfg);
    let broken = bad
        .iter()
        .filter(|r| !matches!(r, Ok(r) if r.snapped.is_some()))
        .count();
    assert!(broken > 0);
}
