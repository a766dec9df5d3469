//! The individual checks, grouped by phase.

use paramodular::exact::{rational_to_tilde, tilde_to_rational, Prime, ScaledMatrix, SymplecticForm};
use paramodular::groups::{
    coset_equal, default_generators, dual_period_identity_residual, hkw_divisible, is_member, make_kappa,
    make_v, make_vbar, make_wtilde, mobius_act, random_points, Element, GroupId, GroupKind, Sampler,
    SamplerConfig,
};
use paramodular::jacobi::{default_window, expand_f_table, expand_f_table_dense, expand_f_table_with_window};
use paramodular::siegel::{
    character_scan, cusp_leading_exponents, is_cuspidal_at_standard_cusp, level2_scan_elements, series_power,
    short_word_elements, CharacterReport, EvalConfig, ScanConfig, SiegelSeries, LEVEL,
};
use paramodular::sp4f2::{enumerate_sp4f2, pi_star, uniqueness_audit, F2Matrix};
use paramodular::{Error, Result};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::report::Check;
use crate::RunConfig;

/// Word length of sampled group elements.
pub const WORD_LENGTH: usize = 12;

/// Runs `f`, turning an error into a failed check.
fn guarded(name: &str, reference: &str, f: impl FnOnce() -> Result<Check>) -> Check {
    f().unwrap_or_else(|e| Check::error(name, e, reference))
}

fn sampler(cfg: &RunConfig, salt: u64, len: usize) -> Result<Sampler> {
    Sampler::new(&SamplerConfig::new(cfg.p, cfg.seed ^ salt, len))
}

fn tally(name: &str, reference: &str, total: usize, bad: Option<String>) -> Check {
    match bad {
        None => Check::exact(name, true, format!("{total}/{total}"), format!("{total}/{total}"), reference),
        Some(first) => Check::exact(name, false, first, format!("{total}/{total}"), reference),
    }
}

/// Closure, form invariance and the chart round trip.
pub fn exact_core(cfg: &RunConfig) -> Vec<Check> {
    let p = cfg.p;
    let n = cfg.samples;
    let form = SymplecticForm::LambdaP(p);
    let closure = guarded("closure", "scaled-products", || {
        let mut s = sampler(cfg, 1, WORD_LENGTH)?;
        let w = make_wtilde(p);
        let mut bad = None;
        for i in 0..n {
            let (g, h) = (s.gamma_star(), s.gamma_star());
            let ok = g.mul(&h).and_then(|gh| gh.mul(&w)).map(|x| x.preserves(form));
            if ok != Ok(true) {
                bad = Some(format!("pair {i}: {ok:?}"));
                break;
            }
        }
        Ok(tally("closure", "scaled-products", n, bad))
    });
    let round_trip = guarded("chart_round_trip", "tilde-chart", || {
        let mut s = sampler(cfg, 2, WORD_LENGTH)?;
        let mut bad = None;
        for i in 0..n {
            let g = s.gamma_star();
            if rational_to_tilde(&tilde_to_rational(&g))? != g {
                bad = Some(format!("sample {i}"));
                break;
            }
        }
        Ok(tally("chart_round_trip", "tilde-chart", n, bad))
    });
    vec![closure, round_trip]
}

/// Identities of the Fricke-extended paramodular group.
pub fn paramodular(cfg: &RunConfig) -> Vec<Check> {
    let p = cfg.p;
    let n = cfg.samples;
    let circle = GroupId::tilde(GroupKind::GammaCircle, p);
    let mut out = Vec::new();
    out.push(guarded("fricke_square", "fricke-involution", || {
        let ok = make_wtilde(p).pow(2)?.is_identity();
        Ok(Check::exact("fricke_square", ok, ok, true, "fricke-involution"))
    }));
    out.push(guarded("v_square_member", "fricke-involution", || {
        let v = make_v(p);
        let ok = is_member(&v.mul(&v)?.into(), GroupId::untilde(GroupKind::GammaCircle, p))?;
        Ok(Check::exact("v_square_member", ok, ok, true, "fricke-involution"))
    }));
    out.push(guarded("coset_v_vbar", "fricke-coset", || {
        let ok = coset_equal(&make_v(p).into(), &make_vbar(p).into(), p)?;
        Ok(Check::exact("coset_v_vbar", ok, ok, true, "fricke-coset"))
    }));
    out.push(guarded("kappa_decomposition", "kappa-generator", || {
        let g = make_wtilde(p).symplectic_inverse(SymplecticForm::LambdaP(p))?.mul(&make_kappa(p))?;
        let inside = is_member(&g.clone().into(), circle)?;
        let image = g.mod2()?;
        let ok = inside && image == F2Matrix::IOTA;
        Ok(Check::exact("kappa_decomposition", ok, image, F2Matrix::IOTA, "kappa-generator"))
    }));
    out.push(guarded("normalization", "fricke-normalizes", || {
        let mut s = sampler(cfg, 3, WORD_LENGTH)?;
        let w = make_wtilde(p);
        let mut bad = None;
        for i in 0..n {
            let c = w.mul(&s.gamma_circle())?.mul(&w)?;
            if !is_member(&c.into(), circle)? {
                bad = Some(format!("sample {i}"));
                break;
            }
        }
        Ok(tally("normalization", "fricke-normalizes", n, bad))
    }));
    out.push(guarded("index_two", "fricke-index", || {
        let mut s = sampler(cfg, 4, WORD_LENGTH)?;
        let w = make_wtilde(p);
        let mut bad = None;
        for i in 0..n {
            let h = s.gamma_star();
            let a = is_member(&h.clone().into(), circle)?;
            let b = is_member(&w.mul(&h)?.into(), circle)?;
            if a == b {
                bad = Some(format!("sample {i}"));
                break;
            }
        }
        Ok(tally("index_two", "fricke-index", n, bad))
    }));
    out.push(guarded("hkw_divisibility", "hkw-congruence", || {
        let mut s = sampler(cfg, 5, WORD_LENGTH)?;
        let bad = (0..n).find(|_| !hkw_divisible(&s.gamma_circle())).map(|i| format!("sample {i}"));
        Ok(tally("hkw_divisibility", "hkw-congruence", n, bad))
    }));
    out.push(guarded("mobius_action", "group-action", || {
        // short words keep the matrices well conditioned in double precision
        let mut s = sampler(cfg, 6, 3)?;
        let pts = random_points(n.min(200), cfg.seed);
        let mut worst: f64 = 0.0;
        for z in &pts {
            let g: Element = s.gamma_star().into();
            let h: Element = s.gamma_star().into();
            let lhs = mobius_act(&g.mul(&h)?, z)?;
            let rhs = mobius_act(&g, &mobius_act(&h, z)?)?;
            let scale = 1.0 + lhs.tau1.norm() + lhs.tau2.norm() + lhs.tau3.norm();
            worst = worst.max(lhs.max_abs_diff(&rhs) / scale);
        }
        Ok(Check::numeric("mobius_action", worst <= 1e-10, format!("{worst:.2e}"), 0, 1e-10, "group-action"))
    }));
    out
}

pub fn dual_identity(cfg: &RunConfig) -> Vec<Check> {
    vec![guarded("dual_period_identity", "dual-surface", || {
        let mut worst: f64 = 0.0;
        for z in random_points(20, cfg.seed) {
            worst = worst.max(dual_period_identity_residual(&z, cfg.p)?);
        }
        Ok(Check::numeric("dual_period_identity", worst < 1e-12, format!("{worst:.2e}"), 0, 1e-12, "dual-surface"))
    })]
}

/// Enumeration of `Sp(4, F2)` and its sign character.
pub fn finite_group() -> Vec<Check> {
    let t = enumerate_sp4f2();
    let sign = t.sign_char(F2Matrix::IOTA);
    let closures = t.index_two_normal_closures();
    let unique = closures.len() == 1 && closures[0] == t.derived_mask();
    vec![
        Check::exact("sp4f2_order", t.order() == 720, t.order(), 720, "enumeration"),
        Check::exact("derived_order", t.derived_order() == 360, t.derived_order(), 360, "enumeration"),
        Check::exact("sign_iota", sign == Ok(-1), format!("{sign:?}"), "Ok(-1)", "sign-character"),
        Check::exact("unique_index_two", unique, closures.len(), 1, "sign-character"),
    ]
}

/// The extended reduction map and its two conjugation identities.
pub fn lemma(cfg: &RunConfig) -> Vec<Check> {
    let p = cfg.p;
    let n = cfg.samples;
    let iota = F2Matrix::IOTA;
    let w = make_wtilde(p);
    let mut out = Vec::new();
    out.push(guarded("pi_star_homomorphism", "pi-star", || {
        let mut s = sampler(cfg, 7, WORD_LENGTH)?;
        let pairs = 10 * n;
        let mut cases = [0usize; 3];
        let mut bad = None;
        for i in 0..pairs {
            let (fg, fh) = (s.coin(), s.coin());
            let mut g = s.gamma_circle();
            let mut h = s.gamma_circle();
            if fg {
                g = w.mul(&g)?;
            }
            if fh {
                h = h.mul(&w)?;
            }
            cases[fg as usize + fh as usize] += 1;
            if pi_star(&g.mul(&h)?)? != pi_star(&g)?.mul(pi_star(&h)?) {
                bad = Some(format!("pair {i}"));
                break;
            }
        }
        let mut c = tally("pi_star_homomorphism", "pi-star", pairs, bad);
        c.measured = format!("{} cases={},{},{}", c.measured, cases[0], cases[1], cases[2]);
        Ok(c)
    }));
    out.push(guarded("conjugation_identity", "pi-star", || {
        let mut s = sampler(cfg, 8, WORD_LENGTH)?;
        let mut bad = None;
        for i in 0..n {
            let g = s.gamma_circle();
            let c = w.mul(&g)?.mul(&w)?;
            if iota.mul(pi_star(&c)?).mul(iota) != pi_star(&g)? {
                bad = Some(format!("sample {i}"));
                break;
            }
        }
        Ok(tally("conjugation_identity", "pi-star", n, bad))
    }));
    out.push(guarded("coset_identity", "pi-star", || {
        let mut s = sampler(cfg, 9, WORD_LENGTH)?;
        let mut bad = None;
        for i in 0..n {
            let h = w.mul(&s.gamma_circle())?;
            if iota.mul(pi_star(&w.mul(&h)?)?) != pi_star(&h.mul(&w)?)?.mul(iota) {
                bad = Some(format!("sample {i}"));
                break;
            }
        }
        Ok(tally("coset_identity", "pi-star", n, bad))
    }));
    out.push(guarded("kernel_is_level_two", "level-two", || {
        let mut s = sampler(cfg, 10, WORD_LENGTH)?;
        let mut bad = None;
        for i in 0..n {
            for g in [s.gamma_circle(), s.gamma_circle_level2()] {
                if (pi_star(&g)? == F2Matrix::IDENTITY) != g.is_identity_mod2() {
                    bad = Some(format!("sample {i}"));
                }
            }
            if bad.is_some() {
                break;
            }
        }
        Ok(tally("kernel_is_level_two", "level-two", n, bad))
    }));
    out.push(guarded("surjectivity", "reduction-mod-2", || {
        let t = enumerate_sp4f2();
        let images = default_generators(p).iter().map(ScaledMatrix::mod2).collect::<Result<Vec<_>>>()?;
        let order = t.generated_order(&images);
        Ok(Check::exact("surjectivity", order == 720, order, 720, "reduction-mod-2"))
    }));
    out
}

pub fn audit(p: Prime) -> Vec<Check> {
    match uniqueness_audit(p) {
        Ok(r) => vec![
            Check::exact(
                "audit_centralizer",
                r.h1_commutes && r.h2_commutes,
                format!("h1:{},h2:{}", r.h1_commutes, r.h2_commutes),
                "h1:true,h2:true",
                "uniqueness",
            ),
            Check::exact("audit_exclusions", r.displayed_exclusions_hold, r.displayed_exclusions_hold, true, "uniqueness"),
            Check::exact("audit_unique_iota", r.unique_iota(), format!("{:?}", r.survivors), "[iota]", "uniqueness"),
        ],
        Err(e) => vec![Check::error("audit", e, "uniqueness")],
    }
}

/// Builds the coefficient table and cross-checks it.
pub fn f_table() -> Vec<Check> {
    let qmax = 12;
    let f = expand_f_table(qmax);
    let row: Vec<String> = (-1..=1).map(|l| f.get(0, l).to_string()).collect();
    let row = row.join(",");
    let oracle = expand_f_table_dense(qmax) == f;
    let wide = expand_f_table_with_window(qmax, default_window(qmax) + 4).map(|g| g == f);
    vec![
        Check::exact("ftable_leading_row", row == "1,2,1", &row, "1,2,1", "theta-quotient"),
        Check::exact("ftable_oracle", oracle, f.len(), "dense-product", "theta-quotient"),
        Check::exact("ftable_window", wide == Ok(true), format!("{wide:?}"), "Ok(true)", "theta-quotient"),
        Check::exact("ftable_symmetric", f.is_symmetric(), f.is_symmetric(), true, "theta-quotient"),
    ]
}

/// Leading term and truncation stability of the product expansion.
pub fn delta(lo: &SiegelSeries, hi: &SiegelSeries) -> Vec<Check> {
    let lead = cusp_leading_exponents(lo);
    let coeff = lo.get((1, 1, 1));
    vec![
        Check::exact(
            "delta_leading",
            lead == Some((1, 1, 1)) && coeff == 1.into(),
            format!("{lead:?}:{coeff}"),
            "Some((1,1,1)):1",
            "borcherds-product",
        ),
        Check::exact("delta_cusp", is_cuspidal_at_standard_cusp(lo), is_cuspidal_at_standard_cusp(lo), true, "borcherds-product"),
        Check::exact(
            "delta_stability",
            hi.truncate(lo.cap()) == *lo,
            format!("cap{}-vs-cap{}", lo.cap(), hi.cap()),
            "equal",
            "borcherds-product",
        ),
    ]
}

struct Collected {
    reports: Vec<CharacterReport>,
    skipped: usize,
    error: Option<String>,
}

/// Scans elements one by one until `want` are evaluable, skipping those where
/// the truncated series is not accurate enough.
fn collect(
    sr: &SiegelSeries,
    pool: impl IntoIterator<Item = Element>,
    weight: i32,
    order: u32,
    want: usize,
    scan: &ScanConfig,
) -> Collected {
    let mut c = Collected {
        reports: Vec::new(),
        skipped: 0,
        error: None,
    };
    for g in pool {
        if c.reports.len() >= want {
            break;
        }
        match character_scan(sr, &[g], weight, order, scan).pop().expect("one element") {
            Ok(r) => c.reports.push(r),
            Err(Error::PrecisionLoss { .. }) | Err(Error::SingularDenominator) => c.skipped += 1,
            Err(e) => {
                c.error = Some(e.to_string());
                break;
            }
        }
    }
    c
}

/// Pass if `pred` holds for all of `want` reports, fail on a violation or a
/// hard error, skip if too few elements could be evaluated.
fn judge(
    name: &str,
    reference: &str,
    c: &Collected,
    want: usize,
    expected: &str,
    tol: f64,
    pred: impl Fn(&CharacterReport) -> bool,
) -> Check {
    if let Some(e) = &c.error {
        return Check::error(name, e, reference);
    }
    if let Some(r) = c.reports.iter().find(|r| !pred(r)) {
        return Check::numeric(name, false, format!("{:.6}", r.ratio), expected, tol, reference);
    }
    let measured = format!("{}/{} skipped={}", c.reports.len(), want, c.skipped);
    if c.reports.len() < want {
        Check::skip(name, measured, reference)
    } else {
        Check::numeric(name, true, measured, expected, tol, reference)
    }
}

fn scan_config(cfg: &RunConfig) -> ScanConfig {
    ScanConfig {
        eval: EvalConfig {
            convention: cfg.convention,
            tolerance: cfg.tolerance * 1e-3,
        },
        constancy_tol: cfg.tolerance,
        snap_tol: cfg.tolerance,
        ..ScanConfig::default()
    }
}

/// Character values of the weight-1 form and its cube.
pub fn characters(cfg: &RunConfig, d1: &SiegelSeries) -> Vec<Check> {
    const NAMES: [&str; 6] = [
        "fricke_character",
        "kappa_character",
        "level2_character",
        "sixth_roots",
        "character_multiplicative",
        "sign_consistency",
    ];
    if cfg.p.get() != LEVEL {
        return NAMES
            .iter()
            .map(|n| Check::skip(n, format!("the product is defined for p={LEVEL}"), "characters"))
            .collect();
    }
    let p = cfg.p;
    let tol = cfg.tolerance;
    let scan = scan_config(cfg);
    let d3 = series_power(d1, 3);
    let want = cfg.samples.min(50);
    let mut out = Vec::new();

    for (name, g, k) in [
        (NAMES[0], Element::from(make_vbar(p)), 1u32),
        (NAMES[1], Element::from(make_kappa(p)), 0),
    ] {
        let c = collect(&d3, [g], 3, 2, 1, &scan);
        let expected = if k == 1 { "-1" } else { "1" };
        out.push(judge(name, "fricke-sign", &c, 1, expected, tol, |r| r.snapped == Some(k)));
    }

    let l2 = level2_scan_elements(p, 12 * want, cfg.seed);
    let c = collect(&d3, l2.into_iter().map(Element::from), 3, 1, want, &scan);
    out.push(judge(NAMES[2], "level-two-trivial", &c, want, "1", tol, |r| r.snapped == Some(0)));

    let words = match short_word_elements(p, 4 * want, cfg.seed, 3) {
        Ok(w) => w,
        Err(e) => {
            out.extend(NAMES[3..].iter().map(|n| Check::error(n, &e, "characters")));
            return out;
        }
    };
    let c = collect(d1, words.into_iter().map(Element::from), 1, 6, want, &scan);
    let primitive = c.reports.iter().filter(|r| matches!(r.snapped, Some(1) | Some(5))).count();
    let mut roots = judge(NAMES[3], "order-six", &c, want, "sixth-root", tol, |r| r.snapped.is_some());
    if roots.status == crate::Status::Pass && primitive == 0 {
        roots.status = crate::Status::Fail;
    }
    roots.measured = format!("{} primitive={primitive}", roots.measured);
    out.push(roots);

    out.push(multiplicativity(d1, &c.reports, 2 * want, &scan, tol, cfg.seed));

    let words = short_word_elements(p, 4 * want, cfg.seed.wrapping_add(1), 4).unwrap_or_default();
    let table = enumerate_sp4f2();
    let c = collect(&d3, words.into_iter().map(Element::from), 3, 2, want, &scan);
    out.push(judge(NAMES[5], "sign-factorization", &c, want, "sign(pi(g))", tol, |r| {
        let sign = r
            .element
            .to_tilde()
            .and_then(|g| g.mod2())
            .and_then(|m| table.sign_char(m));
        match (sign, r.snapped) {
            (Ok(1), Some(0)) | (Ok(-1), Some(1)) => true,
            _ => false,
        }
    }));
    out
}

fn multiplicativity(
    d1: &SiegelSeries,
    base: &[CharacterReport],
    want: usize,
    scan: &ScanConfig,
    tol: f64,
    seed: u64,
) -> Check {
    let name = "character_multiplicative";
    let snapped: Vec<&CharacterReport> = base.iter().filter(|r| r.snapped.is_some()).collect();
    if snapped.is_empty() {
        return Check::skip(name, "no snapped values", "order-six");
    }
    let mut checked = 0;
    let mut skipped = 0;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut next = |m: usize| rng.gen_range(0..m);
    for _ in 0..20 * want {
        if checked >= want {
            break;
        }
        let (a, b) = (snapped[next(snapped.len())], snapped[next(snapped.len())]);
        let ab = match a.element.mul(&b.element) {
            Ok(x) => x,
            Err(e) => return Check::error(name, e, "order-six"),
        };
        match character_scan(d1, &[ab], 1, 6, scan).pop().expect("one element") {
            Ok(r) => {
                let k = (a.snapped.unwrap() + b.snapped.unwrap()) % 6;
                if r.snapped != Some(k) {
                    return Check::numeric(name, false, format!("{:?}", r.snapped), k, tol, "order-six");
                }
                checked += 1;
            }
            Err(Error::PrecisionLoss { .. }) | Err(Error::SingularDenominator) => skipped += 1,
            Err(e) => return Check::error(name, e, "order-six"),
        }
    }
    let measured = format!("{checked}/{want} skipped={skipped}");
    if checked < want {
        Check::skip(name, measured, "order-six")
    } else {
        Check::numeric(name, true, measured, "chi(g)chi(h)", tol, "order-six")
    }
}

/// Sampled elements of `kind`, drawn from short words so that sample points
/// with accurate evaluations exist.
pub fn scan_elements(p: Prime, kind: GroupKind, count: usize, seed: u64) -> Result<Vec<Element>> {
    let w = make_wtilde(p);
    let kappa = make_kappa(p);
    let pick = |i: usize, g: ScaledMatrix, twist: &ScaledMatrix| -> Result<Element> {
        Ok(if i % 2 == 1 { twist.mul(&g)? } else { g }.into())
    };
    match kind {
        GroupKind::GammaCircle => Ok(short_word_elements(p, count, seed, 3)?.into_iter().map(Element::from).collect()),
        GroupKind::GammaCircleLevel2 => Ok(level2_scan_elements(p, count, seed).into_iter().map(Element::from).collect()),
        GroupKind::GammaStar => short_word_elements(p, count, seed, 3)?
            .into_iter()
            .enumerate()
            .map(|(i, g)| pick(i, g, &w))
            .collect(),
        GroupKind::GammaStarLevel2 => level2_scan_elements(p, count, seed)
            .into_iter()
            .enumerate()
            .map(|(i, g)| pick(i, g, &kappa))
            .collect(),
    }
}

/// One line per element: the slash ratio snapped to an `order`-th root of
/// unity. Elements whose points cannot be evaluated accurately are skipped.
pub fn character_table(
    cfg: &RunConfig,
    sr: &SiegelSeries,
    kind: GroupKind,
    weight: i32,
    order: u32,
) -> Vec<Check> {
    let elements = match scan_elements(cfg.p, kind, cfg.samples, cfg.seed) {
        Ok(e) => e,
        Err(e) => return vec![Check::error("elements", e, "characters")],
    };
    let scan = scan_config(cfg);
    elements
        .iter()
        .enumerate()
        .map(|(i, g)| {
            let name = format!("element_{i}");
            match character_scan(sr, std::slice::from_ref(g), weight, order, &scan).pop().expect("one element") {
                Ok(r) => {
                    let expected = r.snapped.map_or("root-of-unity".to_string(), |k| format!("zeta{order}^{k}"));
                    Check::numeric(&name, r.snapped.is_some(), format!("{:.8}", r.ratio), expected, cfg.tolerance, "characters")
                }
                Err(e @ (Error::PrecisionLoss { .. } | Error::SingularDenominator)) => Check::skip(&name, e, "characters"),
                Err(e) => Check::error(&name, e, "characters"),
            }
        })
        .collect()
}
