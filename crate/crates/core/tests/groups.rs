use num_complex::Complex64;
use proptest::prelude::*;

use paramodular::exact::{rational_to_tilde, tilde_to_rational, Prime, ScaledMatrix, SymplecticForm};
use paramodular::groups::{
    default_generators, hkw_divisible, is_member, make_kappa, make_wtilde, mobius_act, Element, GroupId,
    GroupKind, Sampler, SamplerConfig, SiegelPoint,
};
use paramodular::sp4f2::{enumerate_sp4f2, pi_star, F2Matrix};

fn prime() -> impl Strategy<Value = Prime> {
    prop_oneof![Just(3u64), Just(5), Just(7), Just(11)].prop_map(|p| Prime::new(p).unwrap())
}

fn sampler(p: Prime, seed: u64, len: usize) -> Sampler {
    Sampler::new(&SamplerConfig::new(p, seed, len)).unwrap()
}

fn tau() -> impl Strategy<Value = SiegelPoint> {
    (-1.0..1.0f64, -1.0..1.0f64, -1.0..1.0f64, 0.5..2.0f64, -0.8..0.8f64, 0.5..2.0f64).prop_map(
        |(x1, x2, x3, a, b, c)| {
            SiegelPoint::new(
                Complex64::new(x1, a * a),
                Complex64::new(x2, a * b),
                Complex64::new(x3, b * b + c * c),
            )
            .unwrap()
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn words_stay_in_the_group(p in prime(), seed in any::<u64>(), len in 1usize..40) {
        let mut s = sampler(p, seed, len);
        let w = make_wtilde(p);
        let form = SymplecticForm::LambdaP(p);
        let g = s.gamma_circle();
        let h = s.gamma_star();
        // no scale overflow anywhere in the extended group
        let gh = g.mul(&h).unwrap();
        let whw = w.mul(&gh).unwrap().mul(&w).unwrap();
        prop_assert!(gh.preserves(form) && whw.preserves(form));
        prop_assert!(is_member(&g.clone().into(), GroupId::tilde(GroupKind::GammaCircle, p)).unwrap());
        prop_assert!(is_member(&h.clone().into(), GroupId::tilde(GroupKind::GammaStar, p)).unwrap());
        prop_assert!(is_member(&whw.into(), GroupId::tilde(GroupKind::GammaStar, p)).unwrap());
    }

    #[test]
    fn chart_round_trip(p in prime(), seed in any::<u64>(), len in 1usize..20) {
        let g = sampler(p, seed, len).gamma_star();
        let back = rational_to_tilde(&tilde_to_rational(&g)).unwrap();
        prop_assert_eq!(back, g.clone());
        let u: Element = tilde_to_rational(&g).into();
        prop_assert!(is_member(&u, GroupId::untilde(GroupKind::GammaStar, p)).unwrap());
    }

    #[test]
    fn normalization_and_index_two(p in prime(), seed in any::<u64>(), len in 1usize..20) {
        let mut s = sampler(p, seed, len);
        let w = make_wtilde(p);
        let circle = GroupId::tilde(GroupKind::GammaCircle, p);
        let g = s.gamma_circle();
        let c = w.mul(&g).unwrap().mul(&w).unwrap();
        prop_assert!(is_member(&c.into(), circle).unwrap());
        let h = s.gamma_star();
        let a = is_member(&h.clone().into(), circle).unwrap();
        let b = is_member(&w.mul(&h).unwrap().into(), circle).unwrap();
        prop_assert!(a ^ b);
    }

    #[test]
    fn hkw_congruences(p in prime(), seed in any::<u64>(), len in 1usize..30) {
        prop_assert!(hkw_divisible(&sampler(p, seed, len).gamma_circle()));
    }

    #[test]
    fn pi_star_is_a_homomorphism(p in prime(), seed in any::<u64>(), len in 1usize..20) {
        let mut s = sampler(p, seed, len);
        let (g, h) = (s.gamma_star(), s.gamma_star());
        let gh = g.mul(&h).unwrap();
        prop_assert_eq!(pi_star(&gh).unwrap(), pi_star(&g).unwrap().mul(pi_star(&h).unwrap()));
    }

    #[test]
    fn kernel_on_the_integral_group(p in prime(), seed in any::<u64>(), len in 1usize..20) {
        let mut s = sampler(p, seed, len);
        for g in [s.gamma_circle(), s.gamma_circle_level2()] {
            prop_assert_eq!(pi_star(&g).unwrap() == F2Matrix::IDENTITY, g.is_identity_mod2());
        }
        let l2 = s.gamma_star_level2();
        prop_assert_eq!(pi_star(&l2).unwrap(), F2Matrix::IDENTITY);
        prop_assert!(is_member(&l2.into(), GroupId::tilde(GroupKind::GammaStarLevel2, p)).unwrap());
    }

    #[test]
    fn mobius_is_an_action(seed in any::<u64>(), len in 1usize..4, z in tau()) {
        let p = Prime::new(3).unwrap();
        let mut s = sampler(p, seed, len);
        let g: Element = s.gamma_star().into();
        let h: Element = s.gamma_star().into();
        let lhs = mobius_act(&g.mul(&h).unwrap(), &z).unwrap();
        let rhs = mobius_act(&g, &mobius_act(&h, &z).unwrap()).unwrap();
        let scale = 1.0 + lhs.tau1.norm() + lhs.tau2.norm() + lhs.tau3.norm();
        prop_assert!(lhs.max_abs_diff(&rhs) <= 1e-10 * scale, "{} vs {}", lhs, rhs);
    }
}

#[test]
fn kappa_decomposes_through_the_fricke_element() {
    for p in [3, 5, 7] {
        let p = Prime::new(p).unwrap();
        let w_inv = make_wtilde(p).symplectic_inverse(SymplecticForm::LambdaP(p)).unwrap();
        let g = w_inv.mul(&make_kappa(p)).unwrap();
        assert!(g.is_integral());
        assert!(is_member(&g.clone().into(), GroupId::tilde(GroupKind::GammaCircle, p)).unwrap());
        assert_eq!(g.mod2().unwrap(), F2Matrix::IOTA);
    }
}

#[test]
fn generator_images_are_surjective() {
    let t = enumerate_sp4f2();
    for p in [3, 5, 7, 11] {
        let p = Prime::new(p).unwrap();
        let images: Vec<F2Matrix> = default_generators(p).iter().map(|g| g.mod2().unwrap()).collect();
        assert_eq!(t.generated_order(&images), 720);
    }
}

#[test]
fn sign_is_the_only_index_two_quotient() {
    let t = enumerate_sp4f2();
    let closures = t.index_two_normal_closures();
    assert_eq!(closures.len(), 1);
    assert_eq!(closures[0], t.derived_mask());
}

#[test]
fn literal_round_trip() {
    let p = Prime::new(5).unwrap();
    let mut s = sampler(p, 1, 8);
    for g in [make_wtilde(p), make_kappa(p), s.gamma_star(), s.gamma_star()] {
        assert_eq!(ScaledMatrix::parse_literal(&g.to_string(), p).unwrap(), g);
    }
}
