use proptest::prelude::*;

use bvsieve::hproduct::{h_accel, h_direct_enclosure, h_taylor_bounds, truncation_profile, TruncationProfile};
use bvsieve::kappa::InvZetaMargin;
use bvsieve::quad::Integrand;
use bvsieve::rint::{Ball, ComplexBall, Tm};
use bvsieve::sievesums::{m_sum, rho_weight, s_sum, SievePlan, SmoothingFn};
use bvsieve::zetafn::{zeta, zeta_one_line_sq, zeta_one_line_sq_em};
use std::sync::OnceLock;

const LO: u32 = 64;
const HI: u32 = 256;

fn profiles() -> &'static (TruncationProfile, TruncationProfile) {
    static P: OnceLock<(TruncationProfile, TruncationProfile)> = OnceLock::new();
    P.get_or_init(|| (truncation_profile(250).unwrap(), truncation_profile(750).unwrap()))
}

// Every operation at 64 bits must contain the 256-bit result of the same
// operation on the same exact inputs.
fn ops(x: &Ball, y: &Ball) -> Vec<(&'static str, Ball)> {
    let mut v = vec![
        ("add", x + y),
        ("sub", x - y),
        ("mul", x * y),
        ("sqr", x.sqr()),
        ("exp", x.exp()),
        ("sin", x.sin()),
        ("cos", x.cos()),
        ("atan", x.atan()),
        ("abs", x.abs()),
    ];
    if let Ok(d) = x.div_ball(y) {
        v.push(("div", d));
    }
    if let Ok(l) = x.abs().add_i64(1).log() {
        v.push(("log", l));
    }
    v.push(("sqrt", x.abs().sqrt().unwrap()));
    v
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn ball_ops_contain_high_precision(a in -50.0f64..50.0, b in -50.0f64..50.0) {
        prop_assume!(b.abs() > 1e-3);
        let lo = ops(&Ball::from_f64(a, LO), &Ball::from_f64(b, LO));
        let hi = ops(&Ball::from_f64(a, HI), &Ball::from_f64(b, HI));
        for ((name, l), (_, h)) in lo.iter().zip(&hi) {
            prop_assert!(l.contains_float(h.mid()), "{} at ({}, {}): {:?} vs {:?}", name, a, b, l, h);
        }
    }

    #[test]
    fn wider_inputs_give_wider_outputs(a in -20.0f64..20.0, b in 0.5f64..20.0, r in 0.0f64..0.25) {
        let x = Ball::from_f64(a, LO);
        let y = Ball::from_f64(b, LO);
        let xw = x.clone().add_error(r);
        let yw = y.clone().add_error(r);
        for ((name, n), (_, w)) in ops(&x, &y).iter().zip(&ops(&xw, &yw)) {
            prop_assert!(w.contains(n), "{} {:?} vs {:?}", name, n, w);
        }
    }

    #[test]
    fn abs_lower_bound_nonnegative(a in -5.0f64..5.0, r in 0.0f64..10.0) {
        let v = Ball::from_f64(a, LO).add_error(r).abs();
        prop_assert!(v.lower_f64() >= 0.0);
        prop_assert!(v.contains_f64(a.abs()));
    }

    #[test]
    fn taylor_models_enclose(m in 0.5f64..4.0, r in 0.01f64..0.4, e in -1.0f64..1.0) {
        let mb = Ball::from_f64(m, 128);
        let x = Tm::variable(&mb, 8, r);
        let (c, _) = Tm::cos_sin_linear(&(&mb * &Ball::from_i64(2, 128)), &Ball::from_i64(2, 128), 8, r);
        let f = x.sqr().add_const(&Ball::one(128)).recip().unwrap().mul(&c);
        let t = m + e * r;
        let want = (2.0 * t).cos() / (t * t + 1.0);
        prop_assert!(f.eval(&Ball::from_f64(e * r, 128)).add_error(1e-14).contains_f64(want));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn one_line_branches_agree(t in 0.4f64..0.5) {
        let b = Ball::from_f64(t, 128);
        let lau = zeta_one_line_sq(&b).unwrap();
        let em = zeta_one_line_sq_em(&b).unwrap();
        prop_assert!(lau.overlaps(&em), "t={}: {:?} vs {:?}", t, lau, em);
    }

    #[test]
    fn inverse_zeta_bound_holds(t in 2.0f64..500.0) {
        let f = InvZetaMargin::new(128);
        prop_assert!(f.eval(&Ball::from_f64(t, 128)).unwrap().lower_f64() > 0.0, "t={}", t);
    }

    #[test]
    fn zeta_conjugate_symmetry(s in 1.5f64..4.0, t in 0.0f64..50.0) {
        let z = zeta(&ComplexBall::from_f64(s, t, 128)).unwrap();
        let w = zeta(&ComplexBall::from_f64(s, -t, 128)).unwrap();
        prop_assert!(z.overlaps(&w.conj()));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn cutoffs_agree(t in 0.0f64..7500.0) {
        let (p250, p750) = profiles();
        let b = Ball::from_f64(t, 128);
        let x = h_accel(&b, p250).unwrap();
        let y = h_accel(&b, p750).unwrap();
        prop_assert!(x.overlaps(&y), "t={}: {:?} vs {:?}", t, x, y);
        prop_assert!(x.lower_f64() <= 1.0 && x.upper_f64() > 0.0);
    }

    #[test]
    fn sandwich_near_zero(t in 0.0f64..0.5) {
        let b = Ball::from_f64(t, 128);
        let (lo, hi) = h_taylor_bounds(&b).unwrap();
        let v = h_accel(&b, &profiles().1).unwrap();
        prop_assert!(v.upper_f64() >= lo.lower_f64() && v.lower_f64() <= hi.upper_f64(), "t={}", t);
        let d = h_direct_enclosure(&b, 2000).unwrap();
        prop_assert!(d.upper_f64() >= lo.lower_f64() && d.lower_f64() <= hi.upper_f64());
    }
}

fn h0(d1: f64, d2: f64) -> SievePlan {
    SievePlan::new(d1, d2, SmoothingFn::h0()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn bilinearity(a in -2.0f64..2.0, b in -2.0f64..2.0, d2 in 20.0f64..600.0) {
        let g = SmoothingFn::parse("poly:0,1,-1").unwrap();
        let h = SmoothingFn::h0();
        let mix = h.combine(a, &g, b).unwrap();
        let p = |h: &SmoothingFn| SievePlan::new(1.0, d2, h.clone()).unwrap();
        let lhs = m_sum(&p(&mix), &p(&mix)).unwrap();
        let rhs = a * a * m_sum(&p(&h), &p(&h)).unwrap()
            + 2.0 * a * b * m_sum(&p(&h), &p(&g)).unwrap()
            + b * b * m_sum(&p(&g), &p(&g)).unwrap();
        prop_assert!((lhs - rhs).abs() <= 1e-12 * (1.0 + rhs.abs()), "{} vs {}", lhs, rhs);
    }

    #[test]
    fn weights_monotone_for_h0(d1 in 1.0f64..100.0, ratio in 1.01f64..100.0, x in 0.5f64..20000.0, y in 0.5f64..20000.0) {
        let p = h0(d1, d1 * ratio);
        let (lo, hi) = if x < y { (x, y) } else { (y, x) };
        prop_assert!(rho_weight(lo, &p) >= rho_weight(hi, &p));
    }

    #[test]
    fn s_sum_lower_bounds(n in 0u64..3000, d2 in 2.0f64..40.0) {
        let p = h0(1.0, d2);
        let s = s_sum(n, &p).unwrap();
        prop_assert!(s >= 0.0);
        // n coprime to every prime below D2 contributes exactly 1
        let small: Vec<u64> = (2..d2.ceil() as u64).filter(|&q| (2..q).all(|r| q % r != 0)).collect();
        let count = (1..=n).filter(|m| small.iter().all(|q| m % q != 0)).count() as f64;
        prop_assert!(s >= count - 1e-9);
    }
}

#[test]
fn cross_term_stays_bounded() {
    let h = SmoothingFn::h0();
    let g = SmoothingFn::parse("poly:0,1,-1").unwrap();
    for d2 in [1e2, 1e3, 1e4, 3e4] {
        let p = |h: &SmoothingFn| SievePlan::new(1.0, d2, h.clone()).unwrap();
        let l = d2.ln();
        let v = m_sum(&p(&h), &p(&g)).unwrap() * l * l;
        assert!(v.abs() < 2.0, "D2 = {d2}: {v}");
    }
}
