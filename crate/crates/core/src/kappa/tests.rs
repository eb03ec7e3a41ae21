use super::*;
use crate::hproduct::truncation_profile;

const P: u32 = DEFAULT_PREC;

fn b(v: f64) -> Ball {
    Ball::from_f64(v, P)
}

// H(t) / (|zeta(1+it)|^2 t^4), independent 30-digit evaluations
const INTEGRAND: [(f64, f64); 4] = [
    (0.2, 23.526754323395639),
    (0.25, 14.5778197994983),
    (1.0, 0.42790570040552944),
    (10.0, 2.67558887372495e-5),
];

#[test]
fn integrand_values() {
    let prof = truncation_profile(750).unwrap();
    for (t, v) in INTEGRAND {
        let got = integrand(&b(t), &prof).unwrap();
        assert!(got.clone().add_error(v * 1e-13).contains_f64(v), "t={t}: {got:?}");
        assert!(got.rad() <= v * 1e-7);
    }
    let other = truncation_profile(250).unwrap();
    assert!(integrand(&b(1.0), &prof).unwrap().overlaps(&integrand(&b(1.0), &other).unwrap()));
    assert!(integrand(&b(0.0), &prof).is_err());
}

#[test]
fn integrand_nonnegative_on_cells() {
    let prof = truncation_profile(250).unwrap();
    for (lo, hi) in [(0.01, 0.0101), (3.0, 3.01), (700.0, 700.01), (7499.99, 7500.0)] {
        let m = (lo + hi) / 2.0;
        for (a, b) in [(lo, m), (m, hi)] {
            let v = integrand(&Ball::from_f64_endpoints(a, b, P), &prof).unwrap();
            assert!(v.lower_f64() >= 0.0 && v.upper_f64() > 0.0, "[{a}, {b}]: {v:?}");
        }
    }
}

#[test]
fn near_zero() {
    let c = near_zero_coefficient();
    // c2 + gamma_0^2 + 2 gamma_1
    assert!((c.mid_f64() - (1.3856045 + 0.5772156649f64.powi(2) - 2.0 * 0.0728158455)).abs() < 3e-5);
    let v = near_zero_term(&Ball::from_ratio(1, 500, P)).unwrap();
    assert!((v.mid_f64() - 0.002 * c.mid_f64()).abs() < 1e-12);
    assert!(v.rad() >= 8e-9 && v.rad() < 1e-8 + 1e-7);
    assert!(near_zero_term(&b(0.6)).is_err());
    assert!(near_zero_term(&b(0.0)).is_err());
    let small = near_zero_term(&b(1e-9)).unwrap();
    assert!(small.abs_upper_f64() < 1e-8);
    let mut prev = f64::NEG_INFINITY;
    for e in [1e-4, 1e-3, 3e-3, 1e-2] {
        let m = near_zero_term(&b(e)).unwrap().mid_f64();
        assert!(m > prev);
        prev = m;
    }
}

#[test]
fn tail() {
    assert_eq!(tail_constant(), Rational::from((682, 10)));
    let v = tail_term(&b(7500.0)).unwrap();
    assert!(v.lower_f64() <= 0.0 && v.contains_f64(0.0));
    assert!((v.upper_f64() - 1.2478e-7).abs() < 1e-10, "{v:?}");
    let w = tail_term(&b(15000.0)).unwrap();
    assert!(w.upper_f64() < v.upper_f64() / 8.0 * 1.2);
    assert!(tail_term(&b(1.5)).is_err());
}

#[test]
fn inv_zeta_margin_small_range() {
    let q = |n: i64, d: i64| Rational::from((n, d));
    let rep = verify_inv_zeta(&q(2, 1), &q(12, 1), 30).unwrap();
    assert!(rep.positive);
    assert!(verify_inv_zeta(&q(1, 1), &q(3, 1), 30).is_err());
    // the constant is tight near t = 2
    let f = InvZetaMargin::new(P);
    let v = f.eval(&b(2.0)).unwrap();
    assert!(v.lower_f64() > 0.0 && v.upper_f64() < 1e-2, "{v:?}");
}

#[test]
fn segment_short() {
    let mut plan = KappaPlan::default();
    plan.quad.order = 8;
    let q = |s: &str| parse_rational(s).unwrap();
    let s = segment(&q("0.5"), &q("0.6"), 750, 1e-8, &plan).unwrap();
    assert!(s.converged);
    assert!(s.value.width_f64() < 2e-8);
    // crude midpoint rule check
    let prof = truncation_profile(750).unwrap();
    let approx: f64 = (0..100)
        .map(|i| integrand(&b(0.5 + 0.001 * (i as f64 + 0.5)), &prof).unwrap().mid_f64() * 0.001)
        .sum();
    assert!((s.value.mid_f64() - approx).abs() < 1e-5, "{:?} vs {approx}", s.value);
}
