use super::*;
use crate::rint::ComplexBall;

fn h0_plan(d1: f64, d2: f64) -> SievePlan {
    SievePlan::new(d1, d2, SmoothingFn::h0()).unwrap()
}

#[test]
fn plans_and_weights() {
    assert!(SievePlan::new(0.5, 3.0, SmoothingFn::h0()).is_err());
    assert!(SievePlan::new(3.0, 3.0, SmoothingFn::h0()).is_err());
    let p = h0_plan(1.0, 3.0);
    assert_eq!(p.d_max(), 2);
    assert_eq!(h0_plan(1.0, 3.5).d_max(), 3);
    assert_eq!(rho_weight(1.0, &p), 1.0);
    assert_eq!(rho_weight(3.0, &p), 0.0);
    assert!((rho_weight(2.0, &p) - 0.3690702464285425).abs() < 1e-15);
    let q = h0_plan(10.0, 1000.0);
    let mut prev = f64::INFINITY;
    for d in 1..1200 {
        let r = rho_weight(d as f64, &q);
        assert!(r <= prev);
        prev = r;
    }
}

#[test]
fn mobius_table() {
    let t = MobiusTable::new(10_000);
    assert_eq!((t.mu[1], t.mu[2], t.mu[4], t.mu[6], t.mu[30], t.mu[12]), (1, -1, 0, 1, -1, 0));
    for n in 2..=10_000u64 {
        // direct factorization
        let (mut m, mut p, mut mu, mut phi) = (n, 2u64, 1i8, n);
        while p * p <= m {
            if m % p == 0 {
                let mut e = 0;
                while m % p == 0 {
                    m /= p;
                    e += 1;
                }
                mu = if e > 1 { 0 } else { -mu };
                phi = phi / p * (p - 1);
            }
            p += 1;
        }
        if m > 1 {
            mu = -mu;
            phi = phi / m * (m - 1);
        }
        assert_eq!((t.mu[n as usize], t.phi[n as usize]), (mu, phi), "n={n}");
    }
}

#[test]
fn hand_values() {
    assert_eq!(m_sum(&h0_plan(1.0, 2.0), &h0_plan(1.0, 2.0)).unwrap(), 1.0);
    let p = h0_plan(1.0, 3.0);
    let m = m_sum(&p, &p).unwrap();
    assert!((m - 0.6990361769708702).abs() < 1e-15, "{m}");
    assert_eq!(s_sum(1000, &h0_plan(1.0, 2.0)).unwrap(), 1000.0);
    assert_eq!(s_sum(0, &p).unwrap(), 0.0);
    assert_eq!(selberg_main(2), 0.5);
    assert_eq!(selberg_main(3), 0.4);
}

#[test]
fn divisor_form_matches_pairs() {
    let b = SmoothingFn::parse("poly:0,1,-1").unwrap();
    for (d1, d2) in [(1.0, 50.0), (3.0, 120.5), (1.0, 400.0)] {
        let p = h0_plan(d1, d2);
        let q = SievePlan::new(d1, d2, b.clone()).unwrap();
        for (x, y) in [(&p, &p), (&p, &q), (&q, &q)] {
            let fast = m_sum(x, y).unwrap();
            let slow = m_sum_pairs(x, y).unwrap();
            assert!((fast - slow).abs() < 1e-13, "{d1} {d2}: {fast} vs {slow}");
        }
    }
}

// values from an independent numpy evaluation of the same sums
#[test]
fn reference_values() {
    let m = m_sum(&h0_plan(1.0, 1000.0), &h0_plan(1.0, 1000.0)).unwrap();
    assert!((m - 0.13211979497804113).abs() < 1e-14);
    let p = h0_plan(1.0, 50.0);
    let s = s_sum(100_000, &p).unwrap();
    assert!((s - 21812.67662344035).abs() < 1e-8, "{s}");
    let m = m_sum(&p, &p).unwrap();
    assert!((s - m * 1e5).abs() <= 4.0 * 2500.0);
}

#[test]
fn selberg_optimality() {
    for d2 in [10u64, 100, 1000, 10_000] {
        let p = h0_plan(1.0, d2 as f64);
        assert!(m_sum(&p, &p).unwrap() >= selberg_main(d2), "D2 = {d2}");
    }
    let d2 = 10_000.0f64;
    let l = d2.ln();
    let c0 = 1.33258227;
    let pred = 1.0 / l - c0 / (l * l);
    assert!((selberg_main(10_000) - pred).abs() <= 0.3 / (l * l));
}

#[test]
fn limits() {
    let p = h0_plan(1.0, 2e5);
    assert!(matches!(m_sum(&p, &p), Err(crate::Error::LimitTooLarge { .. })));
    let small = SieveLimits { max_d2: 1e5, max_n: 10 };
    assert!(s_sum_with(11, &h0_plan(1.0, 3.0), &small).is_err());
    assert!(m_sum(&h0_plan(1.0, 3.0), &h0_plan(2.0, 3.0)).is_err());
}

#[test]
fn mellin() {
    let p = h0_plan(1.0, 3.0);
    let s = ComplexBall::from_f64(1e-6, 0.0, 128);
    let v = &mellin_f(&s, &p).unwrap() * &s;
    assert!((v.re.mid_f64() - 1.0).abs() < 1e-5);
    let e = h0_plan(1.0, std::f64::consts::E);
    let one = ComplexBall::from_f64(1.0, 0.0, 128);
    let f = mellin_f(&one, &e).unwrap();
    // D2 is the double nearest e, so L is not exactly 1
    assert!((f.re.mid_f64() - (std::f64::consts::E - 1.0)).abs() < 1e-15);
    assert!(mellin_f(&ComplexBall::zero(128), &p).is_err());
    let q = SievePlan::new(1.0, 3.0, SmoothingFn::parse("poly:0,2,-1").unwrap()).unwrap();
    assert!(mellin_f(&one, &q).is_err());
    // |F(i)|^2 for D1 = 2, D2 = 50: D1^s/s plus a numerical integral over [D1, D2]
    let g = h0_plan(2.0, 50.0);
    let f = mellin_f(&ComplexBall::from_f64(0.0, 1.0, 128), &g).unwrap();
    assert!((f.norm_sqr().mid_f64() - 0.38548093805216905).abs() < 1e-15);
}

#[test]
fn predictions() {
    let p = h0_plan(1.0, 1e4);
    let l = 1e4f64.ln();
    assert_eq!(predict(&p, PredictOrder::Main, KAPPA_MID), 1.0 / l);
    assert_eq!(predict(&p, PredictOrder::Second, 0.5), 1.0 / l - 0.5 / (l * l));
    let q = h0_plan(10.0, 1e4);
    let lq = 1e3f64.ln();
    assert!((predict(&q, PredictOrder::Second, 0.5) - (1.0 / lq - 1.0 / (lq * lq))).abs() < 1e-15);
    let g = SievePlan::new(1.0, 1e4, SmoothingFn::parse("poly:0,2,-1").unwrap()).unwrap();
    assert!(predict(&g, PredictOrder::Main, KAPPA_MID) >= 1.0 / l);
}

#[test]
fn csv_output() {
    let rows = vec![sieve_row(&h0_plan(1.0, 3.0), Some(10), &SieveLimits::default()).unwrap()];
    let mut buf = Vec::new();
    write_csv(&rows, &mut buf).unwrap();
    let text = String::from_utf8(buf).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("D1,D2,M,prediction_main,prediction_second,residual_times_l2,N,S"));
    assert!(lines.next().unwrap().starts_with("1.0,3.0,0.699036176970870"));
}
