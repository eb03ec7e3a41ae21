use super::*;

const P: u32 = DEFAULT_PREC;

// Independent 30-digit evaluations (product to 2e5, tail below 1e-16).
const H_025: f64 = 0.921829869646522;
const H_04: f64 = 0.826664332722409;
const H_1: f64 = 0.512612315800893;
const H_10: f64 = 0.520389084265315;

fn b(v: f64) -> Ball {
    Ball::from_f64(v, P)
}

#[test]
fn factor_values() {
    for p in [2u64, 3, 101] {
        assert!(h_factor(p, &b(0.0)).contains_f64(1.0));
    }
    let t = &Ball::pi(P) * &Ball::log2_const(P).recip().unwrap();
    let v = h_factor(2, &t);
    assert!(v.contains_rational(&Rational::from((5, 9))), "{v:?}");
    for x in [0.3, 1.0, 17.5, 1000.0] {
        let v = h_factor(7, &b(x));
        assert!(v.lower_f64() > 0.0 && v.upper_f64() <= 1.0);
    }
    // wide input keeps the enclosure in (0, 1]
    let w = h_factor(2, &Ball::from_f64_rad(4.0, 2.0, P));
    assert!(w.lower_f64() > 0.0 && w.upper_f64() <= 1.0 + 1e-15);
}

#[test]
fn profile_table() {
    let want = [(750u64, 3.3468e-9), (3000, 4.1011e-11), (250, 1.153e-7)];
    for (c, printed) in want {
        let pr = truncation_profile(c).unwrap();
        assert!(pr.err.upper_f64() <= printed, "C={c}: {:?}", pr.err);
        assert!(pr.err.lower_f64() >= 0.0);
        assert!(pr.delta.upper_f64() < 1.0);
        assert!(pr.d_of_c.lower_f64() >= 20.0);
    }
    // at C = 200 the certificate is about 2.3827e-7
    let pr = truncation_profile(200).unwrap();
    assert!((pr.err.mid_f64() / 2.382718723e-7 - 1.0).abs() < 1e-8);
    assert!(truncation_profile(66).is_err());
}

#[test]
fn d_decreases_to_twenty() {
    let polys = build_accel_polys();
    let mut prev = d_of_c_exact(&polys, 67);
    for c in [100u64, 250, 750, 3000, 1_000_000] {
        let d = d_of_c_exact(&polys, c);
        assert!(d < prev);
        prev = d;
    }
    assert!(prev >= 20 && prev <= Rational::from((20001, 1000)));
    let d4 = d_of_c_exact(&polys, 4) / Rational::from(256);
    assert!(d4 < 1);
}

#[test]
fn direct_product() {
    assert!(h_direct(&b(0.0), 1000).unwrap().contains_f64(1.0));
    assert_eq!(h_direct(&b(2.5), 500).unwrap(), h_direct(&b(-2.5), 500).unwrap());
    let prof = truncation_profile(750).unwrap();
    let acc = h_accel(&b(1.0), &prof).unwrap();
    let hd = h_direct(&b(1.0), 1_000_000).unwrap();
    assert!((hd.mid_f64() - acc.mid_f64()).abs() < 1e-4);
    let enc = h_direct_enclosure(&b(1.0), 1_000_000).unwrap();
    assert!(enc.overlaps(&acc));
    assert!(enc.contains_f64(H_1));
}

#[test]
fn accelerated_values() {
    let prof = truncation_profile(750).unwrap();
    assert!(h_accel(&b(0.0), &prof).unwrap().contains_f64(1.0));
    for (t, h) in [(0.25, H_025), (0.4, H_04), (1.0, H_1), (10.0, H_10)] {
        let v = h_accel(&b(t), &prof).unwrap();
        assert!(v.clone().add_error(1e-14).contains_f64(h), "t={t}: {v:?}");
        assert!(v.rad() < 1e-8);
    }
    assert_eq!(h_accel(&b(3.0), &prof).unwrap(), h_accel(&b(-3.0), &prof).unwrap());
}

#[test]
fn sandwich() {
    let (lo, hi) = h_taylor_bounds(&b(0.0)).unwrap();
    assert!(lo.contains_f64(1.0) && hi.contains_f64(1.0));
    let (lo, hi) = h_taylor_bounds(&b(0.5)).unwrap();
    assert!((lo.mid_f64() - (1.0 - 1.3856045 / 4.0)).abs() < 1e-5);
    assert!((&hi - &lo).contains_f64(2.56 / 16.0));
    assert!(h_taylor_bounds(&b(0.6)).is_err());
    let prof = truncation_profile(750).unwrap();
    let t = b(0.4);
    let v = h_accel(&t, &prof).unwrap();
    let (lo, hi) = h_taylor_bounds(&t).unwrap();
    assert!(v.upper_f64() >= lo.lower_f64() && v.lower_f64() <= hi.upper_f64());
    let v = h_accel(&b(0.25), &prof).unwrap();
    let (lo, hi) = h_taylor_bounds(&b(0.25)).unwrap();
    assert!(v.lower_f64() + v.rad() >= lo.lower_f64() && v.upper_f64() - v.rad() <= hi.upper_f64());
}

#[test]
fn jet_matches_finite_difference() {
    let prof = truncation_profile(250).unwrap();
    let j = h_trunc_jet(&b(2.0), 2, &prof).unwrap();
    let h = 1e-6;
    let fp = h_trunc_jet(&b(2.0 + h), 0, &prof).unwrap().c[0].mid_f64();
    let fm = h_trunc_jet(&b(2.0 - h), 0, &prof).unwrap().c[0].mid_f64();
    let d = (fp - fm) / (2.0 * h);
    assert!((j.c[1].mid_f64() - d).abs() < 1e-8, "{:?} vs {d}", j.c[1]);
}
