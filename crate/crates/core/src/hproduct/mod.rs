//! The Euler product `H(t) = prod_p h_p(t)` with
//! `h_p(t) = 1 - 2 p^-2 (1 - cos(t log p)) / (1 - 2 p^-1 cos(t log p) + p^-2)`,
//! evaluated directly or through the zeta-accelerated product `H_C(t)`.

mod poly;

use std::sync::Arc;

use rug::Rational;
use serde::Serialize;

pub use poly::{build_accel_polys, eval_rational, AccelPolys, QSummary, XyPoly};

use crate::error::{domain, Result};
use crate::primetools::{c2_default, primes_up_to, tail_inv_p4_bound};
use crate::rint::{Ball, ComplexBall, Jet, Tm, DEFAULT_PREC};
use crate::zetafn::{zeta, zeta_line_jet, zeta_line_tm};

/// Smallest admissible cutoff for the truncation certificate.
pub const MIN_CUTOFF: u64 = 67;

#[derive(Clone, Debug)]
struct PrimeData {
    log_p: Ball,
    one_minus_x_sq: Ball,
    two_x: Ball,
    two_x2: Ball,
    two_x3: Ball,
    one_plus_x4: Ball,
    one_plus_x6: Ball,
    /// `(1 - x^3)^2 / (1 - x^2)^2`
    k: Ball,
}

impl PrimeData {
    fn new(p: u32, prec: u32) -> PrimeData {
        let x = Ball::from_ratio(1, p as i64, prec);
        let x2 = x.sqr();
        let x3 = &x2 * &x;
        let one = Ball::one(prec);
        let k = (&(&one - &x3) * &(&one - &x2).recip().expect("p >= 2")).sqr();
        PrimeData {
            log_p: Ball::from_u64(p as u64, prec).log().expect("p >= 2"),
            one_minus_x_sq: (&one - &x).sqr(),
            two_x: x.mul_2si(1),
            two_x2: x2.mul_2si(1),
            two_x3: x3.mul_2si(1),
            one_plus_x4: &one + &x2.sqr(),
            one_plus_x6: &one + &x3.sqr(),
            k,
        }
    }

    /// `F_4(1/p, p^{it})` as a jet, from the jet of `cos(t log p)`.
    fn f4_jet(&self, c: &Jet) -> Result<Jet> {
        let prec = c.c[0].prec();
        let one = Ball::one(prec);
        let u = c.negated().add_const(&one);
        let den1 = u.scale(&self.two_x).add_const(&self.one_minus_x_sq);
        let h = u.div(&den1)?.scale(&self.two_x2.negated()).add_const(&one);
        let a = c.scale(&self.two_x2.negated()).add_const(&self.one_plus_x4);
        let c2 = c.sqr().scale(&Ball::from_i64(2, prec)).add_const(&one.negated());
        let b = c2.scale(&self.two_x3.negated()).add_const(&self.one_plus_x6);
        let e = c.scale(&self.two_x3.negated()).add_const(&self.one_plus_x6);
        let num = h.mul(&a).mul(&b).scale(&self.k);
        num.div(&e.sqr())
    }

    fn f4_tm(&self, c: &Tm) -> Result<Tm> {
        let prec = c.prec();
        let one = Ball::one(prec);
        let u = c.negated().add_const(&one);
        let den1 = u.scale(&self.two_x).add_const(&self.one_minus_x_sq);
        let h = u.div(&den1)?.scale(&self.two_x2.negated()).add_const(&one);
        let a = c.scale(&self.two_x2.negated()).add_const(&self.one_plus_x4);
        let c2 = c.sqr().scale(&Ball::from_i64(2, prec)).add_const(&one.negated());
        let b = c2.scale(&self.two_x3.negated()).add_const(&self.one_plus_x6);
        let e = c.scale(&self.two_x3.negated()).add_const(&self.one_plus_x6);
        let num = h.mul(&a).mul(&b).scale(&self.k);
        num.div(&e.sqr())
    }
}

/// Truncation data for `H_C`, with `|H_C(t) - H(t)| <= err` for real `t`.
#[derive(Clone, Debug, Serialize)]
pub struct TruncationProfile {
    #[serde(rename = "C")]
    pub c: u64,
    #[serde(rename = "D_of_C")]
    pub d_of_c: Ball,
    pub delta: Ball,
    pub rho_of_c: Ball,
    pub err: Ball,
    #[serde(skip)]
    primes: Arc<Vec<PrimeData>>,
    /// `zeta(3)^2 / zeta(2)^2`
    #[serde(skip)]
    zeta_const: Ball,
}

impl TruncationProfile {
    pub fn prec(&self) -> u32 {
        self.d_of_c.prec()
    }

    pub fn prime_count(&self) -> usize {
        self.primes.len()
    }
}

/// `D(C) = Q(1/C) / ((1-1/C)^2 (1-1/C^2)^2 (1-1/C^3)^4)`, exactly.
pub fn d_of_c_exact(polys: &AccelPolys, c: u64) -> Rational {
    let x = Rational::from((1, c));
    let one = Rational::from(1);
    let q = eval_rational(&polys.q, &x);
    let a = Rational::from(&one - &x).square();
    let b = Rational::from(&one - Rational::from(x.square_ref())).square();
    let x3 = Rational::from(x.square_ref()) * &x;
    let d = Rational::from(&one - x3).square().square();
    q / (a * b * d)
}

pub fn truncation_profile(c: u64) -> Result<TruncationProfile> {
    truncation_profile_prec(c, DEFAULT_PREC)
}

pub fn truncation_profile_prec(c: u64, prec: u32) -> Result<TruncationProfile> {
    if c < MIN_CUTOFF {
        return domain(format!("cutoff {c} below {MIN_CUTOFF}"));
    }
    let polys = build_accel_polys();
    let d_exact = d_of_c_exact(&polys, c);
    let c4 = Rational::from(c).square().square();
    let delta_exact = Rational::from(&d_exact / &c4);
    let d_of_c = Ball::from_rational(&d_exact, prec);
    let delta = Ball::from_rational(&delta_exact, prec);
    let one = Ball::one(prec);
    let rho = (&d_of_c * &tail_inv_p4_bound(c, prec)?).div_ball(&(&one - &delta))?;
    let err = &rho.exp() - &one;
    let table = primes_up_to(c)?;
    let primes = table.iter().map(|p| PrimeData::new(p as u32, prec)).collect();
    let z2 = zeta(&ComplexBall::from_real(Ball::from_i64(2, prec)))?.re;
    let z3 = zeta(&ComplexBall::from_real(Ball::from_i64(3, prec)))?.re;
    let zeta_const = (&z3 * &z2.recip()?).sqr();
    Ok(TruncationProfile { c, d_of_c, delta, rho_of_c: rho, err, primes: Arc::new(primes), zeta_const })
}

/// One Euler factor `h_p(t)`; real, in `(0, 1]`.
pub fn h_factor(p: u64, t: &Ball) -> Ball {
    let prec = t.prec();
    let x = Ball::from_ratio(1, p as i64, prec);
    let lp = Ball::from_u64(p, prec).log().expect("p >= 2");
    let u = &Ball::one(prec) - &(t * &lp).cos();
    // g(u) = 2x^2 u / ((1-x)^2 + 2xu) is increasing in u on [0, 2]
    let lo = u.lower_f64().max(0.0);
    let hi = u.upper_f64().min(2.0);
    let g = |v: &Ball| -> Ball {
        let num = (&x.sqr() * v).mul_2si(1);
        let den = &(&Ball::one(prec) - &x).sqr() + &(&x * v).mul_2si(1);
        num.div_ball(&den).expect("denominator >= (1-x)^2 > 0")
    };
    let g = if u.rad() == 0.0 {
        g(&u)
    } else {
        let glo = g(&Ball::from_f64(lo, prec));
        let ghi = g(&Ball::from_f64(hi, prec));
        Ball::from_endpoints(&glo.lower(), &ghi.upper(), prec)
    };
    &Ball::one(prec) - &g
}

/// `prod_{p <= P} h_p(t)`, no tail certificate. Omitted factors lie in
/// `(0, 1]`, so this is an upper bound for `H(t)`.
pub fn h_direct(t: &Ball, p_max: u64) -> Result<Ball> {
    if p_max < 2 {
        return domain("P must be at least 2");
    }
    let t = t.abs();
    let table = primes_up_to(p_max)?;
    let mut acc = Ball::one(t.prec());
    for p in table.iter() {
        acc = &acc * &h_factor(p, &t);
    }
    Ok(acc)
}

/// `h_direct` widened below by the omitted factors: each satisfies
/// `h_p >= 1 - 4/p^2`, hence `prod_{p > P} h_p >= exp(-4 / (P (1 - 4/(P+1)^2)))`.
pub fn h_direct_enclosure(t: &Ball, p_max: u64) -> Result<Ball> {
    if p_max < 3 {
        return domain("P must be at least 3");
    }
    let hd = h_direct(t, p_max)?;
    let prec = hd.prec();
    let pb = Ball::from_u64(p_max, prec);
    let q = Ball::from_u64(p_max + 1, prec).sqr();
    let shrink = &Ball::one(prec) - &Ball::from_i64(4, prec).div_ball(&q)?;
    let tail = Ball::from_i64(-4, prec).div_ball(&(&pb * &shrink))?.exp();
    let lo = (&hd * &tail).lower();
    Ok(Ball::from_endpoints(&lo, &hd.upper(), prec))
}

/// Jet of the zeta prefactor
/// `|zeta(2+it)|^2 |zeta(3+2it)|^2 zeta(3)^2 / (zeta(2)^2 |zeta(3+it)|^4)` at `t0`.
pub fn zeta_factor_jet(t0: &Ball, order: usize, profile: &TruncationProfile) -> Result<Jet> {
    let tol = crate::rint::mag::pow2(-(t0.prec() as i64) + 10);
    let z2 = zeta_line_jet(2, 1, t0, order, tol)?.norm_sqr();
    let z32 = zeta_line_jet(3, 2, t0, order, tol)?.norm_sqr();
    let z31 = zeta_line_jet(3, 1, t0, order, tol)?.norm_sqr();
    z2.mul(&z32).div(&z31.sqr()).map(|j| j.scale(&profile.zeta_const))
}

/// Jet of `prod_{p <= C} F_4(1/p, p^{it})` at `t0`.
pub fn euler_part_jet(t0: &Ball, order: usize, profile: &TruncationProfile) -> Result<Jet> {
    let prec = t0.prec();
    let mut acc = Jet::constant(Ball::one(prec), order);
    for pd in profile.primes.iter() {
        let (c, _) = Jet::cos_sin_linear(&(t0 * &pd.log_p), &pd.log_p, order);
        acc = acc.mul(&pd.f4_jet(&c)?);
    }
    Ok(acc)
}

/// Jet of `H_C(t)` at `t0` (no truncation error included).
pub fn h_trunc_jet(t0: &Ball, order: usize, profile: &TruncationProfile) -> Result<Jet> {
    Ok(zeta_factor_jet(t0, order, profile)?.mul(&euler_part_jet(t0, order, profile)?))
}

/// Taylor model of `H_C(m + e)` for `|e| <= r` (no truncation error included).
pub fn h_trunc_tm(m: &Ball, r: f64, order: usize, profile: &TruncationProfile, tol: f64) -> Result<Tm> {
    let z2 = zeta_line_tm(2, 1, m, r, order, tol)?.norm_sqr();
    let z32 = zeta_line_tm(3, 2, m, r, order, tol)?.norm_sqr();
    let z31 = zeta_line_tm(3, 1, m, r, order, tol)?.norm_sqr();
    let mut acc = z2.mul(&z32).div(&z31.sqr())?.scale(&profile.zeta_const);
    for pd in profile.primes.iter() {
        let (c, _) = Tm::cos_sin_linear(&(m * &pd.log_p), &pd.log_p, order, r);
        acc = acc.mul(&pd.f4_tm(&c)?);
    }
    Ok(acc)
}

/// Ball containing `H(t)`: `H_C(t)` widened by the truncation certificate.
pub fn h_accel(t: &Ball, profile: &TruncationProfile) -> Result<Ball> {
    let t = t.abs();
    let v = h_trunc_jet(&t, 0, profile)?.c.swap_remove(0);
    Ok(v.add_error(profile.err.upper_f64()))
}

/// `(1 - c2 t^2, 1 - c2 t^2 + 2.56 t^4)`, valid for `|t| <= 1/2`.
pub fn h_taylor_bounds(t: &Ball) -> Result<(Ball, Ball)> {
    if t.abs().upper_f64() > 0.5 {
        return domain("Taylor sandwich needs |t| <= 1/2");
    }
    let prec = t.prec();
    let t2 = t.sqr();
    let lo = &Ball::one(prec) - &(&c2_default().with_prec(prec) * &t2);
    let hi = &lo + &(&Ball::from_decimal("2.56", prec)? * &t2.sqr());
    Ok((lo, hi))
}

#[cfg(test)]
mod tests;
