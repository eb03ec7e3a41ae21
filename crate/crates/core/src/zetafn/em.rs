//! Euler-Maclaurin evaluation of `zeta(s)` for `Re(s) >= 1/2` away from the pole,
//! returning Taylor jets along a vertical line.
//!
//! With `N` terms and `M` Bernoulli corrections,
//!
//! ```text
//! zeta(s) = sum_{n<N} n^-s + N^{1-s}/(s-1) + N^-s/2
//!         + sum_{j=1}^{M} B_{2j}/(2j)! (s)_{2j-1} N^{-s-2j+1} + R_M(s),
//! |R_M(s)| <= |B_{2M}|/(2M)! |(s)_{2M}| / ((sigma+2M-1) N^{sigma+2M-1}).
//! ```
//!
//! Jet coefficients of `R_M` are bounded by Cauchy estimates on a disk.

use crate::error::{Error, Result};
use crate::rint::{mag, taylor_term_upper, Ball, CJet, CTm, ComplexBall};

use super::tables::{bernoulli_over_factorial, bernoulli_ratio_upper, logs, spf};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EmPlan {
    pub n: u64,
    pub m: usize,
}

/// Upper bound on `|R_M(s)|` for `Re(s) >= sigma_lo`, `|s| <= s_abs`.
pub fn remainder_bound(sigma_lo: f64, s_abs: f64, plan: EmPlan) -> f64 {
    let m2 = 2 * plan.m;
    let expo = (sigma_lo + (m2 as f64 - 1.0)).next_down();
    if !(expo > 0.0) {
        return f64::INFINITY;
    }
    // |(s)_{2M}| N^{-2M} as a product of ratios to stay in range.
    let n = plan.n as f64;
    let mut prod = bernoulli_ratio_upper()[plan.m];
    for i in 0..m2 {
        prod = mag::mul(prod, mag::div(mag::add(s_abs, i as f64), n));
    }
    let npow = mag::powf_upper(n, 1.0 - sigma_lo);
    mag::div(mag::mul(prod, npow), expo)
}

/// Largest number of Bernoulli corrections a plan may use.
pub const PLAN_MAX_M: usize = 40;

/// Smallest plan (in `N`) whose remainder is below `tol`.
pub fn plan_for(sigma_lo: f64, s_abs: f64, tol: f64) -> EmPlan {
    let mut n = ((s_abs / (2.0 * std::f64::consts::PI)).ceil() as u64).max(4);
    loop {
        let mut best: Option<(f64, usize)> = None;
        for m in 1..=PLAN_MAX_M {
            let r = remainder_bound(sigma_lo, s_abs, EmPlan { n, m });
            if r <= tol {
                return EmPlan { n, m };
            }
            match best {
                Some((b, _)) if r >= b => {
                    if r > 1e6 * b {
                        break;
                    }
                }
                _ => best = Some((r, m)),
            }
        }
        n = n + n / 4 + 1;
    }
}

/// Jet of `e -> zeta(s0 + i k e)` for real `e`, to the given order.
///
/// `s0` may be a genuine ball: the coefficients then enclose the Taylor
/// coefficients at every point of the ball.
pub fn zeta_jet(s0: &ComplexBall, k: i64, order: usize, plan: EmPlan) -> Result<CJet> {
    let prec = s0.prec();
    let one = Ball::one(prec);
    let s_minus_1 = ComplexBall::new(&s0.re - &one, s0.im.clone());
    if s_minus_1.re.contains_zero() && s_minus_1.im.contains_zero() {
        return Err(Error::PoleAtOne);
    }
    let sigma_lo = s0.re.lower_f64();
    if sigma_lo < 0.5 {
        return crate::error::domain("Euler-Maclaurin evaluation needs Re(s) >= 1/2");
    }
    let n = plan.n as usize;
    assert!(n >= 2, "N must be at least 2");
    let spf = spf(n);
    let logs = logs(n, prec);
    let kb = Ball::from_i64(k, prec);

    // Dirichlet polynomial: sum_{n<N} n^{-s0} (log n)^j / j!.
    let mut v: Vec<ComplexBall> = Vec::with_capacity(n);
    v.push(ComplexBall::zero(prec));
    v.push(ComplexBall::one(prec));
    let mut sums = vec![ComplexBall::zero(prec); order + 1];
    sums[0] = ComplexBall::one(prec);
    for i in 2..n {
        let p = spf[i] as usize;
        let vi = if p == i {
            s0.mul_real(&logs[i]).negated().exp()
        } else {
            &v[p] * &v[i / p]
        };
        let mut l = Ball::one(prec);
        for (j, acc) in sums.iter_mut().enumerate() {
            if j == 0 {
                *acc = &*acc + &vi;
            } else {
                l = (&l * &logs[i]).div_i64(j as i64);
                *acc = &*acc + &vi.mul_real(&l);
            }
        }
        v.push(vi);
    }
    // (-i k)^j scaling for the direction of the line.
    let mut dirj = ComplexBall::one(prec);
    let step = ComplexBall::new(Ball::zero(prec), kb.negated());
    for (j, c) in sums.iter_mut().enumerate() {
        if j > 0 {
            dirj = &dirj * &step;
        }
        *c = &*c * &dirj;
    }
    let mut total = CJet { c: sums };

    // N^{-s} as a jet.
    let nb = Ball::from_u64(plan.n, prec);
    let log_n = nb.log()?;
    let n_pow = s0.mul_real(&log_n).negated().exp();
    let mut a = CJet::constant(n_pow.clone(), order);
    {
        let mut l = Ball::one(prec);
        let mut dirj = ComplexBall::one(prec);
        for j in 1..=order {
            l = (&l * &log_n).div_i64(j as i64);
            dirj = &dirj * &step;
            a.c[j] = &n_pow * &dirj.mul_real(&l);
        }
    }

    // s(e) = s0 + i k e
    let mut s_jet = CJet::constant(s0.clone(), order);
    if order >= 1 {
        s_jet.c[1] = ComplexBall::new(Ball::zero(prec), kb.clone());
    }
    let mut sm1 = s_jet.clone();
    sm1.c[0] = s_minus_1;
    let pole = sm1.recip().map_err(|_| Error::PoleAtOne)?;

    // N / (s - 1) + 1/2 + sum_j B_2j/(2j)! (s)_{2j-1} N^{1-2j}
    let mut bracket = pole.scale_real(&nb);
    bracket.c[0] = &bracket.c[0] + &ComplexBall::from_real(Ball::from_ratio(1, 2, prec));
    // (s)_{2j-1} N^{1-2j}, built from ratios so magnitudes stay moderate
    let n_inv = nb.recip()?;
    let mut poch = s_jet.scale_real(&n_inv);
    let s_over_n = s_jet.scale_real(&n_inv);
    for j in 1..=plan.m {
        let coef = Ball::from_rational(&bernoulli_over_factorial(j), prec);
        bracket.add_assign(&poch.scale_real(&coef));
        if j < plan.m {
            let f1 = shift(&s_over_n, &Ball::from_i64((2 * j - 1) as i64, prec).mul_ball(&n_inv));
            let f2 = shift(&s_over_n, &Ball::from_i64((2 * j) as i64, prec).mul_ball(&n_inv));
            poch = poch.mul(&f1).mul(&f2);
        }
    }
    total.add_assign(&bracket.mul(&a));

    // Remainder.
    let s_abs = s0.abs_upper_f64();
    let r0 = remainder_bound(sigma_lo, s_abs, plan);
    let kabs = k.unsigned_abs() as f64;
    let ln_n = (plan.n as f64).ln();
    for (l, c) in total.c.iter_mut().enumerate() {
        let bound = if l == 0 {
            r0
        } else {
            let cap = sigma_lo + 2.0 * plan.m as f64 - 1.5;
            let rho = (l as f64 / ln_n).min(cap).max(1e-3);
            let r = remainder_bound(sigma_lo - rho, s_abs + rho, plan);
            let mut b = r;
            for _ in 0..l {
                b = mag::mul(b, mag::div(kabs, rho.next_down()));
            }
            b
        };
        c.re = c.re.clone().add_error(bound);
        c.im = c.im.clone().add_error(bound);
    }
    Ok(total)
}

fn shift(s: &CJet, d: &Ball) -> CJet {
    let mut out = s.clone();
    out.c[0].re = &out.c[0].re + d;
    out
}

/// `zeta(s)` with an automatically chosen plan of absolute accuracy about `tol`.
pub fn zeta_tol(s: &ComplexBall, tol: f64) -> Result<ComplexBall> {
    let plan = plan_for(s.re.lower_f64(), s.abs_upper_f64(), tol);
    Ok(zeta_jet(s, 0, 0, plan)?.c.swap_remove(0))
}

/// `zeta(s)` near full working precision.
pub fn zeta(s: &ComplexBall) -> Result<ComplexBall> {
    let tol = mag::pow2(-(s.prec() as i64) + 4);
    zeta_tol(s, tol)
}

/// Jet of `t -> zeta(sigma + i k t)` around the real ball `t0`.
pub fn zeta_line_jet(sigma: i64, k: i64, t0: &Ball, order: usize, tol: f64) -> Result<CJet> {
    let prec = t0.prec();
    let s0 = ComplexBall::new(Ball::from_i64(sigma, prec), t0.mul_i64(k));
    // Cauchy radii reach about 1/2 in sigma; size the plan for that disk.
    let plan = plan_for((sigma as f64 - 0.5).max(0.5), s0.abs_upper_f64() + 1.0, tol);
    zeta_jet(&s0, k, order, plan)
}

/// Plan minimizing the work of a Taylor model evaluation: about `N` terms in
/// the Dirichlet sum against `weight` per Bernoulli correction.
pub fn plan_for_cost(sigma_lo: f64, s_abs: f64, tol: f64, weight: f64) -> EmPlan {
    let first = plan_for(sigma_lo, s_abs, tol);
    let mut best = first;
    let cost = |p: EmPlan| p.n as f64 + weight * p.m as f64;
    let mut n = first.n;
    while (n as f64) < cost(best) {
        let m = (1..=PLAN_MAX_M).find(|&m| remainder_bound(sigma_lo, s_abs, EmPlan { n, m }) <= tol);
        if let Some(m) = m {
            let p = EmPlan { n, m };
            if cost(p) < cost(best) {
                best = p;
            }
        }
        n = n + n / 8 + 1;
    }
    best
}

/// Taylor model of `e -> zeta(sigma + i k (m + e))` for real `|e| <= r`.
pub fn zeta_line_tm(sigma: i64, k: i64, m: &Ball, r: f64, order: usize, tol: f64) -> Result<CTm> {
    let prec = m.prec();
    let s0 = ComplexBall::new(Ball::from_i64(sigma, prec), m.mul_i64(k));
    let kabs = k.unsigned_abs() as f64;
    let s_abs = mag::add(s0.abs_upper_f64(), mag::mul(kabs, r));
    let plan = plan_for_cost(sigma as f64, s_abs, tol, 4.0 * order as f64);
    zeta_tm(&s0, k, r, order, plan)
}

fn zeta_tm(s0: &ComplexBall, k: i64, r: f64, order: usize, plan: EmPlan) -> Result<CTm> {
    let prec = s0.prec();
    let sigma = s0.re.lower_f64();
    if sigma < 0.5 {
        return crate::error::domain("Euler-Maclaurin evaluation needs Re(s) >= 1/2");
    }
    let kabs = k.unsigned_abs() as f64;
    let kr = mag::mul(kabs, r);
    let s_abs = mag::add(s0.abs_upper_f64(), kr);
    let n = plan.n as usize;
    let spf = spf(n);
    let logs = logs(n, prec);
    let kb = Ball::from_i64(k, prec);

    // sum_{n<N} n^{-s0} exp(-i k e log n); each exponential truncated after
    // `order` terms leaves at most (|k| r log n)^{K+1} / (K+1)!.
    let mut v: Vec<ComplexBall> = Vec::with_capacity(n);
    v.push(ComplexBall::zero(prec));
    v.push(ComplexBall::one(prec));
    let mut sums = vec![ComplexBall::zero(prec); order + 1];
    sums[0] = ComplexBall::one(prec);
    let mut err = 0.0f64;
    for i in 2..n {
        let p = spf[i] as usize;
        let vi = if p == i {
            s0.mul_real(&logs[i]).negated().exp()
        } else {
            &v[p] * &v[i / p]
        };
        let mut l = Ball::one(prec);
        for (j, acc) in sums.iter_mut().enumerate() {
            if j == 0 {
                *acc = &*acc + &vi;
            } else {
                l = (&l * &logs[i]).div_i64(j as i64);
                *acc = &*acc + &vi.mul_real(&l);
            }
        }
        let x = mag::mul(kr, logs[i].abs_upper_f64());
        err = mag::add(err, mag::mul(vi.abs_upper_f64(), taylor_term_upper(x, order + 1)));
        v.push(vi);
    }
    let step = ComplexBall::new(Ball::zero(prec), kb.negated());
    let mut dirj = ComplexBall::one(prec);
    for (j, c) in sums.iter_mut().enumerate() {
        if j > 0 {
            dirj = &dirj * &step;
        }
        *c = &*c * &dirj;
    }
    let mut total = CTm { c: sums, r, err };

    // N^{-s}
    let nb = Ball::from_u64(plan.n, prec);
    let log_n = nb.log()?;
    let n_pow = s0.mul_real(&log_n).negated().exp();
    let a = CTm::exp_i_linear(&n_pow, &(&kb * &log_n).negated(), order, r);

    // s(e) = s0 + i k e, exact linear model
    let mut s_tm = CTm::zero(order, prec, r);
    s_tm.c[0] = s0.clone();
    if order >= 1 {
        s_tm.c[1] = ComplexBall::new(Ball::zero(prec), kb.clone());
    }
    let s_minus_1 = ComplexBall::new(&s0.re - &Ball::one(prec), s0.im.clone());
    let pole = CTm::recip_linear(&s_minus_1, &kb, order, r).map_err(|_| Error::PoleAtOne)?;

    let mut bracket = pole.scale_real(&nb).add_const(&ComplexBall::from_real(Ball::from_ratio(1, 2, prec)));
    let n_inv = nb.recip()?;
    let s_over_n = s_tm.scale_real(&n_inv);
    let mut poch = s_over_n.clone();
    for j in 1..=plan.m {
        let coef = Ball::from_rational(&bernoulli_over_factorial(j), prec);
        bracket.add_assign(&poch.scale_real(&coef));
        if j < plan.m {
            let f1 = s_over_n.add_const(&ComplexBall::from_real(Ball::from_i64((2 * j - 1) as i64, prec).mul_ball(&n_inv)));
            let f2 = s_over_n.add_const(&ComplexBall::from_real(Ball::from_i64((2 * j) as i64, prec).mul_ball(&n_inv)));
            poch = poch.mul(&f1).mul(&f2);
        }
    }
    total.add_assign(&bracket.mul(&a));
    Ok(total.add_error(remainder_bound(sigma, s_abs, plan)))
}
