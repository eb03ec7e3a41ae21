//! Verified evaluation of the Riemann zeta function on `Re(s) >= 1`.

mod em;
mod laurent;
pub mod tables;

use std::sync::OnceLock;

pub use em::{
    plan_for, plan_for_cost, remainder_bound, zeta, zeta_jet, zeta_line_jet, zeta_line_tm, zeta_tol, EmPlan,
};
pub use laurent::{LaurentCoeffs, StieltjesTable};

use crate::error::{domain, Error, Result};
use crate::rint::{mag, Ball, ComplexBall, DEFAULT_PREC};

/// Default `N` for the single-correction formula: `max(ceil(|Im s| / 3.3983) + 1, 16)`.
pub fn backlund_default_n(s: &ComplexBall) -> u64 {
    let t = s.im.abs_upper_f64();
    ((t / 3.3983).ceil() as u64 + 1).max(16)
}

/// `zeta(s)` by Euler-Maclaurin with a single Bernoulli correction:
///
/// `sum_{n<N} n^-s + N^-s/2 + N^{1-s}/(s-1) + s/(12 N^{s+1}) + R`, with
/// `|R| <= |s(s+1)| / (12 (sigma+1) N^{sigma+1})`.
///
/// Fails with `InsufficientN` when the remainder exceeds `cap`.
pub fn zeta_em(s: &ComplexBall, n: u64, cap: Option<f64>) -> Result<ComplexBall> {
    if n < 2 {
        return domain("N must be at least 2");
    }
    let one = Ball::one(s.prec());
    if s.re.overlaps(&one) && s.im.contains_zero() {
        return Err(Error::PoleAtOne);
    }
    if s.re.lower_f64() < 1.0 {
        return domain("zeta_em needs Re(s) >= 1");
    }
    let plan = EmPlan { n, m: 1 };
    let rem = remainder_bound(s.re.lower_f64(), s.abs_upper_f64(), plan);
    if let Some(cap) = cap {
        if rem > cap {
            return Err(Error::InsufficientN { n, remainder: rem, cap });
        }
    }
    Ok(zeta_jet(s, 0, 0, plan)?.c.swap_remove(0))
}

/// Remainder radius of [`zeta_em`] at `s` with `N` terms.
pub fn zeta_em_remainder(s: &ComplexBall, n: u64) -> f64 {
    remainder_bound(s.re.lower_f64(), s.abs_upper_f64(), EmPlan { n, m: 1 })
}

/// Stieltjes and Laurent constants at the default precision.
pub fn laurent_default() -> &'static LaurentCoeffs {
    static L: OnceLock<LaurentCoeffs> = OnceLock::new();
    L.get_or_init(|| LaurentCoeffs::new(&StieltjesTable::new(DEFAULT_PREC)))
}

/// Threshold below which the Laurent expansion is used on the 1-line.
pub const LAURENT_THRESHOLD: f64 = 0.5;

/// `|zeta(1+it)|^2`. Even in `t`; the Laurent branch is used for `|t| <= 1/2`.
pub fn zeta_one_line_sq(t: &Ball) -> Result<Ball> {
    let t = t.abs();
    if !(t.lower_f64() > 0.0) {
        return domain("t-ball touches 0");
    }
    if t.upper_f64() <= LAURENT_THRESHOLD {
        let l = laurent_default();
        let t = t.with_prec(t.prec().max(l.alpha1.prec()));
        l.one_line_sq(&t)
    } else {
        zeta_one_line_sq_em(&t)
    }
}

/// `|zeta(1+it)|^2` via Euler-Maclaurin for any `t` away from 0.
pub fn zeta_one_line_sq_em(t: &Ball) -> Result<Ball> {
    let t = t.abs();
    if !(t.lower_f64() > 0.0) {
        return domain("t-ball touches 0");
    }
    let s = ComplexBall::new(Ball::one(t.prec()), t);
    let z = zeta(&s)?;
    Ok(z.norm_sqr())
}

/// `log t - 0.14`, an upper bound for `|zeta(sigma+it)|` on `1 <= sigma <= 2`, `t >= 500`.
pub fn bound_zeta_strip(t: f64, prec: u32) -> Result<Ball> {
    if !(t >= 500.0) {
        return domain("bound valid for t >= 500 only");
    }
    let l = Ball::from_f64(t, prec).log()?;
    Ok(&l - &Ball::from_decimal("0.14", prec)?)
}

/// Upper bound for `|1/zeta(1+it)|`: `42.9 log t` for `t >= 2`, or
/// `2.079 log t` on `2 <= t <= 500` when `sharp` is set.
pub fn inv_zeta_bound(t: f64, sharp: bool, prec: u32) -> Result<Ball> {
    if !(t >= 2.0) {
        return domain("bound valid for t >= 2 only");
    }
    if sharp && t > 500.0 {
        return domain("sharp constant verified for t <= 500 only");
    }
    let c = if sharp { "2.079" } else { "42.9" };
    Ok(&Ball::from_decimal(c, prec)? * &Ball::from_f64(t, prec).log()?)
}

/// `1/|zeta(1+it)|` upper bound from a direct evaluation.
pub fn inv_zeta_one_line_upper(t: &Ball) -> Result<f64> {
    let sq = zeta_one_line_sq_em(t)?;
    let lo = sq.lower_f64();
    if !(lo > 0.0) {
        return Err(Error::DivisorContainsZero);
    }
    Ok(mag::div(1.0, lo.sqrt().next_down()))
}
