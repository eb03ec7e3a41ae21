use std::sync::OnceLock;

use rayon::prelude::*;
use serde::Serialize;

use super::sieve::{primes_up_to, PrimeTable};
use crate::error::{domain, Error, Result};
use crate::rint::{Ball, DEFAULT_PREC};

/// Explicit Chebyshev-theta inequalities:
/// `theta(x) < x + c_plus x / log x` for `x > 1`,
/// `theta(x) > x - c_minus x / log x` for `x >= x_minus_threshold`,
/// `theta(x) > x - c0_minus x / log x` for `x >= c0_threshold`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThetaConstants {
    pub c_plus: &'static str,
    pub c_minus: &'static str,
    pub x_minus_threshold: u64,
    pub c0_minus: (i64, i64),
    pub c0_threshold: u64,
}

pub const THETA: ThetaConstants = ThetaConstants {
    c_plus: "0.0201384",
    c_minus: "0.0239922",
    x_minus_threshold: 758_711,
    c0_minus: (6, 7),
    c0_threshold: 67,
};

impl ThetaConstants {
    pub fn c_plus(&self, prec: u32) -> Ball {
        Ball::from_decimal(self.c_plus, prec).expect("literal")
    }

    pub fn c_minus(&self, prec: u32) -> Ball {
        Ball::from_decimal(self.c_minus, prec).expect("literal")
    }

    pub fn c0_minus(&self, prec: u32) -> Ball {
        Ball::from_ratio(self.c0_minus.0, self.c0_minus.1, prec)
    }
}

/// Default prime cutoff for the c2 sum.
pub const C2_DEFAULT_CUTOFF: u64 = 1_000_000;
/// Cutoff reproducing the published partial sum.
pub const C2_FIDELITY_CUTOFF: u64 = 50_000_000;

const CHUNK: usize = 4096;

/// Sum of `term(p)` over a prime list, in ball arithmetic. Chunks may run in
/// parallel; the reduction is in ascending chunk order.
pub fn prime_sum<F>(primes: &[u32], prec: u32, term: F) -> Ball
where
    F: Fn(u64) -> Ball + Sync,
{
    let partials: Vec<Ball> = primes
        .par_chunks(CHUNK)
        .map(|chunk| {
            let mut acc = Ball::zero(prec);
            for &p in chunk {
                acc = &acc + &term(p as u64);
            }
            acc
        })
        .collect();
    partials.iter().fold(Ball::zero(prec), |acc, b| &acc + b)
}

#[derive(Debug, Clone, Serialize)]
pub struct C2Parts {
    pub cutoff: u64,
    pub partial: Ball,
    pub tail_bound: Ball,
    pub value: Ball,
}

/// Upper bound on `sum_{p > C} (log p)^2 / (p-1)^2`, valid for `C >= 758711`.
pub fn c2_tail_bound(cutoff: u64, prec: u32) -> Result<Ball> {
    if cutoff < THETA.x_minus_threshold {
        return Err(Error::CutoffTooSmall { cutoff, min: THETA.x_minus_threshold });
    }
    let c = Ball::from_u64(cutoff, prec);
    let cm1 = c.add_i64(-1);
    let cp = THETA.c_plus(prec);
    let a = (&cp + &THETA.c_minus(prec)).mul_ball(&c).div_ball(&cm1.sqr())?;
    let b = c.log()?.div_ball(&cm1)?;
    let d = cp.add_i64(1).div_ball(&cm1)?;
    Ok(&(&a + &b) + &d)
}

fn c2_term(p: u64, prec: u32) -> Ball {
    let pb = Ball::from_u64(p, prec);
    let lp = pb.log().expect("p >= 2");
    lp.div_ball(&pb.add_i64(-1)).expect("p >= 2").sqr()
}

pub fn c2_parts(cutoff: u64, prec: u32) -> Result<C2Parts> {
    let tail = c2_tail_bound(cutoff, prec)?;
    let table = primes_up_to(cutoff)?;
    let partial = prime_sum(&table.primes, prec, |p| c2_term(p, prec));
    let value = partial.add_nonneg_shift(&tail);
    Ok(C2Parts { cutoff, partial, tail_bound: tail, value })
}

/// Enclosure of `c2 = sum_p (log p)^2 / (p-1)^2`.
pub fn c2_enclosure(cutoff: u64) -> Result<Ball> {
    Ok(c2_parts(cutoff, DEFAULT_PREC)?.value)
}

/// `c2` at the default cutoff, computed once per process.
pub fn c2_default() -> Ball {
    static C2: OnceLock<Ball> = OnceLock::new();
    C2.get_or_init(|| c2_enclosure(C2_DEFAULT_CUTOFF).expect("default cutoff is valid")).clone()
}

/// Range of the explicit partial sum in the `sum_p C_p` bound.
pub const CP_PARTIAL_LIMIT: u64 = 1_000_000;

#[derive(Debug, Clone, Serialize)]
pub struct SumCpReport {
    pub partial: Ball,
    pub tail: Ball,
    /// Certified upper bound `U >= sum_p C_p`.
    pub upper: Ball,
    pub c2: Ball,
    /// Upper bound on `U + c2^2 / 2`.
    pub quartic_constant: Ball,
    /// `U + c2^2/2 < 2.56`.
    pub quartic_ok: bool,
    /// `c2 / U > 1/4`.
    pub ratio_ok: bool,
}

/// `C_p = (log p)^4 / (p-1)^4 * ((p-1)^2 / 12 + p)`.
pub fn cp_term(p: u64, prec: u32) -> Ball {
    let pb = Ball::from_u64(p, prec);
    let pm1 = pb.add_i64(-1);
    let q = pb.log().expect("p >= 2").div_ball(&pm1).expect("p >= 2").sqr().sqr();
    &q * &(&pm1.sqr().div_i64(12) + &pb)
}

/// Tail bound `(37/2) int_A^oo u^{-7/2} (u^2/12 + u + 1) du` with `A = 10^6`,
/// using `(log t)^4 <= 37 (t-1)^{1/2}` for `t >= 10^6`.
pub fn cp_tail_bound(prec: u32) -> Ball {
    let a = Ball::from_u64(CP_PARTIAL_LIMIT, prec);
    let rs = a.sqrt().expect("positive").recip().expect("positive");
    let t1 = rs.div_i64(6);
    let t2 = (&rs * &a.recip().unwrap()).mul_i64(2).div_i64(3);
    let t3 = (&rs * &a.sqr().recip().unwrap()).mul_i64(2).div_i64(5);
    (&(&t1 + &t2) + &t3).mul_i64(37).div_i64(2)
}

/// Certified upper bound on `sum_p C_p`, with the two derived inequalities.
pub fn sum_cp_upper() -> SumCpReport {
    sum_cp_upper_with(&c2_default(), DEFAULT_PREC)
}

pub fn sum_cp_upper_with(c2: &Ball, prec: u32) -> SumCpReport {
    let table: PrimeTable = primes_up_to(CP_PARTIAL_LIMIT).expect("small limit");
    let partial = prime_sum(&table.primes, prec, |p| cp_term(p, prec));
    let tail = cp_tail_bound(prec);
    let u = Ball::from_f64((&partial + &tail).upper_f64(), prec);
    let c2_hi = Ball::from_f64(c2.upper_f64(), prec);
    let quartic = &u + &c2_hi.sqr().div_i64(2);
    let quartic_ok = quartic.certainly_lt(&Ball::from_decimal("2.56", prec).unwrap());
    let ratio = Ball::from_f64(c2.lower_f64(), prec).div_ball(&u).expect("U > 0");
    let ratio_ok = Ball::from_ratio(1, 4, prec).certainly_lt(&ratio);
    SumCpReport { partial, tail, upper: u, c2: c2.clone(), quartic_constant: quartic, quartic_ok, ratio_ok }
}

/// Upper bound on `sum_{p > C} p^{-4}` for `C >= 67`:
/// `(c_plus + 6/7) / (C^3 log^2 C) + 1 / (3 C^3 log C)`.
pub fn tail_inv_p4_bound(c: u64, prec: u32) -> Result<Ball> {
    if c < THETA.c0_threshold {
        return domain(format!("cutoff {c} below {}", THETA.c0_threshold));
    }
    let cb = Ball::from_u64(c, prec);
    let lc = cb.log()?;
    let c3 = cb.powi(3);
    let k = &THETA.c_plus(prec) + &THETA.c0_minus(prec);
    let a = k.div_ball(&(&c3 * &lc.sqr()))?;
    let b = (&c3 * &lc).mul_i64(3).recip()?;
    Ok(&a + &b)
}
