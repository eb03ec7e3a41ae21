use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use rug::float::{Constant, Round};
use rug::ops::AssignRound;
use rug::{Float, Integer, Rational};

use super::mag;
use crate::error::{domain, Error, Result};

/// Default working precision in bits.
pub const DEFAULT_PREC: u32 = 128;

/// A real enclosure `[mid - rad, mid + rad]`.
///
/// The midpoint is a binary floating-point number at the ball's working
/// precision; the radius is an upper bound kept as an `f64`. Every operation
/// returns a ball containing the exact result for every choice of inputs from
/// the argument balls.
#[derive(Clone, PartialEq)]
pub struct Ball {
    mid: Float,
    rad: f64,
}

/// Adds the rounding error of an MPFR result to a radius.
#[inline]
fn rounded(mid: Float, ord: Ordering, rad: f64, prec: u32) -> Ball {
    let rad = if ord == Ordering::Equal {
        rad
    } else {
        mag::add(rad, mag::half_ulp(&mid, prec))
    };
    Ball { mid, rad }
}

impl Ball {
    pub fn new(mid: Float, rad: f64) -> Self {
        assert!(rad >= 0.0, "negative radius");
        Ball { mid, rad }
    }

    pub fn zero(prec: u32) -> Self {
        Ball { mid: Float::new(prec), rad: 0.0 }
    }

    pub fn one(prec: u32) -> Self {
        Self::from_i64(1, prec)
    }

    /// Exact unless the integer has more than `prec` significant bits.
    pub fn from_i64(v: i64, prec: u32) -> Self {
        let (mid, ord) = Float::with_val_round(prec, v, Round::Nearest);
        rounded(mid, ord, 0.0, prec)
    }

    pub fn from_u64(v: u64, prec: u32) -> Self {
        let (mid, ord) = Float::with_val_round(prec, v, Round::Nearest);
        rounded(mid, ord, 0.0, prec)
    }

    pub fn from_integer(v: &Integer, prec: u32) -> Self {
        let (mid, ord) = Float::with_val_round(prec, v, Round::Nearest);
        rounded(mid, ord, 0.0, prec)
    }

    /// Exact conversion of a double (the ball is the single point `v`).
    pub fn from_f64(v: f64, prec: u32) -> Self {
        assert!(v.is_finite(), "non-finite f64");
        let (mid, ord) = Float::with_val_round(prec.max(53), v, Round::Nearest);
        debug_assert_eq!(ord, Ordering::Equal);
        let mut b = Ball { mid, rad: 0.0 };
        if prec < 53 {
            b = b.with_prec(prec);
        }
        b
    }

    pub fn from_f64_rad(v: f64, rad: f64, prec: u32) -> Self {
        let mut b = Self::from_f64(v, prec);
        b.rad = mag::add(b.rad, rad);
        b
    }

    pub fn from_rational(v: &Rational, prec: u32) -> Self {
        let (mid, ord) = Float::with_val_round(prec, v, Round::Nearest);
        rounded(mid, ord, 0.0, prec)
    }

    pub fn from_ratio(num: i64, den: i64, prec: u32) -> Self {
        Self::from_rational(&Rational::from((num, den)), prec)
    }

    /// Parses a decimal literal, enclosing the decimal value exactly.
    pub fn from_decimal(s: &str, prec: u32) -> Result<Self> {
        let parsed = Float::parse(s).map_err(|e| Error::Parse(format!("{s}: {e}")))?;
        let (mid, ord) = Float::with_val_round(prec, parsed, Round::Nearest);
        Ok(rounded(mid, ord, 0.0, prec))
    }

    /// The smallest ball (up to rounding) containing `[lo, hi]`, both given as
    /// decimal strings.
    pub fn from_decimal_interval(lo: &str, hi: &str, prec: u32) -> Result<Self> {
        let lo = Self::from_decimal(lo, prec)?;
        let hi = Self::from_decimal(hi, prec)?;
        if lo.mid > hi.mid {
            return Err(Error::Parse("interval endpoints out of order".into()));
        }
        Ok(lo.union(&hi))
    }

    pub fn pi(prec: u32) -> Self {
        let (mid, ord) = Float::with_val_round(prec, Constant::Pi, Round::Nearest);
        rounded(mid, ord, 0.0, prec)
    }

    pub fn log2_const(prec: u32) -> Self {
        let (mid, ord) = Float::with_val_round(prec, Constant::Log2, Round::Nearest);
        rounded(mid, ord, 0.0, prec)
    }

    pub fn euler_gamma(prec: u32) -> Self {
        let (mid, ord) = Float::with_val_round(prec, Constant::Euler, Round::Nearest);
        rounded(mid, ord, 0.0, prec)
    }

    pub fn mid(&self) -> &Float {
        &self.mid
    }

    pub fn rad(&self) -> f64 {
        self.rad
    }

    pub fn prec(&self) -> u32 {
        self.mid.prec()
    }

    pub fn mid_f64(&self) -> f64 {
        self.mid.to_f64()
    }

    pub fn is_finite(&self) -> bool {
        self.mid.is_finite() && self.rad.is_finite()
    }

    pub fn is_exact(&self) -> bool {
        self.rad == 0.0
    }

    /// Rounds the midpoint to a new precision, keeping containment.
    pub fn with_prec(&self, prec: u32) -> Self {
        let (mid, ord) = Float::with_val_round(prec, &self.mid, Round::Nearest);
        rounded(mid, ord, self.rad, prec)
    }

    pub fn add_error(mut self, err: f64) -> Self {
        assert!(err >= 0.0);
        self.rad = mag::add(self.rad, err);
        self
    }

    /// Lower endpoint rounded toward minus infinity.
    pub fn lower(&self) -> Float {
        let r = Float::with_val(53, self.rad);
        Float::with_val_round(self.prec(), &self.mid - &r, Round::Down).0
    }

    /// Upper endpoint rounded toward plus infinity.
    pub fn upper(&self) -> Float {
        let r = Float::with_val(53, self.rad);
        Float::with_val_round(self.prec(), &self.mid + &r, Round::Up).0
    }

    pub fn lower_f64(&self) -> f64 {
        self.lower().to_f64_round(Round::Down)
    }

    pub fn upper_f64(&self) -> f64 {
        self.upper().to_f64_round(Round::Up)
    }

    /// Upper bound on `sup |x|` over the ball.
    pub fn abs_upper_f64(&self) -> f64 {
        mag::add(mag::abs_upper(&self.mid), self.rad)
    }

    /// Lower bound on `inf |x|` over the ball (zero if the ball straddles 0).
    pub fn abs_lower_f64(&self) -> f64 {
        let v = mag::sub_lower(mag::abs_lower(&self.mid), self.rad);
        v.max(0.0)
    }

    pub fn width_f64(&self) -> f64 {
        mag::mul(2.0, self.rad)
    }

    pub fn is_positive(&self) -> bool {
        self.lower() > 0
    }

    pub fn is_negative(&self) -> bool {
        self.upper() < 0
    }

    pub fn is_nonnegative(&self) -> bool {
        self.lower() >= 0
    }

    pub fn contains_zero(&self) -> bool {
        !self.is_positive() && !self.is_negative()
    }

    pub fn contains_float(&self, x: &Float) -> bool {
        self.lower() <= *x && *x <= self.upper()
    }

    pub fn contains_f64(&self, x: f64) -> bool {
        self.contains_float(&Float::with_val(53, x))
    }

    pub fn contains_rational(&self, x: &Rational) -> bool {
        let lo = self.lower();
        let hi = self.upper();
        let lo = lo.to_rational().expect("finite");
        let hi = hi.to_rational().expect("finite");
        &lo <= x && x <= &hi
    }

    /// Whether every point of `other` lies in `self`.
    pub fn contains(&self, other: &Ball) -> bool {
        self.lower() <= other.lower() && other.upper() <= self.upper()
    }

    pub fn overlaps(&self, other: &Ball) -> bool {
        !(self.upper() < other.lower() || other.upper() < self.lower())
    }

    /// Smallest enclosing ball of two balls (the convex hull).
    pub fn union(&self, other: &Ball) -> Ball {
        let prec = self.prec().max(other.prec());
        let lo = if self.lower() <= other.lower() { self.lower() } else { other.lower() };
        let hi = if self.upper() >= other.upper() { self.upper() } else { other.upper() };
        Self::from_endpoints(&lo, &hi, prec)
    }

    /// Ball enclosing `[lo, hi]`.
    pub fn from_endpoints(lo: &Float, hi: &Float, prec: u32) -> Ball {
        assert!(lo <= hi, "endpoints out of order");
        let p = prec.max(lo.prec()).max(hi.prec()) + 2;
        let sum = Float::with_val(p + 2, lo + hi);
        let (mid, _) = Float::with_val_round(prec, sum / 2u32, Round::Nearest);
        let d_hi = Float::with_val_round(53, hi - &mid, Round::Up).0;
        let d_lo = Float::with_val_round(53, &mid - lo, Round::Up).0;
        let rad = d_hi.to_f64_round(Round::Up).max(d_lo.to_f64_round(Round::Up)).max(0.0);
        Ball { mid, rad }
    }

    /// Ball enclosing `[lo, hi]` given as doubles.
    pub fn from_f64_endpoints(lo: f64, hi: f64, prec: u32) -> Ball {
        Self::from_endpoints(&Float::with_val(53, lo), &Float::with_val(53, hi), prec)
    }

    /// Ball with the same midpoint and radius enlarged to include `[lo, hi]`-style
    /// one-sided shift `[0, bound]`.
    pub fn add_nonneg_shift(&self, bound: &Ball) -> Ball {
        // x + [0, b] for b in the bound ball.
        let prec = self.prec();
        let lo = self.lower();
        let hi = Float::with_val_round(prec, self.upper() + bound.upper(), Round::Up).0;
        Self::from_endpoints(&lo, &hi, prec)
    }

    /// The ball `[0, upper(self)]`, for one-sided quantities.
    pub fn zero_to_upper(&self) -> Ball {
        let hi = self.upper();
        let lo = Float::new(hi.prec());
        if hi < 0 {
            return Ball::zero(self.prec());
        }
        Self::from_endpoints(&lo, &hi, self.prec())
    }

    fn prec2(&self, other: &Ball) -> u32 {
        self.prec().max(other.prec())
    }

    pub fn add_ball(&self, other: &Ball) -> Ball {
        let prec = self.prec2(other);
        let (mid, ord) = Float::with_val_round(prec, &self.mid + &other.mid, Round::Nearest);
        rounded(mid, ord, mag::add(self.rad, other.rad), prec)
    }

    pub fn sub_ball(&self, other: &Ball) -> Ball {
        let prec = self.prec2(other);
        let (mid, ord) = Float::with_val_round(prec, &self.mid - &other.mid, Round::Nearest);
        rounded(mid, ord, mag::add(self.rad, other.rad), prec)
    }

    pub fn mul_ball(&self, other: &Ball) -> Ball {
        let prec = self.prec2(other);
        if self.is_wide() && other.rad > 0.0 || other.is_wide() && self.rad > 0.0 {
            return self.mul_endpoints(other, prec);
        }
        let (mid, ord) = Float::with_val_round(prec, &self.mid * &other.mid, Round::Nearest);
        let rad = if self.rad == 0.0 && other.rad == 0.0 {
            0.0
        } else {
            mag::add3(
                mag::mul(mag::abs_upper(&self.mid), other.rad),
                mag::mul(mag::abs_upper(&other.mid), self.rad),
                mag::mul(self.rad, other.rad),
            )
        };
        rounded(mid, ord, rad, prec)
    }

    /// Radius above `|mid| / 256`: midpoint-radius products lose too much there.
    fn is_wide(&self) -> bool {
        self.rad > 0.0 && self.rad > mag::abs_lower(&self.mid) * (1.0 / 256.0)
    }

    fn mul_endpoints(&self, other: &Ball, prec: u32) -> Ball {
        let (a, b) = (self.lower(), self.upper());
        let (c, d) = (other.lower(), other.upper());
        let mut lo: Option<Float> = None;
        let mut hi: Option<Float> = None;
        for (x, y) in [(&a, &c), (&a, &d), (&b, &c), (&b, &d)] {
            let p_lo = Float::with_val_round(prec, x * y, Round::Down).0;
            let p_hi = Float::with_val_round(prec, x * y, Round::Up).0;
            if lo.as_ref().map_or(true, |l| p_lo < *l) {
                lo = Some(p_lo);
            }
            if hi.as_ref().map_or(true, |h| p_hi > *h) {
                hi = Some(p_hi);
            }
        }
        Ball::from_endpoints(&lo.expect("four products"), &hi.expect("four products"), prec)
    }

    pub fn div_ball(&self, other: &Ball) -> Result<Ball> {
        let prec = self.prec2(other);
        let bm_lo = mag::abs_lower(&other.mid);
        let gap = mag::sub_lower(bm_lo, other.rad);
        if !(gap > 0.0) {
            return Err(Error::DivisorContainsZero);
        }
        let (mid, ord) = Float::with_val_round(prec, &self.mid / &other.mid, Round::Nearest);
        let rad = if self.rad == 0.0 && other.rad == 0.0 {
            0.0
        } else {
            // |a/b - am/bm| <= (|am| rb + |bm| ra) / (|bm| (|bm| - rb))
            let num = mag::add(
                mag::mul(mag::abs_upper(&self.mid), other.rad),
                mag::mul(mag::abs_upper(&other.mid), self.rad),
            );
            let den = (bm_lo * gap).next_down();
            if !(den > 0.0) {
                f64::INFINITY
            } else {
                mag::div(num, den)
            }
        };
        Ok(rounded(mid, ord, rad, prec))
    }

    pub fn negated(&self) -> Ball {
        Ball { mid: Float::with_val(self.prec(), -&self.mid), rad: self.rad }
    }

    pub fn abs(&self) -> Ball {
        if self.lower() >= 0 {
            self.clone()
        } else if self.upper() <= 0 {
            self.negated()
        } else {
            // Straddles zero: enclose [0, |mid| + rad] with an f64-exact midpoint
            // so the lower endpoint is exactly zero.
            let hi = self.abs_upper_f64();
            let half = hi / 2.0;
            let half = if half * 2.0 < hi { half.next_up() } else { half };
            Ball { mid: Float::with_val(self.prec().max(53), half), rad: half }.trim_prec(self.prec())
        }
    }

    fn trim_prec(self, prec: u32) -> Ball {
        if self.prec() == prec {
            self
        } else {
            // Only used when the midpoint is exactly representable at 53 bits.
            let mut b = self;
            if b.mid.prec() < prec {
                b.mid.set_prec(prec);
            }
            b
        }
    }

    pub fn sqr(&self) -> Ball {
        let prec = self.prec();
        if self.rad == 0.0 {
            let (mid, ord) = Float::with_val_round(prec, self.mid.square_ref(), Round::Nearest);
            return rounded(mid, ord, 0.0, prec);
        }
        // Endpoint form: tight when the ball is wide relative to its midpoint.
        let lo = self.lower();
        let hi = self.upper();
        let (a, b) = if lo >= 0 {
            (lo, hi)
        } else if hi <= 0 {
            (Float::with_val(prec, -&hi), Float::with_val(prec, -&lo))
        } else {
            let m = if Float::with_val(prec, -&lo) > hi { Float::with_val(prec, -&lo) } else { hi };
            (Float::new(prec), m)
        };
        let a2 = Float::with_val_round(prec, a.square_ref(), Round::Down).0;
        let b2 = Float::with_val_round(prec, b.square_ref(), Round::Up).0;
        Ball::from_endpoints(&a2, &b2, prec)
    }

    /// `sqrt(x)` for the nonnegative part of the ball; for quantities known to
    /// be nonnegative (norms) whose enclosure dips below zero by rounding.
    pub fn sqrt_nonneg(&self) -> Ball {
        if self.lower() > 0 {
            return self.sqrt().expect("positive ball");
        }
        let prec = self.prec();
        let hi = self.upper();
        if hi <= 0 {
            return Ball::zero(prec);
        }
        let r = Float::with_val_round(prec, hi.sqrt_ref(), Round::Up).0;
        Ball::from_endpoints(&Float::new(prec), &r, prec)
    }

    pub fn recip(&self) -> Result<Ball> {
        Ball::one(self.prec()).div_ball(self)
    }

    pub fn mul_f64(&self, v: f64) -> Ball {
        self.mul_ball(&Ball::from_f64(v, self.prec()))
    }

    pub fn mul_i64(&self, v: i64) -> Ball {
        self.mul_ball(&Ball::from_i64(v, self.prec()))
    }

    pub fn div_i64(&self, v: i64) -> Ball {
        assert!(v != 0);
        self.div_ball(&Ball::from_i64(v, self.prec())).expect("nonzero exact divisor")
    }

    pub fn add_i64(&self, v: i64) -> Ball {
        self.add_ball(&Ball::from_i64(v, self.prec()))
    }

    /// Multiplication by `2^k`, exact.
    pub fn mul_2si(&self, k: i32) -> Ball {
        let mid = Float::with_val(self.prec(), &self.mid << k);
        let rad = if k >= 0 {
            mag::mul(self.rad, mag::pow2(k as i64))
        } else {
            mag::mul(self.rad, mag::pow2(k as i64))
        };
        Ball { mid, rad }
    }

    pub fn powi(&self, n: u32) -> Ball {
        match n {
            0 => Ball::one(self.prec()),
            1 => self.clone(),
            _ => {
                let half = self.powi(n / 2).sqr();
                if n % 2 == 1 {
                    half.mul_ball(self)
                } else {
                    half
                }
            }
        }
    }

    pub fn exp(&self) -> Ball {
        let prec = self.prec();
        let (mid, ord) = Float::with_val_round(prec, self.mid.exp_ref(), Round::Nearest);
        let mut b = rounded(mid, ord, 0.0, prec);
        if self.rad > 0.0 {
            // |e^x - e^m| <= e^m (e^r - 1)
            let em = b.abs_upper_f64();
            b.rad = mag::add(b.rad, mag::mul(em, mag::expm1_upper(self.rad)));
        }
        b
    }

    pub fn log(&self) -> Result<Ball> {
        let lo = self.lower_f64();
        if !(lo > 0.0) || self.lower() <= 0 {
            return domain("log of a ball touching or below zero");
        }
        let prec = self.prec();
        let (mid, ord) = Float::with_val_round(prec, self.mid.ln_ref(), Round::Nearest);
        let mut b = rounded(mid, ord, 0.0, prec);
        if self.rad > 0.0 {
            b.rad = mag::add(b.rad, mag::div(self.rad, lo));
        }
        Ok(b)
    }

    pub fn sqrt(&self) -> Result<Ball> {
        if self.lower() < 0 {
            return domain("sqrt of a ball extending below zero");
        }
        let prec = self.prec();
        let (mid, ord) = Float::with_val_round(prec, self.mid.sqrt_ref(), Round::Nearest);
        let mut b = rounded(mid, ord, 0.0, prec);
        if self.rad > 0.0 {
            // |sqrt x - sqrt m| <= r / sqrt m
            let m_lo = mag::abs_lower(&self.mid);
            let s_lo = m_lo.sqrt().next_down();
            if s_lo > 0.0 {
                b.rad = mag::add(b.rad, mag::div(self.rad, s_lo));
            } else {
                // midpoint at (or extremely near) zero: sqrt is 1/2-Hoelder
                let hi = self.upper_f64();
                b.rad = mag::add(b.rad, hi.sqrt().next_up());
            }
        }
        Ok(b)
    }

    /// Returns `(sin, cos)`.
    pub fn sin_cos(&self) -> (Ball, Ball) {
        let prec = self.prec();
        let mut s = Float::new(prec);
        let mut c = Float::new(prec);
        let (os, oc) = (&mut s, &mut c).assign_round(self.mid.sin_cos_ref(), Round::Nearest);
        let mut sb = rounded(s, os, 0.0, prec);
        let mut cb = rounded(c, oc, 0.0, prec);
        if self.rad > 0.0 {
            // |sin x - sin m| <= r (|cos m| + r), capped at 2; likewise for cos.
            let r = self.rad;
            let ds = mag::mul(r, mag::add(cb.abs_upper_f64(), r)).min(2.0);
            let dc = mag::mul(r, mag::add(sb.abs_upper_f64(), r)).min(2.0);
            sb.rad = mag::add(sb.rad, ds);
            cb.rad = mag::add(cb.rad, dc);
        }
        (sb, cb)
    }

    pub fn sin(&self) -> Ball {
        self.sin_cos().0
    }

    pub fn cos(&self) -> Ball {
        self.sin_cos().1
    }

    pub fn atan(&self) -> Ball {
        let prec = self.prec();
        let (mid, ord) = Float::with_val_round(prec, self.mid.atan_ref(), Round::Nearest);
        let mut b = rounded(mid, ord, 0.0, prec);
        if self.rad > 0.0 {
            // derivative 1/(1+x^2) <= 1/(1 + inf|x|^2)
            let a = self.abs_lower_f64();
            let den = (1.0 + a * a).next_down().max(1.0);
            b.rad = mag::add(b.rad, mag::div(self.rad, den));
        }
        b
    }

    /// `self^e` for a positive base ball.
    pub fn pow(&self, e: &Ball) -> Result<Ball> {
        Ok(self.log()?.mul_ball(e).exp())
    }

    pub fn max_upper(&self, other: &Ball) -> Float {
        let a = self.upper();
        let b = other.upper();
        if a >= b {
            a
        } else {
            b
        }
    }

    /// Strict comparison of the whole balls.
    pub fn certainly_lt(&self, other: &Ball) -> bool {
        self.upper() < other.lower()
    }

    pub fn certainly_le(&self, other: &Ball) -> bool {
        self.upper() <= other.lower()
    }
}

impl fmt::Debug for Ball {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{} +/- {:.3e}]", self.mid.to_string_radix(10, Some(20)), self.rad)
    }
}

impl fmt::Display for Ball {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = f.precision().unwrap_or(15);
        write!(f, "[{} +/- {:.2e}]", self.mid.to_string_radix(10, Some(digits)), self.rad)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $inner:ident) => {
        impl $trait<&Ball> for &Ball {
            type Output = Ball;
            fn $method(self, rhs: &Ball) -> Ball {
                self.$inner(rhs)
            }
        }
        impl $trait<Ball> for Ball {
            type Output = Ball;
            fn $method(self, rhs: Ball) -> Ball {
                self.$inner(&rhs)
            }
        }
        impl $trait<&Ball> for Ball {
            type Output = Ball;
            fn $method(self, rhs: &Ball) -> Ball {
                self.$inner(rhs)
            }
        }
        impl $trait<Ball> for &Ball {
            type Output = Ball;
            fn $method(self, rhs: Ball) -> Ball {
                self.$inner(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, add_ball);
forward_binop!(Sub, sub, sub_ball);
forward_binop!(Mul, mul, mul_ball);

impl Neg for &Ball {
    type Output = Ball;
    fn neg(self) -> Ball {
        Ball::negated(self)
    }
}

impl Neg for Ball {
    type Output = Ball;
    fn neg(self) -> Ball {
        Ball::negated(&self)
    }
}
