use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::ball::Ball;
use crate::error::Result;

/// A rectangular complex enclosure.
#[derive(Clone, PartialEq)]
pub struct ComplexBall {
    pub re: Ball,
    pub im: Ball,
}

impl ComplexBall {
    pub fn new(re: Ball, im: Ball) -> Self {
        ComplexBall { re, im }
    }

    pub fn from_real(re: Ball) -> Self {
        let prec = re.prec();
        ComplexBall { re, im: Ball::zero(prec) }
    }

    pub fn zero(prec: u32) -> Self {
        ComplexBall { re: Ball::zero(prec), im: Ball::zero(prec) }
    }

    pub fn one(prec: u32) -> Self {
        ComplexBall { re: Ball::one(prec), im: Ball::zero(prec) }
    }

    pub fn i(prec: u32) -> Self {
        ComplexBall { re: Ball::zero(prec), im: Ball::one(prec) }
    }

    pub fn from_f64(re: f64, im: f64, prec: u32) -> Self {
        ComplexBall { re: Ball::from_f64(re, prec), im: Ball::from_f64(im, prec) }
    }

    pub fn prec(&self) -> u32 {
        self.re.prec().max(self.im.prec())
    }

    pub fn negated(&self) -> Self {
        ComplexBall { re: self.re.negated(), im: self.im.negated() }
    }

    pub fn conj(&self) -> Self {
        ComplexBall { re: self.re.clone(), im: self.im.negated() }
    }

    pub fn contains(&self, re: f64, im: f64) -> bool {
        self.re.contains_f64(re) && self.im.contains_f64(im)
    }

    pub fn overlaps(&self, other: &ComplexBall) -> bool {
        self.re.overlaps(&other.re) && self.im.overlaps(&other.im)
    }

    pub fn add_c(&self, o: &ComplexBall) -> Self {
        ComplexBall { re: &self.re + &o.re, im: &self.im + &o.im }
    }

    pub fn sub_c(&self, o: &ComplexBall) -> Self {
        ComplexBall { re: &self.re - &o.re, im: &self.im - &o.im }
    }

    pub fn mul_c(&self, o: &ComplexBall) -> Self {
        ComplexBall {
            re: &(&self.re * &o.re) - &(&self.im * &o.im),
            im: &(&self.re * &o.im) + &(&self.im * &o.re),
        }
    }

    pub fn mul_real(&self, r: &Ball) -> Self {
        ComplexBall { re: &self.re * r, im: &self.im * r }
    }

    /// Multiplication by `i`.
    pub fn mul_i(&self) -> Self {
        ComplexBall { re: self.im.negated(), im: self.re.clone() }
    }

    pub fn sqr(&self) -> Self {
        ComplexBall {
            re: &self.re.sqr() - &self.im.sqr(),
            im: (&self.re * &self.im).mul_2si(1),
        }
    }

    /// `|z|^2`.
    pub fn norm_sqr(&self) -> Ball {
        &self.re.sqr() + &self.im.sqr()
    }

    pub fn abs(&self) -> Ball {
        self.norm_sqr().sqrt_nonneg()
    }

    pub fn recip(&self) -> Result<Self> {
        let n = self.norm_sqr();
        Ok(ComplexBall { re: self.re.div_ball(&n)?, im: self.im.negated().div_ball(&n)? })
    }

    pub fn div_c(&self, o: &ComplexBall) -> Result<Self> {
        let n = o.norm_sqr();
        let num = self.mul_c(&o.conj());
        Ok(ComplexBall { re: num.re.div_ball(&n)?, im: num.im.div_ball(&n)? })
    }

    pub fn exp(&self) -> Self {
        let m = self.re.exp();
        let (s, c) = self.im.sin_cos();
        ComplexBall { re: &m * &c, im: &m * &s }
    }

    /// `base^self` for a positive real base given by its logarithm.
    pub fn exp_scaled_by_log(&self, log_base: &Ball) -> Self {
        self.mul_real(log_base).exp()
    }

    /// `base^self` for a positive real base.
    pub fn pow_real_base(&self, base: &Ball) -> Result<Self> {
        Ok(self.exp_scaled_by_log(&base.log()?))
    }

    pub fn powi(&self, n: u32) -> Self {
        match n {
            0 => ComplexBall::one(self.prec()),
            1 => self.clone(),
            _ => {
                let h = self.powi(n / 2).sqr();
                if n % 2 == 1 {
                    h.mul_c(self)
                } else {
                    h
                }
            }
        }
    }

    /// Upper bound on `|z|`.
    pub fn abs_upper_f64(&self) -> f64 {
        self.abs().upper_f64()
    }
}

impl fmt::Debug for ComplexBall {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?}, {:?})", self.re, self.im)
    }
}

impl Add<&ComplexBall> for &ComplexBall {
    type Output = ComplexBall;
    fn add(self, rhs: &ComplexBall) -> ComplexBall {
        self.add_c(rhs)
    }
}

impl Sub<&ComplexBall> for &ComplexBall {
    type Output = ComplexBall;
    fn sub(self, rhs: &ComplexBall) -> ComplexBall {
        self.sub_c(rhs)
    }
}

impl Mul<&ComplexBall> for &ComplexBall {
    type Output = ComplexBall;
    fn mul(self, rhs: &ComplexBall) -> ComplexBall {
        self.mul_c(rhs)
    }
}

impl Neg for &ComplexBall {
    type Output = ComplexBall;
    fn neg(self) -> ComplexBall {
        ComplexBall { re: self.re.negated(), im: self.im.negated() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rint::DEFAULT_PREC as P;

    #[test]
    fn one_times_i() {
        let z = ComplexBall::one(P).mul_c(&ComplexBall::i(P));
        assert!(z.contains(0.0, 1.0));
        assert!(z.re.is_exact() && z.im.is_exact());
    }

    #[test]
    fn euler_identity() {
        let z = ComplexBall::new(Ball::zero(P), Ball::pi(P)).exp();
        assert!(z.contains(-1.0, 0.0));
        assert!(z.re.rad() < 1e-30);
    }

    #[test]
    fn two_to_i_pi_over_log2() {
        // 2^{it} with t = pi / log 2 is e^{i pi}.
        let t = Ball::pi(P).div_ball(&Ball::log2_const(P)).unwrap();
        let s = ComplexBall::new(Ball::zero(P), t);
        let z = s.pow_real_base(&Ball::from_i64(2, P)).unwrap();
        assert!(z.contains(-1.0, 0.0));
    }

    #[test]
    fn division_by_zero_ball() {
        let z = ComplexBall::new(Ball::from_f64_rad(0.0, 0.1, P), Ball::zero(P));
        assert!(ComplexBall::one(P).div_c(&z).is_err());
    }
}
