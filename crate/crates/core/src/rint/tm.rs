//! Taylor models: a polynomial in `e` with ball coefficients plus a remainder
//! bound, enclosing `f(m + e)` for every `|e| <= r`.
//!
//! Products keep terms up to the model order and move everything above it
//! into the remainder, bounded over the domain. Nothing is ever evaluated
//! over the whole domain as a ball, so the enclosures do not suffer from the
//! dependency problem of plain interval evaluation.

use super::ball::Ball;
use super::complex::ComplexBall;
use super::jet::{CJet, Jet};
use super::mag;
use crate::error::{Error, Result};

/// Upper bound on `x^k / k!` for `x >= 0`.
pub fn taylor_term_upper(x: f64, k: usize) -> f64 {
    let mut v = 1.0f64;
    for i in 1..=k {
        v = mag::mul(v, mag::div(x, i as f64));
    }
    v
}

/// `|c_k| r^k` upper bounds.
fn scaled_mags<I: Iterator<Item = f64>>(mags: I, r: f64) -> Vec<f64> {
    let mut rk = 1.0f64;
    mags.enumerate()
        .map(|(k, a)| {
            if k > 0 {
                rk = mag::mul(rk, r);
            }
            mag::mul(a, rk)
        })
        .collect()
}

/// `sum_{i + j > K} A_i B_j` for scaled magnitudes of two order-`K` models.
fn high_part(a: &[f64], b: &[f64]) -> f64 {
    let k = a.len() - 1;
    let mut s = 0.0f64;
    for (i, ai) in a.iter().enumerate() {
        if *ai == 0.0 {
            continue;
        }
        for bj in b.iter().skip(k + 1 - i.min(k + 1)) {
            s = mag::add(s, mag::mul(*ai, *bj));
        }
    }
    s
}

fn sum_up(v: &[f64]) -> f64 {
    v.iter().fold(0.0, |s, x| mag::add(s, *x))
}

/// Real Taylor model on `[-r, r]`.
#[derive(Clone, Debug, PartialEq)]
pub struct Tm {
    pub c: Vec<Ball>,
    /// Upper bound on the half-width of the domain.
    pub r: f64,
    /// Remainder radius.
    pub err: f64,
}

impl Tm {
    pub fn from_jet(j: Jet, r: f64, err: f64) -> Tm {
        Tm { c: j.c, r, err }
    }

    pub fn constant(v: Ball, order: usize, r: f64) -> Tm {
        Tm::from_jet(Jet::constant(v, order), r, 0.0)
    }

    /// `e -> m + e`.
    pub fn variable(m: &Ball, order: usize, r: f64) -> Tm {
        Tm::from_jet(Jet::variable(m, order), r, 0.0)
    }

    pub fn order(&self) -> usize {
        self.c.len() - 1
    }

    pub fn prec(&self) -> u32 {
        self.c[0].prec()
    }

    pub fn jet(&self) -> Jet {
        Jet { c: self.c.clone() }
    }

    fn mags(&self) -> Vec<f64> {
        scaled_mags(self.c.iter().map(|b| b.abs_upper_f64()), self.r)
    }

    /// Upper bound on `|f|` over the domain.
    pub fn norm(&self) -> f64 {
        mag::add(sum_up(&self.mags()), self.err)
    }

    /// Ball containing `f(m + e)` for every `e` in the ball `e`, `|e| <= r`.
    pub fn eval(&self, e: &Ball) -> Ball {
        let mut acc = Ball::zero(self.prec());
        for ck in self.c.iter().rev() {
            acc = &(&acc * e) + ck;
        }
        acc.add_error(self.err)
    }

    /// Enclosure of `f` over `[m + lo, m + hi]` (sub-interval of the domain)
    /// by the mean value form around its center.
    pub fn range_on(&self, lo: &Ball, hi: &Ball) -> Ball {
        let center = (lo + hi).mul_2si(-1);
        let half = (hi - lo).mul_2si(-1).abs_upper_f64();
        let whole = Ball::from_endpoints(&lo.lower(), &hi.upper(), self.prec());
        let mut p = Ball::zero(self.prec());
        for ck in self.c.iter().rev() {
            p = &(&p * &center) + ck;
        }
        let mut dp = Ball::zero(self.prec());
        for k in (1..self.c.len()).rev() {
            dp = &(&dp * &whole) + &self.c[k].mul_i64(k as i64);
        }
        p.add_error(mag::add(mag::mul(dp.abs_upper_f64(), half), self.err))
    }

    /// `int_{-r}^{r} f(m + e) de` for the exact half-width `r`.
    pub fn integral(&self, r: &Ball) -> Ball {
        let prec = self.prec();
        let r2 = r.sqr();
        let mut rp = r.mul_2si(1);
        let mut acc = Ball::zero(prec);
        for k in (0..self.c.len()).step_by(2) {
            if k > 0 {
                rp = &rp * &r2;
            }
            acc = &acc + &(&self.c[k] * &rp).div_i64(k as i64 + 1);
        }
        acc.add_error(mag::mul(mag::mul(2.0, r.abs_upper_f64()), self.err))
    }

    pub fn add(&self, o: &Tm) -> Tm {
        Tm { c: self.c.iter().zip(&o.c).map(|(a, b)| a + b).collect(), r: self.r, err: mag::add(self.err, o.err) }
    }

    pub fn sub(&self, o: &Tm) -> Tm {
        Tm { c: self.c.iter().zip(&o.c).map(|(a, b)| a - b).collect(), r: self.r, err: mag::add(self.err, o.err) }
    }

    pub fn negated(&self) -> Tm {
        Tm { c: self.c.iter().map(|a| a.negated()).collect(), r: self.r, err: self.err }
    }

    pub fn scale(&self, s: &Ball) -> Tm {
        Tm {
            c: self.c.iter().map(|a| a * s).collect(),
            r: self.r,
            err: mag::mul(self.err, s.abs_upper_f64()),
        }
    }

    pub fn add_const(&self, v: &Ball) -> Tm {
        let mut t = self.clone();
        t.c[0] = &t.c[0] + v;
        t
    }

    pub fn mul(&self, o: &Tm) -> Tm {
        let c = Jet { c: self.c.clone() }.mul(&Jet { c: o.c.clone() }).c;
        let (a, b) = (self.mags(), o.mags());
        let err = mag::add3(
            high_part(&a, &b),
            mag::add(mag::mul(sum_up(&a), o.err), mag::mul(sum_up(&b), self.err)),
            mag::mul(self.err, o.err),
        );
        Tm { c, r: self.r, err }
    }

    pub fn sqr(&self) -> Tm {
        let c = Jet { c: self.c.clone() }.sqr().c;
        let a = self.mags();
        let na = sum_up(&a);
        let err = mag::add3(high_part(&a, &a), mag::mul(mag::mul(2.0, na), self.err), mag::mul(self.err, self.err));
        Tm { c, r: self.r, err }
    }

    pub fn powi(&self, n: u32) -> Tm {
        match n {
            0 => Tm::constant(Ball::one(self.prec()), self.order(), self.r),
            1 => self.clone(),
            _ => {
                let h = self.powi(n / 2).sqr();
                if n % 2 == 1 {
                    h.mul(self)
                } else {
                    h
                }
            }
        }
    }

    /// `1/f`. With `Q` the truncated series of `1/P`, `P Q = 1 + E` where `E`
    /// only has terms above the order, so `1/P = Q - Q E / (1 + E)`.
    pub fn recip(&self) -> Result<Tm> {
        let q = Jet { c: self.c.clone() }.recip()?;
        let qm = scaled_mags(q.c.iter().map(|b| b.abs_upper_f64()), self.r);
        let e = high_part(&self.mags(), &qm);
        if !(e < 1.0) {
            return Err(Error::DivisorContainsZero);
        }
        let trunc = mag::div(mag::mul(sum_up(&qm), e), mag::sub_lower(1.0, e));
        // n bounds |1/P|; then |1/(P + d) - 1/P| <= n^2 |d| / (1 - n |d|)
        let n = mag::add(sum_up(&qm), trunc);
        let nd = mag::mul(n, self.err);
        if !(nd < 1.0) {
            return Err(Error::DivisorContainsZero);
        }
        let pert = mag::div(mag::mul(n, nd), mag::sub_lower(1.0, nd));
        Ok(Tm { c: q.c, r: self.r, err: mag::add(trunc, pert) })
    }

    pub fn div(&self, o: &Tm) -> Result<Tm> {
        Ok(self.mul(&o.recip()?))
    }

    /// `cos(a + b e)` and `sin(a + b e)`.
    pub fn cos_sin_linear(a: &Ball, b: &Ball, order: usize, r: f64) -> (Tm, Tm) {
        let (c, s) = Jet::cos_sin_linear(a, b, order);
        let err = taylor_term_upper(mag::mul(b.abs_upper_f64(), r), order + 1);
        (Tm::from_jet(c, r, err), Tm::from_jet(s, r, err))
    }

    /// `log(m + e)` for `m > r`.
    pub fn log_variable(m: &Ball, order: usize, r: f64) -> Result<Tm> {
        let prec = m.prec();
        let w = mag::div(r, m.lower_f64().next_down());
        if !(m.lower_f64() > 0.0 && w < 1.0) {
            return Err(Error::Domain("log model needs m > r > 0".into()));
        }
        let inv = m.recip()?;
        let mut c = vec![m.log()?];
        let mut p = Ball::one(prec);
        for k in 1..=order {
            p = &p * &inv;
            let t = p.div_i64(k as i64);
            c.push(if k % 2 == 1 { t } else { t.negated() });
        }
        // tail of sum (-1)^{k+1} (e/m)^k / k beyond the order
        let mut wk = 1.0f64;
        for _ in 0..=order {
            wk = mag::mul(wk, w);
        }
        let err = mag::div(mag::div(wk, (order + 1) as f64), mag::sub_lower(1.0, w));
        Ok(Tm { c, r, err })
    }
}

/// Complex Taylor model in a real variable `e`; `err` bounds the modulus of the remainder.
#[derive(Clone, Debug, PartialEq)]
pub struct CTm {
    pub c: Vec<ComplexBall>,
    pub r: f64,
    pub err: f64,
}

impl CTm {
    pub fn zero(order: usize, prec: u32, r: f64) -> CTm {
        CTm { c: vec![ComplexBall::zero(prec); order + 1], r, err: 0.0 }
    }

    pub fn from_jet(j: CJet, r: f64, err: f64) -> CTm {
        CTm { c: j.c, r, err }
    }

    pub fn order(&self) -> usize {
        self.c.len() - 1
    }

    fn mags(&self) -> Vec<f64> {
        scaled_mags(self.c.iter().map(|z| z.abs_upper_f64()), self.r)
    }

    pub fn norm(&self) -> f64 {
        mag::add(sum_up(&self.mags()), self.err)
    }

    pub fn add(&self, o: &CTm) -> CTm {
        CTm { c: self.c.iter().zip(&o.c).map(|(a, b)| a + b).collect(), r: self.r, err: mag::add(self.err, o.err) }
    }

    pub fn add_assign(&mut self, o: &CTm) {
        for (a, b) in self.c.iter_mut().zip(&o.c) {
            *a = &*a + b;
        }
        self.err = mag::add(self.err, o.err);
    }

    pub fn add_const(&self, v: &ComplexBall) -> CTm {
        let mut t = self.clone();
        t.c[0] = &t.c[0] + v;
        t
    }

    pub fn add_error(mut self, err: f64) -> CTm {
        self.err = mag::add(self.err, err);
        self
    }

    pub fn scale(&self, s: &ComplexBall) -> CTm {
        CTm {
            c: self.c.iter().map(|a| a * s).collect(),
            r: self.r,
            err: mag::mul(self.err, s.abs_upper_f64()),
        }
    }

    pub fn scale_real(&self, s: &Ball) -> CTm {
        CTm {
            c: self.c.iter().map(|a| a.mul_real(s)).collect(),
            r: self.r,
            err: mag::mul(self.err, s.abs_upper_f64()),
        }
    }

    pub fn mul(&self, o: &CTm) -> CTm {
        let c = CJet { c: self.c.clone() }.mul(&CJet { c: o.c.clone() }).c;
        let (a, b) = (self.mags(), o.mags());
        let err = mag::add3(
            high_part(&a, &b),
            mag::add(mag::mul(sum_up(&a), o.err), mag::mul(sum_up(&b), self.err)),
            mag::mul(self.err, o.err),
        );
        CTm { c, r: self.r, err }
    }

    pub fn re(&self) -> Tm {
        Tm { c: self.c.iter().map(|z| z.re.clone()).collect(), r: self.r, err: self.err }
    }

    pub fn im(&self) -> Tm {
        Tm { c: self.c.iter().map(|z| z.im.clone()).collect(), r: self.r, err: self.err }
    }

    /// `|f|^2` for real `e`.
    pub fn norm_sqr(&self) -> Tm {
        self.re().sqr().add(&self.im().sqr())
    }

    /// `z0 exp(i w e)` for real `w`: a phase rotating along the line.
    pub fn exp_i_linear(z0: &ComplexBall, w: &Ball, order: usize, r: f64) -> CTm {
        let prec = z0.prec();
        let mut c = Vec::with_capacity(order + 1);
        let mut p = z0.clone();
        let iw = ComplexBall::new(Ball::zero(prec), w.clone());
        for k in 0..=order {
            if k > 0 {
                p = (&p * &iw).mul_real(&Ball::one(prec).div_i64(k as i64));
            }
            c.push(p.clone());
        }
        let err = mag::mul(z0.abs_upper_f64(), taylor_term_upper(mag::mul(w.abs_upper_f64(), r), order + 1));
        CTm { c, r, err }
    }

    /// `1 / (z0 + i w e)`, needing `|w| r < |z0|`.
    pub fn recip_linear(z0: &ComplexBall, w: &Ball, order: usize, r: f64) -> Result<CTm> {
        let prec = z0.prec();
        let inv = z0.recip()?;
        let z_lo = z0.abs().lower_f64();
        let q = mag::div(mag::mul(w.abs_upper_f64(), r), z_lo.next_down());
        if !(z_lo > 0.0 && q < 1.0) {
            return Err(Error::DivisorContainsZero);
        }
        // ratio -i w / z0
        let ratio = &ComplexBall::new(Ball::zero(prec), w.negated()) * &inv;
        let mut c = Vec::with_capacity(order + 1);
        let mut p = inv.clone();
        for k in 0..=order {
            if k > 0 {
                p = &p * &ratio;
            }
            c.push(p.clone());
        }
        let mut qk = 1.0f64;
        for _ in 0..=order {
            qk = mag::mul(qk, q);
        }
        let err = mag::div(mag::div(qk, mag::sub_lower(1.0, q)), z_lo.next_down());
        Ok(CTm { c, r, err })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const P: u32 = 128;

    fn b(v: f64) -> Ball {
        Ball::from_f64(v, P)
    }

    // sample points e in [-r, r] and check the model encloses f(m + e)
    fn check(tm: &Tm, f: impl Fn(f64) -> f64, tol: f64) {
        for i in 0..=20 {
            let e = tm.r * (i as f64 / 10.0 - 1.0);
            let v = tm.eval(&b(e)).add_error(tol);
            assert!(v.contains_f64(f(e)), "e={e}: {v:?} vs {}", f(e));
        }
    }

    #[test]
    fn products_and_reciprocals() {
        let r = 0.4;
        let m = b(1.3);
        let x = Tm::variable(&m, 6, r);
        let (c, s) = Tm::cos_sin_linear(&(&m * &b(3.0)), &b(3.0), 6, r);
        let f = c.mul(&x).add(&s.sqr());
        check(&f, |e| (3.0 * (1.3 + e)).cos() * (1.3 + e) + (3.0 * (1.3 + e)).sin().powi(2), 1e-14);
        assert!(f.err > 0.0);
        let g = x.sqr().add_const(&b(1.0)).recip().unwrap();
        check(&g, |e| 1.0 / ((1.3 + e) * (1.3 + e) + 1.0), 1e-14);
        let h = c.add_const(&b(2.0)).recip().unwrap().mul(&x.powi(3));
        check(&h, |e| (1.3 + e).powi(3) / ((3.0 * (1.3 + e)).cos() + 2.0), 1e-14);
        // a divisor through zero is refused
        assert!(c.recip().is_err());
        let l = Tm::log_variable(&m, 8, r).unwrap();
        check(&l, |e| (1.3 + e).ln(), 1e-14);
        assert!(Tm::log_variable(&b(0.3), 4, r).is_err());
    }

    #[test]
    fn models_tighten_with_order() {
        let m = b(2.0);
        let f = |k: usize| {
            let x = Tm::variable(&m, k, 0.25);
            x.sqr().add_const(&b(1.0)).recip().unwrap().err
        };
        assert!(f(12) < f(6) && f(6) < f(3));
        assert!(f(12) < 1e-9);
    }

    #[test]
    fn integral_of_model() {
        // int_{-1/2}^{1/2} e^{3 (1 + e)} de
        let r = Ball::from_ratio(1, 2, P);
        let (c, s) = Tm::cos_sin_linear(&b(3.0), &b(3.0), 14, 0.5);
        let v = c.integral(&r);
        let exact = ((4.5f64).sin() - (1.5f64).sin()) / 3.0;
        assert!(v.contains_f64(exact) && v.rad() < 1e-9, "{v:?}");
        let w = s.integral(&r);
        assert!(w.contains_f64(((1.5f64).cos() - (4.5f64).cos()) / 3.0));
    }

    #[test]
    fn complex_models() {
        let r = 0.3;
        let z0 = ComplexBall::from_f64(0.5, -0.25, P);
        let e = CTm::exp_i_linear(&z0, &b(2.0), 8, r);
        let inv = CTm::recip_linear(&ComplexBall::from_f64(0.1, 1.0, P), &b(1.0), 10, r).unwrap();
        let prod = e.mul(&inv).norm_sqr();
        for i in 0..=10 {
            let x = r * (i as f64 / 5.0 - 1.0);
            // |z0|^2 / |0.1 + i (1 + x)|^2
            let want = (0.25 + 0.0625) / (0.01 + (1.0 + x) * (1.0 + x));
            assert!(prod.eval(&b(x)).add_error(1e-14).contains_f64(want));
        }
        assert!(CTm::recip_linear(&ComplexBall::from_f64(0.1, 0.0, P), &b(1.0), 4, r).is_err());
    }
}
