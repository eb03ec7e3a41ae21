//! Truncated Taylor series with ball coefficients.
//!
//! A jet `c` evaluated "at" a ball `T` means: for every `t` in `T`, `c[k]`
//! encloses `f^(k)(t) / k!`. Arithmetic on jets is the usual truncated power
//! series arithmetic, so the enclosure property is preserved coefficientwise.

use super::ball::Ball;
use super::complex::ComplexBall;
use crate::error::Result;

#[derive(Clone, Debug, PartialEq)]
pub struct Jet {
    pub c: Vec<Ball>,
}

impl Jet {
    pub fn constant(v: Ball, order: usize) -> Jet {
        let prec = v.prec();
        let mut c = Vec::with_capacity(order + 1);
        c.push(v);
        c.resize(order + 1, Ball::zero(prec));
        Jet { c }
    }

    /// The identity `t -> t` expanded at `t0`.
    pub fn variable(t0: &Ball, order: usize) -> Jet {
        let mut j = Jet::constant(t0.clone(), order);
        if order >= 1 {
            j.c[1] = Ball::one(t0.prec());
        }
        j
    }

    pub fn order(&self) -> usize {
        self.c.len() - 1
    }

    pub fn value(&self) -> &Ball {
        &self.c[0]
    }

    pub fn truncate(&self, order: usize) -> Jet {
        Jet { c: self.c[..=order.min(self.order())].to_vec() }
    }

    pub fn add(&self, o: &Jet) -> Jet {
        Jet { c: self.c.iter().zip(&o.c).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, o: &Jet) -> Jet {
        Jet { c: self.c.iter().zip(&o.c).map(|(a, b)| a - b).collect() }
    }

    pub fn negated(&self) -> Jet {
        Jet { c: self.c.iter().map(|a| a.negated()).collect() }
    }

    pub fn scale(&self, s: &Ball) -> Jet {
        Jet { c: self.c.iter().map(|a| a * s).collect() }
    }

    pub fn add_const(&self, v: &Ball) -> Jet {
        let mut j = self.clone();
        j.c[0] = &j.c[0] + v;
        j
    }

    pub fn mul(&self, o: &Jet) -> Jet {
        let n = self.c.len().min(o.c.len());
        let prec = self.c[0].prec().max(o.c[0].prec());
        let mut c = Vec::with_capacity(n);
        for k in 0..n {
            let mut acc = Ball::zero(prec);
            for i in 0..=k {
                if self.c[i].is_exact() && self.c[i].mid().is_zero() {
                    continue;
                }
                if o.c[k - i].is_exact() && o.c[k - i].mid().is_zero() {
                    continue;
                }
                acc = &acc + &(&self.c[i] * &o.c[k - i]);
            }
            c.push(acc);
        }
        Jet { c }
    }

    /// Symmetric square; diagonal terms use `Ball::sqr`, so `c[0]` never dips below 0.
    pub fn sqr(&self) -> Jet {
        let n = self.c.len();
        let prec = self.c[0].prec();
        let mut c = Vec::with_capacity(n);
        for k in 0..n {
            let mut acc = Ball::zero(prec);
            for i in 0..(k + 1) / 2 {
                acc = &acc + &(&self.c[i] * &self.c[k - i]);
            }
            acc = acc.mul_2si(1);
            if k % 2 == 0 {
                acc = &acc + &self.c[k / 2].sqr();
            }
            c.push(acc);
        }
        Jet { c }
    }

    pub fn recip(&self) -> Result<Jet> {
        let n = self.c.len();
        let inv0 = self.c[0].recip()?;
        let mut b: Vec<Ball> = Vec::with_capacity(n);
        b.push(inv0.clone());
        for k in 1..n {
            let mut acc = Ball::zero(inv0.prec());
            for i in 1..=k {
                acc = &acc + &(&self.c[i] * &b[k - i]);
            }
            b.push((&acc * &inv0).negated());
        }
        Ok(Jet { c: b })
    }

    pub fn div(&self, o: &Jet) -> Result<Jet> {
        Ok(self.mul(&o.recip()?))
    }

    pub fn powi(&self, n: u32) -> Jet {
        match n {
            0 => Jet::constant(Ball::one(self.c[0].prec()), self.order()),
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

    pub fn sqrt(&self) -> Result<Jet> {
        let n = self.c.len();
        let b0 = self.c[0].sqrt()?;
        let inv = b0.mul_2si(1).recip()?;
        let mut b: Vec<Ball> = Vec::with_capacity(n);
        b.push(b0);
        for k in 1..n {
            let mut acc = self.c[k].clone();
            for i in 1..k {
                acc = &acc - &(&b[i] * &b[k - i]);
            }
            b.push(&acc * &inv);
        }
        Ok(Jet { c: b })
    }

    pub fn log(&self) -> Result<Jet> {
        let n = self.c.len();
        let inv = self.c[0].recip()?;
        let mut l: Vec<Ball> = Vec::with_capacity(n);
        l.push(self.c[0].log()?);
        for k in 1..n {
            // k a_0 l_k = k a_k - sum_{i=1}^{k-1} i l_i a_{k-i}
            let mut acc = self.c[k].mul_i64(k as i64);
            for i in 1..k {
                acc = &acc - &(&l[i] * &self.c[k - i]).mul_i64(i as i64);
            }
            l.push((&acc * &inv).div_i64(k as i64));
        }
        Ok(Jet { c: l })
    }

    pub fn exp(&self) -> Jet {
        let n = self.c.len();
        let mut e: Vec<Ball> = Vec::with_capacity(n);
        e.push(self.c[0].exp());
        for k in 1..n {
            // k e_k = sum_{i=1}^{k} i a_i e_{k-i}
            let mut acc = Ball::zero(self.c[0].prec());
            for i in 1..=k {
                acc = &acc + &(&self.c[i] * &e[k - i]).mul_i64(i as i64);
            }
            e.push(acc.div_i64(k as i64));
        }
        Jet { c: e }
    }

    /// Jets of `cos(a + b e)` and `sin(a + b e)` in the variable `e`.
    pub fn cos_sin_linear(a: &Ball, b: &Ball, order: usize) -> (Jet, Jet) {
        let (s, c) = a.sin_cos();
        let mut cj = Vec::with_capacity(order + 1);
        let mut sj = Vec::with_capacity(order + 1);
        // d^k/de^k cos(a + b e) = b^k cos(a + b e + k pi/2)
        let mut bk = Ball::one(a.prec());
        for k in 0..=order {
            if k > 0 {
                bk = (&bk * b).div_i64(k as i64);
            }
            let (ck, sk) = match k % 4 {
                0 => (c.clone(), s.clone()),
                1 => (s.negated(), c.clone()),
                2 => (c.negated(), s.negated()),
                _ => (s.clone(), c.negated()),
            };
            cj.push(&ck * &bk);
            sj.push(&sk * &bk);
        }
        (Jet { c: cj }, Jet { c: sj })
    }

    /// Taylor-form enclosure of `f(t)` for `t` in `[m - r, m + r]` from a jet
    /// at `m` (all coefficients but the last) and the top coefficient of a jet
    /// over the whole ball.
    pub fn taylor_form(at_mid: &Jet, over_ball_top: &Ball, r: &Ball) -> Ball {
        let k = at_mid.order() + 1;
        let prec = r.prec();
        let e = Ball::new(rug::Float::new(prec), r.abs_upper_f64());
        let mut acc = over_ball_top.clone();
        for i in (0..k).rev() {
            acc = &(&acc * &e) + &at_mid.c[i];
        }
        acc
    }
}

/// A jet with complex ball coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct CJet {
    pub c: Vec<ComplexBall>,
}

impl CJet {
    pub fn zero(order: usize, prec: u32) -> CJet {
        CJet { c: vec![ComplexBall::zero(prec); order + 1] }
    }

    pub fn constant(v: ComplexBall, order: usize) -> CJet {
        let prec = v.prec();
        let mut c = vec![ComplexBall::zero(prec); order + 1];
        c[0] = v;
        CJet { c }
    }

    pub fn order(&self) -> usize {
        self.c.len() - 1
    }

    pub fn add(&self, o: &CJet) -> CJet {
        CJet { c: self.c.iter().zip(&o.c).map(|(a, b)| a + b).collect() }
    }

    pub fn add_assign(&mut self, o: &CJet) {
        for (a, b) in self.c.iter_mut().zip(&o.c) {
            *a = &*a + b;
        }
    }

    pub fn scale(&self, s: &ComplexBall) -> CJet {
        CJet { c: self.c.iter().map(|a| a * s).collect() }
    }

    pub fn scale_real(&self, s: &Ball) -> CJet {
        CJet { c: self.c.iter().map(|a| a.mul_real(s)).collect() }
    }

    pub fn mul(&self, o: &CJet) -> CJet {
        let n = self.c.len().min(o.c.len());
        let prec = self.c[0].prec();
        let mut c = Vec::with_capacity(n);
        for k in 0..n {
            let mut acc = ComplexBall::zero(prec);
            for i in 0..=k {
                acc = &acc + &(&self.c[i] * &o.c[k - i]);
            }
            c.push(acc);
        }
        CJet { c }
    }

    pub fn recip(&self) -> Result<CJet> {
        let n = self.c.len();
        let inv0 = self.c[0].recip()?;
        let mut b: Vec<ComplexBall> = Vec::with_capacity(n);
        b.push(inv0.clone());
        for k in 1..n {
            let mut acc = ComplexBall::zero(inv0.prec());
            for i in 1..=k {
                acc = &acc + &(&self.c[i] * &b[k - i]);
            }
            b.push(-&(&acc * &inv0));
        }
        Ok(CJet { c: b })
    }

    pub fn conj(&self) -> CJet {
        CJet { c: self.c.iter().map(|z| z.conj()).collect() }
    }

    /// Real and imaginary parts along a real variable.
    pub fn re(&self) -> Jet {
        Jet { c: self.c.iter().map(|z| z.re.clone()).collect() }
    }

    pub fn im(&self) -> Jet {
        Jet { c: self.c.iter().map(|z| z.im.clone()).collect() }
    }

    /// `|f(t)|^2` for real `t`.
    pub fn norm_sqr(&self) -> Jet {
        let re = self.re();
        let im = self.im();
        re.sqr().add(&im.sqr())
    }

    /// Rescales the variable: coefficients of `f(a e)` from those of `f(e)`.
    pub fn rescale_var(&self, a: &ComplexBall) -> CJet {
        let mut p = ComplexBall::one(a.prec());
        let mut c = Vec::with_capacity(self.c.len());
        for (k, z) in self.c.iter().enumerate() {
            if k > 0 {
                p = &p * a;
            }
            c.push(z * &p);
        }
        CJet { c }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rint::DEFAULT_PREC as P;

    #[test]
    fn reciprocal_series() {
        // 1/(1 - e) = 1 + e + e^2 + ...
        let mut j = Jet::constant(Ball::one(P), 5);
        j.c[1] = Ball::from_i64(-1, P);
        let r = j.recip().unwrap();
        for c in &r.c {
            assert!(c.contains_f64(1.0));
        }
    }

    #[test]
    fn sqrt_log_exp_roundtrip() {
        // around t0 = 2: sqrt(t)^2 = t, exp(log t) = t
        let t = Jet::variable(&Ball::from_i64(2, P), 6);
        let sq = t.sqrt().unwrap().sqr();
        let el = t.log().unwrap().exp();
        for k in 0..=6 {
            let want = if k == 0 { 2.0 } else if k == 1 { 1.0 } else { 0.0 };
            assert!(sq.c[k].contains_f64(want), "{k}");
            assert!(el.c[k].contains_f64(want), "{k}");
        }
        // log(1 + e) = e - e^2/2 + e^3/3
        let l = Jet::variable(&Ball::one(P), 3).log().unwrap();
        assert!(l.c[3].contains_rational(&rug::Rational::from((1, 3))));
    }

    #[test]
    fn cos_linear_matches_series() {
        let (c, s) = Jet::cos_sin_linear(&Ball::zero(P), &Ball::from_i64(2, P), 4);
        // cos(2e) = 1 - 2e^2 + (2/3)e^4
        assert!(c.c[0].contains_f64(1.0));
        assert!(c.c[2].contains_f64(-2.0));
        assert!(c.c[4].contains_rational(&rug::Rational::from((2, 3))));
        // sin(2e) = 2e - (4/3) e^3
        assert!(s.c[1].contains_f64(2.0));
        assert!(s.c[3].contains_rational(&rug::Rational::from((-4, 3))));
    }

    #[test]
    fn taylor_form_encloses_quadratic() {
        // f(t) = t^2 on [1, 3]: jet at 2 is (4, 4), top coefficient is 1.
        let mid = Jet { c: vec![Ball::from_i64(4, P), Ball::from_i64(4, P)] };
        let enc = Jet::taylor_form(&mid, &Ball::one(P), &Ball::one(P));
        assert!(enc.contains_f64(1.0) && enc.contains_f64(9.0));
    }
}
