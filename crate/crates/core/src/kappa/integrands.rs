use crate::error::Result;
use crate::hproduct::{h_trunc_jet, h_trunc_tm, TruncationProfile};
use crate::quad::Integrand;
use crate::rint::{mag, Ball, Jet, Tm};
use crate::zetafn::{zeta_line_jet, zeta_line_tm};

fn tol_for(prec: u32) -> f64 {
    mag::pow2(-(prec as i64) + 10)
}

/// Zeta accuracy for Taylor models; the models carry far less than full precision.
fn tm_tol(prec: u32) -> f64 {
    mag::pow2(-(prec as i64) / 2 - 10)
}

/// Taylor model of `W(m + e)` on `|e| <= r`.
pub fn weight_tm(m: &Ball, r: f64, order: usize) -> Result<Tm> {
    let z = zeta_line_tm(1, 1, m, r, order, tm_tol(m.prec()))?.norm_sqr();
    let t4 = Tm::variable(m, order, r).powi(4);
    z.mul(&t4).recip()
}

/// Jet of `W(t) = 1 / (|zeta(1+it)|^2 t^4)` at the ball `t0`.
pub fn weight_jet(t0: &Ball, order: usize) -> Result<Jet> {
    let z = zeta_line_jet(1, 1, t0, order, tol_for(t0.prec()))?.norm_sqr();
    let t4 = Jet::variable(t0, order).powi(4);
    z.mul(&t4).recip()
}

/// `W(t)`, the weight `1 / (|zeta(1+it)|^2 t^4)`.
pub struct WeightIntegrand;

impl Integrand for WeightIntegrand {
    fn eval(&self, t: &Ball) -> Result<Ball> {
        Ok(weight_jet(t, 0)?.c.swap_remove(0))
    }

    fn jet(&self, t: &Ball, order: usize) -> Option<Result<Jet>> {
        Some(weight_jet(t, order))
    }

    fn has_jet(&self) -> bool {
        true
    }

    fn tm(&self, m: &Ball, r: f64, order: usize) -> Option<Result<Tm>> {
        Some(weight_tm(m, r, order))
    }

    fn has_tm(&self) -> bool {
        true
    }
}

/// `H_C(t) W(t)` for a fixed truncation profile; the truncation error is
/// accounted for separately.
pub struct KappaIntegrand<'a> {
    pub profile: &'a TruncationProfile,
}

impl KappaIntegrand<'_> {
    pub fn jet_at(&self, t: &Ball, order: usize) -> Result<Jet> {
        let prec = t.prec().min(self.profile.prec());
        let t = t.with_prec(prec);
        Ok(h_trunc_jet(&t, order, self.profile)?.mul(&weight_jet(&t, order)?))
    }

    pub fn tm_at(&self, m: &Ball, r: f64, order: usize) -> Result<Tm> {
        let prec = m.prec().min(self.profile.prec());
        let m = m.with_prec(prec);
        Ok(h_trunc_tm(&m, r, order, self.profile, tm_tol(prec))?.mul(&weight_tm(&m, r, order)?))
    }
}

impl Integrand for KappaIntegrand<'_> {
    fn eval(&self, t: &Ball) -> Result<Ball> {
        Ok(self.jet_at(t, 0)?.c.swap_remove(0))
    }

    fn jet(&self, t: &Ball, order: usize) -> Option<Result<Jet>> {
        Some(self.jet_at(t, order))
    }

    fn has_jet(&self) -> bool {
        true
    }

    fn tm(&self, m: &Ball, r: f64, order: usize) -> Option<Result<Tm>> {
        Some(self.tm_at(m, r, order))
    }

    fn has_tm(&self) -> bool {
        true
    }
}

/// `f(t) = k log t - 1/|zeta(1+it)|`.
pub struct InvZetaMargin {
    pub k: Ball,
}

impl InvZetaMargin {
    pub fn new(prec: u32) -> InvZetaMargin {
        InvZetaMargin { k: Ball::from_decimal("2.079", prec).expect("literal") }
    }

    pub fn jet_at(&self, t: &Ball, order: usize) -> Result<Jet> {
        let z = zeta_line_jet(1, 1, t, order, tol_for(t.prec()))?.norm_sqr();
        let inv = z.sqrt()?.recip()?;
        let lg = Jet::variable(t, order).log()?.scale(&self.k);
        Ok(lg.sub(&inv))
    }
}

impl Integrand for InvZetaMargin {
    fn eval(&self, t: &Ball) -> Result<Ball> {
        Ok(self.jet_at(t, 0)?.c.swap_remove(0))
    }

    fn jet(&self, t: &Ball, order: usize) -> Option<Result<Jet>> {
        Some(self.jet_at(t, order))
    }

    fn has_jet(&self) -> bool {
        true
    }
}

/// `g(t) = (k log t)^2 |zeta(1+it)|^2 - 1`; for `t > 1` it has the sign of
/// [`InvZetaMargin`] and needs no square root.
pub struct InvZetaGap {
    pub k: Ball,
}

impl InvZetaGap {
    pub fn new(prec: u32) -> InvZetaGap {
        InvZetaGap { k: InvZetaMargin::new(prec).k }
    }

    pub fn tm_at(&self, m: &Ball, r: f64, order: usize) -> Result<Tm> {
        let z = zeta_line_tm(1, 1, m, r, order, tm_tol(m.prec()))?.norm_sqr();
        let lg = Tm::log_variable(m, order, r)?.scale(&self.k).sqr();
        Ok(lg.mul(&z).add_const(&Ball::one(m.prec()).negated()))
    }
}

impl Integrand for InvZetaGap {
    fn eval(&self, t: &Ball) -> Result<Ball> {
        let z = zeta_line_jet(1, 1, t, 0, tol_for(t.prec()))?.norm_sqr().c.swap_remove(0);
        let lg = (&t.log()? * &self.k).sqr();
        Ok(&(&lg * &z) - &Ball::one(t.prec()))
    }

    fn tm(&self, m: &Ball, r: f64, order: usize) -> Option<Result<Tm>> {
        Some(self.tm_at(m, r, order))
    }

    fn has_tm(&self) -> bool {
        true
    }
}
