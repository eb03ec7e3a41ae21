use serde::Serialize;

use crate::rint::Ball;

/// Enclosures of the Stieltjes constants `gamma_0..gamma_3`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StieltjesTable {
    pub gamma: [Ball; 4],
}

const GAMMA_BOUNDS: [(&str, &str); 4] = [
    ("0.5772156", "0.5772157"),
    ("-0.0728159", "-0.0728158"),
    ("-0.0096904", "-0.0096903"),
    ("0.0020538", "0.0020539"),
];

impl StieltjesTable {
    pub fn new(prec: u32) -> Self {
        let gamma = GAMMA_BOUNDS
            .map(|(lo, hi)| Ball::from_decimal_interval(lo, hi, prec).expect("literal interval"));
        StieltjesTable { gamma }
    }
}

/// Coefficients of `|zeta(1+it)|^2 = 1/t^2 + a1 + a2 t^2 + r2(t)`, with
/// `|r2(t)| <= r2_coeff t^4` for `|t| <= 1`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LaurentCoeffs {
    pub alpha1: Ball,
    pub alpha2: Ball,
    pub r2_coeff: Ball,
}

impl LaurentCoeffs {
    pub fn new(g: &StieltjesTable) -> Self {
        let [g0, g1, g2, g3] = &g.gamma;
        let prec = g0.prec();
        let alpha1 = &g0.sqr() + &g1.mul_2si(1);
        let alpha2 = &(&g1.sqr() - &(g0 * g2)) - &g3.div_i64(3);

        // The tail of the Laurent series is O*(t^4/16) for |t| <= 1; expand
        // the product with its conjugate and bound every cross term.
        let a0 = g0.abs();
        let a1 = g1.abs();
        let a2 = g2.abs().mul_2si(-1);
        let a3 = g3.abs().div_i64(6);
        let sixteenth = Ball::from_ratio(1, 16, prec);
        let quad = &(&a2.sqr() + &(&a1 * &a3).mul_2si(1)) + &a3.sqr();
        let lin = (&(&(&(&a0 + &a1) + &a2) + &a3) + &Ball::one(prec)).mul_2si(1);
        let r2 = &(&quad + &(&lin * &sixteenth)) + &sixteenth.sqr();
        LaurentCoeffs { alpha1, alpha2, r2_coeff: r2 }
    }

    /// Upper bound used for the remainder, as an exact ball.
    pub fn r2_upper(&self) -> Ball {
        Ball::from_f64(self.r2_coeff.upper_f64(), self.r2_coeff.prec())
    }

    /// `1/t^2 + a1 + a2 t^2 + [-r, r] t^4` for `0 < |t| <= 1`.
    pub fn one_line_sq(&self, t: &Ball) -> crate::Result<Ball> {
        let t2 = t.sqr();
        let main = &(&t2.recip()? + &self.alpha1) + &(&self.alpha2 * &t2);
        let err = (&self.r2_upper() * &t2.sqr()).upper_f64();
        Ok(main.add_error(err))
    }
}
