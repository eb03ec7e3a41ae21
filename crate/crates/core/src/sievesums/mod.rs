//! Direct evaluation of quadratic-sieve quantities for the weights
//! `rho(d) = h(log(D2/d) / log(D2/D1))`, and the asymptotic predictions they
//! are checked against.

mod smoothing;
mod sums;

use std::io::Write;

use serde::Serialize;

pub use smoothing::{Piece, SmoothingFn};
pub use sums::{
    m_sum, m_sum_pairs, m_sum_with, mellin_f, s_sum, s_sum_with, selberg_main, Compensated, MobiusTable,
    SieveLimits,
};

use crate::error::{Error, Result};

/// Midpoint of the certified enclosure of kappa, used by the predictions.
pub const KAPPA_MID: f64 = 0.607314117;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SievePlan {
    pub d1: f64,
    pub d2: f64,
    pub h: SmoothingFn,
}

impl SievePlan {
    pub fn new(d1: f64, d2: f64, h: SmoothingFn) -> Result<SievePlan> {
        if !(d1 >= 1.0 && d2 > d1 && d2.is_finite()) {
            return Err(Error::InvalidPlan(format!("need 1 <= D1 < D2, got D1 = {d1}, D2 = {d2}")));
        }
        Ok(SievePlan { d1, d2, h })
    }

    /// `L = log(D2/D1)`.
    pub fn log_ratio(&self) -> f64 {
        (self.d2 / self.d1).ln()
    }

    /// Largest integer `d` with `d < D2`.
    pub fn d_max(&self) -> u64 {
        (self.d2.ceil() as u64).saturating_sub(1)
    }
}

/// `rho(d) = h(log(D2/d)/L)`: `h(1)` for `d <= D1`, `0` for `d >= D2`.
pub fn rho_weight(d: f64, plan: &SievePlan) -> f64 {
    if d <= plan.d1 {
        plan.h.value_at_1
    } else if d >= plan.d2 {
        0.0
    } else {
        plan.h.eval((plan.d2 / d).ln() / plan.log_ratio())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PredictOrder {
    Main,
    Second,
}

/// Asymptotic prediction for `M(D1, D2; h)`.
///
/// The main term is `|h'|_2^2 / L`. The second-order term is only known for
/// `h0`: `-kappa/log^2 D2` when `D1 = 1` and `-2 kappa/L^2` otherwise; other
/// smoothings get the main term for both orders.
pub fn predict(plan: &SievePlan, order: PredictOrder, kappa: f64) -> f64 {
    let l = plan.log_ratio();
    let main = plan.h.l2_deriv_sq / l;
    match order {
        PredictOrder::Main => main,
        PredictOrder::Second if plan.h.is_h0() => {
            let k = if plan.d1 == 1.0 { kappa } else { 2.0 * kappa };
            main - k / (l * l)
        }
        PredictOrder::Second => main,
    }
}

/// One output line of a sieve run.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SieveRow {
    #[serde(rename = "D1")]
    pub d1: f64,
    #[serde(rename = "D2")]
    pub d2: f64,
    #[serde(rename = "M")]
    pub m: f64,
    pub prediction_main: f64,
    pub prediction_second: f64,
    /// `(M - prediction_main) L^2`
    pub residual_times_l2: f64,
    #[serde(rename = "N")]
    pub n: Option<u64>,
    #[serde(rename = "S")]
    pub s: Option<f64>,
}

/// Compute one row: `M`, the predictions, and `S` when `n` is given.
pub fn sieve_row(plan: &SievePlan, n: Option<u64>, limits: &SieveLimits) -> Result<SieveRow> {
    let m = m_sum_with(plan, plan, limits)?;
    let l = plan.log_ratio();
    let main = predict(plan, PredictOrder::Main, KAPPA_MID);
    let s = n.map(|n| s_sum_with(n, plan, limits)).transpose()?;
    Ok(SieveRow {
        d1: plan.d1,
        d2: plan.d2,
        m,
        prediction_main: main,
        prediction_second: predict(plan, PredictOrder::Second, KAPPA_MID),
        residual_times_l2: (m - main) * l * l,
        n,
        s,
    })
}

/// CSV with a header row; floats use Rust's shortest round-trip form.
pub fn write_csv<W: Write>(rows: &[SieveRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in rows {
        w.serialize(r).map_err(|e| Error::Io(e.to_string()))?;
    }
    w.flush().map_err(|e| Error::Io(e.to_string()))?;
    Ok(())
}

#[cfg(test)]
mod tests;
