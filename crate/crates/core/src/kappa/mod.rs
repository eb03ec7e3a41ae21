//! Certified enclosure of
//!
//! ```text
//! kappa = (1/pi) ( 1/eps + int_0^eps (t^2 - H/|zeta|^2) dt/t^4
//!                  - int_eps^T H(t) W(t) dt - int_T^inf H(t) W(t) dt ),
//! W(t) = 1 / (|zeta(1+it)|^2 t^4).
//! ```
//!
//! `[eps, T0]` is split into rigorously integrated segments, each using its
//! own accelerated product `H_C`; `[T0, T]` is only bounded above (using
//! `0 < H <= 1`) and the tail beyond `T` is bounded analytically.

mod integrands;
mod plan;

use std::time::{Duration, Instant};

use rug::Rational;
use serde::Serialize;

pub use integrands::{weight_jet, weight_tm, InvZetaGap, InvZetaMargin, KappaIntegrand, WeightIntegrand};
pub use plan::{parse_rational, KappaPlan, PlanSummary};

use crate::error::{domain, Result};
use crate::hproduct::{truncation_profile_prec, TruncationProfile};
use crate::primetools::c2_default;
use crate::quad::{
    integrate_rigorous, prove_positive_with, sup_bound_grid, GridBound, GridOptions, Integrand,
    PositivityOptions, PositivityReport, QuadOptions,
};
use crate::rint::{Ball, DEFAULT_PREC};
use crate::zetafn::laurent_default;

/// Ball containing `H(t) / (|zeta(1+it)|^2 t^4)`, the truncation error of
/// `profile` included.
pub fn integrand(t: &Ball, profile: &TruncationProfile) -> Result<Ball> {
    if !(t.lower_f64() > 0.0) {
        return domain("integrand needs a positive t-ball");
    }
    let h = crate::hproduct::h_trunc_jet(t, 0, profile)?.c.swap_remove(0).add_error(profile.err.upper_f64());
    let w = weight_jet(t, 0)?.c.swap_remove(0);
    // both factors are positive; drop the part of the ball below zero
    let v = &h * &w;
    if v.lower_f64() < 0.0 {
        return Ok(v.zero_to_upper());
    }
    Ok(v)
}

/// `c = c2 + gamma_0^2 + 2 gamma_1`, the linear coefficient of the near-zero term.
pub fn near_zero_coefficient() -> Ball {
    let l = laurent_default();
    &c2_default() + &l.alpha1
}

/// `int_0^eps (t^2 - H/|zeta(1+it)|^2) dt / t^4 = c eps + O*(eps^3)`.
pub fn near_zero_term(eps: &Ball) -> Result<Ball> {
    if !(eps.lower_f64() > 0.0) || eps.upper_f64() > 0.5 {
        return domain("near-zero term needs 0 < eps <= 1/2");
    }
    let prec = eps.prec().max(DEFAULT_PREC);
    let eps = eps.with_prec(prec);
    let v = &near_zero_coefficient().with_prec(prec) * &eps;
    let e3 = eps.powi(3).abs_upper_f64();
    Ok(v.add_error(e3))
}

/// `[0, 68.2 (9 log^2 T + 6 log T + 2) / T^3]`, bounding `int_T^inf H W`.
pub fn tail_term(t: &Ball) -> Result<Ball> {
    if !(t.lower_f64() >= 2.0) {
        return domain("tail bound needs T >= 2");
    }
    let prec = t.prec();
    let l = t.log()?;
    let poly = &(&l.sqr().mul_i64(9) + &l.mul_i64(6)) + &Ball::from_i64(2, prec);
    let v = (&Ball::from_decimal("68.2", prec)? * &poly).div_ball(&t.powi(3))?;
    Ok(v.zero_to_upper())
}

/// The constant of the tail bound: `42.9^2 / 27` rounded up to one decimal.
pub fn tail_constant() -> Rational {
    let exact = Rational::from((184_041, 2_700));
    let tenths = Rational::from(&exact * 10u32).ceil();
    Rational::from((tenths.numer().clone(), 10u32))
}

#[derive(Clone, Debug, Serialize)]
pub struct SegmentReport {
    pub a: String,
    pub b: String,
    #[serde(rename = "C")]
    pub cutoff: u64,
    /// `int H_C W` over the segment.
    pub truncated: Ball,
    /// `int W` over the segment, used for the truncation widening.
    pub weight: Ball,
    /// `e^rho(C) - 1`.
    pub truncation_err: Ball,
    /// Enclosure of `int H W` over the segment.
    pub value: Ball,
    pub panels: usize,
    pub evals: u64,
    pub converged: bool,
    pub target_width: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct GridReport {
    pub a: String,
    pub b: String,
    pub step: String,
    pub cells: u64,
    /// Upper bound on `W` over `[a, b]`.
    pub sup: f64,
    /// `[0, sum step * sup_cell W]`.
    pub bound: Ball,
}

#[derive(Clone, Debug, Serialize)]
pub struct KappaReport {
    pub plan: PlanSummary,
    pub near_zero_coefficient: Ball,
    pub near_zero: Ball,
    pub segments: Vec<SegmentReport>,
    pub grid: GridReport,
    pub tail: Ball,
    pub kappa: Ball,
    pub width: f64,
    pub target_width: f64,
    /// Anything that keeps the run from being a clean certificate.
    pub anomalies: Vec<String>,
    #[serde(skip)]
    pub runtime: Duration,
}

impl KappaReport {
    pub fn budget_exceeded(&self) -> bool {
        self.segments.iter().any(|s| !s.converged)
    }

    /// Target width reached and nothing flagged.
    pub fn is_clean(&self) -> bool {
        self.anomalies.is_empty() && self.width <= self.target_width
    }

    pub fn audit_text(&self) -> String {
        let mut out = String::new();
        let r = |b: &Ball| {
            let rep = crate::rint::BallRepr::from_ball(b);
            format!("{} +/- {}", rep.mid, rep.rad)
        };
        out.push_str(&format!("eps = {}, T0 = {}, T = {}\n", self.plan.eps, self.plan.t0, self.plan.t_end));
        out.push_str(&format!("near-zero coefficient c = {}\n", r(&self.near_zero_coefficient)));
        out.push_str(&format!("int_0^eps (t^2 - H/|zeta|^2) dt/t^4 = {}\n", r(&self.near_zero)));
        for s in &self.segments {
            out.push_str(&format!(
                "int_[{}, {}] H_{} W = {}; e^rho - 1 <= {:.4e}; int W = {}; total {}\n",
                s.a,
                s.b,
                s.cutoff,
                r(&s.truncated),
                s.truncation_err.upper_f64(),
                r(&s.weight),
                r(&s.value)
            ));
        }
        out.push_str(&format!(
            "int_[{}, {}] W <= {:.6e} (step {}, {} cells)\n",
            self.grid.a,
            self.grid.b,
            self.grid.bound.upper_f64(),
            self.grid.step,
            self.grid.cells
        ));
        out.push_str(&format!("int_T^inf H W <= {:.6e}\n", self.tail.upper_f64()));
        out.push_str(&format!("kappa = {}\n", r(&self.kappa)));
        out.push_str(&format!("width = {:.3e} (target {:.3e})\n", self.width, self.target_width));
        for a in &self.anomalies {
            out.push_str(&format!("anomaly: {a}\n"));
        }
        out
    }
}

fn segment(
    a: &Rational,
    b: &Rational,
    cutoff: u64,
    width: f64,
    plan: &KappaPlan,
) -> Result<SegmentReport> {
    let profile = truncation_profile_prec(cutoff, plan.prec)?;
    let opts = QuadOptions { prec: plan.prec, ..plan.quad.clone() };
    let main = integrate_rigorous(&KappaIntegrand { profile: &profile }, a, b, width, &opts)?;
    let err = profile.err.upper_f64();
    // the widening only needs a rough upper bound on int W
    let w_target = (width / (10.0 * err)).min(1e6);
    let w_opts = QuadOptions { order: 8, prec: 64, ..plan.quad.clone() };
    let weight = integrate_rigorous(&WeightIntegrand, a, b, w_target, &w_opts)?;
    let widen = crate::rint::mag::mul(err, weight.total.upper_f64());
    let value = main.total.clone().add_error(widen);
    Ok(SegmentReport {
        a: plan::fmt_rational(a),
        b: plan::fmt_rational(b),
        cutoff,
        truncated: main.total,
        weight: weight.total,
        truncation_err: profile.err.clone(),
        value,
        panels: main.panels,
        evals: main.evals,
        converged: main.converged,
        target_width: width,
    })
}

/// Upper bound for `int_a^b W` from cell-wise suprema.
pub fn weight_grid_bound(a: &Rational, b: &Rational, step: &Rational, opts: &GridOptions) -> Result<GridBound> {
    if !(*a >= 2) {
        return domain("grid bound needs a >= 2");
    }
    sup_bound_grid(&WeightIntegrand, a, b, step, opts)
}

pub fn compute_kappa(plan: &KappaPlan) -> Result<KappaReport> {
    plan.validate()?;
    let start = Instant::now();
    let prec = plan.prec;
    let bounds = plan.segment_bounds();
    let jobs: Vec<(Rational, Rational, u64, f64)> = bounds
        .windows(2)
        .zip(plan.cutoffs.iter().zip(&plan.segment_widths))
        .map(|(w, (&c, &tw))| (w[0].clone(), w[1].clone(), c, tw))
        .collect();
    let (segs, grid) = rayon::join(
        || {
            use rayon::prelude::*;
            jobs.par_iter().map(|(a, b, c, w)| segment(a, b, *c, *w, plan)).collect::<Vec<_>>()
        },
        || weight_grid_bound(&plan.t0, &plan.t_end, &plan.grid_step, &plan.grid),
    );
    let segments: Vec<SegmentReport> = segs.into_iter().collect::<Result<_>>()?;
    let grid = grid?;
    let eps = Ball::from_rational(&plan.eps, prec);
    let near_zero = near_zero_term(&eps)?;
    let tail = tail_term(&Ball::from_rational(&plan.t_end, prec))?;
    let grid_ball = Ball::from_f64(grid.integral.upper_f64(), prec).zero_to_upper();

    let mut acc = &eps.recip()? + &near_zero;
    for s in &segments {
        acc = &acc - &s.value;
    }
    acc = &(&acc - &grid_ball) - &tail;
    let kappa = acc.div_ball(&Ball::pi(prec))?;
    let width = kappa.width_f64();

    let mut anomalies = Vec::new();
    for s in &segments {
        if !s.converged {
            anomalies.push(format!("segment [{}, {}] stopped at width {:.3e}", s.a, s.b, s.truncated.width_f64()));
        }
    }
    if !(kappa.lower_f64() > 0.0 && kappa.upper_f64() < 1.0) {
        anomalies.push("kappa not certified inside (0, 1)".to_string());
    }
    Ok(KappaReport {
        plan: plan.summary(),
        near_zero_coefficient: near_zero_coefficient(),
        near_zero,
        segments,
        grid: GridReport {
            a: plan::fmt_rational(&plan.t0),
            b: plan::fmt_rational(&plan.t_end),
            step: plan::fmt_rational(&plan.grid_step),
            cells: grid.cells,
            sup: grid.sup,
            bound: grid_ball,
        },
        tail,
        kappa,
        width,
        target_width: plan.target_width,
        anomalies,
        runtime: start.elapsed(),
    })
}

/// Certify `2.079 log t - 1/|zeta(1+it)| > 0` on `[a, b]`, `2 <= a < b <= 500`.
pub fn verify_inv_zeta(a: &Rational, b: &Rational, max_depth: u32) -> Result<PositivityReport> {
    if !(*a >= 2 && *b <= 500) {
        return domain("the sharp bound is checked on [2, 500] only");
    }
    let f = InvZetaGap::new(64);
    let cells = Rational::from(b - a).ceil().numer().to_u32().unwrap_or(1).max(1);
    let opts = PositivityOptions { order: 6, initial_cells: cells, prec: 64 };
    prove_positive_with(&f as &dyn Integrand, a, b, max_depth, &opts)
}

#[cfg(test)]
mod tests;
