use rug::ops::Pow;
use rug::{Integer, Rational};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hproduct::MIN_CUTOFF;
use crate::quad::{GridOptions, QuadOptions};
use crate::rint::DEFAULT_PREC;

/// Parse `"0.002"`, `"2e-3"`, `"1/500"` or `"7500"` exactly.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    if let Some((n, d)) = s.split_once('/') {
        let n: Integer = n.trim().parse().map_err(|_| bad())?;
        let d: Integer = d.trim().parse().map_err(|_| bad())?;
        if d == 0 {
            return Err(bad());
        }
        return Ok(Rational::from((n, d)));
    }
    let (mant, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().map_err(|_| bad())?),
        None => (s, 0),
    };
    let (neg, mant) = match mant.strip_prefix('-') {
        Some(m) => (true, m),
        None => (false, mant.strip_prefix('+').unwrap_or(mant)),
    };
    let (int, frac) = mant.split_once('.').unwrap_or((mant, ""));
    if int.is_empty() && frac.is_empty() {
        return Err(bad());
    }
    if !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let digits: Integer = format!("{int}{frac}0").parse::<Integer>().map_err(|_| bad())? / 10u32;
    let scale = exp - frac.len() as i32;
    let ten = Integer::from(10);
    let mut v = if scale >= 0 {
        Rational::from(digits * ten.pow(scale as u32))
    } else {
        Rational::from((digits, ten.pow((-scale) as u32)))
    };
    if neg {
        v = -v;
    }
    Ok(v)
}

/// Exact decimal when the denominator allows it, `p/q` otherwise.
pub(crate) fn fmt_rational(q: &Rational) -> String {
    let mut d = q.denom().clone();
    let (mut twos, mut fives) = (0u32, 0u32);
    while d.is_divisible_u(2) {
        d /= 2u32;
        twos += 1;
    }
    while d.is_divisible_u(5) {
        d /= 5u32;
        fives += 1;
    }
    if d != 1 {
        return q.to_string();
    }
    let k = twos.max(fives);
    let scaled = Rational::from(q * Integer::from(10u32).pow(k));
    let n = scaled.numer().clone();
    if k == 0 {
        return n.to_string();
    }
    let neg = n < 0;
    let s = n.abs().to_string();
    let s = format!("{:0>width$}", s, width = k as usize + 1);
    let (i, f) = s.split_at(s.len() - k as usize);
    format!("{}{}.{}", if neg { "-" } else { "" }, i, f)
}

/// Parameters of the kappa computation; all abscissae are exact rationals.
#[derive(Clone, Debug)]
pub struct KappaPlan {
    pub eps: Rational,
    /// Interior split points of `[eps, T0]`.
    pub splits: Vec<Rational>,
    pub t0: Rational,
    pub t_end: Rational,
    /// One cutoff `C` per segment of `[eps, T0]`.
    pub cutoffs: Vec<u64>,
    /// Target width of each segment's `int H_C W`.
    pub segment_widths: Vec<f64>,
    /// Target width of the kappa ball.
    pub target_width: f64,
    pub grid_step: Rational,
    pub grid: GridOptions,
    pub quad: QuadOptions,
    pub prec: u32,
}

#[derive(Clone, Debug, Serialize)]
pub struct PlanSummary {
    pub eps: String,
    pub splits: Vec<String>,
    pub t0: String,
    pub t_end: String,
    pub cutoffs: Vec<u64>,
    pub segment_widths: Vec<f64>,
    pub target_width: f64,
    pub grid_step: String,
    pub grid_order: usize,
    pub quad_order: usize,
    pub prec: u32,
}

impl Default for KappaPlan {
    fn default() -> Self {
        let q = |s: &str| parse_rational(s).expect("literal");
        let mut plan = KappaPlan {
            eps: q("0.002"),
            splits: vec![q("0.2"), q("1")],
            t0: q("200"),
            t_end: q("7500"),
            cutoffs: vec![3000, 750, 250],
            segment_widths: Vec::new(),
            target_width: 2e-5,
            grid_step: q("0.01"),
            grid: GridOptions { order: 6, cells_per_block: 25, prec: 64 },
            quad: QuadOptions::default(),
            prec: DEFAULT_PREC,
        };
        plan.set_target_width(2e-5);
        plan
    }
}

impl KappaPlan {
    /// Set the kappa target and spread a tenth of it (in integral units)
    /// evenly over the segments.
    pub fn set_target_width(&mut self, w: f64) {
        self.target_width = w;
        let n = self.splits.len() + 1;
        let each = w * std::f64::consts::PI / (10.0 * n as f64);
        self.segment_widths = vec![each; n];
    }

    /// `eps, splits.., T0`.
    pub fn segment_bounds(&self) -> Vec<Rational> {
        let mut v = vec![self.eps.clone()];
        v.extend(self.splits.iter().cloned());
        v.push(self.t0.clone());
        v
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidPlan(m));
        let half = Rational::from((1, 2));
        if !(self.eps > 0 && self.eps <= half) {
            return bad(format!("eps = {} must lie in (0, 1/2]", fmt_rational(&self.eps)));
        }
        let b = self.segment_bounds();
        if b.windows(2).any(|w| w[0] >= w[1]) || self.t0 >= self.t_end {
            return bad("need eps < splits < T0 < T, strictly increasing".into());
        }
        if self.t0 < 2 {
            return bad("T0 must be at least 2".into());
        }
        let n = b.len() - 1;
        if self.cutoffs.len() != n || self.segment_widths.len() != n {
            return bad(format!("expected {n} cutoffs and segment widths"));
        }
        if let Some(c) = self.cutoffs.iter().find(|&&c| c < MIN_CUTOFF) {
            return bad(format!("cutoff {c} below {MIN_CUTOFF}"));
        }
        if self.segment_widths.iter().chain([&self.target_width]).any(|w| !(*w > 0.0)) {
            return bad("widths must be positive".into());
        }
        if self.grid_step <= 0 || *(Rational::from(&self.t_end - &self.t0) / &self.grid_step).denom() != 1 {
            return bad("grid step must divide T - T0".into());
        }
        if self.prec < 32 {
            return bad("precision below 32 bits".into());
        }
        Ok(())
    }

    pub fn summary(&self) -> PlanSummary {
        PlanSummary {
            eps: fmt_rational(&self.eps),
            splits: self.splits.iter().map(fmt_rational).collect(),
            t0: fmt_rational(&self.t0),
            t_end: fmt_rational(&self.t_end),
            cutoffs: self.cutoffs.clone(),
            segment_widths: self.segment_widths.clone(),
            target_width: self.target_width,
            grid_step: fmt_rational(&self.grid_step),
            grid_order: self.grid.order,
            quad_order: self.quad.order,
            prec: self.prec,
        }
    }
}
