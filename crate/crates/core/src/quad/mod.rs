//! Rigorous integration and bound certification over real intervals.
//!
//! Panels use Taylor models. Integrands that provide them directly (a
//! polynomial at the panel midpoint with a remainder over the panel) need one
//! evaluation per panel. Jet integrands combine a jet at the midpoint with the
//! top coefficient of a jet over the whole panel. Integrands that only offer
//! ball evaluation fall back to `(b - a) f([a, b])`.

use rayon::prelude::*;
use rug::Rational;
use serde::Serialize;

use crate::error::{domain, Error, Result};
use crate::rint::{Ball, Jet, Tm, DEFAULT_PREC};

pub trait Integrand: Sync {
    /// Ball enclosing `f(t)` for every `t` in the input ball.
    fn eval(&self, t: &Ball) -> Result<Ball>;

    /// Jet of `f` valid at every point of `t`, when the integrand offers one.
    fn jet(&self, _t: &Ball, _order: usize) -> Option<Result<Jet>> {
        None
    }

    fn has_jet(&self) -> bool {
        false
    }

    /// Taylor model of `e -> f(m + e)` on `|e| <= r`, when offered.
    fn tm(&self, _m: &Ball, _r: f64, _order: usize) -> Option<Result<Tm>> {
        None
    }

    fn has_tm(&self) -> bool {
        false
    }
}

/// Adapter for a closure `&Ball -> Result<Ball>`.
pub struct BallFn<F>(pub F);

impl<F> Integrand for BallFn<F>
where
    F: Fn(&Ball) -> Result<Ball> + Sync,
{
    fn eval(&self, t: &Ball) -> Result<Ball> {
        (self.0)(t)
    }
}

/// Adapter for a closure `(&Ball, order) -> Result<Jet>`.
pub struct JetFn<F>(pub F);

impl<F> Integrand for JetFn<F>
where
    F: Fn(&Ball, usize) -> Result<Jet> + Sync,
{
    fn eval(&self, t: &Ball) -> Result<Ball> {
        Ok((self.0)(t, 0)?.c.swap_remove(0))
    }

    fn jet(&self, t: &Ball, order: usize) -> Option<Result<Jet>> {
        Some((self.0)(t, order))
    }

    fn has_jet(&self) -> bool {
        true
    }
}

#[derive(Debug, Clone)]
pub struct QuadOptions {
    /// Taylor order of the panel models.
    pub order: usize,
    /// Evaluation budget (a Taylor panel costs two evaluations).
    pub max_evals: u64,
    pub max_depth: u32,
    /// Number of equal panels the interval starts with.
    pub initial_panels: u32,
    pub prec: u32,
}

impl Default for QuadOptions {
    fn default() -> Self {
        QuadOptions { order: 12, max_evals: 2_000_000, max_depth: 48, initial_panels: 1, prec: DEFAULT_PREC }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Panel {
    pub a: Rational,
    pub b: Rational,
    pub value: Ball,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QuadResult {
    pub total: Ball,
    pub panels: usize,
    pub evals: u64,
    /// False when the budget ran out before reaching the target width.
    pub converged: bool,
}

impl QuadResult {
    pub fn width(&self) -> f64 {
        self.total.width_f64()
    }

    /// `BudgetExceeded` unless the target was reached.
    pub fn require_converged(self) -> Result<QuadResult> {
        if self.converged {
            Ok(self)
        } else {
            Err(Error::BudgetExceeded { evals: self.evals, width: self.width() })
        }
    }
}

/// `[a, b]` as a ball; exact when both endpoints are representable.
pub fn interval_ball(a: &Rational, b: &Rational, prec: u32) -> Ball {
    let lo = Ball::from_rational(a, prec).lower();
    let hi = Ball::from_rational(b, prec).upper();
    Ball::from_endpoints(&lo, &hi, prec)
}

fn midpoint(a: &Rational, b: &Rational) -> Rational {
    Rational::from(a + b) / 2u32
}

/// Enclosure of `int_a^b f` over one panel, and the evaluations used.
pub fn panel_integral(f: &dyn Integrand, a: &Rational, b: &Rational, order: usize, prec: u32) -> Result<(Ball, u64)> {
    let whole = interval_ball(a, b, prec);
    let m = Ball::from_rational(&midpoint(a, b), prec);
    let r = Ball::from_rational(&(Rational::from(b - a) / 2u32), prec);
    if let Some(tm) = f.tm(&m, r.abs_upper_f64(), order) {
        return Ok((tm?.integral(&r), 1));
    }
    if let Some(mid) = f.jet(&m, order.saturating_sub(1)) {
        let mid = mid?;
        let top = f.jet(&whole, order).expect("jet offered at the midpoint")?;
        let k_top = order;
        // sum over even k < K of c_k(m) 2 r^{k+1} / (k+1)
        let mut acc = Ball::zero(prec);
        let r2 = r.sqr();
        let mut rp = r.mul_2si(1);
        for k in (0..k_top).step_by(2) {
            if k > 0 {
                rp = &rp * &r2;
            }
            acc = &acc + &(&mid.c[k] * &rp).div_i64(k as i64 + 1);
        }
        let rk = r.powi(k_top as u32 + 1).mul_2si(1).div_i64(k_top as i64 + 1);
        let rem = &top.c[k_top] * &rk;
        let rem = if k_top % 2 == 0 { rem } else { Ball::zero(prec).add_error(rem.abs_upper_f64()) };
        Ok((&acc + &rem, 2))
    } else {
        let v = f.eval(&whole)?;
        Ok((&v * &Ball::from_rational(&Rational::from(b - a), prec), 1))
    }
}

/// Adaptive enclosure of `int_a^b f(t) dt`.
///
/// Panels are bisected at their exact midpoint until each one's width is at
/// most its share `target_width (b_i - a_i) / (b - a)`. Panel values are
/// summed in ascending order, so the result does not depend on scheduling.
pub fn integrate_rigorous(
    f: &dyn Integrand,
    a: &Rational,
    b: &Rational,
    target_width: f64,
    opts: &QuadOptions,
) -> Result<QuadResult> {
    if a >= b {
        return domain("integration needs a < b");
    }
    let len = Rational::from(b - a);
    let mut pending: Vec<(Rational, Rational, u32)> = Vec::new();
    let n0 = opts.initial_panels.max(1);
    for i in 0..n0 {
        let lo = Rational::from(a + Rational::from(&len * Rational::from((i, n0))));
        let hi = Rational::from(a + Rational::from(&len * Rational::from((i + 1, n0))));
        pending.push((lo, hi, 0));
    }
    let len_f = len.to_f64();
    let mut done: Vec<Panel> = Vec::new();
    let mut evals = 0u64;
    let mut converged = true;
    while !pending.is_empty() {
        let results: Vec<(Rational, Rational, u32, Result<(Ball, u64)>)> = pending
            .par_iter()
            .map(|(lo, hi, d)| (lo.clone(), hi.clone(), *d, panel_integral(f, lo, hi, opts.order, opts.prec)))
            .collect();
        pending = Vec::new();
        let out_of_budget = evals + results.iter().map(|r| r.3.as_ref().map_or(2, |v| v.1)).sum::<u64>() > opts.max_evals;
        for (lo, hi, d, res) in results {
            match res {
                Ok((value, n)) => {
                    evals += n;
                    let share = target_width * Rational::from(&hi - &lo).to_f64() / len_f;
                    if value.width_f64() <= share {
                        done.push(Panel { a: lo, b: hi, value });
                    } else if d >= opts.max_depth || out_of_budget {
                        converged = false;
                        done.push(Panel { a: lo, b: hi, value });
                    } else {
                        let m = midpoint(&lo, &hi);
                        pending.push((lo, m.clone(), d + 1));
                        pending.push((m, hi, d + 1));
                    }
                }
                Err(e) => {
                    evals += 2;
                    if d >= opts.max_depth || out_of_budget {
                        return Err(e);
                    }
                    let m = midpoint(&lo, &hi);
                    pending.push((lo, m.clone(), d + 1));
                    pending.push((m, hi, d + 1));
                }
            }
        }
    }
    done.sort_by(|p, q| p.a.cmp(&q.a));
    let mut total = Ball::zero(opts.prec);
    for p in &done {
        total = &total + &p.value;
    }
    let converged = converged && total.width_f64() <= target_width * (1.0 + 1e-9);
    Ok(QuadResult { total, panels: done.len(), evals, converged })
}

#[derive(Debug, Clone)]
pub struct GridOptions {
    /// Taylor order used when the integrand offers jets.
    pub order: usize,
    /// Cells sharing one pair of jet evaluations.
    pub cells_per_block: u32,
    pub prec: u32,
}

impl Default for GridOptions {
    fn default() -> Self {
        GridOptions { order: 6, cells_per_block: 25, prec: DEFAULT_PREC }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GridBound {
    /// Upper bound on `sup f` over `[a, b]`.
    pub sup: f64,
    /// `sum step * upper(f on cell)`, an upper bound for `int_a^b f`.
    pub integral: Ball,
    pub cells: u64,
}

/// Upper bounds on `f` over the cells `[a + k step, a + (k+1) step]`.
pub fn sup_bound_grid(f: &dyn Integrand, a: &Rational, b: &Rational, step: &Rational, opts: &GridOptions) -> Result<GridBound> {
    let count = Rational::from(b - a) / step;
    if *step <= 0 || *count.denom() != 1 || count <= 0 {
        return domain("step must divide b - a");
    }
    let cells = count.numer().to_u64().ok_or_else(|| Error::Domain("too many cells".into()))?;
    let per = if f.has_jet() || f.has_tm() { opts.cells_per_block.max(1) as u64 } else { 1 };
    let blocks = cells.div_ceil(per);
    let step_b = Ball::from_rational(step, opts.prec);
    let uppers: Vec<Result<Vec<f64>>> = (0..blocks)
        .into_par_iter()
        .map(|k| {
            let c0 = k * per;
            let c1 = (c0 + per).min(cells);
            let lo = Rational::from(a + Rational::from(step * c0));
            let hi = Rational::from(a + Rational::from(step * c1));
            block_uppers(f, &lo, &hi, step, c1 - c0, opts)
        })
        .collect();
    let mut sup = f64::NEG_INFINITY;
    let mut total = Ball::zero(opts.prec);
    for u in uppers {
        for v in u? {
            sup = sup.max(v);
            total = &total + &(&Ball::from_f64(v, opts.prec) * &step_b);
        }
    }
    let integral = Ball::from_f64(total.upper_f64(), opts.prec);
    Ok(GridBound { sup, integral, cells })
}

fn block_uppers(f: &dyn Integrand, lo: &Rational, hi: &Rational, step: &Rational, n: u64, opts: &GridOptions) -> Result<Vec<f64>> {
    let prec = opts.prec;
    let cell = |i: u64| {
        let a = Rational::from(lo + Rational::from(step * i));
        let b = Rational::from(&a + step);
        (a, b)
    };
    let m = Ball::from_rational(&midpoint(lo, hi), prec);
    let half = Ball::from_rational(&(Rational::from(hi - lo) / 2u32), prec);
    // a block too wide for the model falls back to jets
    if let Some(Ok(tm)) = f.tm(&m, half.abs_upper_f64(), opts.order) {
        return Ok((0..n)
            .map(|i| {
                let (a, b) = cell(i);
                let lo = &Ball::from_rational(&a, prec) - &m;
                let hi = &Ball::from_rational(&b, prec) - &m;
                tm.range_on(&lo, &hi).upper_f64()
            })
            .collect());
    }
    if !f.has_jet() {
        return (0..n).map(|i| {
            let (a, b) = cell(i);
            Ok(f.eval(&interval_ball(&a, &b, prec))?.upper_f64())
        }).collect();
    }
    let mid = f.jet(&Ball::from_rational(&midpoint(lo, hi), prec), opts.order.saturating_sub(1)).expect("jet offered")?;
    let top = f.jet(&interval_ball(lo, hi, prec), opts.order).expect("jet offered")?;
    // derivative of the Taylor polynomial
    let dmid: Vec<Ball> = (1..mid.c.len()).map(|k| mid.c[k].mul_i64(k as i64)).collect();
    let k_top = opts.order as u32;
    (0..n)
        .map(|i| {
            let (a, b) = cell(i);
            let e_cell = &interval_ball(&a, &b, prec) - &m;
            let ec = &Ball::from_rational(&midpoint(&a, &b), prec) - &m;
            let h = Ball::from_rational(&(Rational::from(&b - &a) / 2u32), prec);
            // mean value form of the polynomial part plus the remainder
            let p = horner(&mid.c, &ec);
            let dp = horner(&dmid, &e_cell);
            let spread = Ball::zero(prec).add_error((&dp * &h).abs_upper_f64());
            let rem = &top.c[k_top as usize] * &e_cell.powi(k_top);
            Ok((&(&p + &spread) + &rem).upper_f64())
        })
        .collect()
}

fn horner(c: &[Ball], e: &Ball) -> Ball {
    let mut acc = Ball::zero(e.prec());
    for ck in c.iter().rev() {
        acc = &(&acc * e) + ck;
    }
    acc
}

#[derive(Debug, Clone)]
pub struct PositivityOptions {
    /// Taylor order of the cell enclosures (jet integrands only).
    pub order: usize,
    pub initial_cells: u32,
    pub prec: u32,
}

impl Default for PositivityOptions {
    fn default() -> Self {
        PositivityOptions { order: 2, initial_cells: 1, prec: DEFAULT_PREC }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PositivityReport {
    pub positive: bool,
    pub cells: u64,
    pub max_depth: u32,
    /// Smallest certified lower bound over the accepted cells.
    pub min_lower: f64,
}

/// Enclosure of `f` over `[a, b]`: Taylor form when jets are available.
pub fn enclose(f: &dyn Integrand, a: &Rational, b: &Rational, order: usize, prec: u32) -> Result<Ball> {
    let whole = interval_ball(a, b, prec);
    let m = Ball::from_rational(&midpoint(a, b), prec);
    let r = Ball::from_rational(&(Rational::from(b - a) / 2u32), prec);
    if let Some(tm) = f.tm(&m, r.abs_upper_f64(), order) {
        return Ok(tm?.range_on(&r.negated(), &r));
    }
    match f.jet(&m, order.saturating_sub(1)) {
        Some(mid) => {
            let mid = mid?;
            let top = f.jet(&whole, order).expect("jet offered")?;
            Ok(Jet::taylor_form(&mid, &top.c[order], &r))
        }
        None => f.eval(&whole),
    }
}

/// Bisection proof that `f > 0` on `[a, b]`.
///
/// `Ok(true)` when every cell has a positive lower bound, `Ok(false)` as soon
/// as a cell has a nonpositive upper bound, `DepthExceeded` otherwise.
pub fn prove_positive(f: &dyn Integrand, a: &Rational, b: &Rational, max_depth: u32) -> Result<bool> {
    Ok(prove_positive_with(f, a, b, max_depth, &PositivityOptions::default())?.positive)
}

pub fn prove_positive_with(
    f: &dyn Integrand,
    a: &Rational,
    b: &Rational,
    max_depth: u32,
    opts: &PositivityOptions,
) -> Result<PositivityReport> {
    if a >= b {
        return domain("positivity check needs a < b");
    }
    let n0 = opts.initial_cells.max(1);
    let len = Rational::from(b - a);
    let mut stack: Vec<(Rational, Rational, u32)> = (0..n0)
        .rev()
        .map(|i| {
            let lo = Rational::from(a + Rational::from(&len * Rational::from((i, n0))));
            let hi = Rational::from(a + Rational::from(&len * Rational::from((i + 1, n0))));
            (lo, hi, 0)
        })
        .collect();
    let mut cells = 0u64;
    let mut deepest = 0u32;
    let mut min_lower = f64::INFINITY;
    while let Some((lo, hi, d)) = stack.pop() {
        cells += 1;
        deepest = deepest.max(d);
        let v = enclose(f, &lo, &hi, opts.order, opts.prec);
        match v {
            Ok(v) if v.lower_f64() > 0.0 => {
                min_lower = min_lower.min(v.lower_f64());
                continue;
            }
            Ok(v) if v.upper_f64() <= 0.0 => {
                return Ok(PositivityReport { positive: false, cells, max_depth: deepest, min_lower: v.lower_f64() });
            }
            Ok(_) | Err(Error::DivisorContainsZero) | Err(Error::Domain(_)) => {}
            Err(e) => return Err(e),
        }
        if d >= max_depth {
            return Err(Error::DepthExceeded { depth: d });
        }
        let m = midpoint(&lo, &hi);
        stack.push((m.clone(), hi, d + 1));
        stack.push((lo, m, d + 1));
    }
    Ok(PositivityReport { positive: true, cells, max_depth: deepest, min_lower })
}
