use rayon::prelude::*;

use super::{rho_weight, SievePlan};
use crate::error::{domain, Error, Result};
use crate::primetools::spf_table;
use crate::rint::{Ball, ComplexBall};

/// Neumaier's compensated sum.
#[derive(Clone, Copy, Debug, Default)]
pub struct Compensated {
    sum: f64,
    comp: f64,
}

impl Compensated {
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

impl FromIterator<f64> for Compensated {
    fn from_iter<I: IntoIterator<Item = f64>>(it: I) -> Self {
        let mut c = Compensated::default();
        for x in it {
            c.add(x);
        }
        c
    }
}

/// Mobius and Euler phi on `0..=limit`.
#[derive(Clone, Debug)]
pub struct MobiusTable {
    pub limit: u64,
    pub mu: Vec<i8>,
    pub phi: Vec<u64>,
}

impl MobiusTable {
    pub fn new(limit: u64) -> MobiusTable {
        let n = limit as usize;
        let spf = spf_table(n);
        let mut mu = vec![0i8; n + 1];
        let mut phi = vec![0u64; n + 1];
        if n >= 1 {
            mu[1] = 1;
            phi[1] = 1;
        }
        for i in 2..=n {
            let p = spf[i] as usize;
            let j = i / p;
            if j % p == 0 {
                mu[i] = 0;
                phi[i] = phi[j] * p as u64;
            } else {
                mu[i] = -mu[j];
                phi[i] = phi[j] * (p as u64 - 1);
            }
        }
        MobiusTable { limit, mu, phi }
    }

    pub fn is_squarefree(&self, n: u64) -> bool {
        self.mu[n as usize] != 0
    }
}

#[derive(Clone, Debug)]
pub struct SieveLimits {
    /// Largest admissible `D2`.
    pub max_d2: f64,
    /// Largest admissible `N` in `s_sum`.
    pub max_n: u64,
}

impl Default for SieveLimits {
    fn default() -> Self {
        SieveLimits { max_d2: 1e5, max_n: 20_000_000 }
    }
}

fn check_d2(plan: &SievePlan, limits: &SieveLimits) -> Result<()> {
    if plan.d2 > limits.max_d2 {
        return Err(Error::LimitTooLarge { requested: plan.d2.ceil() as u64, max: limits.max_d2 as u64 });
    }
    Ok(())
}

/// `mu(d) rho(d) / d` for `d < D2`, indexed from 1.
fn weights(plan: &SievePlan, table: &MobiusTable, n: u64) -> Vec<f64> {
    (0..=n)
        .map(|d| {
            if d == 0 || table.mu[d as usize] == 0 {
                0.0
            } else {
                table.mu[d as usize] as f64 * rho_weight(d as f64, plan) / d as f64
            }
        })
        .collect()
}

/// `sum_{d1, d2} mu(d1) mu(d2) rho1(d1) rho2(d2) / [d1, d2]` with default limits.
pub fn m_sum(plan1: &SievePlan, plan2: &SievePlan) -> Result<f64> {
    m_sum_with(plan1, plan2, &SieveLimits::default())
}

/// The bilinear sum, through `gcd(d1, d2) = sum_{e | d1, e | d2} phi(e)`:
/// `M = sum_e phi(e) y1(e) y2(e)` with `y(e) = sum_{e | d} mu(d) rho(d) / d`.
pub fn m_sum_with(plan1: &SievePlan, plan2: &SievePlan, limits: &SieveLimits) -> Result<f64> {
    if plan1.d1 != plan2.d1 || plan1.d2 != plan2.d2 {
        return domain("both plans must share D1 and D2");
    }
    check_d2(plan1, limits)?;
    let n = plan1.d_max();
    let table = MobiusTable::new(n);
    let w1 = weights(plan1, &table, n);
    let w2 = if plan1.h == plan2.h { None } else { Some(weights(plan2, &table, n)) };
    let terms: Vec<f64> = (1..n as usize + 1)
        .into_par_iter()
        .with_min_len(256)
        .map(|e| {
            if table.mu[e] == 0 {
                return 0.0;
            }
            let y = |w: &[f64]| w[e..].iter().step_by(e).copied().collect::<Compensated>().value();
            let y1 = y(&w1);
            let y2 = w2.as_deref().map_or(y1, y);
            table.phi[e] as f64 * y1 * y2
        })
        .collect();
    Ok(terms.into_iter().collect::<Compensated>().value())
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// The same sum taken literally over squarefree pairs in ascending order;
/// quadratic in `D2`, kept as a reference.
pub fn m_sum_pairs(plan1: &SievePlan, plan2: &SievePlan) -> Result<f64> {
    if plan1.d1 != plan2.d1 || plan1.d2 != plan2.d2 {
        return domain("both plans must share D1 and D2");
    }
    let n = plan1.d_max();
    let table = MobiusTable::new(n);
    let sf: Vec<u64> = (1..=n).filter(|&d| table.is_squarefree(d)).collect();
    let r1: Vec<f64> = sf.iter().map(|&d| table.mu[d as usize] as f64 * rho_weight(d as f64, plan1)).collect();
    let r2: Vec<f64> = sf.iter().map(|&d| table.mu[d as usize] as f64 * rho_weight(d as f64, plan2)).collect();
    let mut acc = Compensated::default();
    for (i, &a) in sf.iter().enumerate() {
        for (j, &b) in sf.iter().enumerate() {
            let lcm = (a / gcd(a, b)) as f64 * b as f64;
            acc.add(r1[i] * r2[j] / lcm);
        }
    }
    Ok(acc.value())
}

/// `S = sum_{n <= N} (sum_{d | n} mu(d) rho(d))^2` with default limits.
pub fn s_sum(n: u64, plan: &SievePlan) -> Result<f64> {
    s_sum_with(n, plan, &SieveLimits::default())
}

pub fn s_sum_with(n: u64, plan: &SievePlan, limits: &SieveLimits) -> Result<f64> {
    check_d2(plan, limits)?;
    if n > limits.max_n {
        return Err(Error::LimitTooLarge { requested: n, max: limits.max_n });
    }
    let dmax = plan.d_max().min(n);
    let table = MobiusTable::new(dmax);
    let mut lam = vec![0.0f64; n as usize + 1];
    for d in 1..=dmax {
        let mu = table.mu[d as usize];
        if mu == 0 {
            continue;
        }
        let w = mu as f64 * rho_weight(d as f64, plan);
        for m in (d..=n).step_by(d as usize) {
            lam[m as usize] += w;
        }
    }
    Ok(lam[1..].iter().map(|l| l * l).collect::<Compensated>().value())
}

/// Selberg's main term `1 / sum_{d <= D2} mu^2(d) / phi(d)`.
pub fn selberg_main(d2: u64) -> f64 {
    let table = MobiusTable::new(d2);
    let s = (1..=d2)
        .filter(|&d| table.is_squarefree(d))
        .map(|d| 1.0 / table.phi[d as usize] as f64)
        .collect::<Compensated>()
        .value();
    1.0 / s
}

/// Mellin transform `F(s) = (D2^s - D1^s) / (L s^2)` of `rho` for `h = h0`.
pub fn mellin_f(s: &ComplexBall, plan: &SievePlan) -> Result<ComplexBall> {
    if !plan.h.is_h0() {
        return domain("closed form Mellin transform needs h = h0");
    }
    let prec = s.prec();
    let d1 = Ball::from_f64(plan.d1, prec);
    let d2 = Ball::from_f64(plan.d2, prec);
    let l = &d2.log()? - &d1.log()?;
    let num = &s.pow_real_base(&d2)? - &s.pow_real_base(&d1)?;
    num.div_c(&s.sqr().mul_real(&l))
}
