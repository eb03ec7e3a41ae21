//! Process-wide caches: Bernoulli numbers, smallest-prime-factor table and
//! logarithms of small integers.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use rug::float::Round;
use rug::{Float, Integer, Rational};

use crate::primetools::spf_table;
use crate::rint::Ball;

/// Largest Bernoulli index pair `2M` kept in the cache.
pub const MAX_BERNOULLI_M: usize = 100;

fn bernoulli_all() -> &'static Vec<Rational> {
    static B: OnceLock<Vec<Rational>> = OnceLock::new();
    B.get_or_init(|| {
        let n_max = 2 * MAX_BERNOULLI_M;
        let mut b: Vec<Rational> = Vec::with_capacity(n_max + 1);
        b.push(Rational::from(1));
        for n in 1..=n_max {
            // sum_{k=0}^{n} C(n+1, k) B_k = 0
            let mut acc = Rational::new();
            let mut binom = Integer::from(1);
            for (k, bk) in b.iter().enumerate() {
                if k > 0 {
                    binom *= (n + 1 - (k - 1)) as u64;
                    binom /= k as u64;
                }
                acc += Rational::from(&binom) * bk;
            }
            b.push(-acc / Rational::from(n as u64 + 1));
        }
        b
    })
}

/// `B_n` exactly.
pub fn bernoulli(n: usize) -> &'static Rational {
    &bernoulli_all()[n]
}

/// `B_{2j} / (2j)!` exactly.
pub fn bernoulli_over_factorial(j: usize) -> Rational {
    let mut f = Integer::from(1);
    for i in 2..=(2 * j) as u64 {
        f *= i;
    }
    Rational::from(bernoulli(2 * j)) / Rational::from(f)
}

/// Upper bounds on `|B_{2j}| / (2j)!` as doubles, for `j = 0..=MAX_BERNOULLI_M`.
pub fn bernoulli_ratio_upper() -> &'static [f64] {
    static R: OnceLock<Vec<f64>> = OnceLock::new();
    R.get_or_init(|| {
        (0..=MAX_BERNOULLI_M)
            .map(|j| {
                let r = bernoulli_over_factorial(j).abs();
                Float::with_val_round(64, &r, Round::Up).0.to_f64_round(Round::Up)
            })
            .collect()
    })
}

/// Smallest prime factor table covering at least `0..=n`.
pub fn spf(n: usize) -> Arc<Vec<u32>> {
    static SPF: Mutex<Option<Arc<Vec<u32>>>> = Mutex::new(None);
    let mut guard = SPF.lock().expect("spf lock");
    if let Some(t) = guard.as_ref() {
        if t.len() > n {
            return t.clone();
        }
    }
    let size = n.max(1 << 12).next_power_of_two();
    let t = Arc::new(spf_table(size));
    *guard = Some(t.clone());
    t
}

/// `log n` for `n` in `0..=N` (entry 0 unused) at the given precision.
pub fn logs(n: usize, prec: u32) -> Arc<Vec<Ball>> {
    static LOGS: OnceLock<Mutex<HashMap<u32, Arc<Vec<Ball>>>>> = OnceLock::new();
    let map = LOGS.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = map.lock().expect("log lock");
    if let Some(t) = guard.get(&prec) {
        if t.len() > n {
            return t.clone();
        }
    }
    let size = n.max(1 << 10).next_power_of_two();
    let spf = spf(size);
    let mut v: Vec<Ball> = Vec::with_capacity(size + 1);
    v.push(Ball::zero(prec));
    v.push(Ball::zero(prec));
    for k in 2..=size {
        let p = spf[k] as usize;
        let l = if p == k {
            Ball::from_u64(k as u64, prec).log().expect("k >= 2")
        } else {
            &v[p] + &v[k / p]
        };
        v.push(l);
    }
    let t = Arc::new(v);
    guard.insert(prec, t.clone());
    t
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_bernoulli_numbers() {
        assert_eq!(*bernoulli(1), Rational::from((-1, 2)));
        assert_eq!(*bernoulli(2), Rational::from((1, 6)));
        assert_eq!(*bernoulli(4), Rational::from((-1, 30)));
        assert_eq!(*bernoulli(12), Rational::from((-691, 2730)));
        assert_eq!(*bernoulli(7), Rational::new());
    }

    #[test]
    fn ratio_decays_like_two_pi() {
        let r = bernoulli_ratio_upper();
        // |B_2j|/(2j)! ~ 2 / (2 pi)^{2j}
        let approx = 2.0 / (2.0 * std::f64::consts::PI).powi(40);
        assert!((r[20] / approx - 1.0).abs() < 1e-6);
    }

    #[test]
    fn log_table_is_additive() {
        let t = logs(100, 128);
        assert!(t[12].contains(&(&t[3] + &t[4])) || t[12].overlaps(&(&t[3] + &t[4])));
        assert!(t[97].contains_f64(97f64.ln()) || (t[97].mid_f64() - 97f64.ln()).abs() < 1e-15);
    }
}
