use crate::error::{Error, Result};

/// Block length of the segmented sieve, in integers.
pub const BLOCK: usize = 1 << 16;

/// Default cap on sieve limits; primes are stored as `u32`.
pub const DEFAULT_MAX_LIMIT: u64 = u32::MAX as u64;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeTable {
    pub limit: u64,
    pub primes: Vec<u32>,
    /// Smallest prime factor of each `n <= limit` (`spf[0] = spf[1] = 0`).
    pub spf: Option<Vec<u32>>,
}

impl PrimeTable {
    pub fn len(&self) -> usize {
        self.primes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.primes.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = u64> + '_ {
        self.primes.iter().map(|&p| p as u64)
    }

    /// Primes `<= x` as a prefix slice.
    pub fn up_to(&self, x: u64) -> &[u32] {
        let k = self.primes.partition_point(|&p| (p as u64) <= x);
        &self.primes[..k]
    }
}

fn small_primes(n: usize) -> Vec<u32> {
    let mut is = vec![true; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if is[i] {
            out.push(i as u32);
            let mut j = i * i;
            while j <= n {
                is[j] = false;
                j += i;
            }
        }
    }
    out
}

/// All primes `<= n`, by a segmented sieve of Eratosthenes.
pub fn primes_up_to(n: u64) -> Result<PrimeTable> {
    primes_up_to_capped(n, DEFAULT_MAX_LIMIT)
}

pub fn primes_up_to_capped(n: u64, max: u64) -> Result<PrimeTable> {
    if n > max.min(DEFAULT_MAX_LIMIT) {
        return Err(Error::LimitTooLarge { requested: n, max: max.min(DEFAULT_MAX_LIMIT) });
    }
    if n < 2 {
        return Ok(PrimeTable { limit: n, primes: Vec::new(), spf: None });
    }
    let root = (n as f64).sqrt() as u64 + 1;
    let base = small_primes(root as usize);
    let mut primes = Vec::with_capacity(estimate_count(n));
    let mut seg = vec![true; BLOCK];
    let mut lo = 0u64;
    while lo <= n {
        let hi = (lo + BLOCK as u64 - 1).min(n);
        let len = (hi - lo + 1) as usize;
        seg[..len].fill(true);
        for &p in &base {
            let p = p as u64;
            if p * p > hi {
                break;
            }
            let start = (p * p).max(lo.div_ceil(p) * p);
            let mut j = start;
            while j <= hi {
                seg[(j - lo) as usize] = false;
                j += p;
            }
        }
        for (i, &flag) in seg[..len].iter().enumerate() {
            let v = lo + i as u64;
            if flag && v >= 2 {
                primes.push(v as u32);
            }
        }
        lo += BLOCK as u64;
    }
    Ok(PrimeTable { limit: n, primes, spf: None })
}

/// Prime table together with the smallest-prime-factor array.
pub fn primes_with_spf(n: u64, max: u64) -> Result<PrimeTable> {
    if n > max {
        return Err(Error::LimitTooLarge { requested: n, max });
    }
    let spf = spf_table(n as usize);
    let primes = (2..=n as usize).filter(|&i| spf[i] as usize == i).map(|i| i as u32).collect();
    Ok(PrimeTable { limit: n, primes, spf: Some(spf) })
}

/// Smallest prime factor of every integer in `0..=n` (linear sieve).
pub fn spf_table(n: usize) -> Vec<u32> {
    let mut spf = vec![0u32; n + 1];
    let mut primes: Vec<u32> = Vec::new();
    for i in 2..=n {
        if spf[i] == 0 {
            spf[i] = i as u32;
            primes.push(i as u32);
        }
        let si = spf[i];
        for &p in &primes {
            let m = i as u64 * p as u64;
            if p > si || m > n as u64 {
                break;
            }
            spf[m as usize] = p;
        }
    }
    spf
}

fn estimate_count(n: u64) -> usize {
    let x = n as f64;
    if x < 17.0 {
        8
    } else {
        (1.26 * x / x.ln()) as usize
    }
}
