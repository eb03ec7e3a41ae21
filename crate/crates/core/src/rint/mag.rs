//! Upper bounds on nonnegative reals stored as `f64`.
//!
//! Every operation here returns a value that is `>=` the exact result of the
//! same operation on its (nonnegative) inputs. Round-to-nearest followed by a
//! single `next_up` is enough for the basic operations since the nearest
//! result is within half an ulp of the exact one.

use rug::float::Round;
use rug::Float;

#[inline]
pub fn add(a: f64, b: f64) -> f64 {
    let s = a + b;
    if s == 0.0 {
        0.0
    } else {
        s.next_up()
    }
}

#[inline]
pub fn add3(a: f64, b: f64, c: f64) -> f64 {
    add(add(a, b), c)
}

#[inline]
pub fn mul(a: f64, b: f64) -> f64 {
    if a == 0.0 || b == 0.0 {
        return 0.0;
    }
    (a * b).next_up()
}

/// Upper bound on `a / b`; `b` must be a lower bound of the true divisor.
#[inline]
pub fn div(a: f64, b: f64) -> f64 {
    if a == 0.0 {
        return 0.0;
    }
    (a / b).next_up()
}

/// Lower bound on `a - b` (may be negative).
#[inline]
pub fn sub_lower(a: f64, b: f64) -> f64 {
    (a - b).next_down()
}

/// `2^k` rounded up, saturating to the smallest subnormal below the range.
pub fn pow2(k: i64) -> f64 {
    if k < -1074 {
        f64::from_bits(1)
    } else if k > 1023 {
        f64::INFINITY
    } else if k >= -1022 {
        f64::from_bits(((k + 1023) as u64) << 52)
    } else {
        f64::from_bits(1u64 << (k + 1074))
    }
}

/// Upper bound on `|x|`.
#[inline]
pub fn abs_upper(x: &Float) -> f64 {
    if x.is_zero() {
        return 0.0;
    }
    let v = x.to_f64_round(if x.is_sign_negative() { Round::Down } else { Round::Up });
    v.abs()
}

/// Lower bound on `|x|`.
#[inline]
pub fn abs_lower(x: &Float) -> f64 {
    if x.is_zero() {
        return 0.0;
    }
    let v = x.to_f64_round(if x.is_sign_negative() { Round::Up } else { Round::Down });
    v.abs()
}

/// Half an ulp of a rounded result at `prec` bits, bounded above.
#[inline]
pub fn half_ulp(x: &Float, prec: u32) -> f64 {
    match x.get_exp() {
        Some(e) => pow2(e as i64 - prec as i64 - 1),
        None => 0.0,
    }
}

/// Upper bound on `exp(x) - 1` for `x >= 0`.
pub fn expm1_upper(x: f64) -> f64 {
    if x == 0.0 {
        return 0.0;
    }
    let f = Float::with_val(53, x);
    let (v, _) = Float::with_val_round(53, f.exp_m1_ref(), Round::Up);
    v.to_f64_round(Round::Up)
}

/// Upper bound on `exp(x)`.
pub fn exp_upper(x: f64) -> f64 {
    let f = Float::with_val(53, x);
    let (v, _) = Float::with_val_round(53, f.exp_ref(), Round::Up);
    v.to_f64_round(Round::Up)
}

/// Upper bound on `ln(x)` for `x > 0`.
pub fn ln_upper(x: f64) -> f64 {
    let f = Float::with_val(53, x);
    let (v, _) = Float::with_val_round(53, f.ln_ref(), Round::Up);
    v.to_f64_round(Round::Up)
}

/// Lower bound on `ln(x)` for `x > 0`.
pub fn ln_lower(x: f64) -> f64 {
    let f = Float::with_val(53, x);
    let (v, _) = Float::with_val_round(53, f.ln_ref(), Round::Down);
    v.to_f64_round(Round::Down)
}

/// Upper bound on `x^y` for `x > 0`.
pub fn powf_upper(x: f64, y: f64) -> f64 {
    let f = Float::with_val(53, x);
    let (v, _) = Float::with_val_round(53, rug::ops::Pow::pow(&f, y), Round::Up);
    v.to_f64_round(Round::Up)
}
