//! JSON form of a ball: `{"mid": "<decimal>", "rad": "<decimal>", "prec": bits}`.
//!
//! The printed radius covers both the ball radius and the error made when
//! rounding the midpoint to decimal, so the printed interval always contains
//! the in-memory one.

use rug::float::Round;
use rug::Float;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::ball::Ball;
use super::mag;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BallRepr {
    pub mid: String,
    pub rad: String,
    pub prec: u32,
}

impl BallRepr {
    pub fn from_ball(b: &Ball) -> BallRepr {
        let prec = b.prec();
        let digits = (prec as f64 * std::f64::consts::LOG10_2).ceil() as usize + 2;
        let mid = if b.mid().is_zero() {
            "0".to_string()
        } else {
            b.mid().to_string_radix(10, Some(digits))
        };
        let parsed = Float::with_val(prec + 64, Float::parse(&mid).expect("own output parses"));
        let diff = Float::with_val_round(53, &parsed - b.mid(), Round::Up).0;
        let rad = mag::add(b.rad(), mag::abs_upper(&diff));
        BallRepr { mid, rad: format_up(rad), prec }
    }

    pub fn to_ball(&self) -> Result<Ball> {
        let mid = Ball::from_decimal(&self.mid, self.prec)?;
        let rad: f64 = self
            .rad
            .parse()
            .map_err(|e| Error::Parse(format!("radius {}: {e}", self.rad)))?;
        if !(rad >= 0.0) || !rad.is_finite() {
            return Err(Error::Parse(format!("invalid radius {}", self.rad)));
        }
        // the decimal radius may round down when parsed
        Ok(mid.add_error(rad.next_up()))
    }
}

/// Decimal string for an upper bound, never below the input.
fn format_up(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    let s = format!("{:.6e}", x);
    let v: f64 = s.parse().expect("formatted float parses");
    if v >= x {
        s
    } else {
        format!("{:.6e}", x.next_up() * (1.0 + 1e-6))
    }
}

impl Serialize for Ball {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        BallRepr::from_ball(self).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Ball {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = BallRepr::deserialize(deserializer)?;
        repr.to_ball().map_err(serde::de::Error::custom)
    }
}
