use serde::Serialize;

use crate::error::{Error, Result};

/// One polynomial piece `sum c_k x^k` on `[a, b]`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Piece {
    pub a: f64,
    pub b: f64,
    pub coeffs: Vec<f64>,
}

impl Piece {
    pub fn eval(&self, x: f64) -> f64 {
        horner(&self.coeffs, x)
    }
}

fn horner(c: &[f64], x: f64) -> f64 {
    c.iter().rev().fold(0.0, |acc, ck| acc * x + ck)
}

fn derivative(c: &[f64]) -> Vec<f64> {
    c.iter().enumerate().skip(1).map(|(k, ck)| k as f64 * ck).collect()
}

fn product(a: &[f64], b: &[f64]) -> Vec<f64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0.0; a.len() + b.len() - 1];
    for (i, ai) in a.iter().enumerate() {
        for (j, bj) in b.iter().enumerate() {
            out[i + j] += ai * bj;
        }
    }
    out
}

/// `int_a^b p`.
fn integral(c: &[f64], a: f64, b: f64) -> f64 {
    let anti: Vec<f64> = std::iter::once(0.0).chain(c.iter().enumerate().map(|(k, ck)| ck / (k + 1) as f64)).collect();
    horner(&anti, b) - horner(&anti, a)
}

/// `int_a^b |p|`, splitting at sign changes located by bisection.
fn abs_integral(c: &[f64], a: f64, b: f64) -> f64 {
    const SPLITS: usize = 256;
    let mut knots = vec![a];
    let f = |x: f64| horner(c, x);
    for i in 0..SPLITS {
        let (mut lo, mut hi) = (a + (b - a) * i as f64 / SPLITS as f64, a + (b - a) * (i + 1) as f64 / SPLITS as f64);
        if f(lo) * f(hi) < 0.0 {
            for _ in 0..60 {
                let m = 0.5 * (lo + hi);
                if f(lo) * f(m) <= 0.0 {
                    hi = m;
                } else {
                    lo = m;
                }
            }
            knots.push(0.5 * (lo + hi));
        }
    }
    knots.push(b);
    knots.windows(2).map(|w| integral(c, w[0], w[1]).abs()).sum()
}

/// Piecewise polynomial smoothing function: `0` for `x <= 0`, the pieces on
/// `[0, 1]`, and the constant `h(1)` for `x >= 1`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SmoothingFn {
    pub pieces: Vec<Piece>,
    pub value_at_1: f64,
    /// `int |h'|^2`
    pub l2_deriv_sq: f64,
    /// `V(h')`, jumps at the knots included.
    pub total_variation_deriv: f64,
}

const KNOT_TOL: f64 = 1e-9;

impl SmoothingFn {
    /// The linear ramp `h0(x) = x` on `[0, 1]`.
    pub fn h0() -> SmoothingFn {
        SmoothingFn::new(vec![Piece { a: 0.0, b: 1.0, coeffs: vec![0.0, 1.0] }]).expect("h0 is admissible")
    }

    pub fn new(mut pieces: Vec<Piece>) -> Result<SmoothingFn> {
        let bad = |m: String| Err(Error::Parse(m));
        if pieces.is_empty() {
            return bad("no pieces".into());
        }
        for p in &mut pieces {
            while p.coeffs.len() > 1 && p.coeffs.last() == Some(&0.0) {
                p.coeffs.pop();
            }
            if p.coeffs.is_empty() {
                p.coeffs.push(0.0);
            }
            if !(p.a < p.b) || p.coeffs.iter().any(|c| !c.is_finite()) {
                return bad(format!("bad piece on [{}, {}]", p.a, p.b));
            }
        }
        if pieces[0].a != 0.0 || pieces[pieces.len() - 1].b != 1.0 {
            return bad("pieces must cover [0, 1]".into());
        }
        for w in pieces.windows(2) {
            if w[0].b != w[1].a {
                return bad(format!("gap or overlap at {}", w[0].b));
            }
            let (l, r) = (w[0].eval(w[0].b), w[1].eval(w[1].a));
            if (l - r).abs() > KNOT_TOL * (1.0 + l.abs()) {
                return bad(format!("discontinuous at {}: {l} vs {r}", w[0].b));
            }
        }
        if pieces[0].eval(0.0).abs() > KNOT_TOL {
            return bad("h(0) must be 0".into());
        }
        let last = &pieces[pieces.len() - 1];
        let value_at_1 = last.eval(1.0);
        let mut l2 = 0.0;
        let mut tv = 0.0;
        let mut prev_slope = 0.0;
        for p in &pieces {
            let d = derivative(&p.coeffs);
            l2 += integral(&product(&d, &d), p.a, p.b);
            tv += (horner(&d, p.a) - prev_slope).abs();
            tv += abs_integral(&derivative(&d), p.a, p.b);
            prev_slope = horner(&d, p.b);
        }
        tv += prev_slope.abs();
        Ok(SmoothingFn { pieces, value_at_1, l2_deriv_sq: l2, total_variation_deriv: tv })
    }

    /// Parse `h0`, `poly:c0,c1,...` or `pieces:[a,b]:c0,c1,...;[b,c]:...`.
    pub fn parse(spec: &str) -> Result<SmoothingFn> {
        let spec = spec.trim();
        let bad = || Error::Parse(format!("bad smoothing spec {spec:?}"));
        let coeffs = |s: &str| -> Result<Vec<f64>> {
            s.split(',').map(|c| c.trim().parse::<f64>().map_err(|_| bad())).collect()
        };
        if spec == "h0" {
            return Ok(SmoothingFn::h0());
        }
        if let Some(rest) = spec.strip_prefix("poly:") {
            return SmoothingFn::new(vec![Piece { a: 0.0, b: 1.0, coeffs: coeffs(rest)? }]);
        }
        if let Some(rest) = spec.strip_prefix("pieces:") {
            let mut pieces = Vec::new();
            for part in rest.split(';').filter(|p| !p.trim().is_empty()) {
                let part = part.trim().strip_prefix('[').ok_or_else(bad)?;
                let (iv, cs) = part.split_once("]:").ok_or_else(bad)?;
                let (a, b) = iv.split_once(',').ok_or_else(bad)?;
                let a = a.trim().parse().map_err(|_| bad())?;
                let b = b.trim().parse().map_err(|_| bad())?;
                pieces.push(Piece { a, b, coeffs: coeffs(cs)? });
            }
            return SmoothingFn::new(pieces);
        }
        Err(bad())
    }

    pub fn eval(&self, x: f64) -> f64 {
        if x <= 0.0 {
            return 0.0;
        }
        if x >= 1.0 {
            return self.value_at_1;
        }
        let i = self.pieces.partition_point(|p| p.a <= x).saturating_sub(1);
        self.pieces[i].eval(x)
    }

    pub fn is_h0(&self) -> bool {
        self.pieces.len() == 1 && self.pieces[0].coeffs == [0.0, 1.0]
    }

    /// `a h + b g` on the common refinement of the knots.
    pub fn combine(&self, a: f64, other: &SmoothingFn, b: f64) -> Result<SmoothingFn> {
        let mut knots: Vec<f64> = self.pieces.iter().chain(&other.pieces).map(|p| p.a).chain([1.0]).collect();
        knots.sort_by(f64::total_cmp);
        knots.dedup();
        fn at(h: &SmoothingFn, x: f64) -> &Piece {
            &h.pieces[h.pieces.partition_point(|p| p.a <= x).saturating_sub(1)]
        }
        let pieces = knots
            .windows(2)
            .map(|w| {
                let m = 0.5 * (w[0] + w[1]);
                let (p, q) = (&at(self, m).coeffs, &at(other, m).coeffs);
                let n = p.len().max(q.len());
                let c = (0..n).map(|k| a * p.get(k).unwrap_or(&0.0) + b * q.get(k).unwrap_or(&0.0)).collect();
                Piece { a: w[0], b: w[1], coeffs: c }
            })
            .collect();
        SmoothingFn::new(pieces)
    }
}
