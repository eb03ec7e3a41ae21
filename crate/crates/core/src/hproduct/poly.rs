//! Exact Laurent polynomials in `x` and `y` with integer coefficients, used to
//! derive the majorant `Q` of the accelerated Euler factor.

use std::collections::BTreeMap;
use std::fmt;

use rug::{Integer, Rational};
use serde::Serialize;

/// Polynomial in `x` (nonnegative powers) and `y` (any integer power).
#[derive(Clone, PartialEq, Eq, Default)]
pub struct XyPoly {
    terms: BTreeMap<(u32, i32), Integer>,
}

impl XyPoly {
    pub fn zero() -> XyPoly {
        XyPoly::default()
    }

    pub fn constant(c: i64) -> XyPoly {
        XyPoly::from_terms(&[(0, 0, c)])
    }

    /// Sum of `c x^i y^j` over the listed `(i, j, c)`.
    pub fn from_terms(terms: &[(u32, i32, i64)]) -> XyPoly {
        let mut p = XyPoly::zero();
        for &(i, j, c) in terms {
            p.add_term(i, j, Integer::from(c));
        }
        p
    }

    /// `1 - c x^i y^j`.
    pub fn one_minus(c: i64, i: u32, j: i32) -> XyPoly {
        XyPoly::from_terms(&[(0, 0, 1), (i, j, -c)])
    }

    fn add_term(&mut self, i: u32, j: i32, c: Integer) {
        if c == 0 {
            return;
        }
        let e = self.terms.entry((i, j)).or_default();
        *e += c;
        if *e == 0 {
            self.terms.remove(&(i, j));
        }
    }

    pub fn coeff(&self, i: u32, j: i32) -> Integer {
        self.terms.get(&(i, j)).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, i32, &Integer)> {
        self.terms.iter().map(|(&(i, j), c)| (i, j, c))
    }

    pub fn add(&self, o: &XyPoly) -> XyPoly {
        let mut r = self.clone();
        for (&(i, j), c) in &o.terms {
            r.add_term(i, j, c.clone());
        }
        r
    }

    pub fn sub(&self, o: &XyPoly) -> XyPoly {
        let mut r = self.clone();
        for (&(i, j), c) in &o.terms {
            r.add_term(i, j, Integer::from(-c));
        }
        r
    }

    pub fn mul(&self, o: &XyPoly) -> XyPoly {
        let mut r = XyPoly::zero();
        for (&(i, j), a) in &self.terms {
            for (&(k, l), b) in &o.terms {
                r.add_term(i + k, j + l, Integer::from(a * b));
            }
        }
        r
    }

    pub fn pow(&self, n: u32) -> XyPoly {
        (0..n).fold(XyPoly::constant(1), |acc, _| acc.mul(self))
    }

    pub fn min_x_degree(&self) -> Option<u32> {
        self.terms.keys().map(|&(i, _)| i).min()
    }

    /// Multiply by `x^-a y^b`; `None` if some power of `x` would go negative.
    pub fn shift(&self, a: u32, b: i32) -> Option<XyPoly> {
        if self.min_x_degree().is_some_and(|d| d < a) {
            return None;
        }
        let terms = self.terms.iter().map(|(&(i, j), c)| ((i - a, j + b), c.clone())).collect();
        Some(XyPoly { terms })
    }

    /// Substitute `y = 1`, giving coefficients of `x^0, x^1, ...`.
    pub fn at_y_one(&self) -> Vec<Integer> {
        let mut out = Vec::new();
        for (&(i, _), c) in &self.terms {
            let i = i as usize;
            if out.len() <= i {
                out.resize(i + 1, Integer::new());
            }
            out[i] += c;
        }
        while out.last().is_some_and(|c| *c == 0) {
            out.pop();
        }
        out
    }

    /// Coefficient of `x^j` is the sum of `|coeff(x^j y^k)|` over `k`.
    pub fn abs_majorant(&self) -> Vec<Integer> {
        let mut out = Vec::new();
        for (&(i, _), c) in &self.terms {
            let i = i as usize;
            if out.len() <= i {
                out.resize(i + 1, Integer::new());
            }
            out[i] += c.clone().abs();
        }
        out
    }
}

impl fmt::Debug for XyPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(&(i, j), c)| format!("{c}*x^{i}*y^{j}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Evaluate an integer polynomial (ascending coefficients) at a rational.
pub fn eval_rational(coeffs: &[Integer], x: &Rational) -> Rational {
    let mut acc = Rational::new();
    for c in coeffs.iter().rev() {
        acc *= x;
        acc += c;
    }
    acc
}

/// The polynomials of the accelerated Euler product.
#[derive(Clone, Debug)]
pub struct AccelPolys {
    pub s2: XyPoly,
    pub s3: XyPoly,
    pub s4: XyPoly,
    /// `(1-xy)(1-x/y)(1-x^2)^2(1-x^3 y)^2(1-x^3/y)^2`
    pub denom: XyPoly,
    /// `(S4 - denom) y^4 / x^4`
    pub r4: XyPoly,
    /// Ascending coefficients of `Q`.
    pub q: Vec<Integer>,
}

#[derive(Clone, Debug, Serialize)]
pub struct QSummary {
    pub coefficients: Vec<String>,
}

impl AccelPolys {
    pub fn q_summary(&self) -> QSummary {
        QSummary { coefficients: self.q.iter().map(|c| c.to_string()).collect() }
    }
}

pub fn build_accel_polys() -> AccelPolys {
    let one_m = XyPoly::one_minus;
    // S2 = (1 - xy)(1 - x/y) - x^2 (2 - y - 1/y)
    let base = one_m(1, 1, 1).mul(&one_m(1, 1, -1));
    let s2 = base.sub(&XyPoly::from_terms(&[(2, 0, 2), (2, 1, -1), (2, -1, -1)]));
    let s3 = s2.mul(&one_m(1, 2, 1)).mul(&one_m(1, 2, -1));
    let s4 = s3.mul(&one_m(1, 3, 2)).mul(&one_m(1, 3, -2)).mul(&one_m(1, 3, 0).pow(2));
    let denom = base
        .mul(&one_m(1, 2, 0).pow(2))
        .mul(&one_m(1, 3, 1).pow(2))
        .mul(&one_m(1, 3, -1).pow(2));
    let r4 = s4.sub(&denom).shift(4, 4).expect("S4 - denom is divisible by x^4");
    let q = r4.abs_majorant();
    AccelPolys { s2, s3, s4, denom, r4, q }
}
