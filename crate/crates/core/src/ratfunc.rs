//! Formal products of integer polynomials raised to integer exponents, with
//! exact power-series extraction.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::poly::IntPoly;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RatFuncError {
    #[error("zero polynomial cannot be a factor")]
    ZeroFactor,
    #[error("function does not take the value 1 at u = 0")]
    NotNormalized,
    #[error("factor {0} vanishes at u = 0")]
    VanishesAtZero(String),
    #[error("series coefficient of u^{degree} is not an integer: {value}")]
    NonIntegral { degree: usize, value: String },
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

/// `Π P_i(u)^{e_i}` in canonical form: constant-1 factors and zero
/// exponents removed, equal polynomials merged, factors sorted by degree and
/// then by coefficient vector.
#[derive(Debug, Clone, Default)]
pub struct FactoredRationalFunction {
    factors: Vec<(IntPoly, i64)>,
}

impl FactoredRationalFunction {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn new(factors: Vec<(IntPoly, i64)>) -> Result<Self, RatFuncError> {
        if factors.iter().any(|(p, _)| p.is_zero()) {
            return Err(RatFuncError::ZeroFactor);
        }
        let mut f = Self { factors };
        f.canonicalize();
        Ok(f)
    }

    pub fn from_poly(p: IntPoly, exp: i64) -> Self {
        Self::new(vec![(p, exp)]).expect("nonzero polynomial")
    }

    pub fn factors(&self) -> &[(IntPoly, i64)] {
        &self.factors
    }

    fn canonicalize(&mut self) {
        let mut fs = std::mem::take(&mut self.factors);
        fs.retain(|(p, e)| *e != 0 && !p.is_one());
        fs.sort_by(|a, b| a.0.canonical_cmp(&b.0));
        let mut merged: Vec<(IntPoly, i64)> = Vec::with_capacity(fs.len());
        for (p, e) in fs {
            match merged.last_mut() {
                Some((q, f)) if *q == p => *f += e,
                _ => merged.push((p, e)),
            }
        }
        merged.retain(|(_, e)| *e != 0);
        self.factors = merged;
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut factors = self.factors.clone();
        factors.extend(other.factors.iter().cloned());
        Self::new(factors).expect("factors already nonzero")
    }

    pub fn inv(&self) -> Self {
        Self {
            factors: self.factors.iter().map(|(p, e)| (p.clone(), -e)).collect(),
        }
    }

    pub fn pow(&self, k: i64) -> Self {
        Self::new(
            self.factors
                .iter()
                .map(|(p, e)| (p.clone(), e * k))
                .collect(),
        )
        .expect("factors already nonzero")
    }

    pub fn div(&self, other: &Self) -> Self {
        self.mul(&other.inv())
    }

    /// Expanded `(numerator, denominator)`: the product of factors with
    /// positive, respectively negated negative, exponents.
    pub fn expanded(&self) -> (IntPoly, IntPoly) {
        let mut num = IntPoly::one();
        let mut den = IntPoly::one();
        for (p, e) in &self.factors {
            let k = u32::try_from(e.unsigned_abs()).expect("exponent fits in u32");
            if *e > 0 {
                num = &num * &p.pow(k);
            } else {
                den = &den * &p.pow(k);
            }
        }
        (num, den)
    }

    /// True when the function is identically 1.
    pub fn is_one(&self) -> bool {
        let (n, d) = self.expanded();
        n == d
    }

    /// Value at an integer point as an exact rational, `None` on a pole.
    pub fn eval(&self, x: i64) -> Option<BigRational> {
        let (n, d) = self.expanded();
        let dv = d.eval_i64(x);
        if dv.is_zero() {
            return None;
        }
        Some(BigRational::new(n.eval_i64(x), dv))
    }

    /// Coefficients `N_1..N_R` of `u·d/du log f(u)`.
    pub fn log_derivative_series(&self, r: usize) -> Result<Vec<BigInt>, RatFuncError> {
        let mut value_at_zero = BigRational::one();
        for (p, e) in &self.factors {
            let c0 = p.coeff(0);
            if c0.is_zero() {
                return Err(RatFuncError::VanishesAtZero(p.to_string()));
            }
            let c0 = BigRational::from_integer(c0);
            let k = i32::try_from(*e).expect("exponent fits in i32");
            value_at_zero *= num_traits::pow::Pow::pow(&c0, k);
        }
        if !value_at_zero.is_one() {
            return Err(RatFuncError::NotNormalized);
        }
        let mut acc = vec![BigRational::zero(); r + 1];
        for (p, e) in &self.factors {
            let s = u_log_derivative(p, r);
            let e = BigRational::from_integer(BigInt::from(*e));
            for (a, c) in acc.iter_mut().zip(s) {
                *a += &e * c;
            }
        }
        acc.into_iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| {
                if c.is_integer() {
                    Ok(c.to_integer())
                } else {
                    Err(RatFuncError::NonIntegral {
                        degree: i,
                        value: c.to_string(),
                    })
                }
            })
            .collect()
    }

    /// Power series of `f(u)` itself up to `u^r`.
    pub fn taylor_series(&self, r: usize) -> Result<Vec<BigRational>, RatFuncError> {
        let (num, den) = self.expanded();
        if den.coeff(0).is_zero() {
            return Err(RatFuncError::VanishesAtZero(den.to_string()));
        }
        let n: Vec<BigRational> = (0..=r)
            .map(|i| BigRational::from_integer(num.coeff(i)))
            .collect();
        let d: Vec<BigRational> = (0..=r)
            .map(|i| BigRational::from_integer(den.coeff(i)))
            .collect();
        Ok(series_div(&n, &d))
    }

    /// One factor per line: `coeffs c0 c1 ... ck exp e`.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for (p, e) in &self.factors {
            s.push_str("coeffs");
            for c in p.coeffs() {
                s.push(' ');
                s.push_str(&c.to_string());
            }
            s.push_str(&format!(" exp {e}\n"));
        }
        s
    }

    pub fn from_text(text: &str) -> Result<Self, RatFuncError> {
        let mut factors = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let raw = raw.trim();
            if raw.is_empty() || raw.starts_with('#') {
                continue;
            }
            let err = |msg: &str| RatFuncError::Parse {
                line,
                msg: msg.to_string(),
            };
            let toks: Vec<&str> = raw.split_whitespace().collect();
            if toks.first() != Some(&"coeffs") {
                return Err(err("expected `coeffs`"));
            }
            let exp_pos = toks
                .iter()
                .position(|&t| t == "exp")
                .ok_or_else(|| err("missing `exp`"))?;
            if exp_pos + 2 != toks.len() {
                return Err(err("expected exactly one exponent after `exp`"));
            }
            let coeffs = toks[1..exp_pos]
                .iter()
                .map(|t| t.parse::<BigInt>().map_err(|_| err("bad coefficient")))
                .collect::<Result<Vec<_>, _>>()?;
            let e: i64 = toks[exp_pos + 1].parse().map_err(|_| err("bad exponent"))?;
            let p = IntPoly::new(coeffs);
            if p.is_zero() {
                return Err(err("zero polynomial"));
            }
            factors.push((p, e));
        }
        Self::new(factors)
    }
}

/// `u·P'(u)/P(u)` up to `u^r`.
fn u_log_derivative(p: &IntPoly, r: usize) -> Vec<BigRational> {
    let dp = p.derivative();
    let mut num = vec![BigRational::zero(); r + 1];
    for (i, slot) in num.iter_mut().enumerate().skip(1) {
        *slot = BigRational::from_integer(dp.coeff(i - 1));
    }
    let den: Vec<BigRational> = (0..=r)
        .map(|i| BigRational::from_integer(p.coeff(i)))
        .collect();
    series_div(&num, &den)
}

/// Truncated quotient of power series; `den[0]` must be nonzero.
fn series_div(num: &[BigRational], den: &[BigRational]) -> Vec<BigRational> {
    let n = num.len();
    let inv0 = den[0].recip();
    let mut out: Vec<BigRational> = Vec::with_capacity(n);
    for k in 0..n {
        let mut acc = num[k].clone();
        for j in 1..=k.min(den.len() - 1) {
            if !den[j].is_zero() {
                acc -= &den[j] * &out[k - j];
            }
        }
        out.push(acc * &inv0);
    }
    out
}

impl PartialEq for FactoredRationalFunction {
    /// Equality of the underlying rational functions, by cross-multiplying
    /// the expanded forms.
    fn eq(&self, other: &Self) -> bool {
        let (n1, d1) = self.expanded();
        let (n2, d2) = other.expanded();
        &n1 * &d2 == &n2 * &d1
    }
}

impl Eq for FactoredRationalFunction {}

impl fmt::Display for FactoredRationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .factors
            .iter()
            .map(|(p, e)| {
                if *e == 1 {
                    format!("({p})")
                } else {
                    format!("({p})^{e}")
                }
            })
            .collect();
        write!(f, "{}", parts.join(" * "))
    }
}

/// Helper for tests and callers that want `Σ e·sign` style checks.
pub fn total_degree(f: &FactoredRationalFunction) -> i64 {
    f.factors()
        .iter()
        .map(|(p, e)| p.degree().unwrap_or(0) as i64 * e)
        .sum()
}

/// True if every factor has a positive constant term. Canonical forms
/// produced by this crate always satisfy this.
pub fn normalized_signs(f: &FactoredRationalFunction) -> bool {
    f.factors().iter().all(|(p, _)| p.coeff(0).is_positive())
}
