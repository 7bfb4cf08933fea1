//! Numerators of Hasse–Weil zeta functions supplied on the command line.
//!
//! ```text
//! lpoly ell=3 label=X0(11)
//! 1 1 3
//! ```

use isozeta_core::{FactoredRationalFunction, IntPoly};
use num_bigint::BigInt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LPolyError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("constant term must be 1, found {0}")]
    ConstantTerm(BigInt),
    #[error("degree {0} is odd")]
    OddDegree(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LPolyInput {
    pub ell: u64,
    pub label: String,
    /// `P(u)`, constant term first.
    pub numerator: IntPoly,
}

impl LPolyInput {
    pub fn new(ell: u64, label: &str, numerator: IntPoly) -> Result<Self, LPolyError> {
        if numerator.coeff(0) != BigInt::from(1) {
            return Err(LPolyError::ConstantTerm(numerator.coeff(0)));
        }
        let deg = numerator.degree().unwrap_or(0);
        if deg % 2 == 1 {
            return Err(LPolyError::OddDegree(deg));
        }
        Ok(Self {
            ell,
            label: label.to_string(),
            numerator,
        })
    }

    pub fn parse(text: &str) -> Result<Self, LPolyError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let syntax = |line, msg: &str| LPolyError::Syntax {
            line,
            msg: msg.to_string(),
        };

        let (ln, header) = lines.next().ok_or(syntax(1, "missing header"))?;
        let mut toks = header.split_whitespace();
        if toks.next() != Some("lpoly") {
            return Err(syntax(ln, "expected `lpoly ell=<prime> label=<name>`"));
        }
        let mut ell = None;
        let mut label = None;
        for t in toks {
            match t.split_once('=') {
                Some(("ell", v)) => {
                    ell = Some(v.parse::<u64>().map_err(|_| syntax(ln, "bad ell"))?)
                }
                Some(("label", v)) => label = Some(v.to_string()),
                _ => return Err(syntax(ln, &format!("unknown field `{t}`"))),
            }
        }
        let ell = ell.ok_or(syntax(ln, "missing ell="))?;
        let label = label.unwrap_or_default();

        let (ln, coeffs) = lines
            .next()
            .ok_or(syntax(ln + 1, "missing coefficient line"))?;
        let coeffs = coeffs
            .split_whitespace()
            .map(|t| {
                t.parse::<BigInt>()
                    .map_err(|_| syntax(ln, &format!("bad coefficient `{t}`")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        if let Some((ln, _)) = lines.next() {
            return Err(syntax(ln, "trailing content"));
        }
        Self::new(ell, &label, IntPoly::new(coeffs))
    }

    pub fn to_text(&self) -> String {
        let coeffs: Vec<String> = self
            .numerator
            .coeffs()
            .iter()
            .map(BigInt::to_string)
            .collect();
        format!(
            "lpoly ell={} label={}\n{}\n",
            self.ell,
            self.label,
            coeffs.join(" ")
        )
    }

    /// `Z(C, u) = P(u) / ((1 − u)(1 − ℓu))`.
    pub fn zeta(&self) -> FactoredRationalFunction {
        FactoredRationalFunction::new(vec![
            (self.numerator.clone(), 1),
            (IntPoly::from_i64(&[1, -1]), -1),
            (IntPoly::from_i64(&[1, -(self.ell as i64)]), -1),
        ])
        .expect("nonzero factors")
    }
}
