//! Supersingular models over `F_{p²}` and their base change to a field
//! containing the torsion we need.

use std::collections::HashMap;

use thiserror::Error;

use crate::curve::{
    is_supersingular, prime_factors, Curve, CurveError, Isogeny, Point, SquareTable,
};
use crate::field::{Embedding, Fe, FieldCtx, FieldError, MAX_DEGREE};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TowerError {
    #[error("torsion of order {modulus} needs F_{{{p}^{degree}}}, beyond the supported degree {MAX_DEGREE}")]
    ExtensionTooLarge { p: u64, modulus: u64, degree: usize },
    #[error("{0} is not coprime to p")]
    NotCoprime(u64),
    #[error("no basis of E[{0}] found; the torsion field is wrong")]
    BasisNotFound(u64),
    #[error("no isomorphism makes the dual compose to [{0}]")]
    NoDual(u64),
    #[error("curve coefficients do not lie in F_p^2")]
    NotInBaseField,
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Curve(#[from] CurveError),
}

/// A supersingular `j` with its chosen model, `#E(F_{p²}) = (p + 1)²`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SupersingularCurve {
    pub j: Fe,
    pub model: Curve,
}

/// Every supersingular `j` in canonical order, each with the twist whose
/// `F_{p²}`-Frobenius is `[−p]`.
pub fn supersingular_curves(f: &FieldCtx) -> Vec<SupersingularCurve> {
    assert_eq!(f.degree(), 2, "models live over F_p^2");
    let squares = SquareTable::new(f);
    let p = f.p() as u128;
    let target = (p + 1).pow(2);
    // every supersingular group order over F_{p²} divides this
    let killer = (p - 1) * (p + 1) * (p * p + 1) * (p * p - p + 1) * (p * p + p + 1);
    f.elements()
        .filter_map(|j| {
            let base = Curve::with_j_invariant(f, &j);
            let ordinary_witness = f
                .elements()
                .filter_map(|x| base.lift_x(f, &x))
                .take(2)
                .any(|pt| !base.mul(f, &pt, killer).is_infinity());
            if ordinary_witness || !is_supersingular(f, &base, &squares) {
                return None;
            }
            let model = f
                .elements()
                .skip(1)
                .map(|c| base.twist(f, &c))
                .find(|e| e.count_points(f, &squares) == target)
                .expect("a supersingular j has a twist of trace -2p");
            Some(SupersingularCurve { j, model })
        })
        .collect()
}

/// Multiplicative order of `−p` modulo `modulus`.
pub fn order_of_minus_p(p: u64, modulus: u64) -> Result<u32, TowerError> {
    if modulus == 1 {
        return Ok(1);
    }
    let g = (modulus - p % modulus) % modulus;
    let mut x = g;
    let mut m = 1;
    while x != 1 {
        if x == 0 || m as u64 > modulus {
            return Err(TowerError::NotCoprime(modulus));
        }
        x = x * g % modulus;
        m += 1;
    }
    Ok(m)
}

/// `F_{p²} ⊆ F_{p^{2m}}`, where every supersingular model has full
/// `torsion`-torsion. There `E(F_{p^{2m}}) ≅ (Z/n)²` with `n = |(−p)^m − 1|`.
#[derive(Debug, Clone)]
pub struct Tower {
    pub small: FieldCtx,
    pub big: FieldCtx,
    pub emb: Embedding,
    pub m: u32,
    pub exponent: u128,
}

impl Tower {
    pub fn new(p: u64, torsion: u64) -> Result<Self, TowerError> {
        let m = order_of_minus_p(p, torsion)?;
        let degree = 2 * m as usize;
        if degree > MAX_DEGREE {
            return Err(TowerError::ExtensionTooLarge {
                p,
                modulus: torsion,
                degree,
            });
        }
        let small = FieldCtx::new(p, 2)?;
        let big = if m == 1 {
            small.clone()
        } else {
            FieldCtx::new(p, degree)?
        };
        let emb =
            Embedding::new(&small, &big).expect("F_p^2 embeds in every even degree extension");
        let pm = (p as u128).pow(m);
        let exponent = if m % 2 == 0 { pm - 1 } else { pm + 1 };
        Ok(Self {
            small,
            big,
            emb,
            m,
            exponent,
        })
    }

    pub fn lift(&self, a: &Fe) -> Fe {
        self.emb.embed(&self.big, a)
    }

    pub fn pull_back(&self, z: &Fe) -> Option<Fe> {
        self.emb.pull_back(&self.small, &self.big, z)
    }

    pub fn lift_curve(&self, e: &Curve) -> Curve {
        Curve {
            a: self.lift(&e.a),
            b: self.lift(&e.b),
        }
    }

    pub fn pull_curve(&self, e: &Curve) -> Result<Curve, TowerError> {
        Ok(Curve {
            a: self.pull_back(&e.a).ok_or(TowerError::NotInBaseField)?,
            b: self.pull_back(&e.b).ok_or(TowerError::NotInBaseField)?,
        })
    }

    /// `(x, y) ↦ (u²x, u³y)` for `u ∈ F_{p²}`.
    pub fn apply_iso(&self, u: &Fe, pt: &Point) -> Point {
        let f = &self.big;
        match pt {
            Point::Infinity => Point::Infinity,
            Point::Affine(x, y) => {
                let u = self.lift(u);
                let u2 = f.sqr(&u);
                Point::Affine(f.mul(&u2, x), f.mul(&f.mul(&u2, &u), y))
            }
        }
    }

    /// Points of `e` (over the big field) by abscissa in canonical order.
    pub fn points(&self, e: &Curve) -> impl Iterator<Item = Point> + '_ {
        let e = *e;
        (0..self.big.order()).filter_map(move |i| e.lift_x(&self.big, &self.big.from_index(i)))
    }

    /// A basis of `E[n]`, taken from the first suitable cofactor multiples of
    /// points in canonical order.
    pub fn torsion_basis(&self, e: &Curve, n: u64) -> Result<(Point, Point), TowerError> {
        if n == 1 {
            return Ok((Point::Infinity, Point::Infinity));
        }
        let n128 = n as u128;
        if self.exponent % n128 != 0 {
            return Err(TowerError::BasisNotFound(n));
        }
        let f = &self.big;
        let cof = self.exponent / n128;
        let primes = prime_factors(n128);
        let exact = |pt: &Point| primes.iter().all(|q| !e.mul(f, pt, n128 / q).is_infinity());
        let independent = |a: &Point, b: &Point| {
            primes.iter().all(|q| {
                let a1 = e.mul(f, a, n128 / q);
                let b1 = e.mul(f, b, n128 / q);
                let mut multiple = Point::Infinity;
                for _ in 0..*q {
                    if multiple == b1 {
                        return false;
                    }
                    multiple = e.add(f, &multiple, &a1);
                }
                true
            })
        };
        let mut first: Option<Point> = None;
        for pt in self.points(e).take(200_000) {
            let t = e.mul(f, &pt, cof);
            match first {
                None if exact(&t) => first = Some(t),
                Some(p0) if independent(&p0, &t) => return Ok((p0, t)),
                _ => {}
            }
        }
        Err(TowerError::BasisNotFound(n))
    }

    /// The dual of `phi` (a map between lifted `F_{p²}` models): Vélu on
    /// `phi(E[ℓ])` followed by the isomorphism making `ψ∘φ = [ℓ]` on
    /// `samples`, which should span the torsion of interest.
    pub fn dual_isogeny(
        &self,
        phi: &Isogeny,
        ell_basis: (Point, Point),
        samples: &[Point],
    ) -> Result<Isogeny, TowerError> {
        let f = &self.big;
        let ell = phi.degree;
        let image = [ell_basis.0, ell_basis.1]
            .iter()
            .map(|pt| phi.eval(f, pt))
            .find(|pt| !pt.is_infinity())
            .ok_or(TowerError::NoDual(ell))?;
        let psi0 = Isogeny::velu(f, &phi.codomain, &image, ell)?;
        let from = self.pull_curve(&psi0.codomain)?;
        let to = self.pull_curve(&phi.domain)?;
        for u in from.isomorphisms_to(&self.small, &to) {
            let psi = psi0.clone().then_scale(f, &self.lift(&u));
            let ok = samples
                .iter()
                .chain([&ell_basis.0, &ell_basis.1])
                .all(|pt| psi.eval(f, &phi.eval(f, pt)) == phi.domain.mul(f, pt, ell as u128));
            if ok {
                return Ok(psi);
            }
        }
        Err(TowerError::NoDual(ell))
    }
}

/// Coordinates `(a, b)` of every `aP + bQ` in `E[n]`.
pub fn coordinate_table(
    f: &FieldCtx,
    e: &Curve,
    basis: (Point, Point),
    n: u32,
) -> HashMap<Point, (u32, u32)> {
    let mut table = HashMap::new();
    let mut row = Point::Infinity;
    for a in 0..n {
        let mut pt = row;
        for b in 0..n {
            let prev = table.insert(pt, (a, b));
            assert!(prev.is_none(), "torsion basis is not independent");
            pt = e.add(f, &pt, &basis.1);
        }
        row = e.add(f, &row, &basis.0);
    }
    table
}
