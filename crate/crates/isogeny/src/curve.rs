//! Short Weierstrass curves `y² = x³ + ax + b`, separable isogenies by
//! Vélu's formulas, isomorphisms and division polynomials.

use thiserror::Error;

use crate::field::{Fe, FieldCtx, FieldError};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CurveError {
    #[error("singular curve")]
    Singular,
    #[error("point is not on the curve")]
    NotOnCurve,
    #[error("kernel generator has order {found}, expected {expected}")]
    KernelOrder { expected: u64, found: u64 },
    #[error(transparent)]
    Field(#[from] FieldError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Point {
    Infinity,
    Affine(Fe, Fe),
}

impl Point {
    pub fn is_infinity(&self) -> bool {
        matches!(self, Point::Infinity)
    }

    pub fn x(&self) -> Option<Fe> {
        match self {
            Point::Affine(x, _) => Some(*x),
            Point::Infinity => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Curve {
    pub a: Fe,
    pub b: Fe,
}

impl Curve {
    pub fn new(f: &FieldCtx, a: Fe, b: Fe) -> Result<Self, CurveError> {
        let c = Self { a, b };
        if c.discriminant_part(f).is_zero() {
            return Err(CurveError::Singular);
        }
        Ok(c)
    }

    /// `4a³ + 27b²`.
    fn discriminant_part(&self, f: &FieldCtx) -> Fe {
        let a3 = f.mul(&f.sqr(&self.a), &self.a);
        f.add(&f.mul_u64(&a3, 4), &f.mul_u64(&f.sqr(&self.b), 27))
    }

    pub fn j_invariant(&self, f: &FieldCtx) -> Fe {
        let a3 = f.mul(&f.sqr(&self.a), &self.a);
        let num = f.mul_u64(&a3, 4 * 1728);
        f.div(&num, &self.discriminant_part(f))
            .expect("nonsingular curve")
    }

    /// `x³ + ax + b`.
    pub fn rhs(&self, f: &FieldCtx, x: &Fe) -> Fe {
        let x3 = f.mul(&f.sqr(x), x);
        f.add(&f.add(&x3, &f.mul(&self.a, x)), &self.b)
    }

    pub fn contains(&self, f: &FieldCtx, p: &Point) -> bool {
        match p {
            Point::Infinity => true,
            Point::Affine(x, y) => f.sqr(y) == self.rhs(f, x),
        }
    }

    /// The point with abscissa `x` and the canonically smaller ordinate.
    pub fn lift_x(&self, f: &FieldCtx, x: &Fe) -> Option<Point> {
        f.sqrt(&self.rhs(f, x)).map(|y| Point::Affine(*x, y))
    }

    pub fn neg(&self, f: &FieldCtx, p: &Point) -> Point {
        match p {
            Point::Infinity => Point::Infinity,
            Point::Affine(x, y) => Point::Affine(*x, f.neg(y)),
        }
    }

    pub fn add(&self, f: &FieldCtx, p: &Point, q: &Point) -> Point {
        let (x1, y1, x2, y2) = match (p, q) {
            (Point::Infinity, _) => return *q,
            (_, Point::Infinity) => return *p,
            (Point::Affine(x1, y1), Point::Affine(x2, y2)) => (x1, y1, x2, y2),
        };
        let lambda = if x1 == x2 {
            if f.add(y1, y2).is_zero() {
                return Point::Infinity;
            }
            let num = f.add(&f.mul_u64(&f.sqr(x1), 3), &self.a);
            f.div(&num, &f.mul_u64(y1, 2)).unwrap()
        } else {
            f.div(&f.sub(y2, y1), &f.sub(x2, x1)).unwrap()
        };
        let x3 = f.sub(&f.sub(&f.sqr(&lambda), x1), x2);
        let y3 = f.sub(&f.mul(&lambda, &f.sub(x1, &x3)), y1);
        Point::Affine(x3, y3)
    }

    pub fn double(&self, f: &FieldCtx, p: &Point) -> Point {
        self.add(f, p, p)
    }

    pub fn mul(&self, f: &FieldCtx, p: &Point, n: u128) -> Point {
        let mut acc = Point::Infinity;
        let mut base = *p;
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = self.add(f, &acc, &base);
            }
            n >>= 1;
            if n > 0 {
                base = self.double(f, &base);
            }
        }
        acc
    }

    pub fn mul_signed(&self, f: &FieldCtx, p: &Point, n: i128) -> Point {
        let q = self.mul(f, p, n.unsigned_abs());
        if n < 0 {
            self.neg(f, &q)
        } else {
            q
        }
    }

    /// Order of `p`, given a multiple `n` of it.
    pub fn order_dividing(&self, f: &FieldCtx, p: &Point, n: u128) -> u128 {
        assert!(
            self.mul(f, p, n).is_infinity(),
            "n is not a multiple of the order"
        );
        let mut order = n;
        for q in prime_factors(n) {
            while order % q == 0 && self.mul(f, p, order / q).is_infinity() {
                order /= q;
            }
        }
        order
    }

    /// Image under `(x, y) ↦ (u²x, u³y)`, the isomorphism onto
    /// `y² = x³ + u⁴a x + u⁶b`.
    pub fn scale(&self, f: &FieldCtx, u: &Fe) -> Curve {
        let u2 = f.sqr(u);
        let u4 = f.sqr(&u2);
        let u6 = f.mul(&u4, &u2);
        Curve {
            a: f.mul(&u4, &self.a),
            b: f.mul(&u6, &self.b),
        }
    }

    /// All `u ≠ 0` with `self.scale(u) == other`. Brute force is used when
    /// `a` or `b` vanishes, so this is meant for small fields.
    pub fn isomorphisms_to(&self, f: &FieldCtx, other: &Curve) -> Vec<Fe> {
        if self.a.is_zero() != other.a.is_zero() || self.b.is_zero() != other.b.is_zero() {
            return Vec::new();
        }
        let mut out = Vec::new();
        if !self.a.is_zero() && !self.b.is_zero() {
            let num = f.mul(&other.b, &self.a);
            let den = f.mul(&other.a, &self.b);
            if let Some(u) = f.sqrt(&f.div(&num, &den).unwrap()) {
                for c in [u, f.neg(&u)] {
                    if self.scale(f, &c) == *other {
                        out.push(c);
                    }
                }
            }
        } else {
            out.extend(f.elements().skip(1).filter(|u| self.scale(f, u) == *other));
        }
        out.sort();
        out
    }

    pub fn automorphisms(&self, f: &FieldCtx) -> Vec<Fe> {
        self.isomorphisms_to(f, self)
    }

    /// `#E(F_q)` by summing the quadratic character over all abscissae.
    pub fn count_points(&self, f: &FieldCtx, squares: &SquareTable) -> u128 {
        1 + f
            .elements()
            .map(|x| {
                let v = self.rhs(f, &x);
                if v.is_zero() {
                    1
                } else if squares.is_square(f, &v) {
                    2
                } else {
                    0
                }
            })
            .sum::<u128>()
    }

    /// A curve with the given `j`-invariant: `y² = x³ + 1` for `j = 0`,
    /// `y² = x³ + x` for `j = 1728`, and otherwise
    /// `a = 3j(1728 − j)`, `b = 2j(1728 − j)²`.
    pub fn with_j_invariant(f: &FieldCtx, j: &Fe) -> Curve {
        let j1728 = f.from_u64(1728);
        if j.is_zero() {
            Curve {
                a: f.zero(),
                b: f.one(),
            }
        } else if *j == j1728 {
            Curve {
                a: f.one(),
                b: f.zero(),
            }
        } else {
            let k = f.sub(&j1728, j);
            Curve {
                a: f.mul_u64(&f.mul(j, &k), 3),
                b: f.mul_u64(&f.mul(&f.mul(j, &k), &k), 2),
            }
        }
    }

    /// The twist by `c`: `(ac², bc³)` in general, and the sextic or quartic
    /// twists `(0, bc)` and `(ac, 0)` when `a` or `b` vanishes.
    pub fn twist(&self, f: &FieldCtx, c: &Fe) -> Curve {
        if self.a.is_zero() {
            Curve {
                a: self.a,
                b: f.mul(&self.b, c),
            }
        } else if self.b.is_zero() {
            Curve {
                a: f.mul(&self.a, c),
                b: self.b,
            }
        } else {
            let c2 = f.sqr(c);
            Curve {
                a: f.mul(&self.a, &c2),
                b: f.mul(&self.b, &f.mul(&c2, c)),
            }
        }
    }

    pub fn display(&self, f: &FieldCtx) -> String {
        format!(
            "y^2 = x^3 + {}*x + {}",
            f.display(&self.a),
            f.display(&self.b)
        )
    }
}

/// Quadratic residue lookup for a field small enough to enumerate.
#[derive(Debug, Clone)]
pub struct SquareTable {
    is_sq: Vec<bool>,
}

impl SquareTable {
    pub fn new(f: &FieldCtx) -> Self {
        let mut is_sq = vec![false; f.order() as usize];
        for x in f.elements() {
            is_sq[f.index(&f.sqr(&x)) as usize] = true;
        }
        Self { is_sq }
    }

    pub fn is_square(&self, f: &FieldCtx, a: &Fe) -> bool {
        self.is_sq[f.index(a) as usize]
    }
}

/// Over `F_{p^k}`, `E` is supersingular iff its trace is divisible by `p`.
pub fn is_supersingular(f: &FieldCtx, e: &Curve, squares: &SquareTable) -> bool {
    let q = f.order() as i128;
    let trace = q + 1 - e.count_points(f, squares) as i128;
    trace % f.p() as i128 == 0
}

pub fn prime_factors(mut n: u128) -> Vec<u128> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// A separable isogeny given by Vélu's formulas, followed by the scaling
/// isomorphism `(x, y) ↦ (s²x, s³y)`.
#[derive(Debug, Clone)]
pub struct Isogeny {
    pub domain: Curve,
    pub codomain: Curve,
    pub degree: u64,
    /// `(x_Q, v_Q, u_Q)` for one point of each `±` pair of the kernel.
    terms: Vec<(Fe, Fe, Fe)>,
    scale: Fe,
}

impl Isogeny {
    /// Isogeny with kernel generated by `kernel_gen`, a point of prime order
    /// `ell`.
    pub fn velu(f: &FieldCtx, e: &Curve, kernel_gen: &Point, ell: u64) -> Result<Self, CurveError> {
        if !e.contains(f, kernel_gen) {
            return Err(CurveError::NotOnCurve);
        }
        let mut multiples = Vec::new();
        let mut q = *kernel_gen;
        while !q.is_infinity() {
            multiples.push(q);
            q = e.add(f, &q, kernel_gen);
        }
        let found = multiples.len() as u64 + 1;
        if found != ell {
            return Err(CurveError::KernelOrder {
                expected: ell,
                found,
            });
        }
        let mut terms: Vec<(Fe, Fe, Fe)> = Vec::new();
        let (mut v, mut w) = (f.zero(), f.zero());
        for pt in &multiples {
            let Point::Affine(xq, yq) = pt else {
                unreachable!()
            };
            if terms.iter().any(|t| t.0 == *xq) {
                continue;
            }
            let gx = f.add(&f.mul_u64(&f.sqr(xq), 3), &e.a);
            let (vq, uq) = if yq.is_zero() {
                (gx, f.zero())
            } else {
                (f.mul_u64(&gx, 2), f.mul_u64(&f.sqr(yq), 4))
            };
            v = f.add(&v, &vq);
            w = f.add(&w, &f.add(&uq, &f.mul(xq, &vq)));
            terms.push((*xq, vq, uq));
        }
        let codomain = Curve::new(
            f,
            f.sub(&e.a, &f.mul_u64(&v, 5)),
            f.sub(&e.b, &f.mul_u64(&w, 7)),
        )?;
        Ok(Self {
            domain: *e,
            codomain,
            degree: ell,
            terms,
            scale: f.one(),
        })
    }

    /// Composes with the isomorphism `(x, y) ↦ (u²x, u³y)` on the codomain.
    pub fn then_scale(mut self, f: &FieldCtx, u: &Fe) -> Self {
        self.codomain = self.codomain.scale(f, u);
        self.scale = f.mul(&self.scale, u);
        self
    }

    pub fn eval(&self, f: &FieldCtx, p: &Point) -> Point {
        let (x, y) = match p {
            Point::Infinity => return Point::Infinity,
            Point::Affine(x, y) => (x, y),
        };
        let mut big_x = *x;
        let mut deriv = f.one();
        for (xq, vq, uq) in &self.terms {
            let d = f.sub(x, xq);
            if d.is_zero() {
                return Point::Infinity;
            }
            let inv = f.inv(&d).unwrap();
            let inv2 = f.sqr(&inv);
            let inv3 = f.mul(&inv2, &inv);
            big_x = f.add(&big_x, &f.add(&f.mul(vq, &inv), &f.mul(uq, &inv2)));
            let dd = f.add(&f.mul(vq, &inv2), &f.mul_u64(&f.mul(uq, &inv3), 2));
            deriv = f.sub(&deriv, &dd);
        }
        let big_y = f.mul(y, &deriv);
        let s2 = f.sqr(&self.scale);
        Point::Affine(f.mul(&s2, &big_x), f.mul(&f.mul(&s2, &self.scale), &big_y))
    }

    /// `Π (x − x_Q)` over the kernel abscissae, constant term first.
    pub fn kernel_polynomial(&self, f: &FieldCtx) -> Vec<Fe> {
        let mut poly = vec![f.one()];
        for (xq, _, _) in &self.terms {
            poly = poly_mul(f, &poly, &[f.neg(xq), f.one()]);
        }
        poly
    }
}

fn poly_mul(f: &FieldCtx, a: &[Fe], b: &[Fe]) -> Vec<Fe> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![f.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = f.add(&out[i + j], &f.mul(x, y));
        }
    }
    out
}

fn poly_sub(f: &FieldCtx, a: &[Fe], b: &[Fe]) -> Vec<Fe> {
    let n = a.len().max(b.len());
    let z = f.zero();
    (0..n)
        .map(|i| f.sub(a.get(i).unwrap_or(&z), b.get(i).unwrap_or(&z)))
        .collect()
}

fn poly_scale(f: &FieldCtx, a: &[Fe], c: &Fe) -> Vec<Fe> {
    a.iter().map(|x| f.mul(x, c)).collect()
}

pub fn poly_eval(f: &FieldCtx, a: &[Fe], x: &Fe) -> Fe {
    a.iter()
        .rev()
        .fold(f.zero(), |acc, c| f.add(&f.mul(&acc, x), c))
}

fn poly_trim(mut a: Vec<Fe>) -> Vec<Fe> {
    while a.last().is_some_and(Fe::is_zero) {
        a.pop();
    }
    a
}

/// The part `f_n` of the `n`-th division polynomial free of `y`:
/// `ψ_n = f_n` for odd `n` and `ψ_n = y·f_n` for even `n`.
pub fn division_polynomial(f: &FieldCtx, e: &Curve, n: usize) -> Vec<Fe> {
    let (a, b) = (e.a, e.b);
    let c = |v: i64| f.from_i64(v);
    let a2 = f.sqr(&a);
    let ab = f.mul(&a, &b);
    let cubic = vec![b, a, f.zero(), f.one()];
    let f_sq = poly_mul(f, &cubic, &cubic);
    let mut memo: Vec<Vec<Fe>> = vec![
        vec![],
        vec![f.one()],
        vec![c(2)],
        vec![
            f.neg(&a2),
            f.mul_u64(&b, 12),
            f.mul_u64(&a, 6),
            f.zero(),
            c(3),
        ],
        poly_scale(
            f,
            &[
                f.sub(&f.neg(&f.mul_u64(&f.sqr(&b), 8)), &f.mul(&a2, &a)),
                f.neg(&f.mul_u64(&ab, 4)),
                f.neg(&f.mul_u64(&a2, 5)),
                f.mul_u64(&b, 20),
                f.mul_u64(&a, 5),
                f.zero(),
                f.one(),
            ],
            &c(4),
        ),
    ];
    let half = f.inv(&c(2)).unwrap();
    for k in memo.len()..=n {
        let m = k / 2;
        let next = if k % 2 == 1 {
            let t1 = poly_mul(
                f,
                &memo[m + 2],
                &poly_mul(f, &memo[m], &poly_mul(f, &memo[m], &memo[m])),
            );
            let t2 = poly_mul(
                f,
                &memo[m - 1],
                &poly_mul(f, &memo[m + 1], &poly_mul(f, &memo[m + 1], &memo[m + 1])),
            );
            if m % 2 == 0 {
                poly_sub(f, &poly_mul(f, &f_sq, &t1), &t2)
            } else {
                poly_sub(f, &t1, &poly_mul(f, &f_sq, &t2))
            }
        } else {
            let t1 = poly_mul(f, &memo[m + 2], &poly_mul(f, &memo[m - 1], &memo[m - 1]));
            let t2 = poly_mul(f, &memo[m - 2], &poly_mul(f, &memo[m + 1], &memo[m + 1]));
            poly_scale(f, &poly_mul(f, &memo[m], &poly_sub(f, &t1, &t2)), &half)
        };
        memo.push(poly_trim(next));
    }
    poly_trim(memo.swap_remove(n))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all_points(f: &FieldCtx, e: &Curve) -> Vec<Point> {
        let mut pts = vec![Point::Infinity];
        for x in f.elements() {
            if let Some(Point::Affine(x, y)) = e.lift_x(f, &x) {
                pts.push(Point::Affine(x, y));
                if !y.is_zero() {
                    pts.push(Point::Affine(x, f.neg(&y)));
                }
            }
        }
        pts
    }

    #[test]
    fn j_invariant_of_models() {
        let f = FieldCtx::new(13, 2).unwrap();
        for j in f.elements().step_by(17) {
            let e = Curve::with_j_invariant(&f, &j);
            assert_eq!(e.j_invariant(&f), j);
        }
        // y^2 = x^3 + x + 4 over F_13 has j = 5
        let f13 = FieldCtx::new(13, 1).unwrap();
        let e = Curve::new(&f13, f13.one(), f13.from_u64(4)).unwrap();
        assert_eq!(e.j_invariant(&f13), f13.from_u64(5));
        assert_eq!(
            Curve::new(&f13, f13.zero(), f13.zero()),
            Err(CurveError::Singular)
        );
    }

    #[test]
    fn group_law_matches_point_count() {
        let f = FieldCtx::new(13, 1).unwrap();
        let e = Curve::new(&f, f.one(), f.from_u64(4)).unwrap();
        let pts = all_points(&f, &e);
        let n = pts.len() as u128;
        assert_eq!(e.count_points(&f, &SquareTable::new(&f)), n);
        for p in &pts {
            assert!(e.mul(&f, p, n).is_infinity());
            for q in pts.iter().step_by(3) {
                let s = e.add(&f, p, q);
                assert!(e.contains(&f, &s));
                assert_eq!(s, e.add(&f, q, p));
                for r in pts.iter().step_by(5) {
                    assert_eq!(e.add(&f, &s, r), e.add(&f, p, &e.add(&f, q, r)));
                }
            }
            assert!(e.add(&f, p, &e.neg(&f, p)).is_infinity());
        }
    }

    #[test]
    fn supersingularity_over_small_fields() {
        // j = 0 is ordinary for p = 13 (p ≡ 1 mod 3), j = 1728 is
        // supersingular for p = 11 (p ≡ 3 mod 4)
        let f13 = FieldCtx::new(13, 2).unwrap();
        let t13 = SquareTable::new(&f13);
        assert!(!is_supersingular(
            &f13,
            &Curve::with_j_invariant(&f13, &f13.zero()),
            &t13
        ));
        let f11 = FieldCtx::new(11, 2).unwrap();
        let t11 = SquareTable::new(&f11);
        let e = Curve::with_j_invariant(&f11, &f11.from_u64(1728));
        assert!(is_supersingular(&f11, &e, &t11));
        // the only supersingular j for p = 13 is 5
        let ss: Vec<Fe> = f13
            .elements()
            .filter(|j| is_supersingular(&f13, &Curve::with_j_invariant(&f13, j), &t13))
            .collect();
        assert_eq!(ss, vec![f13.from_u64(5)]);
    }

    #[test]
    fn twists_change_point_count() {
        let f = FieldCtx::new(13, 2).unwrap();
        let t = SquareTable::new(&f);
        let e = Curve::with_j_invariant(&f, &f.from_u64(5));
        let n = e.count_points(&f, &t);
        let nonsq = f.elements().skip(1).find(|c| !t.is_square(&f, c)).unwrap();
        let tw = e.twist(&f, &nonsq);
        assert_eq!(tw.j_invariant(&f), f.from_u64(5));
        assert_eq!(n + tw.count_points(&f, &t), 2 * (f.order() + 1));
        let counts = [n, tw.count_points(&f, &t)];
        assert!(counts.contains(&(14 * 14)) && counts.contains(&(12 * 12)));
    }

    #[test]
    fn isomorphisms_and_automorphisms() {
        let f = FieldCtx::new(11, 2).unwrap();
        let e = Curve::with_j_invariant(&f, &f.from_u64(1728));
        assert_eq!(e.automorphisms(&f).len(), 4);
        let e0 = Curve::with_j_invariant(&f, &f.zero());
        assert_eq!(e0.automorphisms(&f).len(), 6);
        let g = Curve::with_j_invariant(&f, &f.from_u64(3));
        assert_eq!(g.automorphisms(&f).len(), 2);
        let u = f.from_coeffs(&[2, 7]);
        let h = g.scale(&f, &u);
        let isos = g.isomorphisms_to(&f, &h);
        assert!(isos.contains(&u) && isos.len() == 2);
        assert!(g.isomorphisms_to(&f, &e).is_empty());
    }

    #[test]
    fn velu_is_a_homomorphism() {
        let f = FieldCtx::new(13, 1).unwrap();
        let e = Curve::new(&f, f.one(), f.from_u64(4)).unwrap();
        let pts = all_points(&f, &e);
        let n = pts.len() as u128;
        for ell in prime_factors(n) {
            let gen = pts
                .iter()
                .find(|p| !p.is_infinity() && e.mul(&f, p, ell).is_infinity())
                .unwrap();
            let phi = Isogeny::velu(&f, &e, gen, ell as u64).unwrap();
            let kernel: Vec<&Point> = pts
                .iter()
                .filter(|p| phi.eval(&f, p).is_infinity())
                .collect();
            assert_eq!(kernel.len() as u128, ell);
            assert_eq!(phi.kernel_polynomial(&f).len() as u128, ell / 2 + 1);
            for p in &pts {
                let ip = phi.eval(&f, p);
                assert!(phi.codomain.contains(&f, &ip));
                for q in pts.iter().step_by(2) {
                    assert_eq!(
                        phi.eval(&f, &e.add(&f, p, q)),
                        phi.codomain.add(&f, &ip, &phi.eval(&f, q))
                    );
                }
            }
        }
    }

    #[test]
    fn velu_rejects_wrong_order() {
        let f = FieldCtx::new(13, 1).unwrap();
        let e = Curve::new(&f, f.one(), f.from_u64(4)).unwrap();
        let p = all_points(&f, &e)[1];
        let ord = e.order_dividing(&f, &p, e.count_points(&f, &SquareTable::new(&f)));
        assert!(matches!(
            Isogeny::velu(&f, &e, &p, 1000),
            Err(CurveError::KernelOrder { found, .. }) if found as u128 == ord
        ));
    }

    #[test]
    fn scaled_isogeny_stays_on_codomain() {
        let f = FieldCtx::new(11, 2).unwrap();
        let e = Curve::with_j_invariant(&f, &f.from_u64(1728));
        let pts = all_points(&f, &e);
        let t = pts
            .iter()
            .find(|p| matches!(p, Point::Affine(_, y) if y.is_zero()))
            .unwrap();
        let u = f.from_coeffs(&[3, 5]);
        let phi = Isogeny::velu(&f, &e, t, 2).unwrap().then_scale(&f, &u);
        for p in pts.iter().step_by(7) {
            assert!(phi.codomain.contains(&f, &phi.eval(&f, p)));
        }
    }

    #[test]
    fn division_polynomial_roots_are_torsion_abscissae() {
        let f = FieldCtx::new(13, 2).unwrap();
        let e = Curve::with_j_invariant(&f, &f.from_u64(5));
        let pts = all_points(&f, &e);
        for ell in [3usize, 5, 7] {
            let psi = division_polynomial(&f, &e, ell);
            assert_eq!(psi.len() - 1, (ell * ell - 1) / 2);
            for p in &pts {
                if let Point::Affine(x, _) = p {
                    let torsion = e.mul(&f, p, ell as u128).is_infinity();
                    assert_eq!(poly_eval(&f, &psi, x).is_zero(), torsion, "ell = {ell}");
                }
            }
        }
        // even index: f_4 vanishes on 4-torsion that is not 2-torsion
        let psi4 = division_polynomial(&f, &e, 4);
        for p in &pts {
            if let Point::Affine(x, y) = p {
                if !y.is_zero() {
                    assert_eq!(
                        poly_eval(&f, &psi4, x).is_zero(),
                        e.mul(&f, p, 4).is_infinity()
                    );
                }
            }
        }
    }

    #[test]
    fn factorisation() {
        assert_eq!(prime_factors(28560), vec![2, 3, 5, 7, 17]);
        assert_eq!(prime_factors(1), Vec::<u128>::new());
    }
}
