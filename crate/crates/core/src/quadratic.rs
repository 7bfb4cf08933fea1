//! Kronecker symbols, binary quadratic forms, class numbers, and the Euler
//! characteristic and point-count formulas for supersingular isogeny graphs
//! with `B_0(N)` level structure.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum QuadError {
    #[error("{0} is not a negative discriminant (need D < 0, D ≡ 0 or 1 mod 4)")]
    BadDiscriminant(i64),
    #[error(
        "ℓ^r = {ell_r} is not below p = {p}; cycles then carry weights with no closed formula, \
         so the class-number route is unavailable"
    )]
    WeightsRegime { ell_r: u64, p: u64 },
    #[error("{0}")]
    Precondition(String),
}

/// Kronecker symbol `(a | n)`.
pub fn kronecker(a: i64, n: i64) -> i32 {
    if n == 0 {
        return i32::from(a == 1 || a == -1);
    }
    let mut result = 1;
    let mut n = n;
    if n < 0 {
        n = -n;
        if a < 0 {
            result = -result;
        }
    }
    let tz = n.trailing_zeros();
    if tz > 0 {
        if a % 2 == 0 {
            return 0;
        }
        let a8 = a.rem_euclid(8);
        if tz % 2 == 1 && (a8 == 3 || a8 == 5) {
            result = -result;
        }
        n >>= tz;
    }
    result * jacobi(a.rem_euclid(n), n)
}

/// Jacobi symbol for odd positive `n` and `0 ≤ a < n`.
fn jacobi(mut a: i64, mut n: i64) -> i32 {
    debug_assert!(n > 0 && n % 2 == 1);
    let mut result = 1;
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            let r = n % 8;
            if r == 3 || r == 5 {
                result = -result;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            result = -result;
        }
        a %= n;
    }
    if n == 1 {
        result
    } else {
        0
    }
}

pub fn is_discriminant(d: i64) -> bool {
    d < 0 && matches!(d.rem_euclid(4), 0 | 1)
}

/// Distinct prime divisors in increasing order.
pub fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut q = 2;
    while q * q <= n {
        if n % q == 0 {
            out.push(q);
            while n % q == 0 {
                n /= q;
            }
        }
        q += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && prime_divisors(n) == [n]
}

/// An imaginary quadratic order, described by its discriminant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct QuadOrder {
    pub disc: i64,
    pub fundamental: i64,
    pub conductor: u64,
}

impl QuadOrder {
    pub fn new(disc: i64) -> Result<Self, QuadError> {
        if !is_discriminant(disc) {
            return Err(QuadError::BadDiscriminant(disc));
        }
        let mut f = 1u64;
        let mut d0 = disc;
        let mut q = 2i64;
        while q * q <= -d0 {
            while d0 % (q * q) == 0 && is_discriminant(d0 / (q * q)) {
                d0 /= q * q;
                f *= q as u64;
            }
            q += 1;
        }
        Ok(Self {
            disc,
            fundamental: d0,
            conductor: f,
        })
    }
}

impl fmt::Display for QuadOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.disc)
    }
}

/// Binary quadratic form `ax² + bxy + cy²`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct QuadForm {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    if b == 0 {
        if a < 0 {
            (-a, -1, 0)
        } else {
            (a, 1, 0)
        }
    } else {
        let (g, x, y) = ext_gcd(b, a.rem_euclid(b));
        (g, y, x - a.div_euclid(b) * y)
    }
}

impl QuadForm {
    pub fn new(a: i64, b: i64, c: i64) -> Self {
        Self { a, b, c }
    }

    pub fn discriminant(&self) -> i64 {
        self.b * self.b - 4 * self.a * self.c
    }

    pub fn is_reduced(&self) -> bool {
        let (a, b, c) = (self.a, self.b, self.c);
        a > 0 && b.abs() <= a && a <= c && (b >= 0 || (b.abs() != a && a != c))
    }

    pub fn is_primitive(&self) -> bool {
        self.a.gcd(&self.b).gcd(&self.c) == 1
    }

    /// The principal form of discriminant `d`.
    pub fn identity(d: i64) -> Self {
        let b = d.rem_euclid(2);
        Self::new(1, b, (b * b - d) / 4)
    }

    pub fn inverse(&self) -> Self {
        Self::new(self.a, -self.b, self.c).reduce()
    }

    fn normalize(self) -> Self {
        let (a, b, c) = (self.a as i128, self.b as i128, self.c as i128);
        if -a < b && b <= a {
            return self;
        }
        let r = (a - b).div_euclid(2 * a);
        let b2 = b + 2 * r * a;
        let c2 = a * r * r + b * r + c;
        Self::new(a as i64, b2 as i64, c2 as i64)
    }

    /// The unique reduced form equivalent to a positive definite `self`.
    pub fn reduce(self) -> Self {
        let mut f = self.normalize();
        loop {
            if f.a > f.c {
                f = Self::new(f.c, -f.b, f.a).normalize();
            } else {
                if f.a == f.c && f.b < 0 {
                    f.b = -f.b;
                }
                return f;
            }
        }
    }

    /// Gauss composition followed by reduction.
    pub fn compose(&self, other: &Self) -> Self {
        let (mut f1, mut f2) = (*self, *other);
        if f1.a > f2.a {
            std::mem::swap(&mut f1, &mut f2);
        }
        let (a1, b1) = (f1.a as i128, f1.b as i128);
        let (a2, b2, c2) = (f2.a as i128, f2.b as i128, f2.c as i128);
        let s = (b1 + b2) / 2;
        let n = b2 - s;
        let (d, y1) = if a2 % a1 == 0 {
            (a1, 0)
        } else {
            let (d, u, _) = ext_gcd(a2, a1);
            (d, u)
        };
        let (d1, x2, y2) = if s % d == 0 {
            (d, 0, -1)
        } else {
            let (d1, x2, y2) = ext_gcd(s, d);
            (d1, x2, -y2)
        };
        let v1 = a1 / d1;
        let v2 = a2 / d1;
        let r = (y1 * y2 * n - x2 * c2).rem_euclid(v1);
        let b3 = b2 + 2 * v2 * r;
        let a3 = v1 * v2;
        let c3 = (c2 * d1 + r * (b2 + v2 * r)) / v1;
        Self::new(a3 as i64, b3 as i64, c3 as i64).reduce()
    }

    /// Order of the class of `self` in the form class group.
    pub fn order(&self) -> u64 {
        let id = Self::identity(self.discriminant());
        let base = self.reduce();
        let mut cur = base;
        let mut k = 1;
        while cur != id {
            cur = cur.compose(&base);
            k += 1;
        }
        k
    }
}

impl fmt::Display for QuadForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.a, self.b, self.c)
    }
}

/// Reduced primitive forms of discriminant `d`, sorted.
pub fn reduced_forms(d: i64) -> Result<Vec<QuadForm>, QuadError> {
    if !is_discriminant(d) {
        return Err(QuadError::BadDiscriminant(d));
    }
    let mut out = Vec::new();
    let bmax = ((-d) as f64 / 3.0).sqrt() as i64 + 1;
    for b in -bmax..=bmax {
        if (b - d).rem_euclid(2) != 0 {
            continue;
        }
        let ac = (b * b - d) / 4;
        let mut a = b.abs().max(1);
        while a * a <= ac {
            if ac % a == 0 {
                let f = QuadForm::new(a, b, ac / a);
                if f.is_reduced() && f.is_primitive() {
                    out.push(f);
                }
            }
            a += 1;
        }
    }
    out.sort();
    Ok(out)
}

pub fn class_number(d: i64) -> Result<u64, QuadError> {
    Ok(reduced_forms(d)?.len() as u64)
}

/// Order of `[𝔩]` for a prime `𝔩` above `ℓ` in the order of discriminant `d`,
/// or `None` when `ℓ` does not split there.
pub fn form_order_of_ell(d: i64, ell: i64) -> Option<u64> {
    let order = QuadOrder::new(d).ok()?;
    if kronecker(d, ell) != 1 || order.conductor % ell as u64 == 0 {
        return None;
    }
    let b = (0..2 * ell).find(|b| (b * b - d).rem_euclid(4 * ell) == 0)?;
    let f = QuadForm::new(ell, b, (b * b - d) / (4 * ell));
    Some(f.order())
}

/// Orders `O` with `p` not split in the fraction field, conductor prime to
/// `pℓ`, `(ℓ)` split in `O`, and `[𝔩]` of order exactly `r`. Sorted by
/// `|D|`.
pub fn cycle_set_i(r: u32, p: u64, ell: u64) -> Result<Vec<QuadOrder>, QuadError> {
    if r == 0 {
        return Err(QuadError::Precondition("r must be at least 1".into()));
    }
    let ell_r = ell
        .checked_pow(r)
        .ok_or_else(|| QuadError::Precondition("ℓ^r overflows".into()))?;
    if ell_r >= p {
        return Err(QuadError::WeightsRegime { ell_r, p });
    }
    cycle_set_i_unchecked(r, p, ell)
}

/// The same search without the `ℓ^r < p` precondition.
pub fn cycle_set_i_unchecked(r: u32, p: u64, ell: u64) -> Result<Vec<QuadOrder>, QuadError> {
    let bound = 4 * (ell as i64).pow(r);
    let mut out = Vec::new();
    for absd in 3..=bound {
        let d = -absd;
        if !is_discriminant(d) {
            continue;
        }
        let o = QuadOrder::new(d)?;
        if kronecker(o.fundamental, p as i64) == 1 || o.conductor % p == 0 || o.conductor % ell == 0
        {
            continue;
        }
        if form_order_of_ell(d, ell as i64) == Some(r as u64) {
            out.push(o);
        }
    }
    Ok(out)
}

/// `r·c_r` predicted by class numbers: `2 Σ_{O ∈ I_r} h(O)`.
pub fn class_number_cycle_weight(r: u32, p: u64, ell: u64) -> Result<u64, QuadError> {
    let set = cycle_set_i(r, p, ell)?;
    let mut total = 0;
    for o in set {
        total += 2 * class_number(o.disc)?;
    }
    Ok(total)
}

/// `N_r = Σ_{d | r} d·c_d` using the class-number expression for each
/// `d·c_d`.
pub fn class_number_nr(r: u32, p: u64, ell: u64) -> Result<u64, QuadError> {
    let mut total = 0;
    for d in (1..=r).filter(|d| r % d == 0) {
        total += class_number_cycle_weight(d, p, ell)?;
    }
    Ok(total)
}

/// `ψ(N) = N Π_{q | N} (1 + 1/q)`.
pub fn psi(n: u64) -> u64 {
    prime_divisors(n)
        .into_iter()
        .fold(n, |acc, q| acc / q * (q + 1))
}

fn v2(n: u64) -> u32 {
    n.trailing_zeros()
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn frac(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Every quantity entering the closed-form Euler characteristics of the
/// orientable graphs of `G(p, ℓ, B_0(N))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EulerCharReport {
    pub p: u64,
    pub ell: u64,
    pub n: u64,
    pub psi: u64,
    pub eps2: i64,
    pub eps3: i64,
    pub gamma: i64,
    pub delta4: BigRational,
    pub delta3: BigRational,
    pub nu_ell: Option<i64>,
    pub nu_4ell: Option<i64>,
    pub class_number: Option<u64>,
    pub r: BigRational,
    pub num_vertices: BigRational,
    pub chi_plus: BigRational,
    pub chi_minus: BigRational,
}

impl EulerCharReport {
    /// `(χ⁺, χ⁻)` as integers; panics if the formula produced a fraction.
    pub fn chi(&self) -> (i64, i64) {
        let as_int = |x: &BigRational| {
            assert!(x.is_integer(), "Euler characteristic {x} is not an integer");
            x.to_integer().to_i64().expect("fits in i64")
        };
        (as_int(&self.chi_plus), as_int(&self.chi_minus))
    }
}

fn nu_4ell(n: u64, ell: u64) -> i64 {
    match (v2(n), ell % 8) {
        (0, _) => 1,
        (1, 1 | 5) => 1,
        (1, 3 | 7) => 2,
        (_, 1 | 5) => 0,
        (2, 3) => 2,
        (_, 7) => 4,
        _ => 0,
    }
}

fn nu_ell(n: u64, ell: u64) -> Option<i64> {
    match (v2(n), ell % 8) {
        (0, _) => Some(1),
        (_, 3) => Some(0),
        (_, 7) => Some(2),
        _ => None,
    }
}

pub fn euler_chars_borel(p: u64, ell: u64, n: u64) -> Result<EulerCharReport, QuadError> {
    if p <= 3 || !is_prime(p) || !is_prime(ell) || p == ell {
        return Err(QuadError::Precondition(format!(
            "need distinct primes p > 3 and ℓ, got p = {p}, ℓ = {ell}"
        )));
    }
    if n == 0 || n.gcd(&(p * ell)) != 1 {
        return Err(QuadError::Precondition(format!(
            "N = {n} must be positive and coprime to pℓ"
        )));
    }
    let (pi, li) = (p as i64, ell as i64);
    let qs = prime_divisors(n);
    let prod = |a: i64| -> i64 {
        qs.iter()
            .map(|&q| 1 + kronecker(a, q as i64) as i64)
            .product()
    };
    let eps2 = if n % 4 == 0 {
        0
    } else {
        (1 - kronecker(-4, pi) as i64) * prod(-4)
    };
    let eps3 = if n % 9 == 0 {
        0
    } else {
        (1 - kronecker(-3, pi) as i64) * prod(-3)
    };
    let gamma = (1 - kronecker(-li, pi) as i64)
        * qs.iter()
            .filter(|&&q| q % 2 == 1)
            .map(|&q| 1 + kronecker(-li, q as i64) as i64)
            .product::<i64>();
    let (delta4, delta3) = if ell == 2 {
        (rat(1), rat(2))
    } else {
        (
            frac(li - kronecker(-1, li) as i64, 2),
            frac(2 * (li - kronecker(-3, li) as i64), 3),
        )
    };
    let psi_n = psi(n);
    let field_disc = if ell % 4 == 3 { -li } else { -4 * li };
    let (nu_l, nu_4l, h, r) = if ell == 2 {
        let r = frac(eps2, 2) + frac((1 - kronecker(-2, pi) as i64) * prod(-2), 2);
        (None, None, None, r)
    } else {
        let h = class_number(field_disc)?;
        let nu4 = nu_4ell(n, ell);
        let nul = nu_ell(n, ell);
        let weight = if ell == 3 || ell % 8 == 7 {
            nul.expect("ν_ℓ defined for ℓ ≡ 3 mod 4") + nu4
        } else if ell % 8 == 3 {
            nul.expect("ν_ℓ defined for ℓ ≡ 3 mod 4") + 3 * nu4
        } else {
            nu4
        };
        let r = frac(h as i64 * weight * gamma, 2);
        (nul, Some(nu4), Some(h), r)
    };
    let chi_plus = frac((1 - li) * (pi - 1) * psi_n as i64, 24)
        + (rat(1 - li) + rat(2) * &delta4) / rat(8) * rat(eps2)
        + (rat(2 - 2 * li) + rat(3) * &delta3) / rat(12) * rat(eps3)
        + &r / rat(2);
    let chi_minus = &chi_plus - &r;
    let num_vertices = frac((pi - 1) * psi_n as i64, 12) + frac(eps2, 4) + frac(eps3, 3);
    Ok(EulerCharReport {
        p,
        ell,
        n,
        psi: psi_n,
        eps2,
        eps3,
        gamma,
        delta4,
        delta3,
        nu_ell: nu_l,
        nu_4ell: nu_4l,
        class_number: h,
        r,
        num_vertices,
        chi_plus,
        chi_minus,
    })
}

fn sign_r(r: u32) -> i64 {
    if r % 2 == 1 {
        1
    } else {
        -1
    }
}

/// `#X_0(p)(F_{ℓ^r}) = 2(1 + ℓ^r) − χ⁺ + (−1)^{r−1} χ⁻ − N_r`.
pub fn point_count_x0(ell: u64, r: u32, n_r: i64, chi_plus: i64, chi_minus: i64) -> i64 {
    let q = (ell as i64).pow(r);
    2 * (1 + q) - chi_plus + sign_r(r) * chi_minus - n_r
}

/// `#X_0(pN) − 2#X_0(N) + N_r + χ⁺ − (−1)^{r−1} χ⁻`, which vanishes when
/// the point counts and the cycle count are consistent.
pub fn point_count_relation(
    r: u32,
    n_r: i64,
    chi_plus: i64,
    chi_minus: i64,
    count_x0_n: i64,
    count_x0_pn: i64,
) -> i64 {
    count_x0_pn - 2 * count_x0_n + n_r + chi_plus - sign_r(r) * chi_minus
}

/// Genus of `X_0(M)`.
pub fn genus_x0(m: u64) -> u64 {
    let qs = prime_divisors(m);
    let mu = psi(m) as i64;
    let nu2: i64 = if m % 4 == 0 {
        0
    } else {
        qs.iter()
            .map(|&q| 1 + kronecker(-4, q as i64) as i64)
            .product()
    };
    let nu3: i64 = if m % 9 == 0 {
        0
    } else {
        qs.iter()
            .map(|&q| 1 + kronecker(-3, q as i64) as i64)
            .product()
    };
    let cusps: i64 = (1..=m)
        .filter(|d| m % d == 0)
        .map(|d| euler_phi(d.gcd(&(m / d))) as i64)
        .sum();
    let twelve_g = 12 + mu - 3 * nu2 - 4 * nu3 - 6 * cusps;
    assert!(twelve_g >= 0 && twelve_g % 12 == 0, "genus formula");
    (twelve_g / 12) as u64
}

pub fn euler_phi(n: u64) -> u64 {
    prime_divisors(n)
        .into_iter()
        .fold(n, |acc, q| acc / q * (q - 1))
}

/// One row of [`asymptotic_report`].
#[derive(Debug, Clone, PartialEq)]
pub struct AsymptoticRow {
    pub r: u32,
    pub n_r: BigInt,
    pub ratio: f64,
    pub lower: f64,
    pub upper: f64,
    /// `|N_r − ℓ^r| ≤ K·ℓ^{r/2}`, decided exactly.
    pub within: bool,
}

/// `N_r / ℓ^r` for the given counts `N_1, N_2, ...`, with the band
/// `1 ± K ℓ^{−r/2}`.
pub fn asymptotic_report(counts: &[BigInt], ell: u64, k: u64) -> Vec<AsymptoticRow> {
    counts
        .iter()
        .enumerate()
        .map(|(i, n_r)| {
            let r = i as u32 + 1;
            let q = BigInt::from(ell).pow(r);
            let diff = n_r - &q;
            let within = &diff * &diff <= BigInt::from(k * k) * &q;
            let qf = (ell as f64).powi(r as i32);
            let ratio = n_r.to_f64().unwrap_or(f64::NAN) / qf;
            let w = k as f64 / qf.sqrt();
            AsymptoticRow {
                r,
                n_r: n_r.clone(),
                ratio,
                lower: 1.0 - w,
                upper: 1.0 + w,
                within,
            }
        })
        .collect()
}

/// Band constant `2g(X_0(pN)) + 4g(X_0(N)) + 1 + |χ⁺| + |χ⁻|`.
pub fn asymptotic_band_constant(p: u64, n: u64, chi_plus: i64, chi_minus: i64) -> u64 {
    2 * genus_x0(p * n) + 4 * genus_x0(n) + 1 + chi_plus.unsigned_abs() + chi_minus.unsigned_abs()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Legendre symbol by listing squares.
    fn legendre_brute(a: i64, p: i64) -> i32 {
        let a = a.rem_euclid(p);
        if a == 0 {
            return 0;
        }
        if (1..p).any(|x| (x * x) % p == a) {
            1
        } else {
            -1
        }
    }

    #[test]
    fn kronecker_examples() {
        assert_eq!(kronecker(-4, 11), -1);
        assert_eq!(kronecker(-3, 13), 1);
        for a in -20..20 {
            assert_eq!(kronecker(a, 1), 1);
        }
        assert_eq!(kronecker(5, 2), -1);
        assert_eq!(kronecker(7, 2), 1);
        assert_eq!(kronecker(4, 2), 0);
        assert_eq!(kronecker(-1, -1), -1);
    }

    #[test]
    fn kronecker_matches_legendre() {
        for p in [3, 5, 7, 11, 13, 17, 19, 23, 37] {
            for a in -50..50 {
                assert_eq!(kronecker(a, p), legendre_brute(a, p), "({a}|{p})");
            }
        }
    }

    #[test]
    fn class_numbers() {
        assert_eq!(class_number(-23), Ok(3));
        assert_eq!(class_number(-31), Ok(3));
        assert_eq!(class_number(-3), Ok(1));
        assert_eq!(class_number(-4), Ok(1));
        assert_eq!(class_number(-12), Ok(1));
        assert_eq!(class_number(-44), Ok(3 * class_number(-11).unwrap()));
        assert_eq!(class_number(-5), Err(QuadError::BadDiscriminant(-5)));
    }

    /// Scan all triples with a ≤ √(|D|/3), independent of the b-major loop.
    fn class_number_triples(d: i64) -> u64 {
        let amax = ((-d) as f64 / 3.0).sqrt() as i64 + 1;
        let mut count = 0;
        for a in 1..=amax {
            for b in -a..=a {
                if (b * b - d) % (4 * a) != 0 {
                    continue;
                }
                let f = QuadForm::new(a, b, (b * b - d) / (4 * a));
                if f.is_reduced() && f.is_primitive() {
                    count += 1;
                }
            }
        }
        count
    }

    #[test]
    fn class_number_two_ways() {
        for absd in 3..=200 {
            let d = -absd;
            if is_discriminant(d) {
                assert_eq!(class_number(d).unwrap(), class_number_triples(d), "D = {d}");
            }
        }
    }

    #[test]
    fn composition_group_axioms() {
        for d in [-23, -31, -47, -56, -71, -84] {
            let forms = reduced_forms(d).unwrap();
            let id = QuadForm::identity(d);
            for f in &forms {
                assert_eq!(f.compose(&id), *f);
                assert_eq!(f.compose(&f.inverse()), id);
                for g in &forms {
                    let fg = f.compose(g);
                    assert!(forms.contains(&fg));
                    assert_eq!(fg, g.compose(f));
                    for h in &forms {
                        assert_eq!(fg.compose(h), f.compose(&g.compose(h)));
                    }
                }
                assert_eq!(forms.len() as u64 % f.order(), 0);
            }
        }
    }

    #[test]
    fn orders_of_ell() {
        assert_eq!(form_order_of_ell(-23, 2), Some(3));
        assert_eq!(form_order_of_ell(-31, 2), Some(3));
        assert_eq!(form_order_of_ell(-4, 5), Some(1));
        assert_eq!(form_order_of_ell(-4, 3), None);
    }

    #[test]
    fn cycle_sets() {
        let i3: Vec<i64> = cycle_set_i(3, 11, 2)
            .unwrap()
            .iter()
            .map(|o| o.disc)
            .collect();
        assert_eq!(i3, vec![-23, -31]);
        assert!(cycle_set_i(1, 11, 2).unwrap().is_empty());
        assert!(matches!(
            cycle_set_i(4, 11, 2),
            Err(QuadError::WeightsRegime { ell_r: 16, p: 11 })
        ));
        assert_eq!(class_number_cycle_weight(3, 11, 2), Ok(12));
    }

    #[test]
    fn conductors() {
        let o = QuadOrder::new(-12).unwrap();
        assert_eq!((o.fundamental, o.conductor), (-3, 2));
        let o = QuadOrder::new(-60).unwrap();
        assert_eq!((o.fundamental, o.conductor), (-15, 2));
        let o = QuadOrder::new(-16).unwrap();
        assert_eq!((o.fundamental, o.conductor), (-4, 2));
        let o = QuadOrder::new(-99).unwrap();
        assert_eq!((o.fundamental, o.conductor), (-11, 3));
    }

    #[test]
    fn euler_chars() {
        assert_eq!(euler_chars_borel(11, 3, 1).unwrap().chi(), (1, -1));
        assert_eq!(euler_chars_borel(11, 2, 1).unwrap().chi(), (1, 0));
        assert_eq!(euler_chars_borel(13, 2, 1).unwrap().chi(), (0, -1));
        assert!(euler_chars_borel(11, 3, 3).is_err());
    }

    #[test]
    fn point_counts() {
        assert_eq!(point_count_x0(2, 3, 12, 1, 0), 5);
        assert_eq!(point_count_x0(2, 2, 0, 0, 1), 2 * 5 - 1);
        assert_eq!(point_count_relation(3, 12, 1, 0, 9, 5), 0);
    }

    #[test]
    fn genera() {
        assert_eq!(genus_x0(1), 0);
        assert_eq!(genus_x0(11), 1);
        assert_eq!(genus_x0(13), 0);
        assert_eq!(genus_x0(23), 2);
        assert_eq!(genus_x0(37), 2);
        assert_eq!(genus_x0(33), 3);
        assert_eq!(psi(5), 6);
        assert_eq!(psi(12), 24);
    }

    #[test]
    fn asymptotic_rows() {
        let rows = asymptotic_report(&[BigInt::from(2)], 2, 0);
        assert_eq!(rows[0].ratio, 1.0);
        assert!(rows[0].within);
        let tree = asymptotic_report(&[BigInt::from(0), BigInt::from(0)], 3, 1);
        assert!(tree.iter().all(|r| r.ratio == 0.0));
    }

    proptest! {
        #[test]
        fn reduction_is_idempotent_and_preserves_disc(a in 1i64..60, b in -60i64..60, c in 1i64..60) {
            let f = QuadForm::new(a, b, c);
            prop_assume!(f.discriminant() < 0);
            let r = f.reduce();
            prop_assert!(r.is_reduced());
            prop_assert_eq!(r.discriminant(), f.discriminant());
            prop_assert_eq!(r.reduce(), r);
        }

        #[test]
        fn kronecker_is_multiplicative_in_a(a in -200i64..200, b in -200i64..200, n in 1i64..200) {
            prop_assert_eq!(kronecker(a * b, n), kronecker(a, n) * kronecker(b, n));
        }
    }
}
