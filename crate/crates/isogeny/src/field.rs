//! Arithmetic in `F_p` and `F_{p^k}` for odd primes `p > 3`.
//!
//! `F_{p^k}` is `F_p[x]/(f)` for the first monic irreducible `f` of degree
//! `k` in lexicographic order. Elements are fixed-size coefficient arrays so
//! they are `Copy` and hash cheaply.

use std::cmp::Ordering;
use std::fmt;

use thiserror::Error;

/// Largest supported extension degree.
pub const MAX_DEGREE: usize = 16;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FieldError {
    #[error("{0} is not a prime greater than 3")]
    BadPrime(u64),
    #[error("extension degree {0} is outside 1..={MAX_DEGREE}")]
    BadDegree(usize),
    #[error("modulus is not a monic irreducible polynomial of the requested degree")]
    Reducible,
    #[error("division by zero")]
    DivisionByZero,
}

/// Element of `F_{p^k}`: coefficients of `1, x, ..., x^{k-1}`, the rest zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fe(pub [u64; MAX_DEGREE]);

impl Fe {
    pub const ZERO: Fe = Fe([0; MAX_DEGREE]);

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn coeffs(&self, k: usize) -> &[u64] {
        &self.0[..k]
    }
}

impl Ord for Fe {
    /// Canonical order: compares the coefficient of the highest power of `x`
    /// first, so `F_p` precedes everything else and the order agrees with
    /// the integer index `Σ c_i p^i`.
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.iter().rev().cmp(other.0.iter().rev())
    }
}

impl PartialOrd for Fe {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    acc
}

/// Deterministic Miller–Rabin for 64-bit integers.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &w in &WITNESSES {
        if n % w == 0 {
            return n == w;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'outer: for &w in &WITNESSES {
        let mut x = pow_mod(w, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

/// Dense polynomials over `F_p`, constant term first, trimmed.
mod fp_poly {
    use super::{mul_mod, pow_mod};

    pub fn trim(mut v: Vec<u64>) -> Vec<u64> {
        while v.last() == Some(&0) {
            v.pop();
        }
        v
    }

    pub fn sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let n = a.len().max(b.len());
        trim(
            (0..n)
                .map(|i| {
                    let x = a.get(i).copied().unwrap_or(0);
                    let y = b.get(i).copied().unwrap_or(0);
                    (x + p - y) % p
                })
                .collect(),
        )
    }

    pub fn rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
        let mut r = trim(a.to_vec());
        let dm = m.len() - 1;
        let inv_lead = pow_mod(m[dm], p - 2, p);
        while r.len() > dm {
            let top = r.len() - 1;
            let q = mul_mod(r[top], inv_lead, p);
            let shift = top - dm;
            for (j, &c) in m.iter().enumerate() {
                r[shift + j] = (r[shift + j] + p - mul_mod(q, c, p)) % p;
            }
            r = trim(r);
        }
        r
    }

    pub fn mul_rem(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + mul_mod(x, y, p)) % p;
            }
        }
        rem(&out, m, p)
    }

    pub fn pow_rem(base: &[u64], mut e: u64, m: &[u64], p: u64) -> Vec<u64> {
        let mut acc = vec![1];
        let mut b = rem(base, m, p);
        while e > 0 {
            if e & 1 == 1 {
                acc = mul_rem(&acc, &b, m, p);
            }
            b = mul_rem(&b, &b, m, p);
            e >>= 1;
        }
        acc
    }

    pub fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let (mut a, mut b) = (trim(a.to_vec()), trim(b.to_vec()));
        while !b.is_empty() {
            let r = rem(&a, &b, p);
            a = b;
            b = r;
        }
        a
    }
}

/// Ben-Or test: `f` of degree `k` is irreducible iff
/// `gcd(x^{p^i} − x, f) = 1` for `1 ≤ i ≤ k/2`.
pub fn is_irreducible(f: &[u64], p: u64) -> bool {
    let f = fp_poly::trim(f.to_vec());
    if f.len() < 2 {
        return false;
    }
    let k = f.len() - 1;
    let x = vec![0, 1];
    let mut h = x.clone();
    for _ in 1..=k / 2 {
        h = fp_poly::pow_rem(&h, p, &f, p);
        let g = fp_poly::gcd(&fp_poly::sub(&h, &x, p), &f, p);
        if g.len() != 1 {
            return false;
        }
    }
    true
}

/// First monic irreducible polynomial of degree `k` over `F_p`, scanning the
/// lower coefficients `(c_0, ..., c_{k-1})` by the index `Σ c_i p^i`. For
/// `k = 1` this is `x`.
pub fn find_irreducible(p: u64, k: usize) -> Vec<u64> {
    let total = (p as u128).pow(k as u32);
    for idx in 0..total {
        let mut f = vec![0u64; k + 1];
        let mut t = idx;
        for c in f.iter_mut().take(k) {
            *c = (t % p as u128) as u64;
            t /= p as u128;
        }
        f[k] = 1;
        if is_irreducible(&f, p) {
            return f;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

/// The field `F_{p^k}` with a fixed modulus.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldCtx {
    p: u64,
    k: usize,
    modulus: Vec<u64>,
    order: u128,
    non_residue: Fe,
}

impl FieldCtx {
    pub fn new(p: u64, k: usize) -> Result<Self, FieldError> {
        if p <= 3 || !is_prime_u64(p) {
            return Err(FieldError::BadPrime(p));
        }
        if k == 0 || k > MAX_DEGREE {
            return Err(FieldError::BadDegree(k));
        }
        Self::with_modulus(p, find_irreducible(p, k))
    }

    pub fn with_modulus(p: u64, modulus: Vec<u64>) -> Result<Self, FieldError> {
        if p <= 3 || !is_prime_u64(p) {
            return Err(FieldError::BadPrime(p));
        }
        let k = modulus.len().saturating_sub(1);
        if k == 0 || k > MAX_DEGREE {
            return Err(FieldError::BadDegree(k));
        }
        if modulus[k] != 1 || !is_irreducible(&modulus, p) {
            return Err(FieldError::Reducible);
        }
        let order = (p as u128)
            .checked_pow(k as u32)
            .ok_or(FieldError::BadDegree(k))?;
        let mut ctx = Self {
            p,
            k,
            modulus,
            order,
            non_residue: Fe::ZERO,
        };
        let mut idx = 2u128;
        loop {
            let z = ctx.from_index(idx);
            if !ctx.is_square(&z) {
                ctx.non_residue = z;
                break;
            }
            idx += 1;
        }
        Ok(ctx)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.k
    }

    pub fn order(&self) -> u128 {
        self.order
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn zero(&self) -> Fe {
        Fe::ZERO
    }

    pub fn one(&self) -> Fe {
        self.from_u64(1)
    }

    pub fn from_u64(&self, v: u64) -> Fe {
        let mut c = [0; MAX_DEGREE];
        c[0] = v % self.p;
        Fe(c)
    }

    pub fn from_i64(&self, v: i64) -> Fe {
        self.from_u64(v.rem_euclid(self.p as i64) as u64)
    }

    /// Element with the given coefficients (reduced mod `p`, padded).
    pub fn from_coeffs(&self, coeffs: &[u64]) -> Fe {
        assert!(coeffs.len() <= self.k, "too many coefficients");
        let mut c = [0; MAX_DEGREE];
        for (slot, &v) in c.iter_mut().zip(coeffs) {
            *slot = v % self.p;
        }
        Fe(c)
    }

    /// The element whose coefficients are the base-`p` digits of `idx`.
    pub fn from_index(&self, mut idx: u128) -> Fe {
        let mut c = [0; MAX_DEGREE];
        for slot in c.iter_mut().take(self.k) {
            *slot = (idx % self.p as u128) as u64;
            idx /= self.p as u128;
        }
        Fe(c)
    }

    pub fn index(&self, a: &Fe) -> u128 {
        a.0[..self.k]
            .iter()
            .rev()
            .fold(0u128, |acc, &c| acc * self.p as u128 + c as u128)
    }

    /// The generator `x` of the extension (equal to `0` when `k = 1`).
    pub fn gen(&self) -> Fe {
        if self.k == 1 {
            return self.from_u64((self.p - self.modulus[0]) % self.p);
        }
        let mut c = [0; MAX_DEGREE];
        c[1] = 1;
        Fe(c)
    }

    /// All elements in canonical order; only sensible for small fields.
    pub fn elements(&self) -> impl Iterator<Item = Fe> + '_ {
        (0..self.order).map(move |i| self.from_index(i))
    }

    pub fn add(&self, a: &Fe, b: &Fe) -> Fe {
        let mut c = [0; MAX_DEGREE];
        for i in 0..self.k {
            let s = a.0[i] + b.0[i];
            c[i] = if s >= self.p { s - self.p } else { s };
        }
        Fe(c)
    }

    pub fn sub(&self, a: &Fe, b: &Fe) -> Fe {
        let mut c = [0; MAX_DEGREE];
        for i in 0..self.k {
            c[i] = if a.0[i] >= b.0[i] {
                a.0[i] - b.0[i]
            } else {
                a.0[i] + self.p - b.0[i]
            };
        }
        Fe(c)
    }

    pub fn neg(&self, a: &Fe) -> Fe {
        self.sub(&Fe::ZERO, a)
    }

    pub fn mul(&self, a: &Fe, b: &Fe) -> Fe {
        let k = self.k;
        let p = self.p as u128;
        let mut prod = [0u128; 2 * MAX_DEGREE];
        for i in 0..k {
            if a.0[i] == 0 {
                continue;
            }
            for j in 0..k {
                prod[i + j] += a.0[i] as u128 * b.0[j] as u128;
            }
        }
        for v in prod.iter_mut().take(2 * k) {
            *v %= p;
        }
        // reduce by the monic modulus from the top down
        for top in (k..2 * k - 1).rev() {
            let q = prod[top] % p;
            if q == 0 {
                continue;
            }
            prod[top] = 0;
            for j in 0..k {
                let m = self.modulus[j] as u128;
                if m != 0 {
                    prod[top - k + j] = (prod[top - k + j] + q * (p - m)) % p;
                }
            }
        }
        let mut c = [0; MAX_DEGREE];
        for i in 0..k {
            c[i] = (prod[i] % p) as u64;
        }
        Fe(c)
    }

    pub fn sqr(&self, a: &Fe) -> Fe {
        self.mul(a, a)
    }

    pub fn mul_u64(&self, a: &Fe, s: u64) -> Fe {
        self.mul(a, &self.from_u64(s))
    }

    pub fn pow(&self, a: &Fe, mut e: u128) -> Fe {
        let mut acc = self.one();
        let mut b = *a;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &b);
            }
            e >>= 1;
            if e > 0 {
                b = self.sqr(&b);
            }
        }
        acc
    }

    pub fn inv(&self, a: &Fe) -> Result<Fe, FieldError> {
        if a.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        Ok(self.pow(a, self.order - 2))
    }

    pub fn div(&self, a: &Fe, b: &Fe) -> Result<Fe, FieldError> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    /// `a^{p^e}`.
    pub fn frobenius(&self, a: &Fe, e: usize) -> Fe {
        let mut r = *a;
        for _ in 0..e {
            r = self.pow(&r, self.p as u128);
        }
        r
    }

    pub fn is_square(&self, a: &Fe) -> bool {
        a.is_zero() || self.pow(a, (self.order - 1) / 2) == self.one()
    }

    /// Square root by Tonelli–Shanks; of the two roots the smaller one in
    /// canonical order is returned.
    pub fn sqrt(&self, a: &Fe) -> Option<Fe> {
        if a.is_zero() {
            return Some(Fe::ZERO);
        }
        if !self.is_square(a) {
            return None;
        }
        let q1 = self.order - 1;
        let s = q1.trailing_zeros();
        let t = q1 >> s;
        let mut m = s;
        let mut c = self.pow(&self.non_residue, t);
        let mut tt = self.pow(a, t);
        let mut r = self.pow(a, t.div_ceil(2));
        let one = self.one();
        while tt != one {
            let mut i = 0;
            let mut t2 = tt;
            while t2 != one {
                t2 = self.sqr(&t2);
                i += 1;
            }
            let mut b = c;
            for _ in 0..(m - i - 1) {
                b = self.sqr(&b);
            }
            m = i;
            c = self.sqr(&b);
            tt = self.mul(&tt, &c);
            r = self.mul(&r, &b);
        }
        debug_assert_eq!(self.sqr(&r), *a);
        let nr = self.neg(&r);
        Some(if nr < r { nr } else { r })
    }

    pub fn display(&self, a: &Fe) -> String {
        let parts: Vec<String> = a.0[..self.k].iter().map(u64::to_string).collect();
        format!("[{}]", parts.join(","))
    }

    /// Element `[c0,c1,...]` as printed by [`FieldCtx::display`].
    pub fn parse(&self, s: &str) -> Option<Fe> {
        let inner = s.trim().strip_prefix('[')?.strip_suffix(']')?;
        let vals: Vec<u64> = inner
            .split(',')
            .map(|t| t.trim().parse().ok())
            .collect::<Option<_>>()?;
        (vals.len() == self.k && vals.iter().all(|&v| v < self.p)).then(|| self.from_coeffs(&vals))
    }
}

impl fmt::Display for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}^{}", self.p, self.k)
    }
}

/// An embedding of `F_{p^a}` into `F_{p^b}`, given by the image of the
/// generator of the smaller field.
#[derive(Debug, Clone)]
pub struct Embedding {
    theta: Fe,
    small_degree: usize,
    pivot: Option<usize>,
}

impl Embedding {
    /// Embeds a field of degree 1 or 2 into `big`. For degree 2 the image of
    /// the generator is the canonically smaller root of the quadratic
    /// modulus; if both fields coincide the embedding is the identity.
    pub fn new(small: &FieldCtx, big: &FieldCtx) -> Option<Self> {
        assert_eq!(small.p(), big.p());
        match small.degree() {
            1 => Some(Self {
                theta: big.zero(),
                small_degree: 1,
                pivot: None,
            }),
            2 if big.degree() == 2 && small.modulus() == big.modulus() => {
                Some(Self::with_theta(big, big.gen()))
            }
            2 => {
                if big.degree() % 2 != 0 {
                    return None;
                }
                let m = small.modulus();
                let c1 = big.from_u64(m[1]);
                let c0 = big.from_u64(m[0]);
                // roots of x^2 + c1 x + c0 are (-c1 ± √(c1² − 4c0)) / 2
                let disc = big.sub(&big.sqr(&c1), &big.mul_u64(&c0, 4));
                let s = big.sqrt(&disc)?;
                let half = big.inv(&big.from_u64(2)).ok()?;
                let r1 = big.mul(&big.sub(&s, &c1), &half);
                let r2 = big.mul(&big.sub(&big.neg(&s), &c1), &half);
                Some(Self::with_theta(big, r1.min(r2)))
            }
            _ => None,
        }
    }

    fn with_theta(big: &FieldCtx, theta: Fe) -> Self {
        let pivot = (1..big.degree()).find(|&j| theta.0[j] != 0);
        Self {
            theta,
            small_degree: 2,
            pivot,
        }
    }

    pub fn theta(&self) -> Fe {
        self.theta
    }

    pub fn embed(&self, big: &FieldCtx, a: &Fe) -> Fe {
        match self.small_degree {
            1 => big.from_u64(a.0[0]),
            _ => big.add(&big.from_u64(a.0[0]), &big.mul_u64(&self.theta, a.0[1])),
        }
    }

    /// Inverse of [`Embedding::embed`] on its image.
    pub fn pull_back(&self, small: &FieldCtx, big: &FieldCtx, z: &Fe) -> Option<Fe> {
        let p = big.p();
        let candidate = match (self.small_degree, self.pivot) {
            (1, _) | (_, None) => small.from_u64(z.0[0]),
            (_, Some(j)) => {
                let inv = pow_mod(self.theta.0[j], p - 2, p);
                let e1 = mul_mod(z.0[j], inv, p);
                let e0 = (z.0[0] + p - mul_mod(e1, self.theta.0[0], p)) % p;
                small.from_coeffs(&[e0, e1])
            }
        };
        (self.embed(big, &candidate) == *z).then_some(candidate)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn prime_field_basics() {
        let f = FieldCtx::new(13, 1).unwrap();
        assert_eq!(f.modulus(), &[0, 1]);
        let five = f.from_u64(5);
        assert_eq!(f.mul(&five, &f.from_u64(8)), f.one());
        assert_eq!(f.inv(&five).unwrap(), f.from_u64(8));
        assert_eq!(f.sqrt(&f.from_i64(-1)), Some(f.from_u64(5)));
        assert_eq!(f.sqrt(&f.from_u64(2)), None);
        assert_eq!(f.sqrt(&f.zero()), Some(f.zero()));
        assert_eq!(f.inv(&f.zero()), Err(FieldError::DivisionByZero));
    }

    #[test]
    fn rejects_bad_parameters() {
        assert_eq!(FieldCtx::new(3, 1), Err(FieldError::BadPrime(3)));
        assert_eq!(FieldCtx::new(15, 1), Err(FieldError::BadPrime(15)));
        assert_eq!(FieldCtx::new(13, 0), Err(FieldError::BadDegree(0)));
        assert_eq!(
            FieldCtx::with_modulus(13, vec![1, 0, 1]),
            Err(FieldError::Reducible)
        );
    }

    #[test]
    fn first_irreducible_quadratic_mod_13() {
        // x^2 + c is irreducible iff -c is a non-residue; the first such c is 2
        assert_eq!(find_irreducible(13, 2), vec![2, 0, 1]);
        let squares: Vec<u64> = (1..13).map(|x| x * x % 13).collect();
        assert!(!squares.contains(&11));
        assert!(squares.contains(&12));
        assert_eq!(find_irreducible(5, 1), vec![0, 1]);
    }

    #[test]
    fn irreducible_quartic_mod_11() {
        let f = find_irreducible(11, 4);
        assert_eq!(f.len(), 5);
        assert!(is_irreducible(&f, 11));
        // brute force: no roots in F_11 and no quadratic factor
        for x in 0..11u64 {
            let v = f.iter().rev().fold(0, |acc, &c| (acc * x + c) % 11);
            assert_ne!(v, 0);
        }
    }

    #[test]
    fn miller_rabin() {
        let small: Vec<u64> = (0..100).filter(|&n| is_prime_u64(n)).collect();
        assert_eq!(small.len(), 25);
        assert!(is_prime_u64(1_000_000_007));
        assert!(!is_prime_u64(3_215_031_751));
    }

    #[test]
    fn frobenius_fixes_prime_field() {
        let f = FieldCtx::new(13, 2).unwrap();
        let fixed: Vec<Fe> = f.elements().filter(|a| f.frobenius(a, 1) == *a).collect();
        assert_eq!(fixed.len(), 13);
        assert!(fixed.iter().all(|a| a.0[1] == 0));
        for a in f.elements().take(40) {
            assert_eq!(f.frobenius(&a, 2), a);
        }
    }

    #[test]
    fn square_counts() {
        for (p, k) in [(13, 1), (13, 2), (11, 2), (7, 2)] {
            let f = FieldCtx::new(p, k).unwrap();
            let mut count = 0;
            for a in f.elements() {
                if let Some(r) = f.sqrt(&a) {
                    assert_eq!(f.sqr(&r), a);
                    count += 1;
                }
            }
            assert_eq!(count as u128, (f.order() + 1) / 2);
        }
    }

    #[test]
    fn base_field_has_roots_in_quadratic_extension() {
        let f = FieldCtx::new(11, 2).unwrap();
        for v in 0..11 {
            assert!(f.sqrt(&f.from_u64(v)).is_some());
        }
    }

    #[test]
    fn canonical_order() {
        let f = FieldCtx::new(13, 2).unwrap();
        assert!(f.from_u64(0) < f.from_u64(1));
        assert!(f.from_u64(12) < f.gen());
        let elems: Vec<Fe> = f.elements().collect();
        assert!(elems.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(f.index(&f.from_index(100)), 100);
        assert_eq!(f.display(&f.from_coeffs(&[3, 4])), "[3,4]");
        assert_eq!(f.parse("[3,4]"), Some(f.from_coeffs(&[3, 4])));
    }

    #[test]
    fn embedding_quadratic_into_octic() {
        let small = FieldCtx::new(13, 2).unwrap();
        let big = FieldCtx::new(13, 8).unwrap();
        let e = Embedding::new(&small, &big).unwrap();
        for a in small.elements().step_by(7) {
            for b in small.elements().step_by(11) {
                let ea = e.embed(&big, &a);
                let eb = e.embed(&big, &b);
                assert_eq!(e.embed(&big, &small.mul(&a, &b)), big.mul(&ea, &eb));
                assert_eq!(e.embed(&big, &small.add(&a, &b)), big.add(&ea, &eb));
            }
            assert_eq!(e.pull_back(&small, &big, &e.embed(&big, &a)), Some(a));
        }
        assert_eq!(e.pull_back(&small, &big, &big.gen()), None);
    }

    fn arb_elem(p: u64, k: usize) -> impl Strategy<Value = Vec<u64>> {
        prop::collection::vec(0..p, k)
    }

    fn field_axioms(
        p: u64,
        k: usize,
        a: &[u64],
        b: &[u64],
        c: &[u64],
    ) -> Result<(), TestCaseError> {
        let f = FieldCtx::new(p, k).unwrap();
        let (a, b, c) = (f.from_coeffs(a), f.from_coeffs(b), f.from_coeffs(c));
        prop_assert_eq!(f.mul(&f.mul(&a, &b), &c), f.mul(&a, &f.mul(&b, &c)));
        prop_assert_eq!(
            f.mul(&a, &f.add(&b, &c)),
            f.add(&f.mul(&a, &b), &f.mul(&a, &c))
        );
        prop_assert_eq!(f.mul(&a, &b), f.mul(&b, &a));
        prop_assert_eq!(f.add(&a, &f.neg(&a)), f.zero());
        if !a.is_zero() {
            prop_assert_eq!(f.mul(&a, &f.inv(&a).unwrap()), f.one());
        }
        let fa = f.frobenius(&a, 1);
        prop_assert_eq!(
            f.mul(&fa, &f.frobenius(&b, 1)),
            f.frobenius(&f.mul(&a, &b), 1)
        );
        prop_assert_eq!(f.frobenius(&a, k), a);
        Ok(())
    }

    proptest! {
        #[test]
        fn axioms_13_1(a in arb_elem(13, 1), b in arb_elem(13, 1), c in arb_elem(13, 1)) {
            field_axioms(13, 1, &a, &b, &c)?;
        }

        #[test]
        fn axioms_13_2(a in arb_elem(13, 2), b in arb_elem(13, 2), c in arb_elem(13, 2)) {
            field_axioms(13, 2, &a, &b, &c)?;
        }

        #[test]
        fn axioms_11_2(a in arb_elem(11, 2), b in arb_elem(11, 2), c in arb_elem(11, 2)) {
            field_axioms(11, 2, &a, &b, &c)?;
        }

        #[test]
        fn axioms_13_8(a in arb_elem(13, 8), b in arb_elem(13, 8), c in arb_elem(13, 8)) {
            field_axioms(13, 8, &a, &b, &c)?;
        }

        #[test]
        fn sqrt_roundtrip_13_8(a in arb_elem(13, 8)) {
            let f = FieldCtx::new(13, 8).unwrap();
            let a = f.from_coeffs(&a);
            let sq = f.sqr(&a);
            let r = f.sqrt(&sq).unwrap();
            prop_assert!(r == a || r == f.neg(&a));
        }

        #[test]
        fn order_is_total(a in arb_elem(13, 2), b in arb_elem(13, 2), c in arb_elem(13, 2)) {
            let f = FieldCtx::new(13, 2).unwrap();
            let (a, b, c) = (f.from_coeffs(&a), f.from_coeffs(&b), f.from_coeffs(&c));
            prop_assert_eq!(a.cmp(&b), b.cmp(&a).reverse());
            if a <= b && b <= c {
                prop_assert!(a <= c);
            }
            prop_assert_eq!(a.cmp(&b), f.index(&a).cmp(&f.index(&b)));
        }
    }
}
