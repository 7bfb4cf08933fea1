//! 2×2 matrices over `Z/NZ` and subgroups `H ⊆ GL₂(Z/NZ)`.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LevelError {
    #[error("level must be positive")]
    ZeroLevel,
    #[error("generator {0} is not invertible mod {1}")]
    NotInvertible(Mat2, u32),
    #[error(
        "cannot parse level spec `{0}`: expected full:N, borel0:N, borel1:N or gens:N:a,b,c,d;..."
    )]
    Parse(String),
}

/// Row-major `[[a, b], [c, d]]` with entries in `0..N`. Column vectors:
/// a level structure `φ₀ ∘ M` sends `e₁` to `a·P + c·Q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mat2(pub [u32; 4]);

impl fmt::Display for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.0;
        write!(f, "[{a} {b}; {c} {d}]")
    }
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl Mat2 {
    pub fn new(n: u32, entries: [i64; 4]) -> Self {
        Mat2(entries.map(|e| e.rem_euclid(n as i64) as u32))
    }

    pub fn identity(n: u32) -> Self {
        Self::scalar(n, 1)
    }

    pub fn scalar(n: u32, d: i64) -> Self {
        Self::new(n, [d, 0, 0, d])
    }

    pub fn mul(&self, other: &Mat2, n: u32) -> Mat2 {
        let [a, b, c, d] = self.0.map(u64::from);
        let [e, f, g, h] = other.0.map(u64::from);
        let n64 = u64::from(n);
        Mat2([a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h].map(|v| (v % n64) as u32))
    }

    pub fn det(&self, n: u32) -> u32 {
        let [a, b, c, d] = self.0.map(u64::from);
        let n64 = u64::from(n);
        ((a * d % n64 + n64 - b * c % n64) % n64) as u32
    }

    pub fn is_invertible(&self, n: u32) -> bool {
        gcd(self.det(n), n) == 1
    }

    pub fn inverse(&self, n: u32) -> Option<Mat2> {
        let det = self.det(n) as i64;
        let inv = (1..=n as i64).find(|&x| (det * x).rem_euclid(n as i64) == 1 % n as i64)?;
        let [a, b, c, d] = self.0.map(i64::from);
        Some(Mat2::new(n, [d * inv, -b * inv, -c * inv, a * inv]))
    }

    /// Image of the column vector `(x, y)`.
    pub fn apply(&self, v: (u32, u32), n: u32) -> (u32, u32) {
        let [a, b, c, d] = self.0.map(u64::from);
        let (x, y) = (u64::from(v.0), u64::from(v.1));
        let n64 = u64::from(n);
        (
            ((a * x + b * y) % n64) as u32,
            ((c * x + d * y) % n64) as u32,
        )
    }
}

/// All of `GL₂(Z/NZ)` in lexicographic order.
pub fn gl2(n: u32) -> Vec<Mat2> {
    let mut out = Vec::new();
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for d in 0..n {
                    let m = Mat2([a, b, c, d]);
                    if m.is_invertible(n) {
                        out.push(m);
                    }
                }
            }
        }
    }
    out
}

/// How a subgroup was specified.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LevelSpec {
    Full(u32),
    Borel0(u32),
    Borel1(u32),
    Generators(u32, Vec<Mat2>),
}

impl LevelSpec {
    pub fn level(&self) -> u32 {
        match self {
            LevelSpec::Full(n) | LevelSpec::Borel0(n) | LevelSpec::Borel1(n) => *n,
            LevelSpec::Generators(n, _) => *n,
        }
    }
}

impl fmt::Display for LevelSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LevelSpec::Full(n) => write!(f, "full:{n}"),
            LevelSpec::Borel0(n) => write!(f, "borel0:{n}"),
            LevelSpec::Borel1(n) => write!(f, "borel1:{n}"),
            LevelSpec::Generators(n, gens) => {
                let parts: Vec<String> = gens
                    .iter()
                    .map(|g| {
                        let [a, b, c, d] = g.0;
                        format!("{a},{b},{c},{d}")
                    })
                    .collect();
                write!(f, "gens:{n}:{}", parts.join(";"))
            }
        }
    }
}

impl FromStr for LevelSpec {
    type Err = LevelError;

    /// `full:N`, `borel0:N`, `borel1:N`, `gens:N:a,b,c,d;a,b,c,d`, or a bare
    /// `1` for trivial level.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || LevelError::Parse(s.to_string());
        if s == "1" {
            return Ok(LevelSpec::Full(1));
        }
        let mut parts = s.splitn(3, ':');
        let kind = parts.next().ok_or_else(err)?;
        let n: u32 = parts.next().ok_or_else(err)?.parse().map_err(|_| err())?;
        if n == 0 {
            return Err(LevelError::ZeroLevel);
        }
        match (kind, parts.next()) {
            ("full", None) => Ok(LevelSpec::Full(n)),
            ("borel0", None) => Ok(LevelSpec::Borel0(n)),
            ("borel1", None) => Ok(LevelSpec::Borel1(n)),
            ("gens", Some(rest)) => {
                let gens = rest
                    .split(';')
                    .filter(|g| !g.trim().is_empty())
                    .map(|g| {
                        let v: Vec<i64> = g
                            .split(',')
                            .map(|t| t.trim().parse().map_err(|_| err()))
                            .collect::<Result<_, _>>()?;
                        let arr: [i64; 4] = v.try_into().map_err(|_| err())?;
                        Ok(Mat2::new(n, arr))
                    })
                    .collect::<Result<Vec<_>, LevelError>>()?;
                Ok(LevelSpec::Generators(n, gens))
            }
            _ => Err(err()),
        }
    }
}

/// An explicit subgroup of `GL₂(Z/NZ)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelSubgroup {
    n: u32,
    elements: BTreeSet<Mat2>,
    spec: LevelSpec,
}

impl LevelSubgroup {
    pub fn from_spec(spec: &LevelSpec) -> Result<Self, LevelError> {
        let n = spec.level();
        if n == 0 {
            return Err(LevelError::ZeroLevel);
        }
        let elements: BTreeSet<Mat2> = match spec {
            LevelSpec::Full(_) => gl2(n).into_iter().collect(),
            LevelSpec::Borel0(_) => gl2(n).into_iter().filter(|m| m.0[2] == 0).collect(),
            LevelSpec::Borel1(_) => gl2(n)
                .into_iter()
                .filter(|m| m.0[2] == 0 && m.0[0] == 1 % n)
                .collect(),
            LevelSpec::Generators(_, gens) => {
                if let Some(bad) = gens.iter().find(|g| !g.is_invertible(n)) {
                    return Err(LevelError::NotInvertible(*bad, n));
                }
                let mut seen = BTreeSet::from([Mat2::identity(n)]);
                let mut queue = VecDeque::from([Mat2::identity(n)]);
                while let Some(m) = queue.pop_front() {
                    for g in gens {
                        let next = m.mul(g, n);
                        if seen.insert(next) {
                            queue.push_back(next);
                        }
                    }
                }
                seen
            }
        };
        Ok(Self {
            n,
            elements,
            spec: spec.clone(),
        })
    }

    pub fn full(n: u32) -> Self {
        Self::from_spec(&LevelSpec::Full(n)).expect("positive level")
    }

    pub fn borel0(n: u32) -> Self {
        Self::from_spec(&LevelSpec::Borel0(n)).expect("positive level")
    }

    pub fn borel1(n: u32) -> Self {
        Self::from_spec(&LevelSpec::Borel1(n)).expect("positive level")
    }

    pub fn level(&self) -> u32 {
        self.n
    }

    pub fn spec(&self) -> &LevelSpec {
        &self.spec
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> impl Iterator<Item = &Mat2> {
        self.elements.iter()
    }

    pub fn contains(&self, m: &Mat2) -> bool {
        self.elements.contains(m)
    }

    pub fn contains_scalar(&self, d: i64) -> bool {
        self.contains(&Mat2::scalar(self.n, d))
    }

    pub fn contains_minus_identity(&self) -> bool {
        self.contains_scalar(-1)
    }

    /// Index of `H` in `GL₂(Z/NZ)`.
    pub fn index(&self) -> usize {
        gl2(self.n).len() / self.len()
    }

    /// `±H` as an explicit set.
    pub fn plus_minus(&self) -> BTreeSet<Mat2> {
        let minus = Mat2::scalar(self.n, -1);
        self.elements
            .iter()
            .flat_map(|m| [*m, m.mul(&minus, self.n)])
            .collect()
    }

    /// `M·H` is the same coset as `M'·H`.
    pub fn same_coset(&self, m: &Mat2, m2: &Mat2) -> bool {
        m.inverse(self.n)
            .is_some_and(|inv| self.contains(&inv.mul(m2, self.n)))
    }

    /// Lexicographically least element of `M·H`.
    pub fn coset_key(&self, m: &Mat2) -> Mat2 {
        self.elements
            .iter()
            .map(|h| m.mul(h, self.n))
            .min()
            .expect("subgroup contains the identity")
    }
}

/// `[⟨ℓI⟩ : ⟨ℓI⟩ ∩ ±H]`.
pub fn m_index(ell: u64, h: &LevelSubgroup) -> usize {
    let n = h.level();
    let pm = h.plus_minus();
    let l = Mat2::scalar(n, (ell % n as u64) as i64);
    let mut cyclic = vec![Mat2::identity(n)];
    loop {
        let next = cyclic.last().unwrap().mul(&l, n);
        if next == Mat2::identity(n) {
            break;
        }
        cyclic.push(next);
    }
    let inter = cyclic.iter().filter(|m| pm.contains(m)).count();
    cyclic.len() / inter
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_sizes() {
        assert_eq!(gl2(5).len(), 480);
        assert_eq!(gl2(3).len(), 48);
        assert_eq!(gl2(2).len(), 6);
        assert_eq!(gl2(1).len(), 1);
        assert_eq!(LevelSubgroup::borel0(5).len(), 80);
        assert_eq!(LevelSubgroup::borel0(5).index(), 6);
        assert_eq!(LevelSubgroup::borel1(5).len(), 20);
        assert_eq!(LevelSubgroup::full(1).len(), 1);
        assert_eq!(LevelSubgroup::borel1(1).len(), 1);
        // [GL₂(Z/5) : ±B₁(5)] = 12
        assert_eq!(480 / LevelSubgroup::borel1(5).plus_minus().len(), 12);
    }

    #[test]
    fn subgroups_are_closed() {
        for h in [
            LevelSubgroup::borel0(6),
            LevelSubgroup::borel1(4),
            LevelSubgroup::full(3),
        ] {
            let n = h.level();
            for a in h.elements() {
                assert!(h.contains(&a.inverse(n).unwrap()));
                for b in h.elements() {
                    assert!(h.contains(&a.mul(b, n)));
                }
            }
        }
    }

    #[test]
    fn generated_subgroups() {
        let spec: LevelSpec = "gens:5:1,1,0,1;2,0,0,1".parse().unwrap();
        let h = LevelSubgroup::from_spec(&spec).unwrap();
        // ⟨[1 1; 0 1], [2 0; 0 1]⟩ is the group of matrices [a b; 0 1]
        assert_eq!(h.len(), 20);
        assert!(h.elements().all(|m| m.0[2] == 0 && m.0[3] == 1));
        assert_eq!(spec.to_string().parse::<LevelSpec>().unwrap(), spec);
        let bad: LevelSpec = "gens:4:2,0,0,1".parse().unwrap();
        assert!(matches!(
            LevelSubgroup::from_spec(&bad),
            Err(LevelError::NotInvertible(..))
        ));
        assert!("borel2:5".parse::<LevelSpec>().is_err());
        assert_eq!("1".parse::<LevelSpec>().unwrap(), LevelSpec::Full(1));
        assert_eq!(
            "borel1:5".parse::<LevelSpec>().unwrap(),
            LevelSpec::Borel1(5)
        );
    }

    #[test]
    fn matrix_arithmetic() {
        let n = 7;
        for m in gl2(n).iter().step_by(13) {
            let inv = m.inverse(n).unwrap();
            assert_eq!(m.mul(&inv, n), Mat2::identity(n));
            assert_eq!(m.apply((1, 0), n), (m.0[0], m.0[2]));
        }
        assert_eq!(Mat2::new(6, [2, 0, 0, 1]).inverse(6), None);
        assert_eq!(Mat2::new(5, [-1, 7, 0, 3]).to_string(), "[4 2; 0 3]");
    }

    #[test]
    fn cosets() {
        let h = LevelSubgroup::borel0(5);
        let keys: BTreeSet<Mat2> = gl2(5).iter().map(|m| h.coset_key(m)).collect();
        assert_eq!(keys.len(), 6);
        for m in gl2(5).iter().step_by(37) {
            assert!(h.same_coset(m, &h.coset_key(m)));
        }
    }

    #[test]
    fn m_index_values() {
        assert_eq!(m_index(3, &LevelSubgroup::borel1(5)), 2);
        assert_eq!(m_index(3, &LevelSubgroup::full(1)), 1);
        assert_eq!(m_index(3, &LevelSubgroup::borel0(5)), 1);
        assert_eq!(m_index(2, &LevelSubgroup::borel1(7)), 3);
    }
}
