//! Exact determinants of integer and polynomial matrices.
//!
//! Polynomial determinants are computed by evaluating at small integers,
//! taking fraction-free Bareiss determinants, and interpolating.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::poly::IntPoly;

/// Square matrix of integer polynomials in `u`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    n: usize,
    entries: Vec<IntPoly>,
}

impl PolyMatrix {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            entries: vec![IntPoly::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.set(i, i, IntPoly::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<IntPoly>>) -> Self {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "matrix must be square");
        Self {
            n,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &IntPoly {
        &self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: IntPoly) {
        self.entries[i * self.n + j] = p;
    }

    pub fn add_at(&mut self, i: usize, j: usize, p: &IntPoly) {
        let k = i * self.n + j;
        self.entries[k] = &self.entries[k] + p;
    }

    pub fn max_degree(&self) -> usize {
        self.entries
            .iter()
            .filter_map(IntPoly::degree)
            .max()
            .unwrap_or(0)
    }

    pub fn eval(&self, x: &BigInt) -> Vec<Vec<BigInt>> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.get(i, j).eval(x)).collect())
            .collect()
    }
}

/// Determinant of an integer matrix by fraction-free Bareiss elimination.
pub fn bareiss_det(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign = !sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if sign {
        -d
    } else {
        d
    }
}

/// Interpolation nodes `0, 1, -1, 2, -2, ...`.
fn nodes(count: usize) -> Vec<i64> {
    (0..count as i64)
        .map(|i| if i % 2 == 1 { (i + 1) / 2 } else { -(i / 2) })
        .collect()
}

/// Exact determinant of a polynomial matrix.
pub fn poly_det(m: &PolyMatrix) -> IntPoly {
    let n = m.dim();
    if n == 0 {
        return IntPoly::one();
    }
    let bound = n * m.max_degree();
    let xs = nodes(bound + 1);
    let ys: Vec<BigInt> = xs
        .par_iter()
        .map(|&x| bareiss_det(m.eval(&BigInt::from(x))))
        .collect();
    interpolate(&xs, &ys)
}

/// Lagrange interpolation through `(xs[i], ys[i])`; the result must have
/// integer coefficients.
fn interpolate(xs: &[i64], ys: &[BigInt]) -> IntPoly {
    let k = xs.len();
    let mut acc = vec![BigRational::zero(); k];
    for i in 0..k {
        if ys[i].is_zero() {
            continue;
        }
        // basis polynomial Π_{j≠i} (u - x_j), built incrementally
        let mut basis = vec![BigInt::one()];
        let mut denom = BigInt::one();
        for (j, &xj) in xs.iter().enumerate() {
            if j == i {
                continue;
            }
            let mut next = vec![BigInt::zero(); basis.len() + 1];
            for (d, c) in basis.iter().enumerate() {
                next[d + 1] += c;
                next[d] -= c * BigInt::from(xj);
            }
            basis = next;
            denom *= BigInt::from(xs[i] - xj);
        }
        let scale = BigRational::new(ys[i].clone(), denom);
        for (d, c) in basis.into_iter().enumerate() {
            acc[d] += &scale * BigRational::from_integer(c);
        }
    }
    let coeffs = acc
        .into_iter()
        .map(|c| {
            assert!(c.is_integer(), "interpolated determinant is not integral");
            c.to_integer()
        })
        .collect();
    IntPoly::new(coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bi(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect()
    }

    #[test]
    fn bareiss_small() {
        assert_eq!(bareiss_det(bi(&[&[2, 3], &[1, 4]])), BigInt::from(5));
        assert_eq!(bareiss_det(bi(&[&[0, 1], &[1, 0]])), BigInt::from(-1));
        assert_eq!(
            bareiss_det(bi(&[&[0, 0, 1], &[0, 1, 0], &[1, 0, 0]])),
            BigInt::from(-1)
        );
        assert_eq!(bareiss_det(bi(&[&[1, 2], &[2, 4]])), BigInt::zero());
        assert_eq!(bareiss_det(vec![]), BigInt::one());
    }

    /// Cofactor expansion, for cross-checking.
    fn laplace(m: &[Vec<BigInt>]) -> BigInt {
        let n = m.len();
        if n == 0 {
            return BigInt::one();
        }
        let mut total = BigInt::zero();
        for c in 0..n {
            let minor: Vec<Vec<BigInt>> = m[1..]
                .iter()
                .map(|r| {
                    r.iter()
                        .enumerate()
                        .filter(|(j, _)| *j != c)
                        .map(|(_, v)| v.clone())
                        .collect()
                })
                .collect();
            let term = &m[0][c] * laplace(&minor);
            if c % 2 == 0 {
                total += term;
            } else {
                total -= term;
            }
        }
        total
    }

    #[test]
    fn bareiss_matches_laplace() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let n = rng.gen_range(1..=5);
            let m: Vec<Vec<BigInt>> = (0..n)
                .map(|_| {
                    (0..n)
                        .map(|_| BigInt::from(rng.gen_range(-3..=3)))
                        .collect()
                })
                .collect();
            assert_eq!(bareiss_det(m.clone()), laplace(&m));
        }
    }

    #[test]
    fn g13_2_matrix() {
        let m = PolyMatrix::from_rows(vec![vec![IntPoly::from_i64(&[1, -3, 2])]]);
        assert_eq!(poly_det(&m), IntPoly::from_i64(&[1, -3, 2]));
        assert_eq!(poly_det(&PolyMatrix::identity(4)), IntPoly::one());
    }

    #[test]
    fn g11_3_matrix() {
        // I - A u + 3 u^2 with A = [[1,3],[2,2]]
        let p = IntPoly::from_i64;
        let m = PolyMatrix::from_rows(vec![
            vec![p(&[1, -1, 3]), p(&[0, -3])],
            vec![p(&[0, -2]), p(&[1, -2, 3])],
        ]);
        let expect = &(&p(&[1, -1]) * &p(&[1, -3])) * &p(&[1, 1, 3]);
        assert_eq!(poly_det(&m), expect);
    }
}
