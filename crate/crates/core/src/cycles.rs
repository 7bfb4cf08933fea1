//! The permutation carried by an arbitrary self-map of a finite set.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::det::{poly_det, PolyMatrix};
use crate::poly::IntPoly;
use crate::ratfunc::FactoredRationalFunction;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CycleError {
    #[error("self-map has an empty domain")]
    EmptyDomain,
    #[error("value {value} at position {index} is outside the domain of size {len}")]
    OutOfRange {
        index: usize,
        value: usize,
        len: usize,
    },
}

/// Restriction of `f` to the largest subset `Z` it permutes, with the
/// histogram of cycle lengths of `f|_Z`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleCounts {
    /// `k -> C_k`, only nonzero counts.
    pub counts: BTreeMap<usize, usize>,
    /// Sorted elements of `Z`.
    pub domain: Vec<usize>,
}

impl CycleCounts {
    pub fn count(&self, k: usize) -> usize {
        self.counts.get(&k).copied().unwrap_or(0)
    }

    /// `Σ k·C_k`, which equals `#Z`.
    pub fn weighted_total(&self) -> usize {
        self.counts.iter().map(|(k, c)| k * c).sum()
    }
}

/// Iteratively removes elements with no preimage; what remains is the
/// maximal subset on which `f` is a bijection.
pub fn associated_permutation(f: &[usize]) -> Result<CycleCounts, CycleError> {
    let n = f.len();
    if n == 0 {
        return Err(CycleError::EmptyDomain);
    }
    if let Some((index, &value)) = f.iter().enumerate().find(|(_, &v)| v >= n) {
        return Err(CycleError::OutOfRange {
            index,
            value,
            len: n,
        });
    }
    let mut indeg = vec![0usize; n];
    for &v in f {
        indeg[v] += 1;
    }
    let mut alive = vec![true; n];
    let mut queue: Vec<usize> = (0..n).filter(|&x| indeg[x] == 0).collect();
    while let Some(x) = queue.pop() {
        alive[x] = false;
        let y = f[x];
        indeg[y] -= 1;
        if indeg[y] == 0 && alive[y] {
            queue.push(y);
        }
    }
    let domain: Vec<usize> = (0..n).filter(|&x| alive[x]).collect();
    let mut seen = vec![false; n];
    let mut counts = BTreeMap::new();
    for &start in &domain {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            x = f[x];
            len += 1;
        }
        debug_assert_eq!(x, start, "restriction is not a permutation");
        *counts.entry(len).or_insert(0) += 1;
    }
    let result = CycleCounts { counts, domain };
    assert_eq!(result.weighted_total(), result.domain.len());
    Ok(result)
}

/// `det(I + s·F)` in closed form, `Π_k (1 − (−s)^k)^{C_k(F)}`, where `F` is
/// the linear operator sending basis vector `x` to `f(x)`.
pub fn det_one_plus_sf(f: &[usize]) -> Result<FactoredRationalFunction, CycleError> {
    let cc = associated_permutation(f)?;
    let factors = cc
        .counts
        .iter()
        .map(|(&k, &c)| {
            let sign = if k % 2 == 0 { -1 } else { 1 };
            (IntPoly::one_plus_monomial(sign, k), c as i64)
        })
        .collect();
    Ok(FactoredRationalFunction::new(factors).expect("nonzero factors"))
}

/// `det(I + s·M_f)` by direct expansion, where column `x` of `M_f` is the
/// basis vector `f(x)`.
pub fn det_one_plus_sf_direct(f: &[usize]) -> IntPoly {
    let n = f.len();
    let mut m = PolyMatrix::identity(n);
    let s = IntPoly::from_i64(&[0, 1]);
    for (x, &fx) in f.iter().enumerate() {
        m.add_at(fx, x, &s);
    }
    poly_det(&m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn identity_map() {
        let cc = associated_permutation(&[0, 1, 2, 3, 4]).unwrap();
        assert_eq!(cc.count(1), 5);
        assert_eq!(cc.domain.len(), 5);
        let d = det_one_plus_sf(&[0, 1, 2]).unwrap();
        assert_eq!(
            d,
            FactoredRationalFunction::from_poly(IntPoly::from_i64(&[1, 1]), 3)
        );
    }

    #[test]
    fn collapsing_map() {
        let cc = associated_permutation(&[0, 0]).unwrap();
        assert_eq!(cc.domain, vec![0]);
        assert_eq!(cc.count(1), 1);
        let d = det_one_plus_sf(&[0, 0]).unwrap();
        assert_eq!(
            d,
            FactoredRationalFunction::from_poly(IntPoly::from_i64(&[1, 1]), 1)
        );
    }

    #[test]
    fn three_cycle() {
        // an odd cycle gives 1 + s^3, not 1 - s^3
        let d = det_one_plus_sf(&[1, 2, 0]).unwrap();
        assert_eq!(d.expanded().0, IntPoly::from_i64(&[1, 0, 0, 1]));
        assert_eq!(
            det_one_plus_sf_direct(&[1, 2, 0]),
            IntPoly::from_i64(&[1, 0, 0, 1])
        );
    }

    #[test]
    fn tail_into_cycle() {
        // 3 -> 0 -> 1 -> 2 -> 0, 4 -> 3
        let cc = associated_permutation(&[1, 2, 0, 0, 3]).unwrap();
        assert_eq!(cc.domain, vec![0, 1, 2]);
        assert_eq!(cc.count(3), 1);
    }

    #[test]
    fn errors() {
        assert_eq!(associated_permutation(&[]), Err(CycleError::EmptyDomain));
        assert!(matches!(
            associated_permutation(&[0, 5]),
            Err(CycleError::OutOfRange { index: 1, .. })
        ));
    }

    proptest! {
        #[test]
        fn closed_form_matches_direct(f in (1usize..=8).prop_flat_map(|n| prop::collection::vec(0..n, n))) {
            let closed = det_one_plus_sf(&f).unwrap();
            let (num, den) = closed.expanded();
            prop_assert!(den.is_one());
            prop_assert_eq!(num, det_one_plus_sf_direct(&f));
        }

        #[test]
        fn restriction_is_bijective(f in (1usize..=12).prop_flat_map(|n| prop::collection::vec(0..n, n))) {
            let cc = associated_permutation(&f).unwrap();
            prop_assert!(!cc.domain.is_empty());
            let mut image: Vec<usize> = cc.domain.iter().map(|&x| f[x]).collect();
            image.sort_unstable();
            prop_assert_eq!(image, cc.domain.clone());
        }
    }
}
