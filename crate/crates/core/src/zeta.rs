//! Ihara zeta functions of abstract isogeny graphs.
//!
//! With `A` the adjacency matrix, `D` the out-degree matrix, `Q = D − I` and
//! `L` the vertex map viewed as a 0/1 matrix, whenever `D` and `L` commute
//!
//! ```text
//! ζ(u) = Π_k (1 − u^{2k})^{C_k(L)} · Π_k (1 − (−u)^k)^{−C_k(J)} / det(I − Au + u²QL)
//! ```
//!
//! where `C_k(F)` counts the `k`-cycles of the permutation carried by `F`.

use num_bigint::BigInt;
use thiserror::Error;

use crate::cycles::{associated_permutation, CycleCounts};
use crate::det::{poly_det, PolyMatrix};
use crate::graph::AbstractIsogenyGraph;
use crate::poly::IntPoly;
use crate::ratfunc::{FactoredRationalFunction, RatFuncError};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ZetaError {
    #[error(
        "the degree operator does not commute with L (vertex {vertex}: deg {deg} but deg(L x) = {deg_l}); \
         the determinant formula needs D·L = L·D"
    )]
    DegreeNotLInvariant {
        vertex: usize,
        deg: usize,
        deg_l: usize,
    },
    #[error("involution form needs {0}")]
    InvolutionHypothesis(String),
    #[error(transparent)]
    Series(#[from] RatFuncError),
}

/// `A[x][x'] = #{y : s(y) = x, t(y) = x'}`.
pub fn adjacency_matrix(g: &AbstractIsogenyGraph) -> Vec<Vec<i64>> {
    let n = g.num_vertices();
    let mut a = vec![vec![0i64; n]; n];
    for e in g.edges() {
        a[e.source][e.target] += 1;
    }
    a
}

pub fn degree_matrix(g: &AbstractIsogenyGraph) -> Vec<Vec<i64>> {
    let deg = g.out_degrees();
    let n = g.num_vertices();
    let mut d = vec![vec![0i64; n]; n];
    for (x, &k) in deg.iter().enumerate() {
        d[x][x] = k as i64;
    }
    d
}

/// `Q = D − I`.
pub fn q_matrix(g: &AbstractIsogenyGraph) -> Vec<Vec<i64>> {
    let mut q = degree_matrix(g);
    for (x, row) in q.iter_mut().enumerate() {
        row[x] -= 1;
    }
    q
}

fn check_commutes(g: &AbstractIsogenyGraph) -> Result<(), ZetaError> {
    let deg = g.out_degrees();
    for x in 0..g.num_vertices() {
        let lx = g.level(x);
        if deg[x] != deg[lx] {
            return Err(ZetaError::DegreeNotLInvariant {
                vertex: x,
                deg: deg[x],
                deg_l: deg[lx],
            });
        }
    }
    Ok(())
}

/// `I − Au + u²·Q·L`, where row `x` of `QL` has `d(x) − 1` in column `L x`.
pub fn ihara_matrix(g: &AbstractIsogenyGraph) -> PolyMatrix {
    ihara_matrix_with(g, |x| g.level(x))
}

/// `I − Au + u²·Q`: the same matrix with `L` replaced by the identity.
pub fn ihara_matrix_no_level(g: &AbstractIsogenyGraph) -> PolyMatrix {
    ihara_matrix_with(g, |x| x)
}

fn ihara_matrix_with(g: &AbstractIsogenyGraph, level: impl Fn(usize) -> usize) -> PolyMatrix {
    let n = g.num_vertices();
    let a = adjacency_matrix(g);
    let deg = g.out_degrees();
    let mut m = PolyMatrix::identity(n);
    for (x, row) in a.iter().enumerate() {
        for (x2, &c) in row.iter().enumerate() {
            if c != 0 {
                m.add_at(x, x2, &IntPoly::from_i64(&[0, -c]));
            }
        }
        let q = deg[x] as i64 - 1;
        if q != 0 {
            m.add_at(x, level(x), &IntPoly::from_i64(&[0, 0, q]));
        }
    }
    m
}

/// `det(I − Au + u²QL)`.
pub fn ihara_determinant(g: &AbstractIsogenyGraph) -> IntPoly {
    poly_det(&ihara_matrix(g))
}

/// Cycle data of `J` (on edges) and `L` (on vertices).
pub fn cycle_data(g: &AbstractIsogenyGraph) -> (CycleCounts, CycleCounts) {
    let cj = if g.num_edges() == 0 {
        CycleCounts {
            counts: Default::default(),
            domain: Vec::new(),
        }
    } else {
        associated_permutation(g.dual_map()).expect("dual map is in range")
    };
    let cl = if g.num_vertices() == 0 {
        CycleCounts {
            counts: Default::default(),
            domain: Vec::new(),
        }
    } else {
        associated_permutation(g.level_map()).expect("level map is in range")
    };
    (cj, cl)
}

/// Numerator `R(u) = Π (1 − u^{2k})^{C_k(L)} Π (1 − (−u)^k)^{−C_k(J)}`.
pub fn zeta_numerator(g: &AbstractIsogenyGraph) -> FactoredRationalFunction {
    let (cj, cl) = cycle_data(g);
    let mut factors = Vec::new();
    for (&k, &c) in &cl.counts {
        factors.push((IntPoly::one_plus_monomial(-1, 2 * k), c as i64));
    }
    for (&k, &c) in &cj.counts {
        let sign = if k % 2 == 0 { -1 } else { 1 };
        factors.push((IntPoly::one_plus_monomial(sign, k), -(c as i64)));
    }
    FactoredRationalFunction::new(factors).expect("nonzero factors")
}

pub fn ihara_zeta(g: &AbstractIsogenyGraph) -> Result<FactoredRationalFunction, ZetaError> {
    check_commutes(g)?;
    let det = ihara_determinant(g);
    Ok(zeta_numerator(g).mul(&FactoredRationalFunction::from_poly(det, -1)))
}

/// `(1 − u)^{χ(Γ^{+1})} (1 + u)^{χ(Γ^{-1})} / det(I − uA + u²Q)`, valid when
/// the permutation carried by `J` is an involution and `s(J²y) = s(y)`.
pub fn zeta_involution_form(
    g: &AbstractIsogenyGraph,
) -> Result<FactoredRationalFunction, ZetaError> {
    let (cj, _) = cycle_data(g);
    if cj.counts.keys().any(|&k| k > 2) {
        return Err(ZetaError::InvolutionHypothesis(
            "the permutation carried by J to be an involution".into(),
        ));
    }
    for y in 0..g.num_edges() {
        if g.source(g.dual(g.dual(y))) != g.source(y) {
            return Err(ZetaError::InvolutionHypothesis(format!(
                "s(J²y) = s(y), which fails at edge {y}"
            )));
        }
    }
    match g.regular_degree() {
        Some(d) if d >= 1 => {}
        _ => {
            return Err(ZetaError::InvolutionHypothesis(
                "a regular graph of positive degree".into(),
            ))
        }
    }
    let (plus, minus) = g.orientable_graphs();
    let det = poly_det(&ihara_matrix_no_level(g));
    Ok(FactoredRationalFunction::new(vec![
        (IntPoly::from_i64(&[1, -1]), plus.euler_characteristic()),
        (IntPoly::from_i64(&[1, 1]), minus.euler_characteristic()),
        (det, -1),
    ])
    .expect("nonzero factors"))
}

/// `N_1..N_R` from the logarithmic derivative of `z`.
pub fn series_counts(z: &FactoredRationalFunction, r: usize) -> Result<Vec<BigInt>, ZetaError> {
    Ok(z.log_derivative_series(r)?)
}

/// `Tr(W_1^r)` for `r = 1..=R`, where `W_1` sends edge `y` to the sum of the
/// edges `y'` with `s(y') = t(y)` and `y' ≠ J y`.
pub fn edge_zeta_series(g: &AbstractIsogenyGraph, r: usize) -> Vec<BigInt> {
    let m = g.num_edges();
    let out = g.out_edges();
    let succ: Vec<Vec<usize>> = (0..m)
        .map(|y| {
            out[g.target(y)]
                .iter()
                .copied()
                .filter(|&y2| y2 != g.dual(y))
                .collect()
        })
        .collect();
    let mut traces = vec![0u128; r];
    let mut cur = vec![0u128; m];
    let mut next = vec![0u128; m];
    for start in 0..m {
        cur.iter_mut().for_each(|c| *c = 0);
        cur[start] = 1;
        for tr in traces.iter_mut() {
            next.iter_mut().for_each(|c| *c = 0);
            for (y, &c) in cur.iter().enumerate() {
                if c == 0 {
                    continue;
                }
                for &y2 in &succ[y] {
                    next[y2] = next[y2].checked_add(c).expect("walk count overflow");
                }
            }
            std::mem::swap(&mut cur, &mut next);
            *tr += cur[start];
        }
    }
    traces.into_iter().map(BigInt::from).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Edge;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64(c)
    }

    fn g13_2() -> AbstractIsogenyGraph {
        AbstractIsogenyGraph::new(1, vec![Edge::new(0, 0); 3], vec![1, 0, 2], vec![0]).unwrap()
    }

    #[test]
    fn matrices() {
        let g = g13_2();
        assert_eq!(adjacency_matrix(&g), vec![vec![3]]);
        assert_eq!(q_matrix(&g), vec![vec![2]]);
        let empty = AbstractIsogenyGraph::new(2, vec![], vec![], vec![0, 1]).unwrap();
        assert_eq!(adjacency_matrix(&empty), vec![vec![0, 0], vec![0, 0]]);
        assert_eq!(q_matrix(&empty), vec![vec![-1, 0], vec![0, -1]]);
    }

    #[test]
    fn g13_2_zeta() {
        let g = g13_2();
        let z = ihara_zeta(&g).unwrap();
        let expect = FactoredRationalFunction::new(vec![
            (p(&[1, 1]), -1),
            (p(&[1, -1]), -1),
            (p(&[1, -2]), -1),
        ])
        .unwrap();
        assert_eq!(z, expect);
        assert_eq!(zeta_involution_form(&g).unwrap(), z);
        let n: Vec<i64> = series_counts(&z, 3)
            .unwrap()
            .iter()
            .map(|c| i64::try_from(c).unwrap())
            .collect();
        assert_eq!(n, vec![2, 6, 8]);
        let tr: Vec<i64> = edge_zeta_series(&g, 3)
            .iter()
            .map(|c| i64::try_from(c).unwrap())
            .collect();
        assert_eq!(tr, vec![2, 6, 8]);
    }

    #[test]
    fn edgeless_zeta_is_one() {
        let g = AbstractIsogenyGraph::single_vertex();
        assert!(ihara_zeta(&g).unwrap().is_one());
        assert!(edge_zeta_series(&g, 4)
            .iter()
            .all(|c| *c == BigInt::from(0)));
    }

    #[test]
    fn rejects_non_commuting_degree() {
        // vertex 0 has one loop, vertex 1 none, L swaps them
        let g =
            AbstractIsogenyGraph::from_raw(2, vec![Edge::new(0, 0)], vec![0], vec![1, 0]).unwrap();
        assert!(matches!(
            ihara_zeta(&g),
            Err(ZetaError::DegreeNotLInvariant { .. })
        ));
    }

    #[test]
    fn involution_form_rejects_long_j_cycles() {
        // two vertices swapped by L, one loop each, J swaps the loops
        let g = AbstractIsogenyGraph::new(
            2,
            vec![Edge::new(0, 0), Edge::new(1, 1)],
            vec![1, 0],
            vec![1, 0],
        );
        // t(J y0) = t(y1) = 1 = L s(y0), but s(J y0) = 1 != t(y0) = 0
        assert!(g.is_err());
        // L of order 2 with J of order 4 on a 2-cycle of vertices
        let g = AbstractIsogenyGraph::new(
            2,
            vec![
                Edge::new(0, 1),
                Edge::new(1, 1),
                Edge::new(1, 0),
                Edge::new(0, 0),
            ],
            vec![1, 2, 3, 0],
            vec![1, 0],
        )
        .unwrap();
        assert!(matches!(
            zeta_involution_form(&g),
            Err(ZetaError::InvolutionHypothesis(_))
        ));
        let z = ihara_zeta(&g).unwrap();
        let s = series_counts(&z, 6).unwrap();
        assert_eq!(s, edge_zeta_series(&g, 6));
    }
}
