//! Random graphs and self-maps for property tests and self-checks.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::graph::{AbstractIsogenyGraph, Edge};

/// A random `d`-regular orientable graph on `n` vertices from the
/// configuration model: half-edges are paired at random and each pair gives
/// an edge and its reverse. Loops and multiple edges are allowed.
///
/// Panics if `n·d` is odd.
pub fn orientable_regular<R: Rng + ?Sized>(
    rng: &mut R,
    n: usize,
    d: usize,
) -> AbstractIsogenyGraph {
    assert!((n * d) % 2 == 0, "n·d must be even");
    let mut half: Vec<usize> = (0..n).flat_map(|v| std::iter::repeat(v).take(d)).collect();
    half.shuffle(rng);
    let mut edges = Vec::with_capacity(n * d);
    let mut dual = Vec::with_capacity(n * d);
    for pair in half.chunks(2) {
        let y = edges.len();
        edges.push(Edge::new(pair[0], pair[1]));
        edges.push(Edge::new(pair[1], pair[0]));
        dual.push(y + 1);
        dual.push(y);
    }
    AbstractIsogenyGraph::new(n, edges, dual, (0..n).collect()).expect("orientable by construction")
}

/// A random permutation of `0..n` as a map.
pub fn permutation<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(rng);
    p
}

/// A uniformly random self-map of `0..n`.
pub fn self_map<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<usize> {
    (0..n).map(|_| rng.gen_range(0..n)).collect()
}

/// A random abstract isogeny graph on `n` vertices whose level map is a
/// random permutation `σ`.
///
/// Edges are added in whole `J`-orbits: starting from `a → b`, the orbit is
/// `σ^k a → σ^k b` followed by `σ^k b → σ^{k+1} a`, closed as soon as it
/// returns to its first edge. Degrees are then constant on `σ`-orbits, as
/// the determinant formula needs. Afterwards each `J y` is, with
/// probability `collapse`, redirected to a parallel edge, so `J` need not
/// be injective.
pub fn abstract_graph<R: Rng + ?Sized>(
    rng: &mut R,
    n: usize,
    orbits: usize,
    collapse: f64,
) -> AbstractIsogenyGraph {
    assert!(n > 0);
    let sigma = permutation(rng, n);
    let mut edges: Vec<Edge> = Vec::new();
    let mut dual: Vec<usize> = Vec::new();
    for _ in 0..orbits {
        let (a, b) = (rng.gen_range(0..n), rng.gen_range(0..n));
        let first = edges.len();
        let (mut s, mut t) = (a, b);
        loop {
            // s → t, then t → σ(s)
            edges.push(Edge::new(s, t));
            let (ns, nt) = (t, sigma[s]);
            if (ns, nt) == (a, b) {
                break;
            }
            dual.push(edges.len());
            s = ns;
            t = nt;
        }
        dual.push(first);
    }
    let m = edges.len();
    for y in 0..m {
        if rng.gen_bool(collapse) {
            let e = edges[dual[y]];
            let parallel: Vec<usize> = (0..m).filter(|&z| edges[z] == e).collect();
            dual[y] = *parallel.choose(rng).unwrap();
        }
    }
    AbstractIsogenyGraph::new(n, edges, dual, sigma).expect("axioms hold by construction")
}
