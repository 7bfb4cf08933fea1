//! Direct enumeration of non-backtracking tailless closed walks and primes.
//!
//! This is a brute-force oracle: everything here is exponential in the walk
//! length and exists to cross-check the determinant formula.

use std::collections::BTreeMap;

use rayon::prelude::*;
use thiserror::Error;

use crate::graph::AbstractIsogenyGraph;

/// Default cap on the estimated number of search nodes.
pub const DEFAULT_NODE_BUDGET: u128 = 100_000_000;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum WalkError {
    #[error("walk length must be at least 1")]
    ZeroLength,
    #[error(
        "enumeration would visit about {estimate} nodes (budget {budget}); \
         lower --max-len or use the determinant formula"
    )]
    TooLarge { estimate: u128, budget: u128 },
    #[error("no prime count recorded for length {0}")]
    MissingDivisor(usize),
}

/// A closed walk, stored as its edge sequence.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Walk {
    pub edges: Vec<usize>,
}

impl Walk {
    /// Consecutive and non-backtracking at every step, including the step
    /// from the last edge back to the first.
    pub fn is_closed_nb_tailless(&self, g: &AbstractIsogenyGraph) -> bool {
        let n = self.edges.len();
        n > 0
            && (0..n).all(|i| {
                let y = self.edges[i];
                let z = self.edges[(i + 1) % n];
                g.source(z) == g.target(y) && z != g.dual(y)
            })
    }
}

/// A prime: the least rotation of a primitive closed walk.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct PrimeClass {
    pub canonical_rotation: Vec<usize>,
}

impl PrimeClass {
    pub fn len(&self) -> usize {
        self.canonical_rotation.len()
    }

    pub fn is_empty(&self) -> bool {
        self.canonical_rotation.is_empty()
    }
}

/// Primes up to some length, with `c_r` per length.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeTable {
    pub max_len: usize,
    pub primes: BTreeMap<usize, Vec<PrimeClass>>,
}

impl PrimeTable {
    pub fn c(&self, r: usize) -> Option<usize> {
        (1..=self.max_len)
            .contains(&r)
            .then(|| self.primes.get(&r).map_or(0, Vec::len))
    }

    pub fn c_table(&self) -> BTreeMap<usize, usize> {
        (1..=self.max_len)
            .map(|r| (r, self.c(r).unwrap()))
            .collect()
    }
}

fn successors(g: &AbstractIsogenyGraph) -> Vec<Vec<usize>> {
    let out = g.out_edges();
    (0..g.num_edges())
        .map(|y| {
            out[g.target(y)]
                .iter()
                .copied()
                .filter(|&z| z != g.dual(y))
                .collect()
        })
        .collect()
}

/// `#edges · maxdeg^(len−1)`.
pub fn estimate_nodes(g: &AbstractIsogenyGraph, len: usize) -> u128 {
    let maxdeg = g.out_degrees().into_iter().max().unwrap_or(0) as u128;
    let mut est = g.num_edges() as u128;
    for _ in 1..len {
        est = est.saturating_mul(maxdeg);
    }
    est
}

fn guard(g: &AbstractIsogenyGraph, len: usize, budget: u128) -> Result<(), WalkError> {
    if len == 0 {
        return Err(WalkError::ZeroLength);
    }
    let estimate = estimate_nodes(g, len);
    if estimate > budget {
        return Err(WalkError::TooLarge { estimate, budget });
    }
    Ok(())
}

/// Visits every closed non-backtracking tailless walk of length `r` that
/// starts at `start` and whose other edges all satisfy `allowed`.
fn dfs_closed(
    g: &AbstractIsogenyGraph,
    succ: &[Vec<usize>],
    start: usize,
    r: usize,
    allowed: &dyn Fn(usize) -> bool,
    visit: &mut dyn FnMut(&[usize]),
) {
    let mut path = vec![start];
    // stack of (depth, next successor index)
    let mut idx = vec![0usize];
    while let Some(&depth_i) = idx.last() {
        let depth = path.len();
        if depth == r {
            let last = *path.last().unwrap();
            if g.target(last) == g.source(start) && start != g.dual(last) {
                visit(&path);
            }
            idx.pop();
            path.pop();
            continue;
        }
        let cur = *path.last().unwrap();
        match succ[cur].get(depth_i) {
            Some(&z) => {
                *idx.last_mut().unwrap() += 1;
                if allowed(z) {
                    path.push(z);
                    idx.push(0);
                }
            }
            None => {
                idx.pop();
                path.pop();
            }
        }
    }
}

/// Number of closed non-backtracking tailless walks of length `r`, with the
/// default node budget.
pub fn count_closed_nb_tailless(g: &AbstractIsogenyGraph, r: usize) -> Result<u128, WalkError> {
    count_closed_nb_tailless_with_budget(g, r, DEFAULT_NODE_BUDGET)
}

pub fn count_closed_nb_tailless_with_budget(
    g: &AbstractIsogenyGraph,
    r: usize,
    budget: u128,
) -> Result<u128, WalkError> {
    guard(g, r, budget)?;
    let succ = successors(g);
    Ok((0..g.num_edges())
        .into_par_iter()
        .map(|start| {
            let mut n = 0u128;
            dfs_closed(g, &succ, start, r, &|_| true, &mut |_| n += 1);
            n
        })
        .sum())
}

fn is_least_rotation(w: &[usize]) -> bool {
    let n = w.len();
    (1..n).all(|k| {
        let rotated = w[k..].iter().chain(&w[..k]);
        w.iter().cmp(rotated) != std::cmp::Ordering::Greater
    })
}

fn is_primitive(w: &[usize]) -> bool {
    let n = w.len();
    (1..n)
        .filter(|d| n % d == 0)
        .all(|d| (0..n).any(|i| w[i] != w[i % d]))
}

/// Every prime of length at most `max_len`, each reported once by its least
/// rotation. Walks are only started from their minimal edge, so each
/// rotation class is reached from one starting edge.
pub fn enumerate_primes(g: &AbstractIsogenyGraph, max_len: usize) -> Result<PrimeTable, WalkError> {
    enumerate_primes_with_budget(g, max_len, DEFAULT_NODE_BUDGET)
}

pub fn enumerate_primes_with_budget(
    g: &AbstractIsogenyGraph,
    max_len: usize,
    budget: u128,
) -> Result<PrimeTable, WalkError> {
    guard(g, max_len, budget)?;
    let succ = successors(g);
    let mut primes = BTreeMap::new();
    for r in 1..=max_len {
        let mut found: Vec<PrimeClass> = (0..g.num_edges())
            .into_par_iter()
            .flat_map_iter(|start| {
                let mut local = Vec::new();
                dfs_closed(g, &succ, start, r, &|z| z >= start, &mut |w| {
                    if is_least_rotation(w) && is_primitive(w) {
                        local.push(PrimeClass {
                            canonical_rotation: w.to_vec(),
                        });
                    }
                });
                local
            })
            .collect();
        found.sort();
        if !found.is_empty() {
            primes.insert(r, found);
        }
    }
    Ok(PrimeTable { max_len, primes })
}

/// `N_r = Σ_{d | r} d·c_d`.
pub fn nr_from_primes(c: &BTreeMap<usize, usize>, r: usize) -> Result<u128, WalkError> {
    if r == 0 {
        return Err(WalkError::ZeroLength);
    }
    let mut total = 0u128;
    for d in (1..=r).filter(|d| r % d == 0) {
        let cd = c.get(&d).ok_or(WalkError::MissingDivisor(d))?;
        total += (d * cd) as u128;
    }
    Ok(total)
}
