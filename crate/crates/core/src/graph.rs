//! Abstract isogeny graphs: vertices and directed edges with a dual map `J`
//! on edges and a map `L` on vertices, subject to
//!
//! * `s(J y) = t(y)`
//! * `t(J y) = L s(y)`
//!
//! Orientable graphs (Serre/Bass graphs) are the special case where `J` is a
//! fixed-point-free involution and `L` is the identity.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

/// A directed edge, stored as a pair of vertex indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    pub source: usize,
    pub target: usize,
}

impl Edge {
    pub fn new(source: usize, target: usize) -> Self {
        Self { source, target }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("malformed graph data: {0}")]
    Malformed(String),
    #[error("axiom violation: {0}")]
    Axiom(AxiomViolation),
    #[error("graph is not connected; components: {0:?}")]
    Disconnected(Vec<Vec<usize>>),
    #[error("orientable-graph invariant broken: {0}")]
    NotOrientable(String),
}

/// Which of the two defining identities failed on a given edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axiom {
    /// `s(J y) = t(y)`
    SourceOfDual,
    /// `t(J y) = L s(y)`
    TargetOfDual,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AxiomViolation {
    pub edge: usize,
    pub axiom: Axiom,
}

impl fmt::Display for AxiomViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.axiom {
            Axiom::SourceOfDual => write!(f, "edge {}: s(J y) != t(y)", self.edge),
            Axiom::TargetOfDual => write!(f, "edge {}: t(J y) != L s(y)", self.edge),
        }
    }
}

/// Outcome of [`AbstractIsogenyGraph::validate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<AxiomViolation>,
    pub out_degrees: Vec<usize>,
    /// `Some(d)` when every vertex has out-degree `d`.
    pub regular_degree: Option<usize>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Finite abstract isogeny graph on dense indices `0..num_vertices` and
/// `0..edges.len()`.
///
/// Construction through [`AbstractIsogenyGraph::new`] guarantees that both
/// axioms hold; [`AbstractIsogenyGraph::from_raw`] only checks index ranges so
/// that axiom failures can be reported by [`AbstractIsogenyGraph::validate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbstractIsogenyGraph {
    num_vertices: usize,
    edges: Vec<Edge>,
    dual: Vec<usize>,
    level: Vec<usize>,
}

impl AbstractIsogenyGraph {
    /// Builds a graph and rejects any axiom violation.
    pub fn new(
        num_vertices: usize,
        edges: Vec<Edge>,
        dual: Vec<usize>,
        level: Vec<usize>,
    ) -> Result<Self, GraphError> {
        let graph = Self::from_raw(num_vertices, edges, dual, level)?;
        let report = graph.validate();
        match report.violations.first() {
            Some(v) => Err(GraphError::Axiom(*v)),
            None => Ok(graph),
        }
    }

    /// Builds a graph checking only that every index is in range.
    pub fn from_raw(
        num_vertices: usize,
        edges: Vec<Edge>,
        dual: Vec<usize>,
        level: Vec<usize>,
    ) -> Result<Self, GraphError> {
        if dual.len() != edges.len() {
            return Err(GraphError::Malformed(format!(
                "dual map has {} entries for {} edges",
                dual.len(),
                edges.len()
            )));
        }
        if level.len() != num_vertices {
            return Err(GraphError::Malformed(format!(
                "level map has {} entries for {} vertices",
                level.len(),
                num_vertices
            )));
        }
        for (i, e) in edges.iter().enumerate() {
            if e.source >= num_vertices || e.target >= num_vertices {
                return Err(GraphError::Malformed(format!(
                    "edge {i} endpoint out of range ({} -> {}, {num_vertices} vertices)",
                    e.source, e.target
                )));
            }
        }
        if let Some((i, &j)) = dual.iter().enumerate().find(|(_, &j)| j >= edges.len()) {
            return Err(GraphError::Malformed(format!("J({i}) = {j} out of range")));
        }
        if let Some((i, &l)) = level.iter().enumerate().find(|(_, &l)| l >= num_vertices) {
            return Err(GraphError::Malformed(format!("L({i}) = {l} out of range")));
        }
        Ok(Self {
            num_vertices,
            edges,
            dual,
            level,
        })
    }

    /// The graph with one vertex and no edges.
    pub fn single_vertex() -> Self {
        Self {
            num_vertices: 1,
            edges: Vec::new(),
            dual: Vec::new(),
            level: vec![0],
        }
    }

    pub fn num_vertices(&self) -> usize {
        self.num_vertices
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, y: usize) -> Edge {
        self.edges[y]
    }

    pub fn source(&self, y: usize) -> usize {
        self.edges[y].source
    }

    pub fn target(&self, y: usize) -> usize {
        self.edges[y].target
    }

    /// The dual map `J` on edges.
    pub fn dual(&self, y: usize) -> usize {
        self.dual[y]
    }

    pub fn dual_map(&self) -> &[usize] {
        &self.dual
    }

    /// The map `L` on vertices.
    pub fn level(&self, x: usize) -> usize {
        self.level[x]
    }

    pub fn level_map(&self) -> &[usize] {
        &self.level
    }

    pub fn out_degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.num_vertices];
        for e in &self.edges {
            deg[e.source] += 1;
        }
        deg
    }

    /// `out_edges()[x]` lists the edges with source `x`, ascending.
    pub fn out_edges(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.num_vertices];
        for (y, e) in self.edges.iter().enumerate() {
            out[e.source].push(y);
        }
        out
    }

    pub fn regular_degree(&self) -> Option<usize> {
        let deg = self.out_degrees();
        match deg.split_first() {
            None => Some(0),
            Some((&d, rest)) => rest.iter().all(|&x| x == d).then_some(d),
        }
    }

    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();
        for (y, e) in self.edges.iter().enumerate() {
            let jy = self.edges[self.dual[y]];
            if jy.source != e.target {
                violations.push(AxiomViolation {
                    edge: y,
                    axiom: Axiom::SourceOfDual,
                });
            }
            if jy.target != self.level[e.source] {
                violations.push(AxiomViolation {
                    edge: y,
                    axiom: Axiom::TargetOfDual,
                });
            }
        }
        ValidationReport {
            violations,
            out_degrees: self.out_degrees(),
            regular_degree: self.regular_degree(),
        }
    }

    /// True when `J` is a fixed-point-free involution and `L` is the identity.
    pub fn is_orientable(&self) -> bool {
        self.level.iter().enumerate().all(|(x, &l)| x == l)
            && self
                .dual
                .iter()
                .enumerate()
                .all(|(y, &j)| j != y && self.dual[j] == y)
    }

    /// Directed strong connectivity: every ordered pair of vertices is joined
    /// by a path.
    pub fn is_connected(&self) -> bool {
        if self.num_vertices <= 1 {
            return true;
        }
        let forward: Vec<Vec<usize>> = adjacency_lists(self.num_vertices, &self.edges, false);
        let backward: Vec<Vec<usize>> = adjacency_lists(self.num_vertices, &self.edges, true);
        reach_all(&forward, 0) && reach_all(&backward, 0)
    }

    pub fn quotients(&self) -> QuotientData {
        QuotientData::of(self)
    }

    /// The orientable graphs `(Γ^{+1}, Γ^{-1})`.
    pub fn orientable_graphs(&self) -> (OrientableGraph, OrientableGraph) {
        let q = self.quotients();
        (q.plus_graph(), q.minus_graph())
    }

    /// Rank of the fundamental group of the realization, `1 - χ(Γ^{+1})`.
    pub fn homotopy_rank(&self) -> Result<i64, GraphError> {
        let (plus, _) = self.orientable_graphs();
        let comps = plus.components();
        if comps.len() > 1 {
            return Err(GraphError::Disconnected(comps));
        }
        Ok(1 - plus.euler_characteristic())
    }
}

fn adjacency_lists(n: usize, edges: &[Edge], reversed: bool) -> Vec<Vec<usize>> {
    let mut adj = vec![Vec::new(); n];
    for e in edges {
        if reversed {
            adj[e.target].push(e.source);
        } else {
            adj[e.source].push(e.target);
        }
    }
    adj
}

fn reach_all(adj: &[Vec<usize>], start: usize) -> bool {
    let mut seen = vec![false; adj.len()];
    let mut stack = vec![start];
    seen[start] = true;
    let mut count = 1;
    while let Some(v) = stack.pop() {
        for &w in &adj[v] {
            if !seen[w] {
                seen[w] = true;
                count += 1;
                stack.push(w);
            }
        }
    }
    count == adj.len()
}

/// Disjoint-set forest with path halving.
#[derive(Debug, Clone)]
struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            // keep the smaller index as root so class numbering is stable
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }

    /// Class id per element, numbered by first occurrence.
    fn labels(&mut self) -> (Vec<usize>, usize) {
        let n = self.parent.len();
        let mut id_of_root = vec![usize::MAX; n];
        let mut labels = vec![0; n];
        let mut next = 0;
        for x in 0..n {
            let r = self.find(x);
            if id_of_root[r] == usize::MAX {
                id_of_root[r] = next;
                next += 1;
            }
            labels[x] = id_of_root[r];
        }
        (labels, next)
    }
}

/// Vertex classes under `x ~ L x` and edge classes under `y ~ J² y`, with the
/// induced source, target and dual maps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientData {
    pub vertex_class: Vec<usize>,
    pub num_vertex_classes: usize,
    pub edge_class: Vec<usize>,
    pub num_edge_classes: usize,
    pub class_edges: Vec<Edge>,
    pub class_dual: Vec<usize>,
    /// `self_dual[c]` iff `J[y] = [y]` for the class `c = [y]`.
    pub self_dual: Vec<bool>,
}

impl QuotientData {
    fn of(graph: &AbstractIsogenyGraph) -> Self {
        let mut vuf = UnionFind::new(graph.num_vertices);
        for x in 0..graph.num_vertices {
            vuf.union(x, graph.level[x]);
        }
        let (vertex_class, num_vertex_classes) = vuf.labels();

        let mut euf = UnionFind::new(graph.num_edges());
        for y in 0..graph.num_edges() {
            euf.union(y, graph.dual[graph.dual[y]]);
        }
        let (edge_class, num_edge_classes) = euf.labels();

        let mut class_edges = vec![None; num_edge_classes];
        let mut class_dual = vec![None; num_edge_classes];
        for (y, e) in graph.edges.iter().enumerate() {
            let c = edge_class[y];
            let induced = Edge::new(vertex_class[e.source], vertex_class[e.target]);
            let jc = edge_class[graph.dual[y]];
            match class_edges[c] {
                None => class_edges[c] = Some(induced),
                Some(prev) => assert_eq!(prev, induced, "induced endpoints not well defined"),
            }
            match class_dual[c] {
                None => class_dual[c] = Some(jc),
                Some(prev) => assert_eq!(prev, jc, "induced dual not well defined"),
            }
        }
        let class_edges: Vec<Edge> = class_edges.into_iter().map(Option::unwrap).collect();
        let class_dual: Vec<usize> = class_dual.into_iter().map(Option::unwrap).collect();
        let self_dual = class_dual
            .iter()
            .enumerate()
            .map(|(c, &j)| c == j)
            .collect();
        Self {
            vertex_class,
            num_vertex_classes,
            edge_class,
            num_edge_classes,
            class_edges,
            class_dual,
            self_dual,
        }
    }

    pub fn num_self_dual(&self) -> usize {
        self.self_dual.iter().filter(|&&b| b).count()
    }

    /// `Γ^{+1}`: edge classes with the self-dual ones removed.
    pub fn plus_graph(&self) -> OrientableGraph {
        let kept: Vec<usize> = (0..self.num_edge_classes)
            .filter(|&c| !self.self_dual[c])
            .collect();
        let mut new_index = vec![usize::MAX; self.num_edge_classes];
        for (i, &c) in kept.iter().enumerate() {
            new_index[c] = i;
        }
        let edges = kept.iter().map(|&c| self.class_edges[c]).collect();
        let involution = kept
            .iter()
            .map(|&c| new_index[self.class_dual[c]])
            .collect();
        OrientableGraph::new(self.num_vertex_classes, edges, involution)
            .expect("Γ^{+1} is orientable")
    }

    /// `Γ^{-1}`: every edge class, plus a twin for each self-dual class; the
    /// twins are appended in class order and swapped with their originals.
    pub fn minus_graph(&self) -> OrientableGraph {
        let mut edges = self.class_edges.clone();
        let mut involution = self.class_dual.clone();
        for c in 0..self.num_edge_classes {
            if self.self_dual[c] {
                let twin = edges.len();
                edges.push(self.class_edges[c]);
                involution.push(c);
                involution[c] = twin;
            }
        }
        OrientableGraph::new(self.num_vertex_classes, edges, involution)
            .expect("Γ^{-1} is orientable")
    }
}

/// A graph in the sense of Serre: `J` is a fixed-point-free involution that
/// swaps source and target.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrientableGraph {
    num_vertices: usize,
    edges: Vec<Edge>,
    involution: Vec<usize>,
}

impl OrientableGraph {
    pub fn new(
        num_vertices: usize,
        edges: Vec<Edge>,
        involution: Vec<usize>,
    ) -> Result<Self, GraphError> {
        if involution.len() != edges.len() {
            return Err(GraphError::Malformed(
                "involution length differs from edge count".into(),
            ));
        }
        for (y, e) in edges.iter().enumerate() {
            if e.source >= num_vertices || e.target >= num_vertices {
                return Err(GraphError::Malformed(format!("edge {y} out of range")));
            }
            let j = involution[y];
            if j >= edges.len() {
                return Err(GraphError::Malformed(format!("J({y}) out of range")));
            }
            if j == y {
                return Err(GraphError::NotOrientable(format!("edge {y} is fixed by J")));
            }
            if involution[j] != y {
                return Err(GraphError::NotOrientable(format!(
                    "J is not an involution at {y}"
                )));
            }
            if edges[j].source != e.target || edges[j].target != e.source {
                return Err(GraphError::NotOrientable(format!(
                    "J does not reverse edge {y}"
                )));
            }
        }
        Ok(Self {
            num_vertices,
            edges,
            involution,
        })
    }

    pub fn num_vertices(&self) -> usize {
        self.num_vertices
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn involution(&self) -> &[usize] {
        &self.involution
    }

    /// Vertices minus half the number of directed edges.
    pub fn euler_characteristic(&self) -> i64 {
        assert!(
            self.edges.len() % 2 == 0,
            "orientable graph with an odd number of directed edges"
        );
        self.num_vertices as i64 - (self.edges.len() / 2) as i64
    }

    /// Connected components as sorted vertex lists, ordered by least vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut uf = UnionFind::new(self.num_vertices);
        for e in &self.edges {
            uf.union(e.source, e.target);
        }
        let (labels, count) = uf.labels();
        let mut comps = vec![Vec::new(); count];
        for (v, &c) in labels.iter().enumerate() {
            comps[c].push(v);
        }
        comps
    }

    /// First Betti number `½#edges − #vertices + 1` of a connected graph.
    pub fn betti_number(&self) -> Result<i64, GraphError> {
        let comps = self.components();
        if comps.len() > 1 {
            return Err(GraphError::Disconnected(comps));
        }
        Ok(1 - self.euler_characteristic())
    }

    pub fn to_abstract(&self) -> AbstractIsogenyGraph {
        AbstractIsogenyGraph {
            num_vertices: self.num_vertices,
            edges: self.edges.clone(),
            dual: self.involution.clone(),
            level: (0..self.num_vertices).collect(),
        }
    }

    /// Edges `y` with `y < J y`, one from each reversal pair.
    pub fn orientation(&self) -> BTreeSet<usize> {
        (0..self.edges.len())
            .filter(|&y| y < self.involution[y])
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// One vertex with loops α, α̂ (swapped by J) and β (fixed by J).
    pub(crate) fn g13_2() -> AbstractIsogenyGraph {
        AbstractIsogenyGraph::new(1, vec![Edge::new(0, 0); 3], vec![1, 0, 2], vec![0]).unwrap()
    }

    /// Two vertices with adjacency [[1,3],[2,2]], J an involution.
    fn g11_3_like() -> AbstractIsogenyGraph {
        // edges: 0: 0->0 (self dual), 1,2,3: 0->1, 4,5: 1->0, 6,7: 1->1
        let edges = vec![
            Edge::new(0, 0),
            Edge::new(0, 1),
            Edge::new(0, 1),
            Edge::new(0, 1),
            Edge::new(1, 0),
            Edge::new(1, 0),
            Edge::new(1, 1),
            Edge::new(1, 1),
        ];
        // J must map 0->1 edges to 1->0 edges; with three forward edges and
        // two backward ones, J is not injective here.
        let dual = vec![0, 4, 5, 5, 1, 2, 7, 6];
        AbstractIsogenyGraph::new(2, edges, dual, vec![0, 1]).unwrap()
    }

    #[test]
    fn validates_single_vertex_graph() {
        let g = g13_2();
        let r = g.validate();
        assert!(r.passed());
        assert_eq!(r.regular_degree, Some(3));
        let empty = AbstractIsogenyGraph::single_vertex();
        let r = empty.validate();
        assert!(r.passed());
        assert_eq!(r.regular_degree, Some(0));
    }

    #[test]
    fn reports_axiom_two_violation() {
        let g = AbstractIsogenyGraph::from_raw(
            2,
            vec![Edge::new(0, 0), Edge::new(1, 1)],
            vec![0, 1],
            vec![1, 1],
        )
        .unwrap();
        let r = g.validate();
        assert_eq!(
            r.violations,
            vec![AxiomViolation {
                edge: 0,
                axiom: Axiom::TargetOfDual
            }]
        );
        assert!(matches!(
            AbstractIsogenyGraph::new(
                2,
                vec![Edge::new(0, 0), Edge::new(1, 1)],
                vec![0, 1],
                vec![1, 1]
            ),
            Err(GraphError::Axiom(_))
        ));
    }

    #[test]
    fn malformed_is_distinct_from_axiom_failure() {
        let err =
            AbstractIsogenyGraph::from_raw(1, vec![Edge::new(0, 2)], vec![0], vec![0]).unwrap_err();
        assert!(matches!(err, GraphError::Malformed(_)));
        let err =
            AbstractIsogenyGraph::from_raw(1, vec![Edge::new(0, 0)], vec![3], vec![0]).unwrap_err();
        assert!(matches!(err, GraphError::Malformed(_)));
    }

    #[test]
    fn quotients_of_g13_2() {
        let q = g13_2().quotients();
        assert_eq!(q.num_vertex_classes, 1);
        assert_eq!(q.num_edge_classes, 3);
        assert_eq!(q.num_self_dual(), 1);
        assert!(q.self_dual[2]);
    }

    #[test]
    fn orientable_graphs_of_g13_2() {
        let (plus, minus) = g13_2().orientable_graphs();
        assert_eq!((plus.num_vertices(), plus.num_edges()), (1, 2));
        assert_eq!((minus.num_vertices(), minus.num_edges()), (1, 4));
        assert_eq!(plus.euler_characteristic(), 0);
        assert_eq!(minus.euler_characteristic(), -1);
        assert_eq!(g13_2().homotopy_rank(), Ok(1));
    }

    #[test]
    fn orientable_input_is_fixed() {
        let g = AbstractIsogenyGraph::new(
            2,
            vec![
                Edge::new(0, 1),
                Edge::new(1, 0),
                Edge::new(0, 0),
                Edge::new(0, 0),
            ],
            vec![1, 0, 3, 2],
            vec![0, 1],
        )
        .unwrap();
        assert!(g.is_orientable());
        let (plus, minus) = g.orientable_graphs();
        assert_eq!(plus.to_abstract(), g);
        assert_eq!(minus.to_abstract(), g);
    }

    #[test]
    fn connectivity() {
        assert!(AbstractIsogenyGraph::single_vertex().is_connected());
        let two = AbstractIsogenyGraph::new(2, vec![], vec![], vec![0, 1]).unwrap();
        assert!(!two.is_connected());
        assert!(g11_3_like().is_connected());
    }

    #[test]
    fn homotopy_rank_of_tree_and_disconnected() {
        // path 0 - 1 - 2
        let tree = AbstractIsogenyGraph::new(
            3,
            vec![
                Edge::new(0, 1),
                Edge::new(1, 0),
                Edge::new(1, 2),
                Edge::new(2, 1),
            ],
            vec![1, 0, 3, 2],
            vec![0, 1, 2],
        )
        .unwrap();
        assert_eq!(tree.homotopy_rank(), Ok(0));
        let two = AbstractIsogenyGraph::new(2, vec![], vec![], vec![0, 1]).unwrap();
        assert_eq!(
            two.homotopy_rank(),
            Err(GraphError::Disconnected(vec![vec![0], vec![1]]))
        );
    }

    #[test]
    fn involution_case_euler_relation() {
        let g = g11_3_like();
        let q = g.quotients();
        let (plus, minus) = g.orientable_graphs();
        assert_eq!(
            minus.euler_characteristic(),
            plus.euler_characteristic() - q.num_self_dual() as i64
        );
    }

    #[test]
    fn rejects_bad_orientable_data() {
        assert!(matches!(
            OrientableGraph::new(1, vec![Edge::new(0, 0)], vec![0]),
            Err(GraphError::NotOrientable(_))
        ));
        assert!(matches!(
            OrientableGraph::new(2, vec![Edge::new(0, 1), Edge::new(0, 1)], vec![1, 0]),
            Err(GraphError::NotOrientable(_))
        ));
    }
}
