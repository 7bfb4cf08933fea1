//! The supersingular `ℓ`-isogeny graph with `H`-level structure as an
//! abstract isogeny graph.
//!
//! A vertex is a pair `(E, M)`: a supersingular model `E` with a fixed basis
//! `(P, Q)` of `E[N]`, and a matrix `M` standing for the level structure
//! `φ = φ₀ ∘ M`, where `φ₀` sends the standard basis to `(P, Q)`. Two pairs on
//! the same curve are isomorphic iff `U·M·H = M'·H` for the matrix `U` of
//! some automorphism, so each vertex is stored with the least element of
//! its double coset `Aut(E)·M·H`.
//!
//! Edges out of a vertex correspond to the `ℓ + 1` kernels in `E[ℓ]`.

use std::collections::HashMap;
use std::fmt::Write as _;

use isozeta_core::graph::{AbstractIsogenyGraph, Edge, GraphError};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::curve::{Curve, CurveError, Isogeny, Point};
use crate::field::{is_prime_u64, Fe};
use crate::level::{LevelSubgroup, Mat2};
use crate::tower::{coordinate_table, supersingular_curves, Tower, TowerError};

#[derive(Debug, Error)]
pub enum BuildError {
    #[error("p = {0} must be a prime greater than 3")]
    BadPrime(u64),
    #[error("ell = {0} must be one of 2, 3, 5, 7 and differ from p")]
    BadEll(u64),
    #[error("level {n} must be coprime to p·ell = {p}·{ell}")]
    LevelNotCoprime { n: u32, p: u64, ell: u64 },
    #[error(transparent)]
    Tower(#[from] TowerError),
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error("built graph is invalid: {0}")]
    Validation(#[from] GraphError),
    #[error("internal error: {0}")]
    Internal(String),
}

/// One of the `ℓ + 1` cyclic subgroups of order `ℓ` of a model curve.
#[derive(Debug, Clone)]
pub struct KernelData {
    pub generator: Point,
    /// Kernel polynomial over `F_{p²}`, constant term first.
    pub polynomial: Vec<Fe>,
    pub target_curve: usize,
    /// Isomorphism from the Vélu codomain onto the target model.
    pub iso: Fe,
    /// Matrix of the normalised isogeny on the `N`-torsion bases.
    pub level_image: Mat2,
    /// Kernel (at the target curve) of the dual of the normalised isogeny.
    pub dual_kernel: usize,
}

/// Per-curve data shared by all vertices on that curve.
#[derive(Debug, Clone)]
pub struct CurveData {
    pub j: Fe,
    pub model: Curve,
    pub lifted: Curve,
    pub level_basis: (Point, Point),
    pub ell_basis: (Point, Point),
    pub kernels: Vec<KernelData>,
    /// Automorphisms as scale factors in `F_{p²}`, canonical order.
    pub auts: Vec<Fe>,
    /// Matrix of each automorphism on the level basis.
    pub aut_matrices: Vec<Mat2>,
    /// Action of each automorphism on kernel indices.
    pub aut_kernel_perm: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SSVertex {
    pub curve: usize,
    pub j: Fe,
    pub model: Curve,
    /// Canonical representative of the double coset of the level matrix.
    pub level: Mat2,
    /// Indices into the curve's automorphisms preserving the level class.
    pub aut: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeOrbit {
    pub source: usize,
    pub target: usize,
    pub members: Vec<usize>,
    pub representative: usize,
    /// Orbit containing the dual of the representative.
    pub dual: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeOrbitTable {
    pub orbits: Vec<EdgeOrbit>,
    pub edge_orbit: Vec<usize>,
}

#[derive(Debug, Clone)]
pub struct BuiltGraph {
    pub p: u64,
    pub ell: u64,
    pub level: LevelSubgroup,
    pub tower: Tower,
    pub curves: Vec<CurveData>,
    pub vertices: Vec<SSVertex>,
    pub orbits: EdgeOrbitTable,
    pub graph: AbstractIsogenyGraph,
    vertex_index: HashMap<(usize, Mat2), usize>,
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn check_params(p: u64, ell: u64, n: u32) -> Result<(), BuildError> {
    if p <= 3 || !is_prime_u64(p) {
        return Err(BuildError::BadPrime(p));
    }
    if ![2, 3, 5, 7].contains(&ell) || ell == p {
        return Err(BuildError::BadEll(ell));
    }
    if gcd(n as u64, p * ell) != 1 {
        return Err(BuildError::LevelNotCoprime { n, p, ell });
    }
    Ok(())
}

fn lookup(table: &HashMap<Point, (u32, u32)>, pt: &Point) -> Result<(u32, u32), BuildError> {
    table
        .get(pt)
        .copied()
        .ok_or_else(|| BuildError::Internal("image of a torsion point is not torsion".into()))
}

/// Kernel generators `⟨Q⟩, ⟨P⟩, ⟨P + Q⟩, ..., ⟨P + (ℓ−1)Q⟩`.
fn kernel_generators(t: &Tower, e: &Curve, basis: (Point, Point), ell: u64) -> Vec<Point> {
    let f = &t.big;
    let mut gens = vec![basis.1];
    let mut pt = basis.0;
    for _ in 0..ell {
        gens.push(pt);
        pt = e.add(f, &pt, &basis.1);
    }
    gens
}

struct CurveSkeleton {
    j: Fe,
    model: Curve,
    lifted: Curve,
    level_basis: (Point, Point),
    level_coords: HashMap<Point, (u32, u32)>,
    ell_basis: (Point, Point),
    kernel_isogenies: Vec<(Point, Isogeny, Vec<Fe>)>,
    kernel_by_x: HashMap<Fe, usize>,
    auts: Vec<Fe>,
}

fn skeleton(
    t: &Tower,
    c: &crate::tower::SupersingularCurve,
    ell: u64,
    n: u32,
) -> Result<CurveSkeleton, BuildError> {
    let f = &t.big;
    let lifted = t.lift_curve(&c.model);
    let level_basis = t.torsion_basis(&lifted, n as u64)?;
    let level_coords = coordinate_table(f, &lifted, level_basis, n);
    let ell_basis = t.torsion_basis(&lifted, ell)?;
    let mut kernel_isogenies = Vec::new();
    for g in kernel_generators(t, &lifted, ell_basis, ell) {
        let phi = Isogeny::velu(f, &lifted, &g, ell)?;
        let poly = phi
            .kernel_polynomial(f)
            .iter()
            .map(|z| t.pull_back(z).ok_or(TowerError::NotInBaseField))
            .collect::<Result<Vec<_>, _>>()?;
        kernel_isogenies.push((g, phi, poly));
    }
    kernel_isogenies.sort_by(|a, b| a.2.cmp(&b.2));
    let mut kernel_by_x = HashMap::new();
    for (k, (g, _, _)) in kernel_isogenies.iter().enumerate() {
        let mut pt = *g;
        while let Point::Affine(x, _) = pt {
            kernel_by_x.insert(x, k);
            pt = lifted.add(f, &pt, g);
        }
    }
    Ok(CurveSkeleton {
        j: c.j,
        model: c.model,
        lifted,
        level_basis,
        level_coords,
        ell_basis,
        kernel_isogenies,
        kernel_by_x,
        auts: c.model.automorphisms(&t.small),
    })
}

fn point_matrix(
    images: (Point, Point),
    coords: &HashMap<Point, (u32, u32)>,
) -> Result<Mat2, BuildError> {
    let (a, c) = lookup(coords, &images.0)?;
    let (b, d) = lookup(coords, &images.1)?;
    Ok(Mat2([a, b, c, d]))
}

fn kernel_of(sk: &CurveSkeleton, pt: &Point) -> Result<usize, BuildError> {
    pt.x()
        .and_then(|x| sk.kernel_by_x.get(&x).copied())
        .ok_or_else(|| BuildError::Internal("point of order ell not in any kernel".into()))
}

fn curve_data(
    t: &Tower,
    sks: &[CurveSkeleton],
    ci: usize,
    ell: u64,
) -> Result<CurveData, BuildError> {
    let f = &t.big;
    let sk = &sks[ci];
    let mut kernels = Vec::new();
    for (g, phi, poly) in &sk.kernel_isogenies {
        let cod = t.pull_curve(&phi.codomain)?;
        let j = cod.j_invariant(&t.small);
        let target_curve = sks
            .iter()
            .position(|s| s.j == j)
            .ok_or_else(|| BuildError::Internal("codomain is not supersingular".into()))?;
        let target = &sks[target_curve];
        let iso = *cod
            .isomorphisms_to(&t.small, &target.model)
            .first()
            .ok_or_else(|| BuildError::Internal("codomain not isomorphic to its model".into()))?;
        let alpha = phi.clone().then_scale(f, &t.lift(&iso));
        debug_assert_eq!(alpha.codomain, target.lifted);
        let level_image = point_matrix(
            (
                alpha.eval(f, &sk.level_basis.0),
                alpha.eval(f, &sk.level_basis.1),
            ),
            &target.level_coords,
        )?;
        let image = [sk.ell_basis.0, sk.ell_basis.1]
            .iter()
            .map(|pt| alpha.eval(f, pt))
            .find(|pt| !pt.is_infinity())
            .ok_or_else(|| BuildError::Internal("isogeny kills all of E[ell]".into()))?;
        kernels.push(KernelData {
            generator: *g,
            polynomial: poly.clone(),
            target_curve,
            iso,
            level_image,
            dual_kernel: kernel_of(target, &image)?,
        });
    }
    let mut aut_matrices = Vec::new();
    let mut aut_kernel_perm = Vec::new();
    for u in &sk.auts {
        aut_matrices.push(point_matrix(
            (
                t.apply_iso(u, &sk.level_basis.0),
                t.apply_iso(u, &sk.level_basis.1),
            ),
            &sk.level_coords,
        )?);
        let perm = sk
            .kernel_isogenies
            .iter()
            .map(|(g, _, _)| kernel_of(sk, &t.apply_iso(u, g)))
            .collect::<Result<Vec<_>, _>>()?;
        aut_kernel_perm.push(perm);
    }
    debug_assert_eq!(kernels.len() as u64, ell + 1);
    Ok(CurveData {
        j: sk.j,
        model: sk.model,
        lifted: sk.lifted,
        level_basis: sk.level_basis,
        ell_basis: sk.ell_basis,
        kernels,
        auts: sk.auts.clone(),
        aut_matrices,
        aut_kernel_perm,
    })
}

/// Least element of `Aut(E)·M·H`.
fn double_coset_key(curve: &CurveData, h: &LevelSubgroup, m: &Mat2) -> Mat2 {
    let n = h.level();
    curve
        .aut_matrices
        .iter()
        .map(|u| h.coset_key(&u.mul(m, n)))
        .min()
        .expect("identity is an automorphism")
}

/// Supersingular curves with their torsion data, for `G(p, ℓ, H)`.
pub fn build_curves(
    p: u64,
    ell: u64,
    h: &LevelSubgroup,
) -> Result<(Tower, Vec<CurveData>), BuildError> {
    let n = h.level();
    check_params(p, ell, n)?;
    let tower = Tower::new(p, ell * n as u64)?;
    let ss = supersingular_curves(&tower.small);
    let sks = ss
        .par_iter()
        .map(|c| skeleton(&tower, c, ell, n))
        .collect::<Result<Vec<_>, _>>()?;
    let curves = (0..sks.len())
        .into_par_iter()
        .map(|ci| curve_data(&tower, &sks, ci, ell))
        .collect::<Result<Vec<_>, _>>()?;
    Ok((tower, curves))
}

/// One vertex per isomorphism class of `(E, [φ])`: curves in canonical `j`
/// order, then level classes by their least matrix.
pub fn enumerate_vertices(curves: &[CurveData], h: &LevelSubgroup) -> Vec<SSVertex> {
    let n = h.level();
    let all = crate::level::gl2(n);
    let mut out = Vec::new();
    for (ci, c) in curves.iter().enumerate() {
        let mut keys: Vec<Mat2> = all.iter().map(|m| double_coset_key(c, h, m)).collect();
        keys.sort();
        keys.dedup();
        for key in keys {
            let aut = c
                .aut_matrices
                .iter()
                .enumerate()
                .filter(|(_, u)| h.same_coset(&key, &u.mul(&key, n)))
                .map(|(i, _)| i)
                .collect();
            out.push(SSVertex {
                curve: ci,
                j: c.j,
                model: c.model,
                level: key,
                aut,
            });
        }
    }
    out
}

pub fn build_graph(p: u64, ell: u64, h: &LevelSubgroup) -> Result<BuiltGraph, BuildError> {
    build_graph_with_seed(p, ell, h, None)
}

/// As [`build_graph`]; with a seed, the representative of each edge orbit
/// is drawn at random instead of taking the least kernel.
pub fn build_graph_with_seed(
    p: u64,
    ell: u64,
    h: &LevelSubgroup,
    seed: Option<u64>,
) -> Result<BuiltGraph, BuildError> {
    let (tower, curves) = build_curves(p, ell, h)?;
    assemble(p, ell, h, tower, curves, seed)
}

/// Builds the graph from precomputed curve data (shared between reshuffles).
pub fn assemble(
    p: u64,
    ell: u64,
    h: &LevelSubgroup,
    tower: Tower,
    curves: Vec<CurveData>,
    seed: Option<u64>,
) -> Result<BuiltGraph, BuildError> {
    let n = h.level();
    let deg = ell as usize + 1;
    let vertices = enumerate_vertices(&curves, h);
    let vertex_index: HashMap<(usize, Mat2), usize> = vertices
        .iter()
        .enumerate()
        .map(|(i, v)| ((v.curve, v.level), i))
        .collect();
    let find_vertex = |curve: usize, m: &Mat2| -> usize {
        vertex_index[&(curve, double_coset_key(&curves[curve], h, m))]
    };

    // edge y = i·(ℓ+1) + k is kernel k at vertex i
    let mut edges = Vec::with_capacity(vertices.len() * deg);
    for v in &vertices {
        for kd in &curves[v.curve].kernels {
            let t = find_vertex(kd.target_curve, &kd.level_image.mul(&v.level, n));
            edges.push(Edge::new(vertex_index[&(v.curve, v.level)], t));
        }
    }

    // orbits of kernels under Aut(x_i), with a representative each
    let mut rng = seed.map(ChaCha8Rng::seed_from_u64);
    let mut orbits: Vec<EdgeOrbit> = Vec::new();
    let mut edge_orbit = vec![usize::MAX; edges.len()];
    for (i, v) in vertices.iter().enumerate() {
        let c = &curves[v.curve];
        for k in 0..deg {
            if edge_orbit[i * deg + k] != usize::MAX {
                continue;
            }
            let mut members: Vec<usize> = v
                .aut
                .iter()
                .map(|&u| i * deg + c.aut_kernel_perm[u][k])
                .collect();
            members.sort();
            members.dedup();
            let representative = match rng.as_mut() {
                Some(r) => *members.choose(r).unwrap(),
                None => members[0],
            };
            for &y in &members {
                edge_orbit[y] = orbits.len();
            }
            orbits.push(EdgeOrbit {
                source: i,
                target: edges[i * deg + k].target,
                members,
                representative,
                dual: usize::MAX,
            });
        }
    }

    // J: the dual of the representative morphism, made into a morphism of
    // level structures by a suitable automorphism of the target curve
    let mut dual = vec![0usize; edges.len()];
    for oi in 0..orbits.len() {
        let rep = orbits[oi].representative;
        let (i, k) = (rep / deg, rep % deg);
        let v = &vertices[i];
        let kd = &curves[v.curve].kernels[k];
        let t = orbits[oi].target;
        let tc = &curves[kd.target_curve];
        let image = kd.level_image.mul(&v.level, n);
        let u = tc
            .aut_matrices
            .iter()
            .position(|u| h.same_coset(&vertices[t].level, &u.mul(&image, n)))
            .ok_or_else(|| BuildError::Internal(format!("no valid automorphism for edge {rep}")))?;
        let dual_kernel = tc.aut_kernel_perm[u][kd.dual_kernel];
        let dual_orbit = edge_orbit[t * deg + dual_kernel];
        orbits[oi].dual = dual_orbit;
        for &y in &orbits[oi].members {
            dual[y] = orbits[dual_orbit].representative;
        }
    }

    let level: Vec<usize> = vertices
        .iter()
        .map(|v| find_vertex(v.curve, &Mat2::scalar(n, ell as i64).mul(&v.level, n)))
        .collect();

    let graph = AbstractIsogenyGraph::new(vertices.len(), edges, dual, level)?;
    Ok(BuiltGraph {
        p,
        ell,
        level: h.clone(),
        tower,
        curves,
        vertices,
        orbits: EdgeOrbitTable { orbits, edge_orbit },
        graph,
        vertex_index,
    })
}

impl BuiltGraph {
    /// Vertex of `(E, [d·φ])`.
    pub fn diamond(&self, v: usize, d: i64) -> usize {
        let n = self.level.level();
        let x = &self.vertices[v];
        let m = Mat2::scalar(n, d).mul(&x.level, n);
        let key = double_coset_key(&self.curves[x.curve], &self.level, &m);
        self.vertex_index[&(x.curve, key)]
    }

    pub fn edge_kernel(&self, y: usize) -> &KernelData {
        let deg = self.ell as usize + 1;
        let v = &self.vertices[y / deg];
        &self.curves[v.curve].kernels[y % deg]
    }

    /// Per vertex the `j`-invariant, model and level matrix; per edge the
    /// kernel polynomial. Field elements are `[c0,c1]` in the basis `1, x`
    /// of `F_p[x]/(modulus)`.
    pub fn provenance(&self) -> String {
        let f = &self.tower.small;
        let show = |z: &Fe| f.display(z);
        let mut s = String::new();
        writeln!(
            s,
            "# provenance p={} ell={} level={}",
            self.p,
            self.ell,
            self.level.spec()
        )
        .unwrap();
        let m: Vec<String> = f.modulus().iter().map(u64::to_string).collect();
        writeln!(s, "field {} modulus {}", f, m.join(" ")).unwrap();
        writeln!(s, "torsion_field degree {}", self.tower.big.degree()).unwrap();
        for (i, v) in self.vertices.iter().enumerate() {
            let [a, b, c, d] = v.level.0;
            writeln!(
                s,
                "vertex {i} j={} a={} b={} level={a},{b},{c},{d} aut={}",
                show(&v.j),
                show(&v.model.a),
                show(&v.model.b),
                v.aut.len()
            )
            .unwrap();
        }
        for y in 0..self.graph.num_edges() {
            let coeffs: Vec<String> = self.edge_kernel(y).polynomial.iter().map(show).collect();
            writeln!(
                s,
                "edge {y} {} -> {} kernel_poly={}",
                self.graph.source(y),
                self.graph.target(y),
                coeffs.join(" ")
            )
            .unwrap();
        }
        s
    }
}
