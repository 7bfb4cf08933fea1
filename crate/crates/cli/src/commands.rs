//! The subcommands, as functions from parsed arguments to report text.

use std::fmt::Write as _;

use isozeta_core::cycles::{associated_permutation, det_one_plus_sf, det_one_plus_sf_direct};
use isozeta_core::format::{parse_aig, write_aig};
use isozeta_core::quadratic::{
    class_number, class_number_nr, cycle_set_i, euler_chars_borel, is_prime, point_count_x0,
    QuadError,
};
use isozeta_core::random;
use isozeta_core::walks::{
    count_closed_nb_tailless_with_budget, enumerate_primes_with_budget, nr_from_primes, WalkError,
};
use isozeta_core::zeta::{
    adjacency_matrix, edge_zeta_series, ihara_zeta, series_counts, zeta_involution_form,
    zeta_numerator, ZetaError,
};
use isozeta_core::{AbstractIsogenyGraph, FactoredRationalFunction};
use isozeta_isogeny::builder::{build_graph_with_seed, BuildError, BuiltGraph};
use isozeta_isogeny::field::MAX_DEGREE;
use isozeta_isogeny::level::{LevelSpec, LevelSubgroup};
use isozeta_isogeny::tower::{order_of_minus_p, TowerError};
use num_bigint::BigInt;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::lpoly::LPolyInput;

/// Default node budget for the walk enumerations.
pub const WALK_BUDGET: u128 = 100_000_000;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Guard(String),
    #[error("{0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Internal(_) => 1,
            CliError::Input(_) => 2,
            CliError::Guard(_) => 3,
        }
    }
}

impl From<BuildError> for CliError {
    fn from(e: BuildError) -> Self {
        match e {
            BuildError::BadPrime(_)
            | BuildError::BadEll(_)
            | BuildError::LevelNotCoprime { .. } => CliError::Input(e.to_string()),
            BuildError::Tower(TowerError::ExtensionTooLarge { .. }) => CliError::Guard(format!(
                "{e}; choose a level N for which −p has small order mod ℓN"
            )),
            _ => CliError::Internal(e.to_string()),
        }
    }
}

impl From<WalkError> for CliError {
    fn from(e: WalkError) -> Self {
        match e {
            WalkError::TooLarge { .. } => CliError::Guard(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

impl From<ZetaError> for CliError {
    fn from(e: ZetaError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<QuadError> for CliError {
    fn from(e: QuadError) -> Self {
        CliError::Input(e.to_string())
    }
}

/// Output text and whether every check in it passed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub text: String,
    pub passed: bool,
}

impl Report {
    fn new() -> Self {
        Report {
            text: String::new(),
            passed: true,
        }
    }

    fn line(&mut self, s: impl AsRef<str>) {
        self.text.push_str(s.as_ref());
        self.text.push('\n');
    }

    fn check(&mut self, name: &str, ok: bool) {
        self.passed &= ok;
        self.line(format!("{} {name}", if ok { "ok" } else { "FAIL" }));
    }
}

/// `full` is accepted as shorthand for trivial level.
pub fn parse_level(s: &str) -> Result<LevelSpec, CliError> {
    let s = if s == "full" { "1" } else { s };
    s.parse()
        .map_err(|e| CliError::Input(format!("level `{s}`: {e}")))
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Checks the parameters and the torsion-field guard before any subgroup
/// of `GL₂(Z/N)` is enumerated.
pub fn build(
    p: u64,
    ell: u64,
    level: &LevelSpec,
    seed: Option<u64>,
) -> Result<BuiltGraph, CliError> {
    if p <= 3 || !is_prime(p) {
        return Err(BuildError::BadPrime(p).into());
    }
    if !matches!(ell, 2 | 3 | 5 | 7) || ell == p {
        return Err(BuildError::BadEll(ell).into());
    }
    let n = level.level();
    if gcd(n as u64, p * ell) != 1 {
        return Err(BuildError::LevelNotCoprime { n, p, ell }.into());
    }
    let m = order_of_minus_p(p, ell * n as u64).map_err(|e| CliError::Input(e.to_string()))?;
    if 2 * m as usize > MAX_DEGREE {
        return Err(BuildError::Tower(TowerError::ExtensionTooLarge {
            p,
            modulus: ell * n as u64,
            degree: 2 * m as usize,
        })
        .into());
    }
    let h = LevelSubgroup::from_spec(level).map_err(|e| CliError::Input(e.to_string()))?;
    Ok(build_graph_with_seed(p, ell, &h, seed)?)
}

/// `B₁(N) ⊆ H ⊆ B₀(N)`.
pub fn between_borels(h: &LevelSubgroup) -> bool {
    let n = h.level();
    LevelSubgroup::borel1(n).elements().all(|m| h.contains(m))
        && h.elements().all(|m| LevelSubgroup::borel0(n).contains(m))
}

fn adjacency_text(g: &AbstractIsogenyGraph) -> String {
    let rows: Vec<String> = adjacency_matrix(g)
        .iter()
        .map(|r| {
            format!(
                "[{}]",
                r.iter().map(i64::to_string).collect::<Vec<_>>().join(",")
            )
        })
        .collect();
    format!("[{}]", rows.join(","))
}

/// The graph file and its sidecar.
pub fn build_outputs(b: &BuiltGraph, seed: Option<u64>) -> (String, String) {
    let mut side = String::new();
    writeln!(side, "p {}", b.p).unwrap();
    writeln!(side, "ell {}", b.ell).unwrap();
    writeln!(side, "level {}", b.level.spec()).unwrap();
    writeln!(
        side,
        "borel {}",
        if between_borels(&b.level) {
            "yes"
        } else {
            "no"
        }
    )
    .unwrap();
    match seed {
        Some(s) => writeln!(side, "seed {s}").unwrap(),
        None => writeln!(side, "seed none").unwrap(),
    }
    writeln!(side, "adjacency {}", adjacency_text(&b.graph)).unwrap();
    side.push_str(&b.provenance());
    (write_aig(&b.graph), side)
}

pub fn build_summary(b: &BuiltGraph) -> Report {
    let mut r = Report::new();
    r.line(format!("vertices {}", b.graph.num_vertices()));
    r.line(format!("edges {}", b.graph.num_edges()));
    r.line(format!("adjacency {}", adjacency_text(&b.graph)));
    r
}

/// Header fields of a sidecar file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sidecar {
    pub p: u64,
    pub ell: u64,
    pub level: String,
    pub borel: bool,
}

impl Sidecar {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let mut p = None;
        let mut ell = None;
        let mut level = None;
        let mut borel = None;
        for line in text.lines() {
            match line.split_once(' ') {
                Some(("p", v)) => p = v.trim().parse().ok(),
                Some(("ell", v)) => ell = v.trim().parse().ok(),
                Some(("level", v)) => level = Some(v.trim().to_string()),
                Some(("borel", v)) => borel = Some(v.trim() == "yes"),
                _ => {}
            }
        }
        let missing = |k: &str| CliError::Input(format!("sidecar has no valid `{k}` line"));
        Ok(Sidecar {
            p: p.ok_or_else(|| missing("p"))?,
            ell: ell.ok_or_else(|| missing("ell"))?,
            level: level.ok_or_else(|| missing("level"))?,
            borel: borel.ok_or_else(|| missing("borel"))?,
        })
    }
}

pub fn read_graph(text: &str) -> Result<AbstractIsogenyGraph, CliError> {
    parse_aig(text).map_err(|e| CliError::Input(e.to_string()))
}

fn counts_line(counts: &[BigInt]) -> String {
    counts
        .iter()
        .map(BigInt::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn zeta(g: &AbstractIsogenyGraph, series: Option<usize>) -> Result<Report, CliError> {
    let z = ihara_zeta(g)?;
    let (num, den) = z.expanded();
    let mut r = Report::new();
    r.line(format!("zeta {z}"));
    r.line(format!("numerator {num}"));
    r.line(format!("denominator {den}"));
    r.text.push_str(&z.to_text());
    if let Some(n) = series {
        r.line(format!("N {}", counts_line(&series_counts(&z, n)?)));
    }
    Ok(r)
}

/// `N_r` by the determinant formula, by `Tr W₁^r`, and (up to `max_len`)
/// by enumeration.
pub fn counts(g: &AbstractIsogenyGraph, series: usize, max_len: usize) -> Result<Report, CliError> {
    let det = series_counts(&ihara_zeta(g)?, series)?;
    let trace = edge_zeta_series(g, series);
    let mut r = Report::new();
    r.line("r\tdeterminant\ttrace\tenumeration");
    for k in 1..=series {
        let dfs = if k <= max_len {
            let n = count_closed_nb_tailless_with_budget(g, k, WALK_BUDGET)?;
            r.passed &= BigInt::from(n) == det[k - 1];
            n.to_string()
        } else {
            "-".to_string()
        };
        r.passed &= det[k - 1] == trace[k - 1];
        r.line(format!("{k}\t{}\t{}\t{dfs}", det[k - 1], trace[k - 1]));
    }
    r.line(if r.passed { "agree" } else { "MISMATCH" });
    Ok(r)
}

pub fn primes(g: &AbstractIsogenyGraph, max_len: usize) -> Result<Report, CliError> {
    let table = enumerate_primes_with_budget(g, max_len, WALK_BUDGET)?;
    let c = table.c_table();
    let det = series_counts(&ihara_zeta(g)?, max_len)?;
    let mut r = Report::new();
    r.line("r\tc_r\tN_r\tN_r(zeta)");
    for k in 1..=max_len {
        let n = nr_from_primes(&c, k)?;
        r.passed &= BigInt::from(n) == det[k - 1];
        r.line(format!("{k}\t{}\t{n}\t{}", c[&k], det[k - 1]));
    }
    for (len, classes) in &table.primes {
        for class in classes {
            let walk: Vec<String> = class
                .canonical_rotation
                .iter()
                .map(usize::to_string)
                .collect();
            r.line(format!("prime {len} {}", walk.join(" ")));
        }
    }
    Ok(r)
}

/// Closed-form `χ(Γ^{±1})` for `B₀(N)`, side by side with the built graph
/// when it is within the guards.
pub fn chi(p: u64, ell: u64, n: u64, with_graph: bool) -> Result<Report, CliError> {
    let rep = euler_chars_borel(p, ell, n)?;
    let mut r = Report::new();
    let opt = |x: Option<i64>| x.map_or("-".to_string(), |v| v.to_string());
    r.line(format!("p\t{}", rep.p));
    r.line(format!("ell\t{}", rep.ell));
    r.line(format!("N\t{}", rep.n));
    r.line(format!("psi\t{}", rep.psi));
    r.line(format!("eps2\t{}", rep.eps2));
    r.line(format!("eps3\t{}", rep.eps3));
    r.line(format!("gamma\t{}", rep.gamma));
    r.line(format!("delta4\t{}", rep.delta4));
    r.line(format!("delta3\t{}", rep.delta3));
    r.line(format!("nu_ell\t{}", opt(rep.nu_ell)));
    r.line(format!("nu_4ell\t{}", opt(rep.nu_4ell)));
    r.line(format!(
        "class_number\t{}",
        rep.class_number.map_or("-".to_string(), |h| h.to_string())
    ));
    r.line(format!("r\t{}", rep.r));
    r.line(format!("vertices\t{}", rep.num_vertices));
    r.line(format!("chi_plus\t{}", rep.chi_plus));
    r.line(format!("chi_minus\t{}", rep.chi_minus));
    if !with_graph {
        return Ok(r);
    }
    let level = LevelSpec::Borel0(n as u32);
    match build(p, ell, &level, None) {
        Ok(b) => {
            let (plus, minus) = b.graph.orientable_graphs();
            let (cp, cm) = (plus.euler_characteristic(), minus.euler_characteristic());
            r.line(format!("graph_chi_plus\t{cp}"));
            r.line(format!("graph_chi_minus\t{cm}"));
            let as_rat = |x: i64| num_rational::BigRational::from_integer(BigInt::from(x));
            let agree = rep.chi_plus == as_rat(cp) && rep.chi_minus == as_rat(cm);
            r.check("formula matches graph", agree);
        }
        Err(CliError::Guard(msg)) => r.line(format!("graph\tskipped: {msg}")),
        Err(e) => return Err(e),
    }
    Ok(r)
}

/// `#X₀(p)(F_{ℓ^r})` from the graph, and from class numbers when `ℓ^r < p`.
pub fn pointcount(p: u64, ell: u64, r: u32) -> Result<Report, CliError> {
    if r == 0 {
        return Err(CliError::Input("r must be at least 1".into()));
    }
    let b = build(p, ell, &LevelSpec::Full(1), None)?;
    let z = ihara_zeta(&b.graph)?;
    let n_r = series_counts(&z, r as usize)?[r as usize - 1].clone();
    let n_r: i64 = n_r
        .try_into()
        .map_err(|_| CliError::Guard("N_r does not fit in 64 bits".into()))?;
    let (plus, minus) = b.graph.orientable_graphs();
    let (cp, cm) = (plus.euler_characteristic(), minus.euler_characteristic());
    let graph_count = point_count_x0(ell, r, n_r, cp, cm);

    let mut rep = Report::new();
    rep.line(format!(
        "graph\tN_r={n_r}\tchi_plus={cp}\tchi_minus={cm}\tcount={graph_count}"
    ));
    match cycle_set_i(r, p, ell) {
        Ok(_) => {
            let n_cls = class_number_nr(r, p, ell)? as i64;
            let (fp, fm) = euler_chars_borel(p, ell, 1)?.chi();
            let cls_count = point_count_x0(ell, r, n_cls, fp, fm);
            for d in (1..=r).filter(|d| r % d == 0) {
                for o in cycle_set_i(d, p, ell)? {
                    rep.line(format!("I_{d}\tD={}\th={}", o.disc, class_number(o.disc)?));
                }
            }
            rep.line(format!(
                "class_number\tN_r={n_cls}\tchi_plus={fp}\tchi_minus={fm}\tcount={cls_count}"
            ));
            rep.check("routes agree", cls_count == graph_count && n_cls == n_r);
        }
        Err(e @ QuadError::WeightsRegime { .. }) => {
            rep.line(format!("class_number\tdisabled: {e}"));
        }
        Err(e) => return Err(e.into()),
    }
    rep.line(format!("count {graph_count}"));
    Ok(rep)
}

/// Compares `Z(X_{H_p})·Z(X_H)^{−2}·ζ_G` with the numerator `R(u)` read
/// off the cycle structure of `J` and `L`.
pub fn verify_product(
    g: &AbstractIsogenyGraph,
    side: &Sidecar,
    x_h: &LPolyInput,
    x_hp: &LPolyInput,
) -> Result<Report, CliError> {
    if x_h.ell != side.ell || x_hp.ell != side.ell {
        return Err(CliError::Input(format!(
            "graph has ell = {} but the L-polynomials have ell = {} and {}",
            side.ell, x_h.ell, x_hp.ell
        )));
    }
    if !side.borel {
        return Err(CliError::Input(format!(
            "level {} does not lie between B1(N) and B0(N)",
            side.level
        )));
    }
    let zg = ihara_zeta(g)?;
    let lhs = x_hp.zeta().mul(&x_h.zeta().pow(-2)).mul(&zg);
    let predicted = zeta_numerator(g);
    let (ln, ld) = lhs.expanded();
    let (pn, pd) = predicted.expanded();
    let mut r = Report::new();
    r.line(format!("product {ln} / {ld}"));
    r.line(format!("predicted {predicted}"));
    r.line(format!("predicted_expanded {pn} / {pd}"));
    if lhs == predicted {
        r.check("product matches prediction", true);
    } else {
        let (rn, rd) = lhs.div(&predicted).expanded();
        r.line(format!("leftover {rn} / {rd}"));
        r.check("product matches prediction", false);
    }
    Ok(r)
}

/// Quick internal consistency run.
pub fn selftest(seed: u64) -> Result<Report, CliError> {
    let mut r = Report::new();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let b = build(13, 2, &LevelSpec::Full(1), None)?;
    let n = series_counts(&ihara_zeta(&b.graph)?, 3)?;
    r.check("G(13,2) counts 2 6 8", n == [2, 6, 8].map(BigInt::from));

    let b = build(11, 3, &LevelSpec::Full(1), None)?;
    r.check(
        "G(11,3) adjacency",
        adjacency_matrix(&b.graph) == vec![vec![1, 3], vec![2, 2]],
    );

    let mut ok = true;
    for _ in 0..20 {
        let g = random::abstract_graph(&mut rng, 4, 2, 0.3);
        let det = series_counts(&ihara_zeta(&g)?, 6)?;
        ok &= det == edge_zeta_series(&g, 6);
    }
    r.check("determinant formula matches edge traces", ok);

    let mut ok = true;
    for _ in 0..20 {
        let g = random::orientable_regular(&mut rng, 4, 3);
        ok &= zeta_involution_form(&g)? == ihara_zeta(&g)?;
    }
    r.check("involution form on orientable graphs", ok);

    let mut ok = true;
    for _ in 0..50 {
        let f = random::self_map(&mut rng, 6);
        let closed = det_one_plus_sf(&f).map_err(|e| CliError::Internal(e.to_string()))?;
        ok &= closed == FactoredRationalFunction::from_poly(det_one_plus_sf_direct(&f), 1);
        ok &= associated_permutation(&f).is_ok();
    }
    r.check("det(I + sF) closed form", ok);
    Ok(r)
}
