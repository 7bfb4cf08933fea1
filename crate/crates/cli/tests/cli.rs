use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

fn isozeta(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_isozeta"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn path(dir: &TempDir, name: &str) -> String {
    dir.path().join(name).to_str().unwrap().to_string()
}

fn build(dir: &TempDir, name: &str, args: &[&str]) -> String {
    let out = path(dir, name);
    let mut full: Vec<&str> = vec!["build"];
    full.extend_from_slice(args);
    full.extend_from_slice(&["--out", &out]);
    let o = isozeta(&full);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    out
}

#[test]
fn build_is_byte_for_byte_reproducible() {
    let dir = TempDir::new().unwrap();
    let a = build(&dir, "a.aig", &["11", "3", "full"]);
    let b = build(&dir, "b.aig", &["11", "3", "full"]);
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
    assert_eq!(
        fs::read(format!("{a}.prov")).unwrap(),
        fs::read(format!("{b}.prov")).unwrap()
    );
    let side = fs::read_to_string(format!("{a}.prov")).unwrap();
    assert!(side.contains("adjacency [[1,3],[2,2]]"));
}

#[test]
fn seeded_builds_are_reproducible() {
    let dir = TempDir::new().unwrap();
    let a = build(&dir, "a.aig", &["13", "2", "full", "--seed", "7"]);
    let b = build(&dir, "b.aig", &["13", "2", "full", "--seed", "7"]);
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
}

#[test]
fn build_to_stdout_matches_file() {
    let dir = TempDir::new().unwrap();
    let a = build(&dir, "a.aig", &["13", "2", "full"]);
    let o = isozeta(&["build", "13", "2", "full"]);
    assert_eq!(stdout(&o), fs::read_to_string(a).unwrap());
}

#[test]
fn zeta_prints_series_and_is_deterministic() {
    let dir = TempDir::new().unwrap();
    let g = build(&dir, "g.aig", &["13", "2", "full"]);
    let o1 = isozeta(&["zeta", &g, "--series", "3"]);
    let o2 = isozeta(&["zeta", &g, "--series", "3"]);
    assert_eq!(o1.status.code(), Some(0));
    assert_eq!(o1.stdout, o2.stdout);
    assert!(stdout(&o1).lines().any(|l| l == "N 2 6 8"));
}

#[test]
fn empty_graph_has_zeta_one() {
    let dir = TempDir::new().unwrap();
    let g = path(&dir, "empty.aig");
    fs::write(&g, "AIG v1\nvertices 1\nedges 0\nL 0\n").unwrap();
    let o = isozeta(&["zeta", &g, "--series", "2"]);
    let text = stdout(&o);
    assert!(text.starts_with("zeta 1\n"));
    assert!(text.contains("N 0 0"));
}

#[test]
fn counts_and_primes_agree() {
    let dir = TempDir::new().unwrap();
    let g = build(&dir, "g.aig", &["11", "3", "full"]);
    let o = isozeta(&["counts", &g, "--series", "6", "--max-len", "5"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).ends_with("agree\n"));
    let o = isozeta(&["primes", &g, "--max-len", "4"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn verify_product_for_level_one() {
    let dir = TempDir::new().unwrap();
    let g = build(&dir, "g.aig", &["11", "3", "full"]);
    let xh = path(&dir, "x1");
    let xhp = path(&dir, "x11");
    fs::write(&xh, "lpoly ell=3 label=X0(1)\n1\n").unwrap();
    fs::write(&xhp, "lpoly ell=3 label=X0(11)\n1 1 3\n").unwrap();
    let o = isozeta(&["verify-product", &g, &xh, &xhp]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));

    // a wrong numerator is a mathematical mismatch
    fs::write(&xhp, "lpoly ell=3 label=wrong\n1 2 3\n").unwrap();
    let o = isozeta(&["verify-product", &g, &xh, &xhp]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("leftover"));

    // ell disagrees with the graph
    fs::write(&xhp, "lpoly ell=2 label=X0(11)\n1 1 3\n").unwrap();
    let o = isozeta(&["verify-product", &g, &xh, &xhp]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn pointcount_routes() {
    let o = isozeta(&["pointcount", "11", "2", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).ends_with("count 5\n"));
    // 2^4 > 11: only the graph route
    let o = isozeta(&["pointcount", "11", "2", "4"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("disabled"));
    // genus zero: ℓ^r + 1 points
    let o = isozeta(&["pointcount", "13", "2", "2"]);
    assert!(stdout(&o).ends_with("count 5\n"));
}

#[test]
fn chi_reports_both_routes() {
    let o = isozeta(&["chi", "11", "2", "1"]);
    let text = stdout(&o);
    assert_eq!(o.status.code(), Some(0));
    assert!(text.contains("chi_plus\t1\n") && text.contains("chi_minus\t0\n"));
    assert!(text.contains("ok formula matches graph"));
}

#[test]
fn exit_codes() {
    assert_eq!(
        isozeta(&["build", "12", "2", "full"]).status.code(),
        Some(2)
    );
    assert_eq!(
        isozeta(&["build", "13", "2", "borel0:13"]).status.code(),
        Some(2)
    );
    assert_eq!(
        isozeta(&["build", "13", "2", "nonsense"]).status.code(),
        Some(2)
    );
    assert_eq!(
        isozeta(&["build", "13", "3", "borel0:11"]).status.code(),
        Some(3)
    );
    assert_eq!(
        isozeta(&["zeta", "/nonexistent/graph.aig"]).status.code(),
        Some(2)
    );
    assert_eq!(isozeta(&["chi", "11", "2", "11"]).status.code(), Some(2));

    let dir = TempDir::new().unwrap();
    let g = path(&dir, "bad.aig");
    fs::write(&g, "AIG v1\nvertices 1\nedges 1\n0 0 1 0\nL 0\n").unwrap();
    let o = isozeta(&["zeta", &g]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line"));
}

#[test]
fn selftest_passes() {
    let o = isozeta(&["selftest", "--seed", "3"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(!stdout(&o).contains("FAIL"));
    assert!(Path::new(env!("CARGO_BIN_EXE_isozeta")).exists());
}
