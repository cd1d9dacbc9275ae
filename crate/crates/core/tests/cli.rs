//! Golden tests for the `cubecx` binary: report text and exit codes.

use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Stdio};

fn example(name: &str) -> String {
    let root = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../docs/examples").join(name);
    root.to_str().expect("utf-8 path").to_string()
}

/// Runs the binary, feeding `stdin` if given; returns (exit code, stdout, stderr).
fn cubecx(args: &[&str], stdin: Option<&str>) -> (i32, String, String) {
    let mut child = Command::new(env!("CARGO_BIN_EXE_cubecx"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child.stdin.take().expect("piped").write_all(stdin.unwrap_or("").as_bytes()).expect("stdin");
    let out = child.wait_with_output().expect("binary exits");
    (
        out.status.code().expect("exit code"),
        String::from_utf8(out.stdout).expect("utf-8"),
        String::from_utf8(out.stderr).expect("utf-8"),
    )
}

#[test]
fn gen_cube() {
    let (code, out, _) = cubecx(&["gen", "--kind", "cube", "--k", "3"], None);
    assert_eq!(code, 0);
    assert_eq!(out, "cubecx 1\n[pocset]\npairs 3\n");
}

#[test]
fn gen_forms_agree() {
    let a = cubecx(&["gen", "--kind", "grid", "--a", "2", "--b", "3"], None);
    let b = cubecx(&["gen", "--spec", "grid:2x3"], None);
    assert_eq!(a, b);
    let t = cubecx(&["gen", "--kind", "tripod", "--k", "2"], None).1;
    let file = std::fs::read_to_string(example("tripod2.cx")).unwrap();
    assert!(file.ends_with(&t));
}

#[test]
fn gen_is_seeded() {
    let a = cubecx(&["gen", "--kind", "random-closure", "--k", "6", "--seeds", "5", "--seed", "9"], None);
    let b = cubecx(&["gen", "--kind", "random-closure", "--k", "6", "--seeds", "5", "--seed", "9"], None);
    assert_eq!(a, b);
    assert_eq!(a.0, 0);
}

#[test]
fn cocycle_on_tripod() {
    let (code, out, _) = cubecx(&["cocycle", "--triple", "0,3,5", "--n", "2", "--p", "1", &example("tripod2.cx")], None);
    assert_eq!(code, 0);
    assert!(out.starts_with("support 6\nl1 6\nnorm p=1 6.000000\n[cocycle]\n"), "{out}");
    assert_eq!(out.lines().skip(4).count(), 6);
}

#[test]
fn cocycle_reads_stdin() {
    let doc = std::fs::read_to_string(example("tripod2.cx")).unwrap();
    let (code, out, _) = cubecx(&["cocycle", "--triple", "0,3,5", "--n", "2"], Some(&doc));
    assert_eq!(code, 0);
    assert!(out.starts_with("support 6\n"));
}

#[test]
fn median_and_validate() {
    let (code, out, _) = cubecx(&["median", "--triple", "0,2,4", &example("tripod2.cx")], None);
    assert_eq!((code, out.lines().next()), (0, Some("median 6 111111")));
    let (code, out, _) = cubecx(&["validate", &example("square_graph.cx")], None);
    assert_eq!(code, 0);
    assert_eq!(out, "pairs 2\ndimension 2\nvertices 4\nedges 4\ninterval yes\nautomorphisms 0\nvalid\n");
}

#[test]
fn essential_and_balanced() {
    let doc = example("tripod1_action.cx");
    let (code, out, _) = cubecx(&["essential", "--radius", "0", &doc], None);
    assert_eq!(code, 0);
    assert_eq!(out, "orbit 0 1 2\nessential 0 1 2\nnon-essential\ninvariant cube at 3 directions\n");
    let (code, out, _) = cubecx(&["balanced", &doc], None);
    assert_eq!(code, 0);
    assert_eq!(
        out,
        "H_mu\nH_plus 0 2 4\nH_minus 1 3 5\nterminal min\nterminal max\nsubcomplex vertices 1 interval 3 3\n"
    );
}

#[test]
fn decompose_grid() {
    let grid = cubecx(&["gen", "--spec", "grid:2x2"], None).1;
    let (code, out, _) = cubecx(&["decompose", "--triple", "0,1,3"], Some(&grid));
    assert_eq!(code, 0);
    assert!(out.starts_with("factors 2\nfactor 0 1\nfactor 2 3\n"), "{out}");
    assert!(out.ends_with("direct sum agrees\n"));
}

#[test]
fn tournament_exit_codes() {
    let doc = example("three_cycle.cx");
    assert_eq!(cubecx(&["tournament", "--d", "1", &doc], None).0, 0);
    let (code, _, err) = cubecx(&["tournament", "--d", "2", &doc], None);
    assert_eq!(code, 2);
    assert!(err.starts_with("error: tournament:"), "{err}");
    let (code, out, _) = cubecx(&["tournament", "--d", "2", "--force", &doc], None);
    assert_eq!(code, 0);
    assert!(out.contains("transitive 0 1\n"));
    let (code, out, _) = cubecx(&["tournament", "--d", "3", "--force", &doc], None);
    assert_eq!(code, 1);
    assert!(out.contains("failed: tournament: greedy extraction stopped after 2 of 3"));
}

#[test]
fn transfer_shifts() {
    let (code, out, _) = cubecx(&["transfer", &example("shift.cx")], None);
    assert_eq!((code, out.as_str()), (0, "tr 0 -1\ntr 1 3\n"));
}

#[test]
fn input_errors_exit_two() {
    let (code, _, err) = cubecx(&["validate"], Some("cubecx 1\n[pocset]\npairs 2\n99 0\n"));
    assert_eq!(code, 2);
    assert_eq!(err, "error: document: line 4: id 99 out of range (limit 4)\n");
    let (code, _, err) = cubecx(&["validate"], Some("cubecx 1\n[widgets]\n"));
    assert_eq!(code, 2);
    assert!(err.contains("unknown section `widgets`"));
    let (code, _, err) = cubecx(&["validate"], Some("cubecx 1\n[measure]\n0 1/2\n1 1/4\n"));
    assert_eq!(code, 2);
    assert!(err.starts_with("error: document: measure:"), "{err}");
    assert_eq!(cubecx(&["cocycle", "--triple", "0,3", &example("tripod2.cx")], None).0, 2);
    assert_eq!(cubecx(&["cocycle", "--triple", "0,3,70", &example("tripod2.cx")], None).0, 2);
    assert_eq!(cubecx(&["gen", "--kind", "torus", "--k", "2"], None).0, 2);
    assert_eq!(cubecx(&["validate", "/nonexistent/file.cx"], None).0, 2);
}

#[test]
fn invalid_pocset_is_a_violation() {
    // 0 ⊊ 2 and 2 ⊊ 0 form a cycle
    let (code, out, _) = cubecx(&["validate"], Some("cubecx 1\n[pocset]\npairs 2\n0 2\n2 0\n"));
    assert_eq!(code, 1);
    assert!(out.starts_with("invalid: "), "{out}");
}

#[test]
fn verify_is_deterministic() {
    let args = ["verify", "--seed", "42", "--complexes", "4", "--tuples", "20"];
    let a = cubecx(&args, None);
    let b = cubecx(&args, None);
    assert_eq!(a, b);
    assert_eq!(a.0, 0);
    assert!(a.1.starts_with("verify seed 42 complexes 4 tuples 20 max_k 7\n"));
    assert!(a.1.ends_with("16 checks, 0 failed\n"));
    assert!(!a.1.contains("FAIL"));
}
