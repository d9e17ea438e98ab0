use std::io::Write;
use std::path::PathBuf;
use std::process::Command;

use pbwcoh_core::{parse_presentation, print_presentation};

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn run(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_pbwcoh")).args(args).output().unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn without_timing(s: &str) -> String {
    s.lines()
        .filter(|l| !l.contains("wall-time"))
        .collect::<Vec<_>>()
        .join("\n")
}

#[test]
fn valid_inputs_exit_zero() {
    for f in [
        "quantum_plane.alg",
        "uqsl3.alg",
        "uqsl3_truncated.alg",
        "qsym_n3_t2.alg",
        "truncated_poly.alg",
    ] {
        let (code, out, err) = run(&["validate", &fixture(f)]);
        assert_eq!(code, 0, "{f}: {out}{err}");
        assert!(out.contains("result: PASS"), "{out}");
    }
}

#[test]
fn malformed_inputs_exit_two() {
    let (code, _, err) = run(&["validate", &fixture("bad_param.alg")]);
    assert_eq!(code, 2);
    assert!(err.contains("line 3") && err.contains("i<j"), "{err}");

    let (code, out, _) = run(&["cohomology", &fixture("bad_degree.alg")]);
    assert_eq!(code, 2);
    assert!(out.contains("FAIL p1_2 degree"), "{out}");

    let (code, _, err) = run(&["validate", "/nonexistent/file.alg"]);
    assert_eq!(code, 2);
    assert!(err.contains("cannot read"), "{err}");

    assert_eq!(run(&["validate", &fixture("uqsl3.alg"), "--bogus"]).0, 2);
    assert_eq!(run(&["cohomology", &fixture("uqsl3.alg"), "--gen", "4"]).0, 2);
    assert_eq!(
        run(&["cocycle-table", &fixture("uqsl3_truncated.alg"), "--gen", "2"]).0,
        2
    );
    assert_eq!(run(&["validate", &fixture("uqsl3.alg"), "--fault", "typo"]).0, 2);
    assert_eq!(run(&["validate", &fixture("uqsl3.alg"), "--assign", "q2_1=3"]).0, 2);
    assert_eq!(run(&["validate", &fixture("uqsl3.alg"), "--assign", "q1_2=0"]).0, 2);
}

#[test]
fn mathematical_failures_exit_one_with_witness() {
    let (code, out, _) = run(&["validate", &fixture("non_confluent.alg")]);
    assert_eq!(code, 1);
    assert!(out.contains("FAIL overlap x3x2x1"), "{out}");

    let (code, out, _) = run(&["full-verify", &fixture("non_confluent.alg")]);
    assert_eq!(code, 1);
    assert!(out.contains("halt: rewriting is not confluent"), "{out}");
    assert!(!out.contains("summary complex"), "later stages must not run: {out}");

    let (code, out, _) = run(&["cocycle-table", &fixture("heisenberg.alg")]);
    assert_eq!(code, 1);
    assert!(out.contains("FAIL [x2^2, x3]_c residue=2*x1*x2"), "{out}");
    assert!(!out.contains("zeta1("), "no table for a non-central power: {out}");
}

#[test]
fn reports_carry_fingerprint_and_command() {
    let path = fixture("uqsl3.alg");
    let (code, out, _) = run(&["resolution-check", &path, "--max-degree", "3"]);
    assert_eq!(code, 0, "{out}");
    use sha2::Digest;
    let digest = hex::encode(sha2::Sha256::digest(std::fs::read(&path).unwrap()));
    assert!(out.contains(&format!("fingerprint: sha256:{digest}")), "{out}");
    assert!(out.contains("command: pbwcoh resolution-check"), "{out}");
    assert!(out.contains("summary complex: checked="), "{out}");
    assert!(out.lines().any(|l| l.starts_with("wall-time: ")));
}

#[test]
fn output_is_deterministic() {
    for args in [
        vec!["cocycle-table", "uqsl3_truncated.alg", "--exp-bound", "5"],
        vec!["cohomology", "qsym_n3_t2.alg", "--max-degree", "4", "--format", "tsv"],
        vec!["full-verify", "uqsl3.alg", "--max-degree", "3"],
    ] {
        let path = fixture(args[1]);
        let mut a = args.clone();
        a[1] = &path;
        let first = run(&a);
        let second = run(&a);
        assert_eq!(first.0, second.0);
        assert_eq!(without_timing(&first.1), without_timing(&second.1));
    }
}

#[test]
fn tsv_rows() {
    let (code, out, _) = run(&[
        "cohomology",
        &fixture("quantum_plane.alg"),
        "--max-degree",
        "2",
        "--format",
        "tsv",
    ]);
    assert_eq!(code, 0);
    let rows: Vec<&str> = out.lines().filter(|l| !l.starts_with('#')).collect();
    assert!(rows.contains(&"0\t1"));
    assert!(rows.contains(&"1\teta1"));
    assert!(rows.contains(&"2\teta1*eta2"));
    assert!(rows.contains(&"hilbert\t1\t2\t1"));
    assert!(rows.iter().any(|r| r.starts_with("relations\tOK\t")));

    let (_, out, _) = run(&["cocycle-table", &fixture("truncated_poly.alg"), "--format", "tsv"]);
    assert!(out.lines().any(|l| l == "x1\tx1^3\t1"), "{out}");
}

#[test]
fn numeric_assignment() {
    let (code, out, _) = run(&[
        "full-verify",
        &fixture("uqsl3_truncated.alg"),
        "--max-degree",
        "4",
        "--assign",
        "q1_2=2/3",
    ]);
    assert_eq!(code, 0, "{out}");
    let symbolic = out
        .lines()
        .filter(|l| l.starts_with("FAIL") || l.contains("residue="))
        .count();
    assert_eq!(symbolic, 0, "{out}");
    assert!(out.contains("summary zeta~1 on B"), "{out}");
    assert!(out.contains("--assign q1_2=2/3"));

    let (code, out, _) = run(&["cocycle-table", &fixture("uqsl3_truncated.alg"), "--assign", "q1_2=2/3"]);
    assert_eq!(code, 0, "{out}");
    let values: Vec<&str> = out.lines().filter(|l| l.starts_with("  zeta1(")).collect();
    assert!(!values.is_empty());
    assert!(values.iter().all(|l| !l.contains("q1_2")), "{values:?}");
    assert!(values.contains(&"  zeta1(x3, x1^2*x2) = -3/2"), "{values:?}");
}

#[test]
fn gr_round_trips() {
    let (code, out, _) = run(&["gr", &fixture("uqsl3.alg")]);
    assert_eq!(code, 0);
    let body: String = out
        .lines()
        .filter(|l| {
            !l.starts_with("command:")
                && !l.starts_with("fingerprint:")
                && !l.starts_with("result:")
                && !l.starts_with("wall-time:")
        })
        .map(|l| format!("{l}\n"))
        .collect();
    let gr = parse_presentation(&body).unwrap();
    assert!(!gr.has_lower_terms());
    assert_eq!(print_presentation(&gr), body);

    let mut file = tempfile::NamedTempFile::new().unwrap();
    file.write_all(body.as_bytes()).unwrap();
    let (code, out, _) = run(&["validate", file.path().to_str().unwrap()]);
    assert_eq!(code, 0, "{out}");
}

#[test]
fn library_entry_point() {
    let out = pbwcoh_cli::run([
        "pbwcoh",
        "chainmap-check",
        &fixture("uqsl3_truncated.alg"),
        "--max-degree",
        "4",
        "--gen",
        "1",
    ]);
    assert_eq!(out.code, 0, "{}", out.stdout);
    assert!(out.stdout.contains("summary chain-map xi1"), "{}", out.stdout);
    let help = pbwcoh_cli::run(["pbwcoh", "--help"]);
    assert_eq!(help.code, 0);
    assert!(help.stdout.contains("full-verify"));
}
