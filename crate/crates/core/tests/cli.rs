use std::path::PathBuf;
use std::process::Command;

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn semican(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_semican"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().expect("exit code"),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

#[test]
fn check_module_statuses() {
    let (code, out, _) = semican(&["check-module", &data("a2_za.module")]);
    assert_eq!(code, 0);
    assert!(out.ends_with("OK\n"), "{out}");

    let (code, out, _) = semican(&["check-module", &data("a2_bad_relation.module")]);
    assert_eq!(code, 1);
    assert!(out.contains("relation fails at vertex 1"), "{out}");

    let (code, _, err) = semican(&["check-module", &data("malformed.module")]);
    assert_eq!(code, 2);
    assert!(err.contains("line 3"), "{err}");

    let (code, _, _) = semican(&["check-module", &data("no_such_file.module")]);
    assert_eq!(code, 2);

    let (code, out, _) = semican(&["check-module", &data("a3_relation.module")]);
    assert_eq!(code, 0, "{out}");
}

#[test]
fn check_module_machine_output() {
    let (code, out, _) = semican(&["--machine", "check-module", &data("a2_bad_relation.module")]);
    assert_eq!(code, 1);
    assert_eq!(
        out,
        "relation_failures = 1 2\nloewy_length = none\nvalid = false\n"
    );
}

#[test]
fn serre_poly_examples() {
    let (code, out, _) = semican(&["serre-poly", &data("pt_zero2.module"), "i i"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().next(), Some("1 + q^2"));
    assert!(out.contains("sample primes: 2 3\n"), "{out}");

    let (_, out, _) = semican(&["serre-poly", &data("a2_za.module"), "2 1"]);
    assert_eq!(out.lines().next(), Some("1"));
    let (_, out, _) = semican(&["serre-poly", &data("a2_za.module"), "1 2"]);
    assert_eq!(out.lines().next(), Some("0"));

    let (code, out, _) = semican(&[
        "--machine",
        "--degree-bound",
        "1",
        "serre-poly",
        &data("pt_zero2.module"),
        "i i",
    ]);
    assert_eq!(code, 0);
    assert_eq!(
        out,
        "serre_polynomial = 1 + q^2\ncounting_polynomial = 1 + t\nsample_primes = 2 3\nsample_counts = 3 4\nheld_out = 5 (count 6)\n"
    );
}

#[test]
fn serre_poly_errors() {
    let (code, _, err) = semican(&["serre-poly", &data("a2_za.module"), "1"]);
    assert_eq!(code, 2, "{err}");
    // a degree bound that is too small cannot reproduce p + 1 at the held-out prime
    let (code, _, err) = semican(&[
        "--degree-bound",
        "0",
        "serre-poly",
        &data("pt_zero2.module"),
        "i i",
    ]);
    assert_eq!(code, 3, "{err}");
    let (code, _, _) = semican(&["serre-poly", &data("a2_bad_relation.module"), "2 1"]);
    assert_eq!(code, 2);
}

#[test]
fn dim_lambda_command() {
    let (code, out, _) = semican(&[
        "--degree-bound",
        "3",
        "dim-lambda",
        &data("ij.quiver"),
        "i j i",
    ]);
    assert_eq!(code, 0);
    assert!(
        out.starts_with("d[i j i]: 2\npoint count: 2*t^2 + t - 1\n"),
        "{out}"
    );
    let (code, _, _) = semican(&["--max-enum", "10", "dim-lambda", "ij", "i j i"]);
    assert_eq!(code, 2);
}

#[test]
fn induction_value_command() {
    let (code, out, _) = semican(&["induction-value", &data("z1.module"), "i i j"]);
    assert_eq!((code, out.as_str()), (0, "q^-3 + q^-1\n"));
    let (_, out, _) = semican(&["induction-value", &data("z2.module"), "i j i", "--d", "7"]);
    assert_eq!(out, "q^-7\n");
}

#[test]
fn delta_command() {
    assert_eq!(semican(&["delta", &data("simple_i.component")]).1, "[i]\n");
    assert_eq!(
        semican(&["delta", &data("a2_a.component")]).1,
        "q^-1*[2 1]\n"
    );
    assert_eq!(
        semican(&["delta", &data("a2_abar.component")]).1,
        "q^-1*[1 2]\n"
    );
    assert_eq!(
        semican(&["delta", &data("z1.component")]).1,
        "(q^-3 + q^-1)*[i i j] + q^-2*[i j i]\n"
    );
    let (code, _, err) = semican(&["delta", &data("bad_cache.component")]);
    assert_eq!(code, 2);
    assert!(err.contains("cached d[2 1] = 5"), "{err}");
}

#[test]
fn shuffle_command() {
    assert_eq!(
        semican(&["shuffle", "[1] o [2]", "--quiver", "A2"]).1,
        "q*[1 2] + [2 1]\n"
    );
    assert_eq!(semican(&["shuffle", "[i] o [i]"]).1, "(q^-2 + 1)*[i i]\n");
    assert_eq!(semican(&["shuffle", "[] o [1]"]).1, "[1]\n");
    assert_eq!(semican(&["shuffle", "[1 o [2]"]).0, 2);
}

#[test]
fn verify_suites() {
    for suite in ["factorials", "oracle", "shuffle-axioms", "serre-example"] {
        let (code, out, _) = semican(&["verify", suite]);
        assert_eq!(code, 0, "{suite}: {out}");
        assert!(!out.contains("FAIL"), "{out}");
    }
    let (code, out, _) = semican(&["verify", "serre-example"]);
    assert_eq!(code, 0);
    assert!(
        out.contains("PASS correction g(q) at 0: expected -q^-3 + q, computed -q^-3 + q"),
        "{out}"
    );
    assert_eq!(semican(&["verify", "everything"]).0, 2);
}

#[test]
fn output_is_deterministic() {
    let args = ["--machine", "verify", "oracle"];
    assert_eq!(semican(&args), semican(&args));
}

#[test]
fn module_quiver_paths_resolve_relative_to_the_file() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(
        dir.path().join("two.quiver"),
        "vertices: x y\narrow e: x -> y\n",
    )
    .unwrap();
    std::fs::write(
        dir.path().join("m.module"),
        "quiver: two.quiver\ndim: x=1 y=1\nmatrix e: [[1]]\n",
    )
    .unwrap();
    let path = dir.path().join("m.module");
    let (code, out, _) = semican(&["serre-poly", path.to_str().unwrap(), "y x"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().next(), Some("1"));
}
