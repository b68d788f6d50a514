use std::path::Path;
use std::process::Command;

use gerbe_cli::run_args;

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

fn generated(dir: &Path, kind: &str, seed: &str) -> String {
    let out = dir.join(format!("{kind}-{seed}.txt"));
    let o = run_args(["gerbe", "generate", "--seed", seed, "--kind", kind, "-o", out.to_str().unwrap()]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    out.to_str().unwrap().to_string()
}

const TRIVIAL_WITH_BAD_G: &str = "\
[ring]
dim = 2
vars = x1, x2

[crossed]
instance = INNER
size = 2

[cover]
n = 3

[g 0 1 2]
{mat = [[1, x1], [0, 1]], inv = [[1, -x1], [0, 1]]}
";

#[test]
fn corrupted_file_fails_at_coc1() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "bad.txt", TRIVIAL_WITH_BAD_G);
    let o = run_args(["gerbe", "check", &f]);
    assert_eq!(o.code, 1);
    assert!(o.stdout.contains("FAIL coc1 (0,1,2)"), "{}", o.stdout);
    let rep = o.report.unwrap();
    assert!(rep.failures().any(|r| r.equation == "coc1" && r.tuple == [0, 1, 2]));
}

#[test]
fn parse_errors_exit_2_with_position() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "broken.txt", "[ring]\ndim = 2\nvars = x1, x2\n\n[crossed]\ninstance = INNER\nsize = 2\n\n[cover]\nn = 3\n\n[m 0]\ndeg=1 side=A {(1): [[1, ]]}\n");
    let o = run_args(["gerbe", "check", &f]);
    assert_eq!(o.code, 2);
    assert!(o.stderr.contains("line 13"), "{}", o.stderr);
    assert_eq!(run_args(["gerbe", "check", "/nonexistent/file"]).code, 2);
    assert_eq!(run_args(["gerbe", "frobnicate"]).code, 2);
}

#[test]
fn generated_data_pass_every_command() {
    let dir = tempfile::tempdir().unwrap();
    let g = generated(dir.path(), "gerbe", "4");
    let by = generated(dir.path(), "gerbe", "5");
    let shift = generated(dir.path(), "shift", "4");
    let bundle = generated(dir.path(), "bundle", "4");
    for args in [
        vec!["gerbe", "check", &g],
        vec!["gerbe", "coboundary", &g, "--by", &by],
        vec!["gerbe", "remark", &g, "--by", &shift],
        vec!["gerbe", "bundle", &bundle],
        vec!["gerbe", "check", &bundle],
    ] {
        let o = run_args(args.clone());
        assert_eq!(o.code, 0, "{args:?}: {}{}", o.stdout, o.stderr);
    }
    // The reduction is only defined for r ≡ 1, θ ≡ 1.
    assert_eq!(run_args(["gerbe", "remark", &g, "--by", &by]).code, 2);
}

#[test]
fn curvature_fills_derived_sections() {
    let dir = tempfile::tempdir().unwrap();
    let g = generated(dir.path(), "gerbe", "6");
    let text = std::fs::read_to_string(&g).unwrap();
    let stripped: String = text
        .split("\n\n")
        .filter(|s| !["[nu", "[delta", "[omega3"].iter().any(|h| s.trim_start().starts_with(h)))
        .collect::<Vec<_>>()
        .join("\n\n");
    assert!(!stripped.contains("[nu 0]"));
    let f = write(dir.path(), "stripped.txt", &stripped);
    let o = run_args(["gerbe", "curvature", &f]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    assert_eq!(o.stdout, text);
}

#[test]
fn coboundary_writes_transported_dataset() {
    let dir = tempfile::tempdir().unwrap();
    let g = generated(dir.path(), "gerbe", "8");
    let by = generated(dir.path(), "gerbe", "9");
    let out = dir.path().join("primed.txt");
    let o = run_args(["gerbe", "coboundary", &g, "--by", &by, "-o", out.to_str().unwrap()]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    assert_eq!(run_args(["gerbe", "check", out.to_str().unwrap()]).code, 0);
}

#[test]
fn suites_and_axioms_run() {
    let o = run_args(["gerbe", "identities", "--trials", "2", "--dim", "2", "--size", "2", "--degree", "1"]);
    assert_eq!(o.code, 0, "{}", o.stdout);
    let o = run_args(["gerbe", "equiv", "--one-forms", "2", "--two-forms", "1", "--dim", "2"]);
    assert_eq!(o.code, 0, "{}", o.stdout);
    for inst in ["INNER", "ABELIAN"] {
        assert_eq!(run_args(["gerbe", "axioms", "--instance", inst, "--samples", "3"]).code, 0);
    }
    assert_eq!(run_args(["gerbe", "axioms", "--instance", "NOPE"]).code, 2);
}

#[test]
fn desk_bounds_only_warn() {
    let o = run_args(["gerbe", "generate", "--cover", "5", "--dim", "2", "--size", "1", "--degree", "0"]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    assert!(o.stderr.starts_with("warning:"));
}

#[test]
fn binary_exit_codes() {
    let exe = env!("CARGO_BIN_EXE_gerbe");
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "bad.txt", TRIVIAL_WITH_BAD_G);
    let status = |args: &[&str]| Command::new(exe).args(args).output().unwrap().status.code();
    assert_eq!(status(&["check", &f]), Some(1));
    assert_eq!(status(&["check"]), Some(2));
    assert_eq!(status(&["--help"]), Some(0));
    let a = Command::new(exe).args(["generate", "--seed", "2"]).output().unwrap();
    let b = Command::new(exe).args(["generate", "--seed", "2"]).output().unwrap();
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}
