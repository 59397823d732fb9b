use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

use permut3::make_tower;
use permut3::ppcheck::sweep::case22_family;

fn permut3(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_permut3"))
        .args(args)
        .env_remove("PERMUT3_FIXTURES")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    let mut input = child.stdin.take().unwrap();
    input.write_all(stdin.unwrap_or("").as_bytes()).unwrap();
    drop(input);
    child.wait_with_output().unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("permut3-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn json(bytes: &[u8]) -> serde_json::Value {
    serde_json::from_slice(bytes).unwrap()
}

#[test]
fn full_sweep_over_f9() {
    let out = scratch("n1.jsonl");
    let o = permut3(&["sweep", "--n", "1", "--mode", "full", "--out", out.to_str().unwrap()], None);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let rows = std::fs::read_to_string(&out).unwrap();
    assert_eq!(rows.lines().count(), 64);
    assert!(rows.lines().all(|l| json(l.as_bytes())["agree"] == true));
    let summary = json(&std::fs::read(out.with_extension("jsonl.summary.json")).unwrap());
    assert_eq!(summary["summary"]["pairs_tested"], 64);
    assert_eq!(summary["summary"]["mismatches"], 0);
}

#[test]
fn seeded_samples_are_reproducible() {
    let (a, b) = (scratch("s-a.jsonl"), scratch("s-b.jsonl"));
    for (p, jobs) in [(&a, "1"), (&b, "4")] {
        let args = ["sweep", "--n", "2", "--mode", "sample", "--sample-size", "300", "--seed", "7", "--jobs", jobs];
        let o = permut3(&[&args[..], &["--out", p.to_str().unwrap()]].concat(), None);
        assert_eq!(o.status.code(), Some(0));
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
}

#[test]
fn sample_mode_needs_a_seed() {
    let o = permut3(&["sweep", "--n", "2", "--mode", "sample", "--out", scratch("x.jsonl").to_str().unwrap()], None);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn replay_reports_the_known_mismatches() {
    let o = permut3(&["replay"], None);
    assert_eq!(o.status.code(), Some(1));
    let report = json(&o.stdout);
    assert_eq!(report["schema"], "1");
    let failed: Vec<&str> = report["steps"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|s| s["status"] == "fail")
        .map(|s| s["step"].as_str().unwrap())
        .collect();
    assert_eq!(failed, ["3.15", "3.56-res-S1", "3.56-res-S2", "after-3.135-P11", "after-3.135-Q11"]);
}

#[test]
fn family_pair_is_a_permutation() {
    let ctx = make_tower(3).unwrap();
    let (a, b) = case22_family(&ctx)[0];
    let o = permut3(&["pair", "--n", "3", "--a", &ctx.format(a), "--b", &ctx.format(b)], None);
    assert_eq!(o.status.code(), Some(0));
    let r = json(&o.stdout);
    assert_eq!((r["pp"].clone(), r["cond14"].clone(), r["pp_bruteforce"].clone()), (true.into(), true.into(), true.into()));
}

#[test]
fn poly_queries() {
    let o = permut3(&["poly", "irreducible", "--var", "X"], Some("X^7 - X^5 - 1\n"));
    assert_eq!(String::from_utf8_lossy(&o.stdout).trim(), "true");
    let o = permut3(&["poly", "irreducible", "--var", "X"], Some("X^4 - 1\n"));
    assert_eq!(String::from_utf8_lossy(&o.stdout).trim(), "false");
    // Res(x^2 + 1, x - 1) = (1)^2 + 1
    let o = permut3(&["poly", "resultant", "--var", "x"], Some("x^2 + 1\n\nx - 1\n"));
    assert_eq!(String::from_utf8_lossy(&o.stdout).trim(), "-1");
    let o = permut3(&["poly", "gcd", "--var", "x"], Some("x^2 - 1\n\nx^2 + x\n"));
    assert_eq!(String::from_utf8_lossy(&o.stdout).trim(), "x + 1");
    let o = permut3(&["poly", "reduce", "--var", "x"], Some("x^5 + y\n\nx^2 - y\n"));
    assert_eq!(String::from_utf8_lossy(&o.stdout).trim(), "x*y^2 + y");
}

#[test]
fn parse_errors_carry_positions() {
    let o = permut3(&["poly", "gcd", "--var", "x"], Some("x^2 + 1\n\n\nx^3 +* x\n"));
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("<stdin>:4:6:"), "{err}");
}
