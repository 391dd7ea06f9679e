use std::process::{Command, Output};

fn modsqrt(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_modsqrt"))
        .args(args)
        .output()
        .expect("spawn modsqrt")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).trim_end().to_owned()
}

#[test]
fn sqrt_with_strict_witness() {
    let o = modsqrt(&["sqrt", "-p", "97", "-a", "2", "-w", "5"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "14 83");
}

#[test]
fn sqrt_with_searched_relative_witness() {
    let o = modsqrt(&[
        "sqrt",
        "-p",
        "97",
        "-a",
        "6",
        "--witness-mode",
        "relative",
        "--seed",
        "7",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "43 54");
}

#[test]
fn negative_input_is_reduced() {
    let o = modsqrt(&["sqrt", "-p", "13", "-a", "-1", "-w", "2"]);
    assert_eq!(stdout(&o), "5 8");
}

#[test]
fn every_algorithm_agrees() {
    for algo in ["proposed", "tonelli", "direct34"] {
        let o = modsqrt(&["sqrt", "-p", "43", "-a", "6", "--algo", algo, "--seed", "1"]);
        assert_eq!(stdout(&o), "7 36", "{algo}");
    }
}

#[test]
fn prime_power_root() {
    let o = modsqrt(&["sqrt-pk", "-p", "41", "-k", "3", "-a", "5"]);
    assert_eq!(stdout(&o), "3226 65695");
    let o = modsqrt(&["sqrt-pk", "-p", "43", "-k", "3", "-a", "43"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn classify_non_residue_is_success() {
    let o = modsqrt(&["classify", "-p", "43", "-a", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "non-residue");
}

#[test]
fn composite_modulus_rejected() {
    let o = modsqrt(&["sqrt", "-p", "91", "-a", "4"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("not an odd prime"));
}

#[test]
fn wrong_class_for_direct_formula() {
    let o = modsqrt(&["sqrt", "-p", "97", "-a", "2", "--algo", "direct34"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn unknown_flag_exits_one() {
    let o = modsqrt(&["sqrt", "-p", "97", "-a", "2", "--frobnicate"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(o.stdout.is_empty());
}

#[test]
fn enumerate_and_census() {
    let o = modsqrt(&["enumerate", "-p", "41", "-a", "2", "-w", "3"]);
    assert_eq!(stdout(&o), "k=2\n8 17 31 30");
    let o = modsqrt(&["census", "-p", "13"]);
    let text = stdout(&o);
    assert!(text.contains("f=1 6"));
    assert!(text.contains("closed-form 5/8 0.625000"));
    assert!(text.contains("exhaustive 45/72"));
}

#[test]
fn json_output() {
    let o = modsqrt(&["--json", "fvalue", "-p", "97", "-a", "2"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["f"], 3);
    assert_eq!(v["r"], 5);
}

#[test]
fn seeded_runs_are_deterministic() {
    let args = ["witness", "-p", "7681", "--seed", "42"];
    let first = stdout(&modsqrt(&args));
    for _ in 0..3 {
        assert_eq!(stdout(&modsqrt(&args)), first);
    }
}

#[test]
fn bench_writes_csv() {
    let dir = tempfile::tempdir().unwrap();
    let primes = dir.path().join("primes.txt");
    std::fs::write(&primes, "97\n7681\n").unwrap();
    let csv = dir.path().join("out.csv");
    let o = modsqrt(&[
        "bench",
        "--primes",
        primes.to_str().unwrap(),
        "--count",
        "20",
        "--reps",
        "1",
        "--csv",
        csv.to_str().unwrap(),
    ]);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    let records = modsqrt::report::parse_csv(&std::fs::read_to_string(&csv).unwrap()).unwrap();
    assert_eq!(records.len(), 4);
    assert!(records.iter().all(|r| r.verified));
    assert!(String::from_utf8_lossy(&o.stderr).contains("tonelli_shanks/proposed"));
}

#[test]
fn bench_rejects_bad_corpus() {
    let dir = tempfile::tempdir().unwrap();
    let primes = dir.path().join("primes.txt");
    std::fs::write(&primes, "97\n100\n").unwrap();
    let o = modsqrt(&[
        "bench",
        "--primes",
        primes.to_str().unwrap(),
        "--count",
        "5",
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2: not prime"));
}
