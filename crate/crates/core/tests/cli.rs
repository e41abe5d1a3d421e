use std::path::Path;
use std::process::{Command, Output};

fn prational(cache: Option<&Path>, args: &[&str]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_prational"));
    match cache {
        Some(dir) => cmd.env("PRATIONAL_CACHE", dir),
        None => cmd.env("PRATIONAL_CACHE", "off"),
    };
    cmd.args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn search_direct() {
    let o = prational(
        None,
        &["search", "--direct", "--limit", "1000", "--A", "0.5"],
    );
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.lines().any(|l| l == "277,3,5,0.5"));
    assert!(out.lines().any(|l| l == "727,27,5,0.5"));

    let o = prational(None, &["search", "--direct", "--limit", "10", "--A", "5"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
}

#[test]
fn search_crt() {
    let o = prational(None, &["search", "--crt", "--limit", "1000", "--A", "0.5"]);
    assert_eq!(o.status.code(), Some(2));

    let o = prational(
        None,
        &[
            "search", "--crt", "--limit", "1000", "--A", "0.5", "--B", "0.9",
        ],
    );
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).lines().any(|l| l.starts_with("277,")));
    assert!(String::from_utf8_lossy(&o.stderr).contains("window ("));

    let o = prational(
        None,
        &[
            "search", "--crt", "--limit", "1000", "--A", "0.5", "--B", "1.2",
        ],
    );
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("B < 2A violated"));

    let o = prational(
        None,
        &[
            "search", "--direct", "--crt", "--limit", "10", "--A", "1", "--B", "1.5",
        ],
    );
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn certify_exit_codes_and_verify() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("cert5.txt");
    let o = prational(
        None,
        &["certify", "--p", "5", "--out", out.to_str().unwrap()],
    );
    let text = std::fs::read_to_string(&out).unwrap();
    let certified = text.lines().any(|l| l == "conclusion: certified");
    assert_eq!(o.status.code(), Some(if certified { 0 } else { 1 }));

    let v = prational(None, &["verify", out.to_str().unwrap()]);
    assert_eq!(v.status.code(), Some(0));

    let tampered = dir.path().join("bad.txt");
    std::fs::write(
        &tampered,
        text.replace("K5.class_number: 2", "K5.class_number: 3"),
    )
    .unwrap();
    let v = prational(None, &["verify", tampered.to_str().unwrap()]);
    assert_eq!(v.status.code(), Some(1));

    for bad in ["4", "9", "3", "1"] {
        let o = prational(None, &["certify", "--p", bad]);
        assert_eq!(o.status.code(), Some(2), "p = {bad}");
    }
}

#[test]
fn certify_with_witnesses() {
    let o = prational(
        None,
        &[
            "certify", "--p", "277", "--m", "3", "--n", "5", "--A", "0.5",
        ],
    );
    let out = stdout(&o);
    assert!(out.contains("discriminant.K7.abs_discriminant: 1364"));
    assert!(out.contains("discriminant.m: 3"));
    assert!(matches!(o.status.code(), Some(0) | Some(1)));

    let o = prational(
        None,
        &[
            "certify", "--p", "277", "--m", "5", "--n", "3", "--A", "0.5",
        ],
    );
    assert_eq!(o.status.code(), Some(2));
    let o = prational(None, &["certify", "--p", "277", "--m", "3"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn analytic_rows_and_errors() {
    let o = prational(None, &["analytic", "--A", "1", "--grid", "1000,10000"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(
        lines[0],
        "x,S,S_restricted,main_term,floor,error_budget,log2_budget,pair_count"
    );
    assert_eq!(lines.len(), 3);
    assert!(lines[1].starts_with("1000,") && lines[2].starts_with("10000,"));

    let o = prational(None, &["analytic", "--A", "1", "--B", "3"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("B < 2A violated"));

    let o = prational(
        None,
        &["analytic", "--grh", "--epsilon", "0.2", "--alpha", "0.21"],
    );
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("ε < 1/8 violated"));

    let o = prational(
        None,
        &[
            "analytic",
            "--grh",
            "--epsilon",
            "0.05",
            "--alpha",
            "0.19",
            "--grid",
            "1000000",
        ],
    );
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).lines().nth(1).unwrap().ends_with(",28"));

    let o = prational(
        None,
        &[
            "analytic",
            "--A",
            "1",
            "--grid",
            "500",
            "--force-window",
            "3:5,5:3",
        ],
    );
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).lines().nth(1).unwrap().ends_with(",2"));

    let o = prational(None, &["analytic", "--A", "1", "--force-window", "3:9"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn field_subcommand() {
    let o = prational(None, &["field", "--d", "38", "--p", "5"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("fundamental_unit: 37 + 6*sqrt(38)"));
    assert!(out.contains("unit_not_pth_power_somewhere: false"));
    assert!(out.contains("5-rational: refuted"));
    let o = prational(None, &["field", "--d", "-84"]);
    assert!(stdout(&o).contains("kernel: -21"));
    let o = prational(None, &["field", "--d", "16"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn byte_determinism_and_cache_coherence() {
    let dir = tempfile::tempdir().unwrap();
    let runs = [
        vec!["certify", "--p", "277", "--A", "0.5"],
        vec!["certify", "--p", "13"],
        vec![
            "analytic",
            "--A",
            "0.5",
            "--B",
            "0.9",
            "--grid",
            "1000,100000",
        ],
        vec!["search", "--direct", "--limit", "50000", "--A", "0.6"],
        vec!["field", "--d", "-1364", "--p", "277"],
    ];
    for args in &runs {
        let off = prational(None, args);
        let cold = prational(Some(dir.path()), args);
        let warm = prational(Some(dir.path()), args);
        assert_eq!(off.stdout, cold.stdout, "{args:?}");
        assert_eq!(cold.stdout, warm.stdout, "{args:?}");
        assert_eq!(off.status.code(), warm.status.code());
    }
    assert!(dir.path().join("classnumbers.tsv").exists());
    assert!(dir.path().join("certs").join("cert-277.txt").exists());
}
