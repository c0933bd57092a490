//! End-to-end tests of the `szlenk` binary: golden outputs, the
//! exit-code contract, config-file merging, file output and @file
//! inputs, and run-to-run determinism.

use std::process::{Command, Output};

fn szlenk(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_szlenk"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn norm_quartic_unit_vector() {
    let out = szlenk(&["norm", "--quartic", "A=1,B=1", "--vec", "[[1,1]]"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.starts_with("norm = 1.27201964951\n"), "{text}");
    assert!(text.contains("closed form = 1.27201964951"), "{text}");
}

#[test]
fn norm_power_two_is_euclidean() {
    let out = szlenk(&["norm", "--power", "q=2", "--vec", "[[1,3],[2,4]]", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "norm,closed_form,delta\n5,,\n");
}

#[test]
fn norm_of_zero_vector_is_zero() {
    let out = szlenk(&["norm", "--power", "q=2", "--vec", "[]"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "norm = 0\n");
}

#[test]
fn index_l2_at_eps_one() {
    let out = szlenk(&["index", "--lp", "p=2", "--eps", "1"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "4\n");
}

#[test]
fn radius_csv_grid() {
    let out = szlenk(&[
        "radius", "--triple", "power:2", "--c1", "1", "--c2", "1",
        "--eps-grid", "0.5:1.5:3", "--format", "csv",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        stdout(&out),
        "eps,lower,upper,valid_lower\n\
         0.5,0.968245836552,0.968245836552,true\n\
         1,0.866025403784,0.866025403784,true\n\
         1.5,0.661437827766,0.661437827766,true\n"
    );
}

#[test]
fn iterate_csv_trace() {
    let out = szlenk(&["iterate", "--lp", "p=2", "--eps", "1", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        stdout(&out),
        "n,r_n\n1,0.866025403784\n2,0.707106781187\n3,0.5\n"
    );
}

#[test]
fn sweep_csv_gap_closes_and_marks_out_of_domain() {
    let out = szlenk(&[
        "sweep", "--a-values", "1,0.001,0", "--b", "1", "--eps", "1.0", "--format", "csv",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert_eq!(
        text,
        "A,eps,lower,upper,limit,gap\n\
         1,1,0.606658049275,1.16962985117,0.866025403784,0.562971801896\n\
         0.001,1,0.865449013526,0.866601985917,0.866025403784,0.00115297239036\n\
         0,1,0.866025403784,0.866025403784,0.866025403784,0\n"
    );
    // eps past the validity cutoff produces ERR markers, not an error exit
    let out = szlenk(&["sweep", "--a-values", "1", "--b", "1", "--eps", "1.9", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains(",ERR,"), "{}", stdout(&out));
}

#[test]
fn exit_code_contract() {
    // 0: all verdicts pass
    assert_eq!(
        szlenk(&["check-eq", "--power", "q=2", "--probe", "all"]).status.code(),
        Some(0)
    );
    // 1: a check ran and failed
    let fail = szlenk(&["check-eq", "--quartic", "A=1,B=1", "--probe", "homogeneity"]);
    assert_eq!(fail.status.code(), Some(1));
    assert!(stdout(&fail).contains("fail"));
    // 2: domain error (eps outside (0, 2))
    let err = szlenk(&["index", "--lp", "p=2", "--eps", "3"]);
    assert_eq!(err.status.code(), Some(2));
    assert!(err.stdout.is_empty());
    assert!(String::from_utf8_lossy(&err.stderr).starts_with("error:"));
    // 2: usage error (missing flag)
    assert_eq!(szlenk(&["norm", "--power", "q=2"]).status.code(), Some(2));
    // 2: conflicting function flags
    assert_eq!(
        szlenk(&["norm", "--power", "q=2", "--quartic", "A=1,B=1", "--vec", "[]"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn config_file_fills_missing_flags_and_cli_wins() {
    let dir = std::env::temp_dir().join(format!("szlenk-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let cfg = dir.join("cfg.json");
    std::fs::write(&cfg, r#"{"lp": "p=2", "eps": 1.0, "format": "csv"}"#).unwrap();
    let cfg = cfg.to_str().unwrap();

    let from_cfg = szlenk(&["index", "--config", cfg]);
    assert_eq!(from_cfg.status.code(), Some(0));
    assert_eq!(stdout(&from_cfg), "eps,szlenk_index\n1,4\n");

    // a flag on the command line overrides the config value
    let overridden = szlenk(&["index", "--config", cfg, "--eps", "1.5"]);
    assert_eq!(stdout(&overridden), "eps,szlenk_index\n1.5,2\n");

    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn out_flag_writes_file_and_at_prefix_reads_one() {
    let dir = std::env::temp_dir().join(format!("szlenk-out-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let vec_file = dir.join("x.json");
    std::fs::write(&vec_file, "[[1,3],[2,4]]").unwrap();
    let out_file = dir.join("norm.csv");

    let at_arg = format!("@{}", vec_file.display());
    let out = szlenk(&[
        "norm", "--power", "q=2", "--vec", &at_arg,
        "--format", "csv", "--out", out_file.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    assert_eq!(
        std::fs::read_to_string(&out_file).unwrap(),
        "norm,closed_form,delta\n5,,\n"
    );
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn witness_checks_from_the_command_line() {
    let out = szlenk(&[
        "witness", "--lq", "q=2", "--check", "thm2",
        "--eps", "1.0", "--eps1", "1.1", "--eps2", "1.2", "--n", "5",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("separation = 1.1 (pass)"), "{text}");
    assert!(text.contains("max norm = 0.55 (pass)"), "{text}");

    let out = szlenk(&[
        "witness", "--lq", "q=2", "--check", "thm1",
        "--x", "[[1,0.88],[2,0.3]]", "--x0", "[[1,0.9]]",
        "--n", "1", "--delta", "0.05", "--eps1", "1.2",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "tail bound: pass\n");

    // json model spec on the command line
    let model = r#"{"dual": {"power": 2.0}, "z": {"power": 2.0},
                    "c1": 1.0, "c2": 1.0,
                    "triple": [{"power": 2.0}, {"power": 2.0}, {"power": 2.0}],
                    "mu": 1.0, "dim": 32}"#;
    let out = szlenk(&[
        "witness", "--model", model, "--check", "probe",
        "--direction", "forward", "--samples", "20", "--seed", "7",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("verdict = pass"));
}

#[test]
fn validate_reports_quartic_properties() {
    let out = szlenk(&["validate", "--quartic", "A=1,B=1"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("pass"), "{text}");
    assert!(!text.contains("FAIL"), "{text}");
}

#[test]
fn repeated_runs_are_byte_identical() {
    let cases: Vec<Vec<&str>> = vec![
        vec!["check-eq", "--power", "q=3", "--probe", "all", "--seed", "42", "--format", "json"],
        vec!["witness", "--lq", "q=1.5", "--check", "probe", "--direction", "reverse",
             "--samples", "50", "--seed", "42", "--format", "json"],
        vec!["radius", "--triple", "power:3", "--eps-grid", "0.1:1.9:19", "--format", "json"],
    ];
    for args in &cases {
        let a = szlenk(args);
        let b = szlenk(args);
        assert_eq!(a.stdout, b.stdout, "differs for {args:?}");
        assert_eq!(a.status.code(), b.status.code());
    }
}
