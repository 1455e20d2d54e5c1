use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lie-split"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn point_verdict_format() {
    let o = run(&["convergence", "--point", "0.5", "0.5", "--depth", "401"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = stdout(&o);
    assert!(text.starts_with("converges=true ratio_tail=0.31"), "{text}");

    let o = run(&["convergence", "--point", "2.5", "2.5", "--depth", "401"]);
    assert!(stdout(&o).starts_with("converges=false"));
}

#[test]
fn bad_input_exits_with_one() {
    assert_eq!(run(&["bogus"]).status.code(), Some(1));
    assert_eq!(
        run(&["convergence", "--point", "a", "b"]).status.code(),
        Some(1)
    );
    let o = run(&["convergence", "--point", "-1", "0.5"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(!stderr(&o).is_empty());
    assert_eq!(
        run(&["structconst", "/nonexistent/algebra.sc"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn term_counts_and_expansion() {
    let o = run(&[
        "terms",
        "--max-degree",
        "7",
        "--check-counts",
        "--format",
        "text",
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(
        stdout(&o).lines().collect::<Vec<_>>(),
        ["C3 2", "C5 6", "C7 18"]
    );

    let o = run(&["terms", "--max-degree", "3", "--format", "json"]);
    let json: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(json.is_array() || json.is_object());

    let o = run(&["expand", "--degree", "3"]);
    assert!(stdout(&o).contains("1/48 XXY"));
}

#[test]
fn bundled_examples_check_out() {
    let o = run(&["structconst", "--examples"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 8);
    assert!(text.lines().all(|l| l.starts_with("ok ")));
}

#[test]
fn fig3_writes_csv_and_reads_config() {
    let dir = std::env::temp_dir().join(format!("lie-split-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let out = dir.join("fig3.csv");
    let o = run(&[
        "--out",
        out.to_str().unwrap(),
        "fig3",
        "--lambdas",
        "0.05,0.1",
        "--n-list",
        "5,9",
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let csv = std::fs::read_to_string(&out).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert!(lines[0].starts_with("# lie-split v"));
    assert_eq!(lines[1], "n,lambda,error_symmetric,error_standard");
    assert_eq!(lines.len(), 6);

    let cfg = dir.join("cfg.toml");
    std::fs::write(&cfg, "seed = 9\nlambdas = [0.02]\nn_list = [5]\n").unwrap();
    let o = run(&["--config", cfg.to_str().unwrap(), "fig3"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = stdout(&o);
    assert!(text.starts_with("# lie-split v") && text.contains("seed=9"));
    assert_eq!(text.lines().count(), 3);

    std::fs::write(&cfg, "no_such_key = 1\n").unwrap();
    let o = run(&["--config", cfg.to_str().unwrap(), "fig3"]);
    assert_eq!(o.status.code(), Some(1));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn quick_verify_reports_every_check() {
    let o = run(&["verify", "--quick"]);
    let code = o.status.code();
    assert!(code == Some(0) || code == Some(2), "{code:?}");
    let text = stdout(&o);
    let tagged: Vec<&str> = text
        .lines()
        .filter(|l| l.starts_with("PASS") || l.starts_with("FAIL") || l.starts_with("WARN"))
        .collect();
    assert_eq!(tagged.len(), 12, "{text}");
    assert_eq!(code == Some(0), !text.contains("FAIL"));
}
