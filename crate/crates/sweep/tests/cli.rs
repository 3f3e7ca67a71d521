use std::process::{Command, Output};

fn lipkin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lipkin"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn solve_prints_header_and_one_row_per_method() {
    let o = lipkin(&[
        "solve",
        "--omega",
        "2",
        "--chi",
        "0",
        "--vx",
        "2",
        "--methods",
        "exact,mf",
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 3);
    assert!(lines[0].starts_with("omega,"));
    assert!(lines[1].contains(",exact,"));
    assert!(lines[2].contains(",mf,"));
}

#[test]
fn negative_chi_is_accepted() {
    let o = lipkin(&["solve", "--omega", "6", "--chi", "-0.5", "--vx", "1"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn sweep_flags_override_config_file() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.toml");
    std::fs::write(
        &cfg,
        "omega = 8\nchi = [0.0, 0.5]\nsteps = 4\nmethods = [\"exact\"]\n",
    )
    .unwrap();
    let o = lipkin(&[
        "sweep",
        "--config",
        cfg.to_str().unwrap(),
        "--steps",
        "3",
        "--chi",
        "1",
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 1 + 3);
    assert!(text.lines().skip(1).all(|l| l.starts_with("8,1,")));
}

#[test]
fn plotscript_written_beside_table() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("fig.csv");
    let o = lipkin(&[
        "sweep",
        "--omega",
        "6",
        "--steps",
        "5",
        "--methods",
        "exact,pmf",
        "--out",
        out.to_str().unwrap(),
        "--emit",
        "plotscript",
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(out.exists());
    let script = std::fs::read_to_string(dir.path().join("fig.gp")).unwrap();
    assert!(script.contains("plot "));
}

#[test]
fn bad_input_reports_field_and_fails() {
    let o = lipkin(&["sweep", "--omega", "0"]);
    assert!(!o.status.success());
    assert!(String::from_utf8_lossy(&o.stderr).contains("omega"));

    let o = lipkin(&["sweep", "--methods", "exact,bogus"]);
    assert!(!o.status.success());

    let o = lipkin(&["figure", "fig2"]);
    assert!(!o.status.success());
}

#[test]
fn unknown_config_key_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.toml");
    std::fs::write(&cfg, "omegaa = 8\n").unwrap();
    let o = lipkin(&["sweep", "--config", cfg.to_str().unwrap()]);
    assert!(!o.status.success());
    assert!(String::from_utf8_lossy(&o.stderr).contains("bad.toml"));
}

#[test]
fn fig3_lists_every_k_state() {
    let o = lipkin(&["figure", "fig3"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().count(), 1 + 51);
}

#[test]
fn quick_verify_exits_zero() {
    let o = lipkin(&["verify", "--level", "quick"]);
    assert!(o.status.success(), "{}", stdout(&o));
    let text = stdout(&o);
    assert_eq!(
        text.lines().filter(|l| l.starts_with("criterion=")).count(),
        4
    );
}

#[test]
fn full_verify_reports_failures_with_nonzero_exit() {
    let o = lipkin(&["verify", "--level", "full"]);
    let text = stdout(&o);
    assert_eq!(
        text.lines().filter(|l| l.starts_with("criterion=")).count(),
        10
    );
    let failing = text.lines().any(|l| l.contains("status=FAIL"));
    assert_eq!(o.status.success(), !failing);
}
