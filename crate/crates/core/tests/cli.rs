use std::path::Path;
use std::process::{Command, Output};

fn nncbound(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nncbound"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn example(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../docs/examples")
        .join(name)
        .to_str()
        .unwrap()
        .to_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn success_exits_zero_with_lf_csv() {
    let o = nncbound(&["twrc-sweep", "--steps", "3"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.starts_with("d,sum_NNC,sum_AF,sum_CF,sigma2_NNC,alpha_AF,sigma2_CF\n"));
    assert!(!text.contains('\r'));
    assert_eq!(text.lines().count(), 4);
}

#[test]
fn out_flag_writes_the_same_bytes() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("irc.csv");
    let args = ["irc-sweep", "--steps", "3"];
    let stdout = nncbound(&args).stdout;
    let o = nncbound(&[&args[..], &["--out", path.to_str().unwrap()]].concat());
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(o.stdout.is_empty());
    assert_eq!(std::fs::read(&path).unwrap(), stdout);
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        vec!["no-such-command"],
        vec!["twrc-sweep", "--steps", "many"],
        vec!["twrc-sweep", "--d-min", "0"],
        vec!["twrc-sweep", "--schemes", "df"],
        vec!["irc-sweep", "--steps", "1"],
        vec![
            "eval",
            "--bound",
            "thm9",
            "--network",
            &example("relay.json"),
        ],
        vec![
            "eval",
            "--bound",
            "thm1",
            "--network",
            "/nonexistent/net.json",
        ],
        vec![
            "eval",
            "--bound",
            "gauss_inner",
            "--network",
            &example("relay.json"),
        ],
    ] {
        let o = nncbound(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}: {}", stderr(&o));
        assert!(!stderr(&o).is_empty());
    }
}

#[test]
fn schema_errors_name_the_row() {
    let dir = tempfile::tempdir().unwrap();
    let net = dir.path().join("net.json");
    std::fs::write(
        &net,
        r#"{"kind": "dm", "x_sizes": [2, 1], "y_sizes": [1, 2], "channel": [[1, 0], [0.5, 0.4]], "dests": [[2], []]}"#,
    )
    .unwrap();
    let o = nncbound(&[
        "eval",
        "--bound",
        "thm1",
        "--network",
        net.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("row 1"), "{}", stderr(&o));

    std::fs::write(&net, r#"{"kind": "dm", "x_sizes": [2, 1]}"#).unwrap();
    let o = nncbound(&[
        "eval",
        "--bound",
        "thm1",
        "--network",
        net.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn numerical_failures_exit_three() {
    for args in [
        vec!["twrc-sweep", "--power", "1e308", "--steps", "2"],
        vec!["gap-check", "--power", "1e308", "--trials", "1"],
    ] {
        let o = nncbound(&args);
        assert_eq!(o.status.code(), Some(3), "{args:?}: {}", stderr(&o));
    }
}

#[test]
fn seed_changes_random_trials() {
    let run = |seed: &str| nncbound(&["gap-check", "--trials", "3", "--seed", seed]).stdout;
    assert_eq!(run("5"), run("5"));
    assert_ne!(run("5"), run("6"));
}

#[test]
fn help_lists_formulas() {
    let o = nncbound(&["gap-check", "--help"]);
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.contains("budget = |S|/2"));
    let o = nncbound(&["eval", "--help"]);
    let text = String::from_utf8(o.stdout).unwrap();
    for bound in [
        "thm1",
        "thm2",
        "thm3",
        "cutset",
        "cf_ext",
        "noiseless",
        "erasure",
        "deterministic",
    ] {
        assert!(text.contains(bound), "missing {bound}");
    }
}
