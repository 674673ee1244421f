use std::process::{Command, Output};

fn toroidal(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_toroidal")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn kernel_cross_factor() {
    let o = toroidal(&["kernel", "--builtin", "a2", "--kind", "bullet", "--alpha", "1,0", "--gamma", "0,1"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("factored: (q*x0_1 - x1_1) * (-q*x1_1 + x0_1)^-1"), "{}", out);
}

#[test]
fn kernel_trivial_and_malformed() {
    let o = toroidal(&["kernel", "--builtin", "a2", "--alpha", "0,0", "--gamma", "0,0"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("expanded: 1\n"));
    let o = toroidal(&["kernel", "--builtin", "a2", "--alpha", "1,x", "--gamma", "0,1"]);
    assert_eq!(o.status.code(), Some(2));
    let o = toroidal(&["kernel", "--builtin", "a2", "--alpha", "1", "--gamma", "0,1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn mul_examples() {
    let o = toroidal(&["mul", "--builtin", "a1", "--kind", "bullet", "e 1 0", "e 1 0"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("value: 1 + q^-2"));
    let o = toroidal(&["mul", "--builtin", "a1", "ediv 1 3 2"]);
    assert!(stdout(&o).contains("value: x0_1^3*x0_2^3"));
    let o = toroidal(&["mul", "--builtin", "a1", "poly 2 x0_1*x0_2 + q"]);
    assert!(stdout(&o).contains("value: x0_1*x0_2 + q"), "{}", stdout(&o));
    let o = toroidal(&["mul", "--builtin", "a1", "--format", "json", "e 1 2"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["value"], "x0_1^2");
}

#[test]
fn mul_input_errors() {
    for args in [
        vec!["mul", "--builtin", "a1", "e 7 0"],
        vec!["mul", "--builtin", "a1", "poly 2 x0_1"],
        vec!["mul", "--builtin", "a1", "--max-degree", "2", "e 1 0", "e 1 0", "e 1 0"],
        vec!["mul", "--builtin", "nosuch", "e 1 0"],
    ] {
        assert_eq!(toroidal(&args).status.code(), Some(2), "{:?}", args);
    }
}

#[test]
fn verify_exit_codes() {
    let o = toroidal(&["verify", "--suite", "appendixA"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("0 refuted"));
    let o = toroidal(&["verify", "--suite", "super-all", "--builtin", "super:2|1:++-"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert_eq!(toroidal(&["verify", "--suite", "nosuch"]).status.code(), Some(2));
    assert_eq!(toroidal(&["verify", "--suite", "dims", "--window", "3,1"]).status.code(), Some(2));
    // the verbatim Q identity is refuted, so the Serre suite reports a failure
    let o = toroidal(&["verify", "--suite", "serre-all"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("REFUTED  serre-quartic-rational:Q "));
}

#[test]
fn verify_json_is_deterministic() {
    let run = |threads: &str| {
        let o = toroidal(&["verify", "--suite", "drinfeld-all", "--format", "json", "--threads", threads, "--window", "-1,1"]);
        assert_eq!(o.status.code(), Some(0));
        let mut v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
        for r in v.as_array_mut().unwrap() {
            r["ms"] = 0.into();
        }
        v
    };
    let a = run("1");
    assert_eq!(a, run("3"));
    assert!(a[0].get("witness").is_some());
}

#[test]
fn corrupted_quiver_file() {
    let dir = std::env::temp_dir().join(format!("toroidal-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.json");
    std::fs::write(&bad, r#"{"vertices": ["1"], "arrows": [{"id": "h", "src": "1", "tgt": "9"}]}"#).unwrap();
    let o = toroidal(&["verify", "--suite", "drinfeld-all", "--quiver", bad.to_str().unwrap(), "--format", "json"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(o.stdout.is_empty());
    let good = dir.join("a2.json");
    std::fs::write(
        &good,
        r#"{"vertices": ["1", "2"],
            "arrows": [{"id": "h", "src": "1", "tgt": "2", "q_exp": 1}, {"id": "h'", "src": "2", "tgt": "1", "q_exp": 1}],
            "pairs": [["h", "h'"]]}"#,
    )
    .unwrap();
    let o = toroidal(&["verify", "--suite", "drinfeld-all", "--quiver", good.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn dims_table() {
    let o = toroidal(&["dims", "--type", "a1", "--qmax", "4", "--zmax", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.lines().filter(|l| l.ends_with("false")).count() == 0);
    assert!(out.contains("all agree: true"));
    let o = toroidal(&["dims", "--type", "a1", "--zmax", "0"]);
    let out = stdout(&o);
    let rows: Vec<&str> = out.lines().filter(|l| l.ends_with("true") && !l.starts_with("all")).map(str::trim).collect();
    assert_eq!(rows.len(), 1);
    assert!(rows[0].starts_with("0  0,0"));
    assert_eq!(toroidal(&["dims", "--type", "e8"]).status.code(), Some(2));
}
