use std::process::{Command, Output};

fn polyzeta(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_polyzeta")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn read_json(path: &std::path::Path) -> serde_json::Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn finite_sum_is_exact() {
    let o = polyzeta(&["finite", "3", "2,1"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "5/12");
}

#[test]
fn stuffle_of_ones() {
    let o = polyzeta(&["stuffle", "1", "1"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "2*(1,1) + (2)");
}

#[test]
fn negative_entries_are_accepted() {
    let o = polyzeta(&["starexpand", "-1,2"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(stdout(&o).trim(), "(-1,2) + (-3)");
}

#[test]
fn verify_single_instance_writes_report() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.json");
    let o = polyzeta(&["verify", "BBB-4.1", "--params", "m=0,n=0", "--json", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("PASS BBB-4.1[m=0,n=0]"));
    let v = read_json(&path);
    let r = &v[0];
    assert_eq!(r["family"], "BBB-4.1");
    assert_eq!(r["pass"], true);
    assert!(r["residual"].as_f64().unwrap() < 1e-20);
    assert!(r.get("millis").is_none());
}

#[test]
fn suites_pass() {
    for suite in ["exact-algebra", "ky", "bbb"] {
        let o = polyzeta(&["verify", "suite", suite]);
        assert_eq!(o.status.code(), Some(0), "{suite}: {}", stdout(&o));
    }
    let o = polyzeta(&["verify", "suite", "ky"]);
    assert!(stdout(&o).contains("PASS KY-EXAMPLE[]"));
}

#[test]
fn seeded_reports_are_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for p in [&a, &b] {
        let o = polyzeta(&[
            "verify",
            "suite",
            "exact-algebra",
            "--seed",
            "11",
            "--samples",
            "5",
            "--json",
            p.to_str().unwrap(),
        ]);
        assert!(o.status.success());
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    assert!(read_json(&a).as_array().unwrap().len() > 71);
}

#[test]
fn failing_instance_exits_one() {
    let o = polyzeta(&["verify", "THM-3.1", "--params", "m=1:1,p=0"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("note:"));
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        vec!["bogus"],
        vec!["finite", "3", "2,0"],
        vec!["verify", "NO-SUCH"],
        vec!["verify", "suite", "nosuch"],
        vec!["verify", "BBB-4.1", "--params", "m=0"],
        vec!["eval", "mzv", "1"],
    ] {
        let o = polyzeta(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn poset_file_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("p.json");
    // Chain x0 < x1 labelled dt/(1-t) below dt/t: ζ(2).
    std::fs::write(&path, r#"{"nodes":[{"id":"x0","label":"1"},{"id":"x1","label":"0"}],"cover":[["x0","x1"]]}"#)
        .unwrap();
    let o = polyzeta(&["poset", "eval", path.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).starts_with("1.6449340668482264364724151666460251892"));
    let o = polyzeta(&["poset", "expand", path.to_str().unwrap()]);
    assert!(stdout(&o).starts_with("1 linear extensions"));
}
