use std::process::{Command, Output};

fn qcount(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qcount"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = qcount(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn count_similar_e3() {
    let out = stdout(&["count", "similar", "--module", "e3", "--max", "12"]);
    assert!(out.starts_with("m,count\n1,1\n"));
    assert!(out.ends_with("\n12,1\n"));
    assert_eq!(out.lines().count(), 13);
}

#[test]
fn count_tables() {
    let out = stdout(&["count", "sublattices", "--max", "4"]);
    assert_eq!(out, "m,count\n1,1\n2,3\n3,4\n4,7\n");
    let out = stdout(&["count", "coincidence", "--module", "e12", "--max", "13"]);
    assert!(out.ends_with("\n13,4\n"));
    let out = stdout(&["count", "similar", "--module", "e12", "--max", "13", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["series"], "a12");
    assert_eq!(v["rows"][12]["count"], 4);
}

#[test]
fn shell_central_json() {
    let out = stdout(&["shell", "central", "--r2", "13+0*sqrt3"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["count"], 48);
    assert_eq!(v["method"], "PRIME_FORM");
    let out = stdout(&["shell", "central", "--r2", "13", "--method", "oracle"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["count"], 48);
}

#[test]
fn norm_heuristic_refuses_invalid_radius() {
    let out = qcount(&["shell", "central", "--r2", "13", "--method", "norm"]);
    assert_eq!(out.status.code(), Some(2));
    let out = stdout(&["shell", "central", "--r2", "19+8*sqrt3", "--method", "norm"]);
    assert!(out.contains("\"count\": 36"));
}

#[test]
fn shell_averaged_value() {
    let out = stdout(&["shell", "averaged", "--r2", "2-sqrt3"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["value"], "8-2*sqrt3");
    assert_eq!(v["central_count"], 12);
    let table = stdout(&["shell", "averaged", "--max", "4"]);
    assert_eq!(table.lines().count(), 13);
}

#[test]
fn zeta_expand_rows() {
    let out = stdout(&["zeta", "expand", "--system", "fibonacci-li", "--max", "3"]);
    assert_eq!(out, "n,a_n,c_n\n1,0,0\n2,2,1\n3,3,1\n");
}

#[test]
fn covariogram_outputs() {
    let out = stdout(&["covariogram", "--shift", "1;1"]);
    assert_eq!(out.lines().nth(1).unwrap().split(',').nth(1), Some("4-2*sqrt3"));
    for profile in ["type1", "type2"] {
        let out = stdout(&["covariogram", "--profile", profile, "--samples", "9"]);
        let lines: Vec<&str> = out.lines().collect();
        assert_eq!(lines[0], "s,exact,closed_form,euclid_hat");
        assert_eq!(lines.len(), 10);
        for l in &lines[1..] {
            let f: Vec<&str> = l.split(',').collect();
            assert_eq!(f[1], f[2], "{profile}: {l}");
        }
        assert!(lines[9].starts_with(|c: char| c.is_ascii_digit()));
        assert_eq!(lines[9].split(',').nth(1), Some("0"));
    }
}

#[test]
fn tiling_formats() {
    let json = stdout(&["tiling", "generate", "--radius", "4", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert!(v["points"].as_array().unwrap().len() > 10);
    let svg = stdout(&["tiling", "generate", "--radius", "4", "--format", "svg"]);
    assert!(svg.starts_with("<svg") || svg.starts_with("<?xml"));
    let csv = stdout(&["tiling", "generate", "--radius", "4", "--format", "csv", "--policy", "closed"]);
    assert!(csv.lines().count() > 10);
}

#[test]
fn exit_codes() {
    assert_eq!(qcount(&["count", "similar", "--module", "e7", "--max", "3"]).status.code(), Some(2));
    assert_eq!(qcount(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(qcount(&["shell", "central", "--r2", "1+x"]).status.code(), Some(2));
    assert_eq!(qcount(&["oracle", "no-such-check"]).status.code(), Some(2));
    assert_eq!(qcount(&["tiling", "generate", "--radius", "100000"]).status.code(), Some(3));
    assert_eq!(qcount(&["count", "similar", "--module", "e3", "--max", "100000000"]).status.code(), Some(3));
    assert_eq!(qcount(&["oracle", "coincidence", "--max", "20000"]).status.code(), Some(3));
}

#[test]
fn singular_shift_is_rejected() {
    let out = qcount(&["tiling", "generate", "--shift", "0;0", "--radius", "3"]);
    assert!(!out.status.success());
}

#[test]
fn oracle_tables() {
    for check in ["series", "identities", "averaged", "closed-forms", "zeta"] {
        let out = stdout(&["oracle", check]);
        let mut lines = out.lines();
        assert_eq!(lines.next(), Some("m,closed_form,oracle,match"));
        assert!(lines.all(|l| l.ends_with(",true")), "{check}");
    }
    let out = stdout(&["oracle", "ideals", "--max", "12"]);
    assert!(out.contains("a6(12),1,1,true"));
}

#[test]
fn output_is_deterministic() {
    let args = ["oracle", "shell-sample", "--max", "20", "--seed", "7"];
    let one = stdout(&args);
    assert_eq!(one, stdout(&args));
    let threaded = stdout(&["--threads", "4", "oracle", "shell-sample", "--max", "20", "--seed", "7"]);
    assert_eq!(one, threaded);
    let a = stdout(&["count", "sublattices", "--rank", "4", "--max", "30", "--threads", "3"]);
    assert_eq!(a, stdout(&["count", "sublattices", "--rank", "4", "--max", "30"]));
    let t = ["tiling", "generate", "--radius", "6", "--format", "svg"];
    assert_eq!(stdout(&t), stdout(&t));
}
