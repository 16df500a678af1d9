use std::process::Command;

use orbifold_voa::cli;
use serde_json::Value;

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("orbifold-voa").chain(args.iter().copied());
    let code = cli::run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn json(args: &[&str]) -> Value {
    let mut a = args.to_vec();
    a.extend(["--format", "json"]);
    let (code, out, err) = run(&a);
    assert_eq!(code, 0, "{err}");
    serde_json::from_str(&out).unwrap()
}

#[test]
fn fusion_queries() {
    let (code, out, _) = run(&["fusion", "query", "--k", "2", "Vl1", "VT1+", "VT2+"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().next(), Some("1"));
    assert!(out.contains("witness Ytilde_{1}"));

    let (_, out, _) = run(&["fusion", "query", "--k", "2", "V+", "V+", "V+"]);
    assert_eq!(out.lines().next(), Some("1"));

    // one twisted entry
    let (_, out, _) = run(&["fusion", "query", "--k", "3", "V+", "V+", "VT1+"]);
    assert_eq!(out.lines().next(), Some("0"));
    let (_, out, _) = run(&["fusion", "query", "--k", "3", "V-", "Va+", "Va+"]);
    assert_eq!(out.lines().next(), Some("0"));
}

#[test]
fn fusion_query_record() {
    let v = json(&["fusion", "query", "--k", "2", "Vl1", "VT1+", "VT2+"]);
    assert_eq!(v["k"], 2);
    assert_eq!(v["command"], "fusion query");
    let r = &v["record"];
    assert_eq!(r["triple"], serde_json::json!(["Vl1", "VT1+", "VT2+"]));
    assert_eq!(r["value"], 1);
    assert_eq!(r["bound"], 1);
    assert_eq!(r["witnesses"][0], "Ytilde_{1}");
}

#[test]
fn json_schema_and_key_order() {
    let (_, out, _) = run(&["verify", "psi", "--k", "2", "--format", "json"]);
    let k = out.find("\"k\"").unwrap();
    let c = out.find("\"command\"").unwrap();
    let r = out.find("\"results\"").unwrap();
    assert!(k < c && c < r);
    let v: Value = serde_json::from_str(&out).unwrap();
    for item in v["results"].as_array().unwrap() {
        let obj = item.as_object().unwrap();
        assert_eq!(obj.keys().collect::<Vec<_>>(), ["detail", "name", "status"]);
        assert!(["pass", "fail", "skip"].contains(&item["status"].as_str().unwrap()));
    }
}

#[test]
fn verify_suites() {
    for (suite, k) in [("table1", "3"), ("closure", "5"), ("p31", "2"), ("identities", "2"), ("decomp", "1")] {
        let (code, out, err) = run(&["verify", suite, "--k", k]);
        assert_eq!(code, 0, "{suite}: {out}{err}");
        assert!(out.lines().last().unwrap().starts_with(&format!("PASS {suite}")));
    }
}

#[test]
fn skips_are_not_passes() {
    let (code, out, _) = run(&["verify", "table1", "--k", "1"]);
    assert_eq!(code, 0);
    assert!(out.contains("SKIP V- (omega, J, E)"));
    assert!(out.lines().last().unwrap().contains("skipped"));
}

#[test]
fn dumps() {
    let v = json(&["dump", "zhu", "--k", "2"]);
    let va = v["results"].as_array().unwrap().iter().find(|r| r["name"] == "Va+").unwrap();
    assert_eq!(va["detail"], "omega = (1/2); J = (1/2); E = (1)");

    let (_, out, _) = run(&["dump", "delta", "--order", "4", "--format", "csv"]);
    assert!(out.starts_with("m,n,c_mn\n"));
    assert!(out.contains("\n1,1,1/16\n"));
    assert_eq!(out.lines().count(), 1 + 15);

    let (_, out, _) = run(&["dump", "decompose", "--k", "2", "--module", "Va+", "--window", "2"]);
    let parts: Vec<&str> = out.lines().skip(1).collect();
    assert_eq!(parts, ["M(a/2)", "M(3a/2)", "M(5a/2)"]);

    let (_, out, _) = run(&["fusion", "table", "--k", "1", "--format", "csv"]);
    assert_eq!(out.lines().count(), 1 + 8 * 8 * 8);
    let (_, same, _) = run(&["dump", "table", "--k", "1", "--format", "csv"]);
    assert_eq!(out, same);
}

#[test]
fn witnesses() {
    let (code, out, _) = run(&["witness", "--type", "V+,Va+,Va+", "--k", "2", "--cutoff", "4"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("Y on V+ Va+ Va+: z^(0)"), "{out}");
    let (_, out, _) = run(&["witness", "--type", "V-,Va+,Va+", "--k", "2", "--cutoff", "4"]);
    assert_eq!(out, "ZERO-UP-TO-CUTOFF\n");
}

#[test]
fn usage_errors_exit_one() {
    for args in [
        &["verify", "nope"][..],
        &["fusion", "query", "Vx", "V+", "V+"],
        &["fusion", "query", "--k", "2", "Vl2", "V+", "V+"],
        &["witness", "--type", "V+,V+"],
        &["dump", "decompose"],
        &["verify", "psi", "--cutoff", "-1"],
        &["verify", "psi", "--k", "0"],
        &["frobnicate"],
    ] {
        let (code, out, err) = run(args);
        assert_eq!(code, cli::EXIT_USAGE, "{args:?}");
        assert!(out.is_empty() && !err.is_empty(), "{args:?}");
    }
}

#[test]
fn help_goes_to_stdout() {
    let (code, out, _) = run(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("verify"));
}

#[test]
fn binary_is_deterministic() {
    let bin = env!("CARGO_BIN_EXE_orbifold-voa");
    let go = |threads: &str| {
        Command::new(bin)
            .args(["zhu", "table", "--k", "3", "--format", "json"])
            .env("ORBIFOLD_VOA_THREADS", threads)
            .output()
            .unwrap()
    };
    let (a, b) = (go("1"), go("4"));
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);

    let bad = Command::new(bin).args(["verify", "nope"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(1));
    assert!(bad.stdout.is_empty());
}
