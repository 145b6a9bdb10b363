use std::process::{Command, Output};

fn mgk(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mgk")).args(args).env_remove("MGK_MAX_GENERATORS").output().unwrap()
}

fn stdout(args: &[&str]) -> String {
    let out = mgk(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn grope_commands() {
    assert_eq!(stdout(&["grope", "class", "({* *})"]), "2\n");
    assert_eq!(stdout(&["grope", "boundary", "({* *})", "--names", "a,b"]), "[a,b]\n");
    assert_eq!(stdout(&["grope", "boundary", "({* *})", "--names", "a,b", "--flat"]), "a b a' b'\n");
    let duals = stdout(&["grope", "duals", "({({* *}) *})"]);
    assert!(duals.starts_with("class 3, 3 free tips"));
    assert_eq!(duals.lines().filter(|l| l.ends_with("ok")).count(), 3);
    let dot = stdout(&["grope", "dot", "({* *})"]);
    assert!(dot.starts_with("digraph") && dot.contains("root ->"));
}

#[test]
fn milnor_commands() {
    assert_eq!(stdout(&["milnor", "expand", "[m2,m3]"]), "1 + y2*y3 - y3*y2\n");
    assert_eq!(stdout(&["milnor", "equal", "[m1 m2 m1', m3 m2 m3']", "1"]), "equal\n");
    assert_eq!(stdout(&["milnor", "equal", "m1 m2", "m2 m1"]), "not equal\n");
    assert_eq!(stdout(&["milnor", "rinv", "m3"]), "1\n");
    assert_eq!(stdout(&["milnor", "lcs-degree", "[m1,[m2,m3]]"]), "3\n");
    assert_eq!(stdout(&["milnor", "lcs-degree", "[m1, m2 m1 m2']"]), "infinite\n");
    assert_eq!(stdout(&["milnor", "expand", "[a,b]", "--gens", "a,b"]), "1 + y1*y2 - y2*y1\n");
}

#[test]
fn link_commands() {
    let mu = stdout(&["link", "mu", "borromean", "--index", "2,3,1"]);
    assert_eq!(mu.trim().trim_start_matches('-'), "1");
    assert_eq!(stdout(&["link", "trivial", "unlink(3)"]), "trivial\n");
    assert_eq!(stdout(&["link", "trivial", "hopf"]), "nontrivial\n");
    assert_eq!(stdout(&["link", "trivial", "whitehead_pattern"]), "trivial\n");
    assert_eq!(stdout(&["link", "almost-trivial", "borromean"]), "almost trivial\n");
}

#[test]
fn compose_then_certificate() {
    let dir = std::env::temp_dir().join(format!("mgk-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let composed = dir.join("composed.json");
    stdout(&["compose", "borromean", "bing_double", "--out", composed.to_str().unwrap()]);
    let text = std::fs::read_to_string(&composed).unwrap();
    assert!(text.contains("\"z2\""));
    assert_eq!(stdout(&["link", "trivial", composed.to_str().unwrap()]), "nontrivial\n");

    let cert = stdout(&["certificate", "borromean", "bing_double"]);
    let vals: Vec<i64> = cert.lines().take(3).map(|l| l.split(" = ").nth(1).unwrap().parse().unwrap()).collect();
    assert_eq!(vals[0].abs(), 1);
    assert_eq!(vals[1].abs(), 1);
    assert_eq!(vals[2], vals[0] * vals[1]);

    let bing = dir.join("bing.json");
    std::fs::write(&bing, stdout(&["link", "show", "bing_double"])).unwrap();
    assert_eq!(stdout(&["certificate", "borromean", bing.to_str().unwrap()]), cert);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn exit_codes() {
    assert_eq!(mgk(&["grope", "class", "({* *}"]).status.code(), Some(2));
    assert_eq!(mgk(&["milnor", "expand", "m1 q"]).status.code(), Some(2));
    assert_eq!(mgk(&["milnor", "rinv", "m1 m3"]).status.code(), Some(2));
    assert_eq!(mgk(&["link", "mu", "hopf", "--index", "1,1"]).status.code(), Some(2));
    assert_eq!(mgk(&["nonsense"]).status.code(), Some(2));
    assert_eq!(mgk(&["certificate", "unlink(2)", "core", "--target", "1"]).status.code(), Some(0));
    // a single unknot is not almost trivial, so the certificate is refused
    assert_eq!(mgk(&["certificate", "unlink(1)", "core"]).status.code(), Some(1));
}

#[test]
fn generator_guard() {
    assert_eq!(mgk(&["milnor", "expand", "m7"]).status.code(), Some(2));
    let out =
        Command::new(env!("CARGO_BIN_EXE_mgk")).args(["milnor", "expand", "m7"]).env("MGK_MAX_GENERATORS", "8").output().unwrap();
    assert!(out.status.success());
    let out =
        Command::new(env!("CARGO_BIN_EXE_mgk")).args(["milnor", "expand", "m1"]).env("MGK_MAX_GENERATORS", "9").output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_report_schema() {
    let text = stdout(&["verify", "certificate", "--seed", "3", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["command"], "verify certificate");
    assert_eq!(v["config"]["seed"], 3);
    assert_eq!(v["summary"]["failed"], 0);
    let cases = v["cases"].as_array().unwrap();
    assert_eq!(cases.len(), 2);
    for c in cases {
        assert!(c.get("input").is_some() && c.get("actual").is_some());
        assert_eq!(c["status"], "pass");
    }
    assert_eq!(mgk(&["verify", "sigma", "--trials", "0"]).status.code(), Some(2));
}
