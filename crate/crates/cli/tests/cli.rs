use std::process::Command;

use cirquent::calculus::Proof;
use cirquent::cl2::Cl2Proof;

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = cirquent_cli::run(
        std::iter::once("cirquent").chain(args.iter().copied()),
        &mut out,
        &mut err,
    );
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

#[test]
fn proves_contraction_example() {
    let (code, out, _) = run(&["prove", "p -> p & p"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("proved ~p | p & p"), "{out}");
    assert!(out.contains("contract"));
}

#[test]
fn refuses_general_contraction() {
    let (code, out, _) = run(&["prove", "P -> P & P"]);
    assert_eq!(code, 1);
    let v: serde_json::Value = serde_json::from_str(out.trim()).unwrap();
    assert_eq!(v["verdict"], "unprovable");
    assert!(v["certificate"]["cl2-exhausted"].is_object());
}

#[test]
fn unprovable_binary_formula_reports_exhausted_search() {
    let (code, out, _) = run(&["prove", "P | Q"]);
    assert_eq!(code, 1);
    let v: serde_json::Value = serde_json::from_str(out.trim()).unwrap();
    let ex = &v["certificate"]["cl2-exhausted"];
    assert_eq!(ex["explored"], 1);
    assert_eq!(ex["pairings"], serde_json::json!([]));
}

#[test]
fn decide_prints_verdict() {
    let (code, out, _) = run(&["decide", "P | ~P"]);
    assert_eq!(code, 0);
    assert_eq!(
        out.trim(),
        r#"{"formula":"P | ~P","cl6":"provable","cl2":"provable","classical":true,"binarity":"normal-binary"}"#
    );
}

#[test]
fn proof_round_trips_through_check() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("proof.json");
    let p = path.to_str().unwrap();
    let (code, _, _) = run(&["prove", "(P & p) | ~P | ~p", "--json", p]);
    assert_eq!(code, 0);
    let text = std::fs::read_to_string(&path).unwrap();
    let proof = Proof::from_json(&text).unwrap();
    assert_eq!(proof.to_json(), text);
    assert_eq!(run(&["check", p]), (0, "ok\n".to_string(), String::new()));
}

#[test]
fn tampered_proof_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("proof.json");
    let p = path.to_str().unwrap();
    assert_eq!(run(&["prove", "p -> p & p", "--json", p]).0, 0);
    let mut proof = Proof::from_json(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let root = proof.nodes.iter_mut().find(|n| n.id == proof.root).unwrap();
    root.cirquent.pool[0] = cirquent::Formula::parse("q").unwrap();
    std::fs::write(&path, proof.to_json()).unwrap();
    let (code, out, _) = run(&["check", p]);
    assert_eq!(code, 1);
    assert!(out.starts_with("violation"), "{out}");
}

#[test]
fn checks_cl2_proofs() {
    let f = cirquent::Cl2Formula::parse("P | ~P").unwrap();
    let decision = cirquent::decide_cl2(&f, &Default::default()).unwrap();
    let proof: &Cl2Proof = decision.proof().unwrap();
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cl2.json");
    std::fs::write(&path, proof.to_json()).unwrap();
    let p = path.to_str().unwrap();
    assert_eq!(run(&["check", "--cl2", p]).0, 0);
    // Read as a CL6 proof, the file does not parse.
    assert_eq!(run(&["check", p]).0, 2);
}

#[test]
fn renders_cirquent_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c.json");
    std::fs::write(&path, r#"{"pool":[["atom","p"],["natom","p"]],"groups":[[1,2]]}"#).unwrap();
    let (code, out, _) = run(&["render", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(out.contains('p') && out.contains("~p"), "{out}");
    assert_eq!(out.lines().count(), 4);
}

#[test]
fn render_rejects_bad_positions() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c.json");
    std::fs::write(&path, r#"{"pool":[["atom","p"]],"groups":[[2]]}"#).unwrap();
    assert_eq!(run(&["render", path.to_str().unwrap()]).0, 2);
}

#[test]
fn parse_error_reports_position() {
    let (code, out, err) = run(&["prove", "p & & q"]);
    assert_eq!(code, 2);
    assert!(out.is_empty());
    assert!(err.contains("parse error"), "{err}");
    assert!(err.contains("p & & q\n"), "{err}");
    assert!(err.contains('^'));
}

#[test]
fn formula_can_come_from_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("f.txt");
    std::fs::write(&path, "P -> P\n").unwrap();
    assert_eq!(run(&["prove", path.to_str().unwrap()]).0, 0);
}

#[test]
fn enumerate_small_space_csv() {
    let (code, out, _) = run(&["enumerate", "--max-nodes", "3", "--atoms", "P,p"]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "formula,cl6,cl2,classical,binarity");
    assert_eq!(lines.len(), 1 + 6 + 72);
    assert_eq!(lines[1], "\"P\",unprovable,unprovable,false,normal-binary");
    assert!(lines.contains(&"\"P | ~P\",provable,provable,true,normal-binary"));
}

#[test]
fn enumerate_json_lines() {
    let (code, out, _) = run(&[
        "enumerate", "--max-nodes", "3", "--atoms", "p", "--format", "json", "--no-constants",
    ]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().count(), 2 + 8);
    for line in out.lines() {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        assert_eq!(v["cl6"] == "provable", v["classical"] == true);
    }
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["frobnicate"]).0, 2);
    assert_eq!(run(&["enumerate", "--max-nodes", "3", "--atoms", "3x"]).0, 2);
    assert_eq!(run(&["check", "/nonexistent/proof.json"]).0, 2);
}

#[test]
fn atom_budget_flag_and_environment() {
    let (code, _, err) = run(&["--max-atoms", "1", "prove", "p | q | ~p"]);
    assert_eq!(code, 2);
    assert!(err.contains("budget"), "{err}");

    let binary = env!("CARGO_BIN_EXE_cirquent");
    let status = Command::new(binary)
        .args(["prove", "p | q | ~p"])
        .env("CIRQUENT_MAX_ATOMS", "1")
        .output()
        .unwrap();
    assert_eq!(status.status.code(), Some(2));
    let status = Command::new(binary)
        .args(["prove", "p | q | ~p"])
        .env("CIRQUENT_MAX_ATOMS", "2")
        .output()
        .unwrap();
    assert_eq!(status.status.code(), Some(0));
}
