use std::process::Command;

fn simembed(args: &[&str], env_seed: Option<&str>) -> (i32, String, String) {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_simembed"));
    cmd.args(args).env_remove("SIMEMBED_SEED");
    if let Some(s) = env_seed {
        cmd.env("SIMEMBED_SEED", s);
    }
    let out = cmd.output().expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
    )
}

#[test]
fn fivepaths_on_five_grid_reports_no_counterexample() {
    let (code, out, _) = simembed(&["fivepaths", "--grid", "5"], None);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["summary"], "no counterexample");
    assert_eq!(v["coverage"]["covered"], 15);
}

#[test]
fn fivepaths_with_four_paths_finds_a_placement() {
    let (code, out, _) = simembed(&["fivepaths", "--grid", "5", "--paths", "12345,13542,25134,32415"], None);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["summary"], "counterexample found");
    assert_eq!(v["check"]["placement"].as_array().unwrap().len(), 5);
}

#[test]
fn fivepaths_budget_and_sampling() {
    let (code, _, err) = simembed(&["fivepaths", "--grid", "9"], None);
    assert_eq!(code, 2, "{err}");
    let (code, out, _) = simembed(&["fivepaths", "--grid", "9", "--samples", "200", "--seed", "4"], None);
    assert_eq!(code, 0);
    assert!(out.contains("\"exhaustive\": false"));
}

#[test]
fn gen_is_reproducible_from_env_seed() {
    let args = ["gen", "--kind", "plane-triangulation", "--kind", "caterpillar", "--n", "12"];
    let a = simembed(&args, Some("17"));
    let b = simembed(&args, Some("17"));
    let c = simembed(&[&args[..], &["--seed", "17"]].concat(), Some("3"));
    assert_eq!(a.0, 0);
    assert_eq!(a.1, b.1);
    assert_eq!(a.1, c.1);
    simembed::io::parse_instance(a.1.as_bytes()).unwrap();
}

#[test]
fn embed_render_and_usage_errors() {
    let dir = tempfile::tempdir().unwrap();
    let inst = dir.path().join("i.json");
    let res = dir.path().join("r.json");
    let svg = dir.path().join("r.svg");
    std::fs::write(
        &inst,
        r#"{"n": 7, "mapping": "given", "layers": [
            {"class": "path", "edges": [[0,1],[1,2],[2,3],[3,4],[4,5],[5,6]]},
            {"class": "path", "edges": [[1,4],[4,0],[0,3],[3,2],[2,5],[5,6]]}]}"#,
    )
    .unwrap();
    let p = |x: &std::path::Path| x.to_str().unwrap().to_string();
    let (code, _, _) = simembed(&["embed", "--in", &p(&inst), "--out", &p(&res), "--svg", &p(&svg)], None);
    assert_eq!(code, 0);
    let doc = simembed::io::parse_result(&std::fs::read(&res).unwrap()).unwrap();
    assert!(doc.certificate.ok);
    assert_eq!((doc.width, doc.height), (7, 7));
    assert_eq!(std::fs::read_to_string(&svg).unwrap().matches("<line").count(), 12);

    let (code, out, _) = simembed(&["render", "--in", &p(&res)], None);
    assert_eq!(code, 0);
    assert!(out.starts_with("<svg"));

    // A bound the drawing cannot meet turns the certificate into a failure.
    let (code, _, _) = simembed(&["certify", "--in", &p(&res), "--bounds", "3x3"], None);
    assert_eq!(code, 2);

    std::fs::write(&inst, "{\"n\": 3,").unwrap();
    let (code, _, err) = simembed(&["embed", "--in", &p(&inst)], None);
    assert_eq!(code, 1);
    assert!(err.contains("line 1"), "{err}");
    let (code, _, _) = simembed(&["embed", "--bounds", "oops"], None);
    assert_eq!(code, 1);
}
