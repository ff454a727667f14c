//! The binary end to end: exit codes, report shapes and the constants export.

use std::path::{Path, PathBuf};
use std::process::Command;

use serde_json::{json, Value};

fn config(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("configs").join(name)
}

fn tgla(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_tgla")).args(args).output().expect("binary runs");
    (out.status.code().expect("exit code"), String::from_utf8_lossy(&out.stderr).into_owned())
}

fn read(p: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(p).unwrap()).unwrap()
}

#[test]
fn check_on_a1_passes() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.json");
    let (code, _) = tgla(&["check", "--config", config("a1_identity.json").to_str().unwrap(), "--out", out.to_str().unwrap()]);
    assert_eq!(code, 0);
    let r = read(&out);
    assert_eq!(r["summary"]["fail"], 0);
    assert_eq!(r["seed"], 7);
    let ids: Vec<&str> = r["records"].as_array().unwrap().iter().map(|x| x["id"].as_str().unwrap()).collect();
    let mut sorted = ids.clone();
    sorted.sort();
    assert_eq!(ids, sorted);
    assert!(ids.contains(&"check/compatibility"));
}

#[test]
fn incompatible_eta_override_exits_one() {
    // η ≡ 1 on Q(D₂) does not respect ℂ[P/2ℤε_N].
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.json");
    let (code, _) = tgla(&["check", "--config", config("d2_diagram_eta.json").to_str().unwrap(), "--out", out.to_str().unwrap()]);
    assert_eq!(code, 1);
    let r = read(&out);
    let bad: Vec<&Value> = r["records"].as_array().unwrap().iter().filter(|x| x["status"] == "fail").collect();
    assert_eq!(bad.len(), 1);
    assert_eq!(bad[0]["id"], "check/compatibility");
    assert!(bad[0]["witness"]["alpha"].is_array());
}

#[test]
fn configuration_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("bad.json");
    std::fs::write(&p, "{\n  \"quadruple\": { \"N\": \"two\" }\n}\n").unwrap();
    let (code, err) = tgla(&["check", "--config", p.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains("line 2") && err.contains("quadruple.N"), "{err}");

    let text = std::fs::read_to_string(config("a2_coxeter.json")).unwrap().replace("\"conductor\": 6", "\"conductor\": 3");
    std::fs::write(&p, text).unwrap();
    let (code, err) = tgla(&["verify-theorem", "--config", p.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains("conductor"), "{err}");

    let text = std::fs::read_to_string(config("a2_coxeter.json")).unwrap().replace("\"sigma\": [1, 2, 0]", "\"sigma\": [1, 1, 0]");
    std::fs::write(&p, text).unwrap();
    let (code, err) = tgla(&["verify-theorem", "--config", p.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains("signed permutation"), "{err}");

    assert_eq!(tgla(&["realization", "gl_spiral"]).0, 2);
    assert_eq!(tgla(&["constants"]).0, 2);
}

#[test]
fn identities_have_one_record_per_profile() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.json");
    let (code, _) = tgla(&["verify-identities", "--window", "8", "--out", out.to_str().unwrap()]);
    assert_eq!(code, 0);
    let r = read(&out);
    let recs = r["records"].as_array().unwrap();
    let count = |name: &str| recs.iter().filter(|x| x["id"].as_str().unwrap().starts_with(&format!("identities/{name}/"))).count();
    assert_eq!(count("product_difference"), 5 + 25 + 125 + 625);
    assert_eq!(count("mixed_powers_s"), 2 + 4 + 8 + 16);
    assert_eq!(count("partial_fraction_s"), 4);
    assert_eq!(count("pole_difference"), 30);
    assert_eq!(r["parameters"]["window"], 8);
}

fn entry<'a>(table: &'a Value, g1: Value, g2: Value) -> &'a Value {
    table["entries"].as_array().unwrap().iter().find(|e| e["gen1"] == g1 && e["gen2"] == g2).expect("pair in the table")
}

#[test]
fn gl_homogeneous_constants_match_matrix_brackets() {
    let dir = tempfile::tempdir().unwrap();
    let (out, table) = (dir.path().join("r.json"), dir.path().join("t.json"));
    let (code, _) = tgla(&["constants", "--mode-window", "2", "--config", config("gl_homogeneous.json").to_str().unwrap(), "--out", out.to_str().unwrap(), "--export", table.to_str().unwrap()]);
    assert_eq!(code, 0);
    let t = read(&table);
    assert_eq!(t["algebra"], "gl_homogeneous");
    let one = json!({ "[0]": ["1"] });

    // ẽ_{1,2}(1,1) ↦ E₁₂t₀ and ẽ_{−1,−2}(1,0) = ẽ_{2,1}(1,0) ↦ −E₂₁, so the
    // bracket is −E₁₁t₀ + E₂₂t₀ = ẽ_{−1,−1}(1,1) − ẽ_{−2,−2}(1,1).
    let e = entry(&t, json!({ "i": 1, "j": 2, "c": [0], "n": 1 }), json!({ "i": -1, "j": -2, "c": [0], "n": 0 }));
    assert_eq!(e["central"]["num"], json!({}));
    let res = e["result"].as_array().unwrap();
    assert_eq!(res.len(), 2);
    assert_eq!(res[0]["gen"], json!({ "i": -1, "j": -1, "c": [0], "n": 1 }));
    assert_eq!(res[0]["num"], one);
    assert_eq!(res[1]["gen"], json!({ "i": -2, "j": -2, "c": [0], "n": 1 }));
    assert_eq!(res[1]["num"], json!({ "[0]": ["-1"] }));

    // ẽ_{−1,−1}(q⁻¹,1) = −q·E₁₁t₀t and ẽ_{−1,−1}(q,−1) = −q·E₁₁t₀⁻¹t⁻¹;
    // [E₁₁t₀t, E₁₁t₀⁻¹t⁻¹] = q⁻¹𝐜, so the bracket is q𝐜 = s²𝐜.
    let e = entry(&t, json!({ "i": -1, "j": -1, "c": [-1], "n": 1 }), json!({ "i": -1, "j": -1, "c": [1], "n": -1 }));
    assert_eq!(e["result"], json!([]));
    assert_eq!(e["central"]["num"], json!({ "[2]": ["1"] }));
    assert_eq!(e["central"]["den"], one);

    let r = read(&out);
    assert_eq!(r["summary"]["fail"], 0);
    assert!(r["records"].as_array().unwrap().iter().all(|x| x["id"].as_str().unwrap().starts_with("constants/dictionary/")));
}

#[test]
fn realization_command_runs_dictionary_and_vertex_checks() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.json");
    let (code, _) = tgla(&["realization", "o2N_twisted", "--mode-window", "1", "--samples", "2", "--out", out.to_str().unwrap()]);
    assert_eq!(code, 0);
    let r = read(&out);
    let ids: Vec<&str> = r["records"].as_array().unwrap().iter().map(|x| x["id"].as_str().unwrap()).collect();
    for check in ["dictionary", "relations", "fixed_point", "invariance", "theorem"] {
        assert!(ids.contains(&format!("realization/o2N_twisted/{check}").as_str()), "{check}");
    }
}

#[test]
fn verify_theorem_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a.json"), dir.path().join("b.json"));
    let cfg = config("a2_coxeter.json");
    for p in [&a, &b] {
        assert_eq!(tgla(&["verify-theorem", "--config", cfg.to_str().unwrap(), "--samples", "12", "--jobs", "2", "--out", p.to_str().unwrap()]).0, 0);
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    let r = read(&a);
    assert_eq!(r["records"].as_array().unwrap().iter().filter(|x| x["status"] == "vacuous").count(), 1);
}
