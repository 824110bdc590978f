use std::path::PathBuf;
use tropih::cli::run_to;
use tropih::instance::Instance;
use tropih::suites::{default_corpus, suite_files};

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name).display().to_string()
}

fn corpus(rel: &str) -> String {
    default_corpus().join(rel).display().to_string()
}

fn tih(args: &[&str]) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let mut full = vec!["tih"];
    full.extend_from_slice(args);
    let code = run_to(full, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn rows(out: &str) -> Vec<&str> {
    out.lines().filter(|l| !l.starts_with('#') && !l.starts_with("p ")).collect()
}

#[test]
fn homology_gm_cohomology_of_three_rays() {
    let (code, out, _) = tih(&["homology", &corpus("cone/u31_m+0.json"), "--variant", "gm", "--coeff", "q", "--flavor", "cohom"]);
    assert_eq!(code, 0);
    assert_eq!(rows(&out), vec!["0  0  Q"]);
}

#[test]
fn homology_of_segment() {
    let (code, out, _) = tih(&["homology", &corpus("onedim/segment_zero.json"), "--variant", "nongm"]);
    assert_eq!(code, 0);
    assert_eq!(rows(&out), vec!["0  1  Q", "1  1  Q"]);
}

#[test]
fn homology_of_empty_complex() {
    let (code, out, _) = tih(&["homology", &data("empty.json")]);
    assert_eq!(code, 0);
    assert!(rows(&out).is_empty());
}

#[test]
fn homology_json_is_deterministic() {
    let args = ["homology", &corpus("duality/square_pair.json"), "--flavor", "bm", "--coeff", "z", "--json"];
    let a = tih(&args);
    let b = tih(&args);
    assert_eq!(a.0, 0);
    assert_eq!(a.1, b.1);
    let v: serde_json::Value = serde_json::from_str(&a.1).unwrap();
    assert_eq!(v["flavor"], "IH_BM");
}

#[test]
fn relative_and_q_range() {
    // IH(F, F ∖ v) for the three-ray fan, non-GM, p = 0: Q^3 at q = 1
    let (code, out, _) = tih(&["homology", &corpus("cone/u31_m+0.json"), "--rel", "0", "--p", "0", "--variant", "nongm", "--flavor", "ih"]);
    assert_eq!(code, 0);
    assert_eq!(rows(&out), vec!["0  1  Q^3"]);
    let (code, out, _) = tih(&["homology", &corpus("cone/u31_m+0.json"), "--rel", "0", "--p", "0", "--q", "0", "--variant", "nongm", "--flavor", "ih"]);
    assert_eq!(code, 0);
    assert!(rows(&out).is_empty());
}

#[test]
fn exit_codes() {
    assert_eq!(tih(&["info", &data("malformed.json")]).0, 2);
    assert_eq!(tih(&["homology", &data("malformed.json")]).0, 2);
    assert_eq!(tih(&["oracle", "--suite", "nope"]).0, 2);
    assert_eq!(tih(&["frobnicate"]).0, 2);
    // BM of a non-conical unbounded instance
    let (code, _, err) = tih(&["homology", &corpus("independence/u31_split.json"), "--flavor", "bm"]);
    assert_eq!(code, 4, "{err}");
    assert_eq!(tih(&["homology", &corpus("cone/u31_m+0.json"), "--flavor", "wat"]).0, 2);
}

#[test]
fn info_reports_multitangent_ranks() {
    let (code, out, _) = tih(&["info", &corpus("cone/u31_m+0.json"), "--json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["cells"].as_array().unwrap().len(), 4);
    assert_eq!(v["strata"].as_array().unwrap().len(), 4);
    assert_eq!(v["cells"][0]["multitangent_ranks"][1], 2);

    let (code, out, _) = tih(&["info", &data("point.json"), "--json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["cells"].as_array().unwrap().len(), 1);
    assert_eq!(v["cells"][0]["multitangent_ranks"][0], 1);
}

#[test]
fn validate_command() {
    assert_eq!(tih(&["validate", &corpus("tms/tripod_m+0.json")]).0, 0);
    assert_eq!(tih(&["validate", &data("malformed.json")]).0, 2);
}

#[test]
fn oracle_suites() {
    let (code, out, _) = tih(&["oracle", "--suite", "cone"]);
    assert_eq!(code, 0, "{out}");
    let (code, out, _) = tih(&["oracle", "--suite", "duality"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("expected failure"));
    let (code, _, _) = tih(&["oracle", &corpus("onedim/random_03_path_rays.json")]);
    assert_eq!(code, 0);
}

#[test]
fn oracle_reports_mismatch_with_exit_five() {
    let mut inst = Instance::load(&default_corpus().join("onedim/segment_zero.json")).unwrap();
    inst.expected.as_mut().unwrap().insert((0, 0), tropih::linalg::HomologyGroup::free(7));
    let path = std::env::temp_dir().join("tih_wrong_snapshot.json");
    std::fs::write(&path, inst.to_pretty()).unwrap();
    let (code, out, _) = tih(&["oracle", &path.display().to_string()]);
    assert_eq!(code, 5);
    assert!(out.contains("(0,0): expected Z^7, got 0"), "{out}");
}

#[test]
fn instance_files_round_trip() {
    for suite in ["cone", "onedim", "tms", "duality", "independence"] {
        for path in suite_files(&default_corpus(), suite).unwrap() {
            let text = std::fs::read_to_string(&path).unwrap();
            let a = text.parse::<Instance>().unwrap();
            let b = a.to_pretty().parse::<Instance>().unwrap();
            assert_eq!(a.to_json(), b.to_json(), "{}", path.display());
            assert_eq!(a.to_pretty(), text, "{} is not in canonical form", path.display());
        }
    }
}
