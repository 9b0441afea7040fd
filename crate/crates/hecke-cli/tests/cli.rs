use std::process::Command;

use hecke_cli::{element_json, parse_element, parse_spec, run};
use hecke_functor::hecke::spec::{GammaGroup, HeckeSpec};
use hecke_functor::hecke::ImAlgebra;
use hecke_functor::rootdata::intmat::Mat;
use hecke_functor::rootdata::{build_classical, Family, Isogeny};
use serde_json::{json, Value};

fn call(args: &[&str]) -> (i32, Value) {
    let mut argv = vec!["hecke-functor"];
    argv.extend_from_slice(args);
    let (code, out) = run(argv);
    let v = serde_json::from_str(&out).unwrap_or_else(|e| panic!("not JSON ({e}): {out}"));
    (code, v)
}

#[test]
fn sln_report() {
    for n in 2..=5 {
        let (code, v) = call(&["example", "sln", "--n", &n.to_string()]);
        assert_eq!(code, 0);
        assert_eq!(v["w_chi_order"], n);
        assert_eq!(v["component_group_order"], n);
        assert_eq!(v["component_group_cyclic"], true);
        assert_eq!(v["tau_generator"], if n == 2 { "ζ_2^1".to_string() } else { format!("ζ_{n}^-1") });
        assert_eq!(v["sl_to_gl_pullback_size"], n);
        for t in v["ad_t_pullback"].as_array().unwrap() {
            assert_eq!(t["images"].as_array().unwrap().len(), 1);
            assert_eq!(t["images"][0]["m"], 1);
        }
    }
    let (code, _) = call(&["example", "sln", "--n", "12"]);
    assert_eq!(code, 2);
}

#[test]
fn identity_times_simple_reflection() {
    let (code, v) = call(&["hecke", "mul", "--spec", "a1_sc", "--a", r#"[{"t":[0]}]"#, "--b", r#"[{"t":[0],"w_word":[0]}]"#]);
    assert_eq!(code, 0);
    let p = v["product"].as_array().unwrap();
    assert_eq!(p.len(), 1);
    assert_eq!(p[0]["t"], json!([0]));
    assert_eq!(p[0]["w_word"], json!([0]));
    assert_eq!(p[0]["coeff_text"], "1");
}

#[test]
fn emitted_elements_reparse() {
    let spec = json!({"family": "A", "n": 2, "isogeny": "ad", "label": 2});
    let (_, v) = call(&["hecke", "mul", "--spec", &spec.to_string(), "--a", r#"[{"t":[0,0],"w_word":[0,1]}]"#, "--b", r#"[{"t":[1,0],"w_word":[1],"coeff":3}]"#]);
    let h = ImAlgebra::new(parse_spec(&spec).unwrap()).unwrap();
    let e = parse_element(&h, &v["product"]).unwrap();
    assert_eq!(element_json(&h, &e), v["product"]);
    assert!(!e.is_zero());
}

#[test]
fn every_verb_emits_reparseable_json() {
    let cases: Vec<Vec<&str>> = vec![
        vec!["rootdatum", "--datum", "c2_ad_label2"],
        vec!["weyl", "--datum", "a2_sc", "--element", r#"{"t":[1,0],"w_word":[0]}"#],
        vec!["hecke", "center-check", "--spec", "a2_sc", "--theta-orbit", "[1,0]"],
        vec!["hecke", "ad-xg", "--spec", "a1_ad", "--x-g", r#"["1/2"]"#],
        vec!["finrep", "--group", "s4", "--normal", r#""derived""#],
        vec!["param", "component-group", "--param", "sl3_example"],
        vec!["param", "tau", "--param", "sl3_example", "--g", "[1,0]"],
        vec!["param", "enhancements", "--param", "sl3_example"],
        vec!["--seed", "3", "param", "sample", "--tag", r#"{"factors":[{"tag":"GLn","n":3}]}"#],
        vec!["pullback", "--hom", "ad_t_sl3", "--param", "sl3_example", "--rho", "1"],
    ];
    for args in cases {
        let mut argv = vec!["hecke-functor"];
        argv.extend_from_slice(&args);
        let (code, out) = run(argv.clone());
        assert_eq!(code, 0, "{args:?}: {out}");
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(format!("{}\n", serde_json::to_string_pretty(&v).unwrap()), out, "{args:?}");
        assert_eq!(run(argv).1, out, "{args:?} is not deterministic");
    }
}

#[test]
fn center_checks() {
    let (_, v) = call(&["hecke", "center-check", "--spec", "a1_sc", "--theta-orbit", "[2]"]);
    assert_eq!(v["central"], true);
    let (_, v) = call(&["hecke", "center-check", "--spec", "a1_sc", "--elt", r#"[{"t":[0],"w_word":[0]}]"#]);
    assert_eq!(v["central"], false);
}

#[test]
fn ad_t_pullback_multiplies_by_zeta() {
    let (code, v) = call(&["pullback", "--hom", "ad_t_sl3", "--param", "sl3_example", "--rho", "0"]);
    assert_eq!(code, 0);
    let t = &v["terms"][0];
    assert_eq!(t["m"], 1);
    assert_ne!(t["rho_tilde"], 0);
    let (_, d) = call(&["pullback", "--hom", "ad_t_sl3", "--param", "sl3_example", "--rho", "0", "--convention", "direct"]);
    assert_ne!(d["terms"][0]["rho_tilde"], t["rho_tilde"]);
}

#[test]
fn request_file_and_output_file() {
    let dir = std::env::temp_dir().join(format!("hecke-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let out = dir.join("out.json");
    let root = concat!(env!("CARGO_MANIFEST_DIR"), "/../../fixtures/request_pullback.json");
    let (code, printed) = run(["hecke-functor", "pullback", "--in", root, "--out", out.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(printed.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["terms"].as_array().unwrap().len(), 3);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn exit_codes() {
    // Validation: malformed input.
    assert_eq!(call(&["hecke", "mul", "--spec", "a1_sc", "--a", r#"[{"t":[0,0]}]"#, "--b", "[]"]).0, 2);
    assert_eq!(call(&["param", "sample", "--tag", r#"{"factors":[{"tag":"SLn","n":2}]}"#]).0, 2);
    assert_eq!(call(&["pullback", "--hom", "sl3_to_gl3", "--param", "sl3_example"]).0, 2);
    assert_eq!(call(&["rootdatum", "--datum", "no_such_fixture"]).0, 2);
    // Computation: a well-formed x_g violating the lattice condition.
    let (code, v) = call(&["hecke", "ad-xg", "--spec", "a1_ad", "--x-g", r#"["1/4"]"#]);
    assert_eq!(code, 1);
    assert_eq!(v["kind"], "computation");
    assert_eq!(run(["hecke-functor", "no-such-verb"]).0, 2);
}

#[test]
fn twist_by_a_character_of_gamma() {
    let a1 = build_classical(Family::A, 1, Isogeny::Sc).unwrap();
    let d = a1.direct_sum(&a1).direct_sum(&a1);
    let cyc = Mat::from_rows(&[vec![0, 0, 1], vec![1, 0, 0], vec![0, 1, 0]], 3);
    let gam = GammaGroup::generated_by(&d, &[cyc]).unwrap();
    let spec = HeckeSpec::new(d, vec![(1, 1); 3], vec!["z".into(); 3], gam, None).unwrap();
    let sj = serde_json::to_string(&spec.to_json()).unwrap();
    // ψ(r) = ζ_3 on the generator r = 1 and ζ_3^2 on its square.
    let mut psi = vec!["\"0/3\"".to_string(); 3];
    psi[1] = "\"1/3\"".into();
    psi[spec.gamma().mul(1, 1) as usize] = "\"2/3\"".into();
    let psi = format!("[{}]", psi.join(","));
    let (code, v) = call(&["hecke", "twist", "--spec", &sj, "--psi", &psi, "--elt", r#"[{"t":[0,0,0],"r":1}]"#]);
    assert_eq!(code, 0, "{v}");
    assert_eq!(v["relations_preserved"], true);
    assert_ne!(v["image"][0]["coeff_text"], "1");
}

#[test]
fn fixture_directory_override() {
    let dir = std::env::temp_dir().join(format!("hecke-fixtures-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    std::fs::write(dir.join("mine.json"), r#"{"family": "A", "n": 3, "isogeny": "ad"}"#).unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_hecke-functor"))
        .args(["weyl", "--datum", "mine"])
        .env("HECKE_FUNCTOR_FIXTURES", &dir)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["order"], 24);
    let missing = Command::new(env!("CARGO_BIN_EXE_hecke-functor"))
        .args(["weyl", "--datum", "a2_sc"])
        .env("HECKE_FUNCTOR_FIXTURES", &dir)
        .output()
        .unwrap();
    assert_eq!(missing.status.code(), Some(2));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn text_output_is_sorted_lines() {
    let (code, out) = run(["hecke-functor", "--format", "text", "param", "tau", "--param", "sl3_example", "--g", "[1,0]"]);
    assert_eq!(code, 0);
    assert_eq!(out, "g = [1,0]\ntau = [\"1\",\"ζ_3^-1\",\"ζ_3^1\"]\n");
}
