use std::process::{Command, Output};

use appell_f4::connection::{
    build_intersection, build_xi, build_xi_hat, ConnectionSystem, ParameterDictionary,
};
use appell_f4::forms::{FMatrix, MatrixOneForm};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_f4pfaff"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", stdout(o)))
}

#[test]
fn verify_all_passes() {
    let o = run(&["verify", "all", "--json"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v = json(&o);
    let passed = v["summary"]["passed"].as_u64().unwrap();
    assert!(passed >= 20, "{passed}");
    assert_eq!(v["summary"]["failed"], 0);
    for c in v["checks"].as_array().unwrap() {
        assert!(c["anchor"].as_str().is_some_and(|a| !a.is_empty()));
    }
}

#[test]
fn verify_single_check() {
    let o = run(&["verify", "conn-hat.flatness", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["checks"].as_array().unwrap().len(), 1);
    assert_eq!(v["checks"][0]["id"], "conn-hat.flatness");
    assert_eq!(v["checks"][0]["pass"], true);
}

#[test]
fn verify_plain_output_lists_anchor() {
    let o = run(&["verify", "orth.duality", "--sequential"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("PASS") && s.contains("lemma orth"), "{s}");
}

#[test]
fn verify_unknown_id_is_usage_error() {
    let o = run(&["verify", "nosuch"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("nosuch"));
}

#[test]
fn list_names_every_check() {
    let o = run(&["list"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.lines().count() >= 20);
    assert!(s.contains("pfaff.certify"));
}

#[test]
fn emit_c_json_round_trips() {
    let o = run(&["emit", "C", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let m: FMatrix = serde_json::from_slice(&o.stdout).unwrap();
    for k in 0..3 {
        assert!(m.get(k, 3).is_zero());
    }
    assert_eq!(m, build_intersection(&ParameterDictionary).c);
    let again = serde_json::to_string_pretty(&m).unwrap();
    assert_eq!(again.trim(), stdout(&o).trim());
}

#[test]
fn emit_xi_and_xihat_json_round_trip() {
    let o = run(&["emit", "xi"]);
    let form: MatrixOneForm = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(form, build_xi(&ParameterDictionary).form);
    let o = run(&["emit", "xihat"]);
    let sys: ConnectionSystem = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(sys, build_xi_hat(&ParameterDictionary));
}

#[test]
fn emit_xihat_latex_has_five_residues() {
    let o = run(&["emit", "xihat", "--format", "latex"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert_eq!(s.matches("\\begin{pmatrix}").count(), 5);
    for d in [
        "d\\log(y_1)",
        "d\\log(y_2)",
        "d\\log(y_1-1)",
        "d\\log(y_2-1)",
        "d\\log(y_1+y_2-1)",
    ] {
        assert!(s.contains(d), "{d}");
    }
    assert!(s.contains("\\frac"));
}

#[test]
fn emit_other_objects() {
    for name in ["xitilde", "Chat", "C1", "C2", "Gpartial"] {
        for format in ["json", "latex"] {
            let o = run(&["emit", name, "--format", format]);
            assert_eq!(o.status.code(), Some(0), "{name} {format}");
            assert!(!o.stdout.is_empty());
        }
    }
    assert_eq!(run(&["emit", "nosuch"]).status.code(), Some(2));
}

#[test]
fn monodromy_y1_matches_exponents() {
    let o = run(&[
        "monodromy",
        "y1",
        "--a",
        "1/3",
        "--b",
        "1/5",
        "--c1",
        "1/7",
        "--c2",
        "1/11",
        "--json",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v = json(&o);
    assert!(v["max_deviation"].as_f64().unwrap() <= 1e-6);
    assert_eq!(v["exponents"], serde_json::json!(["0", "0", "6/7", "6/7"]));
}

#[test]
fn monodromy_line_json() {
    let o = run(&["monodromy", "line", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["divisor"], "line");
    assert_eq!(v["orientation"], "counterclockwise");
    assert_eq!(v["transport"].as_array().unwrap().len(), 4);
    assert_eq!(v["eigenvalues"][0].as_array().unwrap().len(), 2);
}

#[test]
fn monodromy_plain_output() {
    let o = run(&["monodromy", "y2m1", "--radius", "0.15", "--tol", "1e-11"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("max deviation"));
}

#[test]
fn resonant_c1_exits_3() {
    let o = run(&["monodromy", "y1", "--c1", "1"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("1-c1"), "{}", stderr(&o));
}

#[test]
fn integer_symbol_is_named() {
    let o = run(&["monodromy", "y1", "--a", "1"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("a00"), "{}", stderr(&o));
    let o = run(&["monodromy", "y1", "--b", "-1/7", "--c1", "6/7"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("b10"), "{}", stderr(&o));
}

#[test]
fn float_parameters_are_rejected() {
    let o = run(&["monodromy", "y1", "--a", "0.3"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn flags_override_params_file() {
    let dir = std::env::temp_dir().join(format!("f4pfaff-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let file = dir.join("params.json");
    std::fs::write(
        &file,
        r#"{"a":"1/3","b":"1/5","c1":"1","c2":"1/11","tol":1e-10}"#,
    )
    .unwrap();
    let path = file.to_str().unwrap();
    assert_eq!(
        run(&["monodromy", "y1", "--params-file", path])
            .status
            .code(),
        Some(3)
    );
    let o = run(&[
        "monodromy",
        "y1",
        "--params-file",
        path,
        "--c1",
        "1/7",
        "--json",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(json(&o)["max_deviation"].as_f64().unwrap() <= 1e-6);
    std::fs::write(&file, r#"{"nonsense": 1}"#).unwrap();
    assert_eq!(
        run(&["monodromy", "y1", "--params-file", path])
            .status
            .code(),
        Some(2)
    );
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn unknown_divisor_is_usage_error() {
    assert_eq!(run(&["monodromy", "y3"]).status.code(), Some(2));
}

#[test]
fn flatness_in_double_double() {
    let o = run(&[
        "flatness",
        "--precision-bits",
        "106",
        "--tol",
        "1e-18",
        "--json",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(json(&o)["defect"].as_f64().unwrap() < 1e-15);
    let o = run(&["flatness", "--precision-bits", "200"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn certificate_dump_is_json() {
    let o = run(&["certificates"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["pfaff_rows"].as_array().unwrap().len(), 8);
    assert!(v["library"]["entries"]["L2.1"]["potential"].is_object());
}
