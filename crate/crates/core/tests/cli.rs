use std::process::{Command, Output};

use serde_json::Value;

use satake::hecke::HeckeElement;
use satake::mvcells::{CellList, OrbitSign};
use satake::rootdata::RootDatum;

fn satake(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_satake")).args(args).env_remove("SATAKE_CACHE_DIR").output().unwrap()
}

fn json_of(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn error_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stderr).unwrap()
}

#[test]
fn pgl2_minus_cells() {
    let v = json_of(&satake(&["mv-cells", "--group", "PGL2", "--mu", "3", "--nu", "1", "--sign", "minus"]));
    assert_eq!(v["cells"], serde_json::json!([{"A": 0, "Gm": 1}]));
    let back = CellList::from_json(&v).unwrap();
    assert_eq!(back.sign, OrbitSign::Minus);
    assert_eq!(back.cells, vec![(0, 1)]);
}

#[test]
fn hecke_identity_and_round_trip() {
    let v = json_of(&satake(&["hecke", "mul", "--group", "GL2", "--mu", "1,0", "--lambda", "0,0"]));
    assert_eq!(HeckeElement::from_json(&v).unwrap(), HeckeElement::basis(&[1, 0]));
    let v = json_of(&satake(&["hecke", "mul", "--group", "GL2", "--mu", "1,0", "--lambda", "1,0"]));
    let h = HeckeElement::from_json(&v).unwrap();
    assert_eq!(h.coeff(&[2, 0]), satake::ZPoly::one());
    assert_eq!(h.coeff(&[1, 1]), satake::ZPoly::new(vec![1, 1]));
}

#[test]
fn diagram_command() {
    let v = json_of(&satake(&["satake", "diagram", "--group", "PGL2", "--q", "5", "--max-height", "6"]));
    assert_eq!(v["ok"], Value::Bool(true));
    assert!(v["cases"].as_u64().unwrap() > 7);
    let bad = satake(&["satake", "diagram", "--group", "PGL2", "--q", "6"]);
    assert_eq!(bad.status.code(), Some(1));
}

#[test]
fn vinberg_command() {
    let v = json_of(&satake(&["vinberg", "check", "--group", "PGL2", "--mu", "3", "--twist", "0"]));
    assert_eq!(v["extends"], Value::Bool(true));
    let v = json_of(&satake(&["vinberg", "check", "--group", "PGL2", "--mu", "3", "--twist", "-1"]));
    assert_eq!(v["extends"], Value::Bool(false));
    assert_eq!(v["witness"]["nu"], serde_json::json!([3]));
}

#[test]
fn rootdata_round_trip() {
    let v = json_of(&satake(&["rootdata", "--group", "Sp4"]));
    assert_eq!(v["weyl_order"], 8);
    let d = RootDatum::from_json_str(&v["datum"].to_string()).unwrap();
    assert_eq!(d.weyl().order(), 8);
}

#[test]
fn custom_datum_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("d.json");
    let json = serde_json::to_string(&RootDatum::preset("SL3").unwrap().to_json()).unwrap();
    std::fs::write(&path, json).unwrap();
    let v = json_of(&satake(&["mv-cells", "--datum", path.to_str().unwrap(), "--mu", "1,1", "--nu", "0,0"]));
    assert_eq!(v["top_cells"], 2);
}

#[test]
fn oracle_commands() {
    let v = json_of(&satake(&["oracle", "conv", "--group", "GL2", "--q", "3", "--mu", "1,0", "--lambda", "1,0"]));
    assert_eq!(v["counts"].as_array().unwrap().len(), 2);
    let v = json_of(&satake(&["oracle", "schubert", "--group", "GL2", "--q", "3", "--mu", "1,0"]));
    assert_eq!(v["count"], 4);
    let v = json_of(&satake(&["oracle", "semiinf", "--group", "PGL2", "--q", "2", "--mu", "3", "--nu", "-3", "--sign", "minus"]));
    assert_eq!(v["count"], 8);
    let v = json_of(&satake(&["oracle", "flags", "--group", "SL3", "--q", "2", "--y", "e", "--x", "e"]));
    assert_eq!((v["count"].as_u64(), v["flags"].as_u64()), (Some(1), Some(21)));
}

#[test]
fn deodhar_and_galleries() {
    let v = json_of(&satake(&["deodhar", "--group", "SL2", "--y", "0", "--x", "e"]));
    assert_eq!(v["poly"], serde_json::json!([-1, 1]));
    let v = json_of(&satake(&["galleries", "--group", "PGL2", "--mu", "2", "--positive"]));
    assert_eq!(v["galleries"].as_array().unwrap().len(), 3);
}

#[test]
fn report_pgl2() {
    let out = satake(&["report", "pgl2"]);
    let v = json_of(&out);
    assert_eq!(v["ok"], Value::Bool(true));
    assert!(v["checks"].as_array().unwrap().len() > 50);
}

#[test]
fn error_codes() {
    let out = satake(&["mv-cells", "--group", "PGL2", "--mu", "-3", "--nu", "1"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(error_of(&out)["kind"], "invalid");
    let out = satake(&["galleries", "--group", "SL3", "--mu", "30,30"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(error_of(&out)["kind"], "budget");
    let out = satake(&["oracle", "schubert", "--group", "GL2", "--q", "7", "--mu", "40,0"]);
    assert_eq!(out.status.code(), Some(2));
    let out = satake(&["no-such-command"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(error_of(&out)["kind"], "usage");
    let out = satake(&["rootdata", "--group", "E9"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn table_output() {
    let out = satake(&["mv-cells", "--group", "PGL2", "--mu", "3", "--nu", "-3", "--sign", "minus", "--table"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("top_cells: 1"), "{text}");
    assert!(text.lines().any(|l| l.split_whitespace().eq(["3", "0"])), "{text}");
}

#[test]
fn cache_directory() {
    let dir = tempfile::tempdir().unwrap();
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_satake"))
            .args(["oracle", "conv", "--group", "PGL2", "--q", "3", "--mu", "2", "--lambda", "2", "--nu", "0"])
            .env("SATAKE_CACHE_DIR", dir.path())
            .output()
            .unwrap()
    };
    let first = json_of(&run());
    let files: Vec<_> = std::fs::read_dir(dir.path()).unwrap().map(|e| e.unwrap().path()).collect();
    assert_eq!(files.len(), 1);
    let entry: Value = serde_json::from_str(&std::fs::read_to_string(&files[0]).unwrap()).unwrap();
    assert_eq!(entry["cache_version"], satake::oracle::cache::CACHE_VERSION);
    assert_eq!(entry["value"], first["counts"][0]["count"]);
    assert_eq!(json_of(&run()), first);
}
