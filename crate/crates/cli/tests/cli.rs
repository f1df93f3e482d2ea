use std::path::PathBuf;
use std::process::{Command, Output};

fn axcount(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_axcount")).args(args).env_remove("AXCOUNT_DATA").output().unwrap()
}

fn data_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("axcount-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn golay_check() {
    let o = axcount(&["golay-check", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["weight_enumerator"], serde_json::json!([1, 759, 2576, 759, 1]));
    assert_eq!(v["cocode_weights"], serde_json::json!([1, 24, 276, 2024, 1771]));
}

#[test]
fn spectrum_dimensions() {
    let o = axcount(&["spectrum"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("1   96256  4371  96256"));
    assert!(stdout(&o).contains("total 196884"));
}

#[test]
fn feasible_total() {
    let o = axcount(&["orbit-sizes", "--table", "feasible", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["total"], "11707448673375");
}

#[test]
fn structured_output_is_stable() {
    let a = axcount(&["orbit-sizes", "--table", "axes", "--json"]);
    let b = axcount(&["orbit-sizes", "--table", "axes", "--json", "--threads", "1"]);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(json(&a)["total"], "97239461142009186000");
}

#[test]
fn m24_las_vegas() {
    let o = axcount(&["m24-order", "--claim", "244823040", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["order"], "244823040");
    assert_eq!(v["claim_confirmed"], true);
}

#[test]
fn monster_order() {
    let o = axcount(&["monster-order", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["monster_order"], "808017424794512875886459904961710757005754368000000000");
    assert_eq!(v["sylow11"], "1814/11");
}

#[test]
fn tables_check_with_given_order() {
    let o = axcount(&["tables-check", "--co1", "4157776806543360000"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let o = axcount(&["tables-check", "--co1", "4157776806543360001"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn verify_exit_codes() {
    let cert = data_dir().join("monster.cert");
    let o = axcount(&["verify", "--cert", cert.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));

    let text = std::fs::read_to_string(&cert).unwrap();
    let tampered = scratch("tampered.cert");
    std::fs::write(&tampered, text.replacen("row 2A 93150", "row 2A 93151", 1)).unwrap();
    let o = axcount(&["verify", "--cert", tampered.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL axes: column sums"));

    let broken = scratch("broken.cert");
    std::fs::write(&broken, text.replacen("colsum 16584750", "colsum sixteen", 1)).unwrap();
    let o = axcount(&["verify", "--cert", broken.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let o = axcount(&["verify", "--cert", scratch("missing.cert").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn usage_errors() {
    assert_eq!(axcount(&[]).status.code(), Some(2));
    assert_eq!(axcount(&["orbit-sizes", "--table", "nope"]).status.code(), Some(2));
    assert_eq!(axcount(&["--help"]).status.code(), Some(0));
}

#[test]
fn data_directory_override() {
    let run = |dir: &PathBuf| {
        Command::new(env!("CARGO_BIN_EXE_axcount"))
            .args(["orbit-sizes", "--table", "axes", "--json"])
            .env("AXCOUNT_DATA", dir)
            .output()
            .unwrap()
    };
    assert_eq!(run(&data_dir()).status.code(), Some(0));

    let dir = scratch("data");
    std::fs::create_dir_all(&dir).unwrap();
    for f in ["table1.txt", "table3.txt", "table5.txt", "table6.txt", "classical_orders.txt"] {
        std::fs::copy(data_dir().join(f), dir.join(f)).unwrap();
    }
    let t2 = std::fs::read_to_string(data_dir().join("table2.txt")).unwrap();
    std::fs::write(dir.join("table2.txt"), t2.replacen("93150     135", "93151     135", 1)).unwrap();
    assert_eq!(run(&dir).status.code(), Some(2));
    std::fs::remove_file(dir.join("table2.txt")).unwrap();
    assert_eq!(run(&dir).status.code(), Some(2));
}
