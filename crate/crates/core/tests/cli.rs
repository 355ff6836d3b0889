use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn ddk(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ddk")).args(args).output().unwrap()
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("{e}: {}", String::from_utf8_lossy(&out.stdout))
    })
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("ddk-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

fn without_timing(mut v: Value) -> Value {
    v.as_object_mut().unwrap().remove("timing");
    v
}

#[test]
fn catalog_listing() {
    let out = ddk(&["catalog", "list"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["command"], "catalog list");
    assert_eq!(r["status"], "count");
    let groups = r["results"]["groups"].as_array().unwrap();
    let tabulated: Vec<&Value> = groups.iter().filter(|g| g["tabulated"] == true).collect();
    assert_eq!(tabulated.iter().filter(|g| g["order"] == 24).count(), 12);
    assert_eq!(tabulated.iter().filter(|g| g["order"] == 32).count(), 44);
    assert!(r["timing"].is_f64());

    let show = report(&ddk(&["catalog", "show", "SL(2,3)"]));
    assert_eq!(show["results"]["order"], 24);
}

#[test]
fn cct_classification() {
    let r = report(&ddk(&["cct", "--all"]));
    let non_cct: Vec<&str> = r["results"]["non_cct"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_str().unwrap())
        .collect();
    assert_eq!(non_cct.len(), 8);
    assert!(non_cct.contains(&"S4") && non_cct.contains(&"G(32,49)"));
    let one = report(&ddk(&["cct", "G(32,50)"]));
    assert_eq!(one["results"]["cct"], false);
}

#[test]
fn usage_errors_exit_with_two_and_no_report() {
    for args in [
        &["catalog", "show", "G(99,1)"][..],
        &["cct", "no-such-file.txt"],
        &["count", "structures", "S4", "--method", "guess"],
        &["--jobs", "0", "catalog", "list"],
        &["invariants", "G(32,49)", "--structure", "/nonexistent/structure.json"],
        &[],
    ] {
        let out = ddk(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(out.stdout.is_empty(), "{args:?}");
        assert!(!out.stderr.is_empty(), "{args:?}");
    }
    let bad = scratch("bad.txt", "gens: a\nrel: a^\n");
    assert_eq!(ddk(&["cct", bad.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn coset_cap_from_the_environment() {
    let d8 = scratch("d8.txt", "gens: a b\nrel: a^4\nrel: b^2\nrel: b a b^-1 a\n");
    let path = d8.to_str().unwrap();
    let ok = report(&ddk(&["cct", path]));
    assert_eq!((ok["results"]["order"].as_u64(), ok["results"]["cct"].as_bool()), (Some(8), Some(true)));
    let out = Command::new(env!("CARGO_BIN_EXE_ddk"))
        .args(["cct", path])
        .env("DDK_COSETS", "3")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let r = report(&out);
    assert_eq!(r["status"], "fail");
    assert!(r["diagnostic"].as_str().unwrap().contains("3 cosets"));
}

#[test]
fn invariants_of_the_example() {
    let r = report(&ddk(&["invariants", "G(32,49)", "--example"]));
    let rep = &r["results"]["report"];
    assert_eq!(rep["c1sq"], 368);
    assert_eq!(rep["c2"], 160);
    assert_eq!(rep["slope"], "23/10");
    assert_eq!(rep["sigma"], 16);
    assert_eq!(rep["p_g"], 47);
    assert_eq!(rep["maximal"], true);
}

#[test]
fn searched_structure_round_trips_through_homology() {
    let r = report(&ddk(&["search", "structures", "G(32,50)", "--b", "2", "--n", "2", "--show", "1"]));
    assert_eq!(r["results"]["count"], 2211840);
    let file = scratch("structure.json", &r["results"]["first"][0].to_string());
    let h = ddk(&["homology", "G(32,50)", "--structure", file.to_str().unwrap()]);
    assert_eq!(h.status.code(), Some(0));
    let first = &report(&h)["results"]["homology"][0];
    assert_eq!(first["free_rank"], 8);
    assert_eq!(first["torsion"], serde_json::json!([2, 2, 2, 2]));

    let mut tampered = r["results"]["first"][0].clone();
    tampered["elements"][5] = Value::from(0);
    tampered.as_object_mut().unwrap().remove("words");
    let bad = scratch("tampered.json", &tampered.to_string());
    let out = ddk(&["invariants", "G(32,50)", "--structure", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(report(&out)["status"], "fail");
}

#[test]
fn counts_and_orbits() {
    let c = report(&ddk(&["count", "structures", "G(32,49)", "--method", "symplectic"]));
    assert_eq!(c["results"]["symplectic"], 2211840);
    let s4 = report(&ddk(&["count", "structures", "S4", "--method", "backtrack"]));
    assert_eq!(s4["results"]["backtrack"], 0);
    let o = report(&ddk(&["orbits", "G(32,50)"]));
    assert_eq!((o["results"]["orbits"].as_u64(), o["results"]["automorphisms"].as_u64()), (Some(1152), Some(1920)));
}

#[test]
fn reports_do_not_depend_on_the_thread_count() {
    for args in [
        &["search", "prestructures", "S4"][..],
        &["search", "structures", "G(32,49)", "--b", "2", "--n", "2", "--show", "3"],
        &["homology", "G(32,49)", "--samples", "2"],
    ] {
        let run = |jobs: &str| {
            let mut a = vec!["--jobs", jobs];
            a.extend_from_slice(args);
            without_timing(report(&ddk(&a)))
        };
        assert_eq!(run("1"), run("3"), "{args:?}");
    }
}
