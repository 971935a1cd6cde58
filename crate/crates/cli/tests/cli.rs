use std::path::Path;
use std::process::{Command, Output};

fn matgeom(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_matgeom")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).expect("valid json")
}

fn make_map(space: &str, kind: &str, path: &Path) {
    let o = matgeom(&["make-map", "--space", space, "--kind", kind, "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn space_reports_counts_and_diameter() {
    for (space, points, diameter) in [("sym:2:GF(3)", 27, 2), ("sym:2:GF(2)", 8, 3), ("grass:2:4:GF(2)", 35, 2)] {
        let o = matgeom(&["space", "--space", space, "--format", "json"]);
        assert_eq!(o.status.code(), Some(0));
        let v = json(&o);
        assert_eq!(v["points"], points, "{space}");
        assert_eq!(v["diameter"], diameter, "{space}");
    }
}

#[test]
fn axioms_exit_codes_follow_verdicts() {
    let o = matgeom(&["axioms", "--space", "sym:2:GF(3)", "--format", "json"]);
    assert_eq!(o.status.code(), Some(1));
    let v = json(&o);
    let holds: Vec<bool> = v.as_array().unwrap().iter().map(|r| r["holds"].as_bool().unwrap()).collect();
    assert_eq!(holds, [true, true, true, false, true]);
    let a4 = &v[3];
    assert_eq!(a4["axiom"], "A4");
    let z = a4["witness"].as_array().unwrap().iter().find(|w| w["role"] == "z").unwrap();
    assert_eq!(z["point"], "0,0;0,0");

    let o = matgeom(&["axioms", "--space", "sym:2:GF(2)", "--format", "json"]);
    assert_eq!(o.status.code(), Some(1));
    let holds: Vec<bool> = json(&o).as_array().unwrap().iter().map(|r| r["holds"].as_bool().unwrap()).collect();
    assert_eq!(holds, [true, true, true, true, false]);

    assert_eq!(matgeom(&["axioms", "--space", "rect:2x2:GF(3)"]).status.code(), Some(0));
    assert_eq!(matgeom(&["axioms", "--space", "sym:2:GF(3)", "--axioms", "A1,A2,A3,A5"]).status.code(), Some(0));
}

#[test]
fn usage_and_parse_errors_exit_2() {
    assert_eq!(matgeom(&["space", "--space", "rect:2x2:GF(6)"]).status.code(), Some(2));
    assert_eq!(matgeom(&["space", "--space", "nonsense"]).status.code(), Some(2));
    assert_eq!(matgeom(&["space"]).status.code(), Some(2));
    assert_eq!(matgeom(&["axioms", "--space", "sym:2:GF(3)", "--axioms", "A9"]).status.code(), Some(2));
    assert_eq!(matgeom(&["scenario", "bogus"]).status.code(), Some(2));
    assert_eq!(matgeom(&["space", "--space", "rect:3x3:GF(5)", "--cap", "1000"]).status.code(), Some(2));
}

#[test]
fn scenarios_pass() {
    for name in ["s2f3-a4", "s2f2-a5", "alt-shift:2", "lemma21", "herm-witness"] {
        let o = matgeom(&["scenario", name, "--format", "json"]);
        assert_eq!(o.status.code(), Some(0), "{name}: {}", stdout(&o));
        assert_eq!(json(&o)["pass"], true);
    }
}

#[test]
fn scenario_output_is_deterministic() {
    let a = matgeom(&["scenario", "herm-witness", "--seed", "11"]);
    let b = matgeom(&["scenario", "herm-witness", "--seed", "11"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn map_test_verdicts() {
    let dir = tempfile::tempdir().unwrap();

    let id = dir.path().join("id.map");
    make_map("rect:2x2:GF(3)", "identity", &id);
    let o = matgeom(&["map-test", "--map", id.to_str().unwrap(), "--space", "rect:2x2:GF(3)", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!((v["dm_treu"].as_bool(), v["isomorphism"].as_bool()), (Some(true), Some(true)));

    let swap = dir.path().join("swap.map");
    make_map("sym:2:GF(2)", "antipodal-swap:0", &swap);
    let o = matgeom(&["map-test", "--map", swap.to_str().unwrap(), "--space", "sym:2:GF(2)", "--format", "json"]);
    assert_eq!(o.status.code(), Some(1));
    let v = json(&o);
    assert_eq!((v["dm_treu"].as_bool(), v["isomorphism"].as_bool()), (Some(true), Some(false)));
    assert_eq!(v["bijective"], true);

    // Vertices 0 and 1 of M2x2(F3) differ in one entry, hence are adjacent.
    let adj = dir.path().join("adj.map");
    make_map("rect:2x2:GF(3)", "transposition:0,1", &adj);
    let o = matgeom(&["map-test", "--map", adj.to_str().unwrap(), "--space", "rect:2x2:GF(3)", "--format", "json"]);
    assert_eq!(o.status.code(), Some(1));
    let v = json(&o);
    assert_eq!(v["dm_treu"], false);
    assert!(v["first_violation"]["x"].is_u64());

    let o = matgeom(&["map-test", "--map", swap.to_str().unwrap(), "--space", "sym:2:GF(3)"]);
    assert_eq!(o.status.code(), Some(2));
    let missing = dir.path().join("missing.map");
    let o = matgeom(&["map-test", "--map", missing.to_str().unwrap(), "--space", "sym:2:GF(2)"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn export_is_byte_stable() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a.dot"), dir.path().join("b.dot"));
    for p in [&a, &b] {
        let o = matgeom(&["export", "--space", "sym:2:GF(2)", "--as", "dot", "--out", p.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0));
    }
    let dot = std::fs::read_to_string(&a).unwrap();
    assert_eq!(dot, std::fs::read_to_string(&b).unwrap());
    assert_eq!(dot.matches(" -- ").count(), 12);
    assert_eq!(dot.matches("[label=").count(), 8);

    let o = matgeom(&["export", "--space", "sym:2:GF(3)", "--as", "json"]);
    let v = json(&o);
    let dist = &v["distribution"];
    assert_eq!(dist["0"], 27);
    assert_eq!(dist["1"].as_u64().unwrap() + dist["2"].as_u64().unwrap(), 27 * 26);

    let o = matgeom(&["export", "--space", "sym:2:GF(2)", "--out", "/nonexistent-dir/x.dot"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn formula_and_falsify() {
    assert_eq!(matgeom(&["formula", "--space", "rect:2x3:GF(3)"]).status.code(), Some(0));
    let o = matgeom(&["falsify", "--space", "grass:2:4:GF(2)", "--samples", "200", "--format", "json", "--jobs", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["violations"], 0);
    assert_eq!(v["maps_tested"], 200);
    let o = matgeom(&["falsify", "--space", "sym:2:GF(2)", "--samples", "50"]);
    assert_eq!(o.status.code(), Some(1));
}
