use rbx::deformation::{coboundary, Equivalence};
use rbx::foundation::{format_scalar, int, Matrix};
use rbx::registry;
use serde_json::Value;
use std::path::PathBuf;
use std::process::{Command, Output};

fn data(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "data", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn rbx(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rbx")).args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut a = args.to_vec();
    a.extend(["--report", "json"]);
    let o = rbx(&a);
    let v = serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&o.stdout)));
    (code(&o), v)
}

#[test]
fn relative_operator_file_verifies() {
    assert_eq!(code(&rbx(&["verify", "rrb", &data("aff1-T0.json")])), 0);
}

#[test]
fn rota_baxter_first_cohomology_is_one_dimensional() {
    let (c, v) = json(&["cohomology", "rb", &data("aff1-T0.json"), "--degree", "1"]);
    assert_eq!(c, 0);
    let row = &v["tables"][0]["rows"][0];
    assert_eq!(row[0], 1);
    assert_eq!(row[4], 1);
}

#[test]
fn broken_jacobi_fails_with_a_witness_triple() {
    let (c, v) = json(&["verify", "lie", &data("heis3-broken.json")]);
    assert_eq!(c, 1);
    let w = &v["checks"][0]["witness"];
    assert_eq!(w["inputs"].as_array().unwrap().len(), 3);
    assert!(w["defect"].as_array().unwrap().iter().any(|x| x != "0"));
}

#[test]
fn json_and_table_carry_the_same_numbers() {
    let args = ["cohomology", "ce", "@aff1", "--max-degree", "2"];
    let table = String::from_utf8(rbx(&args).stdout).unwrap();
    let (_, v) = json(&args);
    for row in v["tables"][0]["rows"].as_array().unwrap() {
        let cells: Vec<String> = row.as_array().unwrap().iter().map(|c| c.to_string().trim_matches('"').to_string()).collect();
        let line = cells.join(" ");
        let found = table.lines().any(|l| l.split_whitespace().collect::<Vec<_>>().join(" ") == line);
        assert!(found, "{line} missing from\n{table}");
    }
}

#[test]
fn malformed_input_exits_two_with_position() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("bad.json");
    std::fs::write(&p, "{\n  \"format\": 1,\n  \"field\": \"rational\",\n  \"lie\": {\"dim\": 2,, }\n}").unwrap();
    let o = rbx(&["verify", "lie", p.to_str().unwrap()]);
    assert_eq!(code(&o), 2);
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("line 4"), "{err}");

    std::fs::write(&p, r#"{"format": 1, "field": "rational", "lie": {"dim": 2, "bracket": {"[1,3]": {"2": "1"}}}}"#).unwrap();
    let o = rbx(&["verify", "lie", p.to_str().unwrap()]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("[1,3]"));

    std::fs::write(&p, r#"{"format": 1, "field": "rational", "lie": {"dim": 2, "bracket": {"[1,2]": {"2": "0.5"}}}}"#).unwrap();
    assert_eq!(code(&rbx(&["verify", "lie", p.to_str().unwrap()])), 2);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(code(&rbx(&["verify", "nonsense", "@aff1"])), 2);
    assert_eq!(code(&rbx(&["cohomology", "ce", "@aff1"])), 2);
    assert_eq!(code(&rbx(&["verify", "lie", "/no/such/file.json"])), 2);
    assert_eq!(code(&rbx(&["verify", "lie", "@unknown"])), 2);
    assert_eq!(code(&rbx(&["verify", "rrb", "@aff1"])), 2);
    assert_eq!(code(&rbx(&["--help"])), 0);
}

#[test]
fn data_files_match_the_registry() {
    for name in ["abelian-3", "aff1", "aff1-T0", "aff1-nilpotent", "heis3", "sl2", "sl2-r-he", "aff1-dg", "prelie-2term"] {
        let o = rbx(&["examples", "show", name]);
        assert_eq!(code(&o), 0);
        let on_disk = std::fs::read_to_string(data(&format!("{name}.json"))).unwrap();
        assert_eq!(String::from_utf8(o.stdout).unwrap(), on_disk, "{name}");
    }
    let (c, v) = json(&["examples", "list"]);
    assert_eq!(c, 0);
    let names: Vec<&str> = v["tables"][0]["rows"].as_array().unwrap().iter().map(|r| r[0].as_str().unwrap()).collect();
    assert!(names.contains(&"sl2-r-he") && names.contains(&"aff1-T0"));
}

#[test]
fn registry_examples_pass_their_checks() {
    let runs: &[&[&str]] = &[
        &["verify", "cybe", "@sl2-r-he"],
        &["verify", "rrb", "@aff1-nilpotent"],
        &["verify", "rbo", "@aff1-T0"],
        &["verify", "linf", "@aff1-dg"],
        &["verify", "hrbo", "@aff1-dg"],
        &["verify", "hrbo", "@aff1-T0"],
        &["verify", "linf", "@heis3"],
        &["prelie", "from-rbo", "@aff1-T0"],
        &["prelie", "subadjacent", "@aff1-T0"],
        &["prelie", "phi", "@prelie-2term"],
        &["prelie", "subadjacent", "@prelie-2term"],
        &["les", "rrb", "@aff1-T0", "--max-degree", "3"],
        &["les", "rb", "@aff1-T0", "--max-degree", "3"],
        &["les", "tlb", "@sl2-r-he", "--max-degree", "3"],
        &["cohomology", "tlb", "@sl2-r-he", "--degree", "2"],
        &["cohomology", "lierep", "@aff1-T0", "--max-degree", "2"],
        &["cohomology", "oop", "@aff1-T0", "--degree", "1"],
        &["cohomology", "rrb", "@aff1-T0", "--degree", "1", "--max-degree", "2"],
    ];
    for args in runs {
        let o = rbx(args);
        assert_eq!(code(&o), 0, "{args:?}\n{}{}", String::from_utf8_lossy(&o.stdout), String::from_utf8_lossy(&o.stderr));
    }
}

#[test]
fn first_lie_cohomology_of_aff1_vanishes() {
    let (c, v) = json(&["cohomology", "ce", "@aff1", "--degree", "1", "--max-degree", "2"]);
    assert_eq!(c, 0);
    let rows = v["tables"][0]["rows"].as_array().unwrap();
    assert_eq!(rows[0][4], 0);
    assert_eq!(rows[1][4], 0);
}

#[test]
fn homotopy_check_beyond_the_certified_bound_is_refused() {
    assert_eq!(code(&rbx(&["verify", "hrbo", "@aff1-dg", "--p-max", "99"])), 2);
    assert_eq!(code(&rbx(&["verify", "hrbo", "@aff1-dg", "--p-max", "4"])), 0);
}

#[test]
fn non_operator_fails_with_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("id.json");
    std::fs::write(&p, r#"{"format": 1, "field": "rational", "lie": "@aff1", "operator": [["1", "0"], ["0", "1"]]}"#).unwrap();
    let path = p.to_str().unwrap();
    assert_eq!(code(&rbx(&["verify", "rrb", path])), 1);
    assert_eq!(code(&rbx(&["verify", "hrbo", path])), 1);
    assert_eq!(code(&rbx(&["cohomology", "rrb", path, "--degree", "1"])), 1);
}

fn rows(m: &Matrix) -> Value {
    m.to_dense().iter().map(|r| r.iter().map(format_scalar).collect::<Vec<_>>()).collect::<Vec<_>>().into()
}

fn write_relative(dir: &std::path::Path, name: &str, d: &rbx::deformation::InfinitesimalDeformation) -> String {
    let mut omega = serde_json::Map::new();
    for (idx, o, x) in d.omega1.nonzero() {
        let key = format!("[{},{}]", idx[0] + 1, idx[1] + 1);
        let entry = omega.entry(key).or_insert_with(|| Value::Object(Default::default()));
        entry.as_object_mut().unwrap().insert((o + 1).to_string(), format_scalar(&x).into());
    }
    let v = serde_json::json!({
        "format": 1,
        "field": "rational",
        "omega1": omega,
        "varrho1": d.varrho1.iter().map(rows).collect::<Vec<_>>(),
        "t1": rows(&d.t1),
    });
    let p = dir.join(name);
    std::fs::write(&p, serde_json::to_string_pretty(&v).unwrap()).unwrap();
    p.to_string_lossy().into_owned()
}

#[test]
fn trivial_deformations_are_cocycles_and_equivalent() {
    let base = registry::aff1_t0_relative();
    let e = Equivalence { n: registry::mat2(1, 2, 0, -1), s: registry::mat2(0, 1, 1, 0) };
    let d = coboundary(&base, &e);
    let zero = rbx::deformation::InfinitesimalDeformation::zero(&base);
    let dir = tempfile::tempdir().unwrap();
    let pd = write_relative(dir.path(), "d.json", &d);
    let pz = write_relative(dir.path(), "z.json", &zero);
    let f = data("aff1-T0.json");
    assert_eq!(code(&rbx(&["deform", "check", &f, &pd, &pz])), 0);
    let (c, v) = json(&["deform", "equiv", &f, &pz, &pd]);
    assert_eq!(c, 0, "{v}");
    let n = &v["tables"][1]["rows"][0][4];
    assert_eq!(n, true);
}

#[test]
fn non_cocycle_deformation_fails() {
    let base = registry::aff1_t0_relative();
    let mut d = rbx::deformation::InfinitesimalDeformation::zero(&base);
    d.t1 = Matrix::from_dense(2, 2, &[vec![int(0), int(0)], vec![int(1), int(0)]]);
    let dir = tempfile::tempdir().unwrap();
    let p = write_relative(dir.path(), "d.json", &d);
    let ok = rbx::deformation::is_two_cocycle(&base, &d).ok;
    let (c, v) = json(&["deform", "check", &data("aff1-T0.json"), &p]);
    assert_eq!(c, if ok { 0 } else { 1 });
    assert_eq!(v["checks"][0]["routes_agree"], true);
}

#[test]
fn triangular_deformations() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("z.json");
    std::fs::write(&p, r#"{"format": 1, "field": "rational", "chi1": [{"indices": [1, 2], "coeff": "0"}]}"#).unwrap();
    let p = p.to_str().unwrap();
    assert_eq!(code(&rbx(&["deform", "check", "@sl2-r-he", p])), 0);
    assert_eq!(code(&rbx(&["deform", "equiv", "@sl2-r-he", p, p])), 0);
}
