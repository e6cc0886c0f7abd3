use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn hvec(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hvec")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn scratch(name: &str, text: &str) -> PathBuf {
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    fs::write(&path, text).unwrap();
    path
}

const SHARP: &str = "vars: 4\ndegree: 3\nF1: y2*y1^2\nF2: y3*y1^2\nF3: y4*y1^2\n";

#[test]
fn hvector_plain_and_json() {
    let f = scratch("sharp.txt", SHARP);
    let o = hvec(&["hvector", f.to_str().unwrap()]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "1 4 4 3");

    let o = hvec(&["hvector", "--json", f.to_str().unwrap()]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v, serde_json::json!({"h": [1, 4, 4, 3]}));

    let o = hvec(&["hvector", "--rational", f.to_str().unwrap()]);
    assert_eq!(stdout(&o).trim(), "1 4 4 3");

    let g = scratch("gorenstein.txt", "vars: 1\ndegree: 4\nF1: y1^4\n");
    assert_eq!(stdout(&hvec(&["hvector", g.to_str().unwrap()])).trim(), "1 1 1 1 1");
}

#[test]
fn hvector_parse_error_exits_2_with_line() {
    let f = scratch("bad.txt", "vars: 2\ndegree: 2\nF1: y1^2 + y2\n");
    let o = hvec(&["hvector", f.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 3"));
}

#[test]
fn quotient_output_and_ranges() {
    let f = scratch("sharp_q.txt", SHARP);
    let path = f.to_str().unwrap();
    let o = hvec(&["quotient", path, "--type", "1", "--trials", "3", "--seed", "4"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert_eq!(text.lines().next().unwrap(), "1 2 2 1");
    assert!(text.contains("trials agree: true"));
    assert_eq!(stdout(&hvec(&["quotient", path, "--type", "1", "--trials", "3", "--seed", "4"])), text);

    assert_eq!(hvec(&["quotient", path, "--type", "3"]).status.code(), Some(3));
    assert_eq!(hvec(&["quotient", path, "--type", "0"]).status.code(), Some(3));
}

#[test]
fn bound_flags() {
    let base = ["bound", "--h", "1,3,5,7,7,5,3", "--t", "3"];
    let o = hvec(&[&base[..], &["--c", "2"]].concat());
    assert_eq!(stdout(&o).trim(), "1 3 4 6 5 4 2");

    let o = hvec(&[&base[..], &["--c", "2", "--tighten", "--json"]].concat());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["feasible"], true);
    let tight: Vec<u64> = serde_json::from_value(v["tightened"].clone()).unwrap();
    assert!(tight.iter().zip([1, 3, 5, 6, 6, 4, 2]).all(|(a, b)| *a >= b), "{tight:?}");

    let o = hvec(&[&base[..], &["--chain", "3,2,1", "--tighten", "--json"]].concat());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let chained: Vec<u64> = serde_json::from_value(v["chained"].clone()).unwrap();
    assert!(chained.iter().zip([1, 3, 4, 4, 4, 3, 1]).all(|(a, b)| *a >= b), "{chained:?}");

    assert_eq!(hvec(&["bound", "--h", "1,3,x", "--c", "1"]).status.code(), Some(3));
    assert_eq!(hvec(&["bound", "--h", "1,3,3", "--t", "3", "--c", "3"]).status.code(), Some(3));
}

#[test]
fn comb_modes() {
    assert_eq!(stdout(&hvec(&["comb", "--osequence", "1,3,4,6"])).trim(), "false at d=2 (6 > 5)");
    assert_eq!(stdout(&hvec(&["comb", "--osequence", "1,3,5,7"])).trim(), "true");
    assert_eq!(stdout(&hvec(&["comb", "--expand", "4,2"])).trim(), "C(3,2)+C(1,1); growth 5");
    assert!(stdout(&hvec(&["comb", "--lemma27", "--tmax", "60"])).starts_with("all pass"));
    assert_eq!(hvec(&["comb", "--lemma27", "--tmax", "1"]).status.code(), Some(3));
    assert_eq!(hvec(&["comb", "--expand", "0,2"]).status.code(), Some(3));
    assert_eq!(hvec(&["comb"]).status.code(), Some(3));
}

#[test]
fn verify_manifests() {
    let empty = scratch("empty.manifest", "# nothing\n");
    let o = hvec(&["verify", empty.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("instances 0"));

    let bad = scratch("bad.manifest", "example211 t=3 p=1\n");
    assert_eq!(hvec(&["verify", bad.to_str().unwrap()]).status.code(), Some(2));

    let out = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("grid.json");
    let grid = scratch("grid.manifest", "example211 t=3 p=1 e=3 trials=2\nexample211 t=2 p=2 e=4 trials=2\n");
    let o = hvec(&["verify", grid.to_str().unwrap(), "--output", out.to_str().unwrap()]);
    assert!(o.status.success(), "{}", stdout(&o));
    let doc: serde_json::Value = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(doc["summary"]["instances"], 2);
    assert_eq!(doc["summary"]["tightInstances"], 3);
    assert_eq!(doc["reports"][0]["label"], "example211 t=2 p=2 e=4");
    let first = fs::read_to_string(&out).unwrap();

    let csv = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("grid.csv");
    let o = hvec(&["verify", grid.to_str().unwrap(), "--format", "csv", "--output", csv.to_str().unwrap(), "--sequential"]);
    assert!(o.status.success());
    assert!(fs::read_to_string(&csv).unwrap().starts_with("label,h,c,bound,empirical,satisfied,tightDegrees"));

    // the report apart from wall time is reproducible
    hvec(&["verify", grid.to_str().unwrap(), "--output", out.to_str().unwrap()]);
    let strip = |s: &str| s.lines().filter(|l| !l.contains("wallTimeMs")).collect::<Vec<_>>().join("\n");
    assert_eq!(strip(&first), strip(&fs::read_to_string(&out).unwrap()));
}

#[test]
fn round_trip_through_serializer() {
    use hvec_core::generators::random_module;
    use hvec_core::io::write_module;
    use hvec_core::PrimeField;
    let m = random_module(3, 4, 2, 0.6, 11, PrimeField::default()).unwrap();
    let f = scratch("random.txt", &write_module(&m).unwrap());
    let o = hvec(&["hvector", f.to_str().unwrap()]);
    assert_eq!(stdout(&o).trim(), m.h_vector().to_string());
}
