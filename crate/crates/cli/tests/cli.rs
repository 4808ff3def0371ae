use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use ellfib_cli::json::verify_scan_document;
use serde_json::Value;

fn manifest(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("manifests").join(name)
}

fn ellfib(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ellfib")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn write(dir: &Path, name: &str, body: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p.to_str().unwrap().to_string()
}

fn scan_manifest(dir: &Path, generator: [&str; 2], embed_x: &str, count: u32) -> String {
    let body = format!(
        "[surface]\nvar = \"u\"\na4 = \"-(u^3 - u)^2\"\n\n[scan]\ncurve = [\"0\", \"0\", \"0\", \"-36\", \"0\"]\nvars = [\"T\", \"Y\"]\n\
         embed_t = \"T/6\"\nembed_x = \"{embed_x}\"\nembed_y = \"((T/6)^3 - T/6)*Y/6\"\n\
         generator = [\"{}\", \"{}\"]\ncount = {count}\n",
        generator[0], generator[1]
    );
    write(dir, "scan.toml", &body)
}

#[test]
fn analyze_reports() {
    let o = ellfib(&["analyze", "--manifest", manifest("k3.toml").to_str().unwrap()]);
    assert!(o.status.success());
    let s = stdout(&o);
    assert!(s.contains("Class: K3") && s.contains("MW geometric upper bound: 0"), "{s}");
    assert_eq!(s.matches(" I4 ").count(), 5);
    let o = ellfib(&["analyze", "--manifest", manifest("rational.toml").to_str().unwrap(), "--primes", "30"]);
    let s = stdout(&o);
    assert!(s.contains("Class: Rational") && s.contains("NS rank over Q >= 5"), "{s}");
    assert!(s.contains("Nagao average S(30): "));
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let singular = ellfib(&["analyze", "--manifest", manifest("singular.toml").to_str().unwrap()]);
    assert_eq!(singular.status.code(), Some(3));
    let bad = write(dir.path(), "bad.toml", "[surface]\na4 = \"t^^2\"\n");
    assert_eq!(ellfib(&["analyze", "--manifest", &bad]).status.code(), Some(2));
    let unknown = write(dir.path(), "unknown.toml", "[surface]\na4 = \"t\"\nb4 = \"1\"\n");
    assert_eq!(ellfib(&["analyze", "--manifest", &unknown]).status.code(), Some(2));
    assert_eq!(ellfib(&["quadorigin", "III* + I18"]).status.code(), Some(2));
    assert_eq!(ellfib(&["quadorigin", "I4 + X"]).status.code(), Some(2));
    let off = write(dir.path(), "off.toml", "[surface]\nvar = \"s\"\na6 = \"s^2\"\n[sections]\nP = [\"1\", \"s\"]\n");
    assert_eq!(ellfib(&["heights", "--manifest", &off]).status.code(), Some(3));
    let torsion = scan_manifest(dir.path(), ["0", "0"], "2*((T/6)^3 - T/6)", 3);
    assert_eq!(ellfib(&["scan", "--manifest", &torsion]).status.code(), Some(5));
    let wrong = scan_manifest(dir.path(), ["12", "36"], "3*((T/6)^3 - T/6)", 3);
    assert_eq!(ellfib(&["scan", "--manifest", &wrong]).status.code(), Some(5));
    let missing = ellfib(&["analyze", "--manifest", "/nonexistent/manifest.toml"]);
    assert_eq!(missing.status.code(), Some(2));
}

#[test]
fn basechange_reports() {
    let o = ellfib(&["basechange", "--manifest", manifest("basechange.toml").to_str().unwrap()]);
    assert!(o.status.success());
    let s = stdout(&o);
    assert!(s.contains("K3 criterion: satisfied"));
    assert!(s.contains("New section: (t^4 - 1, 2*t^6 - 2*t^2)"));
    let dir = tempfile::tempdir().unwrap();
    let id = write(dir.path(), "id.toml", "[surface]\na2 = \"(t+1)^2 + (t-1)^2\"\na4 = \"(t^2 - 1)^2\"\n[basechange]\nphi = \"t\"\n");
    let json = dir.path().join("id.json");
    let o = ellfib(&["basechange", "--manifest", &id, "--json", json.to_str().unwrap()]);
    assert!(o.status.success());
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(json).unwrap()).unwrap();
    let types: Vec<&str> = doc["pullback"]["fibers"].as_array().unwrap().iter().map(|f| f["type"].as_str().unwrap()).collect();
    assert_eq!(types, ["I4", "I2", "I4", "I2"]);
    let o = ellfib(&["basechange", "--manifest", manifest("kummer_bisection.toml").to_str().unwrap()]);
    assert!(stdout(&o).contains("Rank with the new section: 1 -> 2"));
}

#[test]
fn quadorigin_reports() {
    let s = stdout(&ellfib(&["quadorigin", "6*I4"]));
    assert!(s.starts_with("Possible\nwitness: I2(ram), I2(ram), I4, I4\n"), "{s}");
    for src in ["2*III* + I6*", "III* + I18"] {
        let o = ellfib(&["quadorigin", src, "--partial"]);
        assert!(o.status.success());
        assert!(stdout(&o).starts_with("Impossible\nreason: "));
    }
}

#[test]
fn heights_reports() {
    let s = stdout(&ellfib(&["heights", "--manifest", manifest("kummer_heights.toml").to_str().unwrap()]));
    assert!(s.contains("diagonal = (u^4 - u^2, u^6 - 2*u^4 + u^2): height 1, non-torsion"), "{s}");
    assert!(s.contains("rank: 1"));
    let s = stdout(&ellfib(&["heights", "--manifest", manifest("torsion.toml").to_str().unwrap()]));
    assert!(s.contains("height 0, torsion") && s.contains("rank: 0"));
    let dir = tempfile::tempdir().unwrap();
    let zero = write(dir.path(), "zero.toml", "[surface]\nvar = \"s\"\na6 = \"s^2 - 1\"\n[sections]\nO = \"O\"\n");
    assert!(stdout(&ellfib(&["heights", "--manifest", &zero])).contains("rank: 0"));
}

#[test]
fn scan_is_deterministic_and_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let m = manifest("kummer_scan.toml");
    let (a, b) = (dir.path().join("a.json"), dir.path().join("b.json"));
    for out in [&a, &b] {
        let o = ellfib(&["scan", "--manifest", m.to_str().unwrap(), "--json", out.to_str().unwrap()]);
        assert!(o.status.success());
    }
    let (ta, tb) = (std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    assert_eq!(ta, tb);
    let doc: Value = serde_json::from_slice(&ta).unwrap();
    assert!(verify_scan_document(&doc));
    assert!(doc["summary"]["certified_fibers"].as_u64().unwrap() >= 3);
    let first = &doc["fibers"][0];
    assert_eq!((first["t"].as_str(), first["points"][0]["x"].as_str()), (Some("2"), Some("12")));
    assert_eq!(doc["fibers"][1]["t"], "25/24");
    // tampering is caught
    let mut bad = doc.clone();
    bad["fibers"][0]["points"][0]["y"] = Value::String("37".into());
    assert!(!verify_scan_document(&bad));
}

#[test]
fn scan_small_counts() {
    let dir = tempfile::tempdir().unwrap();
    let one = scan_manifest(dir.path(), ["12", "36"], "2*((T/6)^3 - T/6)", 1);
    let s = stdout(&ellfib(&["scan", "--manifest", &one]));
    assert!(s.contains("(12, 36)") && s.contains("non-torsion (certified)"), "{s}");
    let zero = scan_manifest(dir.path(), ["12", "36"], "2*((T/6)^3 - T/6)", 0);
    let json = dir.path().join("zero.json");
    let o = ellfib(&["scan", "--manifest", &zero, "--json", json.to_str().unwrap()]);
    assert!(o.status.success());
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(json).unwrap()).unwrap();
    assert_eq!(doc["fibers"], Value::Array(vec![]));
    let two = scan_manifest(dir.path(), ["12", "36"], "2*((T/6)^3 - T/6)", 2);
    let s = stdout(&ellfib(&["scan", "--manifest", &two, "--height-bound", "50"]));
    assert!(s.contains("25/24") && s.contains("points of naive height <= 50"), "{s}");
}
