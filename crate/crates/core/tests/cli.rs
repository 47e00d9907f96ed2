//! End-to-end tests of the `bmwalls` binary.

use std::process::{Command, Output};

fn bmwalls(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bmwalls")).args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = bmwalls(args);
    assert!(out.status.success(), "{args:?} failed: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn temp_file(name: &str, contents: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("bmwalls-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn p2_wall_table() {
    let text = stdout(&["walls", "--ch", "1, 0, -2"]);
    let row = text.lines().last().unwrap();
    let cells: Vec<&str> = row.split("  ").map(str::trim).filter(|c| !c.is_empty()).collect();
    assert_eq!(cells, ["-5/2", "-4", "9/4", "3/2", "(1, -1, 1/2)", "H~ - B0"]);
    assert!(text.contains("walls: 1"));

    let csv = stdout(&["walls", "--ch", "1, 0, -2", "--out", "csv"]);
    assert_eq!(
        csv,
        "# wall-table v1\nC,D,radius_sq,ch0',c1,c2,chi',divisor_expr,model\n-5/2,-4,9/4,1,-1,0,1/2,H~ - B0,untwisted\n"
    );
}

#[test]
fn json_mirrors_csv() {
    let json = stdout(&["walls", "--ch", "1,0,-3", "--max-rank", "2", "--out", "json"]);
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["schema"], "wall-table v1");
    let walls = v["walls"].as_array().unwrap();
    assert_eq!(walls[0]["C"], "-7/2");
    assert_eq!(walls[0]["divisor_expr"], "2 H~ - B0");
    let csv = stdout(&["walls", "--ch", "1,0,-3", "--max-rank", "2", "--out", "csv"]);
    assert_eq!(csv.lines().count(), walls.len() + 2);
}

#[test]
fn hirzebruch_nef_cone() {
    let text = stdout(&["nefcone", "--preset", "hirzebruch", "-e", "2", "-n", "2"]);
    let gens: Vec<&str> =
        text.lines().filter(|l| l.starts_with("generator")).map(|l| l.split_once(':').unwrap().1.trim()).collect();
    assert_eq!(gens, ["(E+2F)~", "F~", "(E+2F)~ + F~ - 1/2 B"]);
    assert!(text.contains("balanced u:"));
    assert!(text.contains("higher-rank walls dominated:         true"));
}

#[test]
fn trivial_plot() {
    let svg = stdout(&["plot", "--ch", "0, 0, 3"]);
    assert!(svg.starts_with("<?xml"));
    assert!(svg.contains("version=\"1.1\""));
    assert!(svg.contains("trivial chamber"));
    assert!(!svg.contains("<path"));
}

#[test]
fn plot_marks_the_pivot() {
    let svg = stdout(&["plot", "--ch", "1, 0, -3", "--max-rank", "2"]);
    assert_eq!(svg.matches("<path").count(), 3);
    assert!(svg.contains("<title>pivot</title>"));
    assert!(svg.contains("6 digits after the point"));
    assert!(svg.contains("<!-- wall C=-7/2 D=-6 radius_sq=25/4 model=untwisted -->"));
}

#[test]
fn output_is_byte_deterministic() {
    for fmt in ["text", "csv", "json", "svg"] {
        let args = ["walls", "--preset", "hirzebruch", "-e", "1", "-n", "3", "--out", fmt];
        assert_eq!(bmwalls(&args).stdout, bmwalls(&args).stdout, "format {fmt}");
    }
}

#[test]
fn config_file_and_overrides() {
    let path =
        temp_file("job.conf", "[surface]\npreset = hirzebruch\ne = 2\n[character]\nn = 2\n[output]\nformat = csv\n");
    let p = path.to_str().unwrap();
    let csv = stdout(&["walls", "--config", p]);
    assert!(csv.starts_with("# wall-table v1\n"));
    assert!(csv.lines().nth(2).unwrap().starts_with("-7/2,"));
    let text = stdout(&["walls", "--config", p, "--out", "text"]);
    assert!(text.starts_with("surface: Sigma_2"));

    let out = temp_file("out.csv", "");
    stdout(&["walls", "--config", p, "--output", out.to_str().unwrap()]);
    assert_eq!(std::fs::read_to_string(out).unwrap(), csv);
}

#[test]
fn exit_codes() {
    let out = bmwalls(&["walls", "--ch", "1, 0, 0.5"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("\"1/2\""));

    let path = temp_file("bad.conf", "[surface]\npreset = hirzebruch\ne = 2\n[frame]\nh = 1/2, 3/2\ngamma = 0, 1\n");
    let out = bmwalls(&["walls", "--config", path.to_str().unwrap(), "--ch", "1,0,0,-2"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.starts_with("ValidationError"), "{err}");
    assert!(err.contains("Hodge orthogonality"));

    let path = temp_file("parse.conf", "[character]\nch = 1, 0, -2\n[frame]\nu = 0.25\n");
    let out = bmwalls(&["walls", "--config", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("ParseError"));

    let out = bmwalls(&["dual-check", "--ch", "1,0,-2", "--chp", "2,0,-4"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("DegenerateWall"));

    assert_eq!(bmwalls(&["k3-walls", "--ch", "1,0,-2"]).status.code(), Some(2));
    assert_eq!(bmwalls(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn other_commands() {
    let text = stdout(&["decompose", "--ch", "1,0,-2", "--chp", "1,-1,1/2"]);
    assert!(text.contains("divisor (Picard basis):  H~ - B0"));
    assert!(text.contains("relations at apex:       pass"));

    let text = stdout(&["chamber", "--ch", "1,0,-2", "--s", "-5/2", "--t", "2"]);
    assert!(text.trim_end().ends_with("GC"));

    let text = stdout(&["dual-check", "--ch", "1,0,-2", "--chp", "1,-1,1/2"]);
    assert!(text.contains("result:        pass"));

    let text = stdout(&["k3-walls", "--preset", "k3", "--ch", "1,0,-1", "--chp", "1,-1,0"]);
    assert!(text.contains("model: twisted-k3"));
}
