use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use frameorbit::structured::harmonic_frame;
use frameorbit::Frame;
use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_frameorbit"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("frameorbit-cli-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn write(name: &str, text: &str) -> String {
    let p = scratch(name);
    fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("JSON on stdout")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

const BASIS: &str = r#"{"dim":2,"index_model":{"kind":"cyclic"},"vectors":[[[1.0,0.0],[0.0,0.0]],[[0.0,0.0],[1.0,0.0]]]}"#;

#[test]
fn analyze_harmonic_and_basis() {
    let h = write("h23.json", &harmonic_frame(2, 3).unwrap().to_json());
    let v = json(&run(&["analyze", &h]));
    assert!((v["A"].as_f64().unwrap() - 1.5).abs() < 1e-12);
    assert!((v["B"].as_f64().unwrap() - 1.5).abs() < 1e-12);
    assert_eq!(v["is_tight"], true);
    assert_eq!(v["excess_kernel"], 1);

    let b = write("basis.json", BASIS);
    let v = json(&run(&["analyze", &b]));
    assert!((v["A"].as_f64().unwrap() - 1.0).abs() < 1e-12);
    assert_eq!(v["excess_kernel"], 0);
    assert_eq!(v["is_linearly_independent"], true);
}

#[test]
fn exit_codes() {
    let empty = write("empty.json", r#"{"dim":2,"index_model":{"kind":"cyclic"},"vectors":[]}"#);
    let out = run(&["analyze", &empty]);
    assert_eq!(code(&out), 1);
    assert!(String::from_utf8_lossy(&out.stderr).contains("vectors"));

    let typo = write("typo.json", r#"{"dim":2,"index_model":{"kind":"cyclic"},"vectorz":[]}"#);
    assert_eq!(code(&run(&["analyze", &typo])), 1);

    let flat = write(
        "flat.json",
        r#"{"dim":2,"index_model":{"kind":"cyclic"},"vectors":[[[1,0],[0,0]],[[2,0],[0,0]]]}"#,
    );
    let out = run(&["analyze", &flat]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("span"));
    assert_eq!(code(&run(&["represent", &flat])), 2);

    assert_eq!(code(&run(&["analyze", "/nonexistent/frame.json"])), 1);
    assert_eq!(code(&run(&["demo", "no-such-demo"])), 1);
    assert_eq!(code(&run(&["bogus"])), 1);
    assert_eq!(code(&run(&["--help"])), 0);
    assert_eq!(code(&run(&["--tol", "-1", "analyze", BASIS])), 1);
}

#[test]
fn represent_verdicts() {
    let h = write("h23r.json", &harmonic_frame(2, 3).unwrap().to_json());
    let v = json(&run(&["represent", &h]));
    assert_eq!(v["criteria"]["kernel_shift"]["pass"], true);
    assert_eq!(v["criteria"]["circulant_gram"]["pass"], true);
    assert_eq!(v["criteria"]["generator_exact"]["pass"], true);
    let g = &v["generator"];
    assert!((g[0][0][0].as_f64().unwrap() - 1.0).abs() < 1e-10);
    assert!((g[1][1][0].as_f64().unwrap() + 0.5).abs() < 1e-10);
    assert!((g[1][1][1].as_f64().unwrap() - 3f64.sqrt() / 2.0).abs() < 1e-10);
    assert!(g[0][1][0].as_f64().unwrap().abs() < 1e-10);
    assert_eq!(v["class"]["unitary"], true);

    let swapped = harmonic_frame(2, 4).unwrap().reordered(&[0, 2, 1, 3]).unwrap();
    let s = write("h24s.json", &swapped.to_json());
    let out = run(&["represent", &s]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["criteria"]["circulant_gram"]["pass"], false);
    assert_eq!(v["violation"]["i"], 0);
    assert_eq!(v["violation"]["j"], 1);
    assert!(v["generator"].is_null());

    let b = write("basis-r.json", BASIS);
    assert_eq!(json(&run(&["represent", &b]))["criteria"]["generator_exact"]["pass"], true);
}

#[test]
fn search_modes() {
    let dy = run(&["make", "dyadic", "--d", "3", "--bands", "0,1:2;2:2"]);
    let p = write("dyadic.json", &String::from_utf8(dy.stdout).unwrap());
    let v = json(&run(&["search", &p, "--mode", "exhaustive"]));
    assert_eq!(v["tested"], 120);
    assert_eq!(v["verdict"], "no_ordering_representable");

    let bh = run(&["make", "block-harmonic", "--d", "4", "--K", "2", "--N", "2"]);
    let p = write("bh.json", &String::from_utf8(bh.stdout).unwrap());
    let args = ["search", p.as_str(), "--mode", "random", "--samples", "500", "--seed", "7"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.stdout, b.stdout);
    let v = json(&a);
    assert_eq!(v["tested"], 500);
    assert_eq!(v["seed"], 7);
    let full = json(&run(&["search", &p, "--mode", "exhaustive", "--limit", "1000"]));
    for perm in v["passing"].as_array().unwrap() {
        assert!(full["passing"].as_array().unwrap().contains(perm));
    }

    assert_eq!(code(&run(&["search", &p, "--mode", "random"])), 1);

    let big = write("h212.json", &harmonic_frame(2, 12).unwrap().to_json());
    let out = run(&["search", &big, "--mode", "exhaustive"]);
    assert_eq!(code(&out), 1);
    assert!(String::from_utf8_lossy(&out.stderr).contains("random"));
}

#[test]
fn make_kinds() {
    let out = run(&["make", "harmonic", "--d", "2", "--M", "3"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.trim_end(), harmonic_frame(2, 3).unwrap().to_json());

    let g = json(&run(&["make", "gabor", "--d", "4", "--a", "2", "--b", "1", "--window", "1,1,0,0"]));
    assert_eq!(g["vectors"].as_array().unwrap().len(), 8);

    let g = json(&run(&["make", "exponential", "--window", "1,0.5:0.5,-1", "--N", "2", "--with-generator"]));
    assert_eq!(g["frame"]["vectors"].as_array().unwrap().len(), 6);
    assert_eq!(g["generator"].as_array().unwrap().len(), 3);
    let out = run(&["make", "exponential", "--window", "0,1", "--N", "2"]);
    assert_eq!(code(&out), 1);

    let u = json(&run(&["make", "union-onb", "--d", "2", "--bases", "identity,dft"]));
    assert_eq!(u["vectors"].as_array().unwrap().len(), 4);

    let bh = json(&run(&["make", "block-harmonic", "--d", "4", "--K", "2", "--N", "2", "--with-generator"]));
    assert_eq!(bh["generator"].as_array().unwrap().len(), 4);

    assert_eq!(code(&run(&["make", "gabor", "--d", "4", "--a", "3", "--b", "1", "--window", "1,0,0,0"])), 1);
    assert_eq!(code(&run(&["make", "dyadic", "--d", "3", "--bands", "0:1;1:1"])), 1);
    assert_eq!(code(&run(&["make", "harmonic", "--d", "2"])), 1);
    assert_eq!(
        code(&run(&["make", "dyadic", "--d", "3", "--bands", "0,1:2;2:2", "--with-generator"])),
        1
    );
}

#[test]
fn pipeline_keeps_vectors_and_output_flag() {
    let out_path = scratch("made.json");
    let out_str = out_path.to_string_lossy().into_owned();
    let status = run(&["make", "harmonic", "--d", "3", "--M", "5", "--output", &out_str]);
    assert!(status.status.success());
    let made = fs::read_to_string(&out_path).unwrap();
    let frame = Frame::from_json(&made).unwrap();
    assert_eq!(frame.to_json(), made.trim_end());

    json(&run(&["analyze", &out_str]));
    json(&run(&["represent", &out_str]));
    assert_eq!(fs::read_to_string(&out_path).unwrap(), made);

    let dual = run(&["dual", &out_str]);
    let dual = Frame::from_json(&String::from_utf8(dual.stdout).unwrap()).unwrap();
    let (a, _) = frame.frame_bounds().unwrap();
    for n in 0..frame.len() {
        for (x, y) in dual.vector(n).iter().zip(frame.vector(n)) {
            assert!((x - y / a).norm() < 1e-12);
        }
    }
    let tight = run(&["tight", &out_str]);
    let tight = Frame::from_json(&String::from_utf8(tight.stdout).unwrap()).unwrap();
    let (a, b) = tight.frame_bounds().unwrap();
    assert!((a - 1.0).abs() < 1e-10 && (b - 1.0).abs() < 1e-10);
}

#[test]
fn tolerance_flag_is_recorded() {
    let out = run(&["--tol", "1e-6", "make", "harmonic", "--d", "2", "--M", "2"]);
    let v = json(&out);
    assert_eq!(v["tolerance"]["zero_tol"], 1e-6);
}

#[test]
fn demo_report_and_sidecar() {
    let side = scratch("sidecar.json");
    let side_str = side.to_string_lossy().into_owned();
    let out = run(&["demo", "dyadic-obstruction", "--sidecar", &side_str]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert!(lines[0].starts_with("# dyadic-obstruction"));
    assert!(lines[1..lines.len() - 1].iter().all(|l| l.starts_with("PASS ")));
    assert_eq!(*lines.last().unwrap(), "OK 3/3");
    let v: Value = serde_json::from_str(&fs::read_to_string(side).unwrap()).unwrap();
    assert_eq!(v["all_pass"], true);
    assert_eq!(v["data"]["tested"], 120);
}
