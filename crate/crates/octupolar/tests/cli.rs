use std::process::Command;

use clap::Parser;
use octupolar::cli::{execute, Cli};

fn octo(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_octo")).args(args).output().unwrap()
}

fn run_lib(args: &[&str]) -> octupolar::Result<String> {
    let cli = Cli::try_parse_from(std::iter::once("octo").chain(args.iter().copied())).unwrap();
    execute(&cli)
}

fn tmp(name: &str, contents: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("octo-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, contents).unwrap();
    p
}

fn numbers(v: &serde_json::Value, out: &mut Vec<f64>) {
    match v {
        serde_json::Value::Number(n) => out.push(n.as_f64().unwrap()),
        serde_json::Value::Array(a) => a.iter().for_each(|x| numbers(x, out)),
        serde_json::Value::Object(o) => o.values().for_each(|x| numbers(x, out)),
        _ => {}
    }
}

#[test]
fn decompose_zero_tensor() {
    let p = tmp("zero.json", &format!("{{\"components\": {:?}}}", vec![0.0; 27]));
    let out = octo(&["decompose", "--input", p.to_str().unwrap()]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let mut nums = Vec::new();
    numbers(&v, &mut nums);
    assert!(!nums.is_empty() && nums.iter().all(|x| *x == 0.0));
}

#[test]
fn eigen_tetrahedral() {
    let out = run_lib(&["eigen", "--rho", "0", "--K", &format!("{}", 0.5f64.sqrt())]).unwrap();
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["topology"]["points"].as_array().unwrap().len(), 14);
}

#[test]
fn scan_counts_and_format() {
    let out = octo(&["scan", "--rho-steps", "6", "--k-steps", "6", "--format", "csv"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(!text.contains('\r'));
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "rho,chi,K,count");
    let mut n = 0;
    for line in lines {
        let f: Vec<&str> = line.split(',').collect();
        assert_eq!(f.len(), 4);
        for x in &f[..3] {
            // d.dddddddddddddddde±x: 17 significant digits
            let mantissa = x.trim_start_matches('-').split('e').next().unwrap();
            assert_eq!(mantissa.len(), 18, "{x}");
        }
        if !f[3].is_empty() {
            assert!(["8", "10", "12", "14"].contains(&f[3]), "{line}");
        }
        n += 1;
    }
    assert_eq!(n, 36);
}

#[test]
fn output_is_deterministic_across_thread_counts() {
    let args = ["scan", "--rho-steps", "8", "--k-steps", "8"];
    let a = octo(&args).stdout;
    let b = Command::new(env!("CARGO_BIN_EXE_octo")).args(args).env("OCTO_THREADS", "1").output().unwrap();
    let c = Command::new(env!("CARGO_BIN_EXE_octo")).args(args).env("OCTO_THREADS", "3").output().unwrap();
    assert_eq!(a, b.stdout);
    assert_eq!(a, c.stdout);
}

#[test]
fn invalid_thread_count_is_a_usage_error() {
    let out = Command::new(env!("CARGO_BIN_EXE_octo"))
        .args(["scan", "--rho-steps", "2", "--k-steps", "2"])
        .env("OCTO_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn grid_default_shape() {
    let out = run_lib(&["grid", "--rho", "0", "--K", "0"]).unwrap();
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 1 + 181 * 91);
    assert_eq!(lines[0], "theta,phi,x1,x2,x3,phi_value");
    let north = octupolar::potential::eval_potential(
        &octupolar::potential::from_rho_chi_k(&octupolar::potential::OrientedParams::new(0.0, -std::f64::consts::FRAC_PI_2, 0.0).unwrap()).unwrap(),
        &[0.0, 0.0, 1.0],
    );
    assert_eq!(north, 1.0);
    let south: Vec<f64> = lines[1].split(',').map(|s| s.parse().unwrap()).collect();
    assert!((south[5] + 1.0).abs() < 1e-15);
    let last: Vec<f64> = lines[lines.len() - 1].split(',').map(|s| s.parse().unwrap()).collect();
    assert!((last[5] - 1.0).abs() < 1e-15);
}

#[test]
fn chi_in_degrees() {
    let a = run_lib(&["separatrix", "--chi", "-60", "--chi-degrees", "--rho-steps", "5"]).unwrap();
    let b = run_lib(&["separatrix", "--chi", &format!("{}", (-60f64).to_radians()), "--rho-steps", "5"]).unwrap();
    assert_eq!(a, b);
}

#[test]
fn exit_codes() {
    assert_eq!(octo(&["eigen", "--rho", "0.5", "--K", "0.3"]).status.code(), Some(0));
    assert_eq!(octo(&["eigen", "--rho", "3", "--K", "0.3"]).status.code(), Some(2));
    assert_eq!(octo(&["decompose", "--input", "/nonexistent/t.json"]).status.code(), Some(2));
    assert_eq!(octo(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(octo(&["trace", "--a3", "1", "--format", "csv"]).status.code(), Some(2));
}

#[test]
fn output_file_matches_stdout() {
    let dir = std::env::temp_dir().join(format!("octo-cli-out-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("trace.json");
    let args = ["trace", "--mu", "1"];
    let stdout = octo(&args).stdout;
    let mut with_file = args.to_vec();
    with_file.extend(["-o", path.to_str().unwrap()]);
    assert!(octo(&with_file).status.success());
    assert_eq!(std::fs::read(&path).unwrap(), stdout);
}

#[test]
fn lc_with_energy() {
    let p = tmp("grad.json", "{\"gradient\": [0.5,0,0, 0,0.5,0, 0,0,0], \"n\": [0,0,1]}");
    let out = run_lib(&["lc", "--input", p.to_str().unwrap(), "--frank", "1", "1", "1", "0.5"]).unwrap();
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert!((v["characteristics"]["S"].as_f64().unwrap() - 1.0).abs() < 1e-15);
    let e = &v["energy"];
    assert!((e["w_classic"].as_f64().unwrap() - e["w_selinger"].as_f64().unwrap()).abs() < 1e-12);
}
