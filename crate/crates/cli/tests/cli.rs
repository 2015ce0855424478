use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn noncentral(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_noncentral"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let o = noncentral(args);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_str(&stdout(&o)).unwrap()
}

const RING: [&str; 11] = [
    "spectrum",
    "--Z",
    "1",
    "--B",
    "3",
    "--C",
    "1",
    "--n-sum-max",
    "2",
    "--nu-max",
    "2",
];

#[test]
fn spectrum_csv_matches_golden_and_closed_form() {
    let o = noncentral(&[&RING[..], &["--format", "csv"]].concat());
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let golden = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden/spectrum_z1_b3_c1.csv");
    assert_eq!(text, fs::read_to_string(golden).unwrap());

    let mut r = csv::Reader::from_reader(text.as_bytes());
    let header: Vec<String> = r.headers().unwrap().iter().map(str::to_string).collect();
    assert_eq!(
        header,
        ["nu", "n_sum", "degeneracy", "lambda", "n_eff", "energy_hartree"]
    );
    let rows: Vec<Vec<f64>> = r
        .records()
        .map(|rec| rec.unwrap().iter().map(|c| c.parse().unwrap()).collect())
        .collect();
    assert_eq!(rows.len(), 9);
    let energies: Vec<f64> = rows.iter().map(|r| r[5]).collect();
    assert!(energies.windows(2).all(|w| w[0] <= w[1]));

    let row = rows.iter().find(|r| r[0] == 1.0 && r[1] == 0.0).unwrap();
    let lambda = 5f64.sqrt() + 3f64.sqrt();
    let n_eff = 1.0 + lambda / 2.0;
    assert_eq!(row[2], 1.0);
    assert!((row[3] - lambda).abs() < 1e-8);
    assert!((row[4] - n_eff).abs() < 1e-8);
    assert!((row[5] + 0.5 / (n_eff * n_eff)).abs() < 1e-10);
}

#[test]
fn csv_and_json_carry_the_same_levels() {
    let j = json(&RING);
    let csv_text = stdout(&noncentral(&[&RING[..], &["--format", "csv"]].concat()));
    let mut r = csv::Reader::from_reader(csv_text.as_bytes());
    let header: Vec<String> = r.headers().unwrap().iter().map(str::to_string).collect();
    let levels = j["levels"].as_array().unwrap();
    let records: Vec<csv::StringRecord> = r.records().map(Result::unwrap).collect();
    assert_eq!(levels.len(), records.len());
    for (level, rec) in levels.iter().zip(&records) {
        for (key, cell) in header.iter().zip(rec.iter()) {
            assert_eq!(level[key].to_string(), cell, "{key}");
        }
    }
    assert_eq!(j["Z"], 1.0);
    assert_eq!(j["B"], 3.0);
}

#[test]
fn output_is_deterministic() {
    let args = [&RING[..], &["--format", "json"]].concat();
    assert_eq!(noncentral(&args).stdout, noncentral(&args).stdout);
    let verify = ["verify", "--nu-max", "1", "--levels-per-channel", "2"];
    let one = Command::new(env!("CARGO_BIN_EXE_noncentral"))
        .args(verify)
        .env("NONCENTRAL_NUM_THREADS", "1")
        .output()
        .unwrap();
    let many = Command::new(env!("CARGO_BIN_EXE_noncentral"))
        .args(verify)
        .env("NONCENTRAL_NUM_THREADS", "4")
        .output()
        .unwrap();
    assert_eq!(one.stdout, many.stdout);
}

#[test]
fn floats_have_nine_significant_digits() {
    let j = json(&RING);
    for level in j["levels"].as_array().unwrap() {
        for key in ["lambda", "n_eff", "energy_hartree"] {
            let text = level[key].to_string();
            let mantissa: String = text
                .split('e')
                .next()
                .unwrap()
                .chars()
                .filter(char::is_ascii_digit)
                .collect();
            assert!(mantissa.trim_start_matches('0').len() <= 9, "{key} = {text}");
        }
    }
}

#[test]
fn verify_hydrogen_passes() {
    let j = json(&[
        "verify", "--Z", "1", "--B", "0", "--C", "0", "--nu-max", "1", "--tol", "1e-6",
    ]);
    assert_eq!(j["pass"], true);
    assert!(j["max_rel_dev"].as_f64().unwrap() < 1e-6);
    assert_eq!(j["channels"].as_array().unwrap().len(), 2);
}

#[test]
fn verify_csv_lists_rows() {
    let o = noncentral(&[
        "verify",
        "--B",
        "3",
        "--C",
        "1",
        "--nu-max",
        "0",
        "--levels-per-channel",
        "2",
        "--tol",
        "1e-5",
        "--format",
        "csv",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "nu,j,n_r,n_sum,e_closed_form,e_oracle,rel_dev");
    assert_eq!(lines.count(), 3);
}

#[test]
fn ab_quantized_flux_is_coulombian() {
    let o = noncentral(&["ab", "--Z", "1", "--alpha", "3", "--nu", "3", "--n-sum-max", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("\"coulombian\": true"));
    let j: Value = serde_json::from_str(&text).unwrap();
    let e: Vec<f64> = j["levels"]
        .as_array()
        .unwrap()
        .iter()
        .map(|l| l["energy_hartree"].as_f64().unwrap())
        .collect();
    assert_eq!(e, [-0.5, -0.125]);

    let half = json(&["ab", "--alpha", "2.5", "--nu", "3", "--n-sum-max", "0"]);
    let level = &half["levels"][0];
    assert_eq!(level["coulombian"], false);
    assert!((level["energy_hartree"].as_f64().unwrap() + 2.0 / 9.0).abs() < 1e-9);
}

#[test]
fn hartmann_levels() {
    let j = json(&[
        "hartmann",
        "--gamma",
        "1",
        "--sigma",
        "1",
        "--nu",
        "1",
        "--n-sum-max",
        "0",
    ]);
    let e = j["levels"][0]["energy_hartree"].as_f64().unwrap();
    let expected = -1.0 / (2.0 * (1.0 + 2f64.sqrt()).powi(2));
    assert!((e - expected).abs() < 1e-9);
    assert_eq!(j["B"], 1.0);
    assert_eq!(j["C"], 0.0);
}

#[test]
fn transform_axis_point() {
    let j = json(&["transform", "--r", "2", "--theta", "0"]);
    assert_eq!(j["xi"], 0.0);
    assert_eq!(j["eta"], 2.0);
    assert!(j["potential"].is_null());
    let eq = json(&[
        "transform",
        "--r",
        "5",
        "--theta",
        "1.5707963267948966",
        "--Z",
        "1",
        "--B",
        "2",
        "--C",
        "5",
    ]);
    assert_eq!(eq["xi"], 2.5);
    assert_eq!(eq["eta"], 2.5);
    assert!((eq["potential"].as_f64().unwrap() - (-0.2 + 1.0 / 25.0)).abs() < 1e-9);
    let back = json(&["transform", "--u", "3", "--v", "2"]);
    assert_eq!(back["xi"], 2.25);
    assert_eq!(back["r"], 3.25);
}

#[test]
fn greens_converges_below_ground_state_and_diverges_above() {
    let base = ["greens", "--a", "0.1,0,0.1,0", "--b", "0,0.1,0,0.1"];
    let j = json(&[&base[..], &["--energy", "-0.6"]].concat());
    assert!((j["value"].as_f64().unwrap() - 1.643_348_36).abs() < 1e-8);
    assert!(j["rel_err"].as_f64().unwrap() < 1e-8);
    assert!(j["nu"].is_null());
    let o = noncentral(&[&base[..], &["--energy", "-0.4"]].concat());
    assert_eq!(o.status.code(), Some(2));
    assert!(o.stdout.is_empty());

    let channel = ["greens", "--a", "0.2,0,0.3,0", "--b", "0.3,0,0.1,0", "--nu", "0"];
    assert!(
        json(&[&channel[..], &["--energy", "-0.6"]].concat())["value"]
            .as_f64()
            .unwrap()
            > 0.0
    );
    assert_eq!(
        noncentral(&[&channel[..], &["--energy", "-0.4"]].concat())
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn domain_errors_exit_one() {
    assert_eq!(
        noncentral(&["spectrum", "--B", "0", "--C", "1", "--nu-max", "0"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(noncentral(&["spectrum", "--Z", "-1"]).status.code(), Some(1));
    assert_eq!(
        noncentral(&["greens", "--energy", "0.1", "--a", "1,0,0,0", "--b", "0,1,0,0"])
            .status
            .code(),
        Some(1)
    );
    let vacuous = noncentral(&["verify", "--B", "0", "--C", "1", "--nu-max", "0"]);
    assert_eq!(vacuous.status.code(), Some(1));
    let j: Value = serde_json::from_slice(&vacuous.stdout).unwrap();
    assert_eq!(j["pass"], false);
}

#[test]
fn usage_errors_exit_64() {
    assert_eq!(noncentral(&["spectrum", "--bogus"]).status.code(), Some(64));
    assert_eq!(noncentral(&["spectrum", "--Z", "one"]).status.code(), Some(64));
    assert_eq!(noncentral(&["spectrum", "--format", "xml"]).status.code(), Some(64));
    assert_eq!(noncentral(&[]).status.code(), Some(64));
    assert_eq!(noncentral(&["transform", "--r", "1"]).status.code(), Some(64));
    assert_eq!(
        noncentral(&["spectrum", "--config", "/nonexistent/run.ini"])
            .status
            .code(),
        Some(64)
    );
    assert_eq!(noncentral(&["--help"]).status.code(), Some(0));
}

#[test]
fn config_file_with_flag_override() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.ini");
    fs::write(
        &cfg,
        "# ring run\nZ = 2\nB = 3\nC = 1\nnu-max = 1\nn-sum-max = 0\nformat = csv\ntol = 1e-5\n",
    )
    .unwrap();
    let out = dir.path().join("levels.csv");
    let o = noncentral(&[
        "spectrum",
        "--config",
        cfg.to_str().unwrap(),
        "--Z",
        "1",
        "--output",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(o.stdout.is_empty());
    let text = fs::read_to_string(out).unwrap();
    // Z from the flag, the rest from the file
    assert_eq!(
        text,
        "nu,n_sum,degeneracy,lambda,n_eff,energy_hartree\n\
         0,0,1,3.41421356,2.70710678,-0.0682274643\n\
         1,0,1,3.96811879,2.98405939,-0.0561506876\n"
    );
}

#[test]
fn unwritable_output() {
    let o = noncentral(&["spectrum", "--output", "/nonexistent/dir/out.json"]);
    assert_eq!(o.status.code(), Some(74));
}
