use std::process::{Command, Output};

use serde_json::Value;

fn da_geom(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_da-geom"))
        .args(args)
        .env_remove("DA_GEOM_SEED")
        .output()
        .expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

#[test]
fn focal_locus_lies_on_y_equals_x_squared() {
    let v = json_of(&da_geom(&["focal", "--focus", "0,0.25", "--directrix", "-0.25", "--xs", "1,2,3"]));
    let pts: Vec<(&str, &str)> = v["points"]
        .as_array()
        .unwrap()
        .iter()
        .map(|p| (p["x"].as_str().unwrap(), p["y"].as_str().unwrap()))
        .collect();
    assert_eq!(pts, [("1", "1"), ("2", "4"), ("3", "9")]);
    assert_eq!(v["kappa"], "1");
}

#[test]
fn focal_single_point() {
    let v = json_of(&da_geom(&["focal", "--focus", "0,1", "--directrix", "-1", "--point", "4"]));
    assert_eq!((v["point"]["x"].as_str(), v["point"]["y"].as_str()), (Some("4"), Some("4")));
}

#[test]
fn focal_on_directrix_level_exits_2() {
    let out = da_geom(&["focal", "--focus", "0,0.25", "--directrix", "0.25"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("focus on directrix level"));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(da_geom(&["verify", "--suite", "bogus"]).status.code(), Some(2));
    assert_eq!(da_geom(&["focal", "--focus", "0"]).status.code(), Some(2));
    assert_eq!(da_geom(&["nonsense"]).status.code(), Some(2));
    let out = da_geom(&["power", "--parabola", "1,0,0", "--point", "0,1", "--slope", "1/0"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn power_and_secants() {
    let v = json_of(&da_geom(&[
        "power",
        "--parabola",
        "1,0,0",
        "--point",
        "0,-1",
        "--slope",
        "3",
        "--slope",
        "-5/2",
    ]));
    assert_eq!(v["power"], "1");
    assert_eq!(v["position"], "exterior");
    assert_eq!(v["geometric_side"], "exterior");
    assert_eq!(v["secants_agree"], true);
    let out = da_geom(&["power", "--parabola", "1,0,0", "--point", "0,-1", "--slope", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("secant misses parabola"));
}

#[test]
fn radical_parallel_axes_have_no_center() {
    let out = da_geom(&["radical", "--parabola", "1,0,0", "--parabola", "2,0,-1", "--parabola", "3,0,-1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("no finite radical center"));
    let v = json_of(&da_geom(&["radical", "--parabola", "1,0,0", "--parabola", "2,0,-1"]));
    assert_eq!(v["axis"]["kind"], "sloped");
    assert_eq!(v["axis"]["slope"], "0");
    assert_eq!(v["axis"]["intercept"], "1");
}

#[test]
fn triangle_and_inner() {
    let v = json_of(&da_geom(&["triangle", "--a", "0,0", "--b", "1,1", "--c", "3,9", "--kappa", "1"]));
    assert_eq!(v["middle_vertex"], "B");
    assert_eq!(v["area"], "3");
    assert!(v["checks"].as_object().unwrap().values().all(|c| c == true));
    let v = json_of(&da_geom(&["inner", "--u", "1,3", "--v", "1,1"]));
    assert_eq!((v["inner"].as_str(), v["alternating"].as_str()), (Some("1"), Some("2")));
}

#[test]
fn brocard_worked_instance() {
    let v = json_of(&da_geom(&["brocard", "--kappa", "1", "--xs", "0,1,3"]));
    assert_eq!(v["u"], "6/7");
    assert_eq!(v["p1"]["x"], "9/7");
    assert_eq!(v["omega2"], "-6/7");
    let out = da_geom(&["brocard", "--kappa", "1", "--xs", "1,0,3"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn ck_examples() {
    let v = json_of(&da_geom(&["ck", "laguerre", "--m1", "1", "--m2", "0"]));
    assert!((v["phi"].as_f64().unwrap() - std::f64::consts::FRAC_PI_4).abs() < 1e-15);
    let v = json_of(&da_geom(&[
        "ck", "distance", "--kappa", "1", "--xa", "0", "--xb", "2", "--t", "0.75",
    ]));
    assert!((v["d"].as_f64().unwrap() - 3f64.ln()).abs() < 1e-15);
    let v = json_of(&da_geom(&["ck", "angle", "--m1", "1", "--m2", "0", "--t1", "2", "--t2", "-2"]));
    assert_eq!(v["cross_ratio"], "1/3");
    let v = json_of(&da_geom(&["ck", "bisector", "--m1", "3", "--m2", "-3", "--t1", "2", "--t2", "-2"]));
    assert_eq!(v["vertical"], true);
    let out = da_geom(&["ck", "angle", "--m1", "2", "--m2", "0", "--t1", "2", "--t2", "-2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("isotropic direction"));
}

#[test]
fn ck_limit_angle_table() {
    let v = json_of(&da_geom(&["ck", "limit-angle", "--m1", "3", "--m2", "1", "--kappa", "1"]));
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 21);
    let last = rows.last().unwrap();
    assert!((last["value"].as_f64().unwrap() - 2.0).abs() < 1e-6);
    assert!((last["ratio_to_previous"].as_f64().unwrap() - 0.25).abs() < 1e-3);
    assert!(rows[0]["ratio_to_previous"].is_null());
}

#[test]
fn ck_csv_has_fixed_header_and_17_digits() {
    let out = da_geom(&["ck", "limit-angle", "--m1", "3", "--m2", "1", "--format", "csv"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("t,value,error,ratio"));
    let first: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(first[0], "1.0000000000000001e-1");
    assert_eq!(first[3], "");
    for cell in &first[..3] {
        let mantissa = cell.split('e').next().unwrap().replace(['.', '-'], "");
        assert_eq!(mantissa.len(), 17, "{cell}");
        assert_eq!(
            cell.parse::<f64>().unwrap().to_string().parse::<f64>().unwrap(),
            cell.parse::<f64>().unwrap()
        );
    }
    let out = da_geom(&["ck", "limit-distance", "--xa", "0", "--xb", "2", "--format", "csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(
        text.lines().next(),
        Some("t,value,error,ratio,d_t,shifted,alpha_t,beta_t,candidate")
    );
}

#[test]
fn verify_examples() {
    let out = da_geom(&["verify", "--suite", "stewart", "--cases", "1000", "--seed", "7"]);
    let v = json_of(&out);
    assert_eq!(v["failures"], 0);
    assert_eq!(v["reports"][0]["cases"], 1000);
    assert!(stderr(&out).contains("stewart"));
    let v = json_of(&da_geom(&["verify", "--suite", "limits", "--cases", "20"]));
    assert_eq!(v["failures"], 0);
    let out = da_geom(&["verify", "--suite", "all", "--cases", "0"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert!(v["reports"].as_array().unwrap().iter().all(|r| r["cases"] == 0));
}

#[test]
fn verify_is_byte_deterministic() {
    let args = ["verify", "--suite", "all", "--cases", "25", "--seed", "11"];
    let a = da_geom(&args);
    let b = da_geom(&args);
    let mut seq_args = args.to_vec();
    seq_args.push("--sequential");
    let c = da_geom(&seq_args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.stdout, c.stdout);
}

#[test]
fn seed_from_environment() {
    let run_env = |seed: &str| {
        Command::new(env!("CARGO_BIN_EXE_da-geom"))
            .args(["verify", "--suite", "ck-axioms", "--cases", "10"])
            .env("DA_GEOM_SEED", seed)
            .output()
            .unwrap()
    };
    let from_env = json_of(&run_env("42"));
    let from_flag = json_of(&da_geom(&["verify", "--suite", "ck-axioms", "--cases", "10", "--seed", "42"]));
    assert_eq!(from_env, from_flag);
    assert_eq!(from_env["seed"], 42);
}
