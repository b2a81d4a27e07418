use std::process::{Command, Output};

use gridlabel::verifier::check_labeling;
use gridlabel_cli::parse_label_csv;

fn gridlabel(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gridlabel"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn label_csv_examples() {
    let o = gridlabel(&[
        "label", "--k", "3", "--window", "0,0,4,1", "--format", "csv",
    ]);
    assert_eq!(stdout(&o), "x,y,label\n0,0,0\n1,0,5\n2,0,10\n3,0,3\n");
    let o = gridlabel(&[
        "label", "--k", "7", "--window", "0,0,3,1", "--format", "csv",
    ]);
    assert_eq!(stdout(&o), "x,y,label\n0,0,0\n1,0,9\n2,0,18\n");
}

#[test]
fn label_ascii_checkerboard() {
    let o = gridlabel(&["label", "--k", "1", "--window", "0,0,2,2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "1 0\n0 1\n");
}

#[test]
fn label_pgm_and_json() {
    let o = gridlabel(&[
        "label", "--k", "3", "--window", "0,0,3,2", "--format", "pgm",
    ]);
    assert_eq!(stdout(&o), "P2\n3 2\n11\n3 8 1\n0 5 10\n");
    let o = gridlabel(&[
        "label", "--k", "3", "--window", "-1,0,2,1", "--format", "json",
    ]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["k"], 3);
    assert_eq!(v["scheme"]["c"], 12);
    assert_eq!(v["scheme"]["case"], "odd-k-odd-p");
    assert_eq!(v["labels"], serde_json::json!([[7, 0]]));
}

#[test]
fn label_errors() {
    assert_eq!(gridlabel(&["label", "--k", "2"]).status.code(), Some(2));
    let o = gridlabel(&["label", "--k", "3", "--window", "0,0,2000,2000"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("budget"));
    assert_eq!(
        gridlabel(&["label", "--k", "3", "--window", "0,0,0,1"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn verify_exit_codes() {
    assert_eq!(gridlabel(&["verify", "--k", "7"]).status.code(), Some(0));
    let o = gridlabel(&[
        "verify",
        "--k",
        "3",
        "--mode",
        "both",
        "--window",
        "0,0,60,60",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("verdicts agree"));
    let o = gridlabel(&["verify", "--k", "2", "--mode", "diamond"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("k = 2"));
    assert_eq!(
        gridlabel(&["verify", "--k", "3", "--format", "pgm"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(gridlabel(&["verify", "--bogus"]).status.code(), Some(2));
}

#[test]
fn verify_reports_violations() {
    let o = gridlabel(&["verify", "--k", "4", "--mode", "both", "--format", "json"]);
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["passed"], false);
    assert_eq!(v["agree"], true);
    assert_eq!(v["checks"][0]["violation_count"], 3);
    let o = gridlabel(&[
        "verify",
        "--k",
        "4",
        "--format",
        "csv",
        "--max-violations",
        "1",
    ]);
    assert_eq!(
        stdout(&o),
        "check,offset_x,offset_y,distance,required_gap,actual,u_x,u_y,v_x,v_y\ndiamond,-1,-1,2,3,2,,,,\n"
    );
}

#[test]
fn bounds_rows() {
    let o = gridlabel(&["bounds", "--k-min", "3", "--k-max", "3", "--format", "csv"]);
    assert_eq!(stdout(&o).lines().nth(1), Some("3,26/3,9,12,4/3,1.33333"));
    let o = gridlabel(&["bounds", "--k-min", "1", "--k-max", "2", "--format", "csv"]);
    let lines: Vec<String> = stdout(&o).lines().map(String::from).collect();
    assert_eq!(lines[1], "1,2,2,2,1,1.00000");
    assert_eq!(lines[2], "2,6,6,,,");
    assert_eq!(
        gridlabel(&["bounds", "--k-min", "5", "--k-max", "3"])
            .status
            .code(),
        Some(2)
    );
    let o = gridlabel(&[
        "bounds", "--k-min", "199", "--k-max", "199", "--format", "json",
    ]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["records"][0]["ratio_exact"], "747550/663301");
}

#[test]
fn nohole_examples() {
    let o = gridlabel(&["nohole", "--k", "3", "--mode", "both"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("12/12 labels attained"));
    assert_eq!(
        gridlabel(&["nohole", "--k", "9", "--mode", "gcd"])
            .status
            .code(),
        Some(0)
    );
    let o = gridlabel(&[
        "nohole",
        "--k",
        "15",
        "--mode",
        "enumerate",
        "--budget",
        "100",
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("budget"));
}

#[test]
fn search_examples() {
    let o = gridlabel(&[
        "search", "--rows", "2", "--cols", "2", "--k", "2", "--format", "json",
    ]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["minimal_lambda"], 5);
    assert_eq!(v["exhausted"], true);
    assert_eq!(v["scheme"], serde_json::Value::Null);
    let o = gridlabel(&["search", "--rows", "3", "--cols", "3", "--k", "1"]);
    assert!(stdout(&o).contains("minimal lambda: 2"));
    let o = gridlabel(&["search", "--rows", "1", "--cols", "1", "--k", "9"]);
    assert!(stdout(&o).contains("minimal lambda: 1"));
    assert_eq!(
        gridlabel(&["search", "--rows", "0", "--cols", "1", "--k", "1"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn search_certificate_round_trips() {
    let o = gridlabel(&[
        "search", "--rows", "3", "--cols", "4", "--k", "3", "--format", "csv",
    ]);
    let cells = parse_label_csv(&stdout(&o)).unwrap();
    assert_eq!(cells.len(), 12);
    assert!(check_labeling(3, cells, 1).passed);
}

#[test]
fn output_is_deterministic() {
    let args = ["verify", "--k", "8", "--mode", "both", "--format", "json"];
    assert_eq!(gridlabel(&args).stdout, gridlabel(&args).stdout);
    let args = ["search", "--rows", "3", "--cols", "3", "--k", "3"];
    assert_eq!(gridlabel(&args).stdout, gridlabel(&args).stdout);
}
