use std::process::{Command, Output};

use serde_json::Value;

fn richrt(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_richrt")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn gen_u3_prefix() {
    let o = richrt(&["gen", "--D", "3", "--len", "9"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut lines = text.lines();
    let header: Value = serde_json::from_str(lines.next().unwrap()).unwrap();
    assert_eq!(header["alphabet_size"], 3);
    assert_eq!(header["length"], 9);
    assert_eq!(header["schema_version"], 1);
    assert_eq!(lines.next(), Some("0 1 0 2 0 1 0 2 2"));
}

#[test]
fn gen_empty_payload_keeps_header() {
    let o = richrt(&["gen", "--D", "3", "--len", "0"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 1);
    let header: Value = serde_json::from_str(text.lines().next().unwrap()).unwrap();
    assert_eq!(header["length"], 0);
}

#[test]
fn gen_pi_uses_eleven_letters() {
    let o = richrt(&["gen", "--pi", "--d", "3", "--len", "20"]);
    let text = stdout(&o);
    let mut lines = text.lines();
    let header: Value = serde_json::from_str(lines.next().unwrap()).unwrap();
    assert_eq!(header["alphabet_size"], 11);
    let payload: Vec<u32> = lines.next().unwrap().split(' ').map(|x| x.parse().unwrap()).collect();
    assert_eq!(payload.len(), 20);
    assert!(payload.iter().all(|&x| x < 11));
}

#[test]
fn usage_errors_exit_3() {
    assert_eq!(richrt(&["verify", "--d", "2"]).status.code(), Some(3));
    assert_eq!(richrt(&["gen", "--len", "5"]).status.code(), Some(3));
    assert_eq!(richrt(&["gen", "--D", "2", "--len", "5"]).status.code(), Some(3));
    assert_eq!(richrt(&["frobnicate"]).status.code(), Some(3));
    assert_eq!(richrt(&["rt-table", "--D", "4"]).status.code(), Some(3));
    assert_eq!(richrt(&["--help"]).status.code(), Some(0));
    let o = richrt(&["verify", "--d", "2"]);
    assert!(String::from_utf8_lossy(&o.stderr).contains("d ≥ 3"));
}

#[test]
fn verify_d3_passes_and_lists_families() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let o = richrt(&["verify", "--d", "3", "--N", "500", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let report: Value = serde_json::from_slice(&std::fs::read(&path).unwrap()).unwrap();
    assert_eq!(report["status"], "pass");
    assert_eq!(report["config"]["n_max"], 500);
    let families: Vec<&str> = report["weighted_inequality"]["families"]
        .as_array()
        .unwrap()
        .iter()
        .map(|f| f["family"].as_str().unwrap())
        .collect();
    for f in ["TypeI", "TypeII", "NonPal(1)", "NonPal(2)", "NonPal(3)", "NonPal(4)", "NonPal(5)"] {
        assert!(families.contains(&f), "{f} missing from {families:?}");
    }
    for c in report["checks"].as_array().unwrap() {
        assert_eq!(c["status"], "pass", "{c}");
        assert!(c["anchor"].as_str().is_some_and(|a| !a.is_empty()));
    }
    let leftovers = std::fs::read_dir(dir.path()).unwrap().count();
    assert_eq!(leftovers, 1);
}

#[test]
fn verify_is_byte_stable() {
    let args = ["verify", "--d", "3", "--N", "60", "--prefix", "20000", "--cutoff", "100", "--seed", "7"];
    let a = richrt(&args);
    let b = richrt(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn perturbed_verify_fails() {
    let o = richrt(&["verify", "--d", "3", "--N", "60", "--prefix", "20000", "--cutoff", "100", "--perturb"]);
    assert_eq!(o.status.code(), Some(1));
    let report: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(report["status"], "fail");
    let failing: Vec<&str> = report["checks"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["status"] == "fail")
        .map(|c| c["anchor"].as_str().unwrap())
        .collect();
    assert_eq!(failing, ["explicit-series", "dominance", "weighted-inequality"]);
}

#[test]
fn precision_cap_is_undecided() {
    let o = richrt(&["verify", "--d", "3", "--N", "20", "--prefix", "20000", "--cutoff", "100", "--precision-bits", "1"]);
    assert_eq!(o.status.code(), Some(2));
    let report: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(report["status"], "undecided");
}

#[test]
fn verify_csv_rows() {
    let o = richrt(&["verify", "--d", "3", "--N", "10", "--prefix", "20000", "--cutoff", "100", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("d,family,n,hw,hr,margin_lo,margin_hi,verdict"));
    let row = text.lines().find(|l| l.starts_with("3,TypeI,1,")).unwrap();
    assert!(row.starts_with("3,TypeI,1,18,17,"));
    assert!(row.ends_with(",pass"));
}

#[test]
fn rt_table_values() {
    let o = richrt(&["rt-table"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut rows = csv::Reader::from_reader(text.as_bytes());
    let mut prev = f64::INFINITY;
    let mut seen = Vec::new();
    for r in rows.records() {
        let r = r.unwrap();
        let big_d: usize = r[0].parse().unwrap();
        let (lo, hi): (f64, f64) = (r[3].parse().unwrap(), r[4].parse().unwrap());
        assert!(lo <= hi && hi < prev, "E* not decreasing at D={big_d}");
        prev = lo;
        match big_d {
            3 => assert!(r[3].starts_with("2.70710678")),
            5 => assert!((lo - 2.259).abs() < 5e-4),
            7 => assert!((lo - 2.119_719_68).abs() < 1e-7),
            101 => assert!(hi < 2.02),
            _ => {}
        }
        seen.push(big_d);
    }
    assert_eq!(seen, [3, 5, 7, 9, 11, 21, 51, 101]);
}

#[test]
fn richness_and_exponent_reports() {
    let o = richrt(&["richness", "--pi", "--d", "3", "--len", "8000"]);
    assert_eq!(o.status.code(), Some(0));
    let r: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(r["richness"]["defect"], 0);

    let o = richrt(&["exponent", "--pi", "--d", "3", "--len", "20000", "--cutoffs", "50,100,200"]);
    assert_eq!(o.status.code(), Some(0));
    let r: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let e = r["max_exponent"]["approx"].as_f64().unwrap();
    assert!(e > 2.0 && e < 2.1198);
    assert_eq!(r["estimates_monotone"], true);
}

#[test]
fn bispecials_csv() {
    let o = richrt(&["bispecials", "--D", "7", "--len", "20000", "--cutoff", "60"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("length,shortest_return,ratio,palindromic,bilateral_order,factor\n"));
    assert!(text.lines().count() > 20);
}
