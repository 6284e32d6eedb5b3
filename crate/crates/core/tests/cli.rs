use std::fs;
use std::process::{Command, Output};

use serde_json::Value;

use picard::cli::record::{OutputRecord, CSV_HEADER};

fn picard(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_picard"))
        .args(args)
        .output()
        .expect("failed to run picard")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn schema() -> Value {
    let path = concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/schema/output_record.schema.json"
    );
    serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap()
}

/// Required keys, JSON types, enums and string patterns from the schema.
fn check_against_schema(schema: &Value, record: &Value) {
    let obj = record.as_object().expect("record is an object");
    for key in schema["required"].as_array().unwrap() {
        assert!(
            obj.contains_key(key.as_str().unwrap()),
            "missing {key} in {record}"
        );
    }
    let props = schema["properties"].as_object().unwrap();
    for (key, value) in obj {
        let mut spec = props
            .get(key)
            .unwrap_or_else(|| panic!("unexpected key {key}"));
        if let Some(r) = spec.get("$ref") {
            let name = r.as_str().unwrap().rsplit('/').next().unwrap();
            spec = &schema["$defs"][name];
        }
        if let Some(options) = spec.get("enum") {
            assert!(
                options.as_array().unwrap().contains(value),
                "{key}={value} not in enum"
            );
            continue;
        }
        let ok = match spec["type"].as_str().unwrap() {
            "integer" => value.is_i64() || value.is_u64(),
            "number" => value.is_number(),
            "string" => value.is_string(),
            "boolean" => value.is_boolean(),
            "object" => value.is_object(),
            other => panic!("unhandled schema type {other}"),
        };
        assert!(ok, "{key}={value} has the wrong type");
        if let (Some(s), Some(_)) = (value.as_str(), spec.get("pattern")) {
            assert!(!s.is_empty() && !s.contains(' '), "{key}={s:?}");
            if key != "ideal" {
                let body = s.strip_prefix('-').unwrap_or(s);
                let (num, den) = body.split_once('/').unwrap_or((body, "1"));
                assert!(
                    num.bytes().all(|b| b.is_ascii_digit())
                        && den.bytes().all(|b| b.is_ascii_digit())
                );
                assert!(
                    den != "0" && (num == "0" || !num.starts_with('0')),
                    "{key}={s}"
                );
            }
        }
    }
}

#[test]
fn field_reports() {
    let out = picard(&["field", "7"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("B3       48/7"), "{text}");
    assert!(text.contains("c2_full  1/7"), "{text}");
    assert!(text.contains("h        1"), "{text}");

    let out = picard(&["--json", "field", "1"]);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["h"], 1);
    assert_eq!(v["B3"], "3/2");
    assert_eq!(v["c2_full"], "1/32");
    assert_eq!(v["D"], -4);
}

#[test]
fn field_rejects_non_squarefree() {
    let out = picard(&["field", "12"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("12 is not squarefree"));
}

#[test]
fn bad_ideal_is_a_parse_error() {
    let out = picard(&["invariants", "7", "(1+"]);
    assert_eq!(out.status.code(), Some(2));
    let out = picard(&["invariants", "7", "P(3,1)"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn invariants_anchor() {
    let out = picard(&["--json", "invariants", "7", "sqrtd", "--k", "2..3"]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    check_against_schema(&schema(), &v);
    assert_eq!(v["c2"], "48");
    assert_eq!(v["c1sq"], "-24");
    assert_eq!(v["verdict"], "PossibleException");
    assert_eq!(v["dims"]["2"], "146");
    assert_eq!(v["dims"]["3"], "434");
    assert_eq!(v["vanishing_assumed"], true);

    let table = stdout(&picard(&["invariants", "7", "sqrtd"]));
    assert!(table.contains("c1sq      -24"), "{table}");
}

#[test]
fn non_decomposed_two_exits_3() {
    let out = picard(&["invariants", "5", "P(2)"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(out.stdout.is_empty());
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("prime 2") && err.contains("D = -20"), "{err}");
}

#[test]
fn dims_need_neat_ideal() {
    let out = picard(&["invariants", "7", "(2)", "--k", "2..3"]);
    assert_eq!(out.status.code(), Some(4));
    let out = picard(&["cuspdim", "7", "sqrtd", "--k", "1..2"]);
    assert_eq!(out.status.code(), Some(4));
    let out = picard(&["cuspdim", "7", "sqrtd", "--k", "2..4"]);
    assert_eq!(stdout(&out), "k=2  146\nk=3  434\nk=4  866\n");
}

#[test]
fn factor_output() {
    let out = picard(&["--json", "factor", "5", "(6)"]);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["ideal"], "P(2)^2*P(3,1)*P(3,2)");
    assert_eq!(v["norm"], 36);
}

#[test]
fn sweep_csv_contains_anchor_row() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sweep.csv");
    let out = picard(&[
        "sweep",
        "--dmax",
        "8",
        "--normmax",
        "50",
        "--csv",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());

    let mut reader = csv::Reader::from_path(&path).unwrap();
    let header: Vec<String> = reader.headers().unwrap().iter().map(String::from).collect();
    assert_eq!(header, CSV_HEADER);
    let rows: Vec<csv::StringRecord> = reader.records().map(Result::unwrap).collect();
    assert!(rows
        .iter()
        .any(|r| &r[0] == "7" && &r[2] == "P(7)" && &r[7] == "48" && &r[9] == "-24"));

    // stable column order and row order across runs
    let again = picard(&["sweep", "--dmax", "8", "--normmax", "50", "--csv"]);
    assert_eq!(stdout(&again), fs::read_to_string(&path).unwrap());
}

#[test]
fn tiny_sweep_is_never_neat() {
    let out = picard(&["sweep", "--dmax", "3", "--normmax", "3", "--csv"]);
    let mut reader = csv::Reader::from_reader(out.stdout.as_slice());
    let rows: Vec<csv::StringRecord> = reader.records().map(Result::unwrap).collect();
    assert!(!rows.is_empty());
    assert!(rows
        .iter()
        .all(|r| &r[6] == "NotGuaranteed" && &r[12] == "NotCertifiedNeat"));
}

#[test]
fn json_sweep_matches_schema() {
    let out = picard(&["--json", "sweep", "--dmax", "8", "--normmax", "200"]);
    assert_eq!(out.status.code(), Some(0));
    let rows: Vec<Value> = serde_json::from_slice(&out.stdout).unwrap();
    assert!(rows.len() > 100);
    let schema = schema();
    for row in &rows {
        check_against_schema(&schema, row);
        assert!(row["ratio"].as_f64().unwrap() < 3.0);
        let record: OutputRecord = serde_json::from_value(row.clone()).unwrap();
        assert_eq!(serde_json::to_value(&record).unwrap(), *row);
    }
}

#[test]
fn verify_default_budget() {
    let out = picard(&["verify"]);
    let text = stdout(&out);
    assert_eq!(out.status.code(), Some(0), "{text}");
    assert!(text.contains("PASS  B3 table: 12/12"), "{text}");
    assert!(!text.contains("FAIL") && !text.contains("SKIP"), "{text}");
}

#[test]
fn verify_small_budget_skips() {
    let out = picard(&["verify", "--budget", "1000"]);
    let text = stdout(&out);
    assert_eq!(out.status.code(), Some(0), "{text}");
    let sl3: Vec<&str> = text.lines().filter(|l| l.contains("SL3")).collect();
    assert_eq!(sl3.len(), 4);
    assert!(sl3[0].starts_with("PASS"), "{text}");
    assert!(sl3[1..].iter().all(|l| l.starts_with("SKIP")), "{text}");
}

#[test]
fn verify_tampered_table_fails() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("b3.csv");
    fs::write(&path, "3,2/3\n4,3/2\n7,47/7\n").unwrap();
    let out = picard(&[
        "verify",
        "--budget",
        "1000",
        "--b3-table",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(5));
    assert!(stdout(&out).contains("FAIL  B3 table: 2/3"));
}
