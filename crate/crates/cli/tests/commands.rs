use chordwork::{run, Outcome};
use serde_json::Value;

fn cw(args: &[&str]) -> Outcome {
    run([&["chordwork", "--quiet"][..], args].concat())
}

fn json(out: &Outcome) -> Value {
    serde_json::from_str(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", out.stdout))
}

fn column(report: &Value, name: &str) -> Vec<String> {
    let k = report["columns"].as_array().unwrap().iter().position(|c| c == name).unwrap();
    report["rows"].as_array().unwrap().iter().map(|r| r[k].as_str().unwrap().to_string()).collect()
}

#[test]
fn dihedral_pentagon_has_one_top_class() {
    let out = cw(&["dims", "--space", "dihedral", "--n", "4"]);
    assert_eq!(out.code, 0);
    let r = json(&out);
    assert_eq!(column(&r, "computed"), ["1", "0", "1"]);
    assert_eq!(r["command"], "dims");
    assert_eq!(r["config"]["args"]["dims"]["space"], "dihedral");
    assert!(r["versions"]["chordwork"].is_string());
    assert!(r["statement"].as_str().unwrap().contains("prime gravity"));
    assert!(r["config"].get("workers").is_none());
}

#[test]
fn grt_weight_three_is_one_dimensional() {
    let r = json(&cw(&["grt", "solve", "--weight", "3"]));
    assert_eq!(column(&r, "dim"), ["1"]);
    assert_eq!(column(&r, "reverified"), ["true"]);
}

#[test]
fn conjecture_table_agrees() {
    let out = cw(&["conjecture", "--max-weight", "4", "--format", "csv"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert_eq!(out.stdout, "weight,arity,h0,lyndon,agree\n1,3,0,0,true\n2,4,1,1,true\n3,5,1,1,true\n4,6,0,0,true\n");
}

#[test]
fn failed_checks_exit_with_one_and_are_itemised() {
    let out = cw(&["grt", "check", "--psi", "[x,y]", "--weight", "4"]);
    assert_eq!(out.code, 1);
    let r = json(&out);
    assert_eq!(r["passed"], false);
    assert_eq!(r["failures"][0], "sym3 defect is nonzero");
    assert!(out.stderr.contains("FAIL sym3"));
    let ok = cw(&["grt", "check", "--psi", "[x,[x,y]] + [y,[x,y]]", "--weight", "3"]);
    assert_eq!(ok.code, 0, "{}", ok.stdout);
}

#[test]
fn invalid_input_exits_with_two() {
    for args in [
        &["bogus"][..],
        &["dims"],
        &["dims", "--n", "10", "--max-monomials", "100"],
        &["nf", "--form", "{not json"],
        &["grt", "check", "--psi", "[x,z]"],
        &["grt", "solve", "--min-weight", "5", "--max-weight", "3"],
        &["--workers", "0", "dims", "--n", "4"],
        &["periods", "integrate", "--n", "7"],
        &["periods", "stokes", "--diagram", r#"{"arity":5,"chords":[[1,3],[1,4],[2,5]]}"#],
        &["hochschild", "h0", "--n", "8"],
    ] {
        let out = cw(args);
        assert_eq!(out.code, 2, "{args:?}: {}", out.stdout);
        assert!(out.stdout.is_empty());
        assert!(!out.stderr.is_empty());
    }
    assert!(cw(&["bogus"]).stderr.contains("Usage"));
    assert_eq!(cw(&["--help"]).code, 0);
}

#[test]
fn normal_form_of_the_golden_case() {
    let form = r#"{"arity":4,"degree":2,"terms":[{"coeff":"1","chords":[[1,2],[2,3]]}]}"#;
    let r = json(&cw(&["nf", "--form", form]));
    assert_eq!(r["data"]["normal_form"]["terms"][0]["chords"], serde_json::json!([[1, 3], [2, 4]]));
    assert_eq!(r["data"]["normal_form"]["terms"][0]["coeff"], "1");
}

#[test]
fn discrepancy_reports_the_unlisted_family() {
    let out = cw(&["braids", "discrepancy", "--n", "3"]);
    assert_eq!(out.code, 0);
    let r = json(&out);
    let extra = r["data"]["unlisted_nonzero"].as_array().unwrap();
    assert_eq!(extra.len(), 1);
    assert_eq!(extra[0]["generator"], "b13");
    assert_eq!(extra[0]["coefficient"], "1");
}

#[test]
fn roundtrip_and_lemmas_pass() {
    assert_eq!(cw(&["braids", "roundtrip", "--n", "3"]).code, 0);
    assert_eq!(cw(&["braids", "roundtrip", "--n", "4", "--weight", "4"]).code, 2);
    assert_eq!(cw(&["hochschild", "onto", "--max-n", "6"]).code, 0);
    assert_eq!(cw(&["hochschild", "triviality", "--max-n", "6"]).code, 0);
    assert_eq!(cw(&["hochschild", "verify", "--max-arity", "6"]).code, 0);
}

#[test]
fn open_h0_differs_from_dihedral_at_arity_three() {
    let out = cw(&["hochschild", "h0", "--module", "open", "--max-n", "4"]);
    assert_eq!(out.code, 1);
    let r = json(&out);
    assert_eq!(column(&r, "h0"), ["1", "1", "1"]);
    assert_eq!(r["failures"].as_array().unwrap().len(), 2);
    let d = json(&cw(&["hochschild", "h0", "--max-n", "5"]));
    assert_eq!(column(&d, "h0"), ["1", "0", "1", "1"]);
    assert_eq!(d["passed"], true);
}

#[test]
fn period_commands() {
    let empty = json(&cw(&["periods", "integrate", "--n", "3"]));
    assert_eq!(empty["passed"], true);
    assert!(empty["rows"].as_array().unwrap().is_empty());
    let vacuous = json(&cw(&["periods", "stokes", "--n", "4"]));
    assert_eq!(vacuous["passed"], true);

    let run_house = |chords: &str| {
        let d = format!(r#"{{"arity":4,"chords":{chords}}}"#);
        let r = json(&cw(&["periods", "integrate", "--diagram", &d, "--samples", "20000", "--seed", "5"]));
        assert_eq!(r["passed"], true, "{r}");
        r["data"]["periods"][0]["estimate"]["value"].as_f64().unwrap()
    };
    let a = run_house("[[1,3],[2,4]]");
    let b = run_house("[[2,4],[1,3]]");
    assert_eq!(a, -b);
    assert!((a - 1.6449).abs() < 0.01);
}

#[test]
fn table_output_ends_with_the_verdict() {
    let out = cw(&["enum", "--n", "4", "--degree", "2", "--filter", "prime", "--format", "table"]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.contains("c13*c24"));
    assert!(out.stdout.ends_with("PASS\n"));
}
