use std::io::Write;
use std::process::{Command, Output, Stdio};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ncomplex")).args(args).output().expect("binary runs")
}

fn run_with_stdin(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_ncomplex"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

const VECTOR: &str = r#"{"N":3,"dim":2,"degree":1,"poly_degree":2,"variance":"co",
  "entries":[{"idx":[1],"exp":[1,1],"num":"1"},{"idx":[2],"exp":[2,0],"num":"3","den":"2"}]}"#;

#[test]
fn dim_of_mixed_shape() {
    let o = run(&["dim", "--shape", "2,1", "--D", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "8\n");
}

#[test]
fn dim_check_and_formats() {
    let o = run(&["dim", "--shape", "2,2", "--D", "3", "--check"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("6\n"));
    let o = run(&["dim", "--shape", "2,2", "--D", "4", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["dim"], 20);
    let o = run(&["dim", "--shape", "2,1", "--D", "2", "--format", "csv"]);
    assert_eq!(stdout(&o), "shape,D,dim\n\"2,1\",2,2\n");
}

#[test]
fn poincare_passes_with_zero_table() {
    let o = run(&["poincare", "--N", "3", "--D", "2", "--nmax", "2", "--qmax", "4"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.trim_end().ends_with("PASS"));
    for line in out.lines().filter(|l| l.starts_with(|c: char| c.is_ascii_digit())) {
        assert!(line.split_whitespace().skip(1).all(|x| x == "0"), "{line}");
    }
}

#[test]
fn verify_all_small_passes() {
    let o = run(&["verify-all", "--small"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(!stdout(&o).contains("FAIL"));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["nonsense"]).status.code(), Some(2));
    assert_eq!(run(&["dim", "--shape", "1,2", "--D", "3"]).status.code(), Some(2));
    assert_eq!(run(&["cohomology", "--N", "1", "--D", "2"]).status.code(), Some(2));
    assert_eq!(run(&["cohomology", "--N", "3", "--D", "2", "--p", "9"]).status.code(), Some(2));
    assert_eq!(run(&["dim", "--shape", "2", "--D", "2", "--format", "xml"]).status.code(), Some(2));
    assert_eq!(run(&["spin2", "--D", "2", "--format", "csv"]).status.code(), Some(2));
}

#[test]
fn malformed_input_reports_location() {
    let bad = VECTOR.replace("[1,1]", "[1,0]");
    let o = run_with_stdin(&["diff"], &bad);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("entries[0].exp"), "{}", stderr(&o));

    let o = run_with_stdin(&["diff"], &VECTOR.replace("\"idx\":[2]", "\"idx\":[5]"));
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("entries[1].idx[0]"), "{}", stderr(&o));

    let o = run_with_stdin(&["diff"], "{\"N\": 3,");
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 1"), "{}", stderr(&o));

    let o = run(&["diff", "--input", "/nonexistent/field.json"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn diff_pipes_to_zero() {
    let once = run_with_stdin(&["diff"], VECTOR);
    assert_eq!(once.status.code(), Some(0));
    let twice = run_with_stdin(&["diff"], &stdout(&once));
    let thrice = run_with_stdin(&["diff"], &stdout(&twice));
    let v: serde_json::Value = serde_json::from_str(&stdout(&thrice)).unwrap();
    assert_eq!(v["degree"], 4);
    assert_eq!(v["entries"].as_array().unwrap().len(), 0);
    let direct = run_with_stdin(&["diff", "--power", "2"], VECTOR);
    assert_eq!(stdout(&direct), stdout(&twice));
}

#[test]
fn dual_round_trip() {
    let star = run_with_stdin(&["dual"], VECTOR);
    assert_eq!(star.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&star)).unwrap();
    assert_eq!(v["variance"], "contra");
    assert_eq!(v["degree"], 3);
    let back: serde_json::Value = serde_json::from_str(&stdout(&run_with_stdin(&["dual"], &stdout(&star)))).unwrap();
    let orig: serde_json::Value = serde_json::from_str(VECTOR).unwrap();
    let key = |e: &serde_json::Value| (e["idx"].to_string(), e["exp"].to_string(), e["num"].to_string(), e["den"].as_str().unwrap_or("1").to_string());
    let mut a: Vec<_> = back["entries"].as_array().unwrap().iter().map(key).collect();
    let mut b: Vec<_> = orig["entries"].as_array().unwrap().iter().map(key).collect();
    a.sort();
    b.sort();
    assert_eq!(a, b);
}

#[test]
fn project_symmetrizes() {
    let t = r#"{"dim":2,"degree":2,"variance":"co","entries":[{"idx":[1,2],"num":"1"}]}"#;
    let o = run_with_stdin(&["project", "--shape", "2"], t);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let entries = v["entries"].as_array().unwrap();
    assert_eq!(entries.len(), 2);
    assert!(entries.iter().all(|e| e["num"] == "1" && e["den"] == "2"));
    assert_eq!(run_with_stdin(&["project", "--shape", "2,1"], t).status.code(), Some(2));
}

#[test]
fn cohomology_csv_is_deterministic_across_jobs() {
    let a = run(&["cohomology", "--N", "3", "--D", "2", "--qmax", "2", "--format", "csv", "--jobs", "1"]);
    let b = run(&["cohomology", "--N", "3", "--D", "2", "--qmax", "2", "--format", "csv", "--jobs", "4"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(stdout(&a), stdout(&b));
    assert!(stdout(&a).starts_with("N,D,p,k,q,dim_ker,dim_im,dim_H\n"));
    assert!(stdout(&a).contains("\n3,2,0,2,1,2,0,2\n"));
}

#[test]
fn four_term_sequence_dimensions() {
    let o = run(&["hexagon", "--N", "3", "--D", "3", "--four-term", "--qmax", "3", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["totals"], serde_json::json!([1, 4, 6, 3]));
    assert_eq!(v["verdict"], "PASS");
}

#[test]
fn theorem2_and_relative() {
    assert_eq!(run(&["theorem2", "--N", "3", "--D", "2", "--K", "1,2", "--m", "2", "--qmax", "2"]).status.code(), Some(0));
    assert_eq!(run(&["theorem2", "--N", "4", "--D", "2", "--K", "1", "--relative", "2", "--qmax", "2"]).status.code(), Some(0));
    assert_eq!(run(&["theorem2", "--N", "3", "--D", "2", "--K", "1,3"]).status.code(), Some(2));
}

#[test]
fn green_reports_constants() {
    let o = run(&["green", "--N", "3", "--D", "2", "--p", "1,2", "--qmax", "1", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "p,q,tested,factor,dF=d1F\n1,0,0,-,-\n1,1,4,1,-\n2,0,0,-,true\n2,1,4,-4/3,false\n");
}

#[test]
fn spin2_and_spin_s() {
    let o = run(&["spin2", "--D", "2", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["constants"]["d1"], "-2");
    assert_eq!(v["constants"]["d2"], "-3");
    assert!(v["constants"]["d3"].is_null());
    assert_eq!(run_with_stdin(&["spin2", "--D", "2", "--input", "-"], VECTOR).status.code(), Some(0));
    assert_eq!(run(&["spinS", "--S", "2", "--D", "3", "--qmax", "2"]).status.code(), Some(0));
}

#[test]
fn stress_potential_round_trip_is_seeded() {
    let a = run(&["stress-potential", "--D", "3", "--q", "1", "--seed", "9", "--format", "json"]);
    let b = run(&["stress-potential", "--D", "3", "--q", "1", "--seed", "9", "--format", "json"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_str(&stdout(&a)).unwrap();
    assert_eq!(v["residual_zero"], true);
    assert_eq!(v["kappa"], "-1/3");
    let not_conserved = r#"{"N":3,"dim":3,"degree":2,"poly_degree":1,"variance":"contra",
      "entries":[{"idx":[1,1],"exp":[1,0,0],"num":"1"}]}"#;
    assert_eq!(run_with_stdin(&["stress-potential", "--input", "-"], not_conserved).status.code(), Some(2));
}

#[test]
fn algebra_exit_code_follows_verdict() {
    assert_eq!(run(&["algebra", "--N", "3", "--D", "2", "--cap", "3"]).status.code(), Some(0));
    let o = run(&["algebra", "--N", "3", "--D", "2", "--cap", "4"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).trim_end().ends_with("FAIL"));
}
