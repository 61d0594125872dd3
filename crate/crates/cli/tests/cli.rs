use std::path::Path;
use std::process::{Command, Output};

use lensinv_core::hopf::Scalar;
use lensinv_core::uqsl2::build_uqsl2;
use serde_json::Value;
use tempfile::TempDir;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lensinv"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_str(&stdout(o)).expect("JSON output")
}

fn path(dir: &TempDir, name: &str) -> String {
    dir.path().join(name).to_str().unwrap().to_string()
}

#[test]
fn kuperberg_value_of_l21_is_trace_of_inverse_antipode() {
    let o = run(&[
        "invariant",
        "--p",
        "2",
        "--q",
        "1",
        "--l",
        "3",
        "--method",
        "kuperberg",
        "--format",
        "json",
    ]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let v = json(&o);
    let got = Scalar::from_json_value(&v["results"][0]["value"]).unwrap();
    let h = build_uqsl2(3).unwrap();
    assert_eq!(got, h.structure.antipode_trace(-1));
    assert_eq!(v["results"].as_array().unwrap().len(), 1);
}

#[test]
fn all_methods_agree() {
    let o = run(&["invariant", "--p", "2", "--q", "1", "--format", "json"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let v = json(&o);
    assert_eq!(v["equal"], Value::Bool(true));
    let results = v["results"].as_array().unwrap();
    let methods: Vec<&str> = results
        .iter()
        .map(|r| r["method"].as_str().unwrap())
        .collect();
    assert_eq!(
        methods,
        ["kuperberg", "hennings-closed", "hennings-diagram"]
    );
    assert!(results.iter().all(|r| r["value"] == results[0]["value"]));
}

#[test]
fn diagram_skipped_under_a_small_budget() {
    let o = run(&[
        "invariant",
        "--p",
        "3",
        "--q",
        "1",
        "--budget",
        "50",
        "--format",
        "csv",
    ]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let text = stdout(&o);
    assert!(
        text.lines()
            .last()
            .unwrap()
            .starts_with("hennings-diagram,3,1,3,,,"),
        "{text}"
    );
    assert!(text.contains("skipped"));
}

#[test]
fn exit_codes() {
    let o = run(&["invariant", "--p", "4", "--q", "2", "--l", "3"]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("gcd"));
    let o = run(&[
        "invariant",
        "--p",
        "2",
        "--q",
        "1",
        "--method",
        "hennings-diagram",
        "--budget",
        "5",
    ]);
    assert_eq!(code(&o), 3);
    assert!(stderr(&o).contains("budget"));
    assert_eq!(
        code(&run(&["verify-theorem", "--l", "4", "--pmax", "5"])),
        2
    );
    assert_eq!(code(&run(&["invariant", "--p", "2"])), 2);
}

#[test]
fn verify_theorem_csv() {
    let o = run(&[
        "verify-theorem",
        "--l",
        "3",
        "--pmax",
        "8",
        "--format",
        "csv",
        "--workers",
        "2",
    ]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "p,q,l,z_kup,z_henn_sq,equal,runtime_ms"
    );
    let rows: Vec<Vec<&str>> = lines.map(|l| l.split(',').collect()).collect();
    // coprime pairs with p ≤ 8: φ(2) + … + φ(8)
    assert_eq!(rows.len(), 1 + 2 + 2 + 4 + 2 + 6 + 4);
    for r in &rows {
        assert_eq!(r[5], "true");
        assert_eq!(r[3], r[4]);
    }
    assert_eq!((rows[0][0], rows[0][1]), ("2", "1"));
}

#[test]
fn verify_theorem_is_deterministic_without_timing() {
    let args = [
        "verify-theorem",
        "--l",
        "3",
        "--pmax",
        "6",
        "--format",
        "json",
        "--no-timing",
    ];
    let a = run(&args);
    let b = run(&[
        "verify-theorem",
        "--l",
        "3",
        "--pmax",
        "6",
        "--format",
        "json",
        "--no-timing",
        "--workers",
        "1",
    ]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let v = json(&a);
    let rows = v.as_array().unwrap();
    assert_eq!(rows.len(), 11);
    assert!(rows
        .iter()
        .all(|r| r["equal"] == Value::Bool(true) && r["runtime_ms"].is_null()));
    assert_eq!(
        rows[0]["z_kup"],
        serde_json::json!({"l": 3, "coeffs": ["4", "0"]})
    );
}

#[test]
fn empty_grid_warns() {
    let o = run(&[
        "verify-theorem",
        "--l",
        "3",
        "--pmax",
        "1",
        "--format",
        "csv",
    ]);
    assert_eq!(code(&o), 0);
    assert!(stderr(&o).contains("warning"));
    assert_eq!(stdout(&o).lines().count(), 1);
}

#[test]
fn axioms_builtin_and_files() {
    let dir = TempDir::new().unwrap();
    assert_eq!(code(&run(&["verify-axioms", "--uqsl2", "3"])), 0);
    assert_eq!(code(&run(&["verify-axioms", "--uqsl2", "5"])), 0);

    let good = path(&dir, "u3.json");
    assert_eq!(code(&run(&["export", "--uqsl2", "3", "--out", &good])), 0);
    let o = run(&["verify-axioms", "--file", &good, "--format", "json"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert_eq!(json(&o)["passed"], Value::Bool(true));

    // identity antipode
    let mut v: Value = serde_json::from_str(&std::fs::read_to_string(&good).unwrap()).unwrap();
    let dim = v["dim"].as_u64().unwrap();
    v["antipode"] = (0..dim)
        .map(|i| serde_json::json!([i, i, {"l": 3, "coeffs": ["1", "0"]}]))
        .collect();
    let broken = path(&dir, "broken.json");
    std::fs::write(&broken, v.to_string()).unwrap();
    let o = run(&["verify-axioms", "--file", &broken]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("FAIL  antipode"));

    let malformed = path(&dir, "malformed.json");
    std::fs::write(&malformed, "{\"l\": 3, \"dim\": ").unwrap();
    assert_eq!(code(&run(&["verify-axioms", "--file", &malformed])), 2);
}

#[test]
fn drinfeld_double_of_cyclic_groups() {
    let dir = TempDir::new().unwrap();
    for (n, dim) in [(2, 4), (3, 9)] {
        let input = path(&dir, &format!("c{n}.json"));
        let out = path(&dir, &format!("d{n}.json"));
        assert_eq!(
            code(&run(&[
                "export",
                "--cyclic",
                &n.to_string(),
                "--out",
                &input
            ])),
            0
        );
        let o = run(&[
            "double", "--file", &input, "--out", &out, "--format", "json",
        ]);
        assert_eq!(code(&o), 0, "{}", stderr(&o));
        let report = json(&o);
        assert_eq!(report["dim"], dim);
        assert_eq!(report["factorizability_rank"], dim);
        assert_eq!(report["factorizable"], Value::Bool(true));
        assert_eq!(report["ribbon_criterion"], Value::Bool(true));
        assert!(Path::new(&out).exists());
        let o = run(&["verify-axioms", "--file", &out]);
        assert_eq!(code(&o), 0, "{}", stdout(&o));
    }
    let malformed = path(&dir, "bad.json");
    std::fs::write(&malformed, "not json").unwrap();
    assert_eq!(code(&run(&["double", "--file", &malformed])), 2);
}

#[test]
fn chain_mail_file_round_trip() {
    let dir = TempDir::new().unwrap();
    let o = run(&["chain-mail", "--p", "2", "--q", "1"]);
    assert_eq!(code(&o), 0);
    let file = path(&dir, "cm.txt");
    std::fs::write(&file, stdout(&o)).unwrap();
    let o = run(&["link", "--file", &file, "--format", "json"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let v = json(&o);
    assert_eq!(v["components"], 2);
    assert_eq!(v["signature"], 0);
    let closed = run(&[
        "invariant",
        "--p",
        "2",
        "--q",
        "1",
        "--method",
        "hennings-closed",
        "--format",
        "json",
    ]);
    assert_eq!(v["z_henn"], json(&closed)["results"][0]["value"]);

    std::fs::write(&file, "cup 0\nx+ 3\ncap 0\n").unwrap();
    assert_eq!(code(&run(&["link", "--file", &file])), 2);
}

#[test]
fn exponent_data_files() {
    let dir = TempDir::new().unwrap();
    let o = run(&["exponents", "--p", "5", "--q", "2"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(
        v,
        serde_json::json!({"legs": [4, 1, 3, 5, 2], "exponents": [-1, -1, 1, 3, 3], "g_power": 2})
    );
    let file = path(&dir, "e.json");
    std::fs::write(&file, v.to_string()).unwrap();
    let a = run(&["exponents", "--file", &file, "--format", "json"]);
    let b = run(&[
        "invariant",
        "--p",
        "5",
        "--q",
        "2",
        "--method",
        "kuperberg",
        "--format",
        "json",
    ]);
    assert_eq!(json(&a)["value"], json(&b)["results"][0]["value"]);
}
