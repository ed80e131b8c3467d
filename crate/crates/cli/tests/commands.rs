use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> String {
    format!("{}/tests/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_shortres"))
        .args(args)
        .output()
        .expect("the binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "stdout is not JSON ({e}): {}\nstderr: {}",
            String::from_utf8_lossy(&out.stdout),
            String::from_utf8_lossy(&out.stderr)
        )
    })
}

#[test]
fn inspect_reports_gorenstein_shape() {
    let out = run(&["inspect", &fixture("gorenstein_xy.alg")]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["hilbert"], serde_json::json!([1, 2, 2, 1]));
    assert_eq!(v["gorenstein"], true);
    assert_eq!(v["balanced"], true);
    assert_eq!(v["socle"], serde_json::json!(["y^3"]));
}

#[test]
fn inspect_local_file() {
    let v = json(&run(&["inspect", &fixture("inhomogeneous.alg")]));
    assert_eq!(v["kind"], "local");
    assert_eq!(v["length"], 6);
    assert_eq!(v["hilbert"], serde_json::json!([1, 2, 2, 1]));
}

#[test]
fn malformed_file_exits_two_with_position() {
    let out = run(&["inspect", &fixture("malformed.alg")]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("malformed.alg:3:"), "{err}");
}

#[test]
fn missing_file_exits_two() {
    assert_eq!(run(&["inspect", "no/such/file.alg"]).status.code(), Some(2));
}

#[test]
fn unknown_law_is_a_usage_error() {
    assert_eq!(
        run(&["verify", "no-such-law", &fixture("ci_quadrics.alg")])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn betti_of_two_quadrics() {
    let out = run(&["betti", &fixture("ci_quadrics.alg"), "--capN", "4", "--capJ", "8"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let totals: Vec<u64> = (0..=4)
        .map(|i| {
            v["betti"]["entries"]
                .as_array()
                .unwrap()
                .iter()
                .filter(|e| e[0] == i)
                .map(|e| e[2].as_u64().unwrap())
                .sum()
        })
        .collect();
    assert_eq!(totals, vec![1, 2, 3, 4, 5]);
    assert!(String::from_utf8_lossy(&out.stderr).contains("total"));
}

#[test]
fn ezd_certificate_and_hash_agree_with_betti() {
    let file = fixture("gorenstein_xy.alg");
    let ezd = json(&run(&["ezd", &file]));
    assert_eq!(ezd["found"], true);
    assert_eq!(ezd["certificate"]["a"], "x");
    assert_eq!(ezd["certificate"]["b"], "y");
    let betti = json(&run(&["betti", &file]));
    assert_eq!(ezd["algebra"], betti["algebra"]);
}

#[test]
fn ezd_on_square_zero_finds_nothing() {
    let v = json(&run(&["ezd", &fixture("square_zero.alg"), "--budget", "4,2"]));
    assert_eq!(v["found"], false);
}

#[test]
fn verify_laws_on_fixtures() {
    let cases = [
        ("initial-forms", "inhomogeneous.alg", "verified_to_caps"),
        ("koszul-socle", "socle_two.alg", "verified_to_caps"),
        ("complete-intersection", "ci_quadrics.alg", "verified_to_caps"),
        ("complete-intersection", "ci_mixed.alg", "verified_to_caps"),
        ("periodic-resolution", "gorenstein_xy.alg", "verified_to_caps"),
        ("poincare-factorization", "gorenstein_xy.alg", "verified_to_caps"),
        ("graded-factorization", "gorenstein_xy.alg", "verified_to_caps"),
        ("golod", "square_zero.alg", "inapplicable"),
        ("gorenstein-rationality", "ci_mixed.alg", "inapplicable"),
    ];
    for (law, file, status) in cases {
        let out = run(&["verify", law, &fixture(file)]);
        assert_eq!(out.status.code(), Some(0), "{law} on {file}");
        let v = json(&out);
        assert_eq!(v["law"], law);
        assert_eq!(v["outcome"]["status"], status, "{law} on {file}: {v}");
    }
}

#[test]
fn verify_with_explicit_non_pair_is_inapplicable() {
    let v = json(&run(&[
        "verify",
        "periodic-resolution",
        &fixture("gorenstein_xy.alg"),
        "--a",
        "x",
        "--b",
        "x",
    ]));
    assert_eq!(v["outcome"]["status"], "inapplicable");
}

#[test]
fn half_a_pair_is_rejected() {
    let out = run(&[
        "verify",
        "periodic-resolution",
        &fixture("gorenstein_xy.alg"),
        "--a",
        "x",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn quick_survey_writes_one_line_per_sample() {
    let dir = std::env::temp_dir().join(format!("shortres-survey-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("out.jsonl");
    let out = run(&[
        "survey",
        "--samples",
        "3",
        "--seed",
        "5",
        "--quick",
        "--sequential",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(&path).unwrap();
    let records: Vec<Value> = text.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(records.len(), 3);
    for (i, r) in records.iter().enumerate() {
        assert_eq!(r["index"], i);
        assert_eq!(r["seed"], 5);
        assert!(r["laws"]["koszul-socle"].is_object());
        assert!(r["laws"].get("golod").is_none());
    }
    assert!(String::from_utf8_lossy(&out.stderr).contains("samples: 3"));
    std::fs::remove_dir_all(&dir).unwrap();
}
