use std::io::Write;
use std::process::{Command, Output, Stdio};

use endoring::eval::{Session, Value};
use endoring::format::value_text;
use endoring::parse::parse_statement;
use endoring::Runner;
use endoring_core::oracle::{element_at, ring_size};
use endoring_core::{EndoMatrix, RingParams};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn endoring(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_endoring"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn repl_on_stdin() {
    let o = endoring(&["--p", "5", "--m", "3"], "inv([[2,3],[75,67]])\nminpoly([[2,3],[75,67]])\n");
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o),
        "[[3,3],[75,103]]  where 75 = 5^2*3, 103 = 5^2*4 + 3\nx^2 + 56x + 34\n"
    );
}

#[test]
fn exit_codes() {
    let p53 = ["--p", "5", "--m", "3"];
    let o = endoring(&p53, "inv([[0,1],[0,1]])\n");
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("NotInvertible") && stderr(&o).contains("a = 0"), "{}", stderr(&o));

    let o = endoring(&p53, "inv([[1,1],[0,5]])\n");
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("u_0 = 0"), "{}", stderr(&o));

    assert_eq!(endoring(&p53, "X\n").status.code(), Some(1));
    assert_eq!(endoring(&p53, "2 @ 3\n").status.code(), Some(2));
    assert_eq!(endoring(&p53, "[[1,2],[0,1]\n").status.code(), Some(2));
    assert_eq!(endoring(&["--p", "6", "--m", "2"], "").status.code(), Some(4));
    assert_eq!(endoring(&["--p", "5", "--m", "1"], "").status.code(), Some(4));
    assert_eq!(endoring(&["--m", "2"], "").status.code(), Some(4));
    assert_eq!(endoring(&["--frobnicate"], "").status.code(), Some(4));
    assert_eq!(endoring(&["--help"], "").status.code(), Some(0));
}

#[test]
fn json_output() {
    let o = endoring(
        &["--p", "5", "--m", "3", "--json"],
        "let B = inv([[2,3],[75,67]])\nannpoly(B)\napply(B, (1,0))\n",
    );
    assert_eq!(o.status.code(), Some(0));
    let lines: Vec<serde_json::Value> = stdout(&o)
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(lines[0]["kind"], "matrix");
    assert_eq!(lines[0]["name"], "B");
    assert_eq!(lines[0]["value"], serde_json::json!([[3, 3], [75, 103]]));
    assert_eq!(lines[1]["kind"], "poly");
    assert_eq!(lines[2]["value"], serde_json::json!([3, 75]));
    assert_eq!((lines[2]["p"].as_u64(), lines[2]["m"].as_u64()), (Some(5), Some(3)));
}

#[test]
fn verify_and_census() {
    let o = endoring(&["verify", "--p", "3", "--m", "2"], "");
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(stdout(&o).lines().filter(|l| l.starts_with("ok")).count(), 6);

    let o = endoring(&["--p", "5", "--m", "3", "verify"], "");
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("budget"));

    let o = endoring(&["census", "--p", "7", "--m", "2", "--json"], "");
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["ring_size"], 16807);
    assert_eq!(v["unit_count"], 12348);
    assert_eq!(v["density"], serde_json::json!([36, 49]));
}

/// Printing a matrix and reading the printed literal back gives the same value.
#[test]
fn print_parse_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for (p, m) in [(2, 2), (5, 3), (97, 2), (3, 5)] {
        let pp = RingParams::new(p, m).unwrap();
        let session = Session::new(pp);
        let size = ring_size(pp) as u64;
        for _ in 0..500 {
            let x = EndoMatrix::try_from(&element_at(pp, rng.gen_range(0..size))).unwrap();
            let text = value_text(&Value::Matrix(x.clone()));
            let literal = text.split("  where").next().unwrap();
            let stmt = parse_statement(literal, pp).unwrap();
            let endoring::parse::Stmt::Expr(e) = stmt else { panic!("{literal}") };
            assert_eq!(session.eval(&e).unwrap(), Value::Matrix(x), "{literal}");
        }
    }
}

/// Session results are exactly the library calls.
#[test]
fn session_matches_library() {
    let pp = RingParams::new(7, 3).unwrap();
    let mut runner = Runner::new(pp, false);
    runner.line("let A = [[3,5],[49,100]]").unwrap();
    runner.line("let B = [[0,6],[294,2]]").unwrap();
    runner.line("let C = inv(A) * B^3 - A + 2").unwrap();
    let a = EndoMatrix::from_entries(pp, 3, 5, 49, 100).unwrap();
    let b = EndoMatrix::from_entries(pp, 0, 6, 294, 2).unwrap();
    let want = a
        .inverse_via_minpoly()
        .unwrap()
        .mul(&b.pow(3))
        .unwrap()
        .sub(&a)
        .unwrap()
        .add(&EndoMatrix::identity(pp).scalar_mul(2))
        .unwrap();
    assert_eq!(runner.session().get("C"), Some(&Value::Matrix(want)));
}
