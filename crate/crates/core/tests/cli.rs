//! Golden-file tests for the command line: byte equality of the shipped
//! demo scripts in text and JSON modes, stable parse-error positions, and
//! the exit-code contract (0 ok, 1 runtime, 2 parse, 3 assertion).

use assert_cmd::Command;

fn ramify() -> Command {
    Command::cargo_bin("ramify").unwrap()
}

fn golden(name: &str) -> String {
    let path = format!("{}/tests/golden/{name}", env!("CARGO_MANIFEST_DIR"));
    std::fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing golden file {path}"))
}

fn script(name: &str) -> String {
    format!("{}/scripts/{name}", env!("CARGO_MANIFEST_DIR"))
}

#[test]
fn demo_text_golden() {
    ramify()
        .args(["eval", &script("demo.rmf")])
        .assert()
        .success()
        .code(0)
        .stdout(golden("demo.out.txt"));
    println!("acceptance 10a (demo golden, text): PASS");
}

#[test]
fn demo_json_golden() {
    ramify()
        .args(["eval", &script("demo.rmf"), "--json"])
        .assert()
        .success()
        .stdout(golden("demo.out.json"));
    println!("acceptance 10b (demo golden, json): PASS");
}

#[test]
fn bogomolov_goldens() {
    ramify()
        .args(["eval", &script("bogomolov.rmf")])
        .assert()
        .success()
        .stdout(golden("bogomolov.out.txt"));
    ramify()
        .args(["eval", &script("bogomolov.rmf"), "--json"])
        .assert()
        .success()
        .stdout(golden("bogomolov.out.json"));
}

#[test]
fn pushforward_golden() {
    ramify()
        .args(["eval", &script("pushforward.rmf")])
        .assert()
        .success()
        .stdout(golden("pushforward.out.txt"));
}

#[test]
fn expr_one_shot() {
    ramify()
        .args([
            "expr",
            "-e",
            "disc_degree(twist(tangent(P(2)), line(P(2),[1])))",
        ])
        .assert()
        .success()
        .stdout("24\n");
    ramify()
        .args(["expr", "-e", "1 + 2^10", "--json"])
        .assert()
        .success()
        .stdout("{\"type\":\"number\",\"text\":\"1025\",\"value\":\"1025\"}\n");
}

#[test]
fn parse_error_positions_and_exit_code() {
    ramify()
        .args(["eval", "tests/fixtures/parse_error.rmf"])
        .assert()
        .code(2)
        .stderr("parse error at 1:5: expected identifier\n");
    ramify()
        .args(["expr", "-e", "c(E,2"])
        .assert()
        .code(2)
        .stderr("parse error at 1:12: expected ')'\n");
}

#[test]
fn runtime_error_exit_code() {
    ramify()
        .args(["eval", "tests/fixtures/runtime_error.rmf"])
        .assert()
        .code(1);
}

#[test]
fn assertion_failure_exit_code() {
    ramify()
        .args(["eval", "tests/fixtures/assert_fail.rmf"])
        .assert()
        .code(3)
        .stderr(predicates::str::contains("assertion failed at 3:1"));
}

#[test]
fn static_errors_use_parse_exit_code() {
    ramify()
        .args(["expr", "-e", "disc_degree(E)"])
        .assert()
        .code(2)
        .stderr(predicates::str::contains("undefined identifier `E`"));
}

#[test]
fn seed_docs_writes_examples() {
    let dir = tempfile::tempdir().unwrap();
    ramify()
        .args(["--seed-docs", dir.path().to_str().unwrap()])
        .assert()
        .success();
    for name in ["demo.rmf", "bogomolov.rmf", "pushforward.rmf"] {
        let written = std::fs::read_to_string(dir.path().join(name)).unwrap();
        let shipped = std::fs::read_to_string(script(name)).unwrap();
        assert_eq!(written, shipped, "{name} round-trips byte-for-byte");
    }
}
