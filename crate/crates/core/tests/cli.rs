mod common;

use std::process::{Command, Output};

use common::EXAMPLE;

fn aode(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_aode")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn exit_codes() {
    assert_eq!(aode(&["reduce", EXAMPLE]).status.code(), Some(0));
    assert_eq!(aode(&["reduce", "y'' = 0"]).status.code(), Some(2));
    assert_eq!(aode(&["reduce", "x*y' = 1"]).status.code(), Some(3));
    assert_eq!(aode(&["reduce", "y' + = 1"]).status.code(), Some(3));
    assert_eq!(aode(&["no-such-command"]).status.code(), Some(1));
}

#[test]
fn errors_go_to_stderr() {
    let o = aode(&["reduce", "x*y' = 1"]);
    assert!(o.stdout.is_empty());
    assert!(String::from_utf8_lossy(&o.stderr).starts_with("error:"));
}

#[test]
fn json_output_parses() {
    for args in [
        vec!["--format", "json", "reduce", EXAMPLE],
        vec!["--format", "json", "triangularize", EXAMPLE],
        vec!["--format", "json", "solve", EXAMPLE],
        vec!["--format", "json", "solve", "--at-infinity", EXAMPLE],
        vec!["--format", "json", "solve", "--point", "1,2", EXAMPLE],
        vec!["--format", "json", "solve-algebraic", EXAMPLE],
        vec!["--format", "json", "verify", "--series", "sqrt(2)*x^(1/2)", EXAMPLE],
    ] {
        let o = aode(&args);
        assert!(o.status.success(), "{args:?}");
        serde_json::from_str::<serde_json::Value>(&stdout(&o)).unwrap_or_else(|e| panic!("{args:?}: {e}"));
    }
}

#[test]
fn text_output() {
    let o = aode(&["solve", "--order", "3", EXAMPLE]);
    let text = stdout(&o);
    assert!(text.contains("y = y0 + 1/y0*x - 1/(2*y0^3)*x^2 + 1/(2*y0^5)*x^3 + O(x^4)"), "{text}");
    let o = aode(&["solve-algebraic", EXAMPLE]);
    assert!(stdout(&o).contains("Y^2 - 2*x"));
    let o = aode(&["verify", "--series", "1 + 2*x", "y' = 1"]);
    assert!(stdout(&o).contains("verified: no"));
}

#[test]
fn reads_stdin_and_files() {
    use std::io::Write;
    use std::process::Stdio;
    let mut child = Command::new(env!("CARGO_BIN_EXE_aode"))
        .arg("reduce")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(EXAMPLE.as_bytes()).unwrap();
    let o = child.wait_with_output().unwrap();
    assert!(stdout(&o).contains("H = y*y' - 1"));

    let path = std::env::temp_dir().join(format!("aode-cli-{}.txt", std::process::id()));
    std::fs::write(&path, EXAMPLE).unwrap();
    let o = aode(&["reduce", "-f", path.to_str().unwrap()]);
    std::fs::remove_file(&path).ok();
    assert!(stdout(&o).contains("H = y*y' - 1"));
}
