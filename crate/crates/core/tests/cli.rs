use std::path::PathBuf;
use std::process::{Command, Output};

fn gp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gp"))
        .args(args)
        .env_remove("GP_ORACLE_BOUND")
        .output()
        .expect("spawn gp")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn fixture(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "fixtures", name].iter().collect();
    p.to_string_lossy().into_owned()
}

#[test]
fn exit_codes() {
    let cases: &[(&[&str], i32)] = &[
        (&["--fixture", "P2free", "eq", "A.a", "A.a"], 0),
        (&["--fixture", "P2free", "eq", "A.a", "B.a"], 1),
        (&["--fixture", "Z2", "divides", "A.g", "A.g"], 0),
        (&["--fixture", "P2free", "divides", "A.a", "B.a"], 1),
        (&["--fixture", "Band3", "check", "wln"], 1),
        (&["--fixture", "P2dir", "check", "wln"], 0),
        (&["--fixture", "T3free", "decompose"], 1),
        (&["--fixture", "P2free", "normalize", "Q.a"], 2),
        (&["--fixture", "Nowhere", "print"], 2),
        (&["frobnicate"], 2),
        (&["-c", "/nonexistent/context.gp", "print"], 2),
    ];
    for (args, code) in cases {
        assert_eq!(gp(args).status.code(), Some(*code), "{args:?}");
    }
}

#[test]
fn context_files_and_aliases() {
    let o = gp(&["-c", &fixture("mixed3.gp"), "normalize", "w"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "[A.g B.a][C.a]");
    for name in ["p2free.gp", "trace3.gp", "groups3.gp"] {
        let o = gp(&["-c", &fixture(name), "print"]);
        assert!(o.status.success());
        assert_eq!(stdout(&o), std::fs::read_to_string(fixture(name)).unwrap());
    }
}

#[test]
fn json_output_parses() {
    let o = gp(&["--fixture", "Z2", "--json", "divides", "A.g", "A.g"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).expect("json");
    assert_eq!(v["divides"], serde_json::Value::Bool(true));
    let o = gp(&["--fixture", "P2free", "--json", "intersect", "A.a", "B.a"]);
    assert!(o.status.success());
    serde_json::from_slice::<serde_json::Value>(&o.stdout).expect("json");
}

#[test]
fn output_is_deterministic() {
    let args = ["--fixture", "trace3", "annihilator", "A.a B.a"];
    let first = gp(&args);
    for _ in 0..3 {
        assert_eq!(gp(&args).stdout, first.stdout);
    }
}

#[test]
fn oracle_bound_from_environment() {
    let run = |bound: &str| {
        Command::new(env!("CARGO_BIN_EXE_gp"))
            .args(["--fixture", "P2free", "oracle", "leq", "A.a B.a", "B.a"])
            .env("GP_ORACLE_BOUND", bound)
            .output()
            .unwrap()
            .status
            .code()
    };
    assert_eq!(run("3"), Some(0));
    assert_eq!(run("0"), Some(1));
}
