use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use proptest::prelude::*;
use twistkit_core::catalog::DEFAULT_MANIFEST;

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/data").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_twistkit"))
        .args(args)
        .env_remove("TWISTKIT_MAX_COSETS")
        .output()
        .unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn verify_example_run() {
    let o = run(&["verify", "--entry", "t_ng1_odd", "--genus", "3..8", "--boundary", "1"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert!(out.starts_with("# twistkit "));
    assert!(out.contains("\n# seed: 0\nlabel\tgenus\tstatus\n"));
    let rows: Vec<&str> = out.lines().filter(|l| !l.starts_with('#')).skip(1).collect();
    assert_eq!(rows.len(), 7 + 19 + 30 + 43);
    assert!(rows.iter().all(|r| r.ends_with("\tpass")));
}

#[test]
fn reports_are_byte_identical() {
    let a = run(&["verify", "--all", "--seed", "17"]);
    let b = run(&["verify", "--all", "--seed", "17"]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let s1 = run(&["selftest", "--seed", "5", "--cases", "500"]);
    let s2 = run(&["selftest", "--seed", "5", "--cases", "500"]);
    assert_eq!(code(&s1), 0, "{}", stdout(&s1));
    // the homology row carries a wall-clock time
    let strip = |o: &Output| stdout(o).lines().filter(|l| !l.starts_with("homology")).collect::<Vec<_>>().join("\n");
    assert_eq!(strip(&s1), strip(&s2));
}

#[test]
fn report_file_matches_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.tsv");
    let o = run(&["verify", "--genus", "3..5", "--report", path.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert!(o.stdout.is_empty());
    let direct = run(&["verify", "--genus", "3..5"]);
    assert_eq!(std::fs::read(&path).unwrap(), direct.stdout);
}

#[test]
fn corrupted_presentation_fails_with_label() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.pres");
    let text = std::fs::read_to_string(data("t_n3_0.pres")).unwrap().replace("(a1 a2)^6", "(a1 a2)^5");
    std::fs::write(&path, text).unwrap();
    let o = run(&["verify", "--pres", path.to_str().unwrap(), "--genus", "3"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("chain2\t3\tfail"), "{}", stdout(&o));
}

#[test]
fn corrupted_manifest_fails_with_label() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.manifest");
    let text = DEFAULT_MANIFEST.replace(
        "template \"a{i} a{i+1} a{i} a{i+1}' a{i}' a{i+1}'\"",
        "template \"a{i} a{i+1} a{i} a{i+1}' a{i}'\"",
    );
    assert_ne!(text, DEFAULT_MANIFEST);
    std::fs::write(&path, text).unwrap();
    let o = run(&["verify", "--all", "--manifest", path.to_str().unwrap()]);
    assert_eq!(code(&o), 1);
    let out = stdout(&o);
    let failed: Vec<&str> = out.lines().filter(|l| l.ends_with("\tfail")).collect();
    assert!(!failed.is_empty());
    assert!(failed.iter().all(|l| l.starts_with("A2(i=")), "{failed:?}");
    // a manifest that does not parse is an input error
    std::fs::write(&path, "family A1\n").unwrap();
    assert_eq!(code(&run(&["verify", "--all", "--manifest", path.to_str().unwrap()])), 2);
}

#[test]
fn usage_and_input_errors_exit_two() {
    assert_eq!(code(&run(&[])), 2);
    assert_eq!(code(&run(&["frobnicate"])), 2);
    assert_eq!(code(&run(&["verify"])), 2);
    assert_eq!(code(&run(&["verify", "--entry", "t_nope", "--genus", "3"])), 2);
    assert_eq!(code(&run(&["verify", "--entry", "t_ng1_odd", "--genus", "2"])), 2);
    assert_eq!(code(&run(&["verify", "--genus", "9..3"])), 2);
    assert_eq!(code(&run(&["tc", "--pres", "/nonexistent.pres"])), 2);
    assert_eq!(code(&run(&["instantiate", "--entry", "t_small", "--genus", "2"])), 2);
    assert_eq!(code(&run(&["cert", "check"])), 2);
}

#[test]
fn tampered_certificate_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t.cert");
    let text = std::fs::read_to_string(data("b2_2.cert")).unwrap().replace("(a2 f a1)^4 -> tc", "(a2 f a1)^3 -> tc");
    std::fs::write(&path, text).unwrap();
    let o = run(&["cert", "check", path.to_str().unwrap()]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("\tfail\tinvalid at step 13"), "{}", stdout(&o));
    assert_eq!(code(&run(&["cert", "check", "--shipped"])), 0);
}

#[test]
fn env_caps_enumeration() {
    let o = Command::new(env!("CARGO_BIN_EXE_twistkit"))
        .args(["tc", "--pres", data("m_n2_0.pres").to_str().unwrap()])
        .env("TWISTKIT_MAX_COSETS", "3")
        .output()
        .unwrap();
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("status\tinconclusive"));
    let o = run(&["tc", "--pres", data("m_n2_0.pres").to_str().unwrap(), "--parity", "y"]);
    assert!(stdout(&o).contains("index\t2"));
}

#[test]
fn rs_writes_a_presentation_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t.pres");
    let o = run(&["rs", "--pres", data("m_n2_1.pres").to_str().unwrap(), "--parity", "y", "--simplify", "--out", path.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let p = twistkit_core::presentation::parse_presentation(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(p.alphabet().names(), ["a1", "y2"]);
    assert_eq!(p.relators()[0].word.to_string(), "a1 y2 a1' y2'");
}

#[test]
fn instantiate_round_trips() {
    let o = run(&["instantiate", "--entry", "t_ng0_odd", "--genus", "5", "--subst-rho"]);
    assert_eq!(code(&o), 0);
    let p = twistkit_core::presentation::parse_presentation(&stdout(&o)).unwrap();
    assert_eq!((p.generator_count(), p.relator_count()), (9, 39));
    assert!(stdout(&o).contains("subst_rho=true"));
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, ..ProptestConfig::default() })]

    #[test]
    fn malformed_presentations_never_crash(text in "(gen: [a-z0-9 ]{0,12}\n)?(rel\\[[a-z]{0,3}\\]: [a-z0-9'()^ -]{0,16}\n){0,3}") {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("p.pres");
        std::fs::write(&path, &text).unwrap();
        for args in [
            vec!["verify", "--pres", path.to_str().unwrap(), "--genus", "3"],
            vec!["abelianize", "--pres", path.to_str().unwrap()],
            vec!["tc", "--pres", path.to_str().unwrap(), "--max-cosets", "200"],
        ] {
            let c = code(&run(&args));
            prop_assert!((0..=2).contains(&c), "{args:?} exit {c}");
        }
    }
}
