use std::path::PathBuf;
use std::process::{Command, Output};

fn vmcalc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_vmcalc"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    std::env::temp_dir().join(format!("vmcalc-{}-{name}", std::process::id()))
}

#[test]
fn prime_verb() {
    let out = vmcalc(&["prime", "C5"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "prime: true\n");

    let out = vmcalc(&["prime", "theta:2,2,3"]);
    let text = stdout(&out);
    assert!(text.contains("prime: false"));
    // the two middle vertices of the length-2 paths are twins
    assert!(text.contains("split: {0, 1, 4, 5} | {2, 3}"), "{text}");
}

#[test]
fn malformed_input_exits_2() {
    for args in [
        &["prime", "not-a-graph"][..],
        &["prime", "edges:3;0-7"],
        &["theta", "1,1,3"],
        &["word", "abc"],
    ] {
        let out = vmcalc(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn noness_verb() {
    let c5 = stdout(&vmcalc(&["noness", "C5"]));
    assert!(c5.contains("non_essential: {}\n"));
    let t = stdout(&vmcalc(&["noness", "theta:2,3,3"]));
    assert!(t.contains("non_essential: {0, 1, 2}\n"), "{t}");
    let t = stdout(&vmcalc(&["noness", "theta:1,4,5"]));
    assert!(t.contains("non_essential: {0, 1}\n"), "{t}");
}

#[test]
fn theta_and_word_verbs() {
    let t = stdout(&vmcalc(&["theta", "theta:1,3,3"]));
    assert!(t.contains("non_essential_count: 0\n"));
    assert!(t.contains("non_essential_closed_form: 0 (CycleEquivalent)\n"));
    let w = stdout(&vmcalc(&["word", "abcdabcd", "--lc", "b"]));
    assert!(w.starts_with("word: abadcbcd\n"));
    let w = stdout(&vmcalc(&["word", "abacbc"]));
    assert!(w.contains("interlacement: ab bc\n"));
}

#[test]
fn orbit_and_isotropic_verbs() {
    let o = stdout(&vmcalc(&["orbit", "C7"]));
    assert!(o.contains("contains_cycle: true\n"));
    assert!(o.contains("bipartite_members: 0\n"));
    let s = stdout(&vmcalc(&["isotropic", "C5"]));
    assert!(s.starts_with("ground: 0 1 2 3 4\n"));
    assert!(s.contains("three_connected: true\n"));
    assert!(s.contains("cyclic: true\n"));
    assert!(s.contains("triangles: 10\n"));
}

#[test]
fn file_inputs() {
    let g6 = scratch("c5.g6");
    std::fs::write(&g6, "Dhc\n").unwrap();
    assert_eq!(
        stdout(&vmcalc(&["prime", g6.to_str().unwrap()])),
        "prime: true\n"
    );
    let el = scratch("p4.txt");
    std::fs::write(&el, "4 3\n0 1\n1 2\n2 3\n").unwrap();
    assert!(stdout(&vmcalc(&["prime", el.to_str().unwrap()])).starts_with("prime: false"));
    let sys = scratch("c5.sys");
    let dump = stdout(&vmcalc(&["isotropic", "C5"]));
    let text: String = dump.lines().take(6).map(|l| format!("{l}\n")).collect();
    std::fs::write(&sys, text).unwrap();
    let again = stdout(&vmcalc(&["isotropic", "--system", sys.to_str().unwrap()]));
    assert_eq!(again, dump);
    for p in [g6, el, sys] {
        std::fs::remove_file(p).unwrap();
    }
}

#[test]
fn verify_passes_and_writes_report() {
    let report = scratch("thm1.txt");
    let out = vmcalc(&[
        "verify",
        "thm1",
        "--n-min",
        "5",
        "--n-max",
        "6",
        "--report",
        report.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(&report).unwrap();
    assert_eq!(text, stdout(&out));
    assert!(text.contains("counterexamples: 0\npass: true\n"));
    std::fs::remove_file(report).unwrap();
}

#[test]
fn verify_bounds_exit_3() {
    let out = vmcalc(&["verify", "thm1", "--n-max", "9"]);
    assert_eq!(out.status.code(), Some(3));
    let out = vmcalc(&["verify", "thm1", "--n-min", "7", "--n-max", "6"]);
    assert_eq!(out.status.code(), Some(3));
    let out = vmcalc(&["verify", "thm9"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_is_deterministic_across_workers() {
    let strip = |out: &Output| -> String {
        stdout(out)
            .lines()
            .filter(|l| !l.starts_with("wall_time_ms"))
            .collect::<Vec<_>>()
            .join("\n")
    };
    for theorem in ["thm3", "cor-bippiv", "fan"] {
        let one = vmcalc(&["verify", theorem, "--n-max", "6", "--workers", "1"]);
        let four = vmcalc(&["verify", theorem, "--n-max", "6", "--workers", "4"]);
        assert_eq!(strip(&one), strip(&four), "{theorem}");
        assert_eq!(one.status.code(), Some(0));
    }
}
