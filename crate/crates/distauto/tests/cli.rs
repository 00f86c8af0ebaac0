//! End-to-end checks of the command-line interface: exit codes, file
//! round-trips, trace replay and golden machine files.

use std::path::Path;
use std::process::{Command, Output};

use distauto::graphs::{parse_graph, serialize_graph};
use distauto::turing::parse_tm;

fn exe() -> &'static str {
    env!("CARGO_BIN_EXE_distauto")
}

fn corpus(name: &str) -> String {
    format!("{}/corpus/{name}.tm", env!("CARGO_MANIFEST_DIR"))
}

fn golden(name: &str) -> String {
    format!("{}/tests/golden/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn run_cli(args: &[&str]) -> Output {
    Command::new(exe()).args(args).output().unwrap()
}

fn stdout_of(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).unwrap()
}

#[test]
fn verdicts_map_onto_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let line = dir.path().join("line.graph");
    let cycle = dir.path().join("cycle.graph");
    let line = line.to_str().unwrap();
    let cycle = cycle.to_str().unwrap();

    let out = run_cli(&["generate", "nlg", "--n", "7", "--out", line]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout_of(&out).contains("nlg length 7"));
    let out = run_cli(&["generate", "ncg", "--n", "6", "--out", cycle]);
    assert_eq!(out.status.code(), Some(0));

    // Accepting run.
    let out = run_cli(&["run", "nlg", line]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout_of(&out).contains("verdict ACCEPTING step 7"));
    // Rejecting run.
    let out = run_cli(&["run", "nlg", cycle]);
    assert_eq!(out.status.code(), Some(1));
    // Undecided run: too small a step budget under a sparse scheduler.
    let out = run_cli(&[
        "run", "nlg", line, "--scheduler", "exclusive", "--max-steps", "2",
    ]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stdout_of(&out).contains("verdict UNDECIDED"));
    // Inconsistent run: a head simulation of a non-halting machine cycles
    // through mixed configurations forever.
    let head = format!("tm-head:{}", corpus("ping-pong"));
    let out = run_cli(&["run", &head, line]);
    assert_eq!(out.status.code(), Some(4));
    assert!(stdout_of(&out).contains("verdict INCONSISTENT"));

    // Usage errors.
    let out = run_cli(&["generate", "ncg", "--n", "4"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run_cli(&["run", "no-such-machine", line]);
    assert_eq!(out.status.code(), Some(2));
    let out = run_cli(&["no-such-command"]);
    assert_eq!(out.status.code(), Some(2));
    // Alphabet mismatch between machine and graph.
    let out = run_cli(&["run", "snowball", line]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn generated_files_round_trip_byte_identically() {
    let dir = tempfile::tempdir().unwrap();
    let cases: &[&[&str]] = &[
        &["generate", "nlg", "--n", "9"],
        &["generate", "ncg", "--n", "9"],
        &["generate", "nqlg", "--counts", "1,2,3,1"],
        &["generate", "nqlg", "--counts", "1,3,2", "--edges", "random",
          "--seed", "5"],
        &["generate", "sfnlg-harmonious", "--n", "3"],
    ];
    for (i, case) in cases.iter().enumerate() {
        let path = dir.path().join(format!("{i}.graph"));
        let mut args = case.to_vec();
        let path_str = path.to_str().unwrap().to_string();
        args.extend(["--out", &path_str]);
        assert_eq!(run_cli(&args).status.code(), Some(0));
        let text = std::fs::read_to_string(&path).unwrap();
        let parsed = parse_graph(&text).unwrap();
        assert_eq!(serialize_graph(&parsed), text, "case {i}");
        // Same seed, same bytes.
        assert_eq!(run_cli(&args).status.code(), Some(0));
        assert_eq!(std::fs::read_to_string(&path).unwrap(), text);
    }
}

#[test]
fn traces_replay_to_the_same_verdict() {
    let dir = tempfile::tempdir().unwrap();
    let graph = dir.path().join("g.graph");
    let graph = graph.to_str().unwrap();
    for (gen_args, machine) in [
        (vec!["generate", "nlg", "--n", "6"], "nlg"),
        (vec!["generate", "ncg", "--n", "6"], "nqlg"),
        (vec!["generate", "sfnlg-harmonious", "--n", "2"], "snowball"),
    ] {
        let mut args = gen_args.clone();
        args.extend(["--out", graph]);
        assert_eq!(run_cli(&args).status.code(), Some(0));
        let out = run_cli(&["run", machine, graph, "--trace"]);
        let trace_path = dir.path().join("trace.txt");
        std::fs::write(&trace_path, &out.stdout).unwrap();
        let check = run_cli(&[
            "check",
            "trace",
            trace_path.to_str().unwrap(),
            "--machine",
            machine,
            "--graph",
            graph,
        ]);
        assert_eq!(
            check.status.code(),
            Some(0),
            "machine {machine}: {}",
            stdout_of(&check)
        );
        assert!(stdout_of(&check).contains("replay ok"));
    }
}

#[test]
fn builtin_machines_match_the_golden_files() {
    for name in ["nlg", "nqlg", "snowball"] {
        let out = run_cli(&["compile-machine", name]);
        assert_eq!(out.status.code(), Some(0));
        let expected =
            std::fs::read_to_string(golden(&format!("{name}.machine")))
                .unwrap();
        assert_eq!(stdout_of(&out), expected, "machine {name}");
    }
}

#[test]
fn compiled_machine_files_are_loadable() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("head.machine");
    let path = path.to_str().unwrap();
    let head = format!("tm-head:{}", corpus("inc-2"));
    let out = run_cli(&["compile-machine", &head, "--out", path]);
    assert_eq!(out.status.code(), Some(0));
    let graph = dir.path().join("g.graph");
    let graph = graph.to_str().unwrap();
    run_cli(&["generate", "nlg", "--n", "8", "--out", graph]);
    let direct = run_cli(&["run", &head, graph]);
    let from_file = run_cli(&["run", path, graph]);
    assert_eq!(direct.status.code(), from_file.status.code());
    assert_eq!(stdout_of(&direct), stdout_of(&from_file));
}

#[test]
fn products_have_no_file_representation() {
    let reduce_ref = format!("reduce:DA:{}", corpus("inc-1"));
    let out = run_cli(&["compile-machine", &reduce_ref]);
    assert_eq!(out.status.code(), Some(2));
    // The reduce command prints the component summary instead.
    let out = run_cli(&["reduce", &corpus("inc-1"), "--class", "DA"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_of(&out);
    assert!(text.contains("class DA"));
    assert!(text.contains("component"));
}

#[test]
fn checking_artifacts_reports_membership_and_wellformedness() {
    let dir = tempfile::tempdir().unwrap();
    let graph = dir.path().join("g.graph");
    let graph = graph.to_str().unwrap();
    run_cli(&["generate", "nlg", "--n", "5", "--out", graph]);
    let out = run_cli(&["check", "graph", graph]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_of(&out);
    assert!(text.contains("family nlg"));
    assert!(text.contains("family nqlg"));
    assert!(text.contains("length 5"));

    let out = run_cli(&["check", "machine", "snowball"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout_of(&out).contains("ok"));
}

#[test]
fn turing_machine_commands_work_end_to_end() {
    let out = run_cli(&["tm-run", &corpus("busy-beaver")]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout_of(&out).contains("halts after 13 steps"));
    assert!(stdout_of(&out).contains("4 cells"));

    let out = run_cli(&["tm-run", &corpus("ping-pong"), "--max-steps", "50"]);
    assert_eq!(out.status.code(), Some(3));

    // The transform's output is itself a loadable machine file.
    let out = run_cli(&["tinf", &corpus("inc-2")]);
    assert_eq!(out.status.code(), Some(0));
    let t = parse_tm(&stdout_of(&out)).unwrap();
    assert_eq!(t.name, "inc-2.inf");
}

#[test]
fn search_finds_witnesses_for_halting_machines() {
    let dir = tempfile::tempdir().unwrap();
    let witness = dir.path().join("w.graph");
    let witness = witness.to_str().unwrap();
    let out = run_cli(&[
        "search",
        &corpus("immediate-halter"),
        "--class",
        "dA",
        "--max-length",
        "8",
        "--out",
        witness,
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout_of(&out).contains("FOUND length=1"));
    let g = parse_graph(&std::fs::read_to_string(witness).unwrap()).unwrap();
    assert_eq!(g.node_count(), 1);

    let out = run_cli(&[
        "search", &corpus("ping-pong"), "--class", "DA", "--max-length", "12",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout_of(&out).contains("NONE up to 12"));
}

#[test]
fn compile_cache_is_keyed_by_content() {
    // Two files with identical content share a cache entry; the second
    // compile must load it and produce the identical machine.
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.tm");
    let b = dir.path().join("b.tm");
    let source = std::fs::read_to_string(corpus("inc-1")).unwrap();
    std::fs::write(&a, &source).unwrap();
    std::fs::write(&b, &source).unwrap();
    let ref_a = format!("tm-head:{}", a.display());
    let ref_b = format!("tm-head:{}", b.display());
    let out_a = run_cli(&["compile-machine", &ref_a]);
    let out_b = run_cli(&["compile-machine", &ref_b]);
    assert_eq!(out_a.status.code(), Some(0));
    assert_eq!(stdout_of(&out_a), stdout_of(&out_b));
    let digest_path = Path::new(&std::env::temp_dir())
        .join("distauto-cache");
    assert!(digest_path.is_dir());
}
