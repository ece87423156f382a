#[allow(dead_code)]
#[path = "../src/report.rs"]
mod report;

use std::io::Write;
use std::process::{Command, Output, Stdio};

use ovass_core::fixtures::{DOMINATION_EXAMPLE, RUNNING_EXAMPLE};
use report::*;

fn ovass(args: &[&str], stdin: &str) -> Output {
    ovass_env(args, stdin, &[])
}

fn ovass_env(args: &[&str], stdin: &str, env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_ovass"));
    cmd.args(args)
        .env_remove("OVASS_THREADS")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped());
    for (k, v) in env {
        cmd.env(k, v);
    }
    let mut child = cmd.spawn().unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn first_line(o: &Output) -> String {
    stdout(o).lines().next().unwrap_or_default().to_string()
}

fn tmp(name: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("ovass-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn check_running_example_unboundedness() {
    let o = ovass(
        &["check", "--mode", "unboundedness", "--algo", "fixpoint", "-"],
        RUNNING_EXAMPLE,
    );
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(first_line(&o), "YES");
}

#[test]
fn check_from_file_and_algorithms_agree() {
    let path = tmp("domination.vass");
    std::fs::write(&path, DOMINATION_EXAMPLE).unwrap();
    let p = path.to_str().unwrap();
    for mode in ["unboundedness", "coverability"] {
        let answers: Vec<String> = ["fixpoint", "pareto", "oracle"]
            .iter()
            .map(|algo| first_line(&ovass(&["check", "--mode", mode, "--algo", algo, p], "")))
            .collect();
        assert!(answers.iter().all(|a| a == &answers[0]), "{mode}: {answers:?}");
    }
}

#[test]
fn pareto_rejects_guarded_input() {
    let o = ovass(
        &["check", "--mode", "unboundedness", "--algo", "pareto", "-"],
        RUNNING_EXAMPLE,
    );
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("pareto requires guard-free input"));
    assert!(o.stdout.is_empty());
}

#[test]
fn exit_codes() {
    assert_eq!(
        ovass(&["check", "--algo", "nonsense", "-"], RUNNING_EXAMPLE)
            .status
            .code(),
        Some(1)
    );
    assert_eq!(ovass(&[], "").status.code(), Some(1));
    assert_eq!(ovass(&["--help"], "").status.code(), Some(0));
    assert_eq!(
        ovass(&["bounded-cover", "--steps", "3", "-"], RUNNING_EXAMPLE)
            .status
            .code(),
        Some(1)
    );
    assert_eq!(ovass(&["check", "-"], "state a\nedge a b 1\n").status.code(), Some(2));
    assert_eq!(ovass(&["check", "/nonexistent/file.vass"], "").status.code(), Some(2));
    assert_eq!(ovass(&["check", "-"], "state a\n").status.code(), Some(2));
    let o = ovass(
        &["check", "--algo", "oracle", "--node-cap", "2", "-"],
        "state a\nedge a a 1\nedge a a -1\ninit a\n",
    );
    assert_eq!(o.status.code(), Some(0));
    let o = ovass(
        &[
            "check",
            "--mode",
            "coverability",
            "--algo",
            "oracle",
            "--counter-cap",
            "3",
            "-",
        ],
        "state a\nstate b\nedge a a 1\nedge a b -10\ninit a\ntarget b\n",
    );
    assert_eq!(first_line(&o), "UNKNOWN");
    assert_eq!(o.status.code(), Some(3));
    let o = ovass(&["check", "--from", "s7", "--max-rounds", "1", "-"], RUNNING_EXAMPLE);
    assert_eq!(first_line(&o), "UNKNOWN");
    assert_eq!(o.status.code(), Some(3));
    let o = ovass(&["check", "--from", "s7", "-"], RUNNING_EXAMPLE);
    assert_eq!(first_line(&o), "NO");
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn json_check_document() {
    let o = ovass(
        &["check", "--mode", "coverability", "--format", "json", "-"],
        RUNNING_EXAMPLE,
    );
    assert_eq!(o.status.code(), Some(0));
    let rep: CheckReport = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(rep.answer, "YES");
    assert_eq!(rep.to.as_deref(), Some("s13"));
    assert!(rep.fixpoint.is_some());
}

#[test]
fn emit_trace_lists_rounds() {
    let o = ovass(
        &["check", "--emit-trace", "--strategy", "staged", "--format", "json", "-"],
        RUNNING_EXAMPLE,
    );
    let rep: CheckReport = serde_json::from_str(&stdout(&o)).unwrap();
    let trace = rep.trace.unwrap();
    assert_eq!(trace.len(), 8);
    assert_eq!(trace[1].added[0].state, "s4");
}

#[test]
fn inspect_round_trips_and_reports_trace() {
    let o = ovass(
        &[
            "inspect",
            "--u-trace",
            "--pareto",
            "--path",
            "s4,s5,s6",
            "--format",
            "json",
            "-",
        ],
        RUNNING_EXAMPLE,
    );
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let rep: InspectReport = serde_json::from_str(&text).unwrap();
    assert_eq!(serde_json::to_string_pretty(&rep).unwrap() + "\n", text);
    let s4 = rep.cycles.iter().find(|c| c.state == "s4").unwrap();
    assert_eq!(s4.period, 9);
    assert_eq!(s4.blocked_omega.as_ref().unwrap().below, 52);
    let path = rep.path.unwrap();
    assert_eq!((path.blocked.below, path.blocked.extras), (52, vec![90, 93, 96]));
    let trace = rep.u_trace.unwrap();
    assert!(trace.complete);
    assert_eq!(
        trace.rounds[1].added,
        vec![StateValues {
            state: "s4".into(),
            values: vec![54, 60, 63, 69, 93, 96]
        }]
    );
    assert!(rep.pareto.unwrap().len() >= 2);
}

#[test]
fn inspect_text_is_deterministic_across_threads() {
    let one = ovass(&["inspect", "--u-trace", "-"], RUNNING_EXAMPLE);
    let many = ovass_env(
        &["inspect", "--u-trace", "-"],
        RUNNING_EXAMPLE,
        &[("OVASS_THREADS", "3")],
    );
    assert_eq!(stdout(&one), stdout(&many));
    let flag = ovass(&["--threads", "2", "check", "-"], RUNNING_EXAMPLE);
    assert_eq!(first_line(&flag), "YES");
}

#[test]
fn bounded_cover_with_witness() {
    let args = [
        "bounded-cover",
        "--from",
        "s4",
        "--counter",
        "63",
        "--target",
        "s10",
        "--ell",
        "80",
        "--period",
        "10",
        "--not-res",
        "0,3,6,9",
        "--steps",
        "10",
        "--witness",
        "-",
    ];
    let o = ovass(&args, RUNNING_EXAMPLE);
    assert_eq!(first_line(&o), "YES");
    assert!(stdout(&o).contains("witness s4,s7,s8,s9,s10"));
    let mut oracle_args = vec!["oracle", "--mode", "bounded-cover"];
    oracle_args.extend(args[1..args.len() - 2].iter());
    oracle_args.push("-");
    assert_eq!(first_line(&ovass(&oracle_args, RUNNING_EXAMPLE)), "YES");
    let o = ovass(
        &[
            "bounded-cover",
            "--from",
            "s4",
            "--counter",
            "72",
            "--target",
            "s10",
            "--ell",
            "80",
            "--period",
            "10",
            "--not-res",
            "0,3,6,9",
            "--steps",
            "10",
            "-",
        ],
        RUNNING_EXAMPLE,
    );
    assert_eq!(first_line(&o), "NO");
}

#[test]
fn reduction_preserves_answers() {
    for (to, expect) in [("s13", "YES"), ("s0", "YES")] {
        let red = ovass(&["reduce", "cov2unbound", "--to", to, "-"], RUNNING_EXAMPLE);
        assert_eq!(red.status.code(), Some(0));
        let o = ovass(&["check", "--mode", "unboundedness", "-"], &stdout(&red));
        assert_eq!(first_line(&o), expect);
    }
    let red = ovass(
        &["reduce", "cov2unbound", "-"],
        "state a\nstate b\nedge b a 1\ninit a\ntarget b\n",
    );
    assert_eq!(first_line(&ovass(&["check", "-"], &stdout(&red))), "NO");
}

#[test]
fn gen_cnf_with_sidecar() {
    let out = tmp("cnf.vass");
    let side = tmp("cnf.json");
    let o = ovass(
        &[
            "gen",
            "cnf",
            "--random",
            "3",
            "2",
            "11",
            "-o",
            out.to_str().unwrap(),
            "--sidecar",
            side.to_str().unwrap(),
        ],
        "",
    );
    assert_eq!(o.status.code(), Some(0));
    let meta: CnfSidecar = serde_json::from_str(&std::fs::read_to_string(&side).unwrap()).unwrap();
    assert_eq!(meta.primes, vec![2, 3, 5]);
    assert_eq!(meta.product, 30);
    assert_eq!(meta.clauses.len(), 2);
    let p = out.to_str().unwrap();
    let a = first_line(&ovass(&["check", p], ""));
    let b = first_line(&ovass(&["check", "--algo", "oracle", p], ""));
    assert_eq!(a, b);

    let dimacs = tmp("f.cnf");
    std::fs::write(&dimacs, "p cnf 3 1\n1 2 3 0\n").unwrap();
    let o = ovass(&["gen", "cnf", "--dimacs", dimacs.to_str().unwrap()], "");
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("state s1"));
    assert_eq!(ovass(&["gen", "cnf"], "").status.code(), Some(1));
}

#[test]
fn selftest_passes() {
    let o = ovass(&["selftest"], "");
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(first_line(&o), "PASS");
    let o = ovass(&["selftest", "--format", "json"], "");
    let rep: SelftestReport = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(rep.checks.iter().all(|c| c.passed));
}
