use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../core/tests/data")
        .join(name)
}

fn linspect(args: &[&str], stdin: &str) -> Output {
    linspect_env(args, stdin, &[])
}

fn linspect_env(args: &[&str], stdin: &str, env: &[(&str, &str)]) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_linspect"))
        .args(args)
        .envs(env.iter().copied())
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(stdin.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

const K4: &str = "4\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n";
const C5: &str = "5\n0 1\n1 2\n2 3\n3 4\n0 4\n";

#[test]
fn solve_complete_graph() {
    let o = linspect(&["solve", "-"], K4);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(
        out.starts_with("v = 4\ncertificate (4 cliques):\n"),
        "{out}"
    );
}

#[test]
fn reduced_solve_from_graph6() {
    let o = linspect(&["--format", "graph6", "solve", "--reduced", "-"], "C~\n");
    assert!(stdout(&o).starts_with("vbar = 1\n"));
}

#[test]
fn efl_on_five_cycle() {
    let o = linspect(&["efl", "-"], C5);
    assert_eq!(stdout(&o), "chi = 3, v = 5, EFL holds (margin 2)\n");
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn batch_oracle_over_six_vertex_graphs() {
    let o = linspect_env(
        &[
            "batch",
            data("graphs6.g6").to_str().unwrap(),
            "--check",
            "oracle",
        ],
        "",
        &[("LINSPECT_THREADS", "4")],
    );
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.ends_with("156/156 ok\n"), "{out}");
    // Results stay in input order.
    let first: Vec<usize> = out
        .lines()
        .take(156)
        .map(|l| l.split_whitespace().next().unwrap().parse().unwrap())
        .collect();
    assert_eq!(first, (1..=156).collect::<Vec<_>>());
}

#[test]
fn batch_other_checks() {
    for check in ["efl", "atf", "bounds"] {
        let o = linspect(
            &[
                "batch",
                data("graphs5.g6").to_str().unwrap(),
                "--check",
                check,
            ],
            "",
        );
        assert_eq!(o.status.code(), Some(0), "{check}");
        assert!(stdout(&o).ends_with("34/34 ok\n"));
    }
}

#[test]
fn certificates_round_trip_through_verify() {
    let dir = std::env::temp_dir().join(format!("linspect-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let cert = dir.join("c5.json");
    let o = linspect(&["solve", "--json", "--deterministic", "-"], C5);
    std::fs::write(&cert, &o.stdout).unwrap();
    let ok = linspect(&["verify", cert.to_str().unwrap()], "");
    assert_eq!(ok.status.code(), Some(0));
    assert!(stdout(&ok).starts_with("ok: v = 5"));

    // Flip one clique member.
    let mut doc: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    doc["cover"][0][0] = serde_json::json!(2);
    std::fs::write(&cert, serde_json::to_vec(&doc).unwrap()).unwrap();
    let bad = linspect(&["verify", cert.to_str().unwrap()], "");
    assert_eq!(bad.status.code(), Some(1));
    assert!(stdout(&bad).starts_with("rejected:"));

    std::fs::write(&cert, "{ not json").unwrap();
    assert_eq!(
        linspect(&["verify", cert.to_str().unwrap()], "")
            .status
            .code(),
        Some(4)
    );
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn deterministic_output_is_stable_across_thread_counts() {
    let one = linspect_env(
        &["solve", "--json", "--deterministic", "-"],
        C5,
        &[("LINSPECT_THREADS", "1")],
    );
    let four = linspect_env(
        &["solve", "--json", "--deterministic", "-"],
        C5,
        &[("LINSPECT_THREADS", "4")],
    );
    assert_eq!(one.stdout, four.stdout);
    assert!(!stdout(&one).contains("\"timestamp\": 1"));
}

#[test]
fn surgery_with_verification() {
    let dir = std::env::temp_dir().join(format!("linspect-surgery-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let k3 = dir.join("k3.txt");
    std::fs::write(&k3, "3\n0 1\n1 2\n0 2\n").unwrap();
    let k3 = k3.to_str().unwrap();
    let o = linspect(&["surgery", "join", k3, k3, "0", "0", "--verify"], "");
    assert_eq!(o.status.code(), Some(0));
    assert!(
        stdout(&o).contains("holds: v(result) = 6 (actual 6)"),
        "{}",
        stdout(&o)
    );
    let o = linspect(
        &["surgery", "remove-clique", "-", "0", "1", "2", "--verify"],
        K4,
    );
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("holds: v(G)"));
    let o = linspect(&["surgery", "delete-edge", "-", "0", "1", "--json"], K4);
    let doc: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(doc["outcome"]["lemma"], "edge_deletion");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn classify_reports_taxonomy() {
    let o = linspect(&["classify", "-"], K4);
    let out = stdout(&o);
    assert!(out.contains("Int = {0,1,2,3}, Int_s = {0,1,2,3}"), "{out}");
    assert!(out.contains("Int_e = {}, Int_es = {}"), "{out}");
}

#[test]
fn exit_codes() {
    assert_eq!(linspect(&["solve", "-"], "2\n0 2\n").status.code(), Some(4));
    assert_eq!(linspect(&["solve"], "").status.code(), Some(2));
    assert_eq!(
        linspect(&["surgery", "collapse", "-", "0", "1"], K4)
            .status
            .code(),
        Some(2)
    );
    let o = linspect(
        &["solve", "--budget-nodes", "1", "-"],
        "MlO{k_BcvBA@hhSV?\n",
    );
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("budget exceeded: v in [14, "));
}
