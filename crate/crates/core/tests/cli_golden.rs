//! Runs the binary and compares its output byte for byte with the files
//! in `tests/golden`.

use std::path::PathBuf;
use std::process::{Command, Output};
use std::sync::Arc;

use nmtree::metric::Parametrization;
use nmtree::rational::{decimal, format_big};
use nmtree::tree::{parse_tree, OrderView};

fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

fn nmtree(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nmtree"))
        .args(args)
        .current_dir(golden_dir())
        .env_remove("NMTREE_SEED")
        .output()
        .expect("binary runs")
}

fn check(golden: &str, args: &[&str]) {
    let out = nmtree(args);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    let want = std::fs::read(golden_dir().join(format!("{golden}.out"))).unwrap();
    assert_eq!(
        String::from_utf8_lossy(&out.stdout),
        String::from_utf8_lossy(&want),
        "{args:?}"
    );
}

#[test]
fn meet() {
    check(
        "meet",
        &["meet", "--tree", "y.tree", "--base", "r", "a", "b"],
    );
    assert_eq!(
        nmtree(&["meet", "--tree", "y.tree", "--base", "r", "a", "b"]).stdout,
        b"v\n"
    );
}

#[test]
fn dist() {
    check(
        "dist",
        &["dist", "--tree", "y.tree", "--base", "r", "a", "b"],
    );
    assert_eq!(
        nmtree(&["dist", "--tree", "y.tree", "--base", "r", "a", "b"]).stdout,
        "5/12 (~0.4167)\n".as_bytes()
    );
    check(
        "dist_interior_base",
        &[
            "dist", "--tree", "y.tree", "--base", "v-b@1", "--from", "a", "--to", "r",
        ],
    );
}

#[test]
fn region_checks() {
    check(
        "region_scott_open",
        &[
            "region",
            "--tree",
            "y.tree",
            "--base",
            "r",
            "--expr",
            "class(r,v)",
            "--check",
            "scott-open",
        ],
    );
    let out = nmtree(&[
        "region",
        "--tree",
        "y.tree",
        "--base",
        "r",
        "--expr",
        "class(r,v)",
        "--check",
        "scott-open",
    ]);
    assert!(out.stdout.starts_with(b"false\n"));
    check(
        "region_upper_set",
        &[
            "region",
            "--tree",
            "y.tree",
            "--base",
            "v",
            "--expr",
            "class(r,v)",
            "--check",
            "upper-set",
        ],
    );
    check(
        "region_weak_open",
        &[
            "region",
            "--tree",
            "y.tree",
            "--base",
            "r",
            "--expr",
            "strictup(v)",
            "--check",
            "weak-open",
        ],
    );
}

#[test]
fn other_queries() {
    check(
        "inf",
        &["inf", "--tree", "y.tree", "--base", "a", "r", "b", "v"],
    );
    check("segment", &["segment", "--tree", "y.tree", "v-b@1", "a"]);
    check(
        "tangent",
        &["tangent", "--tree", "y.tree", "--at", "v-b@1", "--of", "r"],
    );
    check(
        "reroot_check",
        &["reroot-check", "--tree", "y.tree", "--base", "a"],
    );
    check(
        "dot",
        &[
            "dot", "--tree", "y.tree", "--point", "v-b@1/2", "--point", "a",
        ],
    );
}

#[test]
fn verify_is_byte_stable() {
    let args = ["verify", "--seed", "7", "--samples", "25"];
    check("verify_small", &args);
    let seq = nmtree(&["verify", "--seed", "7", "--samples", "25", "--sequential"]);
    assert_eq!(
        seq.stdout,
        std::fs::read(golden_dir().join("verify_small.out")).unwrap()
    );
}

#[test]
fn seed_from_environment() {
    let run = |env: Option<&str>, args: &[&str]| {
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_nmtree"));
        cmd.args(args).env_remove("NMTREE_SEED");
        if let Some(seed) = env {
            cmd.env("NMTREE_SEED", seed);
        }
        cmd.output().unwrap()
    };
    let flags = [
        "verify",
        "--samples",
        "5",
        "--property",
        "meet-glb",
        "--inject-fault",
    ];
    let by_env = run(Some("7"), &flags);
    let mut explicit = flags.to_vec();
    explicit.extend(["--seed", "7"]);
    assert_eq!(by_env.stdout, run(None, &explicit).stdout);

    // fault injection only shows in properties that consult the Scott decider
    let faulty = [
        "verify",
        "--samples",
        "5",
        "--property",
        "theorem-generated-topology",
        "--inject-fault",
    ];
    let a = run(Some("1"), &faulty);
    let b = run(Some("2"), &faulty);
    assert_eq!(a.status.code(), Some(1));
    assert_ne!(a.stdout, b.stdout);
}

#[test]
fn exit_codes() {
    let code = |args: &[&str]| nmtree(args).status.code();
    assert_eq!(code(&["meet", "--tree", "missing.tree", "a", "b"]), Some(2));
    assert_eq!(code(&["meet", "--tree", "y.tree", "a", "nowhere"]), Some(2));
    assert_eq!(code(&["meet", "--tree", "y.tree", "a"]), Some(2));
    assert_eq!(code(&["dist", "--tree", "y.tree", "--from", "a"]), Some(2));
    assert_eq!(
        code(&["region", "--tree", "y.tree", "--expr", "class(r,"]),
        Some(2)
    );
    assert_eq!(
        code(&["tangent", "--tree", "y.tree", "--at", "v", "--of", "v"]),
        Some(2)
    );
    assert_eq!(code(&["verify", "--property", "no-such-property"]), Some(2));
    assert_eq!(
        code(&[
            "verify",
            "--samples",
            "3",
            "--property",
            "theorem-generated-topology",
            "--inject-fault"
        ]),
        Some(1)
    );
    assert_eq!(
        code(&["verify", "--samples", "3", "--property", "meet-glb"]),
        Some(0)
    );
}

#[test]
fn arguments_are_validated_before_reading_the_tree() {
    let out = nmtree(&["dist", "--tree", "missing.tree", "a"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("exactly two points"));
}

#[test]
fn replay_round_trip() {
    let report = std::env::temp_dir().join(format!("nmtree-report-{}.jsonl", std::process::id()));
    let report_s = report.to_str().unwrap();
    let out = nmtree(&[
        "verify",
        "--seed",
        "3",
        "--samples",
        "4",
        "--property",
        "theorem-generated-topology",
        "--inject-fault",
        "--report",
        report_s,
    ]);
    assert_eq!(out.status.code(), Some(1));
    let replayed = nmtree(&["verify", "--replay", report_s]);
    assert_eq!(replayed.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&replayed.stdout)
        .ends_with("4 records replayed, 4 failures reproduced\n"));

    let text = std::fs::read_to_string(&report).unwrap();
    std::fs::write(&report, &text[..text.len() - 40]).unwrap();
    assert_eq!(
        nmtree(&["verify", "--replay", report_s]).status.code(),
        Some(2)
    );
    let _ = std::fs::remove_file(&report);
}

#[test]
fn cli_agrees_with_library() {
    let text = std::fs::read_to_string(golden_dir().join("y.tree")).unwrap();
    let t = Arc::new(parse_tree(&text).unwrap());
    let view = OrderView::rooted(t.clone());
    let (a, b) = (t.parse_point("a").unwrap(), t.parse_point("b").unwrap());
    assert_eq!(
        String::from_utf8(nmtree(&["meet", "--tree", "y.tree", "a", "b"]).stdout).unwrap(),
        format!("{}\n", t.display_point(&view.meet(&a, &b)))
    );
    let d = Parametrization::new(view).d_psi(&a, &b);
    assert_eq!(
        String::from_utf8(nmtree(&["dist", "--tree", "y.tree", "a", "b"]).stdout).unwrap(),
        format!("{} (~{})\n", format_big(&d), decimal(&d, 4))
    );
}
