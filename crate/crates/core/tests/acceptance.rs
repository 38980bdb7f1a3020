//! Acceptance suite: eleven criteria, each reported on one line. Exact
//! rational arithmetic throughout, so every criterion demands zero
//! failures. Exits nonzero if any criterion fails.

use std::path::PathBuf;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use nmtree::harness::{case_rng, random_skeleton, run_property, GeneratorConfig, PropertyReport};

const SEED: u64 = 7;

type Criterion = (&'static str, Box<dyn Fn() -> Outcome>);

struct Outcome {
    passed: bool,
    detail: String,
}

fn config(samples: usize) -> GeneratorConfig {
    GeneratorConfig::default()
        .with_seed(SEED)
        .with_samples(samples)
}

fn run(names: &[&str], samples: usize) -> Vec<PropertyReport> {
    names
        .iter()
        .map(|name| run_property(name, &config(samples)).expect("registered property"))
        .collect()
}

fn summarize(reports: &[PropertyReport], expected_cases: Option<usize>) -> Outcome {
    let mut passed = true;
    let mut parts = Vec::new();
    for r in reports {
        let complete = expected_cases.is_none_or(|n| r.cases == n);
        passed &= r.passed() && complete;
        parts.push(format!(
            "{} {} cases/{} failures",
            r.property,
            r.cases,
            r.failures.len()
        ));
        if let Some(f) = r.failures.first() {
            parts.push(format!("first failure: {}", f.detail));
        }
    }
    Outcome {
        passed,
        detail: parts.join("; "),
    }
}

fn axiom_suite() -> Outcome {
    let started = Instant::now();
    let reports = run(
        &["meet-glb", "infimum-permutation", "meet-index-agreement"],
        1000,
    );
    let elapsed = started.elapsed();
    let mut out = summarize(&reports, Some(1000));
    out.passed &= elapsed < Duration::from_secs(10);
    out.detail = format!("{}; {:.2}s", out.detail, elapsed.as_secs_f64());
    out
}

fn strict_coarseness() -> Outcome {
    let cfg = config(1000);
    let report = run_property("theorem-strict-coarseness", &cfg).unwrap();
    let eligible = (0..cfg.samples as u64)
        .filter(|i| {
            let t = random_skeleton(&cfg, &mut case_rng(cfg.case_seed(*i))).unwrap();
            t.edge_count() >= 2
        })
        .count();
    let mut out = summarize(std::slice::from_ref(&report), Some(eligible));
    out.detail = format!(
        "{}; counterexample found on {eligible}/{eligible} trees with ≥ 2 edges",
        out.detail
    );
    out
}

fn cli_goldens() -> Outcome {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden");
    let cases: [(&[&str], &str, &str); 3] = [
        (
            &["meet", "--tree", "y.tree", "--base", "r", "a", "b"],
            "meet",
            "v\n",
        ),
        (
            &["dist", "--tree", "y.tree", "--base", "r", "a", "b"],
            "dist",
            "5/12 (~0.4167)\n",
        ),
        (
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
            "region_scott_open",
            "false\n",
        ),
    ];
    let mut failures = Vec::new();
    for (args, golden, prefix) in cases {
        let out = Command::new(env!("CARGO_BIN_EXE_nmtree"))
            .args(args)
            .current_dir(&dir)
            .output()
            .expect("binary runs");
        let want = std::fs::read(dir.join(format!("{golden}.out"))).unwrap_or_default();
        if !out.status.success() || out.stdout != want || !out.stdout.starts_with(prefix.as_bytes())
        {
            failures.push(golden);
        }
    }
    Outcome {
        passed: failures.is_empty(),
        detail: if failures.is_empty() {
            "meet = v, d_Ψ(a,b) = 5/12, [r]_v not Scott-open: byte-identical".into()
        } else {
            format!("mismatch: {}", failures.join(", "))
        },
    }
}

fn main() -> ExitCode {
    let criteria: Vec<Criterion> = vec![
        (
            "axiom suite (meet/infimum greatest lower bound)",
            Box::new(axiom_suite),
        ),
        (
            "segment triangle inclusion",
            Box::new(|| summarize(&run(&["lemma-segment-triangle"], 1000), Some(1000))),
        ),
        (
            "metric suite",
            Box::new(|| {
                summarize(
                    &run(
                        &[
                            "metric-axioms",
                            "metric-meet-additivity",
                            "metric-monotone-shrinking",
                        ],
                        1000,
                    ),
                    Some(1000),
                )
            }),
        ),
        (
            "weak tree topology coarser than the metric topology",
            Box::new(|| summarize(&run(&["theorem-metric-coarser"], 500), Some(500))),
        ),
        (
            "subbasic regions inaccessible by directed joins",
            Box::new(|| summarize(&run(&["lemma-inaccessible"], 1000), Some(1000))),
        ),
        (
            "upper sets of tangent classes",
            Box::new(|| summarize(&run(&["lemma-upper-set"], 1000), Some(1000))),
        ),
        (
            "Scott-open regions are weak-tree open",
            Box::new(|| summarize(&run(&["prop-scott-weak-open"], 1000), Some(1000))),
        ),
        (
            "Scott topology strictly coarser",
            Box::new(strict_coarseness),
        ),
        (
            "weak tree topology generated by the Scott topologies",
            Box::new(|| {
                summarize(
                    &run(&["theorem-generated-topology", "decider-agreement"], 1000),
                    Some(1000),
                )
            }),
        ),
        (
            "Hausdorff witnesses and differing Scott topologies",
            Box::new(|| {
                let mut reports = run(&["remark-hausdorff"], 500);
                reports.extend(run(&["remark-scott-views-differ"], 100));
                let complete = reports[0].cases == 500 && reports[1].cases == 100;
                let mut out = summarize(&reports, None);
                out.passed &= complete;
                out
            }),
        ),
        ("CLI golden outputs", Box::new(cli_goldens)),
    ];

    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let outcome = check();
        failed += usize::from(!outcome.passed);
        println!(
            "{} criterion {:>2}: {name} ({})",
            if outcome.passed { "PASS" } else { "FAIL" },
            i + 1,
            outcome.detail
        );
    }
    println!(
        "acceptance: {}/{} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
