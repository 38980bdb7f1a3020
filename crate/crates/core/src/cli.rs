//! Command-line front end.
//!
//! Output goes to a caller-supplied writer so the binary and the golden
//! tests share one code path. Errors map to exit status 2, property
//! failures to 1.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

use crate::dot::to_dot;
use crate::harness::{
    self, registry, replay, Execution, FailureRecord, GeneratorConfig, HarnessError,
    PropertyReport, RunOptions,
};
use crate::metric::Parametrization;
use crate::rational::{decimal, format_big, to_big};
use crate::region::{Region, RegionError};
use crate::tangent::{tangent_class, TangentError};
use crate::topology::{
    is_scott_open, missing_predecessor, upper_set_violation, weak_open_witness,
    weak_open_witnesses, TopologyError,
};
use crate::tree::{parse_tree, OrderError, OrderView, ParseError, Point, PointError, TreeSkeleton};

/// Environment variable supplying the default seed of `verify`.
pub const SEED_ENV: &str = "NMTREE_SEED";

#[derive(Debug, Parser)]
#[command(
    name = "nmtree",
    version,
    about = "Exact queries on finite rooted trees"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct TreeArgs {
    /// Tree file (edge list or Newick).
    #[arg(long)]
    pub tree: PathBuf,
    /// Base point of the order; defaults to the skeleton root.
    #[arg(long)]
    pub base: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Check {
    UpperSet,
    ScottOpen,
    WeakOpen,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Meet of two points.
    Meet {
        #[command(flatten)]
        tree: TreeArgs,
        a: String,
        b: String,
    },
    /// Infimum of one or more points.
    Inf {
        #[command(flatten)]
        tree: TreeArgs,
        #[arg(required = true)]
        points: Vec<String>,
    },
    /// The segment between two points.
    Segment {
        #[command(flatten)]
        tree: TreeArgs,
        a: String,
        b: String,
    },
    /// The parametrized distance d_Ψ between two points.
    Dist {
        #[command(flatten)]
        tree: TreeArgs,
        #[arg(long)]
        from: Option<String>,
        #[arg(long)]
        to: Option<String>,
        points: Vec<String>,
    },
    /// The tangent class of a point at an anchor.
    Tangent {
        #[arg(long)]
        tree: PathBuf,
        #[arg(long)]
        at: String,
        #[arg(long)]
        of: String,
    },
    /// Checks that the base is the least element after rerooting and that
    /// segments do not depend on the base.
    RerootCheck {
        #[command(flatten)]
        tree: TreeArgs,
    },
    /// Evaluates a region expression.
    Region {
        #[command(flatten)]
        tree: TreeArgs,
        #[arg(long)]
        expr: String,
        #[arg(long, value_enum)]
        check: Option<Check>,
        /// Member point for `--check weak-open`; all members if omitted.
        #[arg(long)]
        at: Option<String>,
    },
    /// Runs the property harness.
    Verify {
        #[arg(long, env = SEED_ENV, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        /// Restrict to the named properties.
        #[arg(long)]
        property: Vec<String>,
        #[arg(long)]
        sequential: bool,
        /// Writes the line-delimited report of every property to a file.
        #[arg(long)]
        report: Option<PathBuf>,
        /// Replays the failure records in a report file instead.
        #[arg(long, conflicts_with_all = ["property", "report"])]
        replay: Option<PathBuf>,
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
    /// Graphviz rendering of the skeleton.
    Dot {
        #[arg(long)]
        tree: PathBuf,
        /// Query points to annotate.
        #[arg(long = "point")]
        points: Vec<String>,
    },
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error("{path}: {source}")]
    Tree { path: PathBuf, source: ParseError },
    #[error("point `{text}`: {source}")]
    Point { text: String, source: PointError },
    #[error(transparent)]
    Region(#[from] RegionError),
    #[error(transparent)]
    Tangent(#[from] TangentError),
    #[error(transparent)]
    Topology(#[from] TopologyError),
    #[error(transparent)]
    Order(#[from] OrderError),
    #[error(transparent)]
    Harness(#[from] HarnessError),
    #[error("{0}")]
    Argument(String),
    #[error("writing output: {0}")]
    Output(#[from] io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        2
    }
}

/// Status of a completed command.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Success,
    PropertyFailure,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Success => 0,
            Status::PropertyFailure => 1,
        }
    }
}

struct Loaded {
    skeleton: Arc<TreeSkeleton>,
}

impl Loaded {
    fn open(path: &Path) -> Result<Self, CliError> {
        let text = fs::read_to_string(path).map_err(|source| CliError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        let skeleton = parse_tree(&text).map_err(|source| CliError::Tree {
            path: path.to_path_buf(),
            source,
        })?;
        Ok(Loaded {
            skeleton: Arc::new(skeleton.with_lca_index()),
        })
    }

    fn point(&self, text: &str) -> Result<Point, CliError> {
        self.skeleton
            .parse_point(text)
            .map_err(|source| CliError::Point {
                text: text.to_string(),
                source,
            })
    }

    fn view(&self, base: Option<&str>) -> Result<OrderView, CliError> {
        match base {
            None => Ok(OrderView::rooted(self.skeleton.clone())),
            Some(text) => Ok(OrderView::new(self.skeleton.clone(), self.point(text)?)?),
        }
    }

    fn show(&self, p: &Point) -> String {
        self.skeleton.display_point(p)
    }
}

fn with_decimal(q: &num_rational::BigRational) -> String {
    format!("{} (~{})", format_big(q), decimal(q, 4))
}

/// Validates arguments that do not need the tree.
fn validate(command: &Command) -> Result<(), CliError> {
    match command {
        Command::Dist {
            from, to, points, ..
        } => match (from, to, points.len()) {
            (Some(_), Some(_), 0) | (None, None, 2) => Ok(()),
            _ => Err(CliError::Argument(
                "dist takes either --from and --to or exactly two points".into(),
            )),
        },
        Command::Region { check, at, .. } => {
            if at.is_some() && *check != Some(Check::WeakOpen) {
                Err(CliError::Argument("--at requires --check weak-open".into()))
            } else {
                Ok(())
            }
        }
        Command::Verify {
            samples, property, ..
        } => {
            if *samples == 0 {
                return Err(CliError::Argument("--samples must be positive".into()));
            }
            for name in property {
                if !registry().iter().any(|p| p.name == name) {
                    return Err(HarnessError::UnknownProperty(name.clone()).into());
                }
            }
            Ok(())
        }
        _ => Ok(()),
    }
}

pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<Status, CliError> {
    validate(&cli.command)?;
    match &cli.command {
        Command::Meet { tree, a, b } => {
            let t = Loaded::open(&tree.tree)?;
            let view = t.view(tree.base.as_deref())?;
            let m = view.meet(&t.point(a)?, &t.point(b)?);
            writeln!(out, "{}", t.show(&m))?;
        }
        Command::Inf { tree, points } => {
            let t = Loaded::open(&tree.tree)?;
            let view = t.view(tree.base.as_deref())?;
            let pts = points
                .iter()
                .map(|p| t.point(p))
                .collect::<Result<Vec<_>, _>>()?;
            writeln!(out, "{}", t.show(&view.infimum(&pts)?))?;
        }
        Command::Segment { tree, a, b } => {
            let t = Loaded::open(&tree.tree)?;
            // segments do not depend on the base; still reject a bad one
            t.view(tree.base.as_deref())?;
            let (pa, pb) = (t.point(a)?, t.point(b)?);
            let path = t.skeleton.segment(&pa, &pb);
            let mut stops = vec![t.show(&pa)];
            for v in &path.vertices {
                let p = Point::Vertex(*v);
                if p != pa && p != pb {
                    stops.push(t.show(&p));
                }
            }
            if pb != pa {
                stops.push(t.show(&pb));
            }
            writeln!(out, "{}", stops.join(" -> "))?;
            writeln!(out, "length {}", with_decimal(&to_big(&path.length())))?;
        }
        Command::Dist {
            tree,
            from,
            to,
            points,
        } => {
            let t = Loaded::open(&tree.tree)?;
            let view = t.view(tree.base.as_deref())?;
            let (a, b) = match (from, to) {
                (Some(f), Some(g)) => (f, g),
                _ => (&points[0], &points[1]),
            };
            let d = Parametrization::new(view).d_psi(&t.point(a)?, &t.point(b)?);
            writeln!(out, "{}", with_decimal(&d))?;
        }
        Command::Tangent { tree, at, of } => {
            let t = Loaded::open(tree)?;
            let (anchor, a) = (t.point(at)?, t.point(of)?);
            let class = tangent_class(&t.skeleton, &a, &anchor)?;
            writeln!(
                out,
                "{} (representative {})",
                class.direction_label(&t.skeleton),
                t.show(&class.representative)
            )?;
        }
        Command::RerootCheck { tree } => {
            let t = Loaded::open(&tree.tree)?;
            let view = t.view(tree.base.as_deref())?;
            return reroot_check(&t, &view, out);
        }
        Command::Region {
            tree,
            expr,
            check,
            at,
        } => {
            let t = Loaded::open(&tree.tree)?;
            let view = t.view(tree.base.as_deref())?;
            let region = Region::parse(&view, expr)?;
            match check {
                None => {
                    writeln!(out, "{}", region.to_syntax())?;
                    let members: Vec<String> = region
                        .cut_points()
                        .iter()
                        .filter(|p| region.member(p))
                        .map(|p| t.show(p))
                        .collect();
                    writeln!(out, "members among cut points: {}", members.join(" "))?;
                }
                Some(Check::UpperSet) => match upper_set_violation(&region, &view) {
                    None => writeln!(out, "true")?,
                    Some((x, y)) => {
                        writeln!(out, "false")?;
                        write_violation(&t, out, &x, &y)?;
                    }
                },
                Some(Check::ScottOpen) => {
                    if is_scott_open(&region, &view) {
                        writeln!(out, "true")?;
                    } else {
                        writeln!(out, "false")?;
                        match upper_set_violation(&region, &view) {
                            Some((x, y)) => write_violation(&t, out, &x, &y)?,
                            None => {
                                let p = missing_predecessor(&region, &view)
                                    .expect("an upper set that is not Scott-open");
                                writeln!(
                                    out,
                                    "{} is a member with no strict predecessor in the region",
                                    t.show(&p)
                                )?;
                            }
                        }
                    }
                }
                Some(Check::WeakOpen) => match at {
                    Some(a) => {
                        let a = t.point(a)?;
                        let w = weak_open_witness(&region, &a, &view)?;
                        writeln!(out, "[{}]_{} ⊆ region", t.show(&a), t.show(&w))?;
                    }
                    None => {
                        for (a, w) in weak_open_witnesses(&region, &view)? {
                            writeln!(out, "[{}]_{} ⊆ region", t.show(&a), t.show(&w))?;
                        }
                    }
                },
            }
        }
        Command::Verify {
            seed,
            samples,
            property,
            sequential,
            report,
            replay: replay_path,
            inject_fault,
        } => {
            let options = RunOptions {
                execution: if *sequential {
                    Execution::Sequential
                } else {
                    Execution::Parallel
                },
                inject_fault: *inject_fault,
            };
            if let Some(path) = replay_path {
                return replay_file(path, out);
            }
            let config = GeneratorConfig::default()
                .with_seed(*seed)
                .with_samples(*samples);
            let reports = if property.is_empty() {
                harness::run_all(&config, options)?
            } else {
                property
                    .iter()
                    .map(|name| harness::run_property_with(name, &config, options))
                    .collect::<Result<Vec<_>, _>>()?
            };
            if let Some(path) = report {
                let text: String = reports.iter().map(PropertyReport::to_lines).collect();
                fs::write(path, text).map_err(|source| CliError::Io {
                    path: path.clone(),
                    source,
                })?;
            }
            return write_reports(&reports, out);
        }
        Command::Dot { tree, points } => {
            let t = Loaded::open(tree)?;
            let pts = points
                .iter()
                .map(|p| t.point(p))
                .collect::<Result<Vec<_>, _>>()?;
            write!(out, "{}", to_dot(&t.skeleton, &pts))?;
        }
    }
    Ok(Status::Success)
}

fn write_violation(t: &Loaded, out: &mut dyn Write, x: &Point, y: &Point) -> io::Result<()> {
    writeln!(
        out,
        "not an upper set: {} is a member, {} ⪯ {}, {} is not",
        t.show(x),
        t.show(x),
        t.show(y),
        t.show(y)
    )
}

fn write_reports(reports: &[PropertyReport], out: &mut dyn Write) -> Result<Status, CliError> {
    let mut failed = 0;
    for r in reports {
        writeln!(out, "{}", r.summary_line())?;
        for f in &r.failures {
            writeln!(out, "  {}", f.to_line())?;
        }
        failed += usize::from(!r.passed());
    }
    let cases: usize = reports.iter().map(|r| r.cases).sum();
    writeln!(
        out,
        "{} properties, {} cases, {} failed",
        reports.len(),
        cases,
        failed
    )?;
    Ok(if failed == 0 {
        Status::Success
    } else {
        Status::PropertyFailure
    })
}

fn replay_file(path: &Path, out: &mut dyn Write) -> Result<Status, CliError> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let mut reports = Vec::new();
    for line in text.lines().filter(|l| !l.trim().is_empty()) {
        // report files interleave header lines with failure records
        if line.contains("\"case_seed\"") {
            reports.push(replay(&FailureRecord::parse(line)?)?);
        }
    }
    if reports.is_empty() {
        return Err(CliError::Argument(format!(
            "{}: no failure records to replay",
            path.display()
        )));
    }
    let mut reproduced = 0;
    for r in &reports {
        let f = &r.failures;
        writeln!(
            out,
            "{} {} {}",
            if f.is_empty() { "PASS" } else { "FAIL" },
            r.property,
            f.first().map_or("", |f| f.detail.as_str())
        )?;
        reproduced += usize::from(!f.is_empty());
    }
    writeln!(
        out,
        "{} records replayed, {} failures reproduced",
        reports.len(),
        reproduced
    )?;
    Ok(if reproduced == 0 {
        Status::Success
    } else {
        Status::PropertyFailure
    })
}

fn reroot_check(t: &Loaded, view: &OrderView, out: &mut dyn Write) -> Result<Status, CliError> {
    let sk = &t.skeleton;
    let base = view.base();
    let cuts = sk.cut_points(&[base]);
    let mut problems = Vec::new();
    for x in &cuts {
        if !view.leq(&base, x) {
            problems.push(format!("{} is not below {}", t.show(&base), t.show(x)));
        }
    }
    let rooted = OrderView::rooted(sk.clone());
    for a in &cuts {
        for b in &cuts {
            let m = view.meet(a, b);
            let path = sk.segment(a, b);
            for x in &cuts {
                let here = view.leq(&m, x) && (view.leq(x, a) || view.leq(x, b));
                let mr = rooted.meet(a, b);
                let there = rooted.leq(&mr, x) && (rooted.leq(x, a) || rooted.leq(x, b));
                if here != path.contains(x) || there != here {
                    problems.push(format!(
                        "membership of {} in [{}, {}] depends on the base",
                        t.show(x),
                        t.show(a),
                        t.show(b)
                    ));
                }
            }
        }
    }
    if problems.is_empty() {
        writeln!(
            out,
            "ok: {} is the least element; segments agree with the root view on {} cut points",
            t.show(&base),
            cuts.len()
        )?;
        Ok(Status::Success)
    } else {
        for p in &problems {
            writeln!(out, "{p}")?;
        }
        Ok(Status::PropertyFailure)
    }
}
