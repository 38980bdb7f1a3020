//! Randomized, reproducible verification of the order-theoretic and
//! topological properties of finite trees.
//!
//! Every property is registered under a stable name (see [`registry`]).
//! A run generates `samples` independent cases from the configured seed;
//! each case derives its own seed, so cases can run in any order or in
//! parallel and any failure can be replayed on its own.

mod generate;
pub mod oracle;
mod properties;

use std::time::Instant;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use generate::{
    case_rng, generate_skeleton, random_point, random_skeleton, random_vertex, GeneratorConfig,
};
pub use properties::{registry, PropertySpec};

use crate::tree::{parse_tree, TreeError};

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("invalid generator range: {0}")]
    InvalidRange(String),
    #[error("unknown property `{0}`")]
    UnknownProperty(String),
    #[error("malformed failure record: {0}")]
    MalformedRecord(String),
    #[error(transparent)]
    Tree(#[from] TreeError),
}

/// How cases are scheduled. `Parallel` needs the `parallel` feature and
/// falls back to sequential execution without it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Execution {
    Sequential,
    #[default]
    Parallel,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct RunOptions {
    pub execution: Execution,
    /// Deliberately inverts the Scott-openness decider. Exists so the
    /// failure-reporting and replay path can be exercised end to end.
    pub inject_fault: bool,
}

/// One failing case, with everything needed to reproduce it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FailureRecord {
    pub property: String,
    pub config: GeneratorConfig,
    pub case_index: u64,
    pub case_seed: u64,
    pub inject_fault: bool,
    /// The case skeleton in tree file format.
    pub tree: String,
    pub detail: String,
}

impl FailureRecord {
    pub fn to_line(&self) -> String {
        serde_json::to_string(self).expect("record serializes")
    }

    pub fn parse(line: &str) -> Result<Self, HarnessError> {
        serde_json::from_str(line).map_err(|e| HarnessError::MalformedRecord(e.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropertyReport {
    pub property: String,
    pub reference: String,
    pub cases: usize,
    pub failures: Vec<FailureRecord>,
    pub elapsed_ms: u64,
}

#[derive(Serialize, Deserialize)]
struct ReportHeader {
    property: String,
    reference: String,
    cases: usize,
    failures: usize,
    elapsed_ms: u64,
}

impl PropertyReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    /// Line-delimited form: a header line, then one line per failure.
    pub fn to_lines(&self) -> String {
        let header = ReportHeader {
            property: self.property.clone(),
            reference: self.reference.clone(),
            cases: self.cases,
            failures: self.failures.len(),
            elapsed_ms: self.elapsed_ms,
        };
        let mut out = serde_json::to_string(&header).expect("header serializes");
        out.push('\n');
        for f in &self.failures {
            out.push_str(&f.to_line());
            out.push('\n');
        }
        out
    }

    pub fn from_lines(text: &str) -> Result<Self, HarnessError> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header: ReportHeader = serde_json::from_str(
            lines
                .next()
                .ok_or_else(|| HarnessError::MalformedRecord("empty report".into()))?,
        )
        .map_err(|e| HarnessError::MalformedRecord(e.to_string()))?;
        let failures = lines
            .map(FailureRecord::parse)
            .collect::<Result<Vec<_>, _>>()?;
        if failures.len() != header.failures {
            return Err(HarnessError::MalformedRecord(format!(
                "header announces {} failures, found {}",
                header.failures,
                failures.len()
            )));
        }
        Ok(PropertyReport {
            property: header.property,
            reference: header.reference,
            cases: header.cases,
            failures,
            elapsed_ms: header.elapsed_ms,
        })
    }

    /// One human-readable status line.
    pub fn summary_line(&self) -> String {
        format!(
            "{} {} cases={} failures={}",
            if self.passed() { "PASS" } else { "FAIL" },
            self.property,
            self.cases,
            self.failures.len()
        )
    }
}

fn lookup(name: &str) -> Result<&'static PropertySpec, HarnessError> {
    registry()
        .iter()
        .find(|p| p.name == name)
        .ok_or_else(|| HarnessError::UnknownProperty(name.to_string()))
}

fn map_cases<T, F>(execution: Execution, n: u64, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(u64) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if execution == Execution::Parallel {
        use rayon::prelude::*;
        return (0..n).into_par_iter().map(f).collect();
    }
    let _ = execution;
    (0..n).map(f).collect()
}

/// Runs a registered property over `config.samples` generated cases.
pub fn run_property(name: &str, config: &GeneratorConfig) -> Result<PropertyReport, HarnessError> {
    run_property_with(name, config, RunOptions::default())
}

pub fn run_property_with(
    name: &str,
    config: &GeneratorConfig,
    options: RunOptions,
) -> Result<PropertyReport, HarnessError> {
    let prop = lookup(name)?;
    config.validate()?;
    let started = Instant::now();
    let outcomes = map_cases(options.execution, config.samples as u64, |index| {
        let seed = config.case_seed(index);
        (
            index,
            seed,
            prop.run_case(config, seed, options.inject_fault),
        )
    });
    let mut cases = 0;
    let mut failures = Vec::new();
    for (index, seed, outcome) in outcomes {
        let outcome = outcome?;
        if let Some(detail) = outcome.detail {
            failures.push(FailureRecord {
                property: prop.name.to_string(),
                config: config.clone(),
                case_index: index,
                case_seed: seed,
                inject_fault: options.inject_fault,
                tree: outcome.tree,
                detail,
            });
        }
        cases += usize::from(outcome.counted);
    }
    Ok(PropertyReport {
        property: prop.name.to_string(),
        reference: prop.reference.to_string(),
        cases,
        failures,
        elapsed_ms: started.elapsed().as_millis() as u64,
    })
}

/// Runs every registered property. Properties are independent, so with
/// parallel execution they are scheduled concurrently as well.
pub fn run_all(
    config: &GeneratorConfig,
    options: RunOptions,
) -> Result<Vec<PropertyReport>, HarnessError> {
    let names: Vec<&str> = registry().iter().map(|p| p.name).collect();
    map_cases(options.execution, names.len() as u64, |i| {
        run_property_with(names[i as usize], config, options)
    })
    .into_iter()
    .collect()
}

/// Re-runs exactly the case described by `record`.
pub fn replay(record: &FailureRecord) -> Result<PropertyReport, HarnessError> {
    let prop = lookup(&record.property)?;
    record.config.validate()?;
    let recorded = parse_tree(&record.tree)
        .map_err(|e| HarnessError::MalformedRecord(format!("tree: {e}")))?;
    let started = Instant::now();
    let outcome = prop.run_case(&record.config, record.case_seed, record.inject_fault)?;
    if parse_tree(&outcome.tree).ok().as_ref() != Some(&recorded) {
        return Err(HarnessError::MalformedRecord(
            "tree does not match the case regenerated from the seed".into(),
        ));
    }
    let failures = outcome
        .detail
        .map(|detail| FailureRecord {
            detail,
            tree: outcome.tree.clone(),
            ..record.clone()
        })
        .into_iter()
        .collect();
    Ok(PropertyReport {
        property: prop.name.to_string(),
        reference: prop.reference.to_string(),
        cases: usize::from(outcome.counted),
        failures,
        elapsed_ms: started.elapsed().as_millis() as u64,
    })
}
