//! `verify`: recompute the published counts and diff them.
//!
//! Mismatches are data, not errors: every check runs, both values are
//! reported, and the exit code is 1 if anything disagrees.

use std::io::Write;
use std::process::ExitCode;

use clap::ValueEnum;
use serde::Serialize;

use groupoid_core::catalog::{self, CatalogEntry, Filter};
use groupoid_core::enumerate::{count_satisfying, naive_search};
use groupoid_core::{ClassCounting, SearchConfig};

use crate::{progress_printer, resolve_jobs, CliError, Format, VerifyArgs};

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Scope {
    Table1,
    Table2,
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub(crate) enum Metric {
    Raw,
    Iso,
    IsoAnti,
}

impl Metric {
    fn name(self) -> &'static str {
        match self {
            Metric::Raw => "raw",
            Metric::Iso => "iso",
            Metric::IsoAnti => "iso_anti",
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub(crate) struct Check {
    key: &'static str,
    order: usize,
    metric: Metric,
    expected: u64,
    computed: u64,
    #[serde(rename = "match")]
    matches: bool,
}

#[derive(Debug, Clone, Serialize)]
pub(crate) struct EngineDisagreement {
    key: &'static str,
    order: usize,
    naive: u64,
    pruned: u64,
}

#[derive(Debug, Clone, Default, Serialize)]
pub(crate) struct VerificationDiff {
    checks: Vec<Check>,
    engine_disagreements: Vec<EngineDisagreement>,
}

impl VerificationDiff {
    fn push(
        &mut self,
        key: &'static str,
        order: usize,
        metric: Metric,
        expected: u64,
        computed: u64,
    ) {
        self.checks.push(Check {
            key,
            order,
            metric,
            expected,
            computed,
            matches: expected == computed,
        });
    }

    pub(crate) fn mismatches(&self) -> usize {
        self.checks.iter().filter(|c| !c.matches).count()
    }

    pub(crate) fn ok(&self) -> bool {
        self.mismatches() == 0 && self.engine_disagreements.is_empty()
    }
}

fn check_entry(
    diff: &mut VerificationDiff,
    entry: &CatalogEntry,
    max_order: usize,
    cfg: &SearchConfig,
    cross_check: bool,
) -> Result<(), CliError> {
    let ids = [entry.identity.clone()];
    for (&order, expected) in entry.expected.range(..=max_order) {
        let mut cfg = cfg.clone();
        if expected.iso.is_some() || expected.iso_anti.is_some() {
            cfg = cfg.with_classes(ClassCounting::Both);
        }
        let report = count_satisfying(&ids, order, &cfg)?;
        diff.push(
            entry.key,
            order,
            Metric::Raw,
            expected.raw,
            report.raw_count,
        );
        if let (Some(want), Some(got)) = (expected.iso, report.iso_classes) {
            diff.push(entry.key, order, Metric::Iso, want, got);
        }
        if let (Some(want), Some(got)) = (expected.iso_anti, report.iso_anti_classes) {
            diff.push(entry.key, order, Metric::IsoAnti, want, got);
        }
        if cross_check && order <= 3 {
            let naive = naive_search(
                &ids,
                order,
                &SearchConfig {
                    classes: None,
                    ..cfg
                },
            )?;
            if naive.raw_count != report.raw_count {
                diff.engine_disagreements.push(EngineDisagreement {
                    key: entry.key,
                    order,
                    naive: naive.raw_count,
                    pruned: report.raw_count,
                });
            }
        }
    }
    Ok(())
}

pub(crate) fn verification(
    scope: Scope,
    max_order: usize,
    cfg: &SearchConfig,
    cross_check: bool,
) -> Result<VerificationDiff, CliError> {
    let filter = match scope {
        Scope::Table1 => Filter::Classical,
        Scope::Table2 => Filter::Generalized,
        Scope::All => Filter::All,
    };
    let mut diff = VerificationDiff::default();
    for entry in catalog::list(filter) {
        check_entry(&mut diff, entry, max_order, cfg, cross_check)?;
    }
    Ok(diff)
}

pub(crate) fn cmd_verify(args: VerifyArgs, out: &mut dyn Write) -> Result<ExitCode, CliError> {
    if args.max_order > 4 {
        return Err(CliError::Usage(
            "published counts stop at order 4; use --max-order 4 or less".into(),
        ));
    }
    let mut cfg = SearchConfig::default().with_workers(resolve_jobs(args.jobs)?);
    if args.progress {
        cfg.progress = Some(progress_printer());
    }
    let diff = verification(args.scope, args.max_order, &cfg, !args.no_cross_check)?;
    match args.format {
        Format::Text => {
            for c in &diff.checks {
                writeln!(
                    out,
                    "{:<4} order {} {:<8} expected {:>8} computed {:>8}  {}",
                    c.key,
                    c.order,
                    c.metric.name(),
                    c.expected,
                    c.computed,
                    if c.matches { "ok" } else { "MISMATCH" }
                )?;
            }
            for d in &diff.engine_disagreements {
                writeln!(
                    out,
                    "{:<4} order {} ENGINES DISAGREE naive {} pruned {}",
                    d.key, d.order, d.naive, d.pruned
                )?;
            }
            writeln!(
                out,
                "{} checks, {} match, {} mismatch, {} engine disagreements",
                diff.checks.len(),
                diff.checks.len() - diff.mismatches(),
                diff.mismatches(),
                diff.engine_disagreements.len()
            )?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            for c in &diff.checks {
                w.serialize(c)?;
            }
            w.flush()?;
        }
        Format::Json => {
            #[derive(Serialize)]
            struct Summary<'a> {
                all_match: bool,
                #[serde(flatten)]
                diff: &'a VerificationDiff,
            }
            let summary = Summary {
                all_match: diff.ok(),
                diff: &diff,
            };
            writeln!(out, "{}", serde_json::to_string_pretty(&summary)?)?;
        }
    }
    Ok(if diff.ok() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}
