use std::io::Write;

use serde::Serialize;

use groupoid_core::catalog::{self, Filter};
use groupoid_core::enumerate::ClassCensus;
use groupoid_core::term::classify;
use groupoid_core::{CountReport, Grammar};

use crate::{CliError, Format, Selected};

/// One `count` result; CSV column order is fixed.
#[derive(Debug, Serialize)]
struct CountRow {
    key: String,
    class: String,
    identity: String,
    order: usize,
    raw: u64,
    iso: Option<u64>,
    iso_anti: Option<u64>,
    engine: String,
}

#[derive(Debug, Serialize)]
struct CountJson<'a> {
    #[serde(flatten)]
    row: &'a CountRow,
    #[serde(skip_serializing_if = "Option::is_none")]
    nodes_visited: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    elapsed_ms: Option<f64>,
}

fn joined<T>(items: &[Selected], f: impl Fn(&Selected) -> T) -> String
where
    T: ToString,
{
    items
        .iter()
        .map(|s| f(s).to_string())
        .collect::<Vec<_>>()
        .join(" & ")
}

pub(crate) fn write_count(
    out: &mut dyn Write,
    selected: &[Selected],
    report: &CountReport,
    format: Format,
    timing: bool,
) -> Result<(), CliError> {
    let row = CountRow {
        key: joined(selected, |s| s.key.unwrap_or("")),
        class: joined(selected, |s| classify(&s.identity)),
        identity: joined(selected, |s| s.identity.format(Grammar::Compact)),
        order: report.order,
        raw: report.raw_count,
        iso: report.iso_classes,
        iso_anti: report.iso_anti_classes,
        engine: report.engine.to_string(),
    };
    match format {
        Format::Text => {
            if !row.key.trim_matches([' ', '&']).is_empty() {
                writeln!(out, "key       {}", row.key)?;
            }
            writeln!(out, "identity  {}", row.identity)?;
            writeln!(out, "class     {}", row.class)?;
            writeln!(out, "order     {}", row.order)?;
            writeln!(out, "raw       {}", row.raw)?;
            if let Some(iso) = row.iso {
                writeln!(out, "iso       {iso}")?;
            }
            if let Some(anti) = row.iso_anti {
                writeln!(out, "iso-anti  {anti}")?;
            }
            writeln!(out, "engine    {}", row.engine)?;
            if timing {
                if let Some(nodes) = report.nodes_visited {
                    writeln!(out, "nodes     {nodes}")?;
                }
                writeln!(out, "elapsed   {:.3}s", report.elapsed.as_secs_f64())?;
            }
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.serialize(&row)?;
            w.flush()?;
        }
        Format::Json => {
            let json = CountJson {
                row: &row,
                nodes_visited: if timing { report.nodes_visited } else { None },
                elapsed_ms: timing.then_some(report.elapsed.as_secs_f64() * 1e3),
            };
            writeln!(out, "{}", serde_json::to_string(&json)?)?;
        }
    }
    Ok(())
}

#[derive(Debug, Serialize)]
struct ClassRow {
    representative: String,
    members: u64,
}

pub(crate) fn write_classes(
    out: &mut dyn Write,
    census: &ClassCensus,
    format: Format,
) -> Result<(), CliError> {
    let rows: Vec<ClassRow> = census
        .classes
        .iter()
        .map(|(t, &members)| ClassRow {
            representative: t.encode(),
            members,
        })
        .collect();
    match format {
        Format::Text => {
            for r in &rows {
                writeln!(out, "{}  {}", r.representative, r.members)?;
            }
            writeln!(out, "{} classes, {} tables", rows.len(), census.raw_count)?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            for r in &rows {
                w.serialize(r)?;
            }
            w.flush()?;
        }
        Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(&rows)?)?,
    }
    Ok(())
}

pub(crate) fn write_catalog(
    out: &mut dyn Write,
    filter: Filter,
    format: Format,
) -> Result<(), CliError> {
    let records = catalog::records(filter);
    match format {
        Format::Text => {
            for r in &records {
                writeln!(
                    out,
                    "{:<4} {:<11} {:<24} {}",
                    r.key, r.class, r.compact, r.name
                )?;
            }
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            for r in &records {
                w.serialize(r)?;
            }
            w.flush()?;
        }
        Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(&records)?)?,
    }
    Ok(())
}
