//! Report writers: line-delimited JSON, CSV with one row per check, text.

use std::io::{self, Write};

use clap::ValueEnum;
use mfq::theorems::VerificationReport;
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

pub const CSV_HEADER: [&str; 11] = [
    "graph", "n", "m", "ell", "nu", "q", "check", "expected", "computed", "agree", "elapsed_ms",
];

fn csv_error(e: csv::Error) -> io::Error {
    io::Error::other(e)
}

pub fn write_reports(out: &mut impl Write, format: Format, reports: &[VerificationReport]) -> io::Result<()> {
    match format {
        Format::Json => {
            for r in reports {
                serde_json::to_writer(&mut *out, r)?;
                writeln!(out)?;
            }
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            w.write_record(CSV_HEADER).map_err(csv_error)?;
            for r in reports {
                for (check, verdict) in &r.agree {
                    w.write_record([
                        r.graph.clone(),
                        r.n.to_string(),
                        r.m.to_string(),
                        r.ell.to_string(),
                        r.nu.to_string(),
                        r.q.to_string(),
                        check.to_string(),
                        r.expected.render(*check).unwrap_or_default(),
                        r.computed.render(*check).unwrap_or_default(),
                        verdict.to_string(),
                        r.elapsed_ms.map(|t| t.to_string()).unwrap_or_default(),
                    ])
                    .map_err(csv_error)?;
                }
            }
            w.flush()?;
        }
        Format::Text => {
            for r in reports {
                write!(out, "{} q={} n={} m={} ell={} nu={}", r.graph, r.q, r.n, r.m, r.ell, r.nu)?;
                if !r.whiskered {
                    write!(out, " (as given)")?;
                }
                if let Some(t) = r.elapsed_ms {
                    write!(out, " {t}ms")?;
                }
                writeln!(out)?;
                for (check, verdict) in &r.agree {
                    writeln!(
                        out,
                        "  {:<17} expected {:<16} computed {:<40} {}",
                        check.to_string(),
                        r.expected.render(*check).unwrap_or_else(|| "-".into()),
                        r.computed.render(*check).unwrap_or_else(|| "-".into()),
                        verdict
                    )?;
                }
            }
        }
    }
    Ok(())
}

/// One JSON object per line; pretty-printed for text. CSV falls back to JSON.
pub fn write_records<T: Serialize>(out: &mut impl Write, format: Format, records: &[T]) -> io::Result<()> {
    for r in records {
        match format {
            Format::Text => serde_json::to_writer_pretty(&mut *out, r)?,
            _ => serde_json::to_writer(&mut *out, r)?,
        }
        writeln!(out)?;
    }
    Ok(())
}
