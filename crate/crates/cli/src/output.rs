use std::fmt::Write as _;
use std::path::Path;

use anyhow::{Context, Result};
use clap::ValueEnum;
use rbhopf::report::{Status, VerificationReport};
use serde::Serialize;
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Tsv,
}

/// What a command produced: its reports, an optional data payload and the
/// rows that stand for the payload in TSV output.
#[derive(Debug, Serialize)]
pub struct Outcome {
    pub command: &'static str,
    pub status: Status,
    pub reports: Vec<VerificationReport>,
    #[serde(skip_serializing_if = "Value::is_null")]
    pub data: Value,
    #[serde(skip)]
    pub rows: Vec<Vec<String>>,
}

impl Outcome {
    pub fn new(command: &'static str, reports: Vec<VerificationReport>) -> Self {
        let status = Status::from_bool(reports.iter().all(VerificationReport::passed));
        Outcome {
            command,
            status,
            reports,
            data: Value::Null,
            rows: Vec::new(),
        }
    }

    pub fn with_data(mut self, data: Value, rows: Vec<Vec<String>>) -> Self {
        self.data = data;
        self.rows = rows;
        self
    }

    pub fn render(&self, format: Format) -> Result<String> {
        match format {
            Format::Json => Ok(serde_json::to_string_pretty(self)? + "\n"),
            Format::Tsv => Ok(self.tsv()),
        }
    }

    fn tsv(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "status\t{}\t{}", self.command, self.status);
        for r in &self.reports {
            let _ = writeln!(out, "report\t{}\t{}", r.name, r.status);
            for c in &r.checks {
                let _ = writeln!(out, "check\t{}\t{}\t{}\t{}", r.name, c.identity, c.checked, c.status);
            }
            if let Some(w) = &r.witness {
                let join = |v: &[usize]| v.iter().map(usize::to_string).collect::<Vec<_>>().join(",");
                let scalar = |s: &Option<rbhopf::scalars::Scalar>| s.as_ref().map(ToString::to_string).unwrap_or_default();
                let _ = writeln!(
                    out,
                    "witness\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
                    r.name,
                    w.identity,
                    join(&w.indices),
                    join(&w.position),
                    scalar(&w.lhs),
                    scalar(&w.rhs),
                    w.detail
                );
            }
        }
        for row in &self.rows {
            let _ = writeln!(out, "{}", row.join("\t"));
        }
        out
    }

    /// Writes the rendered outcome to `out`, or to stdout.
    pub fn emit(&self, format: Format, out: Option<&Path>) -> Result<()> {
        let text = self.render(format)?;
        match out {
            Some(path) => {
                std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))?;
                println!("{}: {} -> {}", self.command, self.status, path.display());
            }
            None => print!("{text}"),
        }
        Ok(())
    }
}
