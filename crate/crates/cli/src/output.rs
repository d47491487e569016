//! Output sinks. Every output starts with a provenance record: the full
//! command configuration and the tool version. JSON outputs carry it as a
//! `provenance` field beside the result's own fields, CSV outputs as a
//! leading `# provenance {...}` line.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use anyhow::{Context, Result};
use serde::Serialize;

pub const TOOL: &str = "qsurf";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Serialize)]
pub struct Provenance<'a, C: Serialize> {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: &'a str,
    pub config: &'a C,
}

impl<'a, C: Serialize> Provenance<'a, C> {
    pub fn new(command: &'a str, config: &'a C) -> Self {
        Self { tool: TOOL, version: VERSION, command, config }
    }
}

/// File at `path`, or stdout.
pub fn open(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).with_context(|| format!("cannot create {}", p.display()))?,
        )),
        None => Box::new(BufWriter::new(io::stdout())),
    })
}

#[derive(Serialize)]
struct JsonDocument<'a, C: Serialize, T: Serialize> {
    provenance: Provenance<'a, C>,
    #[serde(flatten)]
    result: &'a T,
}

/// Writes `result` (which must serialize as a map) with the provenance added.
pub fn write_json<C: Serialize, T: Serialize>(
    path: Option<&Path>,
    provenance: Provenance<'_, C>,
    result: &T,
) -> Result<()> {
    let mut out = open(path)?;
    serde_json::to_writer_pretty(&mut out, &JsonDocument { provenance, result })?;
    writeln!(out)?;
    out.flush()?;
    Ok(())
}

/// CSV writer whose first line is the provenance comment. Rows may have
/// varying lengths (the Table I layout needs that).
pub fn csv_writer<C: Serialize>(path: Option<&Path>, provenance: Provenance<'_, C>) -> Result<csv::Writer<Box<dyn Write>>> {
    let mut out = open(path)?;
    writeln!(out, "# provenance {}", serde_json::to_string(&provenance)?)?;
    Ok(csv::WriterBuilder::new().flexible(true).from_writer(out))
}
