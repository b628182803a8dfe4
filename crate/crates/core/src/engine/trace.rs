//! Run artifacts: JSON-lines migration traces and per-round cost curves.

use std::io::{self, Write};

use serde::Serialize;

use crate::app_model::ProcessId;
use crate::scalar::Weight;
use crate::topology::NodeId;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TraceHeader {
    pub scenario_hash: String,
    pub seed: Option<u64>,
    pub policy: String,
    pub mechanism: String,
    pub gamma: f64,
    pub alpha: Option<f64>,
}

/// One applied migration.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TraceEvent<W> {
    pub round: u32,
    pub group: Vec<ProcessId>,
    pub source: NodeId,
    pub dest: NodeId,
    pub raw_benefit: W,
    pub comm_before: W,
    pub comm_after: W,
}

/// Costs at the end of a round; round 0 is the initial placement.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RoundStats<W> {
    pub round: u32,
    pub exec: W,
    pub comm: W,
    pub total: W,
    pub migrations_applied: usize,
}

#[derive(Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
enum Line<'a, W> {
    Header(&'a TraceHeader),
    Migration(&'a TraceEvent<W>),
}

pub fn write_trace<W: Weight + Serialize>(
    mut out: impl Write,
    header: &TraceHeader,
    events: &[TraceEvent<W>],
) -> io::Result<()> {
    serde_json::to_writer(&mut out, &Line::<W>::Header(header))?;
    out.write_all(b"\n")?;
    for e in events {
        serde_json::to_writer(&mut out, &Line::Migration(e))?;
        out.write_all(b"\n")?;
    }
    Ok(())
}

pub fn write_cost_csv<W: Weight>(mut out: impl Write, curve: &[RoundStats<W>]) -> io::Result<()> {
    writeln!(out, "round,exec,comm,total,migrations_applied")?;
    for r in curve {
        writeln!(
            out,
            "{},{},{},{},{}",
            r.round, r.exec, r.comm, r.total, r.migrations_applied
        )?;
    }
    Ok(())
}
