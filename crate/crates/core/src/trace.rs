//! CSV serialization of attack traces.
//!
//! The schema is fixed so downstream plotting scripts can rely on it:
//!
//! ```text
//! strategy,seed,q,removed_node,lcc_nodes,lcc_edges,edge_bound,vcut_size
//! ```
//!
//! `edge_bound` is printed to six decimal places and `vcut_size` is empty
//! for non-spectral strategies. Output is byte-stable for fixed inputs, and
//! parsing an emitted file reproduces the records exactly.

use crate::attack::AttackTrace;
use crate::error::{Error, Result};
use crate::graph::NodeId;

pub const CSV_HEADER: &str = "strategy,seed,q,removed_node,lcc_nodes,lcc_edges,edge_bound,vcut_size";

#[derive(Debug, Clone, PartialEq)]
pub struct TraceRow {
    pub q: usize,
    pub removed_node: NodeId,
    pub lcc_nodes: usize,
    pub lcc_edges: usize,
    /// Already quantized to the six decimals the CSV carries.
    pub edge_bound: f64,
    pub vcut_size: Option<usize>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TraceRecord {
    pub strategy: String,
    pub seed: u64,
    pub rows: Vec<TraceRow>,
}

/// Round to exactly what six-decimal formatting will print, so the
/// in-memory value survives a write/parse round trip.
fn quantize(bound: f64) -> f64 {
    format!("{bound:.6}").parse().expect("formatted float")
}

impl TraceRecord {
    pub fn from_attack(trace: &AttackTrace) -> TraceRecord {
        TraceRecord {
            strategy: trace.strategy.name().to_string(),
            seed: trace.seed,
            rows: trace
                .steps
                .iter()
                .map(|s| TraceRow {
                    q: s.index,
                    removed_node: s.removed,
                    lcc_nodes: s.lcc_nodes,
                    lcc_edges: s.lcc_edges,
                    edge_bound: quantize(s.edge_bound),
                    vcut_size: s.vcut_size,
                })
                .collect(),
        }
    }
}

/// Render records as one CSV document, rows in record order.
pub fn write_csv(records: &[TraceRecord]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for rec in records {
        for row in &rec.rows {
            let vcut = row
                .vcut_size
                .map(|v| v.to_string())
                .unwrap_or_default();
            out.push_str(&format!(
                "{},{},{},{},{},{},{:.6},{}\n",
                rec.strategy,
                rec.seed,
                row.q,
                row.removed_node,
                row.lcc_nodes,
                row.lcc_edges,
                row.edge_bound,
                vcut
            ));
        }
    }
    out
}

/// Parse a CSV document produced by [`write_csv`]. Consecutive rows sharing
/// `(strategy, seed)` are grouped into one record.
pub fn parse_csv(text: &str) -> Result<Vec<TraceRecord>> {
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, header)) if header == CSV_HEADER => {}
        Some((_, header)) => {
            return Err(Error::Parse {
                line: 1,
                msg: format!("unexpected header `{header}`"),
            })
        }
        None => {
            return Err(Error::Parse {
                line: 1,
                msg: "empty document".into(),
            })
        }
    }
    let mut records: Vec<TraceRecord> = Vec::new();
    for (idx, line) in lines {
        if line.is_empty() {
            continue;
        }
        let lineno = idx + 1;
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 8 {
            return Err(Error::Parse {
                line: lineno,
                msg: format!("expected 8 fields, got {}", fields.len()),
            });
        }
        let bad = |what: &str| Error::Parse {
            line: lineno,
            msg: format!("bad {what} field"),
        };
        let strategy = fields[0].to_string();
        let seed: u64 = fields[1].parse().map_err(|_| bad("seed"))?;
        let row = TraceRow {
            q: fields[2].parse().map_err(|_| bad("q"))?,
            removed_node: fields[3].parse().map_err(|_| bad("removed_node"))?,
            lcc_nodes: fields[4].parse().map_err(|_| bad("lcc_nodes"))?,
            lcc_edges: fields[5].parse().map_err(|_| bad("lcc_edges"))?,
            edge_bound: fields[6].parse().map_err(|_| bad("edge_bound"))?,
            vcut_size: if fields[7].is_empty() {
                None
            } else {
                Some(fields[7].parse().map_err(|_| bad("vcut_size"))?)
            },
        };
        match records.last_mut() {
            Some(rec) if rec.strategy == strategy && rec.seed == seed => rec.rows.push(row),
            _ => records.push(TraceRecord {
                strategy,
                seed,
                rows: vec![row],
            }),
        }
    }
    Ok(records)
}
