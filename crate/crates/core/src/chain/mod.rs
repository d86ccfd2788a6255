//! Redistricting chain on synthetic or user-supplied geographies.
//!
//! Plans are sampled with recombination moves and steered toward more
//! seats for one party by short bursts. All randomness comes from one
//! ChaCha8 stream seeded by the caller, so a run is reproducible bit for bit.

mod burst;
mod geography;
mod partition;
mod recom;
mod summary;
mod tree;

pub use burst::{plan_record, short_burst, BurstConfig, BurstRunSummary, PlanRecord};
pub use geography::{synth_geography, Geography, GeographyKind, Node, SYNTH_VOTES_PER_NODE_UNIT};
pub use partition::{seed_partition, Partition};
pub use recom::{recom_step, MAX_TREE_DRAWS};
pub use summary::{
    acceptability_bands, band_fraction, summarize_ranges, write_buckets_csv, write_records_csv, AcceptabilityBand, BandMetric,
    MetricStats, SeatBucket, MM_ENVELOPE_GRID,
};

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Party {
    A,
    B,
}

impl FromStr for Party {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "a" | "A" => Ok(Self::A),
            "b" | "B" => Ok(Self::B),
            other => Err(format!("unknown party '{other}' (expected A or B)")),
        }
    }
}

impl fmt::Display for Party {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::A => "A",
            Self::B => "B",
        })
    }
}

#[derive(Debug, thiserror::Error)]
pub enum ChainError {
    #[error("graph is disconnected: {}", describe_components(.components))]
    Disconnected { components: Vec<Vec<usize>> },
    #[error("node {index}: {message}")]
    InvalidNode { index: usize, message: String },
    #[error("edge {index}: {message}")]
    InvalidEdge { index: usize, message: String },
    #[error("setup: {0}")]
    Setup(String),
    #[error("invalid plan: {0}")]
    InvalidPlan(String),
    #[error("geography JSON: {0}")]
    Json(#[from] serde_json::Error),
}

fn describe_components(components: &[Vec<usize>]) -> String {
    let parts: Vec<String> = components
        .iter()
        .map(|c| {
            let shown: Vec<String> = c.iter().take(5).map(|i| i.to_string()).collect();
            let more = if c.len() > 5 { ", ..." } else { "" };
            let unit = if c.len() == 1 { "node" } else { "nodes" };
            format!("{{{}{more}}} ({} {unit})", shown.join(", "), c.len())
        })
        .collect();
    format!("{} components: {}", components.len(), parts.join("; "))
}
