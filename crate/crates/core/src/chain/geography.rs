// Vote-bearing graphs: file format, validation and synthetic generators.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::ChainError;
use crate::rational::{self, ratio, Rational};

/// One geographic unit: population and votes for each party.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Node {
    pub pop: u64,
    pub a: u64,
    pub b: u64,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GeographyFile {
    nodes: Vec<Node>,
    edges: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    layout: Option<Vec<[f64; 2]>>,
}

/// A connected dual graph with per-node populations and votes.
#[derive(Debug, Clone, PartialEq)]
pub struct Geography {
    nodes: Vec<Node>,
    edges: Vec<(usize, usize)>,
    adjacency: Vec<Vec<usize>>,
    layout: Option<Vec<(f64, f64)>>,
}

impl Geography {
    pub fn new(nodes: Vec<Node>, edges: Vec<(usize, usize)>, layout: Option<Vec<(f64, f64)>>) -> Result<Self, ChainError> {
        if nodes.is_empty() {
            return Err(ChainError::Setup("a geography needs at least one node".into()));
        }
        for (i, n) in nodes.iter().enumerate() {
            if n.pop == 0 {
                return Err(ChainError::InvalidNode { index: i, message: "population must be positive".into() });
            }
            if n.a + n.b > n.pop {
                return Err(ChainError::InvalidNode {
                    index: i,
                    message: format!("{} + {} votes exceed population {}", n.a, n.b, n.pop),
                });
            }
        }
        let mut adjacency = vec![Vec::new(); nodes.len()];
        for (k, &(u, v)) in edges.iter().enumerate() {
            if u >= nodes.len() || v >= nodes.len() || u == v {
                return Err(ChainError::InvalidEdge { index: k, message: format!("[{u}, {v}] with {} nodes", nodes.len()) });
            }
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for list in &mut adjacency {
            list.sort_unstable();
            list.dedup();
        }
        if let Some(l) = &layout {
            if l.len() != nodes.len() {
                return Err(ChainError::Setup(format!("layout has {} points for {} nodes", l.len(), nodes.len())));
            }
        }
        let g = Self { nodes, edges, adjacency, layout };
        let components = g.components();
        if components.len() > 1 {
            return Err(ChainError::Disconnected { components });
        }
        Ok(g)
    }

    pub fn from_json(text: &str) -> Result<Self, ChainError> {
        let f: GeographyFile = serde_json::from_str(text)?;
        let edges = f.edges.into_iter().map(|[u, v]| (u, v)).collect();
        let layout = f.layout.map(|l| l.into_iter().map(|[x, y]| (x, y)).collect());
        Self::new(f.nodes, edges, layout)
    }

    pub fn to_json(&self) -> String {
        let f = GeographyFile {
            nodes: self.nodes.clone(),
            edges: self.edges.iter().map(|&(u, v)| [u, v]).collect(),
            layout: self.layout.as_ref().map(|l| l.iter().map(|&(x, y)| [x, y]).collect()),
        };
        serde_json::to_string(&f).expect("plain data serializes")
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, i: usize) -> &[usize] {
        &self.adjacency[i]
    }

    pub fn layout(&self) -> Option<&[(f64, f64)]> {
        self.layout.as_deref()
    }

    pub fn total_population(&self) -> u64 {
        self.nodes.iter().map(|n| n.pop).sum()
    }

    /// Party A's share of the two-party vote.
    pub fn vote_share(&self) -> Rational {
        let a: u64 = self.nodes.iter().map(|n| n.a).sum();
        let b: u64 = self.nodes.iter().map(|n| n.b).sum();
        ratio(a as i64, (a + b).max(1) as i64)
    }

    /// Same graph with the parties' votes exchanged.
    pub fn swapped(&self) -> Self {
        let mut g = self.clone();
        for n in &mut g.nodes {
            std::mem::swap(&mut n.a, &mut n.b);
        }
        g
    }

    /// Connected components, each sorted, ordered by smallest node.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.len()];
        let mut out = Vec::new();
        for start in 0..self.len() {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut stack = vec![start];
            let mut comp = Vec::new();
            while let Some(u) = stack.pop() {
                comp.push(u);
                for &v in &self.adjacency[u] {
                    if !seen[v] {
                        seen[v] = true;
                        stack.push(v);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GeographyKind {
    /// Independent node shares scattered around the lean.
    Uniform,
    /// Hot and cold blobs of opposite sign.
    Clustered,
    /// Shares rising steadily from west to east.
    Gradient,
}

impl FromStr for GeographyKind {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "uniform" => Ok(Self::Uniform),
            "clustered" => Ok(Self::Clustered),
            "gradient" => Ok(Self::Gradient),
            other => Err(format!("unknown geography kind '{other}' (expected uniform, clustered or gradient)")),
        }
    }
}

impl fmt::Display for GeographyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Uniform => "uniform",
            Self::Clustered => "clustered",
            Self::Gradient => "gradient",
        })
    }
}

/// Synthetic nodes hold this many votes times (node count + 1); node
/// shares resolve to 1/1000. Everyone votes.
pub const SYNTH_VOTES_PER_NODE_UNIT: u64 = 1000;

/// Rook-adjacent `rows × cols` grid with a planted vote pattern around
/// `lean`. Node shares deviate from the lean by at most min(lean, 1 − lean),
/// so lean 0 or 1 gives a one-party map.
pub fn synth_geography(kind: GeographyKind, rows: usize, cols: usize, lean: &Rational, seed: u64) -> Result<Geography, ChainError> {
    if rows * cols < 2 {
        return Err(ChainError::Setup(format!("a {rows}×{cols} grid is too small")));
    }
    if *lean < Rational::from_integer(0.into()) || *lean > Rational::from_integer(1.into()) {
        return Err(ChainError::Setup(format!("lean {} is outside [0, 1]", rational::Exact(lean))));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let base = rational::to_f64(lean);
    let amp = base.min(1.0 - base);
    let field: Vec<f64> = match kind {
        GeographyKind::Uniform => (0..rows * cols).map(|_| 0.5 * rng.random_range(-1.0..=1.0)).collect(),
        GeographyKind::Clustered => clustered_field(rows, cols, &mut rng),
        GeographyKind::Gradient => (0..rows * cols)
            .map(|i| {
                let x = if cols > 1 { (i % cols) as f64 / (cols - 1) as f64 } else { 0.5 };
                0.9 * (2.0 * x - 1.0) + 0.1 * rng.random_range(-1.0..=1.0)
            })
            .collect(),
    };
    // Each node gives party A half its votes plus (N + 1)·k + 1 with
    // |k| < 500, where N is the node count. A district of m ≤ N nodes then
    // has A's excess (N + 1)·Σk + m, which is never zero: no district ties.
    let modulus = (rows * cols + 1) as u64;
    let total = SYNTH_VOTES_PER_NODE_UNIT * modulus;
    let one_party = base <= 0.0 || base >= 1.0;
    let nodes = field
        .iter()
        .map(|f| {
            let a = if one_party {
                if base >= 1.0 { total } else { 0 }
            } else {
                let share = base + amp * f.clamp(-1.0, 1.0);
                let k = ((share - 0.5) * SYNTH_VOTES_PER_NODE_UNIT as f64).round().clamp(-499.0, 499.0) as i64;
                (total as i64 / 2 + modulus as i64 * k + 1) as u64
            };
            Node { pop: total, a, b: total - a }
        })
        .collect();
    let mut edges = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            let i = r * cols + c;
            if c + 1 < cols {
                edges.push((i, i + 1));
            }
            if r + 1 < rows {
                edges.push((i, i + cols));
            }
        }
    }
    let layout = (0..rows * cols).map(|i| ((i % cols) as f64, (i / cols) as f64)).collect();
    Geography::new(nodes, edges, Some(layout))
}

// Four Gaussian blobs, alternately hot and cold, plus light noise.
fn clustered_field(rows: usize, cols: usize, rng: &mut ChaCha8Rng) -> Vec<f64> {
    let sigma = rows.max(cols) as f64 / 5.0;
    let centers: Vec<(f64, f64, f64)> = (0..4)
        .map(|k| {
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            (rng.random_range(0.0..cols as f64), rng.random_range(0.0..rows as f64), sign)
        })
        .collect();
    (0..rows * cols)
        .map(|i| {
            let (x, y) = ((i % cols) as f64, (i / cols) as f64);
            let bumps: f64 = centers
                .iter()
                .map(|&(cx, cy, sign)| sign * (-((x - cx).powi(2) + (y - cy).powi(2)) / (2.0 * sigma * sigma)).exp())
                .sum();
            0.9 * bumps.clamp(-1.0, 1.0) + 0.1 * rng.random_range(-1.0..=1.0)
        })
        .collect()
}
