//! Election JSON and CSV helpers.
//!
//! Election files look like
//! `{"shares": ["37/100", "0.61", ...], "winners_at_half": [2], "weights": null}`.
//! Shares and weights are `"p/q"` or decimal strings (or JSON numbers) and
//! are read exactly. `winners_at_half` lists input positions of ½-share
//! districts won by party A; other ½-share districts count as lost.

use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::election::{DistrictResult, Election, ElectionError};
use crate::metrics::SeatsVotesCurve;
use crate::rational::{is_half, serde_rational, Exact, Rational};

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("JSON syntax: {0}")]
    Syntax(#[from] serde_json::Error),
    #[error("field `{field}`: {message}")]
    Field { field: String, message: String },
    #[error(transparent)]
    Election(#[from] ElectionError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawElection {
    shares: Vec<serde_json::Value>,
    #[serde(default)]
    winners_at_half: Vec<usize>,
    #[serde(default)]
    weights: Option<Vec<serde_json::Value>>,
}

#[derive(Serialize)]
struct ElectionOut {
    shares: Vec<String>,
    winners_at_half: Vec<usize>,
    weights: Option<Vec<String>>,
}

fn field(name: &str, index: usize, message: String) -> FormatError {
    FormatError::Field { field: format!("{name}[{index}]"), message }
}

pub fn election_from_json(text: &str) -> Result<Election, FormatError> {
    let raw: RawElection = serde_json::from_str(text)?;
    let shares = raw
        .shares
        .iter()
        .enumerate()
        .map(|(i, v)| serde_rational::from_json(v).map_err(|m| field("shares", i, m)))
        .collect::<Result<Vec<Rational>, _>>()?;
    for &i in &raw.winners_at_half {
        match shares.get(i) {
            None => return Err(field("winners_at_half", i, format!("no district {i}"))),
            Some(s) if !is_half(s) => {
                return Err(field("winners_at_half", i, format!("district {i} has share {}, not 1/2", Exact(s))))
            }
            _ => {}
        }
    }
    let districts = shares
        .into_iter()
        .enumerate()
        .map(|(i, s)| {
            let flag = is_half(&s).then(|| raw.winners_at_half.contains(&i));
            DistrictResult::new(s, flag)
        })
        .collect::<Result<Vec<_>, _>>()?;
    let weights = match &raw.weights {
        None => None,
        Some(ws) => Some(
            ws.iter()
                .enumerate()
                .map(|(i, v)| serde_rational::from_json(v).map_err(|m| field("weights", i, m)))
                .collect::<Result<Vec<Rational>, _>>()?,
        ),
    };
    Ok(Election::new(districts, weights)?)
}

pub fn election_to_json(e: &Election) -> String {
    let out = ElectionOut {
        shares: e.shares().map(|s| Exact(s).to_string()).collect(),
        winners_at_half: e
            .districts()
            .iter()
            .enumerate()
            .filter(|(_, d)| d.winner_at_half() == Some(true))
            .map(|(i, _)| i)
            .collect(),
        weights: e.weights().map(|w| w.iter().map(|x| Exact(x).to_string()).collect()),
    };
    serde_json::to_string_pretty(&out).expect("plain data serializes")
}

/// Curve corner points as `v,s` rows of exact rationals.
pub fn write_curve_csv<W: Write>(curve: &SeatsVotesCurve, out: W) -> Result<(), FormatError> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["v", "s"])?;
    for (v, s) in curve.points() {
        w.write_record([Exact(v).to_string(), Exact(s).to_string()])?;
    }
    w.flush()?;
    Ok(())
}
