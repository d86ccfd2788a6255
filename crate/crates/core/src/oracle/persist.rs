// On-disk forms of an achievability table.

use std::io::Write;

use serde::Serialize;

use super::{AchievabilityTable, LatticeWitness, OracleError};
use crate::rational::Exact;

/// One row per (V, S) cell with exact `p/q` extremes.
pub fn write_table_csv<W: Write>(table: &AchievabilityTable, out: W) -> Result<(), OracleError> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["v_num", "v_den", "s_num", "s_den", "min_mm", "max_mm", "min_pb", "max_pb", "zero"])?;
    for (key, cell) in &table.cells {
        let v = table.v(key);
        let s = table.s(key);
        w.write_record([
            v.numer().to_string(),
            v.denom().to_string(),
            s.numer().to_string(),
            s.denom().to_string(),
            Exact(&table.mm_value(&cell.min_mm)).to_string(),
            Exact(&table.mm_value(&cell.max_mm)).to_string(),
            Exact(&table.pb_value(&cell.min_pb)).to_string(),
            Exact(&table.pb_value(&cell.max_pb)).to_string(),
            cell.zero.is_some().to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

#[derive(Serialize)]
struct WitnessRecord<'a> {
    v: String,
    s: String,
    min_mm: &'a LatticeWitness,
    max_mm: &'a LatticeWitness,
    min_pb: &'a LatticeWitness,
    max_pb: &'a LatticeWitness,
    zero: Option<&'a LatticeWitness>,
}

#[derive(Serialize)]
struct WitnessFile<'a> {
    n: usize,
    d: u32,
    /// Witness shares are numerators over `d`; `half_won` counts ½-shares flagged won.
    cells: Vec<WitnessRecord<'a>>,
}

pub fn write_witnesses_json<W: Write>(table: &AchievabilityTable, out: W) -> Result<(), OracleError> {
    let cells = table
        .cells
        .iter()
        .map(|(key, c)| WitnessRecord {
            v: Exact(&table.v(key)).to_string(),
            s: Exact(&table.s(key)).to_string(),
            min_mm: &c.min_mm.witness,
            max_mm: &c.max_mm.witness,
            min_pb: &c.min_pb.witness,
            max_pb: &c.max_pb.witness,
            zero: c.zero.as_ref(),
        })
        .collect();
    let file = WitnessFile { n: table.spec.n, d: table.spec.d, cells };
    serde_json::to_writer_pretty(out, &file)?;
    Ok(())
}
