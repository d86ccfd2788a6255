//! Independent brute-force checks of the range formulas and constructors.
//!
//! Elections are enumerated on a share lattice {0, 1/D, ..., 1} as sorted
//! multisets (every metric here is order-invariant). Per (V, S) cell the
//! table keeps the MM/PB extremes together with a witness for each.

mod enumerate;
mod persist;
mod probe;
mod scan;
mod verify;

pub use enumerate::{
    enumerate_extremes, enumerate_tuples, AchievabilityTable, CellExtremes, CellKey, Extreme, LatticeSpec,
    LatticeWitness, DEFAULT_BUDGET,
};
pub use persist::{write_table_csv, write_witnesses_json};
pub use probe::{probe_extremes, ProbeExtremes};
pub use scan::{
    compare_turnout_scan, compare_zero_scan, zero_achievability_scan, DeclinationZeroScan, DeclinationZeroSet,
    TurnoutRow, ZeroScan, ZeroScanReport,
};
pub use verify::{
    check_cell, resolve_ambiguities, run_verification, table_probe_pairs, verify_bounds, AmbiguityReport,
    BoundaryRow, CellCheck, CheckedMetric, EndStatus, LatticeReport, OddUpperRow, VerifyConfig, VerifyReport,
};

#[derive(Debug, thiserror::Error)]
pub enum OracleError {
    #[error("enumeration needs {required} evaluations, above the budget of {budget}")]
    Budget { required: u128, budget: u128 },
    #[error("{0}")]
    Domain(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
