//! Enumerate the default lattice suite and check the sharp range formulas,
//! then print the text report. Pass `literal` to check the formulas as
//! originally stated instead.

use partisan_symmetry::bounds::literal::{LiteralRanges, OddUpper};
use partisan_symmetry::bounds::{RangeFormulas, SharpRanges};
use partisan_symmetry::oracle::{run_verification, VerifyConfig};

fn main() -> anyhow::Result<()> {
    let provider: Box<dyn RangeFormulas> = match std::env::args().nth(1).as_deref() {
        Some("literal") => Box::new(LiteralRanges::new(OddUpper::Stated)),
        _ => Box::new(SharpRanges),
    };
    let report = run_verification(&VerifyConfig::default(), provider.as_ref())?;
    report.write_text(std::io::stdout().lock())?;
    Ok(())
}
