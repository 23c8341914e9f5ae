//! Run the full reproduction roster and print the report table.
//!
//! ```bash
//! cargo run --release --example roster_report
//! ```
//!
//! Every row carries the computed verdict next to the `4 ∤ |A|`
//! prediction; the `agree` column would read `NO!` on any mismatch.

use cliffsplit::report::{run_roster, RosterConfig};

fn main() -> Result<(), cliffsplit::Error> {
    let cfg = RosterConfig::default();
    println!("roster: {}", cfg.roster.join(", "));
    let report = run_roster(&cfg)?;
    print!("{}", report.table());
    println!("exit code: {}", report.exit_code());
    Ok(())
}
