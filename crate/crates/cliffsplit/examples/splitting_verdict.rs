//! Decide whether the Clifford extension of a group splits.
//!
//! ```bash
//! cargo run --release --example splitting_verdict            # built-in demo set
//! cargo run --release --example splitting_verdict -- Z4xZ2   # your own group
//! ```

use cliffsplit::group::parse_group_spec;
use cliffsplit::obstruction::{split_check, SplitOptions};

fn main() -> Result<(), cliffsplit::Error> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let specs: Vec<String> = if args.is_empty() {
        ["Z6", "Z8", "Z2xZ2"].iter().map(|s| s.to_string()).collect()
    } else {
        args
    };
    let opts = SplitOptions::default();
    for spec in specs {
        let group = parse_group_spec(&spec)?;
        let verdict = split_check(&group, &opts)?;
        println!(
            "{group}: |V| = {}, |Sp(V)| = {}",
            verdict.v_size, verdict.sp_order
        );
        println!(
            "  verdict: {}",
            if verdict.splits { "SPLITS" } else { "DOES NOT SPLIT" }
        );
        if let Some(solvable) = verdict.oracles.coboundary {
            println!(
                "  coboundary oracle: system {}",
                if solvable { "solvable" } else { "inconsistent" }
            );
        }
        if let Some(found) = verdict.oracles.complement {
            println!(
                "  complement oracle: {}",
                if found {
                    "complement found"
                } else {
                    "all generator-lift tuples exhausted"
                }
            );
        }
        if let Some(report) = verdict.witness_report {
            println!(
                "  witness: homomorphism verified on {} pairs ({} defects, {:?} mode)",
                report.pairs_checked, report.defects, report.mode
            );
        }
        if let Some(ev) = &verdict.evidence {
            println!("  evidence: {} stage", ev.stage);
        }
        println!(
            "  4 ∤ |A| predicts: {} — {}",
            if verdict.theorem_prediction { "splits" } else { "does not split" },
            if verdict.agreement() { "agreement" } else { "DISCREPANCY!" }
        );
        println!();
    }
    Ok(())
}
