//! Numeric sanity check: build the actual shift/phase operator matrices on
//! ℂ[A] and compare their products against the exact `beta`/`omega`
//! tables, to double precision.
//!
//! ```bash
//! cargo run --release --example weyl_crosscheck -- Z4
//! ```

use std::sync::Arc;

use cliffsplit::double::DoubleSpace;
use cliffsplit::group::parse_group_spec;
use cliffsplit::weyl::{check_weyl_relations, weyl_matrix};

fn main() -> Result<(), cliffsplit::Error> {
    let spec = std::env::args().nth(1).unwrap_or_else(|| "Z2".to_string());
    let group = parse_group_spec(&spec)?;
    let space = Arc::new(DoubleSpace::new(group.clone()));

    let report = check_weyl_relations(&space)?;
    println!("{group}: checked {} ordered pairs of Weyl operators", report.pairs_checked);
    println!(
        "  worst |W_u W_v − e^(2πi beta) W_(u+v)|  = {:.3e}",
        report.worst_product_deviation
    );
    println!(
        "  worst |W_u W_v − e^(2πi omega) W_v W_u| = {:.3e}",
        report.worst_commutation_deviation
    );
    println!("  within 1e-12: {}", report.passes());

    // show one matrix
    let u = space.size() - 1;
    let w = weyl_matrix(&space, u)?;
    println!("\nW at V-coordinates {:?}:", space.coords_of(u));
    for i in 0..w.dim() {
        let row: Vec<String> = (0..w.dim())
            .map(|j| {
                let z = w.entry(i, j);
                if z.norm() < 1e-12 {
                    "     0    ".to_string()
                } else {
                    format!("{:+.2}{:+.2}i", z.re, z.im)
                }
            })
            .collect();
        println!("  [{}]", row.join(" "));
    }
    Ok(())
}
