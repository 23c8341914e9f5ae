//! Enumerate the symplectic group `Sp(V_A)` of the double `V_A = A ⊕ Â`
//! by pruned depth-first search over generator images.
//!
//! ```bash
//! cargo run --release --example symplectic_enumeration -- Z4 Z2xZ2 Z3xZ3
//! ```

use std::sync::Arc;
use std::time::Instant;

use cliffsplit::double::{enumerate_sp, find_generating_set, DoubleSpace, SpBudget};
use cliffsplit::group::parse_group_spec;

fn main() -> Result<(), cliffsplit::Error> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let specs: Vec<String> = if args.is_empty() {
        ["Z2", "Z3", "Z4", "Z6", "Z8", "Z2xZ2", "Z4xZ2"]
            .iter()
            .map(|s| s.to_string())
            .collect()
    } else {
        args
    };
    for spec in specs {
        let group = parse_group_spec(&spec)?;
        let space = Arc::new(DoubleSpace::new(group.clone()));
        let start = Instant::now();
        let sp = Arc::new(enumerate_sp(&space, &SpBudget::default())?);
        let elapsed = start.elapsed();
        let gens = find_generating_set(&sp);
        println!(
            "{group}: |V| = {}, |Sp(V)| = {} ({} generators, {:.1} ms)",
            space.size(),
            sp.len(),
            gens.len(),
            elapsed.as_secs_f64() * 1e3,
        );
        for &g in &gens {
            println!("  generator {:?}", sp.map(g).entries());
        }
    }
    Ok(())
}
