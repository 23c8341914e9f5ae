//! Why the extension fails to split for `Z_N` with `4 | N`: the relations
//! `t^N = I` and `(st)³ = s²` impose incompatible constraints on the lift
//! parameter `x`.
//!
//! ```bash
//! cargo run --release --example generator_constraints
//! ```

use cliffsplit::cyclic_two::{
    constraint_report, lift_t, parity_constraint_check, power_phase, residual_character,
};

fn main() -> Result<(), cliffsplit::Error> {
    for n in [2i64, 4, 8] {
        println!("N = {n}");

        // brute-force the N-th twisted power over all lift parameters and
        // compare with the parity closed form
        let parity = parity_constraint_check(n)?;
        println!(
            "  t̃^N sweep over {} (x, y) pairs: closed form (−1)^(p(1+x)) {}",
            parity.pairs_checked,
            if parity.closed_form_matches { "matches" } else { "FAILS" }
        );

        // the two constraint sets and their intersection
        let rep = constraint_report(n)?;
        println!("  t^N = I      needs x ∈ {:?}", rep.parity_set);
        println!("  (st)³ = s²   needs x ∈ {:?}", rep.modular_set);
        println!(
            "  intersection {:?} → {}",
            rep.intersection,
            if rep.intersection.is_empty() {
                "no splitting homomorphism can exist"
            } else {
                "a splitting survives both constraints"
            }
        );
        println!();
    }

    // the residual character of W = (s̃t̃)³ s̃⁻², closed form vs direct product
    println!("residual character v_W at N = 4 (closed form = direct computation):");
    for (x, y, z, w) in [(0, 0, 0, 0), (1, 0, 0, 0), (2, 1, 3, 2)] {
        let v = residual_character(4, x, y, z, w)?;
        println!("  (x,y,z,w) = ({x},{y},{z},{w}) → v_W = {v:?}");
    }

    // a concrete power table
    let t = lift_t(4, 0, 0)?;
    let p4 = power_phase(&t, 4);
    println!("\nphase of t̃⁴ at (a, p) for the reference lift (N = 4):");
    let space = t.space();
    for r in 0..space.size() {
        let c = space.coords_of(r);
        if c[0] == 0 {
            println!("  (·, p={}) → {}", c[1], p4.value(r));
        }
    }
    Ok(())
}
