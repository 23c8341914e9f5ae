//! Moving splittings between groups: compose splittings of coprime parts
//! into one for the whole group, then restrict back to a direct summand.
//!
//! ```bash
//! cargo run --release --example summand_transport
//! ```

use std::sync::Arc;

use cliffsplit::clifford::{odd_section, VerificationMode};
use cliffsplit::decompose::{coprime_compose, restrict_section, Side, Splitting};
use cliffsplit::double::{enumerate_sp, SpBudget};
use cliffsplit::group::parse_group_spec;
use cliffsplit::obstruction::{split_check, SplitOptions};

fn main() -> Result<(), cliffsplit::Error> {
    let group = parse_group_spec("Z6")?;
    let split = Splitting::primary(&group);
    println!(
        "{} ≅ {} ⊕ {} (odd part ⊕ 2-part)",
        group,
        split.odd(),
        split.two()
    );

    let budget = SpBudget::default();
    let sp_whole = Arc::new(enumerate_sp(split.whole_space(), &budget)?);
    let sp_odd = Arc::new(enumerate_sp(split.part_space(Side::Left), &budget)?);
    let sp_two = Arc::new(enumerate_sp(split.part_space(Side::Right), &budget)?);
    println!(
        "|Sp| factors: {} = {} × {}",
        sp_whole.len(),
        sp_odd.len(),
        sp_two.len()
    );

    // a splitting for the odd part comes from the square-root section; one
    // for the 2-part Z_2 comes out of the splitting pipeline
    let sec_odd = odd_section(&sp_odd)?;
    let two_verdict = split_check(split.two(), &SplitOptions::default())?;
    let sec_two = two_verdict.witness.expect("Z2 splits");

    let composed = coprime_compose(&sp_whole, &sec_odd, &sec_two, &split)?;
    let rep = composed.verify_homomorphism(VerificationMode::Pairwise);
    println!(
        "composed section over {}: {} pairs checked, {} defects",
        group, rep.pairs_checked, rep.defects
    );

    // restriction recovers a splitting of the summand
    let restricted = restrict_section(&composed, &split, Side::Right, &sp_two)?;
    let rep = restricted.verify_homomorphism(VerificationMode::Pairwise);
    println!(
        "restricted back to {}: {} pairs checked, {} defects",
        split.two(),
        rep.pairs_checked,
        rep.defects
    );
    Ok(())
}
