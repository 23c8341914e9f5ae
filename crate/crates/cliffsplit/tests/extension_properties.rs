//! Cross-module properties of the extension machinery, checked at desk
//! scale: brute-force enumeration oracles, closure laws, and the agreement
//! between the generator-constraint analysis and the splitting verdicts.

use std::sync::Arc;

use cliffsplit::clifford::{odd_section, Section, VerificationMode};
use cliffsplit::cyclic_two::constraint_report;
use cliffsplit::decompose::{restrict_section, Side, Splitting};
use cliffsplit::double::{
    enumerate_sp, is_symplectic, DoubleSpace, EndoMap, SpBudget, SpGroup,
};
use cliffsplit::group::{parse_group_spec, FinAbGroup};
use cliffsplit::obstruction::{split_check, SplitOptions};

fn sp_of(spec: &str) -> Arc<SpGroup> {
    let g = parse_group_spec(spec).unwrap();
    let space = Arc::new(DoubleSpace::new(g));
    Arc::new(enumerate_sp(&space, &SpBudget::default()).unwrap())
}

#[test]
fn sp_count_z2xz2_matches_brute_force() {
    // independent oracle: filter all 2^16 matrices over (F_2)^4
    let g = FinAbGroup::new(&[2, 2]).unwrap();
    let space = Arc::new(DoubleSpace::new(g));
    let mut count = 0u32;
    for bits in 0..(1u32 << 16) {
        let entries: Vec<i64> = (0..16).map(|k| ((bits >> k) & 1) as i64).collect();
        let m = EndoMap::new(&space, entries).unwrap();
        if is_symplectic(&space, &m) {
            count += 1;
        }
    }
    assert_eq!(count, 720);
    assert_eq!(enumerate_sp(&space, &SpBudget::default()).unwrap().len(), 720);
}

#[test]
fn sp_closed_under_composition_and_inverse_z2xz2() {
    let sp = sp_of("Z2xZ2");
    for i in 0..sp.len() as u32 {
        assert_eq!(sp.mul(i, sp.inv(i)), sp.identity_index());
        for j in 0..sp.len() as u32 {
            assert!((sp.mul(i, j) as usize) < sp.len());
        }
    }
}

#[test]
fn odd_sections_split_z7_and_z9() {
    for spec in ["Z7", "Z9"] {
        let sp = sp_of(spec);
        let sec = odd_section(&sp).unwrap();
        let rep = sec.verify_homomorphism(VerificationMode::Pairwise);
        assert_eq!(rep.defects, 0, "{spec}");
        assert_eq!(rep.pairs_checked, (sp.len() * sp.len()) as u64);
    }
}

#[test]
fn constraint_intersection_matches_split_verdict() {
    for n in [2i64, 4, 8] {
        let rep = constraint_report(n).unwrap();
        let g = FinAbGroup::new(&[n]).unwrap();
        let v = split_check(&g, &SplitOptions::default()).unwrap();
        assert_eq!(
            !rep.intersection.is_empty(),
            v.splits,
            "constraint analysis disagrees with the splitting pipeline at N = {n}"
        );
    }
}

#[test]
fn restriction_to_the_whole_group_is_the_identity() {
    // A = Z_3: the 2-part is trivial, so restricting to the odd part must
    // reproduce the section itself
    let g = parse_group_spec("Z3").unwrap();
    let split = Splitting::primary(&g);
    assert!(split.two().is_trivial());
    let sp_whole = Arc::new(
        enumerate_sp(split.whole_space(), &SpBudget::default()).unwrap(),
    );
    let sp_odd = Arc::new(
        enumerate_sp(split.part_space(Side::Left), &SpBudget::default()).unwrap(),
    );
    let sec = odd_section(&sp_whole).unwrap();
    let restricted = restrict_section(&sec, &split, Side::Left, &sp_odd).unwrap();
    // the odd part has the same factor orders, so tables must agree map
    // by map under the index correspondence
    for i in 0..sp_odd.len() as u32 {
        let m = sp_odd.map(i);
        let j = sp_whole
            .index_of(&EndoMap::new(split.whole_space(), m.entries().to_vec()).unwrap())
            .unwrap();
        assert_eq!(restricted.lift(i).lam().table(), sec.lift(j).lam().table());
    }
}

#[test]
fn complement_witness_and_coboundary_witness_share_a_class() {
    use cliffsplit::obstruction::{class_difference_check, OracleChoice};
    // Z_2 splits; both oracles produce witnesses independently
    let g = parse_group_spec("Z2").unwrap();
    let via_cob = split_check(
        &g,
        &SplitOptions {
            oracle: OracleChoice::Coboundary,
            ..SplitOptions::default()
        },
    )
    .unwrap();
    let via_com = split_check(
        &g,
        &SplitOptions {
            oracle: OracleChoice::Complement,
            ..SplitOptions::default()
        },
    )
    .unwrap();
    let (w1, w2) = (via_cob.witness.unwrap(), via_com.witness.unwrap());
    assert!(class_difference_check(&w1, &w2).unwrap());
}

#[test]
fn particular_sections_exist_for_all_roster_two_groups() {
    for spec in ["Z2", "Z4", "Z8", "Z2xZ2"] {
        let sp = sp_of(spec);
        let sec = Section::particular(&sp).unwrap();
        assert_eq!(sec.lifts().len(), sp.len());
        assert!(sec.lift(sp.identity_index()).lam().is_zero());
    }
}
