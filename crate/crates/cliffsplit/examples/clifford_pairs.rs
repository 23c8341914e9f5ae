//! A tour of the pair model: Clifford elements are pairs `(T, λ)` of a
//! symplectic map and a phase function tied together by the coboundary
//! condition, multiplied by the twisted product.
//!
//! ```bash
//! cargo run --release --example clifford_pairs
//! ```

use std::sync::Arc;

use cliffsplit::clifford::{all_lifts, check_coboundary, lift, CliffordElem, PhaseFn};
use cliffsplit::double::{cyclic_generators, DoubleSpace};
use cliffsplit::group::FinAbGroup;

fn main() -> Result<(), cliffsplit::Error> {
    let group = FinAbGroup::new(&[4])?;
    let space = Arc::new(DoubleSpace::new(group.clone()));
    let (t, s) = cyclic_generators(&space)?;

    // the zero phase function fails the coboundary condition for t...
    println!(
        "zero phase valid for t: {}",
        check_coboundary(&space, &t, &PhaseFn::zero(&space))
    );
    // ...but the particular solution passes, and equals p²/(2N)
    let t_lift = lift(&space, &t)?;
    println!("particular lift of t (λ at each (a, p)):");
    for r in 0..space.size() {
        let c = space.coords_of(r);
        if c[0] == 0 {
            println!("  λ(a, p={}) = {}", c[1], t_lift.lam().value(r));
        }
    }

    // lifts of one map differ by the |V| characters kappa(v)
    let lifts = all_lifts(&space, &t)?;
    println!("number of lifts of t: {}", lifts.len());

    // twisted products compose symplectic parts and twist the phases
    let s_lift = lift(&space, &s)?;
    let st = s_lift.mul(&t_lift)?;
    println!("matrix of s̃·t̃: {:?}", st.map().entries());
    println!(
        "s̃·t̃·(s̃·t̃)⁻¹ is the identity pair: {}",
        st.mul(&st.inverse())?.is_identity()
    );

    // kernel elements (id, kappa(v)) conjugate naturally
    let v = 5 % space.size();
    let k = CliffordElem::kernel(&space, v);
    let conj = t_lift.mul(&k)?.mul(&t_lift.inverse())?;
    let tv = t_lift.perm()[v as usize] as u64;
    println!(
        "t̃ (id, κ({:?})) t̃⁻¹ = (id, κ({:?}))",
        space.coords_of(v),
        space.coords_of(tv)
    );
    assert_eq!(conj, CliffordElem::kernel(&space, tv));
    Ok(())
}
