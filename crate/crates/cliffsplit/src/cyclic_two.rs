//! Generator-lift analysis for cyclic 2-groups `A = Z_N`, `N = 2^k`.
//!
//! Over `Z_N` the symplectic group is `SL(2, Z_N)`, generated by
//! `t(a,p) = (a+p, p)` and `s(a,p) = (-p, a)`. Every lift of `t` has phase
//! `λ_t(a,p) = p²/(2N) + (xa + yp)/N` for a unique `(x, y) ∈ Z_N²`, and
//! every lift of `s` has phase `λ_s(a,p) = −ap/N + (za + wp)/N`,
//! coordinates taken as standard representatives in `{0, …, N−1}`. The
//! relations `t^N = I` and `(st)³ = s²` then impose the incompatible
//! constraints "x odd" and "2x ≡ 0 (mod N)" once `N ≥ 4`.

use std::sync::Arc;

use crate::clifford::{CliffordElem, PhaseFn};
use crate::double::{cyclic_generators, DoubleSpace};
use crate::error::{Error, Result};
use crate::group::FinAbGroup;
use crate::phase::Phase;

fn power_of_two(n: i64) -> bool {
    n >= 2 && n & (n - 1) == 0
}

fn cyclic_space(n: i64) -> Result<Arc<DoubleSpace>> {
    if !power_of_two(n) {
        return Err(Error::precondition(format!(
            "N must be a power of two >= 2, got {n}"
        )));
    }
    Ok(Arc::new(DoubleSpace::new(FinAbGroup::new(&[n])?)))
}

fn phase_table<F>(space: &DoubleSpace, f: F) -> Result<PhaseFn>
where
    F: Fn(i64, i64) -> Phase,
{
    let table: Vec<Phase> = (0..space.size())
        .map(|r| {
            let c = space.coords_of(r);
            f(c[0], c[1])
        })
        .collect();
    PhaseFn::new(space, table)
}

/// The lift of `t` with parameters `(x, y)`:
/// `λ_t(a, p) = p²/(2N) + (xa + yp)/N`.
pub fn lift_t(n: i64, x: i64, y: i64) -> Result<CliffordElem> {
    let space = cyclic_space(n)?;
    let (t, _) = cyclic_generators(&space)?;
    let lam = phase_table(&space, |a, p| {
        Phase::new(p * p + 2 * (x * a + y * p), 2 * n).expect("positive denominator")
    })?;
    CliffordElem::new(&space, t, lam)
}

/// The lift of `s` with parameters `(z, w)`:
/// `λ_s(a, p) = −ap/N + (za + wp)/N`.
pub fn lift_s(n: i64, z: i64, w: i64) -> Result<CliffordElem> {
    let space = cyclic_space(n)?;
    let (_, s) = cyclic_generators(&space)?;
    let lam = phase_table(&space, |a, p| {
        Phase::new(-a * p + z * a + w * p, n).expect("positive denominator")
    })?;
    CliffordElem::new(&space, s, lam)
}

/// Phase table of the `n`-th twisted power, computed by repeated
/// multiplication (never by a closed form).
pub fn power_phase(x: &CliffordElem, n: u64) -> PhaseFn {
    x.pow(n).lam().clone()
}

/// Report of the `t^N = I` parity sweep.
#[derive(Clone, Debug)]
pub struct ParityReport {
    pub n: i64,
    pub pairs_checked: u64,
    /// Brute-force `Λ_N` equals `(−1)^{p(1+x)}` for every `(x, y)`.
    pub closed_form_matches: bool,
    /// `t̃^N` is the identity pair exactly when `x` is odd.
    pub zero_iff_x_odd: bool,
}

impl ParityReport {
    pub fn holds(&self) -> bool {
        self.closed_form_matches && self.zero_iff_x_odd
    }
}

/// For all `(x, y) ∈ Z_N²`, compares the brute-force twisted power
/// `Λ_N = λ of t̃^N` with the closed form `(−1)^{p(1+x)}` and confirms the
/// table vanishes iff `x` is odd.
pub fn parity_constraint_check(n: i64) -> Result<ParityReport> {
    let space = cyclic_space(n)?;
    let mut closed_ok = true;
    let mut parity_ok = true;
    let mut pairs = 0u64;
    for x in 0..n {
        for y in 0..n {
            pairs += 1;
            let brute = power_phase(&lift_t(n, x, y)?, n as u64);
            let closed = phase_table(&space, |_, p| {
                Phase::new(p * (1 + x), 2).expect("positive denominator")
            })?;
            if brute != closed {
                closed_ok = false;
            }
            if brute.is_zero() != (x % 2 == 1) {
                parity_ok = false;
            }
        }
    }
    Ok(ParityReport {
        n,
        pairs_checked: pairs,
        closed_form_matches: closed_ok,
        zero_iff_x_odd: parity_ok,
    })
}

/// The residual character of the word `W = (s̃ t̃)³ s̃^{−2}`, returned as
/// the parameter `v_W ∈ Z_N²` of `χ_v(a, p) = (v_1 a + v_2 p)/N`.
///
/// Two values are computed and asserted equal: the closed form
/// `v_W = (−z−w−2y, −z−w−2y+2x) mod N`, and the direct twisted-product
/// computation, whose symplectic part must be the identity and whose phase
/// must be additive. A mismatch is an internal error.
pub fn residual_character(n: i64, x: i64, y: i64, z: i64, w: i64) -> Result<[i64; 2]> {
    let closed = [
        (-z - w - 2 * y).rem_euclid(n),
        (-z - w - 2 * y + 2 * x).rem_euclid(n),
    ];
    let t = lift_t(n, x, y)?;
    let s = lift_s(n, z, w)?;
    let space = Arc::clone(t.space());
    let st = s.mul(&t)?;
    let word = st.pow(3).mul(&s.mul(&s)?.inverse())?;
    if !word.map().is_identity(&space) {
        return Err(Error::internal(
            "residual word has a non-identity symplectic part".to_string(),
        ));
    }
    if !word.lam().is_additive(&space) {
        return Err(Error::internal(
            "residual word phase is not additive".to_string(),
        ));
    }
    // read off the character parameter on the generators
    let extract = |rank: u64| -> Result<i64> {
        let p = word.lam().value(rank);
        if n % p.den() != 0 {
            return Err(Error::internal(format!(
                "residual character value {p} is not an N-th root"
            )));
        }
        Ok(p.num() * (n / p.den()) % n)
    };
    let e1 = space.rank_of(&[1, 0]);
    let e2 = space.rank_of(&[0, 1]);
    let direct = [extract(e1)?, extract(e2)?];
    if direct != closed {
        return Err(Error::internal(format!(
            "residual character mismatch: direct {direct:?} vs closed {closed:?} \
             at N={n}, (x,y,z,w)=({x},{y},{z},{w})"
        )));
    }
    Ok(closed)
}

/// The two lift constraints and their intersection.
#[derive(Clone, Debug)]
pub struct ConstraintReport {
    pub n: i64,
    /// `x` values with `t̃^N = (I, 1)` (computed by brute force at `y = 0`).
    pub parity_set: Vec<i64>,
    /// `x` values with `2x ≡ 0 (mod N)`.
    pub modular_set: Vec<i64>,
    pub intersection: Vec<i64>,
}

/// Enumerates the constraint sets imposed by `t^N = I` and `(st)³ = s²`
/// on the parameter `x`; their intersection is nonempty iff `N = 2`.
pub fn constraint_report(n: i64) -> Result<ConstraintReport> {
    if !power_of_two(n) {
        return Err(Error::precondition(format!(
            "N must be a power of two >= 2, got {n}"
        )));
    }
    let parity_set: Vec<i64> = (0..n)
        .filter(|&x| power_phase(&lift_t(n, x, 0).expect("valid lift"), n as u64).is_zero())
        .collect();
    let modular_set: Vec<i64> = (0..n).filter(|&x| (2 * x) % n == 0).collect();
    let intersection: Vec<i64> = parity_set
        .iter()
        .copied()
        .filter(|x| modular_set.contains(x))
        .collect();
    Ok(ConstraintReport {
        n,
        parity_set,
        modular_set,
        intersection,
    })
}

/// The reference lifts `t̃_0 = lift_t(N, 0, 0)` and `s̃_0 = lift_s(N, 0, 0)`
/// satisfy `(s̃_0 t̃_0)³ = s̃_0²` exactly.
pub fn reference_identity_holds(n: i64) -> Result<bool> {
    let t0 = lift_t(n, 0, 0)?;
    let s0 = lift_s(n, 0, 0)?;
    let lhs = s0.mul(&t0)?.pow(3);
    let rhs = s0.mul(&s0)?;
    Ok(lhs == rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::double::EndoMap;

    #[test]
    fn lift_value_examples() {
        let t = lift_t(4, 0, 0).unwrap();
        let space = t.space();
        assert_eq!(
            t.lam().value(space.rank_of(&[0, 1])),
            Phase::new(1, 8).unwrap()
        );
        let s = lift_s(4, 0, 0).unwrap();
        assert_eq!(
            s.lam().value(space.rank_of(&[1, 1])),
            Phase::new(3, 4).unwrap()
        );
        let t21 = lift_t(2, 1, 0).unwrap();
        let sp2 = t21.space();
        assert_eq!(
            t21.lam().value(sp2.rank_of(&[1, 0])),
            Phase::new(1, 2).unwrap()
        );
    }

    #[test]
    fn lifts_reject_non_powers_of_two() {
        assert!(matches!(lift_t(6, 0, 0), Err(Error::Precondition(_))));
        assert!(matches!(lift_s(1, 0, 0), Err(Error::Precondition(_))));
        assert!(matches!(constraint_report(12), Err(Error::Precondition(_))));
    }

    #[test]
    fn power_phase_examples() {
        // t̃^4 for (x, y) = (0, 0): table (−1)^p
        let t = lift_t(4, 0, 0).unwrap();
        let space = Arc::clone(t.space());
        let p4 = power_phase(&t, 4);
        for r in 0..space.size() {
            let c = space.coords_of(r);
            assert_eq!(p4.value(r), Phase::new(c[1], 2).unwrap());
        }
        // x = 1 kills the power
        let t10 = lift_t(4, 1, 0).unwrap();
        assert!(power_phase(&t10, 4).is_zero());
        assert_eq!(t10.pow(4).map(), &EndoMap::identity(&space));
        // first power is the lift itself
        assert_eq!(&power_phase(&t10, 1), t10.lam());
    }

    #[test]
    fn parity_sweeps() {
        for n in [2i64, 4, 8] {
            let rep = parity_constraint_check(n).unwrap();
            assert_eq!(rep.pairs_checked, (n * n) as u64);
            assert!(rep.holds(), "parity sweep failed at N = {n}");
        }
        // N = 4: exactly the 8 pairs with x odd give the identity
        let n = 4;
        let mut identity_pairs = 0;
        for x in 0..n {
            for y in 0..n {
                let t = lift_t(n, x, y).unwrap();
                if power_phase(&t, n as u64).is_zero() {
                    identity_pairs += 1;
                    assert_eq!(x % 2, 1);
                }
            }
        }
        assert_eq!(identity_pairs, 8);
    }

    #[test]
    fn reference_identity() {
        for n in [2i64, 4, 8] {
            assert!(reference_identity_holds(n).unwrap());
        }
    }

    #[test]
    fn residual_character_examples() {
        assert_eq!(residual_character(4, 1, 0, 0, 0).unwrap(), [0, 2]);
        assert_eq!(residual_character(4, 0, 0, 0, 0).unwrap(), [0, 0]);
        // first component does not involve x: (−z−w−2y) mod N
        let expected = (-2i64 - 3 - 2).rem_euclid(4);
        for x in 0..4 {
            assert_eq!(residual_character(4, x, 1, 2, 3).unwrap()[0], expected);
        }
    }

    #[test]
    fn residual_character_full_sweep_n4() {
        for x in 0..4 {
            for y in 0..4 {
                for z in 0..4 {
                    for w in 0..4 {
                        // closed form vs direct product asserted inside
                        residual_character(4, x, y, z, w).unwrap();
                    }
                }
            }
        }
    }

    #[test]
    fn constraint_sets() {
        let r2 = constraint_report(2).unwrap();
        assert_eq!(r2.parity_set, vec![1]);
        assert_eq!(r2.modular_set, vec![0, 1]);
        assert_eq!(r2.intersection, vec![1]);

        let r4 = constraint_report(4).unwrap();
        assert_eq!(r4.parity_set, vec![1, 3]);
        assert_eq!(r4.modular_set, vec![0, 2]);
        assert!(r4.intersection.is_empty());

        let r8 = constraint_report(8).unwrap();
        assert_eq!(r8.parity_set, vec![1, 3, 5, 7]);
        assert_eq!(r8.modular_set, vec![0, 4]);
        assert!(r8.intersection.is_empty());
    }
}
