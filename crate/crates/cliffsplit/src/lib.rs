//! Exact splitting analysis for Clifford extensions of finite abelian groups.
//!
//! For a finite abelian group `A`, the double `V_A = A ⊕ Â` carries a
//! canonical symplectic form, and the projective Clifford group `C(A)` sits
//! in an extension `1 → V_A → C(A) → Sp(V_A) → 1`. This crate models `C(A)`
//! exactly — as pairs `(T, λ)` of a symplectic map and a ℚ/ℤ-valued phase
//! function — and decides, by explicit construction or exhaustive
//! refutation, whether the extension splits. Splitting verdicts come from
//! two independent oracles (a modular coboundary solver and a complement
//! search) and are compared against the divisibility criterion `4 ∤ |A|`.
//!
//! Entry points:
//! - [`group::parse_group_spec`] / [`group::FinAbGroup`] — groups.
//! - [`double::enumerate_sp`] — the symplectic group of the double.
//! - [`clifford`] — the pair model, lifts, and sections.
//! - [`obstruction::split_check`] — the full splitting pipeline.
//! - [`report::run_roster`] — the reproduction run over a group roster.
//!
//! Runnable walkthroughs for each capability live in `examples/`.

pub mod bichar;
pub mod clifford;
pub mod cyclic_two;
pub mod decompose;
pub mod double;
pub mod error;
pub mod group;
pub mod howell;
pub mod obstruction;
pub mod phase;
pub mod report;
pub mod weyl;

pub use error::{Error, Result};
pub use group::{parse_group_spec, FinAbGroup, GroupElem};
pub use phase::Phase;
