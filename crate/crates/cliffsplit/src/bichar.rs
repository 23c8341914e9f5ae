//! Bicharacters of `V`: functions `V × V → ℚ/ℤ` additive in each slot,
//! stored by their generator-pairing matrix and extended bilinearly. The
//! antisymmetrization map `𝒜(B)(u, v) = B(u, v) − B(v, u)` sends the
//! bicharacter lattice onto the alternating forms with the symmetric forms
//! as kernel; `tambara_check` verifies that exactness by enumeration.

use std::collections::HashSet;
use std::sync::Arc;

use num_integer::Integer;

use crate::double::DoubleSpace;
use crate::error::{Error, Result};
use crate::phase::Phase;

/// A bicharacter, determined by `b_ij = B(g_i, g_j)` on generator pairs.
/// Entry `(i, j)` must be killed by both `d_i` and `d_j`, i.e. its order
/// divides `gcd(d_i, d_j)`; that is exactly the condition for the bilinear
/// extension to be well defined.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Bicharacter {
    dim: usize,
    gen_matrix: Vec<Phase>,
}

impl Bicharacter {
    pub fn new(space: &DoubleSpace, gen_matrix: Vec<Phase>) -> Result<Bicharacter> {
        let dim = space.dim();
        if gen_matrix.len() != dim * dim {
            return Err(Error::mismatch(format!(
                "expected {} generator pairings, got {}",
                dim * dim,
                gen_matrix.len()
            )));
        }
        for i in 0..dim {
            for j in 0..dim {
                let g = space.moduli()[i].gcd(&space.moduli()[j]);
                let b = gen_matrix[i * dim + j];
                if g % b.order() != 0 {
                    return Err(Error::validation(format!(
                        "pairing ({i}, {j}) = {b} has order {} not dividing gcd {g}",
                        b.order()
                    )));
                }
            }
        }
        Ok(Bicharacter { dim, gen_matrix })
    }

    pub fn zero(space: &DoubleSpace) -> Bicharacter {
        Bicharacter {
            dim: space.dim(),
            gen_matrix: vec![Phase::ZERO; space.dim() * space.dim()],
        }
    }

    pub fn generator_matrix(&self) -> &[Phase] {
        &self.gen_matrix
    }

    /// Bilinear evaluation at coordinate vectors.
    pub fn eval(&self, u: &[i64], v: &[i64]) -> Phase {
        let mut acc = Phase::ZERO;
        for i in 0..self.dim {
            if u[i] == 0 {
                continue;
            }
            for j in 0..self.dim {
                if v[j] != 0 {
                    acc = acc + self.gen_matrix[i * self.dim + j].scaled(u[i] * v[j]);
                }
            }
        }
        acc
    }

    pub fn eval_rank(&self, space: &DoubleSpace, u: u64, v: u64) -> Phase {
        self.eval(&space.coords_of(u), &space.coords_of(v))
    }

    /// Materializes the full `|V| × |V|` value table.
    pub fn full_table(&self, space: &DoubleSpace) -> Vec<Phase> {
        let n = space.size();
        let mut out = Vec::with_capacity((n * n) as usize);
        for u in 0..n {
            for v in 0..n {
                out.push(self.eval_rank(space, u, v));
            }
        }
        out
    }

    /// `𝒜(B)(u, v) = B(u, v) − B(v, u)`; the result is alternating.
    pub fn antisymmetrize(&self) -> Bicharacter {
        let dim = self.dim;
        let gen_matrix = (0..dim * dim)
            .map(|k| {
                let (i, j) = (k / dim, k % dim);
                self.gen_matrix[i * dim + j] - self.gen_matrix[j * dim + i]
            })
            .collect();
        Bicharacter { dim, gen_matrix }
    }

    pub fn is_symmetric(&self) -> bool {
        let dim = self.dim;
        (0..dim).all(|i| (0..dim).all(|j| self.gen_matrix[i * dim + j] == self.gen_matrix[j * dim + i]))
    }

    /// `B(u, u) = 0` for all `u`, checked on the full element enumeration.
    pub fn is_alternating(&self, space: &DoubleSpace) -> bool {
        (0..space.size()).all(|u| self.eval_rank(space, u, u).is_zero())
    }

    /// Biadditivity of the induced table in both slots, checked
    /// exhaustively.
    pub fn is_biadditive(&self, space: &DoubleSpace) -> bool {
        let n = space.size();
        for u in 0..n {
            for v in 0..n {
                for w in 0..n {
                    let uv = space.add_rank(u, v);
                    if self.eval_rank(space, uv, w)
                        != self.eval_rank(space, u, w) + self.eval_rank(space, v, w)
                        || self.eval_rank(space, w, uv)
                            != self.eval_rank(space, w, u) + self.eval_rank(space, w, v)
                    {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// The Heisenberg cocycle `beta` as a bicharacter.
pub fn beta_bicharacter(space: &Arc<DoubleSpace>) -> Bicharacter {
    let dim = space.dim();
    let mut gens: Vec<Vec<i64>> = Vec::with_capacity(dim);
    for i in 0..dim {
        let mut c = vec![0i64; dim];
        c[i] = 1 % space.moduli()[i];
        gens.push(c);
    }
    let gen_matrix = (0..dim * dim)
        .map(|k| space.beta(&gens[k / dim], &gens[k % dim]))
        .collect();
    Bicharacter {
        dim,
        gen_matrix,
    }
}

/// The symplectic form `omega` as a bicharacter.
pub fn omega_bicharacter(space: &Arc<DoubleSpace>) -> Bicharacter {
    beta_bicharacter(space).antisymmetrize()
}

/// Exactness report for `1 → Sym(V) → Bil(V) → Alt(V) → 1`.
#[derive(Clone, Debug)]
pub struct TambaraReport {
    pub bil_count: u64,
    pub sym_count: u64,
    pub alt_count: u64,
    /// image of the antisymmetrization equals the alternating forms
    pub surjective_onto_alt: bool,
    /// kernel of the antisymmetrization equals the symmetric forms
    pub kernel_is_sym: bool,
    /// `|Bil| = |Sym| · |Alt|`
    pub counts_multiply: bool,
}

impl TambaraReport {
    pub fn exact(&self) -> bool {
        self.surjective_onto_alt && self.kernel_is_sym && self.counts_multiply
    }
}

/// Enumerates every bicharacter of `V` through generator-pairing matrices
/// and verifies the exact sequence. The enumeration size is
/// `∏_{i,j} gcd(d_i, d_j)`; exceeding `max_bil` is a resource error.
pub fn tambara_check(space: &Arc<DoubleSpace>, max_bil: u64) -> Result<TambaraReport> {
    let dim = space.dim();
    let mut radices = Vec::with_capacity(dim * dim);
    let mut total: u128 = 1;
    for i in 0..dim {
        for j in 0..dim {
            let g = space.moduli()[i].gcd(&space.moduli()[j]);
            radices.push(g);
            total *= g as u128;
        }
    }
    if total > max_bil as u128 {
        return Err(Error::resource(
            "tambara-check",
            format!("|Bil| = {total} exceeds the budget of {max_bil}"),
        ));
    }
    let total = total as u64;
    let mut sym: HashSet<Vec<Phase>> = HashSet::new();
    let mut alt: HashSet<Vec<Phase>> = HashSet::new();
    let mut image: HashSet<Vec<Phase>> = HashSet::new();
    let mut kernel: HashSet<Vec<Phase>> = HashSet::new();
    for mut code in 0..total {
        let entries: Vec<Phase> = radices
            .iter()
            .map(|&g| {
                let k = (code % g as u64) as i64;
                code /= g as u64;
                Phase::new(k, g).expect("positive denominator")
            })
            .collect();
        let b = Bicharacter::new(space, entries)?;
        let anti = b.antisymmetrize();
        if b.is_symmetric() {
            sym.insert(b.gen_matrix.clone());
        }
        if b.is_alternating(space) {
            alt.insert(b.gen_matrix.clone());
        }
        if anti.gen_matrix.iter().all(Phase::is_zero) {
            kernel.insert(b.gen_matrix.clone());
        }
        image.insert(anti.gen_matrix);
    }
    // compare images through the value tables they induce (two generator
    // matrices can induce the same form only if they are equal, since the
    // matrix is the table restricted to generator pairs)
    let surjective_onto_alt = image == alt;
    let kernel_is_sym = kernel == sym;
    Ok(TambaraReport {
        bil_count: total,
        sym_count: sym.len() as u64,
        alt_count: alt.len() as u64,
        surjective_onto_alt,
        kernel_is_sym,
        counts_multiply: total == sym.len() as u64 * alt.len() as u64,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::FinAbGroup;

    fn space_of(orders: &[i64]) -> Arc<DoubleSpace> {
        Arc::new(DoubleSpace::new(FinAbGroup::new(orders).unwrap()))
    }

    #[test]
    fn antisymmetrized_beta_is_omega() {
        for orders in [vec![2], vec![3], vec![4], vec![2, 2], vec![6]] {
            let space = space_of(&orders);
            let omega = omega_bicharacter(&space);
            for u in 0..space.size() {
                for v in 0..space.size() {
                    assert_eq!(omega.eval_rank(&space, u, v), space.omega_rank(u, v));
                }
            }
            assert!(omega.is_alternating(&space));
        }
    }

    #[test]
    fn beta_is_biadditive() {
        for orders in [vec![2], vec![4], vec![2, 2]] {
            let space = space_of(&orders);
            assert!(beta_bicharacter(&space).is_biadditive(&space));
        }
    }

    #[test]
    fn symmetric_forms_antisymmetrize_to_zero() {
        let space = space_of(&[3]);
        let dim = space.dim();
        // a symmetric matrix: b_ij = 1/3 everywhere
        let b = Bicharacter::new(
            &space,
            vec![Phase::new(1, 3).unwrap(); dim * dim],
        )
        .unwrap();
        assert!(b.is_symmetric());
        let anti = b.antisymmetrize();
        assert!(anti.generator_matrix().iter().all(Phase::is_zero));
    }

    #[test]
    fn alternating_forms_antisymmetrize_to_double() {
        let space = space_of(&[3]);
        let omega = omega_bicharacter(&space);
        assert!(omega.is_alternating(&space));
        let doubled = omega.antisymmetrize();
        for u in 0..space.size() {
            for v in 0..space.size() {
                assert_eq!(
                    doubled.eval_rank(&space, u, v),
                    omega.eval_rank(&space, u, v).scaled(2)
                );
            }
        }
    }

    #[test]
    fn invalid_generator_matrix_rejected() {
        let space = space_of(&[2]);
        let dim = space.dim();
        let mut m = vec![Phase::ZERO; dim * dim];
        m[0] = Phase::new(1, 3).unwrap();
        assert!(Bicharacter::new(&space, m).is_err());
    }

    #[test]
    fn tambara_z2_squared() {
        let space = space_of(&[2]);
        let rep = tambara_check(&space, 1 << 20).unwrap();
        assert_eq!(rep.bil_count, 16);
        assert_eq!(rep.sym_count, 8);
        assert_eq!(rep.alt_count, 2);
        assert!(rep.exact());
    }

    #[test]
    fn tambara_z3_squared() {
        let space = space_of(&[3]);
        let rep = tambara_check(&space, 1 << 20).unwrap();
        assert_eq!(rep.bil_count, 81);
        assert_eq!(rep.sym_count, 27);
        assert_eq!(rep.alt_count, 3);
        assert!(rep.exact());
    }

    #[test]
    fn tambara_trivial() {
        let space = space_of(&[1]);
        let rep = tambara_check(&space, 1 << 20).unwrap();
        assert_eq!((rep.bil_count, rep.sym_count, rep.alt_count), (1, 1, 1));
        assert!(rep.exact());
    }

    #[test]
    fn tambara_budget() {
        let space = space_of(&[8, 8]);
        assert!(matches!(
            tambara_check(&space, 1 << 10),
            Err(Error::Resource { .. })
        ));
    }
}
