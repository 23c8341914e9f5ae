//! Floating-point cross-check: the exact `beta`/`omega` tables against
//! actual Weyl operator matrices on ℂ\[A\].
//!
//! `X_a |b⟩ = |a+b⟩`, `Z_χ |b⟩ = e^{2πi χ(b)} |b⟩`, `W_u = X_a Z_χ`. The
//! checked relations are `W_u W_v = e^{2πi beta(u,v)} W_{u+v}` and
//! `W_u W_v = e^{2πi omega(u,v)} W_v W_u`, to a 1e-12 max-norm tolerance:
//! all compared entries are products of exactly representable roots of
//! unity, so observed error is rounding only.

use std::f64::consts::TAU;
use std::sync::Arc;

use num_complex::Complex64;

use crate::double::DoubleSpace;
use crate::error::{Error, Result};
use crate::phase::Phase;

/// Maximum `|A|` for matrix construction.
pub const MAX_DIMENSION: u64 = 16;
pub const TOLERANCE: f64 = 1e-12;

fn unit(p: Phase) -> Complex64 {
    Complex64::from_polar(1.0, TAU * p.turns())
}

/// A dense unitary on ℂ\[A\]; unitarity is validated at construction.
#[derive(Clone, Debug)]
pub struct DenseUnitary {
    dim: usize,
    entries: Vec<Complex64>,
}

impl DenseUnitary {
    pub fn new(dim: usize, entries: Vec<Complex64>) -> Result<DenseUnitary> {
        if entries.len() != dim * dim {
            return Err(Error::mismatch(format!(
                "expected {} entries, got {}",
                dim * dim,
                entries.len()
            )));
        }
        let u = DenseUnitary { dim, entries };
        let dev = u.unitarity_deviation();
        if dev >= TOLERANCE {
            return Err(Error::validation(format!(
                "matrix is not unitary: max deviation {dev:e}"
            )));
        }
        Ok(u)
    }

    pub fn identity(dim: usize) -> DenseUnitary {
        let mut entries = vec![Complex64::new(0.0, 0.0); dim * dim];
        for i in 0..dim {
            entries[i * dim + i] = Complex64::new(1.0, 0.0);
        }
        DenseUnitary { dim, entries }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entry(&self, i: usize, j: usize) -> Complex64 {
        self.entries[i * self.dim + j]
    }

    pub fn mul(&self, other: &DenseUnitary) -> DenseUnitary {
        let n = self.dim;
        let mut entries = vec![Complex64::new(0.0, 0.0); n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.entries[i * n + k];
                if a.norm_sqr() == 0.0 {
                    continue;
                }
                for j in 0..n {
                    entries[i * n + j] += a * other.entries[k * n + j];
                }
            }
        }
        DenseUnitary { dim: n, entries }
    }

    pub fn scaled(&self, z: Complex64) -> DenseUnitary {
        DenseUnitary {
            dim: self.dim,
            entries: self.entries.iter().map(|&e| z * e).collect(),
        }
    }

    /// Max-norm of the entrywise difference.
    pub fn distance(&self, other: &DenseUnitary) -> f64 {
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    fn unitarity_deviation(&self) -> f64 {
        let n = self.dim;
        let mut worst: f64 = 0.0;
        for i in 0..n {
            for j in 0..n {
                let mut acc = Complex64::new(0.0, 0.0);
                for k in 0..n {
                    acc += self.entries[i * n + k] * self.entries[j * n + k].conj();
                }
                let expect = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((acc - Complex64::new(expect, 0.0)).norm());
            }
        }
        worst
    }
}

/// The Weyl operator `W_u = X_{a_u} Z_{chi_u}` as a matrix in the basis
/// `{|b⟩ : b ∈ A}`; entries are roots of unity or zero.
pub fn weyl_matrix(space: &Arc<DoubleSpace>, u: u64) -> Result<DenseUnitary> {
    let a = space.base();
    if a.size() > MAX_DIMENSION {
        return Err(Error::resource(
            "weyl-matrix",
            format!("|A| = {} exceeds the budget of {MAX_DIMENSION}", a.size()),
        ));
    }
    let n = a.size() as usize;
    let coords = space.coords_of(u);
    let m = a.rank();
    let shift = a.elem(&coords[..m])?;
    let chi = a.elem(&coords[m..])?;
    let mut entries = vec![Complex64::new(0.0, 0.0); n * n];
    for b in a.elements() {
        let col = a.elem_rank(&b) as usize;
        let row = a.elem_rank(&shift.add(&b)?) as usize;
        let val = crate::group::pairing(&chi, &b)?;
        entries[row * n + col] = unit(val);
    }
    DenseUnitary::new(n, entries)
}

/// Worst-case deviations over all `|V|²` pairs.
#[derive(Clone, Copy, Debug)]
pub struct WeylReport {
    pub pairs_checked: u64,
    /// `max ‖W_u W_v − e^{2πi beta(u,v)} W_{u+v}‖`
    pub worst_product_deviation: f64,
    /// `max ‖W_u W_v − e^{2πi omega(u,v)} W_v W_u‖`
    pub worst_commutation_deviation: f64,
}

impl WeylReport {
    pub fn passes(&self) -> bool {
        self.worst_product_deviation < TOLERANCE && self.worst_commutation_deviation < TOLERANCE
    }
}

/// Checks both displayed relations for every ordered pair of `V`-elements.
pub fn check_weyl_relations(space: &Arc<DoubleSpace>) -> Result<WeylReport> {
    let n = space.size();
    let mats: Vec<DenseUnitary> = (0..n).map(|u| weyl_matrix(space, u)).collect::<Result<_>>()?;
    let mut worst_product: f64 = 0.0;
    let mut worst_comm: f64 = 0.0;
    for u in 0..n {
        for v in 0..n {
            let prod = mats[u as usize].mul(&mats[v as usize]);
            let expected =
                mats[space.add_rank(u, v) as usize].scaled(unit(space.beta_rank(u, v)));
            worst_product = worst_product.max(prod.distance(&expected));
            let swapped = mats[v as usize]
                .mul(&mats[u as usize])
                .scaled(unit(space.omega_rank(u, v)));
            worst_comm = worst_comm.max(prod.distance(&swapped));
        }
    }
    Ok(WeylReport {
        pairs_checked: n * n,
        worst_product_deviation: worst_product,
        worst_commutation_deviation: worst_comm,
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
    fn weyl_matrix_examples() {
        let v = space_of(&[2]);
        // u = 0: identity
        let w0 = weyl_matrix(&v, 0).unwrap();
        assert!(w0.distance(&DenseUnitary::identity(2)) < TOLERANCE);
        // u = (1, 0): the swap
        let wx = weyl_matrix(&v, v.rank_of(&[1, 0])).unwrap();
        assert!((wx.entry(0, 1).re - 1.0).abs() < TOLERANCE);
        assert!((wx.entry(1, 0).re - 1.0).abs() < TOLERANCE);
        assert!(wx.entry(0, 0).norm() < TOLERANCE);
        // u = (0, 1): diag(1, -1)
        let wz = weyl_matrix(&v, v.rank_of(&[0, 1])).unwrap();
        assert!((wz.entry(0, 0).re - 1.0).abs() < TOLERANCE);
        assert!((wz.entry(1, 1).re + 1.0).abs() < TOLERANCE);
    }

    #[test]
    fn relations_hold_for_small_groups() {
        for orders in [vec![2], vec![3], vec![4], vec![2, 2], vec![6], vec![8], vec![4, 2]] {
            let v = space_of(&orders);
            let rep = check_weyl_relations(&v).unwrap();
            assert_eq!(rep.pairs_checked, v.size() * v.size());
            assert!(rep.passes(), "deviation too large for {orders:?}: {rep:?}");
        }
    }

    #[test]
    fn zero_pair_has_zero_deviation() {
        let v = space_of(&[2]);
        let w0 = weyl_matrix(&v, 0).unwrap();
        let prod = w0.mul(&w0);
        assert_eq!(prod.distance(&w0), 0.0);
    }

    #[test]
    fn dimension_budget() {
        let v = space_of(&[32]);
        assert!(matches!(
            weyl_matrix(&v, 0),
            Err(Error::Resource { .. })
        ));
    }
}
