//! Finite abelian groups in factor form, their elements, and the fixed
//! identification with the Pontryagin dual.
//!
//! A group is a list of cyclic factor orders `d_1 >= d_2 >= ... >= d_m`.
//! Elements are coordinate vectors reduced mod the factor orders. The dual
//! is identified with the group itself through the pairing
//! `chi(a) = sum_i chi_i * a_i / d_i` in ℚ/ℤ, so dual elements reuse
//! `GroupElem` of the same parent group.

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::phase::Phase;

/// A finite abelian group `Z_{d_1} ⊕ ... ⊕ Z_{d_m}` with `d_i >= 1`
/// sorted descending. The trivial group is `orders = [1]`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct FinAbGroup {
    orders: Vec<i64>,
    exponent: i64,
    size: u64,
}

impl FinAbGroup {
    /// Builds a group from cyclic factor orders. An empty list yields the
    /// trivial group; non-positive entries are rejected.
    pub fn new(orders: &[i64]) -> Result<FinAbGroup> {
        for &d in orders {
            if d < 1 {
                return Err(Error::validation(format!(
                    "cyclic factor order must be >= 1, got {d}"
                )));
            }
        }
        let mut orders: Vec<i64> = orders.to_vec();
        orders.sort_unstable_by(|a, b| b.cmp(a));
        if orders.is_empty() {
            orders.push(1);
        }
        let exponent = orders.iter().fold(1i64, |acc, &d| acc.lcm(&d));
        let size = orders.iter().map(|&d| d as u64).product();
        Ok(FinAbGroup {
            orders,
            exponent,
            size,
        })
    }

    pub fn trivial() -> FinAbGroup {
        FinAbGroup {
            orders: vec![1],
            exponent: 1,
            size: 1,
        }
    }

    pub fn orders(&self) -> &[i64] {
        &self.orders
    }

    /// Number of cyclic factors.
    pub fn rank(&self) -> usize {
        self.orders.len()
    }

    pub fn size(&self) -> u64 {
        self.size
    }

    pub fn exponent(&self) -> i64 {
        self.exponent
    }

    pub fn is_trivial(&self) -> bool {
        self.size == 1
    }

    pub fn zero(&self) -> GroupElem {
        GroupElem {
            group: self.clone(),
            coords: vec![0; self.orders.len()],
        }
    }

    /// Element from raw coordinates, canonically reduced.
    pub fn elem(&self, coords: &[i64]) -> Result<GroupElem> {
        if coords.len() != self.orders.len() {
            return Err(Error::mismatch(format!(
                "expected {} coordinates, got {}",
                self.orders.len(),
                coords.len()
            )));
        }
        let coords = coords
            .iter()
            .zip(&self.orders)
            .map(|(&c, &d)| c.rem_euclid(d))
            .collect();
        Ok(GroupElem {
            group: self.clone(),
            coords,
        })
    }

    /// The `i`-th standard generator.
    pub fn generator(&self, i: usize) -> GroupElem {
        let mut coords = vec![0; self.orders.len()];
        coords[i] = 1 % self.orders[i];
        GroupElem {
            group: self.clone(),
            coords,
        }
    }

    /// All elements in mixed-radix order (rank 0 is the zero element).
    pub fn elements(&self) -> impl Iterator<Item = GroupElem> + '_ {
        (0..self.size).map(|r| self.unrank(r))
    }

    /// Mixed-radix rank of an element, first coordinate most significant.
    pub fn elem_rank(&self, e: &GroupElem) -> u64 {
        e.coords
            .iter()
            .zip(&self.orders)
            .fold(0u64, |acc, (&c, &d)| acc * d as u64 + c as u64)
    }

    pub fn unrank(&self, mut r: u64) -> GroupElem {
        let mut coords = vec![0i64; self.orders.len()];
        for i in (0..self.orders.len()).rev() {
            let d = self.orders[i] as u64;
            coords[i] = (r % d) as i64;
            r /= d;
        }
        GroupElem {
            group: self.clone(),
            coords,
        }
    }

    /// Reconstructs a dual element from its pairing values on the standard
    /// generators. Errors when some value cannot pair against the generator
    /// order (which means the values are not realized by any character).
    pub fn dual_from_generator_values(&self, values: &[Phase]) -> Result<GroupElem> {
        if values.len() != self.orders.len() {
            return Err(Error::mismatch(format!(
                "expected {} generator values, got {}",
                self.orders.len(),
                values.len()
            )));
        }
        let mut coords = Vec::with_capacity(values.len());
        for (v, &d) in values.iter().zip(&self.orders) {
            if d % v.den() != 0 {
                return Err(Error::validation(format!(
                    "value {v} has order {} not dividing the generator order {d}",
                    v.den()
                )));
            }
            coords.push(v.num() * (d / v.den()));
        }
        self.elem(&coords)
    }
}

impl std::fmt::Display for FinAbGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.orders.iter().map(|d| format!("Z{d}")).collect();
        write!(f, "{}", parts.join("x"))
    }
}

/// An element of a `FinAbGroup`, always in canonical coordinates.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct GroupElem {
    group: FinAbGroup,
    coords: Vec<i64>,
}

impl GroupElem {
    pub fn group(&self) -> &FinAbGroup {
        &self.group
    }

    pub fn coords(&self) -> &[i64] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    fn check_same_group(&self, other: &GroupElem) -> Result<()> {
        if self.group != other.group {
            return Err(Error::mismatch(format!(
                "elements of {} and {} cannot be combined",
                self.group, other.group
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &GroupElem) -> Result<GroupElem> {
        self.check_same_group(other)?;
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .zip(self.group.orders())
            .map(|((&a, &b), &d)| (a + b).rem_euclid(d))
            .collect();
        Ok(GroupElem {
            group: self.group.clone(),
            coords,
        })
    }

    pub fn neg(&self) -> GroupElem {
        let coords = self
            .coords
            .iter()
            .zip(self.group.orders())
            .map(|(&a, &d)| (-a).rem_euclid(d))
            .collect();
        GroupElem {
            group: self.group.clone(),
            coords,
        }
    }

    pub fn scaled(&self, n: i64) -> GroupElem {
        let coords = self
            .coords
            .iter()
            .zip(self.group.orders())
            .map(|(&a, &d)| (a as i128 * n as i128).rem_euclid(d as i128) as i64)
            .collect();
        GroupElem {
            group: self.group.clone(),
            coords,
        }
    }

    pub fn sub(&self, other: &GroupElem) -> Result<GroupElem> {
        self.add(&other.neg())
    }

    /// Additive order of the element.
    pub fn order(&self) -> i64 {
        self.coords
            .iter()
            .zip(self.group.orders())
            .fold(1i64, |acc, (&a, &d)| acc.lcm(&(d / d.gcd(&a))))
    }
}

/// Pairing of a dual element against a group element:
/// `chi(a) = sum_i chi_i * a_i / d_i` in ℚ/ℤ.
pub fn pairing(chi: &GroupElem, a: &GroupElem) -> Result<Phase> {
    if chi.group() != a.group() {
        return Err(Error::mismatch(
            "pairing requires matching factor orders".to_string(),
        ));
    }
    let mut acc = Phase::ZERO;
    for ((&c, &x), &d) in chi
        .coords()
        .iter()
        .zip(a.coords())
        .zip(a.group().orders())
    {
        acc = acc + Phase::new(c * x, d)?;
    }
    Ok(acc)
}

/// Parses the group-spec grammar: `Z<d>` factors joined by `x`,
/// case-insensitive, whitespace ignored. Errors carry a byte offset.
pub fn parse_group_spec(text: &str) -> Result<FinAbGroup> {
    let bytes = text.as_bytes();
    let mut orders = Vec::new();
    let mut i = 0usize;
    let skip_ws = |i: &mut usize| {
        while *i < bytes.len() && bytes[*i].is_ascii_whitespace() {
            *i += 1;
        }
    };
    skip_ws(&mut i);
    if i == bytes.len() {
        return Err(Error::Parse {
            offset: i,
            msg: "empty group spec".to_string(),
        });
    }
    loop {
        skip_ws(&mut i);
        let factor_start = i;
        if i >= bytes.len() || !bytes[i].eq_ignore_ascii_case(&b'Z') {
            return Err(Error::Parse {
                offset: i,
                msg: "expected 'Z'".to_string(),
            });
        }
        i += 1;
        let digits_start = i;
        while i < bytes.len() && bytes[i].is_ascii_digit() {
            i += 1;
        }
        if i == digits_start {
            return Err(Error::Parse {
                offset: i,
                msg: "expected a cyclic order after 'Z'".to_string(),
            });
        }
        let order: i64 = text[digits_start..i].parse().map_err(|_| Error::Parse {
            offset: digits_start,
            msg: "cyclic order out of range".to_string(),
        })?;
        if order < 1 {
            return Err(Error::Parse {
                offset: factor_start,
                msg: format!("cyclic order must be >= 1, got {order}"),
            });
        }
        orders.push(order);
        skip_ws(&mut i);
        if i == bytes.len() {
            break;
        }
        if !bytes[i].eq_ignore_ascii_case(&b'x') {
            return Err(Error::Parse {
                offset: i,
                msg: "expected 'x' between factors".to_string(),
            });
        }
        i += 1;
    }
    FinAbGroup::new(&orders)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn make_group_examples() {
        let g = FinAbGroup::new(&[4, 2]).unwrap();
        assert_eq!(g.size(), 8);
        assert_eq!(g.exponent(), 4);
        let g = FinAbGroup::new(&[2]).unwrap();
        assert_eq!((g.size(), g.exponent()), (2, 2));
        let g = FinAbGroup::new(&[3, 3]).unwrap();
        assert_eq!((g.size(), g.exponent()), (9, 3));
        let g = FinAbGroup::new(&[]).unwrap();
        assert_eq!(g.orders(), &[1]);
        assert!(g.is_trivial());
        assert!(FinAbGroup::new(&[0]).is_err());
        assert!(FinAbGroup::new(&[-2]).is_err());
        // orders sorted descending
        let g = FinAbGroup::new(&[2, 4]).unwrap();
        assert_eq!(g.orders(), &[4, 2]);
    }

    #[test]
    fn elem_arithmetic_in_z4_z2() {
        let g = FinAbGroup::new(&[4, 2]).unwrap();
        let a = g.elem(&[3, 1]).unwrap();
        let b = g.elem(&[2, 1]).unwrap();
        assert_eq!(a.add(&b).unwrap().coords(), &[1, 0]);
        assert_eq!(g.elem(&[1, 1]).unwrap().neg().coords(), &[3, 1]);
        assert_eq!(g.elem(&[1, 1]).unwrap().scaled(2).coords(), &[2, 0]);
        let h = FinAbGroup::new(&[4]).unwrap();
        assert!(a.add(&h.elem(&[1]).unwrap()).is_err());
    }

    #[test]
    fn enumeration_is_closed_and_complete() {
        for orders in [vec![1], vec![2], vec![4, 2], vec![3, 3], vec![8], vec![2, 2, 2]] {
            let g = FinAbGroup::new(&orders).unwrap();
            let elems: Vec<GroupElem> = g.elements().collect();
            assert_eq!(elems.len() as u64, g.size());
            let set: HashSet<&GroupElem> = elems.iter().collect();
            assert_eq!(set.len() as u64, g.size());
            for (r, e) in elems.iter().enumerate() {
                assert_eq!(g.elem_rank(e), r as u64);
            }
            // closure under add and neg, spot-checked on all pairs for small sizes
            if g.size() <= 64 {
                for a in &elems {
                    assert!(set.contains(&a.neg()));
                    for b in &elems {
                        assert!(set.contains(&a.add(b).unwrap()));
                    }
                }
            }
        }
    }

    #[test]
    fn scalar_kills_element_iff_order_divides() {
        let g = FinAbGroup::new(&[4, 2]).unwrap();
        for e in g.elements() {
            let q = e.order();
            assert!(e.scaled(q).is_zero());
            for n in 1..=8 {
                assert_eq!(e.scaled(n).is_zero(), n % q == 0);
            }
        }
    }

    #[test]
    fn pairing_examples() {
        let z2 = FinAbGroup::new(&[2]).unwrap();
        let p = pairing(&z2.elem(&[1]).unwrap(), &z2.elem(&[1]).unwrap()).unwrap();
        assert_eq!(p, Phase::new(1, 2).unwrap());

        let z4 = FinAbGroup::new(&[4]).unwrap();
        let p = pairing(&z4.elem(&[1]).unwrap(), &z4.elem(&[2]).unwrap()).unwrap();
        assert_eq!(p, Phase::new(1, 2).unwrap());

        let z33 = FinAbGroup::new(&[3, 3]).unwrap();
        let p = pairing(&z33.elem(&[1, 2]).unwrap(), &z33.elem(&[1, 1]).unwrap()).unwrap();
        assert_eq!(p, Phase::ZERO);

        assert!(pairing(&z2.elem(&[1]).unwrap(), &z4.elem(&[1]).unwrap()).is_err());
    }

    #[test]
    fn pairing_bilinear_and_nondegenerate_small() {
        for orders in [vec![2], vec![4], vec![2, 2], vec![4, 2], vec![3, 3], vec![16]] {
            let g = FinAbGroup::new(&orders).unwrap();
            if g.size() > 16 {
                continue;
            }
            let elems: Vec<GroupElem> = g.elements().collect();
            for chi in &elems {
                for a in &elems {
                    for b in &elems {
                        let lhs = pairing(chi, &a.add(b).unwrap()).unwrap();
                        let rhs = pairing(chi, a).unwrap() + pairing(chi, b).unwrap();
                        assert_eq!(lhs, rhs);
                        let lhs = pairing(&chi.add(a).unwrap(), b).unwrap();
                        let rhs = pairing(chi, b).unwrap() + pairing(a, b).unwrap();
                        assert_eq!(lhs, rhs);
                    }
                }
                if !chi.is_zero() {
                    assert!(
                        elems.iter().any(|a| !pairing(chi, a).unwrap().is_zero()),
                        "pairing degenerate at {chi:?}"
                    );
                }
            }
        }
    }

    #[test]
    fn dual_reconstruction_round_trip() {
        let g = FinAbGroup::new(&[4, 2]).unwrap();
        for chi in g.elements() {
            let vals: Vec<Phase> = (0..g.rank())
                .map(|i| pairing(&chi, &g.generator(i)).unwrap())
                .collect();
            assert_eq!(g.dual_from_generator_values(&vals).unwrap(), chi);
        }
        // a value of order 3 is not realizable against an order-4 generator
        let bad = vec![Phase::new(1, 3).unwrap(), Phase::ZERO];
        assert!(g.dual_from_generator_values(&bad).is_err());
    }

    #[test]
    fn group_spec_parsing() {
        assert_eq!(parse_group_spec("Z4xZ2").unwrap().orders(), &[4, 2]);
        assert_eq!(parse_group_spec("z2 x z2").unwrap().orders(), &[2, 2]);
        assert_eq!(parse_group_spec(" Z12 ").unwrap().orders(), &[12]);
        match parse_group_spec("Z0") {
            Err(Error::Parse { offset, .. }) => assert_eq!(offset, 0),
            other => panic!("expected parse error, got {other:?}"),
        }
        match parse_group_spec("Z4xQ2") {
            Err(Error::Parse { offset, .. }) => assert_eq!(offset, 3),
            other => panic!("expected parse error, got {other:?}"),
        }
        match parse_group_spec("Zx2") {
            Err(Error::Parse { offset, .. }) => assert_eq!(offset, 1),
            other => panic!("expected parse error, got {other:?}"),
        }
        assert!(parse_group_spec("").is_err());
    }

    #[test]
    fn display_round_trips_through_parser() {
        for orders in [vec![4, 2], vec![3], vec![1], vec![6, 2]] {
            let g = FinAbGroup::new(&orders).unwrap();
            assert_eq!(parse_group_spec(&g.to_string()).unwrap(), g);
        }
    }
}
