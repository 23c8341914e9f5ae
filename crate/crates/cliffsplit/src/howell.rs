//! Streaming strong-echelon elimination over Z_m.
//!
//! Rows arrive one at a time and only reduced pivot rows are retained, so
//! systems whose equation count dwarfs the unknown count never materialize.
//! Pivot leading entries are normalized to divisors of the modulus by unit
//! scaling, and every pivot spawns its annihilator row `(m/g)·row`, which is
//! what makes solvability decisions correct in the presence of zero
//! divisors (the Howell property). Works for any modulus; prime powers are
//! the common case.

use num_integer::Integer;

#[derive(Clone, Debug)]
struct Row {
    coef: Vec<u64>,
    rhs: u64,
}

impl Row {
    fn first_nonzero(&self, from: usize) -> Option<usize> {
        (from..self.coef.len()).find(|&c| self.coef[c] != 0)
    }

    fn scale(&mut self, k: u64, m: u64) {
        for x in &mut self.coef {
            *x = *x * k % m;
        }
        self.rhs = self.rhs * k % m;
    }

    fn sub_scaled(&mut self, other: &Row, k: u64, m: u64) {
        if k == 0 {
            return;
        }
        for (x, &y) in self.coef.iter_mut().zip(&other.coef) {
            *x = (*x + m - k * y % m) % m;
        }
        self.rhs = (self.rhs + m - k * other.rhs % m) % m;
    }
}

/// Finds a unit `u` mod `m` with `u * a ≡ gcd(a, m)`.
fn normalizing_unit(a: u64, m: u64) -> u64 {
    debug_assert!(a != 0 && a < m);
    let g = a.gcd(&m);
    let mg = m / g;
    let base = mod_inverse(a / g % mg, mg);
    let mut u = if base == 0 { 1 } else { base };
    while u.gcd(&m) != 1 {
        u += mg;
        debug_assert!(u < 2 * m);
    }
    u % m
}

fn mod_inverse(a: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let (mut t, mut new_t) = (0i64, 1i64);
    let (mut r, mut new_r) = (m as i64, (a % m) as i64);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    debug_assert_eq!(r, 1, "inverse of non-unit requested");
    t.rem_euclid(m as i64) as u64
}

/// Summary counters for a finished elimination.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SolveStats {
    pub rows_inserted: u64,
    pub rank: usize,
    pub inconsistencies: u64,
}

/// Incremental eliminator holding at most one pivot row per column.
pub struct HowellSolver {
    modulus: u64,
    ncols: usize,
    pivots: Vec<Option<Row>>,
    stats: SolveStats,
    /// rhs value of the first all-zero-coefficient row with nonzero rhs.
    pub first_conflict_rhs: Option<u64>,
}

impl HowellSolver {
    pub fn new(modulus: u64, ncols: usize) -> HowellSolver {
        assert!(modulus >= 1);
        HowellSolver {
            modulus,
            ncols,
            pivots: vec![None; ncols],
            stats: SolveStats::default(),
            first_conflict_rhs: None,
        }
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn stats(&self) -> SolveStats {
        self.stats
    }

    pub fn is_consistent(&self) -> bool {
        self.stats.inconsistencies == 0
    }

    /// Streams one equation `coef · x = rhs (mod m)` into the eliminator.
    pub fn insert(&mut self, coef: Vec<u64>, rhs: u64) {
        assert_eq!(coef.len(), self.ncols);
        let m = self.modulus;
        self.stats.rows_inserted += 1;
        let mut work = vec![Row {
            coef: coef.iter().map(|&x| x % m).collect(),
            rhs: rhs % m,
        }];
        while let Some(mut row) = work.pop() {
            let mut col = 0usize;
            loop {
                let Some(c) = row.first_nonzero(col) else {
                    if row.rhs % m != 0 {
                        self.stats.inconsistencies += 1;
                        self.first_conflict_rhs.get_or_insert(row.rhs % m);
                    }
                    break;
                };
                col = c;
                let a = row.coef[c];
                match &self.pivots[c] {
                    None => {
                        let u = normalizing_unit(a, m);
                        row.scale(u, m);
                        let g = row.coef[c];
                        debug_assert_eq!(g, a.gcd(&m));
                        if m / g > 1 {
                            let mut ann = row.clone();
                            ann.scale(m / g, m);
                            work.push(ann);
                        }
                        self.pivots[c] = Some(row);
                        self.stats.rank += 1;
                        break;
                    }
                    Some(p) => {
                        let g = p.coef[c];
                        if a % g == 0 {
                            let p = self.pivots[c].clone().unwrap();
                            row.sub_scaled(&p, a / g, m);
                        } else {
                            // the incoming row has a smaller gcd at this
                            // column; combine to a new pivot and requeue
                            // the remainders of both rows
                            let d = a.gcd(&g);
                            let (x, y) = bezout(a, g);
                            let mut new_pivot = row.clone();
                            new_pivot.scale(x.rem_euclid(m as i64) as u64, m);
                            let old = self.pivots[c].clone().unwrap();
                            let mut scaled_old = old.clone();
                            scaled_old.scale(y.rem_euclid(m as i64) as u64, m);
                            for (p0, q0) in new_pivot.coef.iter_mut().zip(&scaled_old.coef) {
                                *p0 = (*p0 + q0) % m;
                            }
                            new_pivot.rhs = (new_pivot.rhs + scaled_old.rhs) % m;
                            debug_assert_eq!(new_pivot.coef[c], d % m);
                            let mut old_rem = old;
                            old_rem.sub_scaled(&new_pivot, g / d, m);
                            row.sub_scaled(&new_pivot, a / d, m);
                            if m / d > 1 {
                                let mut ann = new_pivot.clone();
                                ann.scale(m / d, m);
                                work.push(ann);
                            }
                            self.pivots[c] = Some(new_pivot);
                            work.push(old_rem);
                        }
                    }
                }
            }
        }
    }

    /// A particular solution with free variables set to zero, or `None`
    /// when the streamed system is inconsistent.
    pub fn solve(&self) -> Option<Vec<u64>> {
        if !self.is_consistent() {
            return None;
        }
        let m = self.modulus;
        let mut x = vec![0u64; self.ncols];
        for c in (0..self.ncols).rev() {
            let Some(p) = &self.pivots[c] else { continue };
            let mut tail = 0u64;
            for c2 in c + 1..self.ncols {
                tail = (tail + p.coef[c2] * x[c2]) % m;
            }
            let r = (p.rhs + m - tail) % m;
            let g = p.coef[c];
            if r % g != 0 {
                return None;
            }
            x[c] = (r / g) % m;
        }
        Some(x)
    }
}

fn bezout(a: u64, b: u64) -> (i64, i64) {
    let (mut old_r, mut r) = (a as i64, b as i64);
    let (mut old_s, mut s) = (1i64, 0i64);
    let (mut old_t, mut t) = (0i64, 1i64);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
        (old_t, t) = (t, old_t - q * t);
    }
    (old_s, old_t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn brute_force_solvable(m: u64, ncols: usize, eqs: &[(Vec<u64>, u64)]) -> bool {
        let total = (m as u128).pow(ncols as u32);
        (0..total).any(|mut code| {
            let mut x = vec![0u64; ncols];
            for xi in &mut x {
                *xi = (code % m as u128) as u64;
                code /= m as u128;
            }
            eqs.iter().all(|(coef, rhs)| {
                let lhs: u64 = coef
                    .iter()
                    .zip(&x)
                    .fold(0u64, |acc, (&c, &xi)| (acc + c * xi) % m);
                lhs == rhs % m
            })
        })
    }

    fn check_against_brute(m: u64, ncols: usize, eqs: Vec<(Vec<u64>, u64)>) {
        let mut solver = HowellSolver::new(m, ncols);
        for (coef, rhs) in &eqs {
            solver.insert(coef.clone(), *rhs);
        }
        let expected = brute_force_solvable(m, ncols, &eqs);
        assert_eq!(
            solver.is_consistent(),
            expected,
            "solvability mismatch: m={m} eqs={eqs:?}"
        );
        if expected {
            let x = solver.solve().expect("consistent system must solve");
            for (coef, rhs) in &eqs {
                let lhs = coef
                    .iter()
                    .zip(&x)
                    .fold(0u64, |acc, (&c, &xi)| (acc + c * xi) % m);
                assert_eq!(lhs, rhs % m, "solution fails an equation");
            }
        }
    }

    #[test]
    fn zero_divisor_cases() {
        // 2x = 1 mod 4 is unsolvable; the annihilator row exposes it
        check_against_brute(4, 1, vec![(vec![2], 1)]);
        check_against_brute(4, 1, vec![(vec![2], 2)]);
        check_against_brute(4, 2, vec![(vec![2, 1], 1), (vec![0, 2], 1)]);
        check_against_brute(4, 2, vec![(vec![2, 1], 1), (vec![0, 2], 2)]);
        check_against_brute(8, 2, vec![(vec![4, 2], 2), (vec![2, 4], 4)]);
        check_against_brute(12, 2, vec![(vec![8, 3], 7), (vec![6, 9], 3)]);
        check_against_brute(1, 2, vec![(vec![0, 0], 0)]);
    }

    #[test]
    fn normalizing_unit_is_a_unit() {
        for m in 2..=36u64 {
            for a in 1..m {
                let u = normalizing_unit(a, m);
                assert_eq!(u.gcd(&m), 1, "u={u} not a unit mod {m}");
                assert_eq!(u * a % m, a.gcd(&m), "a={a} m={m}");
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(300))]
        #[test]
        fn matches_brute_force(
            m in prop::sample::select(vec![2u64, 3, 4, 5, 6, 8, 9, 12, 16, 18]),
            ncols in 1usize..4,
            raw in prop::collection::vec(
                (prop::collection::vec(0u64..18, 3), 0u64..18), 1..6),
        ) {
            let eqs: Vec<(Vec<u64>, u64)> = raw
                .into_iter()
                .map(|(coef, rhs)| (coef[..ncols].iter().map(|&c| c % m).collect(), rhs % m))
                .collect();
            check_against_brute(m, ncols, eqs);
        }
    }
}
