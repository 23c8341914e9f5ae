//! The double `V_A = A ⊕ Â`, its Heisenberg cocycle `beta`, the canonical
//! symplectic form `omega`, the isomorphism `kappa: V -> V̂`, endomorphisms
//! as integer matrices with per-row moduli, and enumeration of the
//! symplectic group by pruned depth-first search over generator images.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock};

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::group::{FinAbGroup, GroupElem};
use crate::phase::Phase;

/// Element count above which per-space lookup tables are not materialized.
const TABLE_LIMIT: u64 = 1024;

/// Group order above which a `SpGroup` does not build a Cayley table.
pub const CAYLEY_LIMIT: usize = 1024;

/// The double of a finite abelian group: moduli `(d_1..d_m, d_1..d_m)`,
/// elements indexed by mixed-radix rank (rank 0 is zero).
#[derive(Debug)]
pub struct DoubleSpace {
    base: FinAbGroup,
    moduli: Vec<i64>,
    size: u64,
    exponent: i64,
    coords_flat: Option<Vec<i64>>,
    add_table: Option<Vec<u32>>,
    beta_table: Option<Vec<i64>>,
    orders: Option<Vec<i64>>,
}

impl DoubleSpace {
    pub fn new(base: FinAbGroup) -> DoubleSpace {
        let mut moduli = base.orders().to_vec();
        moduli.extend_from_slice(base.orders());
        let size = base.size() * base.size();
        let exponent = base.exponent();
        let mut space = DoubleSpace {
            base,
            moduli,
            size,
            exponent,
            coords_flat: None,
            add_table: None,
            beta_table: None,
            orders: None,
        };
        if size <= TABLE_LIMIT {
            space.build_tables();
        }
        space
    }

    fn build_tables(&mut self) {
        let n = self.size as usize;
        let dim = self.dim();
        let mut flat = Vec::with_capacity(n * dim);
        for r in 0..n {
            flat.extend_from_slice(&self.unrank(r as u64));
        }
        let mut add = vec![0u32; n * n];
        let mut beta = vec![0i64; n * n];
        let e = self.exponent;
        let m = dim / 2;
        for u in 0..n {
            let cu = &flat[u * dim..(u + 1) * dim];
            for v in 0..n {
                let cv = &flat[v * dim..(v + 1) * dim];
                let sum: Vec<i64> = cu
                    .iter()
                    .zip(cv)
                    .zip(&self.moduli)
                    .map(|((&a, &b), &d)| (a + b) % d)
                    .collect();
                add[u * n + v] = self.rank_of(&sum) as u32;
                let mut acc = 0i64;
                for i in 0..m {
                    acc = (acc + cu[m + i] * cv[i] % e * (e / self.moduli[i])) % e;
                }
                beta[u * n + v] = acc;
            }
        }
        let orders = (0..n)
            .map(|r| {
                flat[r * dim..(r + 1) * dim]
                    .iter()
                    .zip(&self.moduli)
                    .fold(1i64, |acc, (&a, &d)| acc.lcm(&(d / d.gcd(&a))))
            })
            .collect();
        self.coords_flat = Some(flat);
        self.add_table = Some(add);
        self.beta_table = Some(beta);
        self.orders = Some(orders);
    }

    pub fn base(&self) -> &FinAbGroup {
        &self.base
    }

    /// `2m`, the number of coordinates.
    pub fn dim(&self) -> usize {
        self.moduli.len()
    }

    pub fn moduli(&self) -> &[i64] {
        &self.moduli
    }

    pub fn size(&self) -> u64 {
        self.size
    }

    pub fn exponent(&self) -> i64 {
        self.exponent
    }

    /// The denominator bound for every phase this crate attaches to `V`.
    pub fn double_exponent(&self) -> i64 {
        2 * self.exponent
    }

    pub fn rank_of(&self, coords: &[i64]) -> u64 {
        coords
            .iter()
            .zip(&self.moduli)
            .fold(0u64, |acc, (&c, &d)| {
                acc * d as u64 + c.rem_euclid(d) as u64
            })
    }

    pub fn unrank(&self, mut r: u64) -> Vec<i64> {
        let mut coords = vec![0i64; self.dim()];
        for i in (0..self.dim()).rev() {
            let d = self.moduli[i] as u64;
            coords[i] = (r % d) as i64;
            r /= d;
        }
        coords
    }

    /// Canonical coordinates of the element at `rank`, from the cache when
    /// available.
    pub fn coords_of(&self, rank: u64) -> Vec<i64> {
        match &self.coords_flat {
            Some(flat) => {
                let dim = self.dim();
                flat[rank as usize * dim..(rank as usize + 1) * dim].to_vec()
            }
            None => self.unrank(rank),
        }
    }

    pub fn add_rank(&self, u: u64, v: u64) -> u64 {
        match &self.add_table {
            Some(t) => t[u as usize * self.size as usize + v as usize] as u64,
            None => {
                let cu = self.unrank(u);
                let cv = self.unrank(v);
                let sum: Vec<i64> = cu
                    .iter()
                    .zip(&cv)
                    .zip(&self.moduli)
                    .map(|((&a, &b), &d)| (a + b) % d)
                    .collect();
                self.rank_of(&sum)
            }
        }
    }

    pub fn neg_rank(&self, u: u64) -> u64 {
        let c = self.coords_of(u);
        let n: Vec<i64> = c
            .iter()
            .zip(&self.moduli)
            .map(|(&a, &d)| (-a).rem_euclid(d))
            .collect();
        self.rank_of(&n)
    }

    pub fn elem_order(&self, u: u64) -> i64 {
        match &self.orders {
            Some(o) => o[u as usize],
            None => self
                .unrank(u)
                .iter()
                .zip(&self.moduli)
                .fold(1i64, |acc, (&a, &d)| acc.lcm(&(d / d.gcd(&a)))),
        }
    }

    /// `beta(u, v) = chi_u(a_v)`: evaluation of the dual half of `u` on the
    /// group half of `v`.
    pub fn beta(&self, u: &[i64], v: &[i64]) -> Phase {
        let m = self.dim() / 2;
        let e = self.exponent;
        let mut acc = 0i64;
        for i in 0..m {
            acc = (acc + u[m + i] * v[i] % e * (e / self.moduli[i])) % e;
        }
        Phase::new(acc, e).expect("exponent is positive")
    }

    /// Numerator of `beta` over the denominator `exponent()`.
    pub fn beta_num(&self, u: u64, v: u64) -> i64 {
        match &self.beta_table {
            Some(t) => t[u as usize * self.size as usize + v as usize],
            None => {
                let cu = self.unrank(u);
                let cv = self.unrank(v);
                self.beta(&cu, &cv).numerator_over(self.exponent).unwrap()
            }
        }
    }

    pub fn beta_rank(&self, u: u64, v: u64) -> Phase {
        Phase::new(self.beta_num(u, v), self.exponent).unwrap()
    }

    /// `omega(u, v) = beta(u, v) - beta(v, u)`: alternating, non-degenerate.
    pub fn omega(&self, u: &[i64], v: &[i64]) -> Phase {
        self.beta(u, v) - self.beta(v, u)
    }

    pub fn omega_num(&self, u: u64, v: u64) -> i64 {
        (self.beta_num(u, v) - self.beta_num(v, u)).rem_euclid(self.exponent)
    }

    pub fn omega_rank(&self, u: u64, v: u64) -> Phase {
        Phase::new(self.omega_num(u, v), self.exponent).unwrap()
    }

    /// Builds a `V`-element from its two halves.
    pub fn from_pair(&self, a: &GroupElem, chi: &GroupElem) -> Result<Vec<i64>> {
        if a.group() != &self.base || chi.group() != &self.base {
            return Err(Error::mismatch(
                "pair halves must live in the base group".to_string(),
            ));
        }
        let mut coords = a.coords().to_vec();
        coords.extend_from_slice(chi.coords());
        Ok(coords)
    }

    /// The character `kappa(v) = omega(v, ·)` as a full value table indexed
    /// by rank.
    pub fn kappa(&self, v: u64) -> Vec<Phase> {
        (0..self.size).map(|u| self.omega_rank(v, u)).collect()
    }

    /// Inverts `kappa`: finds the unique `v` whose character equals the
    /// given table. Errors when the table is not an additive character of
    /// `V` (e.g. a corrupted phase function).
    pub fn kappa_inv(&self, table: &[Phase]) -> Result<u64> {
        if table.len() as u64 != self.size {
            return Err(Error::mismatch(format!(
                "character table has {} entries, space has {}",
                table.len(),
                self.size
            )));
        }
        let gens = self.generator_ranks();
        let candidate = (0..self.size).find(|&v| {
            gens.iter()
                .all(|&g| self.omega_rank(v, g) == table[g as usize])
        });
        let v = candidate.ok_or_else(|| {
            Error::validation("table is not realized by omega(v, ·) for any v".to_string())
        })?;
        for u in 0..self.size {
            if self.omega_rank(v, u) != table[u as usize] {
                return Err(Error::validation(
                    "table is not additive: generator values extend to no character".to_string(),
                ));
            }
        }
        Ok(v)
    }

    /// Ranks of the standard generators `e_1..e_{2m}` (skipping trivial
    /// coordinates of modulus 1).
    pub fn generator_ranks(&self) -> Vec<u64> {
        (0..self.dim())
            .filter(|&i| self.moduli[i] > 1)
            .map(|i| {
                let mut c = vec![0i64; self.dim()];
                c[i] = 1;
                self.rank_of(&c)
            })
            .collect()
    }
}

/// An endomorphism of `V` as a `2m x 2m` integer matrix; entry `(i, j)` is
/// stored mod `moduli[i]`, and column `j` is the image of the `j`-th
/// generator. Well-definedness requires
/// `moduli[i] / gcd(moduli[i], moduli[j])` to divide entry `(i, j)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct EndoMap {
    dim: usize,
    entries: Vec<i64>,
}

impl EndoMap {
    pub fn new(space: &DoubleSpace, entries: Vec<i64>) -> Result<EndoMap> {
        let dim = space.dim();
        if entries.len() != dim * dim {
            return Err(Error::validation(format!(
                "expected {} entries, got {}",
                dim * dim,
                entries.len()
            )));
        }
        let entries: Vec<i64> = entries
            .iter()
            .enumerate()
            .map(|(k, &x)| x.rem_euclid(space.moduli()[k / dim]))
            .collect();
        for i in 0..dim {
            for j in 0..dim {
                let di = space.moduli()[i];
                let dj = space.moduli()[j];
                let need = di / di.gcd(&dj);
                if entries[i * dim + j] % need != 0 {
                    return Err(Error::validation(format!(
                        "entry ({i}, {j}) = {} is not a homomorphism: must be divisible by {need}",
                        entries[i * dim + j]
                    )));
                }
            }
        }
        Ok(EndoMap { dim, entries })
    }

    pub fn identity(space: &DoubleSpace) -> EndoMap {
        let dim = space.dim();
        let mut entries = vec![0i64; dim * dim];
        for i in 0..dim {
            entries[i * dim + i] = 1 % space.moduli()[i];
        }
        EndoMap { dim, entries }
    }

    /// Builds the map whose `j`-th column is `columns[j]`.
    pub fn from_columns(space: &DoubleSpace, columns: &[Vec<i64>]) -> Result<EndoMap> {
        let dim = space.dim();
        if columns.len() != dim {
            return Err(Error::validation(format!(
                "expected {dim} columns, got {}",
                columns.len()
            )));
        }
        let mut entries = vec![0i64; dim * dim];
        for (j, col) in columns.iter().enumerate() {
            for i in 0..dim {
                entries[i * dim + j] = col[i];
            }
        }
        EndoMap::new(space, entries)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[i64] {
        &self.entries
    }

    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.entries[i * self.dim + j]
    }

    pub fn is_identity(&self, space: &DoubleSpace) -> bool {
        *self == EndoMap::identity(space)
    }

    pub fn apply(&self, space: &DoubleSpace, coords: &[i64]) -> Vec<i64> {
        let dim = self.dim;
        let mut out = vec![0i64; dim];
        for i in 0..dim {
            let mut acc = 0i64;
            let d = space.moduli()[i];
            for j in 0..dim {
                acc = (acc + self.entries[i * dim + j] * coords[j]) % d;
            }
            out[i] = acc.rem_euclid(d);
        }
        out
    }

    pub fn apply_rank(&self, space: &DoubleSpace, r: u64) -> u64 {
        space.rank_of(&self.apply(space, &space.coords_of(r)))
    }

    /// Matrix product: `(self ∘ other)(u) = self(other(u))`.
    pub fn compose(&self, space: &DoubleSpace, other: &EndoMap) -> EndoMap {
        let dim = self.dim;
        let mut entries = vec![0i64; dim * dim];
        for i in 0..dim {
            let d = space.moduli()[i];
            for k in 0..dim {
                let a = self.entries[i * dim + k];
                if a == 0 {
                    continue;
                }
                for j in 0..dim {
                    entries[i * dim + j] =
                        (entries[i * dim + j] + a * other.entries[k * dim + j]) % d;
                }
            }
        }
        EndoMap { dim, entries }
    }

    /// The permutation of element ranks induced by this map.
    pub fn permutation(&self, space: &DoubleSpace) -> Vec<u32> {
        (0..space.size())
            .map(|r| self.apply_rank(space, r) as u32)
            .collect()
    }

    pub fn is_bijective(&self, space: &DoubleSpace) -> bool {
        let mut seen = vec![false; space.size() as usize];
        for r in 0..space.size() {
            let img = self.apply_rank(space, r) as usize;
            if seen[img] {
                return false;
            }
            seen[img] = true;
        }
        true
    }

    /// Inverse of a bijective map, reconstructed from the inverse
    /// permutation on generators.
    pub fn inverse(&self, space: &DoubleSpace) -> Result<EndoMap> {
        let perm = self.permutation(space);
        let mut inv_perm = vec![u32::MAX; perm.len()];
        for (r, &img) in perm.iter().enumerate() {
            if inv_perm[img as usize] != u32::MAX {
                return Err(Error::precondition("map is not invertible".to_string()));
            }
            inv_perm[img as usize] = r as u32;
        }
        let dim = space.dim();
        let mut columns = Vec::with_capacity(dim);
        for j in 0..dim {
            let mut c = vec![0i64; dim];
            c[j] = 1 % space.moduli()[j];
            let g = space.rank_of(&c);
            columns.push(space.coords_of(inv_perm[g as usize] as u64));
        }
        EndoMap::from_columns(space, &columns)
    }
}

/// True iff `t` preserves `omega` on all generator pairs (which extends
/// bilinearly to all of `V`) and is bijective.
pub fn is_symplectic(space: &DoubleSpace, t: &EndoMap) -> bool {
    let dim = space.dim();
    let mut gens: Vec<Vec<i64>> = Vec::with_capacity(dim);
    for i in 0..dim {
        let mut c = vec![0i64; dim];
        c[i] = 1 % space.moduli()[i];
        gens.push(c);
    }
    let images: Vec<Vec<i64>> = gens.iter().map(|g| t.apply(space, g)).collect();
    for i in 0..dim {
        for j in 0..dim {
            if space.omega(&images[i], &images[j]) != space.omega(&gens[i], &gens[j]) {
                return false;
            }
        }
    }
    t.is_bijective(space)
}

/// Enumeration and search budgets.
#[derive(Clone, Copy, Debug)]
pub struct SpBudget {
    /// Maximum `|V|` for enumeration.
    pub max_space: u64,
    /// Maximum `|Sp|`; exceeding it aborts with a resource error.
    pub max_group: usize,
}

impl Default for SpBudget {
    fn default() -> Self {
        SpBudget {
            max_space: 128,
            max_group: 100_000,
        }
    }
}

/// The full symplectic group of a double space, canonically sorted by
/// matrix entries so output is deterministic.
pub struct SpGroup {
    space: Arc<DoubleSpace>,
    maps: Vec<EndoMap>,
    perms: Vec<u32>,
    index: HashMap<Vec<i64>, u32>,
    identity: u32,
    cayley: OnceLock<Option<Vec<u32>>>,
    inverses: OnceLock<Vec<u32>>,
}

impl SpGroup {
    pub fn space(&self) -> &Arc<DoubleSpace> {
        &self.space
    }

    pub fn len(&self) -> usize {
        self.maps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.maps.is_empty()
    }

    pub fn map(&self, i: u32) -> &EndoMap {
        &self.maps[i as usize]
    }

    pub fn maps(&self) -> &[EndoMap] {
        &self.maps
    }

    /// The rank permutation of the `i`-th map.
    pub fn perm(&self, i: u32) -> &[u32] {
        let n = self.space.size() as usize;
        &self.perms[i as usize * n..(i as usize + 1) * n]
    }

    pub fn index_of(&self, m: &EndoMap) -> Option<u32> {
        self.index.get(m.entries()).copied()
    }

    pub fn identity_index(&self) -> u32 {
        self.identity
    }

    fn cayley(&self) -> Option<&Vec<u32>> {
        self.cayley
            .get_or_init(|| {
                let n = self.maps.len();
                if n > CAYLEY_LIMIT {
                    return None;
                }
                let mut table = vec![0u32; n * n];
                for i in 0..n {
                    for j in 0..n {
                        let prod = self.maps[i].compose(&self.space, &self.maps[j]);
                        table[i * n + j] = self.index[prod.entries()];
                    }
                }
                Some(table)
            })
            .as_ref()
    }

    /// Index of `maps[i] ∘ maps[j]`.
    pub fn mul(&self, i: u32, j: u32) -> u32 {
        if let Some(table) = self.cayley() {
            return table[i as usize * self.maps.len() + j as usize];
        }
        let prod = self.maps[i as usize].compose(&self.space, &self.maps[j as usize]);
        self.index[prod.entries()]
    }

    pub fn inv(&self, i: u32) -> u32 {
        let inverses = self.inverses.get_or_init(|| {
            let mut out = vec![u32::MAX; self.maps.len()];
            for idx in 0..self.maps.len() as u32 {
                if out[idx as usize] != u32::MAX {
                    continue;
                }
                let inv = self.maps[idx as usize]
                    .inverse(&self.space)
                    .expect("symplectic maps are invertible");
                let j = self.index[inv.entries()];
                out[idx as usize] = j;
                out[j as usize] = idx;
            }
            out
        });
        inverses[i as usize]
    }

    /// Closure of a set of indices under multiplication.
    pub fn closure(&self, gens: &[u32]) -> Vec<bool> {
        let mut in_set = vec![false; self.maps.len()];
        let mut frontier = Vec::new();
        self.closure_into(gens, &mut in_set, &mut frontier);
        in_set
    }

    fn closure_into(&self, gens: &[u32], in_set: &mut [bool], frontier: &mut Vec<u32>) {
        in_set.fill(false);
        frontier.clear();
        in_set[self.identity as usize] = true;
        frontier.push(self.identity);
        while let Some(i) = frontier.pop() {
            for &g in gens {
                let p = self.mul(i, g);
                if !in_set[p as usize] {
                    in_set[p as usize] = true;
                    frontier.push(p);
                }
            }
        }
    }
}

/// Enumerates `Sp(V)` by depth-first choice of generator images: at each
/// level the image order must divide the generator order and the partial
/// map must preserve `omega` against all previously chosen images.
pub fn enumerate_sp(space: &Arc<DoubleSpace>, budget: &SpBudget) -> Result<SpGroup> {
    if space.size() > budget.max_space {
        return Err(Error::resource(
            "sp-enumeration",
            format!(
                "|V| = {} exceeds the budget of {}",
                space.size(),
                budget.max_space
            ),
        ));
    }
    let dim = space.dim();
    let n = space.size() as usize;
    let gen_ranks: Vec<u64> = (0..dim)
        .map(|i| {
            let mut c = vec![0i64; dim];
            c[i] = 1 % space.moduli()[i];
            space.rank_of(&c)
        })
        .collect();
    // target[i][j] = omega(e_i, e_j) as numerator over exponent
    let target: Vec<Vec<i64>> = (0..dim)
        .map(|i| {
            (0..dim)
                .map(|j| space.omega_num(gen_ranks[i], gen_ranks[j]))
                .collect()
        })
        .collect();
    // candidates per level: elements whose order divides the generator order
    let candidates: Vec<Vec<u64>> = (0..dim)
        .map(|i| {
            (0..space.size())
                .filter(|&w| space.moduli()[i] % space.elem_order(w) == 0)
                .collect()
        })
        .collect();

    let mut maps: Vec<EndoMap> = Vec::new();
    let mut images: Vec<u64> = Vec::with_capacity(dim);
    dfs_images(
        space,
        &target,
        &candidates,
        &mut images,
        &mut maps,
        budget.max_group,
    )?;

    maps.sort_unstable_by(|a, b| a.entries().cmp(b.entries()));
    let mut index = HashMap::with_capacity(maps.len());
    let mut perms = Vec::with_capacity(maps.len() * n);
    for (i, m) in maps.iter().enumerate() {
        index.insert(m.entries().to_vec(), i as u32);
        perms.extend(m.permutation(space));
    }
    let identity = index
        .get(EndoMap::identity(space).entries())
        .copied()
        .ok_or_else(|| Error::internal("identity missing from enumerated group".to_string()))?;
    Ok(SpGroup {
        space: Arc::clone(space),
        maps,
        perms,
        index,
        identity,
        cayley: OnceLock::new(),
        inverses: OnceLock::new(),
    })
}

fn dfs_images(
    space: &DoubleSpace,
    target: &[Vec<i64>],
    candidates: &[Vec<u64>],
    images: &mut Vec<u64>,
    out: &mut Vec<EndoMap>,
    max_group: usize,
) -> Result<()> {
    let dim = space.dim();
    let level = images.len();
    if level == dim {
        let columns: Vec<Vec<i64>> = images.iter().map(|&w| space.coords_of(w)).collect();
        let map = EndoMap::from_columns(space, &columns)
            .map_err(|e| Error::internal(format!("DFS produced an ill-defined map: {e}")))?;
        debug_assert!(is_symplectic(space, &map));
        out.push(map);
        if out.len() > max_group {
            return Err(Error::resource(
                "sp-enumeration",
                format!("|Sp| exceeds the budget of {max_group}"),
            ));
        }
        return Ok(());
    }
    'next: for &w in &candidates[level] {
        for (a, &prev) in images.iter().enumerate() {
            if space.omega_num(prev, w) != target[a][level] {
                continue 'next;
            }
        }
        images.push(w);
        dfs_images(space, target, candidates, images, out, max_group)?;
        images.pop();
    }
    Ok(())
}

/// The standard generators of `Sp(V_{Z_N}) = SL(2, Z_N)`:
/// `t(a, p) = (a + p, p)` and `s(a, p) = (-p, a)`.
pub fn cyclic_generators(space: &DoubleSpace) -> Result<(EndoMap, EndoMap)> {
    if space.dim() != 2 {
        return Err(Error::precondition(
            "cyclic generators exist only for cyclic base groups".to_string(),
        ));
    }
    let t = EndoMap::new(space, vec![1, 1, 0, 1])?;
    let s = EndoMap::new(space, vec![0, -1, 1, 0])?;
    Ok((t, s))
}

/// A small generating set. For cyclic bases the pair `{t, s}` is tried
/// first; for groups within the Cayley budget the first generating pair in
/// index order is searched for; otherwise a greedy sweep adjoins the first
/// map outside the current closure. The singleton group gets an empty set.
pub fn find_generating_set(sp: &SpGroup) -> Vec<u32> {
    if sp.len() == 1 {
        return Vec::new();
    }
    if sp.space().dim() == 2 {
        if let Ok((t, s)) = cyclic_generators(sp.space()) {
            if let (Some(ti), Some(si)) = (sp.index_of(&t), sp.index_of(&s)) {
                let gens = vec![ti, si];
                if sp.closure(&gens).iter().all(|&b| b) {
                    return gens;
                }
            }
        }
    }
    let id = sp.identity_index();
    if sp.len() <= CAYLEY_LIMIT {
        let mut in_set = vec![false; sp.len()];
        let mut frontier = Vec::new();
        for x in 0..sp.len() as u32 {
            if x == id {
                continue;
            }
            sp.closure_into(&[x], &mut in_set, &mut frontier);
            if in_set.iter().all(|&b| b) {
                return vec![x];
            }
            let from_x = in_set.clone();
            for y in x + 1..sp.len() as u32 {
                if y == id || from_x[y as usize] {
                    continue;
                }
                sp.closure_into(&[x, y], &mut in_set, &mut frontier);
                if in_set.iter().all(|&b| b) {
                    return vec![x, y];
                }
            }
        }
    }
    let mut gens: Vec<u32> = Vec::new();
    let mut in_closure = sp.closure(&gens);
    while let Some(next) = in_closure.iter().position(|&b| !b) {
        gens.push(next as u32);
        in_closure = sp.closure(&gens);
    }
    gens
}

#[cfg(test)]
mod tests {
    use super::*;

    fn space_of(orders: &[i64]) -> Arc<DoubleSpace> {
        Arc::new(DoubleSpace::new(FinAbGroup::new(orders).unwrap()))
    }

    #[test]
    fn double_examples() {
        let v = space_of(&[2]);
        assert_eq!(v.moduli(), &[2, 2]);
        assert_eq!(v.size(), 4);
        let v = space_of(&[4]);
        assert_eq!(v.moduli(), &[4, 4]);
        assert_eq!(v.size(), 16);
        let v = space_of(&[2, 2]);
        assert_eq!(v.moduli(), &[2, 2, 2, 2]);
        assert_eq!(v.size(), 16);
        assert_eq!(v.exponent(), 2);
        assert_eq!(v.coords_of(0), vec![0, 0, 0, 0]);
    }

    #[test]
    fn beta_examples() {
        let v = space_of(&[2]);
        // u = (a=0, chi=1), v = (a=1, chi=0)
        let u = v.rank_of(&[0, 1]);
        let w = v.rank_of(&[1, 0]);
        assert_eq!(v.beta_rank(u, w), Phase::new(1, 2).unwrap());
        for r in 0..v.size() {
            assert!(v.beta_rank(0, r).is_zero());
            assert!(v.beta_rank(r, 0).is_zero());
        }
        let v4 = space_of(&[4]);
        let u = v4.rank_of(&[0, 1]);
        let w = v4.rank_of(&[3, 0]);
        assert_eq!(v4.beta_rank(u, w), Phase::new(3, 4).unwrap());
    }

    #[test]
    fn omega_examples_and_alternating() {
        let v = space_of(&[2]);
        let u = v.rank_of(&[1, 0]);
        let w = v.rank_of(&[0, 1]);
        assert_eq!(v.omega_rank(u, w), Phase::new(1, 2).unwrap());
        let v4 = space_of(&[4]);
        let u = v4.rank_of(&[1, 1]);
        let w = v4.rank_of(&[1, 3]);
        assert_eq!(v4.omega_rank(u, w), Phase::new(1, 2).unwrap());
        for r in 0..v4.size() {
            assert!(v4.omega_rank(r, r).is_zero());
        }
    }

    #[test]
    fn omega_nondegenerate_on_roster_spaces() {
        for orders in [
            vec![1],
            vec![2],
            vec![3],
            vec![4],
            vec![2, 2],
            vec![6],
            vec![8],
            vec![3, 3],
            vec![4, 2],
        ] {
            let v = space_of(&orders);
            assert!(v.size() <= 256);
            for r in 1..v.size() {
                assert!(
                    (0..v.size()).any(|u| !v.omega_rank(r, u).is_zero()),
                    "omega degenerate at rank {r} of {orders:?}"
                );
            }
        }
    }

    #[test]
    fn kappa_round_trip_z4_exhaustive() {
        let v = space_of(&[4]);
        assert!(v.kappa(0).iter().all(Phase::is_zero));
        for r in 0..v.size() {
            let table = v.kappa(r);
            assert_eq!(v.kappa_inv(&table).unwrap(), r);
        }
        // non-additive table
        let mut table = v.kappa(3);
        table[5] = table[5] + Phase::new(1, 4).unwrap();
        assert!(v.kappa_inv(&table).is_err());
    }

    #[test]
    fn kappa_z2_example() {
        let v = space_of(&[2]);
        let r = v.rank_of(&[1, 0]);
        let u = v.rank_of(&[0, 1]);
        assert_eq!(v.kappa(r)[u as usize], Phase::new(1, 2).unwrap());
    }

    #[test]
    fn endo_map_validation_and_addition() {
        let v = space_of(&[4, 2]);
        // entry (0, 1) maps a Z_2 generator into Z_4: must be divisible by 2
        assert!(EndoMap::new(&v, vec![1, 1, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1]).is_err());
        let ok = EndoMap::new(&v, vec![1, 2, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1]).unwrap();
        for u in 0..v.size() {
            for w in 0..v.size() {
                let lhs = ok.apply_rank(&v, v.add_rank(u, w));
                let rhs = v.add_rank(ok.apply_rank(&v, u), ok.apply_rank(&v, w));
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn is_symplectic_examples() {
        let v = space_of(&[4]);
        assert!(is_symplectic(&v, &EndoMap::identity(&v)));
        let (t, s) = cyclic_generators(&v).unwrap();
        assert!(is_symplectic(&v, &t));
        assert!(is_symplectic(&v, &s));
        let doubling = EndoMap::new(&v, vec![2, 0, 0, 2]).unwrap();
        assert!(!is_symplectic(&v, &doubling));
        assert!(!doubling.is_bijective(&v));
    }

    #[test]
    fn sp_counts_small() {
        let budget = SpBudget::default();
        assert_eq!(enumerate_sp(&space_of(&[2]), &budget).unwrap().len(), 6);
        assert_eq!(enumerate_sp(&space_of(&[4]), &budget).unwrap().len(), 48);
        assert_eq!(enumerate_sp(&space_of(&[1]), &budget).unwrap().len(), 1);
    }

    #[test]
    fn sp_count_z2_matches_brute_force() {
        // independent oracle: filter all 2x2 matrices over Z_2
        let v = space_of(&[2]);
        let mut count = 0;
        for bits in 0..16u32 {
            let entries: Vec<i64> = (0..4).map(|k| ((bits >> k) & 1) as i64).collect();
            let m = EndoMap::new(&v, entries).unwrap();
            if is_symplectic(&v, &m) {
                count += 1;
            }
        }
        assert_eq!(count, 6);
    }

    #[test]
    fn sp_count_z4_matches_brute_force() {
        let v = space_of(&[4]);
        let mut count = 0;
        for a in 0..4i64 {
            for b in 0..4i64 {
                for c in 0..4i64 {
                    for d in 0..4i64 {
                        let m = EndoMap::new(&v, vec![a, b, c, d]).unwrap();
                        if is_symplectic(&v, &m) {
                            count += 1;
                        }
                    }
                }
            }
        }
        // multiplicative order formula for |SL(2, Z_4)|: 4^3 (1 - 1/4)
        assert_eq!(count, 4i64.pow(3) * 3 / 4);
    }

    #[test]
    fn sp_group_closed_under_mul_and_inv() {
        for orders in [vec![2], vec![4], vec![3]] {
            let sp = enumerate_sp(&space_of(&orders), &SpBudget::default()).unwrap();
            for i in 0..sp.len() as u32 {
                let _ = sp.mul(i, sp.inv(i));
                assert_eq!(sp.mul(i, sp.inv(i)), sp.identity_index());
                for j in 0..sp.len() as u32 {
                    let k = sp.mul(i, j);
                    assert!((k as usize) < sp.len());
                }
            }
        }
    }

    #[test]
    fn sp_preserves_omega_exhaustively() {
        for orders in [vec![2], vec![4], vec![3]] {
            let space = space_of(&orders);
            let sp = enumerate_sp(&space, &SpBudget::default()).unwrap();
            for i in 0..sp.len() as u32 {
                let perm = sp.perm(i);
                for u in 0..space.size() {
                    for w in 0..space.size() {
                        assert_eq!(
                            space.omega_num(perm[u as usize] as u64, perm[w as usize] as u64),
                            space.omega_num(u, w)
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn generating_sets() {
        let sp = enumerate_sp(&space_of(&[4]), &SpBudget::default()).unwrap();
        let gens = find_generating_set(&sp);
        assert_eq!(gens.len(), 2);
        let (t, s) = cyclic_generators(sp.space()).unwrap();
        assert_eq!(gens[0], sp.index_of(&t).unwrap());
        assert_eq!(gens[1], sp.index_of(&s).unwrap());
        assert!(sp.closure(&gens).iter().all(|&b| b));

        let sp2 = enumerate_sp(&space_of(&[2]), &SpBudget::default()).unwrap();
        assert_eq!(find_generating_set(&sp2).len(), 2);

        let sp1 = enumerate_sp(&space_of(&[1]), &SpBudget::default()).unwrap();
        assert!(find_generating_set(&sp1).is_empty());
    }

    #[test]
    fn budget_errors_are_explicit() {
        let v = space_of(&[16]);
        let budget = SpBudget {
            max_space: 128,
            max_group: 10,
        };
        match enumerate_sp(&v, &budget) {
            Err(Error::Resource { stage, .. }) => assert_eq!(stage, "sp-enumeration"),
            Err(other) => panic!("expected resource error, got {other:?}"),
            Ok(_) => panic!("expected resource error, got a group"),
        }
        let huge = space_of(&[32]);
        assert!(matches!(
            enumerate_sp(&huge, &SpBudget::default()),
            Err(Error::Resource { .. })
        ));
    }
}
