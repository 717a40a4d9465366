//! Finite bounded lattices represented by an explicit order matrix.
//!
//! Elements are dense indices `0..n`. The bottom and top are computed from
//! the order, not pinned to particular indices, so sum constructions can
//! reindex freely. The order is kept as a bitmatrix and the meet/join tables
//! are precomputed, which makes every structural query O(1) or a short
//! bitset scan.

use crate::bits::ElementSet;
use crate::error::{LattError, Result};
use serde::{Deserialize, Serialize};

/// Hard cap on the number of elements. Everything in this crate is meant
/// for desk-scale computation; the cap exists to fail fast on inputs that
/// would silently allocate gigabytes.
pub const MAX_ELEMENTS: usize = 4096;

/// A finite bounded lattice.
///
/// Immutable after validation, so it can be shared freely.
#[derive(Clone)]
pub struct FiniteLattice {
    n: usize,
    stride: usize,
    /// Row `i` holds the bitset `{ j : i <= j }` (the principal filter of `i`).
    up: Vec<u64>,
    /// Row `i` holds the bitset `{ j : j <= i }` (the principal ideal of `i`).
    down: Vec<u64>,
    meet: Vec<u16>,
    join: Vec<u16>,
    bottom: usize,
    top: usize,
    height: Vec<u16>,
    depth: Vec<u16>,
}

/// On-disk JSON document for a lattice, optionally carrying unary
/// operation tables. The covers determine the order; the loader rebuilds
/// and revalidates everything else.
#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct AlgebraDoc {
    pub n: usize,
    pub covers: Vec<(usize, usize)>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub delta: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub nabla: Option<Vec<usize>>,
}

impl FiniteLattice {
    /// Validates a candidate order matrix and builds the lattice.
    ///
    /// Fails if the matrix is not a partial order, if some pair lacks a
    /// greatest lower bound or least upper bound, or if the poset is
    /// unbounded (only possible for `n = 0`).
    pub fn validate(matrix: &[Vec<bool>]) -> Result<FiniteLattice> {
        let n = matrix.len();
        if n == 0 {
            return Err(LattError::Unbounded);
        }
        if n > MAX_ELEMENTS {
            return Err(LattError::CapExceeded(n, MAX_ELEMENTS));
        }
        for (i, row) in matrix.iter().enumerate() {
            if row.len() != n {
                return Err(LattError::NotAPartialOrder(format!(
                    "row {i} has length {} instead of {n}",
                    row.len()
                )));
            }
        }
        for i in 0..n {
            if !matrix[i][i] {
                return Err(LattError::NotAPartialOrder(format!("not reflexive at {i}")));
            }
            for j in 0..n {
                if i != j && matrix[i][j] && matrix[j][i] {
                    return Err(LattError::NotAPartialOrder(format!(
                        "antisymmetry fails on ({i},{j})"
                    )));
                }
                if matrix[i][j] {
                    for k in 0..n {
                        if matrix[j][k] && !matrix[i][k] {
                            return Err(LattError::NotAPartialOrder(format!(
                                "transitivity fails on ({i},{j},{k})"
                            )));
                        }
                    }
                }
            }
        }
        Self::from_valid_order(n, |i, j| matrix[i][j])
    }

    /// Builds a lattice from a cover list; the order is the reflexive
    /// transitive closure of the covers.
    pub fn from_covers(n: usize, covers: &[(usize, usize)]) -> Result<FiniteLattice> {
        if n == 0 {
            return Err(LattError::Unbounded);
        }
        if n > MAX_ELEMENTS {
            return Err(LattError::CapExceeded(n, MAX_ELEMENTS));
        }
        for &(a, b) in covers {
            if a >= n || b >= n {
                return Err(LattError::NotAPartialOrder(format!(
                    "cover ({a},{b}) out of range for n={n}"
                )));
            }
        }
        // Reflexive-transitive closure of the cover relation.
        let stride = n.div_ceil(64);
        let mut up = vec![0u64; n * stride];
        for i in 0..n {
            up[i * stride + i / 64] |= 1 << (i % 64);
        }
        let mut changed = true;
        while changed {
            changed = false;
            for &(a, b) in covers {
                for w in 0..stride {
                    let merged = up[a * stride + w] | up[b * stride + w];
                    if merged != up[a * stride + w] {
                        up[a * stride + w] = merged;
                        changed = true;
                    }
                }
            }
        }
        let le = |i: usize, j: usize| up[i * stride + j / 64] >> (j % 64) & 1 == 1;
        for i in 0..n {
            for j in 0..n {
                if i != j && le(i, j) && le(j, i) {
                    return Err(LattError::NotAPartialOrder(format!(
                        "cover list creates a cycle through {i} and {j}"
                    )));
                }
            }
        }
        Self::from_valid_order(n, le)
    }

    fn from_valid_order(n: usize, le: impl Fn(usize, usize) -> bool) -> Result<FiniteLattice> {
        let stride = n.div_ceil(64);
        let mut up = vec![0u64; n * stride];
        let mut down = vec![0u64; n * stride];
        for i in 0..n {
            for j in 0..n {
                if le(i, j) {
                    up[i * stride + j / 64] |= 1 << (j % 64);
                    down[j * stride + i / 64] |= 1 << (i % 64);
                }
            }
        }
        // Greatest lower / least upper bounds for every pair.
        let mut meet = vec![0u16; n * n];
        let mut join = vec![0u16; n * n];
        let mut scratch = vec![0u64; stride];
        for i in 0..n {
            for j in i..n {
                for w in 0..stride {
                    scratch[w] = down[i * stride + w] & down[j * stride + w];
                }
                let m = greatest(&scratch, &down, stride)
                    .ok_or(LattError::NotALattice(i, j, "greatest lower bound"))?;
                for w in 0..stride {
                    scratch[w] = up[i * stride + w] & up[j * stride + w];
                }
                let jn = least(&scratch, &up, stride)
                    .ok_or(LattError::NotALattice(i, j, "least upper bound"))?;
                meet[i * n + j] = m as u16;
                meet[j * n + i] = m as u16;
                join[i * n + j] = jn as u16;
                join[j * n + i] = jn as u16;
            }
        }
        let mut bottom = 0;
        let mut top = 0;
        for i in 0..n {
            bottom = meet[bottom * n + i] as usize;
            top = join[top * n + i] as usize;
        }
        let mut lat = FiniteLattice {
            n,
            stride,
            up,
            down,
            meet,
            join,
            bottom,
            top,
            height: vec![0; n],
            depth: vec![0; n],
        };
        lat.compute_height_depth();
        Ok(lat)
    }

    fn compute_height_depth(&mut self) {
        let mut order: Vec<usize> = (0..self.n).collect();
        order.sort_by_key(|&i| self.downset(i).len());
        for &i in &order {
            let h = self
                .lower_covers(i)
                .into_iter()
                .map(|c| self.height[c] + 1)
                .max()
                .unwrap_or(0);
            self.height[i] = h;
        }
        for &i in order.iter().rev() {
            let d = self
                .upper_covers(i)
                .into_iter()
                .map(|c| self.depth[c] + 1)
                .max()
                .unwrap_or(0);
            self.depth[i] = d;
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    #[inline]
    pub fn le(&self, i: usize, j: usize) -> bool {
        self.up[i * self.stride + j / 64] >> (j % 64) & 1 == 1
    }

    #[inline]
    pub fn lt(&self, i: usize, j: usize) -> bool {
        i != j && self.le(i, j)
    }

    #[inline]
    pub fn meet(&self, i: usize, j: usize) -> usize {
        self.meet[i * self.n + j] as usize
    }

    #[inline]
    pub fn join(&self, i: usize, j: usize) -> usize {
        self.join[i * self.n + j] as usize
    }

    /// Longest chain length from the bottom to `i`.
    pub fn height(&self, i: usize) -> usize {
        self.height[i] as usize
    }

    /// Longest chain length from `i` to the top.
    pub fn depth(&self, i: usize) -> usize {
        self.depth[i] as usize
    }

    /// The principal ideal `(i]` as a set.
    pub fn downset(&self, i: usize) -> ElementSet {
        let mut s = ElementSet::empty(self.n);
        for j in 0..self.n {
            if self.le(j, i) {
                s.insert(j);
            }
        }
        s
    }

    /// The principal filter `[i)` as a set.
    pub fn upset(&self, i: usize) -> ElementSet {
        let mut s = ElementSet::empty(self.n);
        for j in 0..self.n {
            if self.le(i, j) {
                s.insert(j);
            }
        }
        s
    }

    /// `a` is covered by `b`: `a < b` with nothing strictly between.
    pub fn covered_by(&self, a: usize, b: usize) -> bool {
        self.lt(a, b) && !(0..self.n).any(|c| self.lt(a, c) && self.lt(c, b))
    }

    /// All cover pairs `(a, b)` with `a` covered by `b`, sorted.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for a in 0..self.n {
            for b in 0..self.n {
                if self.covered_by(a, b) {
                    out.push((a, b));
                }
            }
        }
        out.sort_unstable();
        out
    }

    pub fn lower_covers(&self, i: usize) -> Vec<usize> {
        (0..self.n).filter(|&a| self.covered_by(a, i)).collect()
    }

    pub fn upper_covers(&self, i: usize) -> Vec<usize> {
        (0..self.n).filter(|&b| self.covered_by(i, b)).collect()
    }

    /// Join-irreducible elements: those with exactly one lower cover.
    /// The bottom has none, so it is never included.
    pub fn join_irreducibles(&self) -> ElementSet {
        ElementSet::from_iter(
            self.n,
            (0..self.n).filter(|&i| self.lower_covers(i).len() == 1),
        )
    }

    /// Meet-irreducible elements: those with exactly one upper cover.
    pub fn meet_irreducibles(&self) -> ElementSet {
        ElementSet::from_iter(
            self.n,
            (0..self.n).filter(|&i| self.upper_covers(i).len() == 1),
        )
    }

    pub fn atoms(&self) -> ElementSet {
        ElementSet::from_iter(self.n, self.upper_covers(self.bottom))
    }

    pub fn coatoms(&self) -> ElementSet {
        ElementSet::from_iter(self.n, self.lower_covers(self.top))
    }

    /// The dual lattice: order reversed, meet and join swapped. Element
    /// indices are preserved, so `dual(dual(L))` is identical to `L`.
    pub fn dual(&self) -> FiniteLattice {
        FiniteLattice {
            n: self.n,
            stride: self.stride,
            up: self.down.clone(),
            down: self.up.clone(),
            meet: self.join.clone(),
            join: self.meet.clone(),
            bottom: self.top,
            top: self.bottom,
            height: self.depth.clone(),
            depth: self.height.clone(),
        }
    }

    /// The interval `[a, b]` as a lattice of its own, together with the
    /// map from new indices back to elements of `self`.
    pub fn interval(&self, a: usize, b: usize) -> Result<(FiniteLattice, Vec<usize>)> {
        if !self.le(a, b) {
            return Err(LattError::NotComparable(a, b));
        }
        let members: Vec<usize> = (0..self.n)
            .filter(|&x| self.le(a, x) && self.le(x, b))
            .collect();
        let lat = self.restrict(&members)?;
        Ok((lat, members))
    }

    fn restrict(&self, members: &[usize]) -> Result<FiniteLattice> {
        let k = members.len();
        let mut matrix = vec![vec![false; k]; k];
        for (i, &x) in members.iter().enumerate() {
            for (j, &y) in members.iter().enumerate() {
                matrix[i][j] = self.le(x, y);
            }
        }
        FiniteLattice::validate(&matrix)
    }

    /// True when `set` is closed under meet and join.
    pub fn is_sublattice_set(&self, set: &ElementSet) -> bool {
        let elems = set.to_vec();
        elems.iter().all(|&x| {
            elems
                .iter()
                .all(|&y| set.contains(self.meet(x, y)) && set.contains(self.join(x, y)))
        })
    }

    /// The sublattice induced on `set` (must be meet/join closed and
    /// nonempty), reindexed, with the member map.
    pub fn sublattice(&self, set: &ElementSet) -> Result<(FiniteLattice, Vec<usize>)> {
        if set.is_empty() || !self.is_sublattice_set(set) {
            return Err(LattError::NotASublattice);
        }
        let members = set.to_vec();
        let lat = self.restrict(&members)?;
        Ok((lat, members))
    }

    /// Join of all elements of the set; the bottom for the empty set.
    pub fn join_of(&self, set: &ElementSet) -> usize {
        set.iter().fold(self.bottom, |acc, x| self.join(acc, x))
    }

    /// Meet of all elements of the set; the top for the empty set.
    pub fn meet_of(&self, set: &ElementSet) -> usize {
        set.iter().fold(self.top, |acc, x| self.meet(acc, x))
    }

    /// True when every element is the join of the members of `set` below it.
    pub fn is_join_dense(&self, set: &ElementSet) -> bool {
        (0..self.n).all(|x| self.join_of(&set.intersection(&self.downset(x))) == x)
    }

    /// True when every element is the meet of the members of `set` above it.
    pub fn is_meet_dense(&self, set: &ElementSet) -> bool {
        (0..self.n).all(|x| self.meet_of(&set.intersection(&self.upset(x))) == x)
    }

    /// Distributivity check via the law `x ∧ (y ∨ z) = (x ∧ y) ∨ (x ∧ z)`.
    pub fn is_distributive(&self) -> bool {
        for x in 0..self.n {
            for y in 0..self.n {
                for z in 0..self.n {
                    if self.meet(x, self.join(y, z))
                        != self.join(self.meet(x, y), self.meet(x, z))
                    {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Human-readable element labels: `0` for the bottom, `1` for the top,
    /// `a1..` for the rest ordered by height then index.
    pub fn labels(&self) -> Vec<String> {
        let mut labels = vec![String::new(); self.n];
        labels[self.bottom] = "0".into();
        if self.top != self.bottom {
            labels[self.top] = "1".into();
        }
        let mut inner: Vec<usize> = (0..self.n)
            .filter(|&i| i != self.bottom && i != self.top)
            .collect();
        inner.sort_by_key(|&i| (self.height[i], i));
        for (k, &i) in inner.iter().enumerate() {
            labels[i] = format!("a{}", k + 1);
        }
        labels
    }

    /// Serializes to the canonical JSON document (`n` plus sorted covers).
    pub fn to_doc(&self) -> AlgebraDoc {
        AlgebraDoc {
            n: self.n,
            covers: self.covers(),
            delta: None,
            nabla: None,
        }
    }

    pub fn from_doc(doc: &AlgebraDoc) -> Result<FiniteLattice> {
        FiniteLattice::from_covers(doc.n, &doc.covers)
    }

    /// DOT rendering of the Hasse diagram: covers as edges, one rank per
    /// height level, drawn bottom-up.
    pub fn to_dot(&self, name: &str) -> String {
        let labels = self.labels();
        let mut out = String::new();
        out.push_str(&format!("digraph \"{name}\" {{\n"));
        out.push_str("  rankdir=BT;\n  node [shape=circle];\n");
        for i in 0..self.n {
            out.push_str(&format!("  v{i} [label=\"{}\"];\n", labels[i]));
        }
        let max_h = (0..self.n).map(|i| self.height(i)).max().unwrap_or(0);
        for h in 0..=max_h {
            let level: Vec<String> = (0..self.n)
                .filter(|&i| self.height(i) == h)
                .map(|i| format!("v{i}"))
                .collect();
            if !level.is_empty() {
                out.push_str(&format!("  {{ rank=same; {}; }}\n", level.join("; ")));
            }
        }
        for (a, b) in self.covers() {
            out.push_str(&format!("  v{a} -> v{b};\n"));
        }
        out.push_str("}\n");
        out
    }
}

impl std::fmt::Debug for FiniteLattice {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "FiniteLattice(n={}, covers={:?})", self.n, self.covers())
    }
}

/// An element `m` of `set` with `set ⊆ (m]`, i.e. the greatest member.
/// `down` holds the principal-ideal rows of the ambient order.
fn greatest(set: &[u64], down: &[u64], stride: usize) -> Option<usize> {
    members(set, stride).find(|&m| covers_set(set, &down[m * stride..(m + 1) * stride]))
}

/// An element `m` of `set` with `set ⊆ [m)`, i.e. the least member.
/// `up` holds the principal-filter rows of the ambient order.
fn least(set: &[u64], up: &[u64], stride: usize) -> Option<usize> {
    members(set, stride).find(|&m| covers_set(set, &up[m * stride..(m + 1) * stride]))
}

fn members(set: &[u64], stride: usize) -> impl Iterator<Item = usize> + '_ {
    (0..stride * 64).filter(move |&i| set[i / 64] >> (i % 64) & 1 == 1)
}

fn covers_set(set: &[u64], row: &[u64]) -> bool {
    set.iter().zip(row).all(|(s, r)| s & !r == 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::are_isomorphic;
    use crate::expr::{boolean, chain, horizontal_sum, m_kappa, n5, ordinal_sum, product};

    fn corpus() -> Vec<FiniteLattice> {
        let mut v = vec![
            chain(1).unwrap(),
            chain(2).unwrap(),
            chain(4).unwrap(),
            boolean(2).unwrap(),
            boolean(3).unwrap(),
            m_kappa(3).unwrap(),
            n5(),
            product(&chain(2).unwrap(), &chain(3).unwrap()).unwrap(),
            ordinal_sum(&boolean(2).unwrap(), &chain(3).unwrap()).unwrap(),
        ];
        v.push(horizontal_sum(&chain(4).unwrap(), &chain(4).unwrap()).unwrap());
        v
    }

    #[test]
    fn validate_trivial_chain_and_diamond() {
        let c1 = FiniteLattice::validate(&[vec![true]]).unwrap();
        assert_eq!(c1.n(), 1);
        assert_eq!(c1.bottom(), c1.top());

        let c3 = chain(3).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(c3.meet(i, j), i.min(j));
                assert_eq!(c3.join(i, j), i.max(j));
            }
        }

        let d = FiniteLattice::from_covers(4, &[(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap();
        assert_eq!(d.join(1, 2), 3);
        assert_eq!(d.meet(1, 2), 0);
    }

    #[test]
    fn validate_rejects_bad_inputs() {
        // not transitive
        let m = vec![
            vec![true, true, false],
            vec![false, true, true],
            vec![false, false, true],
        ];
        assert!(matches!(
            FiniteLattice::validate(&m),
            Err(LattError::NotAPartialOrder(_))
        ));
        // two maximal elements: no least upper bound
        let m = vec![
            vec![true, true, true],
            vec![false, true, false],
            vec![false, false, true],
        ];
        assert!(matches!(
            FiniteLattice::validate(&m),
            Err(LattError::NotALattice(..))
        ));
        assert!(matches!(
            FiniteLattice::validate(&[]),
            Err(LattError::Unbounded)
        ));
    }

    #[test]
    fn covers_of_stock_lattices() {
        assert_eq!(chain(3).unwrap().covers(), vec![(0, 1), (1, 2)]);
        assert_eq!(boolean(2).unwrap().covers().len(), 4);
        assert_eq!(n5().covers().len(), 5);
    }

    #[test]
    fn cover_list_round_trips_through_closure() {
        for lat in corpus() {
            let back = FiniteLattice::from_covers(lat.n(), &lat.covers()).unwrap();
            for i in 0..lat.n() {
                for j in 0..lat.n() {
                    assert_eq!(lat.le(i, j), back.le(i, j));
                }
            }
        }
    }

    #[test]
    fn irreducibles_and_atoms() {
        let c5 = chain(5).unwrap();
        assert_eq!(c5.join_irreducibles().to_vec(), vec![1, 2, 3, 4]);
        let d = boolean(2).unwrap();
        assert_eq!(d.join_irreducibles(), d.atoms());
        assert!(!d.join_irreducibles().contains(d.top()));
        // horizontal sum of two chains with join-irreducible tops: the
        // coatoms are exactly the two glued chain tops.
        let a = horizontal_sum(&chain(3).unwrap(), &chain(4).unwrap()).unwrap();
        assert_eq!(a.coatoms().len(), 2);
    }

    #[test]
    fn duality() {
        for lat in corpus() {
            let d = lat.dual();
            for i in 0..lat.n() {
                for j in 0..lat.n() {
                    assert_eq!(lat.le(i, j), d.le(j, i));
                    assert_eq!(lat.meet(i, j), d.join(i, j));
                }
            }
            assert_eq!(
                lat.join_irreducibles().to_vec(),
                d.meet_irreducibles().to_vec()
            );
        }
        assert!(are_isomorphic(&chain(4).unwrap(), &chain(4).unwrap().dual()).is_some());
        assert!(are_isomorphic(&n5(), &n5().dual()).is_some());
    }

    #[test]
    fn isomorphism_examples() {
        let c2sq = horizontal_sum(&chain(3).unwrap(), &chain(3).unwrap()).unwrap();
        assert!(are_isomorphic(&c2sq, &boolean(2).unwrap()).is_some());
        assert!(are_isomorphic(&n5(), &horizontal_sum(&chain(3).unwrap(), &chain(4).unwrap()).unwrap()).is_some());
        assert!(are_isomorphic(&chain(4).unwrap(), &boolean(2).unwrap()).is_none());
    }

    #[test]
    fn isomorphism_witnesses_preserve_order_both_ways() {
        for lat in corpus() {
            let d = lat.dual().dual();
            let iso = are_isomorphic(&lat, &d).unwrap();
            for i in 0..lat.n() {
                for j in 0..lat.n() {
                    assert_eq!(lat.le(i, j), d.le(iso[i], iso[j]));
                }
            }
        }
    }

    #[test]
    fn intervals() {
        let p = n5();
        assert!(iso(&p.interval(p.bottom(), p.top()).unwrap().0, &p));
        // [0, c] in the pentagon, where c is the upper element of the
        // long side, is a 3-chain.
        assert!(iso(&p.interval(0, 4).unwrap().0, &chain(3).unwrap()));
        let b3 = boolean(3).unwrap();
        let atom = b3.atoms().to_vec()[0];
        assert!(iso(&b3.interval(atom, b3.top()).unwrap().0, &boolean(2).unwrap()));
        assert!(matches!(p.interval(1, 3), Err(LattError::NotComparable(1, 3))));
    }

    fn iso(a: &FiniteLattice, b: &FiniteLattice) -> bool {
        are_isomorphic(a, b).is_some()
    }

    #[test]
    fn lattice_axioms_exhaustively() {
        for lat in corpus() {
            let n = lat.n();
            for x in 0..n {
                assert!(lat.le(lat.bottom(), x) && lat.le(x, lat.top()));
                for y in 0..n {
                    let (m, j) = (lat.meet(x, y), lat.join(x, y));
                    assert!(lat.le(m, x) && lat.le(x, j));
                    assert_eq!(lat.meet(x, y), lat.meet(y, x));
                    assert_eq!(lat.join(x, lat.meet(x, y)), x, "absorption");
                    assert_eq!(lat.meet(x, lat.join(x, y)), x, "absorption");
                    for z in 0..n {
                        assert_eq!(lat.meet(lat.meet(x, y), z), lat.meet(x, lat.meet(y, z)));
                        assert_eq!(lat.join(lat.join(x, y), z), lat.join(x, lat.join(y, z)));
                    }
                }
            }
        }
    }

    #[test]
    fn join_irreducibles_are_join_dense() {
        for lat in corpus() {
            assert!(lat.is_join_dense(&lat.join_irreducibles()));
            assert!(lat.is_meet_dense(&lat.meet_irreducibles()));
        }
    }

    #[test]
    fn labels_and_dot() {
        let c3 = chain(3).unwrap();
        assert_eq!(c3.labels(), vec!["0", "a1", "1"]);
        let dot = n5().to_dot("n5");
        assert!(dot.contains("rank=same"));
        assert_eq!(dot.matches("->").count(), 5);
    }

    #[test]
    fn json_round_trip_is_byte_stable() {
        for lat in corpus() {
            let doc = lat.to_doc();
            let text = serde_json::to_string(&doc).unwrap();
            let doc2: AlgebraDoc = serde_json::from_str(&text).unwrap();
            let lat2 = FiniteLattice::from_doc(&doc2).unwrap();
            assert_eq!(serde_json::to_string(&lat2.to_doc()).unwrap(), text);
        }
    }

    #[test]
    fn sublattice_checks() {
        let b3 = boolean(3).unwrap();
        let mut s = crate::bits::ElementSet::empty(8);
        for x in [0usize, 1, 2, 3] {
            s.insert(x);
        }
        assert!(b3.is_sublattice_set(&s));
        let mut t = crate::bits::ElementSet::empty(8);
        for x in [0usize, 1, 2] {
            t.insert(x);
        }
        assert!(!b3.is_sublattice_set(&t)); // missing 1∨2
        assert!(b3.is_distributive());
        assert!(!m_kappa(3).unwrap().is_distributive());
        assert!(!n5().is_distributive());
    }
}
