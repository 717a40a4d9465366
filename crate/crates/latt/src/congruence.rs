//! Congruences of finite lattices: principal congruences, the full
//! congruence lattice, filtered congruence sets, quotients, and the
//! composition of congruences along ordinal and horizontal sums.

use crate::bits::ElementSet;
use crate::error::{LattError, Result};
use crate::lattice::FiniteLattice;

/// An equivalence relation on `0..n`, normalized so that block ids are
/// assigned in order of each block's least member. Two partitions are
/// equal as relations exactly when their `block_of` vectors are equal.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    block_of: Vec<u16>,
}

impl Partition {
    pub fn identity(n: usize) -> Partition {
        Partition {
            block_of: (0..n as u16).collect(),
        }
    }

    pub fn full(n: usize) -> Partition {
        Partition {
            block_of: vec![0; n.max(1)],
        }
    }

    /// The equivalence with `s` as one class and all other classes
    /// singletons.
    pub fn eps(n: usize, s: &ElementSet) -> Partition {
        let mut uf = UnionFind::new(n);
        let mut prev = None;
        for x in s.iter() {
            if let Some(p) = prev {
                uf.union(p, x);
            }
            prev = Some(x);
        }
        uf.into_partition()
    }

    /// Builds the equivalence whose nonsingleton classes are the given
    /// pairwise-disjoint blocks.
    pub fn from_blocks(n: usize, blocks: &[&[usize]]) -> Partition {
        let mut uf = UnionFind::new(n);
        for block in blocks {
            for w in block.windows(2) {
                uf.union(w[0], w[1]);
            }
        }
        uf.into_partition()
    }

    pub fn n(&self) -> usize {
        self.block_of.len()
    }

    pub fn block_id(&self, x: usize) -> usize {
        self.block_of[x] as usize
    }

    pub fn same(&self, x: usize, y: usize) -> bool {
        self.block_of[x] == self.block_of[y]
    }

    pub fn block_count(&self) -> usize {
        self.block_of.iter().map(|&b| b as usize).max().unwrap_or(0) + 1
    }

    /// Blocks listed by least member, each sorted.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.block_count()];
        for (x, &b) in self.block_of.iter().enumerate() {
            out[b as usize].push(x);
        }
        out
    }

    pub fn block_of_element(&self, x: usize) -> Vec<usize> {
        let b = self.block_of[x];
        (0..self.n()).filter(|&y| self.block_of[y] == b).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.block_count() == self.n()
    }

    pub fn is_full(&self) -> bool {
        self.block_count() == 1
    }

    /// Refinement order: every class of `self` lies inside a class of
    /// `other`.
    pub fn le(&self, other: &Partition) -> bool {
        let mut image: Vec<Option<u16>> = vec![None; self.block_count()];
        for x in 0..self.n() {
            let b = self.block_of[x] as usize;
            match image[b] {
                None => image[b] = Some(other.block_of[x]),
                Some(i) => {
                    if i != other.block_of[x] {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Join in the lattice of equivalences: transitive closure of the
    /// union of the two relations.
    pub fn join(&self, other: &Partition) -> Partition {
        let n = self.n();
        let mut uf = UnionFind::new(n);
        let mut rep_self = vec![usize::MAX; self.block_count()];
        let mut rep_other = vec![usize::MAX; other.block_count()];
        for x in 0..n {
            let a = self.block_of[x] as usize;
            if rep_self[a] == usize::MAX {
                rep_self[a] = x;
            } else {
                uf.union(rep_self[a], x);
            }
            let b = other.block_of[x] as usize;
            if rep_other[b] == usize::MAX {
                rep_other[b] = x;
            } else {
                uf.union(rep_other[b], x);
            }
        }
        uf.into_partition()
    }

    /// Meet: intersection of the two relations.
    pub fn meet(&self, other: &Partition) -> Partition {
        let n = self.n();
        let mut ids = std::collections::HashMap::new();
        let mut block_of = vec![0u16; n];
        for x in 0..n {
            let key = (self.block_of[x], other.block_of[x]);
            let next = ids.len() as u16;
            block_of[x] = *ids.entry(key).or_insert(next);
        }
        Partition { block_of }
    }

    /// Compatibility with meet and join: the congruence property.
    pub fn is_congruence(&self, lat: &FiniteLattice) -> bool {
        let n = lat.n();
        for x in 0..n {
            for y in x + 1..n {
                if !self.same(x, y) {
                    continue;
                }
                for z in 0..n {
                    if !self.same(lat.meet(x, z), lat.meet(y, z))
                        || !self.same(lat.join(x, z), lat.join(y, z))
                    {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Every class of a lattice congruence is an interval `[min, max]`.
    pub fn classes_are_intervals(&self, lat: &FiniteLattice) -> bool {
        self.blocks().iter().all(|block| {
            let lo = block.iter().fold(block[0], |a, &b| lat.meet(a, b));
            let hi = block.iter().fold(block[0], |a, &b| lat.join(a, b));
            block.len() == (0..lat.n()).filter(|&x| lat.le(lo, x) && lat.le(x, hi)).count()
                && block.iter().all(|&x| lat.le(lo, x) && lat.le(x, hi))
        })
    }

    pub fn singleton_class(&self, x: usize) -> bool {
        let b = self.block_of[x];
        self.block_of.iter().filter(|&&c| c == b).count() == 1
    }

    /// Transports the partition along an injective element map into a
    /// larger index space; elements not in the image stay singletons,
    /// except that images of equivalent elements are merged.
    pub fn map_into(&self, n_target: usize, map: &[usize]) -> Partition {
        let mut uf = UnionFind::new(n_target);
        let mut rep = vec![usize::MAX; self.block_count()];
        for (x, &b) in self.block_of.iter().enumerate() {
            let b = b as usize;
            if rep[b] == usize::MAX {
                rep[b] = map[x];
            } else {
                uf.union(rep[b], map[x]);
            }
        }
        uf.into_partition()
    }
}

impl std::fmt::Debug for Partition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "eq(")?;
        for (i, b) in self.blocks().iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(
                f,
                "{{{}}}",
                b.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
            )?;
        }
        write!(f, ")")
    }
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns true when the classes were distinct.
    pub fn union(&mut self, x: usize, y: usize) -> bool {
        let (rx, ry) = (self.find(x), self.find(y));
        if rx == ry {
            return false;
        }
        // Keep the smaller index as the root so normalization is cheap.
        let (lo, hi) = (rx.min(ry), rx.max(ry));
        self.parent[hi] = lo;
        true
    }

    pub fn into_partition(mut self) -> Partition {
        let n = self.parent.len();
        let mut ids = vec![u16::MAX; n];
        let mut next = 0u16;
        let mut block_of = vec![0u16; n];
        for x in 0..n {
            let r = self.find(x);
            if ids[r] == u16::MAX {
                ids[r] = next;
                next += 1;
            }
            block_of[x] = ids[r];
        }
        Partition { block_of }
    }
}

/// Closes the seed pairs into the least lattice congruence containing
/// them: repeatedly force `x∧z ≡ y∧z` and `x∨z ≡ y∨z` for every newly
/// merged pair until stable.
pub fn congruence_closure(lat: &FiniteLattice, seeds: &[(usize, usize)]) -> Partition {
    let n = lat.n();
    let mut uf = UnionFind::new(n);
    let mut work: Vec<(usize, usize)> = Vec::new();
    for &(a, b) in seeds {
        if uf.union(a, b) {
            work.push((a, b));
        }
    }
    while let Some((x, y)) = work.pop() {
        for z in 0..n {
            let (mx, my) = (lat.meet(x, z), lat.meet(y, z));
            if uf.union(mx, my) {
                work.push((mx, my));
            }
            let (jx, jy) = (lat.join(x, z), lat.join(y, z));
            if uf.union(jx, jy) {
                work.push((jx, jy));
            }
        }
    }
    uf.into_partition()
}

/// The principal congruence generated by the pair `(a, b)`.
pub fn principal_congruence(lat: &FiniteLattice, a: usize, b: usize) -> Partition {
    congruence_closure(lat, &[(a, b)])
}

/// All congruences of the lattice, computed as the join-closure of the
/// principal congruences of cover pairs. In a finite lattice every
/// congruence is such a join, so the result is complete.
pub fn all_congruences(lat: &FiniteLattice) -> Vec<Partition> {
    let mut gens: Vec<Partition> = Vec::new();
    for (a, b) in lat.covers() {
        let p = principal_congruence(lat, a, b);
        if !gens.contains(&p) {
            gens.push(p);
        }
    }
    let mut set: std::collections::BTreeSet<Partition> = std::collections::BTreeSet::new();
    set.insert(Partition::identity(lat.n()));
    let mut frontier: Vec<Partition> = set.iter().cloned().collect();
    while let Some(p) = frontier.pop() {
        for g in &gens {
            let j = p.join(g);
            if set.insert(j.clone()) {
                frontier.push(j);
            }
        }
    }
    sort_congruences(set.into_iter().collect())
}

/// Deterministic presentation order: coarser congruences later, ties
/// broken by the normalized class vector.
pub fn sort_congruences(mut congs: Vec<Partition>) -> Vec<Partition> {
    congs.sort_by_key(|p| (p.n() - p.block_count(), p.clone()));
    congs.dedup();
    congs
}

/// Congruences whose bottom class and/or top class are singletons.
pub fn con_filtered(lat: &FiniteLattice, fix_bottom: bool, fix_top: bool) -> Vec<Partition> {
    all_congruences(lat)
        .into_iter()
        .filter(|p| {
            (!fix_bottom || p.singleton_class(lat.bottom()))
                && (!fix_top || p.singleton_class(lat.top()))
        })
        .collect()
}

/// The congruences of a lattice arranged as a lattice themselves, under
/// the refinement order.
pub struct ConLattice {
    pub order: FiniteLattice,
    pub congruences: Vec<Partition>,
}

impl ConLattice {
    /// Arranges an inclusion-closed set of congruences (closed under meet
    /// and join) as a lattice.
    pub fn from_set(congs: Vec<Partition>) -> Result<ConLattice> {
        let congs = sort_congruences(congs);
        let k = congs.len();
        let mut matrix = vec![vec![false; k]; k];
        for i in 0..k {
            for j in 0..k {
                matrix[i][j] = congs[i].le(&congs[j]);
            }
        }
        Ok(ConLattice {
            order: FiniteLattice::validate(&matrix)?,
            congruences: congs,
        })
    }

    pub fn len(&self) -> usize {
        self.congruences.len()
    }

    pub fn is_empty(&self) -> bool {
        self.congruences.is_empty()
    }

    pub fn index_of(&self, p: &Partition) -> Option<usize> {
        self.congruences.iter().position(|q| q == p)
    }

    /// Atoms of the congruence lattice as partitions.
    pub fn atom_congruences(&self) -> Vec<&Partition> {
        self.order
            .atoms()
            .iter()
            .map(|i| &self.congruences[i])
            .collect()
    }
}

/// The full congruence lattice `Con(L)`.
pub fn con_lattice(lat: &FiniteLattice) -> ConLattice {
    ConLattice::from_set(all_congruences(lat)).expect("Con(L) is always a lattice")
}

/// An algebra is subdirectly irreducible exactly when the identity
/// congruence has a unique upper cover in its congruence lattice, i.e.
/// there is a least nonidentity congruence.
pub fn is_subdirectly_irreducible(con: &ConLattice) -> bool {
    con.len() >= 2 && con.order.atoms().len() == 1
}

/// Quotient lattice by a congruence, together with the projection map
/// sending each element to its block index.
pub fn quotient(lat: &FiniteLattice, theta: &Partition) -> Result<(FiniteLattice, Vec<usize>)> {
    if theta.n() != lat.n() {
        return Err(LattError::NotACongruence(
            "partition size does not match the lattice".into(),
        ));
    }
    if !theta.is_congruence(lat) {
        return Err(LattError::NotACongruence(format!("{theta:?}")));
    }
    let k = theta.block_count();
    let mut matrix = vec![vec![false; k]; k];
    for x in 0..lat.n() {
        for y in 0..lat.n() {
            if lat.le(x, y) {
                matrix[theta.block_id(x)][theta.block_id(y)] = true;
            }
        }
    }
    // The block order inherits reflexivity/antisymmetry from convexity;
    // transitivity can need one closure pass.
    let mut changed = true;
    while changed {
        changed = false;
        for i in 0..k {
            for j in 0..k {
                if matrix[i][j] {
                    for l in 0..k {
                        if matrix[j][l] && !matrix[i][l] {
                            matrix[i][l] = true;
                            changed = true;
                        }
                    }
                }
            }
        }
    }
    let q = FiniteLattice::validate(&matrix)?;
    let proj = (0..lat.n()).map(|x| theta.block_id(x)).collect();
    Ok((q, proj))
}

/// Glues a congruence of `L` and one of `M` along the ordinal sum
/// `L ⊕ M`, using the sum's deterministic indexing. The top class of the
/// first and the bottom class of the second merge through the shared
/// element.
pub fn osum_congruence(
    l: &FiniteLattice,
    m: &FiniteLattice,
    alpha: &Partition,
    beta: &Partition,
) -> Partition {
    let n = l.n() + m.n() - 1;
    let map_m = osum_index_map(l, m);
    let lifted_a = alpha.map_into(n, &(0..l.n()).collect::<Vec<_>>());
    let lifted_b = beta.map_into(n, &map_m);
    lifted_a.join(&lifted_b)
}

pub fn osum_index_map(l: &FiniteLattice, m: &FiniteLattice) -> Vec<usize> {
    let mut map_m = vec![0usize; m.n()];
    let mut next = l.n();
    for j in 0..m.n() {
        if j == m.bottom() {
            map_m[j] = l.top();
        } else {
            map_m[j] = next;
            next += 1;
        }
    }
    map_m
}

/// Glues proper congruences of `L` and `M` along the horizontal sum
/// `L ⊞ M`; the bound classes merge through the shared bottom and top.
pub fn hsum_congruence(
    l: &FiniteLattice,
    m: &FiniteLattice,
    alpha: &Partition,
    beta: &Partition,
) -> Result<Partition> {
    if alpha.is_full() && l.n() > 1 || beta.is_full() && m.n() > 1 {
        return Err(LattError::FullCongruenceInHsum);
    }
    let n = l.n() + m.n() - 2;
    let map_m = hsum_index_map(l, m);
    let lifted_a = alpha.map_into(n, &(0..l.n()).collect::<Vec<_>>());
    let lifted_b = beta.map_into(n, &map_m);
    Ok(lifted_a.join(&lifted_b))
}

pub fn hsum_index_map(l: &FiniteLattice, m: &FiniteLattice) -> Vec<usize> {
    let mut map_m = vec![0usize; m.n()];
    let mut next = l.n();
    for j in 0..m.n() {
        if j == m.bottom() {
            map_m[j] = l.bottom();
        } else if j == m.top() {
            map_m[j] = l.top();
        } else {
            map_m[j] = next;
            next += 1;
        }
    }
    map_m
}

/// JSON document for one congruence: its classes.
pub fn blocks_json(p: &Partition) -> serde_json::Value {
    serde_json::json!({ "blocks": p.blocks() })
}
