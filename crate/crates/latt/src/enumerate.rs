//! Isomorph-free exhaustive generation of all bounded lattices with a
//! given number of elements.
//!
//! A bounded lattice with `n ≥ 2` elements is exactly a meet-semilattice
//! on `n - 1` elements with a new top adjoined: removing the top of a
//! lattice keeps meets, and any finite meet-semilattice with a top added
//! has joins (the meet of the common upper bounds, which always include
//! the top). Generation therefore runs level by level over
//! meet-semilattices, adding one maximal element at a time and rejecting
//! isomorphs via canonical forms; correctness is pinned against a naive
//! poset-filter oracle in the tests.

use crate::canon::{canonical_form, OrderView};
use crate::error::{LattError, Result};
use crate::lattice::FiniteLattice;
use crate::wdl::{enumerate_weak_complementations, WeakComplementation};
use std::collections::HashSet;
use std::io::{BufRead, Write};

/// Enumeration is exhaustive only at desk scale; the catalog growth is
/// roughly an order of magnitude per element.
pub const MAX_ENUM_N: usize = 9;

/// The complete isomorph-free catalog of `n`-element lattices, in a
/// deterministic canonical order.
pub struct LatticeCatalog {
    pub n: usize,
    pub lattices: Vec<FiniteLattice>,
}

/// A meet-semilattice with a bottom, on at most 63 elements, stored as
/// one ideal word per element (`down[i]` = the principal ideal of `i`).
#[derive(Clone, PartialEq, Eq, Hash)]
struct SemiState {
    n: usize,
    down: Vec<u64>,
}

struct DownView<'a> {
    n: usize,
    down: &'a [u64],
}

impl OrderView for DownView<'_> {
    fn size(&self) -> usize {
        self.n
    }
    fn le(&self, i: usize, j: usize) -> bool {
        self.down[j] >> i & 1 == 1
    }
}

impl SemiState {
    fn single() -> SemiState {
        SemiState {
            n: 1,
            down: vec![1],
        }
    }

    fn cert(&self) -> Vec<u64> {
        canonical_form(&DownView {
            n: self.n,
            down: &self.down,
        })
        .0
    }

    /// All valid ideals usable as the strict down-set of a new maximal
    /// element: down-closed, nonempty, and such that every existing
    /// element still has a meet with the newcomer (the ideal restricted
    /// to any principal ideal has a greatest element).
    fn extensions(&self) -> Vec<u64> {
        let full: u64 = if self.n == 64 {
            u64::MAX
        } else {
            (1u64 << self.n) - 1
        };
        let mut out = Vec::new();
        'subset: for d in 1..=full {
            for x in 0..self.n {
                if d >> x & 1 == 1 {
                    if self.down[x] & !d != 0 {
                        continue 'subset; // not down-closed
                    }
                } else {
                    let b = d & self.down[x];
                    if !(0..self.n).any(|z| b >> z & 1 == 1 && b & !self.down[z] == 0) {
                        continue 'subset; // no greatest lower bound with x
                    }
                }
            }
            out.push(d);
        }
        out
    }

    fn extend(&self, ideal: u64) -> SemiState {
        let mut down = self.down.clone();
        down.push(ideal | 1 << self.n);
        SemiState {
            n: self.n + 1,
            down,
        }
    }

    /// Adjoins a global top and produces the lattice.
    fn into_lattice(self) -> FiniteLattice {
        let n = self.n + 1;
        let mut matrix = vec![vec![false; n]; n];
        for i in 0..self.n {
            for j in 0..self.n {
                matrix[i][j] = self.down[j] >> i & 1 == 1;
            }
        }
        for row in matrix.iter_mut().take(n) {
            row[n - 1] = true;
        }
        matrix[n - 1][n - 1] = true;
        FiniteLattice::validate(&matrix).expect("semilattice plus top is a lattice")
    }
}

/// Enumerates all `n`-element bounded lattices up to isomorphism.
pub fn enumerate_lattices(n: usize) -> Result<LatticeCatalog> {
    if n == 0 {
        return Err(LattError::Unbounded);
    }
    if n > MAX_ENUM_N {
        return Err(LattError::CapExceeded(n, MAX_ENUM_N));
    }
    if n == 1 {
        return Ok(LatticeCatalog {
            n,
            lattices: vec![FiniteLattice::from_covers(1, &[])?],
        });
    }
    let mut level = vec![SemiState::single()];
    for _ in 1..n - 1 {
        let mut next = Vec::new();
        let mut seen: HashSet<Vec<u64>> = HashSet::new();
        for state in &level {
            for ideal in state.extensions() {
                let candidate = state.extend(ideal);
                if seen.insert(candidate.cert()) {
                    next.push(candidate);
                }
            }
        }
        level = next;
    }
    let mut with_cert: Vec<(Vec<u64>, FiniteLattice)> = level
        .into_iter()
        .map(|s| {
            let lat = s.into_lattice();
            (canonical_form(&lat).0, lat)
        })
        .collect();
    with_cert.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(LatticeCatalog {
        n,
        lattices: with_cert.into_iter().map(|(_, l)| l).collect(),
    })
}

/// Streams every `(lattice, weak complementation)` pair with the lattice
/// taken up to isomorphism from the catalog.
pub fn enumerate_wcl_algebras(
    n: usize,
) -> Result<impl Iterator<Item = (FiniteLattice, WeakComplementation)>> {
    let catalog = enumerate_lattices(n)?;
    Ok(catalog.lattices.into_iter().flat_map(|lat| {
        enumerate_weak_complementations(&lat)
            .into_iter()
            .map(move |d| (lat.clone(), d))
            .collect::<Vec<_>>()
    }))
}

impl LatticeCatalog {
    /// Writes the catalog as JSON lines of cover lists.
    pub fn save<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        for lat in &self.lattices {
            let doc = lat.to_doc();
            writeln!(w, "{}", serde_json::to_string(&doc)?)?;
        }
        Ok(())
    }

    /// Reads a catalog cache written by [`LatticeCatalog::save`].
    pub fn load<R: BufRead>(n: usize, r: R) -> Result<LatticeCatalog> {
        let mut lattices = Vec::new();
        for line in r.lines() {
            let line = line.map_err(|e| LattError::Parse(e.to_string()))?;
            if line.trim().is_empty() {
                continue;
            }
            let doc: crate::lattice::AlgebraDoc =
                serde_json::from_str(&line).map_err(|e| LattError::Parse(e.to_string()))?;
            let lat = FiniteLattice::from_doc(&doc)?;
            if lat.n() != n {
                return Err(LattError::Parse(format!(
                    "cache entry has {} elements, expected {n}",
                    lat.n()
                )));
            }
            lattices.push(lat);
        }
        Ok(LatticeCatalog { n, lattices })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::are_isomorphic;

    #[test]
    fn small_catalogs() {
        let counts: Vec<usize> = (1..=7)
            .map(|n| enumerate_lattices(n).unwrap().lattices.len())
            .collect();
        assert_eq!(counts, vec![1, 1, 1, 2, 5, 15, 53]);
        assert!(matches!(
            enumerate_lattices(10),
            Err(LattError::CapExceeded(10, MAX_ENUM_N))
        ));
    }

    #[test]
    fn catalog_members_are_valid_and_pairwise_distinct() {
        for n in 1..=6 {
            let cat = enumerate_lattices(n).unwrap();
            for lat in &cat.lattices {
                assert_eq!(lat.n(), n);
                // validate() already ran; absorption spot check
                for x in 0..n {
                    for y in 0..n {
                        assert_eq!(lat.join(x, lat.meet(x, y)), x);
                    }
                }
            }
            for i in 0..cat.lattices.len() {
                for j in i + 1..cat.lattices.len() {
                    assert!(are_isomorphic(&cat.lattices[i], &cat.lattices[j]).is_none());
                }
            }
        }
    }

    #[test]
    fn catalog_matches_poset_sieve() {
        for n in 1..=6 {
            let cat = enumerate_lattices(n).unwrap();
            let sieve = crate::oracle::lattices_by_poset_sieve(n).unwrap();
            assert_eq!(cat.lattices.len(), sieve.len());
            for lat in &sieve {
                assert_eq!(
                    cat.lattices
                        .iter()
                        .filter(|c| are_isomorphic(c, lat).is_some())
                        .count(),
                    1
                );
            }
        }
    }

    #[test]
    fn larger_catalog_counts_are_stable() {
        assert_eq!(enumerate_lattices(8).unwrap().lattices.len(), 222);
        assert_eq!(enumerate_lattices(9).unwrap().lattices.len(), 1078);
    }

    #[test]
    fn wcl_algebra_stream() {
        assert_eq!(enumerate_wcl_algebras(2).unwrap().count(), 1);
        let pairs: Vec<_> = enumerate_wcl_algebras(4).unwrap().collect();
        assert_eq!(pairs.len(), 3);
        // the pentagon contributes exactly two pairs at size five
        let pentagon = crate::expr::n5();
        let from_pentagon = enumerate_wcl_algebras(5)
            .unwrap()
            .filter(|(l, _)| are_isomorphic(l, &pentagon).is_some())
            .count();
        assert_eq!(from_pentagon, 2);
    }

    #[test]
    fn cache_round_trip() {
        let cat = enumerate_lattices(5).unwrap();
        let mut buf = Vec::new();
        cat.save(&mut buf).unwrap();
        let back = LatticeCatalog::load(5, &buf[..]).unwrap();
        assert_eq!(back.lattices.len(), cat.lattices.len());
        for (a, b) in cat.lattices.iter().zip(&back.lattices) {
            assert_eq!(a.covers(), b.covers());
        }
        assert!(LatticeCatalog::load(4, &buf[..]).is_err());
    }
}
