//! Independent brute-force oracles.
//!
//! These deliberately ignore the main algorithms: congruences are found
//! by sieving every partition, lattices by sieving every naturally
//! labeled partial order, and weak complementations by sieving every
//! unary map. The verification suites and tests compare the fast paths
//! against these at small sizes.

use crate::canon::canonical_form;
use crate::congruence::{sort_congruences, Partition};
use crate::error::{LattError, Result};
use crate::lattice::FiniteLattice;
use crate::wdl::{is_weak_complementation, WeakComplementation};

/// Every congruence of the lattice, found by enumerating all partitions
/// of the element set (restricted-growth strings) and keeping the
/// compatible ones. Feasible for `n` up to about 8.
pub fn congruences_by_partition_sieve(lat: &FiniteLattice) -> Vec<Partition> {
    let n = lat.n();
    let mut out = Vec::new();
    let mut assignment = vec![0u16; n];
    sieve_partitions(lat, &mut assignment, 1, 1, &mut out);
    sort_congruences(out)
}

fn sieve_partitions(
    lat: &FiniteLattice,
    assignment: &mut Vec<u16>,
    pos: usize,
    used: u16,
    out: &mut Vec<Partition>,
) {
    let n = lat.n();
    if pos == n {
        let p = Partition::from_blocks(
            n,
            &group_by_id(assignment)
                .iter()
                .map(|b| b.as_slice())
                .collect::<Vec<_>>(),
        );
        if p.is_congruence(lat) {
            out.push(p);
        }
        return;
    }
    for b in 0..=used {
        assignment[pos] = b;
        sieve_partitions(lat, assignment, pos + 1, used.max(b + 1), out);
    }
}

fn group_by_id(assignment: &[u16]) -> Vec<Vec<usize>> {
    let blocks = assignment.iter().map(|&b| b as usize).max().unwrap_or(0) + 1;
    let mut out = vec![Vec::new(); blocks];
    for (x, &b) in assignment.iter().enumerate() {
        out[b as usize].push(x);
    }
    out
}

/// Every `n`-element lattice up to isomorphism, found by sieving all
/// naturally labeled orders (order relations contained in the numeric
/// order, which lose no isomorphism classes since every finite poset has
/// a linear extension). Feasible for `n` up to 7.
pub fn lattices_by_poset_sieve(n: usize) -> Result<Vec<FiniteLattice>> {
    if n == 0 {
        return Err(LattError::Unbounded);
    }
    if n > 7 {
        return Err(LattError::CapExceeded(n, 7));
    }
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    let mut seen = std::collections::HashSet::new();
    let mut out = Vec::new();
    'candidate: for mask in 0u64..(1u64 << pairs.len()) {
        let mut le = vec![vec![false; n]; n];
        for (i, row) in le.iter_mut().enumerate() {
            row[i] = true;
        }
        for (bit, &(i, j)) in pairs.iter().enumerate() {
            if mask >> bit & 1 == 1 {
                le[i][j] = true;
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                if le[i][j] {
                    for k in j + 1..n {
                        if le[j][k] && !le[i][k] {
                            continue 'candidate; // not transitive
                        }
                    }
                }
            }
        }
        let Ok(lat) = FiniteLattice::validate(&le) else {
            continue;
        };
        if seen.insert(canonical_form(&lat).0) {
            out.push(lat);
        }
    }
    Ok(out)
}

/// Every weak complementation, found by sieving all `n^n` unary maps.
/// Feasible for `n` up to 6.
pub fn weak_complementations_by_map_sieve(lat: &FiniteLattice) -> Vec<WeakComplementation> {
    let n = lat.n();
    assert!(n <= 6, "map sieve is exponential; use the pruned search");
    let mut out = Vec::new();
    let total = (n as u64).pow(n as u32);
    for code in 0..total {
        let mut c = code;
        let mut table = Vec::with_capacity(n);
        for _ in 0..n {
            table.push((c % n as u64) as usize);
            c /= n as u64;
        }
        if is_weak_complementation(lat, &table) {
            out.push(WeakComplementation::new(lat, table).unwrap());
        }
    }
    out
}
