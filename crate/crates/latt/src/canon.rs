//! Canonical labeling and isomorphism testing for finite posets.
//!
//! The approach is iterated invariant refinement (height, depth, cover
//! degrees, then neighbor color multisets) followed by backtracking. The
//! canonical form minimizes the relabeled order matrix bit string, so two
//! posets are isomorphic exactly when their certificates agree.

use crate::lattice::FiniteLattice;

/// A poset given by its order relation, the minimal interface the
/// canonicalizer needs.
pub trait OrderView {
    fn size(&self) -> usize;
    fn le(&self, i: usize, j: usize) -> bool;
}

impl OrderView for FiniteLattice {
    fn size(&self) -> usize {
        self.n()
    }
    fn le(&self, i: usize, j: usize) -> bool {
        FiniteLattice::le(self, i, j)
    }
}

/// A poset on at most 64 elements with one order word per element;
/// bit `j` of `rows[i]` means `i <= j`.
pub struct WordPoset<'a> {
    pub n: usize,
    pub rows: &'a [u64],
}

impl OrderView for WordPoset<'_> {
    fn size(&self) -> usize {
        self.n
    }
    fn le(&self, i: usize, j: usize) -> bool {
        self.rows[i] >> j & 1 == 1
    }
}

fn mix(a: u64, b: u64) -> u64 {
    let x = (a ^ b.rotate_left(31)).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    x ^ (x >> 29)
}

fn hash_slice(seed: u64, xs: &[u64]) -> u64 {
    xs.iter().fold(seed, |acc, &x| mix(acc, x))
}

fn cover_lists(p: &impl OrderView) -> (Vec<Vec<usize>>, Vec<Vec<usize>>) {
    let n = p.size();
    let mut lows = vec![Vec::new(); n];
    let mut ups = vec![Vec::new(); n];
    for a in 0..n {
        for b in 0..n {
            if a != b
                && p.le(a, b)
                && !(0..n).any(|c| c != a && c != b && p.le(a, c) && p.le(c, b))
            {
                lows[b].push(a);
                ups[a].push(b);
            }
        }
    }
    (lows, ups)
}

/// Iterated color refinement. Colors are iso-invariant hashes; two
/// elements that end up with different colors cannot correspond under any
/// isomorphism. `extra` feeds per-element invariants into the initial
/// round (used to make unary operation tables part of the structure).
pub fn refined_colors(p: &impl OrderView, extra: &[u64]) -> Vec<u64> {
    let n = p.size();
    let (lows, ups) = cover_lists(p);
    let mut height = vec![0u64; n];
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| (0..n).filter(|&j| p.le(j, i)).count());
    for &i in &order {
        height[i] = lows[i].iter().map(|&c| height[c] + 1).max().unwrap_or(0);
    }
    let mut depth = vec![0u64; n];
    for &i in order.iter().rev() {
        depth[i] = ups[i].iter().map(|&c| depth[c] + 1).max().unwrap_or(0);
    }
    let mut colors: Vec<u64> = (0..n)
        .map(|i| {
            let down = (0..n).filter(|&j| p.le(j, i)).count() as u64;
            let up = (0..n).filter(|&j| p.le(i, j)).count() as u64;
            hash_slice(
                0x5151_7ABA_u64,
                &[
                    height[i],
                    depth[i],
                    down,
                    up,
                    lows[i].len() as u64,
                    ups[i].len() as u64,
                    extra.get(i).copied().unwrap_or(0),
                ],
            )
        })
        .collect();
    let mut distinct = count_distinct(&colors);
    loop {
        let mut next = Vec::with_capacity(n);
        for i in 0..n {
            let mut lo: Vec<u64> = lows[i].iter().map(|&c| colors[c]).collect();
            let mut hi: Vec<u64> = ups[i].iter().map(|&c| colors[c]).collect();
            lo.sort_unstable();
            hi.sort_unstable();
            let mut h = mix(colors[i], 0xC0FFEE);
            h = hash_slice(h, &lo);
            h = hash_slice(mix(h, 0xBEEF), &hi);
            next.push(h);
        }
        let d = count_distinct(&next);
        colors = next;
        if d == distinct || d == n {
            return colors;
        }
        distinct = d;
    }
}

fn count_distinct(xs: &[u64]) -> usize {
    let mut v = xs.to_vec();
    v.sort_unstable();
    v.dedup();
    v.len()
}

/// Canonical certificate of a poset (at most 64 elements) plus the
/// labeling that realizes it: `perm[new] = old`.
pub fn canonical_form(p: &impl OrderView) -> (Vec<u64>, Vec<usize>) {
    let n = p.size();
    assert!(n <= 64, "canonical_form supports at most 64 elements");
    if n == 0 {
        return (Vec::new(), Vec::new());
    }
    let colors = refined_colors(p, &[]);
    // Position k must receive an element whose color is target[k].
    let mut target: Vec<u64> = colors.clone();
    target.sort_unstable();
    let mut search = CanonSearch {
        p,
        n,
        colors: &colors,
        target: &target,
        perm: Vec::with_capacity(n),
        used: 0u64,
        bits: Vec::with_capacity(n * n),
        best_bits: None,
        best_perm: Vec::new(),
    };
    search.run(0);
    let bits = search.best_bits.expect("canonical search found a labeling");
    (pack_bits(&bits), search.best_perm)
}

struct CanonSearch<'a, P: OrderView> {
    p: &'a P,
    n: usize,
    colors: &'a [u64],
    target: &'a [u64],
    perm: Vec<usize>,
    used: u64,
    bits: Vec<u8>,
    best_bits: Option<Vec<u8>>,
    best_perm: Vec<usize>,
}

impl<P: OrderView> CanonSearch<'_, P> {
    fn run(&mut self, pos: usize) {
        if pos == self.n {
            if self
                .best_bits
                .as_ref()
                .map_or(true, |best| self.bits < *best)
            {
                self.best_bits = Some(self.bits.clone());
                self.best_perm = self.perm.clone();
            }
            return;
        }
        for e in 0..self.n {
            if self.used >> e & 1 == 1 || self.colors[e] != self.target[pos] {
                continue;
            }
            let mark = self.bits.len();
            for q in 0..pos {
                self.bits.push(self.p.le(e, self.perm[q]) as u8);
                self.bits.push(self.p.le(self.perm[q], e) as u8);
            }
            let keep = match &self.best_bits {
                Some(best) => self.bits[..] <= best[..self.bits.len()],
                None => true,
            };
            if keep {
                self.perm.push(e);
                self.used |= 1 << e;
                self.run(pos + 1);
                self.used &= !(1 << e);
                self.perm.pop();
            }
            self.bits.truncate(mark);
        }
    }
}

fn pack_bits(bits: &[u8]) -> Vec<u64> {
    let mut out = vec![0u64; bits.len().div_ceil(64).max(1)];
    for (i, &b) in bits.iter().enumerate() {
        if b != 0 {
            out[i / 64] |= 1 << (i % 64);
        }
    }
    out.push(bits.len() as u64);
    out
}

/// Order-isomorphism witness between two lattices, or `None`.
/// The returned map sends indices of `a` to indices of `b` and preserves
/// the order in both directions.
pub fn are_isomorphic(a: &FiniteLattice, b: &FiniteLattice) -> Option<Vec<usize>> {
    are_isomorphic_with_ops(a, &[], b, &[])
}

/// Isomorphism that additionally commutes with paired unary operation
/// tables (`ops_a[k]` on `a` corresponds to `ops_b[k]` on `b`).
pub fn are_isomorphic_with_ops(
    a: &FiniteLattice,
    ops_a: &[&[usize]],
    b: &FiniteLattice,
    ops_b: &[&[usize]],
) -> Option<Vec<usize>> {
    if a.n() != b.n() || ops_a.len() != ops_b.len() {
        return None;
    }
    let n = a.n();
    let extra_a = op_invariants(n, ops_a);
    let extra_b = op_invariants(n, ops_b);
    let ca = refined_colors(a, &extra_a);
    let cb = refined_colors(b, &extra_b);
    let mut sa = ca.clone();
    let mut sb = cb.clone();
    sa.sort_unstable();
    sb.sort_unstable();
    if sa != sb {
        return None;
    }
    // Map elements of `a` in order of ascending color-class size.
    let mut order: Vec<usize> = (0..n).collect();
    let class_size = |c: u64| ca.iter().filter(|&&x| x == c).count();
    order.sort_by_key(|&i| (class_size(ca[i]), ca[i], i));
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    if extend_iso(a, b, ops_a, ops_b, &ca, &cb, &order, 0, &mut map, &mut used) {
        Some(map)
    } else {
        None
    }
}

fn op_invariants(n: usize, ops: &[&[usize]]) -> Vec<u64> {
    // Iterate op applications a few times so elements are distinguished by
    // the tower of images, not only the first one.
    let mut inv = vec![0u64; n];
    for _ in 0..3 {
        let prev = inv.clone();
        for x in 0..n {
            let mut h = mix(prev[x], 0xA11CE);
            for op in ops {
                h = mix(h, prev[op[x]].wrapping_add(1));
                h = mix(h, (op[x] == x) as u64);
            }
            inv[x] = h;
        }
    }
    inv
}

#[allow(clippy::too_many_arguments)]
fn extend_iso(
    a: &FiniteLattice,
    b: &FiniteLattice,
    ops_a: &[&[usize]],
    ops_b: &[&[usize]],
    ca: &[u64],
    cb: &[u64],
    order: &[usize],
    pos: usize,
    map: &mut Vec<usize>,
    used: &mut Vec<bool>,
) -> bool {
    if pos == order.len() {
        // Order and partial op checks passed along the way; confirm ops.
        return ops_a.iter().zip(ops_b).all(|(oa, ob)| {
            (0..a.n()).all(|x| map[oa[x]] == ob[map[x]])
        });
    }
    let x = order[pos];
    'cand: for y in 0..b.n() {
        if used[y] || ca[x] != cb[y] {
            continue;
        }
        for q in 0..pos {
            let (px, py) = (order[q], map[order[q]]);
            if a.le(x, px) != b.le(y, py) || a.le(px, x) != b.le(py, y) {
                continue 'cand;
            }
        }
        for (oa, ob) in ops_a.iter().zip(ops_b) {
            if map[oa[x]] != usize::MAX && map[oa[x]] != ob[y] {
                continue 'cand;
            }
        }
        map[x] = y;
        used[y] = true;
        if extend_iso(a, b, ops_a, ops_b, ca, cb, order, pos + 1, map, used) {
            return true;
        }
        map[x] = usize::MAX;
        used[y] = false;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::FiniteLattice;

    fn chain(k: usize) -> FiniteLattice {
        let covers: Vec<(usize, usize)> = (1..k).map(|i| (i - 1, i)).collect();
        FiniteLattice::from_covers(k, &covers).unwrap()
    }

    fn diamond() -> FiniteLattice {
        FiniteLattice::from_covers(4, &[(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap()
    }

    #[test]
    fn chains_are_isomorphic_only_to_chains() {
        let relabeled =
            FiniteLattice::from_covers(4, &[(2, 0), (0, 3), (3, 1)]).unwrap();
        let iso = are_isomorphic(&chain(4), &relabeled).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(chain(4).le(i, j), relabeled.le(iso[i], iso[j]));
            }
        }
        assert!(are_isomorphic(&chain(4), &diamond()).is_none());
    }

    #[test]
    fn canonical_form_separates_and_identifies() {
        let d1 = diamond();
        let d2 = FiniteLattice::from_covers(4, &[(3, 1), (3, 2), (1, 0), (2, 0)]).unwrap();
        assert_eq!(canonical_form(&d1).0, canonical_form(&d2).0);
        assert_ne!(canonical_form(&d1).0, canonical_form(&chain(4)).0);
    }

    #[test]
    fn op_aware_isomorphism_distinguishes_tables() {
        let d = diamond();
        let boolean = vec![3usize, 2, 1, 0];
        let trivial = vec![3usize, 3, 3, 0];
        assert!(are_isomorphic_with_ops(&d, &[&boolean], &d, &[&boolean]).is_some());
        assert!(are_isomorphic_with_ops(&d, &[&boolean], &d, &[&trivial]).is_none());
    }
}
