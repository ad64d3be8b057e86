//! Canonical labeling and isomorph-free enumeration.
//!
//! Canonical form = the lexicographically least upper-triangle adjacency
//! bit-string (column-major, the graph6 bit order) over all vertex orderings
//! consistent with iterated color refinement. The search individualizes one
//! vertex of the first non-singleton cell at a time, re-refines, and prunes
//! with (a) prefix comparison against the current best string and (b)
//! automorphisms discovered at equal leaves.
//!
//! Enumeration extends each canonical (n-1)-vertex representative by a new
//! vertex joined to every neighbor subset, canonicalizes, and deduplicates
//! in a sharded hash set; the final sort (edge count, then form) makes the
//! output deterministic regardless of worker count.

use std::collections::HashSet;
use std::sync::Mutex;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Practical bound for canonical labeling.
pub const MAX_CANON_N: usize = 16;
/// Bound for isomorph-free enumeration.
pub const MAX_ENUM_N: usize = 10;

/// Total invariant: `n` in the top 8 bits, the canonical adjacency bit-string
/// in the low `C(n,2)` bits (most significant bit = first position). Equal
/// forms ⇔ isomorphic graphs.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct CanonicalForm(u128);

impl CanonicalForm {
    fn pack(n: usize, bits: u128) -> CanonicalForm {
        CanonicalForm(((n as u128) << 120) | bits)
    }

    pub fn n(&self) -> usize {
        (self.0 >> 120) as usize
    }

    pub fn bits(&self) -> u128 {
        self.0 & ((1u128 << 120) - 1)
    }

    pub fn edge_count(&self) -> usize {
        self.bits().count_ones() as usize
    }

    /// Byte representation suitable for hashing or file keys.
    pub fn bytes(&self) -> [u8; 16] {
        self.0.to_be_bytes()
    }

    pub fn to_graph(&self) -> Graph {
        let n = self.n();
        let t = n * n.saturating_sub(1) / 2;
        let bits = self.bits();
        let mut edges = Vec::new();
        let mut p = 0usize;
        for v in 1..n {
            for u in 0..v {
                if bits >> (t - 1 - p) & 1 == 1 {
                    edges.push((u, v));
                }
                p += 1;
            }
        }
        Graph::from_edges0(n, edges)
    }

    pub fn graph6(&self) -> String {
        self.to_graph().graph6_encode().expect("n <= 16")
    }
}

// --- refinement ---

/// One pass of stable color refinement. `colors[v]` in `0..k`, cells ordered
/// canonically (by signature). Returns the refined cell count.
fn refine(n: usize, adj: &[u16; 16], colors: &mut [u8; 16], mut k: usize) -> usize {
    loop {
        let mut masks = [0u16; 16];
        for v in 0..n {
            masks[colors[v] as usize] |= 1 << v;
        }
        // signature: old color in the top bits, then per-cell neighbor counts
        let mut sigs = [(0u128, 0u8); 16];
        for v in 0..n {
            let mut sig = (colors[v] as u128) << 64;
            for c in 0..k {
                let cnt = (adj[v] & masks[c]).count_ones() as u128;
                sig |= cnt << (4 * (15 - c));
            }
            sigs[v] = (sig, v as u8);
        }
        sigs[..n].sort_unstable();
        let mut new_k = 0usize;
        let mut last_sig = sigs[0].0;
        for &(sig, v) in &sigs[..n] {
            if sig != last_sig {
                new_k += 1;
                last_sig = sig;
            }
            colors[v as usize] = new_k as u8;
        }
        new_k += 1;
        if new_k == k {
            return k;
        }
        k = new_k;
    }
}

// --- canonical search ---

struct Searcher<'a> {
    n: usize,
    t: u32,
    adj: &'a [u16; 16],
    have_best: bool,
    best: u128,
    best_order: [u8; 16],
    autos: Vec<[u8; 16]>,
    path: [u8; 16],
    depth: usize,
}

const MAX_AUTOS: usize = 64;

impl<'a> Searcher<'a> {
    fn bits_for_order(&self, order: &[u8], count: usize) -> u128 {
        let mut bits: u128 = 0;
        let mut p = 0u32;
        let q = (count * count.saturating_sub(1) / 2) as u32;
        for v in 1..count {
            let row = self.adj[order[v] as usize];
            for u in 0..v {
                if row >> order[u] & 1 == 1 {
                    bits |= 1u128 << (q - 1 - p);
                }
                p += 1;
            }
        }
        bits
    }

    fn search(&mut self, colors: [u8; 16], k: usize) {
        if k == self.n {
            // leaf: a full ordering
            let mut order = [0u8; 16];
            for v in 0..self.n {
                order[colors[v] as usize] = v as u8;
            }
            let bits = self.bits_for_order(&order[..self.n], self.n);
            if !self.have_best || bits < self.best {
                self.have_best = true;
                self.best = bits;
                self.best_order = order;
            } else if bits == self.best && self.autos.len() < MAX_AUTOS {
                // equal strings expose an automorphism
                let mut gamma = [0u8; 16];
                for i in 0..self.n {
                    gamma[self.best_order[i] as usize] = order[i];
                }
                self.autos.push(gamma);
            }
            return;
        }
        // cells 0..j-1 are singletons; cell j is the first non-singleton
        let mut cell_size = [0u8; 16];
        for v in 0..self.n {
            cell_size[colors[v] as usize] += 1;
        }
        let mut j = 0usize;
        while cell_size[j] == 1 {
            j += 1;
        }
        // prefix pruning on the decided labels
        if self.have_best && j >= 2 {
            let mut order = [0u8; 16];
            for v in 0..self.n {
                if (colors[v] as usize) < j {
                    order[colors[v] as usize] = v as u8;
                }
            }
            let q = (j * (j - 1) / 2) as u32;
            let prefix = self.bits_for_order(&order[..j], j);
            if prefix > (self.best >> (self.t - q)) {
                return;
            }
        }
        let mut tried: [u8; 16] = [0; 16];
        let mut tried_len = 0usize;
        for v in 0..self.n {
            if colors[v] as usize != j {
                continue;
            }
            // orbit pruning: skip v if a known automorphism fixing the path
            // maps an already-tried candidate onto it
            let mut skip = false;
            'autos: for gamma in &self.autos {
                for d in 0..self.depth {
                    let p = self.path[d] as usize;
                    if gamma[p] != p as u8 {
                        continue 'autos;
                    }
                }
                for &w in &tried[..tried_len] {
                    if gamma[w as usize] == v as u8 {
                        skip = true;
                        break 'autos;
                    }
                }
            }
            if skip {
                continue;
            }
            // individualize v within cell j
            let mut child = colors;
            for u in 0..self.n {
                let c = child[u] as usize;
                if c > j || (c == j && u != v) {
                    child[u] += 1;
                }
            }
            let k2 = refine(self.n, self.adj, &mut child, k + 1);
            self.path[self.depth] = v as u8;
            self.depth += 1;
            self.search(child, k2);
            self.depth -= 1;
            tried[tried_len] = v as u8;
            tried_len += 1;
        }
    }
}

fn canonical_bits(n: usize, adj: &[u16; 16]) -> u128 {
    if n <= 1 {
        return 0;
    }
    let mut colors = [0u8; 16];
    let k = refine(n, adj, &mut colors, 1);
    let mut s = Searcher {
        n,
        t: (n * (n - 1) / 2) as u32,
        adj,
        have_best: false,
        best: 0,
        best_order: [0; 16],
        autos: Vec::new(),
        path: [0; 16],
        depth: 0,
    };
    s.search(colors, k);
    debug_assert!(s.have_best);
    s.best
}

fn adjacency_u16(g: &Graph) -> [u16; 16] {
    let mut adj = [0u16; 16];
    for &(u, v) in g.edges() {
        adj[u] |= 1 << v;
        adj[v] |= 1 << u;
    }
    adj
}

/// Canonical form of a graph (`n <= 16`).
pub fn canonical_form(g: &Graph) -> Result<CanonicalForm> {
    if g.n() > MAX_CANON_N {
        return Err(Error::SizeLimit(format!(
            "canonical labeling supports n <= {MAX_CANON_N}, got {}",
            g.n()
        )));
    }
    let adj = adjacency_u16(g);
    Ok(CanonicalForm::pack(g.n(), canonical_bits(g.n(), &adj)))
}

/// Isomorphism test via canonical forms.
pub fn is_isomorphic(g: &Graph, h: &Graph) -> Result<bool> {
    if g.n() != h.n() || g.m() != h.m() {
        return Ok(false);
    }
    let mut dg = g.degrees();
    let mut dh = h.degrees();
    dg.sort_unstable();
    dh.sort_unstable();
    if dg != dh {
        return Ok(false);
    }
    Ok(canonical_form(g)? == canonical_form(h)?)
}

const SHARD_COUNT: usize = 256;

fn shard_of(x: u128) -> usize {
    let mixed = ((x >> 64) as u64 ^ x as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15);
    (mixed >> 56) as usize & (SHARD_COUNT - 1)
}

/// All canonical forms on `n` vertices (one per isomorphism class), sorted by
/// ascending edge count then form. `connected_only` keeps `w = 1` graphs.
pub fn enumerate_forms(n: usize, connected_only: bool) -> Result<Vec<CanonicalForm>> {
    if n < 1 || n > MAX_ENUM_N {
        return Err(Error::SizeLimit(format!(
            "enumeration supports 1 <= n <= {MAX_ENUM_N}, got {n}"
        )));
    }
    let mut reps: Vec<u128> = vec![0]; // the single 1-vertex graph
    for size in 2..=n {
        let shards: Vec<Mutex<HashSet<u128>>> = (0..SHARD_COUNT)
            .map(|_| Mutex::new(HashSet::new()))
            .collect();
        let prev = size - 1;
        let t_prev = prev * prev.saturating_sub(1) / 2;
        reps.par_iter().for_each(|&parent_bits| {
            // unpack the parent adjacency
            let mut base = [0u16; 16];
            let mut p = 0usize;
            for v in 1..prev {
                for u in 0..v {
                    if parent_bits >> (t_prev - 1 - p) & 1 == 1 {
                        base[u] |= 1 << v;
                        base[v] |= 1 << u;
                    }
                    p += 1;
                }
            }
            let w = prev; // index of the new vertex
            for subset in 0u32..(1u32 << prev) {
                let mut adj = base;
                adj[w] = subset as u16;
                let mut rest = subset;
                while rest != 0 {
                    let u = rest.trailing_zeros() as usize;
                    adj[u] |= 1 << w;
                    rest &= rest - 1;
                }
                let bits = canonical_bits(size, &adj);
                let shard = &shards[shard_of(bits)];
                shard.lock().unwrap().insert(bits);
            }
        });
        reps = Vec::new();
        for s in shards {
            reps.extend(s.into_inner().unwrap());
        }
        reps.par_sort_unstable_by_key(|&b| (b.count_ones(), b));
    }
    let mut forms: Vec<CanonicalForm> = reps
        .into_iter()
        .map(|b| CanonicalForm::pack(n, b))
        .collect();
    if connected_only {
        forms.retain(|f| is_connected_bits(n, f.bits()));
    }
    Ok(forms)
}

fn is_connected_bits(n: usize, bits: u128) -> bool {
    if n <= 1 {
        return true;
    }
    let t = n * (n - 1) / 2;
    let mut adj = [0u16; 16];
    let mut p = 0usize;
    for v in 1..n {
        for u in 0..v {
            if bits >> (t - 1 - p) & 1 == 1 {
                adj[u] |= 1 << v;
                adj[v] |= 1 << u;
            }
            p += 1;
        }
    }
    let mut seen: u16 = 1;
    let mut frontier: u16 = 1;
    while frontier != 0 {
        let mut next: u16 = 0;
        let mut f = frontier;
        while f != 0 {
            let v = f.trailing_zeros() as usize;
            next |= adj[v];
            f &= f - 1;
        }
        frontier = next & !seen;
        seen |= next;
    }
    seen.count_ones() as usize == n
}

/// One representative `Graph` per isomorphism class, deterministic order.
pub fn enumerate_graphs(
    n: usize,
    connected_only: bool,
) -> Result<impl Iterator<Item = Graph>> {
    Ok(enumerate_forms(n, connected_only)?
        .into_iter()
        .map(|f| f.to_graph()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(n: usize, pairs: &[(usize, usize)]) -> Graph {
        Graph::from_edge_list(n, pairs).unwrap()
    }

    /// Brute-force canonical form: minimum packed bit-string over all n!
    /// vertex orderings. Independent of the refinement machinery.
    fn brute_canonical_bits(gr: &Graph) -> u128 {
        let n = gr.n();
        let adj = adjacency_u16(gr);
        let t = n * n.saturating_sub(1) / 2;
        let mut perm: Vec<u8> = (0..n as u8).collect();
        let mut best = u128::MAX;
        permute(&mut perm, 0, &mut |order: &[u8]| {
            let mut bits: u128 = 0;
            let mut p = 0u32;
            for v in 1..n {
                for u in 0..v {
                    if adj[order[v] as usize] >> order[u] & 1 == 1 {
                        bits |= 1u128 << (t as u32 - 1 - p);
                    }
                    p += 1;
                }
            }
            best = best.min(bits);
        });
        best
    }

    fn permute(items: &mut [u8], k: usize, f: &mut impl FnMut(&[u8])) {
        if k == items.len() {
            f(items);
            return;
        }
        for i in k..items.len() {
            items.swap(k, i);
            permute(items, k + 1, f);
            items.swap(k, i);
        }
    }

    #[test]
    fn canonical_form_partitions_like_brute_force() {
        // The refinement-constrained canonical form need not equal the
        // global minimum over all n! orderings, but it must induce exactly
        // the same isomorphism classes. Exhaustive over all graphs, n <= 5.
        use std::collections::HashMap;
        for n in 1..=5usize {
            let t = n * n.saturating_sub(1) / 2;
            let mut brute_to_fast: HashMap<u128, u128> = HashMap::new();
            let mut fast_to_brute: HashMap<u128, u128> = HashMap::new();
            for mask in 0u32..(1u32 << t) {
                let mut edges = Vec::new();
                let mut p = 0;
                for v in 1..n {
                    for u in 0..v {
                        if mask >> p & 1 == 1 {
                            edges.push((u, v));
                        }
                        p += 1;
                    }
                }
                let gr = Graph::from_edges0(n, edges);
                let fast = canonical_form(&gr).unwrap().bits();
                let brute = brute_canonical_bits(&gr);
                if let Some(&f) = brute_to_fast.get(&brute) {
                    assert_eq!(f, fast, "n={n} mask={mask:b}: isomorphic, unequal forms");
                } else {
                    brute_to_fast.insert(brute, fast);
                }
                if let Some(&b) = fast_to_brute.get(&fast) {
                    assert_eq!(b, brute, "n={n} mask={mask:b}: equal forms, non-isomorphic");
                } else {
                    fast_to_brute.insert(fast, brute);
                }
            }
        }
    }

    #[test]
    fn relabelings_share_canonical_form() {
        let p3_center1 = g(3, &[(1, 2), (1, 3)]);
        let p3_center2 = g(3, &[(1, 2), (2, 3)]);
        assert_eq!(
            canonical_form(&p3_center1).unwrap(),
            canonical_form(&p3_center2).unwrap()
        );
        // P4 vs K3 + isolated vertex: different degree sequences
        let p4 = g(4, &[(1, 2), (2, 3), (3, 4)]);
        let k3_plus = g(4, &[(1, 2), (1, 3), (2, 3)]);
        assert_ne!(
            canonical_form(&p4).unwrap(),
            canonical_form(&k3_plus).unwrap()
        );
        assert!(!is_isomorphic(&p4, &k3_plus).unwrap());
        assert!(is_isomorphic(&p3_center1, &p3_center2).unwrap());
    }

    #[test]
    fn canonical_rejects_large_graphs() {
        let big = Graph::from_edge_list(17, &[(1, 2)]).unwrap();
        assert!(matches!(
            canonical_form(&big),
            Err(Error::SizeLimit(_))
        ));
    }

    #[test]
    fn four_vertex_graphs_have_eleven_classes() {
        let mut forms = HashSet::new();
        for mask in 0u32..(1 << 6) {
            let mut edges = Vec::new();
            let mut p = 0;
            for v in 1..4 {
                for u in 0..v {
                    if mask >> p & 1 == 1 {
                        edges.push((u, v));
                    }
                    p += 1;
                }
            }
            forms.insert(canonical_form(&Graph::from_edges0(4, edges)).unwrap());
        }
        assert_eq!(forms.len(), 11);
    }

    #[test]
    fn enumeration_counts_small() {
        // all graphs: 1, 2, 4, 11, 34, 156; connected: 1, 1, 2, 6, 21, 112
        let all = [1usize, 2, 4, 11, 34, 156];
        let conn = [1usize, 1, 2, 6, 21, 112];
        for n in 1..=6usize {
            assert_eq!(enumerate_forms(n, false).unwrap().len(), all[n - 1], "all n={n}");
            assert_eq!(
                enumerate_forms(n, true).unwrap().len(),
                conn[n - 1],
                "connected n={n}"
            );
        }
    }

    #[test]
    fn enumeration_has_no_duplicates_and_sorted() {
        let forms = enumerate_forms(6, false).unwrap();
        let mut seen = HashSet::new();
        let mut last: Option<(usize, u128)> = None;
        for f in &forms {
            assert!(seen.insert(*f));
            let key = (f.edge_count(), f.bits());
            if let Some(prev) = last {
                assert!(prev <= key, "sorted by (m, form)");
            }
            last = Some(key);
            // emitted forms are canonical
            assert_eq!(canonical_form(&f.to_graph()).unwrap(), *f);
        }
    }

    #[test]
    fn enumerate_rejects_out_of_range() {
        assert!(enumerate_forms(0, false).is_err());
        assert!(enumerate_forms(11, false).is_err());
        assert_eq!(enumerate_forms(1, false).unwrap().len(), 1);
    }

    #[test]
    fn high_symmetry_graphs_canonicalize() {
        // complete graph, empty graph, disjoint matchings: large automorphism
        // groups exercise the orbit pruning
        let k6 = {
            let mut pairs = Vec::new();
            for u in 1..=6 {
                for v in (u + 1)..=6 {
                    pairs.push((u, v));
                }
            }
            g(6, &pairs)
        };
        assert_eq!(canonical_form(&k6).unwrap().edge_count(), 15);
        let empty = g(8, &[]);
        assert_eq!(canonical_form(&empty).unwrap().edge_count(), 0);
        let matching = g(8, &[(1, 2), (3, 4), (5, 6), (7, 8)]);
        let relabeled = matching.permuted(&[7, 2, 0, 5, 1, 4, 3, 6]);
        assert_eq!(
            canonical_form(&matching).unwrap(),
            canonical_form(&relabeled).unwrap()
        );
    }

    #[test]
    fn canonical_graph6_round_trip() {
        let f = canonical_form(&g(5, &[(1, 2), (2, 3), (3, 4), (4, 5), (1, 5)])).unwrap();
        let g6 = f.graph6();
        let back = Graph::graph6_decode(&g6).unwrap();
        assert_eq!(canonical_form(&back).unwrap(), f);
        assert_eq!(f.to_graph().m(), 5);
    }
}
