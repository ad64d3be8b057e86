//! Simple undirected graphs: construction, text/graph6 I/O, degrees and
//! connected components.
//!
//! Vertices are 1-based in every textual interface (edge lists, dumps) and
//! 0-based internally. A `Graph` is immutable after construction and its edge
//! list is always sorted, deduplicated and loop-free, so two equal graphs
//! compare equal structurally.

use std::fmt;

use crate::error::{Error, Result};

/// An undirected simple graph on vertices `0..n` (internally 0-based).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    /// Sorted list of edges `(u, v)` with `u < v`, no duplicates.
    edges: Vec<(usize, usize)>,
}

impl Graph {
    /// Builds a graph from 1-based vertex pairs, validating and canonicalizing.
    pub fn from_edge_list(n: usize, pairs: &[(usize, usize)]) -> Result<Graph> {
        let mut edges = Vec::with_capacity(pairs.len());
        for &(a, b) in pairs {
            if a < 1 || a > n {
                return Err(Error::OutOfRange(a, n));
            }
            if b < 1 || b > n {
                return Err(Error::OutOfRange(b, n));
            }
            if a == b {
                return Err(Error::LoopEdge(a));
            }
            let (u, v) = if a < b { (a - 1, b - 1) } else { (b - 1, a - 1) };
            edges.push((u, v));
        }
        edges.sort_unstable();
        edges.dedup();
        Ok(Graph { n, edges })
    }

    /// Builds a graph from 0-based, already-valid pairs (used internally by
    /// the enumerator and codecs; still sorts and dedups).
    pub(crate) fn from_edges0(n: usize, mut edges: Vec<(usize, usize)>) -> Graph {
        for e in edges.iter_mut() {
            if e.0 > e.1 {
                *e = (e.1, e.0);
            }
        }
        edges.sort_unstable();
        edges.dedup();
        Graph { n, edges }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of edges m.
    pub fn m(&self) -> usize {
        self.edges.len()
    }

    /// Edges as 0-based sorted pairs `(u, v)`, `u < v`.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        let key = if u < v { (u, v) } else { (v, u) };
        self.edges.binary_search(&key).is_ok()
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0usize; self.n];
        for &(u, v) in &self.edges {
            deg[u] += 1;
            deg[v] += 1;
        }
        deg
    }

    /// Adjacency rows as bitsets; only valid for `n <= 64`.
    pub fn adjacency_bits(&self) -> Vec<u64> {
        assert!(self.n <= 64, "bitset adjacency limited to 64 vertices");
        let mut rows = vec![0u64; self.n];
        for &(u, v) in &self.edges {
            rows[u] |= 1 << v;
            rows[v] |= 1 << u;
        }
        rows
    }

    pub fn components(&self) -> ComponentStructure {
        let mut component_of = vec![usize::MAX; self.n];
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); self.n];
        for &(u, v) in &self.edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        let mut w = 0;
        let mut stack = Vec::new();
        for s in 0..self.n {
            if component_of[s] != usize::MAX {
                continue;
            }
            component_of[s] = w;
            stack.push(s);
            while let Some(x) = stack.pop() {
                for &y in &adj[x] {
                    if component_of[y] == usize::MAX {
                        component_of[y] = w;
                        stack.push(y);
                    }
                }
            }
            w += 1;
        }
        let isolated_count = adj.iter().filter(|nb| nb.is_empty()).count();
        ComponentStructure {
            w,
            component_of,
            isolated_count,
        }
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1 || self.components().w == 1
    }

    pub fn has_isolated_vertex(&self) -> bool {
        if self.n == 0 {
            return false;
        }
        self.degrees().iter().any(|&d| d == 0)
    }

    /// First isolated vertex, 1-based, if any.
    pub fn first_isolated_vertex(&self) -> Option<usize> {
        self.degrees().iter().position(|&d| d == 0).map(|v| v + 1)
    }

    /// The graph with vertices relabeled by `perm`: vertex `v` becomes
    /// `perm[v]` (0-based). `perm` must be a permutation of `0..n`.
    pub fn permuted(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n);
        let edges = self
            .edges
            .iter()
            .map(|&(u, v)| (perm[u], perm[v]))
            .collect();
        Graph::from_edges0(self.n, edges)
    }

    /// Encodes in graph6 short form (`n <= 62`).
    pub fn graph6_encode(&self) -> Result<String> {
        if self.n > 62 {
            return Err(Error::SizeLimit(format!(
                "graph6 short form supports n <= 62, got n = {}",
                self.n
            )));
        }
        let n = self.n;
        let nbits = n * n.saturating_sub(1) / 2;
        let mut bits = vec![false; nbits];
        // Upper-triangle bits in column-major order: for column v = 1..n-1
        // (0-based), rows u = 0..v-1.
        for &(u, v) in &self.edges {
            bits[v * (v - 1) / 2 + u] = true;
        }
        let mut out = String::new();
        out.push((n as u8 + 63) as char);
        for chunk in bits.chunks(6) {
            let mut val = 0u8;
            for (i, &b) in chunk.iter().enumerate() {
                if b {
                    val |= 1 << (5 - i);
                }
            }
            out.push((val + 63) as char);
        }
        Ok(out)
    }

    /// Decodes a graph6 short-form line (`n <= 62`).
    pub fn graph6_decode(line: &str) -> Result<Graph> {
        let line = line.trim();
        let line = line.strip_prefix(">>graph6<<").unwrap_or(line);
        let bytes = line.as_bytes();
        if bytes.is_empty() {
            return Err(Error::MalformedGraph6("empty line".into()));
        }
        for &b in bytes {
            if !(63..=126).contains(&b) {
                return Err(Error::MalformedGraph6(format!(
                    "byte {b} outside printable graph6 range 63..=126"
                )));
            }
        }
        let n = (bytes[0] - 63) as usize;
        if bytes[0] == 126 {
            return Err(Error::MalformedGraph6(
                "long-form graph6 (n > 62) is not supported".into(),
            ));
        }
        let nbits = n * n.saturating_sub(1) / 2;
        let expect = 1 + nbits.div_ceil(6);
        if bytes.len() != expect {
            return Err(Error::MalformedGraph6(format!(
                "expected {expect} bytes for n = {n}, got {}",
                bytes.len()
            )));
        }
        let mut edges = Vec::new();
        let mut p = 0usize;
        'outer: for v in 1..n {
            for u in 0..v {
                let byte = bytes[1 + p / 6] - 63;
                if byte & (1 << (5 - p % 6)) != 0 {
                    edges.push((u, v));
                }
                p += 1;
                if p == nbits {
                    // Consumed every adjacency bit; remaining positions in the
                    // last byte must be padding zeros (checked below).
                    if u == v - 1 && v == n - 1 {
                        break 'outer;
                    }
                }
            }
        }
        // Padding bits beyond nbits must be zero.
        if nbits % 6 != 0 {
            let last = bytes[bytes.len() - 1] - 63;
            let pad = 6 - nbits % 6;
            if last & ((1 << pad) - 1) != 0 {
                return Err(Error::MalformedGraph6("nonzero padding bits".into()));
            }
        }
        Ok(Graph::from_edges0(n, edges))
    }

    /// Parses an edge-list description in either accepted form:
    /// `n; {u,v} {u,v} ...` or `{{u, v}, {u, v}, ...}` (vertices 1-based).
    /// In the second form the vertex count defaults to the largest label
    /// unless `n_hint` is given.
    pub fn parse_edge_list(text: &str, n_hint: Option<usize>) -> Result<Graph> {
        let text = text.trim();
        let (n_decl, rest) = match text.split_once(';') {
            Some((head, tail)) => {
                let n: usize = head.trim().parse().map_err(|_| {
                    Error::SourceError(format!("bad vertex count {:?}", head.trim()))
                })?;
                (Some(n), tail)
            }
            None => (None, text),
        };
        let mut nums: Vec<usize> = Vec::new();
        let mut cur = String::new();
        for c in rest.chars() {
            if c.is_ascii_digit() {
                cur.push(c);
            } else if !cur.is_empty() {
                nums.push(cur.parse().unwrap());
                cur.clear();
            }
        }
        if !cur.is_empty() {
            nums.push(cur.parse().unwrap());
        }
        if nums.len() % 2 != 0 {
            return Err(Error::SourceError(format!(
                "odd number of vertex labels ({}) in edge list",
                nums.len()
            )));
        }
        let pairs: Vec<(usize, usize)> = nums.chunks(2).map(|c| (c[0], c[1])).collect();
        let n = match (n_decl, n_hint) {
            (Some(n), _) => n,
            (None, Some(n)) => n,
            (None, None) => pairs.iter().map(|&(a, b)| a.max(b)).max().unwrap_or(0),
        };
        Graph::from_edge_list(n, &pairs)
    }

    /// Renders the edge list in the `{{u, v}, ...}` notation (1-based).
    pub fn edge_list_string(&self) -> String {
        let body = self
            .edges
            .iter()
            .map(|&(u, v)| format!("{{{}, {}}}", u + 1, v + 1))
            .collect::<Vec<_>>()
            .join(", ");
        format!("{{{body}}}")
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}; {})", self.n, self.edge_list_string())
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}; {}", self.n, self.edge_list_string())
    }
}

/// Connected-component decomposition of a graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentStructure {
    /// Number of connected components, `w(G)`.
    pub w: usize,
    /// Component index (0-based, contiguous) of every vertex.
    pub component_of: Vec<usize>,
    /// Number of degree-0 vertices.
    pub isolated_count: usize,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(n: usize, pairs: &[(usize, usize)]) -> Graph {
        Graph::from_edge_list(n, pairs).unwrap()
    }

    #[test]
    fn from_edge_list_canonicalizes() {
        let a = g(3, &[(3, 1), (1, 2)]);
        assert_eq!(a.edges(), &[(0, 1), (0, 2)]);
        assert_eq!(a.m(), 2);
        let b = g(2, &[]);
        assert_eq!(b.m(), 0);
        // duplicate edges collapse
        let c = g(3, &[(1, 2), (2, 1), (1, 2)]);
        assert_eq!(c.m(), 1);
    }

    #[test]
    fn from_edge_list_rejects_bad_input() {
        assert_eq!(
            Graph::from_edge_list(3, &[(1, 4)]),
            Err(Error::OutOfRange(4, 3))
        );
        assert_eq!(
            Graph::from_edge_list(3, &[(0, 2)]),
            Err(Error::OutOfRange(0, 3))
        );
        assert_eq!(
            Graph::from_edge_list(3, &[(2, 2)]),
            Err(Error::LoopEdge(2))
        );
    }

    #[test]
    fn degrees_examples() {
        assert_eq!(g(3, &[(1, 2), (1, 3)]).degrees(), vec![2, 1, 1]);
        assert_eq!(g(2, &[]).degrees(), vec![0, 0]);
        let k4 = g(4, &[(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)]);
        assert_eq!(k4.degrees(), vec![3, 3, 3, 3]);
    }

    #[test]
    fn degree_sum_is_twice_edge_count() {
        for (n, pairs) in [
            (5, vec![(1, 2), (2, 3), (3, 4), (4, 5)]),
            (6, vec![(1, 2), (2, 3), (4, 5)]),
            (4, vec![]),
        ] {
            let gr = g(n, &pairs);
            assert_eq!(gr.degrees().iter().sum::<usize>(), 2 * gr.m());
        }
    }

    #[test]
    fn components_examples() {
        assert_eq!(g(3, &[(1, 2), (1, 3)]).components().w, 1);
        let c = g(4, &[(1, 2)]).components();
        assert_eq!(c.w, 3);
        assert_eq!(c.isolated_count, 2);
        let c = g(6, &[(1, 2), (2, 3), (4, 5)]).components();
        assert_eq!(c.w, 3);
        assert_eq!(c.component_of[0], c.component_of[2]);
        assert_ne!(c.component_of[0], c.component_of[3]);
    }

    #[test]
    fn graph6_hand_packed_examples() {
        // Single edge on two vertices packs to "A_", the empty pair to "A?".
        assert_eq!(g(2, &[(1, 2)]).graph6_encode().unwrap(), "A_");
        assert_eq!(g(2, &[]).graph6_encode().unwrap(), "A?");
        assert_eq!(Graph::graph6_decode("A_").unwrap(), g(2, &[(1, 2)]));
        assert_eq!(Graph::graph6_decode("A?").unwrap(), g(2, &[]));
    }

    #[test]
    fn graph6_rejects_malformed() {
        assert!(matches!(
            Graph::graph6_decode("A"),
            Err(Error::MalformedGraph6(_))
        ));
        assert!(matches!(
            Graph::graph6_decode("A\u{7f}"),
            Err(Error::MalformedGraph6(_))
        ));
        assert!(matches!(
            Graph::graph6_decode(""),
            Err(Error::MalformedGraph6(_))
        ));
    }

    #[test]
    fn parse_both_edge_list_forms() {
        let a = Graph::parse_edge_list("3; {1,2} {1,3}", None).unwrap();
        let b = Graph::parse_edge_list("{{1, 2}, {1, 3}}", Some(3)).unwrap();
        assert_eq!(a, b);
        // n inferred from the largest label when absent
        let c = Graph::parse_edge_list("{{1, 2}, {1, 3}}", None).unwrap();
        assert_eq!(c.n(), 3);
        // the 15-edge first table row parses with m = 15
        let row = "{{1, 8}, {1, 9}, {2, 8}, {2, 9}, {3, 8}, {3, 9}, {4, 8}, {4, 9}, \
                   {5, 8}, {5, 9}, {6, 8}, {6, 9}, {7, 8}, {7, 9}, {8, 9}}";
        let t = Graph::parse_edge_list(row, Some(9)).unwrap();
        assert_eq!((t.n(), t.m()), (9, 15));
    }

    #[test]
    fn permuted_preserves_structure() {
        let p3 = g(3, &[(1, 2), (1, 3)]);
        let q = p3.permuted(&[2, 0, 1]);
        assert_eq!(q.degrees().iter().sum::<usize>(), 4);
        let mut d = q.degrees();
        d.sort_unstable();
        assert_eq!(d, vec![1, 1, 2]);
    }
}
