//! Simple undirected graphs and digraphs on the vertex set `0..n`.
//!
//! Adjacency is stored as one bitset row per vertex, packed into `u64`
//! words. Both types are plain values: cloning is cheap enough at the sizes
//! this crate works with, and nothing is shared mutably.

mod io;
mod sample;
mod search;

pub use io::{parse_edge_list, read_graph6, write_edge_list, write_graph6};
pub(crate) use sample::sample_digraph_with;
pub use sample::{sample_digraph, underlying_graph};
pub use search::{
    brute_force_isomorphic, chromatic_number, contains_subgraph, count_labeled_copies, degeneracy, greedy_coloring,
    greedy_independent_set, independence_number, min_odd_cycle_at_most, Degeneracy,
};

use crate::error::{Error, Result};

#[inline]
pub(crate) fn words_for(n: usize) -> usize {
    n.div_ceil(64)
}

/// Undirected simple graph: symmetric, irreflexive adjacency.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    words: usize,
    bits: Vec<u64>,
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}

impl Graph {
    /// Graph on `n` vertices with no edges.
    pub fn empty(n: usize) -> Self {
        let words = words_for(n);
        Graph {
            n,
            words,
            bits: vec![0; n * words],
        }
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Graph::empty(n);
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(u, v);
            }
        }
        g
    }

    /// The cycle `C_n`; requires `n >= 3`.
    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::invalid(format!("cycle needs at least 3 vertices, got {n}")));
        }
        let mut g = Graph::empty(n);
        for v in 0..n {
            g.add_edge(v, (v + 1) % n);
        }
        Ok(g)
    }

    /// The path on `n` vertices (`n - 1` edges).
    pub fn path(n: usize) -> Self {
        let mut g = Graph::empty(n);
        for v in 1..n {
            g.add_edge(v - 1, v);
        }
        g
    }

    /// The star `K_{1,leaves}` with centre 0.
    pub fn star(leaves: usize) -> Self {
        let mut g = Graph::empty(leaves + 1);
        for v in 1..=leaves {
            g.add_edge(0, v);
        }
        g
    }

    /// Complete multipartite graph: vertices are grouped into consecutive
    /// parts of the given sizes and two vertices are adjacent iff they lie in
    /// different parts.
    pub fn complete_multipartite(part_sizes: &[usize]) -> Result<Self> {
        if part_sizes.is_empty() {
            return Err(Error::invalid("complete_multipartite needs at least one part"));
        }
        if part_sizes.contains(&0) {
            return Err(Error::invalid("part sizes must be positive"));
        }
        let n = part_sizes.iter().sum();
        let mut part = Vec::with_capacity(n);
        for (i, &size) in part_sizes.iter().enumerate() {
            part.extend(std::iter::repeat_n(i, size));
        }
        let mut g = Graph::empty(n);
        for u in 0..n {
            for v in u + 1..n {
                if part[u] != part[v] {
                    g.add_edge(u, v);
                }
            }
        }
        Ok(g)
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(n);
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::invalid(format!("edge ({u},{v}) out of range for n={n}")));
            }
            if u == v {
                return Err(Error::invalid(format!("self-loop at {u}")));
            }
            g.add_edge(u, v);
        }
        Ok(g)
    }

    /// Build a graph from the bits of `code`, one bit per unordered pair in
    /// the order (0,1), (0,2), (1,2), (0,3), ... (column-major upper
    /// triangle, the same order graph6 uses).
    pub fn from_pair_code(n: usize, code: u64) -> Self {
        let mut g = Graph::empty(n);
        let mut bit = 0;
        for v in 1..n {
            for u in 0..v {
                if code >> bit & 1 == 1 {
                    g.add_edge(u, v);
                }
                bit += 1;
            }
        }
        g
    }

    /// Enumerate every labeled graph on `n` vertices (`2^(n(n-1)/2)` of them).
    pub fn all_graphs(n: usize) -> impl Iterator<Item = Graph> {
        let pairs = n * n.saturating_sub(1) / 2;
        assert!(pairs < 64, "too many vertex pairs to enumerate");
        (0..1u64 << pairs).map(move |code| Graph::from_pair_code(n, code))
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.bits[u * self.words + v / 64] >> (v % 64) & 1 == 1
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert!(u != v, "self-loops are not allowed");
        assert!(u < self.n && v < self.n, "vertex out of range");
        self.bits[u * self.words + v / 64] |= 1 << (v % 64);
        self.bits[v * self.words + u / 64] |= 1 << (u % 64);
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) {
        self.bits[u * self.words + v / 64] &= !(1 << (v % 64));
        self.bits[v * self.words + u / 64] &= !(1 << (u % 64));
    }

    /// Adjacency row of `v` as packed words.
    #[inline]
    pub fn row(&self, v: usize) -> &[u64] {
        &self.bits[v * self.words..(v + 1) * self.words]
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        iter_bits(self.row(v))
    }

    pub fn degree(&self, v: usize) -> usize {
        self.row(v).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn edge_count(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in self.neighbors(u) {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// Complement on unordered pairs. An involution.
    pub fn complement(&self) -> Graph {
        let mut g = Graph::empty(self.n);
        for u in 0..self.n {
            for v in u + 1..self.n {
                if !self.has_edge(u, v) {
                    g.add_edge(u, v);
                }
            }
        }
        g
    }

    /// Subgraph induced on `vertices`, relabeled in the given order.
    pub fn induced(&self, vertices: &[usize]) -> Graph {
        let mut g = Graph::empty(vertices.len());
        for (i, &u) in vertices.iter().enumerate() {
            for (j, &v) in vertices.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    g.add_edge(i, j);
                }
            }
        }
        g
    }

    /// Image of the graph under the vertex map `v -> perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n);
        let mut g = Graph::empty(self.n);
        for (u, v) in self.edges() {
            g.add_edge(perm[u], perm[v]);
        }
        g
    }

    /// Number of connected components (isolated vertices count).
    pub fn component_count(&self) -> usize {
        let mut seen = vec![false; self.n];
        let mut count = 0;
        let mut stack = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            count += 1;
            seen[s] = true;
            stack.push(s);
            while let Some(u) = stack.pop() {
                for v in self.neighbors(u) {
                    if !seen[v] {
                        seen[v] = true;
                        stack.push(v);
                    }
                }
            }
        }
        count
    }

    pub fn is_forest(&self) -> bool {
        self.edge_count() + self.component_count() == self.n
    }

    pub fn is_tree(&self) -> bool {
        self.n >= 1 && self.is_forest() && self.component_count() == 1
    }

    /// The same graph as a digraph with both orientations of every edge.
    pub fn to_digraph(&self) -> Digraph {
        Digraph {
            n: self.n,
            words: self.words,
            bits: self.bits.clone(),
        }
    }
}

/// Directed graph without self-loops.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Digraph {
    n: usize,
    words: usize,
    bits: Vec<u64>,
}

impl std::fmt::Debug for Digraph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Digraph(n={}, arcs={:?})", self.n, self.arcs())
    }
}

impl Digraph {
    pub fn empty(n: usize) -> Self {
        let words = words_for(n);
        Digraph {
            n,
            words,
            bits: vec![0; n * words],
        }
    }

    pub fn from_arcs(n: usize, arcs: &[(usize, usize)]) -> Result<Self> {
        let mut d = Digraph::empty(n);
        for &(u, v) in arcs {
            if u >= n || v >= n {
                return Err(Error::invalid(format!("arc ({u},{v}) out of range for n={n}")));
            }
            if u == v {
                return Err(Error::invalid(format!("self-loop at {u}")));
            }
            d.add_arc(u, v);
        }
        Ok(d)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        self.bits[u * self.words + v / 64] >> (v % 64) & 1 == 1
    }

    pub fn add_arc(&mut self, u: usize, v: usize) {
        assert!(u != v, "self-loops are not allowed");
        assert!(u < self.n && v < self.n, "vertex out of range");
        self.bits[u * self.words + v / 64] |= 1 << (v % 64);
    }

    pub fn out_neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        iter_bits(&self.bits[v * self.words..(v + 1) * self.words])
    }

    pub fn arc_count(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Arcs in row-major order.
    pub fn arcs(&self) -> Vec<(usize, usize)> {
        (0..self.n)
            .flat_map(|u| self.out_neighbors(u).map(move |v| (u, v)))
            .collect()
    }

    /// Undirected graph keeping `{u, v}` iff both `(u, v)` and `(v, u)` are arcs.
    pub fn strong_graph(&self) -> Graph {
        let mut g = Graph::empty(self.n);
        for u in 0..self.n {
            for v in self.out_neighbors(u) {
                if u < v && self.has_arc(v, u) {
                    g.add_edge(u, v);
                }
            }
        }
        g
    }

    /// Undirected graph keeping `{u, v}` iff at least one orientation is an arc.
    pub fn weak_graph(&self) -> Graph {
        let mut g = Graph::empty(self.n);
        for (u, v) in self.arcs() {
            g.add_edge(u, v);
        }
        g
    }
}

/// Anything with an arc relation on `0..n`. Undirected graphs answer `true`
/// in both directions.
pub trait ArcRelation {
    fn vertex_count(&self) -> usize;
    fn arc(&self, from: usize, to: usize) -> bool;
}

impl ArcRelation for Graph {
    fn vertex_count(&self) -> usize {
        self.n
    }
    fn arc(&self, from: usize, to: usize) -> bool {
        self.has_edge(from, to)
    }
}

impl ArcRelation for Digraph {
    fn vertex_count(&self) -> usize {
        self.n
    }
    fn arc(&self, from: usize, to: usize) -> bool {
        self.has_arc(from, to)
    }
}

pub(crate) fn iter_bits(words: &[u64]) -> impl Iterator<Item = usize> + '_ {
    words.iter().enumerate().flat_map(|(wi, &w)| {
        let mut w = w;
        std::iter::from_fn(move || {
            if w == 0 {
                None
            } else {
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * 64 + b)
            }
        })
    })
}

/// Look up one of the built-in graphs by name: `K<t>` (complete), `C<t>`
/// (cycle), `P<t>` (path on t vertices), `S<t>` or `K1,<t>` (star with t
/// leaves), `E<t>` (edgeless). Case-insensitive.
pub fn named_graph(name: &str) -> Result<Graph> {
    let lower = name.trim().to_ascii_lowercase();
    let bad = || Error::invalid(format!("unknown graph name {name:?}"));
    if let Some(rest) = lower.strip_prefix("k1,") {
        let t: usize = rest.parse().map_err(|_| bad())?;
        return Ok(Graph::star(t));
    }
    let (kind, num) = lower.split_at(1.min(lower.len()));
    let t: usize = num.parse().map_err(|_| bad())?;
    match kind {
        "k" if t >= 1 => Ok(Graph::complete(t)),
        "c" => Graph::cycle(t),
        "p" if t >= 1 => Ok(Graph::path(t)),
        "s" if t >= 1 => Ok(Graph::star(t)),
        "e" => Ok(Graph::empty(t)),
        _ => Err(bad()),
    }
}
