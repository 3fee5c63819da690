//! Exact combinatorial searches on small graphs.

use super::{iter_bits, Graph};
use crate::error::{Error, Result};

/// Result of min-degree elimination.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Degeneracy {
    /// Largest degree seen at removal time.
    pub degeneracy: usize,
    /// Vertices in removal order.
    pub order: Vec<usize>,
}

/// Repeatedly remove a vertex of minimum remaining degree (ties go to the
/// smaller index).
pub fn degeneracy(g: &Graph) -> Degeneracy {
    let n = g.n();
    let mut deg: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut removed = vec![false; n];
    let mut order = Vec::with_capacity(n);
    let mut d = 0;
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| !removed[v])
            .min_by_key(|&v| (deg[v], v))
            .expect("vertex left");
        d = d.max(deg[v]);
        removed[v] = true;
        order.push(v);
        for u in g.neighbors(v) {
            if !removed[u] {
                deg[u] -= 1;
            }
        }
    }
    Degeneracy { degeneracy: d, order }
}

/// First-fit coloring visiting vertices in `order`. Returns one color per
/// vertex, colors numbered from 0.
pub fn greedy_coloring(g: &Graph, order: &[usize]) -> Vec<usize> {
    let n = g.n();
    let mut color = vec![usize::MAX; n];
    let mut used = Vec::new();
    for &v in order {
        used.clear();
        used.resize(n + 1, false);
        for u in g.neighbors(v) {
            if color[u] != usize::MAX {
                used[color[u]] = true;
            }
        }
        color[v] = used.iter().position(|&b| !b).expect("free color");
    }
    color
}

/// Greedy maximal independent set by repeated minimum-degree choice.
pub fn greedy_independent_set(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let mut alive = vec![true; n];
    let mut set = Vec::new();
    loop {
        let pick = (0..n)
            .filter(|&v| alive[v])
            .min_by_key(|&v| (g.neighbors(v).filter(|&u| alive[u]).count(), v));
        let Some(v) = pick else { break };
        set.push(v);
        alive[v] = false;
        for u in g.neighbors(v) {
            alive[u] = false;
        }
    }
    set
}

fn popcount(set: &[u64]) -> usize {
    set.iter().map(|w| w.count_ones() as usize).sum()
}

fn and_count(a: &[u64], b: &[u64]) -> usize {
    a.iter().zip(b).map(|(x, y)| (x & y).count_ones() as usize).sum()
}

/// Number of cliques in a greedy clique cover of `cand`; an upper bound on
/// the independence number of the induced subgraph.
fn clique_cover_bound(g: &Graph, cand: &[u64]) -> usize {
    let mut cliques: Vec<Vec<u64>> = Vec::new();
    for v in iter_bits(cand) {
        let row = g.row(v);
        // v joins the first clique whose members are all neighbours of v
        match cliques.iter_mut().find(|c| c.iter().zip(row).all(|(m, r)| m & !r == 0)) {
            Some(c) => c[v / 64] |= 1 << (v % 64),
            None => {
                let mut c = vec![0u64; cand.len()];
                c[v / 64] |= 1 << (v % 64);
                cliques.push(c);
            }
        }
    }
    cliques.len()
}

fn mis_branch(g: &Graph, cand: Vec<u64>, size: usize, best: &mut usize) {
    let c = popcount(&cand);
    if c == 0 {
        *best = (*best).max(size);
        return;
    }
    if size + c <= *best || size + clique_cover_bound(g, &cand) <= *best {
        return;
    }
    let (v, dv) = iter_bits(&cand)
        .map(|v| (v, and_count(g.row(v), &cand)))
        .max_by_key(|&(v, d)| (d, std::cmp::Reverse(v)))
        .expect("nonempty");
    if dv == 0 {
        *best = (*best).max(size + c);
        return;
    }
    let mut with = cand.clone();
    for (w, r) in with.iter_mut().zip(g.row(v)) {
        *w &= !r;
    }
    with[v / 64] &= !(1 << (v % 64));
    mis_branch(g, with, size + 1, best);

    let mut without = cand;
    without[v / 64] &= !(1 << (v % 64));
    mis_branch(g, without, size, best);
}

/// Exact independence number by branch and bound on bitsets. Exponential in
/// the worst case; intended for graphs with up to about 40 vertices.
pub fn independence_number(g: &Graph) -> usize {
    let n = g.n();
    let mut cand = vec![0u64; super::words_for(n)];
    for v in 0..n {
        cand[v / 64] |= 1 << (v % 64);
    }
    let mut best = greedy_independent_set(g).len();
    mis_branch(g, cand, 0, &mut best);
    best
}

fn colorable(g: &Graph, order: &[usize], k: usize) -> bool {
    fn go(g: &Graph, order: &[usize], k: usize, idx: usize, color: &mut [usize], used: usize) -> bool {
        if idx == order.len() {
            return true;
        }
        let v = order[idx];
        // colors above used+1 are symmetric to used+1
        for c in 0..k.min(used + 1) {
            if g.neighbors(v).all(|u| color[u] != c) {
                color[v] = c;
                if go(g, order, k, idx + 1, color, used.max(c + 1)) {
                    return true;
                }
                color[v] = usize::MAX;
            }
        }
        false
    }
    let mut color = vec![usize::MAX; g.n()];
    go(g, order, k, 0, &mut color, 0)
}

/// Exact chromatic number by iterative deepening on the number of colors.
/// Intended for graphs with up to about 20 vertices.
pub fn chromatic_number(g: &Graph) -> usize {
    let n = g.n();
    if n == 0 {
        return 0;
    }
    let mut order = degeneracy(g).order;
    order.reverse();
    let upper = greedy_coloring(g, &order).iter().max().map_or(0, |c| c + 1);
    let lower = if g.edge_count() > 0 { 2 } else { 1 };
    (lower..upper).find(|&k| colorable(g, &order, k)).unwrap_or(upper)
}

/// Shortest odd cycle of length at most `ell`, if any.
///
/// Breadth-first search in the bipartite double cover from every vertex: the
/// shortest walk from `(v, even)` to `(v, odd)` is the shortest odd closed
/// walk through `v`, and a shortest odd closed walk in a graph is a cycle.
pub fn min_odd_cycle_at_most(g: &Graph, ell: usize) -> Result<Option<usize>> {
    if ell < 3 || ell % 2 == 0 {
        return Err(Error::invalid(format!(
            "cycle length bound must be odd and >= 3, got {ell}"
        )));
    }
    let n = g.n();
    let mut best: Option<usize> = None;
    let mut dist = vec![[usize::MAX; 2]; n];
    let mut queue = std::collections::VecDeque::new();
    for s in 0..n {
        let limit = best.map_or(ell, |b| b - 2);
        if limit < 3 {
            break;
        }
        for d in dist.iter_mut() {
            *d = [usize::MAX; 2];
        }
        queue.clear();
        dist[s][0] = 0;
        queue.push_back((s, 0usize));
        'bfs: while let Some((u, parity)) = queue.pop_front() {
            let du = dist[u][parity];
            if du >= limit {
                break;
            }
            for v in g.neighbors(u) {
                let p = parity ^ 1;
                if dist[v][p] == usize::MAX {
                    dist[v][p] = du + 1;
                    if v == s && p == 1 {
                        break 'bfs;
                    }
                    queue.push_back((v, p));
                }
            }
        }
        let len = dist[s][1];
        if len <= limit {
            best = Some(len);
        }
    }
    Ok(best)
}

fn subgraph_order(h: &Graph) -> Vec<usize> {
    let mut order: Vec<usize> = (0..h.n()).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(h.degree(v)), v));
    order
}

struct Embedder<'a> {
    g: &'a Graph,
    h: &'a Graph,
    order: Vec<usize>,
    image: Vec<usize>,
    used: Vec<bool>,
}

impl Embedder<'_> {
    /// Counts embeddings, stopping once `limit` have been found.
    fn search(&mut self, idx: usize, limit: u64) -> u64 {
        if idx == self.order.len() {
            return 1;
        }
        let hv = self.order[idx];
        let need = self.h.degree(hv);
        let mut found = 0;
        for gv in 0..self.g.n() {
            if self.used[gv] || self.g.degree(gv) < need {
                continue;
            }
            let ok = self.order[..idx]
                .iter()
                .all(|&hu| !self.h.has_edge(hu, hv) || self.g.has_edge(self.image[hu], gv));
            if !ok {
                continue;
            }
            self.image[hv] = gv;
            self.used[gv] = true;
            found += self.search(idx + 1, limit - found);
            self.used[gv] = false;
            if found >= limit {
                break;
            }
        }
        found
    }
}

fn embeddings(g: &Graph, h: &Graph, limit: u64) -> u64 {
    if h.n() > g.n() {
        return 0;
    }
    let mut e = Embedder {
        g,
        h,
        order: subgraph_order(h),
        image: vec![usize::MAX; h.n()],
        used: vec![false; g.n()],
    };
    e.search(0, limit)
}

/// Whether `g` contains a (not necessarily induced) copy of `h`.
pub fn contains_subgraph(g: &Graph, h: &Graph) -> bool {
    assert!(h.n() >= 1, "pattern graph must have at least one vertex");
    embeddings(g, h, 1) > 0
}

/// Number of injective vertex maps `h -> g` sending every edge of `h` to an
/// edge of `g` (labeled copies). Divide by `|Aut(h)|` for unlabeled copies.
pub fn count_labeled_copies(g: &Graph, h: &Graph) -> u64 {
    assert!(h.n() >= 1, "pattern graph must have at least one vertex");
    embeddings(g, h, u64::MAX)
}

/// Isomorphism test by trying every vertex permutation. Only for tiny graphs.
pub fn brute_force_isomorphic(a: &Graph, b: &Graph) -> bool {
    let n = a.n();
    if n != b.n() || a.edge_count() != b.edge_count() {
        return false;
    }
    assert!(n <= 10, "brute-force isomorphism is limited to 10 vertices");
    let mut da: Vec<usize> = (0..n).map(|v| a.degree(v)).collect();
    let mut db: Vec<usize> = (0..n).map(|v| b.degree(v)).collect();
    da.sort_unstable();
    db.sort_unstable();
    if da != db {
        return false;
    }
    let edges = a.edges();
    let mut perm: Vec<usize> = (0..n).collect();
    // Heap's algorithm
    let mut c = vec![0usize; n];
    let check = |p: &[usize]| edges.iter().all(|&(u, v)| b.has_edge(p[u], p[v]));
    if check(&perm) {
        return true;
    }
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            if check(&perm) {
                return true;
            }
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    false
}
