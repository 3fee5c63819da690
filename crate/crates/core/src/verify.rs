//! Exhaustive checks of the sparse-basis matrix lemmas and of the forest
//! bound, plus exhaustive and sampled values of `g(n, H, F)`: the largest
//! minrank over `F` of an `n`-vertex graph whose complement has no copy of
//! `H`.
//!
//! Matrix sweeps enumerate raw matrices with no symmetry reduction. Work is
//! spread over the rayon pool by index; results are collected in index
//! order and violation lists are sorted, so reports do not depend on the
//! schedule.

use std::collections::HashMap;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Serialize, Serializer};
use serde_json::{json, Map, Value};

use crate::algebra::{min_basis_weight, Axis, FieldMatrix, PrimeField};
use crate::combinatorics::binomial;
use crate::error::{Error, Result};
use crate::graph::{
    brute_force_isomorphic, contains_subgraph, sample_digraph_with, underlying_graph, write_graph6, Graph,
};
use crate::lll::{find_constants, gamma_stats};
use crate::minrank::{minrank_exact, Budget};

/// Largest number of matrices a single sweep may enumerate.
pub const MATRIX_SWEEP_LIMIT: u64 = 1 << 22;
/// Largest vertex count for exhaustive graph sweeps.
pub const GRAPH_SWEEP_MAX_N: usize = 6;

fn graph6_string<S: Serializer>(g: &Graph, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&write_graph6(g))
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Violation {
    pub instance: String,
    pub detail: String,
}

/// Outcome of one sweep.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub lemma: &'static str,
    /// Every swept parameter, so the run can be repeated.
    pub params: Map<String, Value>,
    pub instances_checked: u64,
    /// Sorted; empty when the claim held everywhere.
    pub violations: Vec<Violation>,
    /// Lemma-specific summary numbers.
    pub details: Value,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

fn report(
    lemma: &'static str,
    params: Value,
    instances_checked: u64,
    mut violations: Vec<Violation>,
    details: Value,
    started: Instant,
) -> VerificationReport {
    violations.sort();
    let Value::Object(params) = params else {
        unreachable!("params are built as objects")
    };
    VerificationReport {
        lemma,
        params,
        instances_checked,
        violations,
        details,
        elapsed: started.elapsed(),
    }
}

fn matrix_count(n: usize, p: u32, diag_nonzero: bool) -> Result<u64> {
    let p = p as u64;
    let total = if diag_nonzero {
        p.checked_pow((n * n - n) as u32)
            .and_then(|off| (p - 1).checked_pow(n as u32).and_then(|d| off.checked_mul(d)))
    } else {
        p.checked_pow((n * n) as u32)
    };
    match total {
        Some(t) if t <= MATRIX_SWEEP_LIMIT => Ok(t),
        _ => Err(Error::BudgetExceeded {
            what: "matrix sweep",
            needed: format!("{p}^{} matrices of size {n}x{n}", n * n),
            limit: format!("{MATRIX_SWEEP_LIMIT} matrices"),
        }),
    }
}

/// The `idx`-th matrix in mixed-radix order, entry `(0, 0)` varying fastest.
/// With `diag_nonzero`, diagonal digits range over `1..p`.
fn matrix_at(field: PrimeField, n: usize, diag_nonzero: bool, mut idx: u64) -> FieldMatrix {
    let p = field.modulus() as u64;
    let mut m = FieldMatrix::zeros(field, n, n);
    for i in 0..n {
        for j in 0..n {
            let v = if i == j && diag_nonzero {
                let v = 1 + idx % (p - 1);
                idx /= p - 1;
                v
            } else {
                let v = idx % p;
                idx /= p;
                v
            };
            m.set(i, j, v as u32);
        }
    }
    m
}

/// Compact text form: rows separated by `;`.
fn show(m: &FieldMatrix) -> String {
    (0..m.rows())
        .map(|i| m.row(i).iter().map(u32::to_string).collect::<Vec<_>>().join(" "))
        .collect::<Vec<_>>()
        .join(";")
}

fn sweep<T: Send>(
    field: PrimeField,
    n: usize,
    diag_nonzero: bool,
    f: impl Fn(&FieldMatrix) -> T + Sync,
) -> Result<Vec<T>> {
    let total = matrix_count(n, field.modulus(), diag_nonzero)?;
    Ok((0..total)
        .into_par_iter()
        .map(|i| f(&matrix_at(field, n, diag_nonzero, i)))
        .collect())
}

/// Heavier of the lightest column basis and the lightest row basis.
fn basis_weight(m: &FieldMatrix) -> usize {
    min_basis_weight(m, Axis::Columns).max(min_basis_weight(m, Axis::Rows))
}

/// Every `n x n` matrix with nonzero diagonal, `n <= n_max`, has sparsity
/// at least `n^2 / (4 rank)`. Also records, per `n`, whether some matrix
/// comes within a factor 4 of the bound (`s <= n^2 / rank`).
pub fn verify_sparsity_lower_bound(n_max: usize, field: PrimeField) -> Result<VerificationReport> {
    let started = Instant::now();
    let mut checked = 0;
    let mut violations = Vec::new();
    let mut per_n = Vec::new();
    for n in 1..=n_max {
        let facts = sweep(field, n, true, |m| (m.rank(), m.sparsity(), show(m)))?;
        checked += facts.len() as u64;
        let mut tight = false;
        let mut min_ratio = f64::INFINITY;
        for (k, s, text) in &facts {
            if 4 * s * k < n * n {
                violations.push(Violation {
                    instance: text.clone(),
                    detail: format!("sparsity {s} < {}^2/(4*{k})", n),
                });
            }
            tight |= s * k <= n * n;
            min_ratio = min_ratio.min((4 * s * k) as f64 / (n * n) as f64);
        }
        if !tight {
            violations.push(Violation {
                instance: format!("n={n}"),
                detail: "no matrix with sparsity at most n^2/rank".into(),
            });
        }
        per_n.push(json!({"n": n, "matrices": facts.len(), "tight_instance": tight, "min_4sk_over_n2": min_ratio}));
    }
    Ok(report(
        "sparsity",
        json!({"n_max": n_max, "p": field.modulus()}),
        checked,
        violations,
        Value::Array(per_n),
        started,
    ))
}

/// Number of rank-`k` matrices in `F^{n x n}` with column and row bases of
/// total weight at most `ell` each, by direct enumeration.
pub fn count_sparse_basis_matrices(n: usize, k: usize, ell: usize, field: PrimeField) -> Result<u64> {
    let hits = sweep(field, n, false, |m| m.rank() == k && basis_weight(m) <= ell)?;
    Ok(hits.into_iter().filter(|&b| b).count() as u64)
}

/// Sweep all `n x n` matrices for `n <= n_max` and compare, for every rank
/// `k` and every `ell` in `1..=n k` (only `ell = 0` when `k = 0`), the
/// number of rank-`k` matrices with `ell`-sparse column and row bases
/// against `(n p)^(6 ell)`.
pub fn verify_sparse_basis_count(n_max: usize, field: PrimeField) -> Result<VerificationReport> {
    let started = Instant::now();
    let p = field.modulus() as usize;
    let mut checked = 0;
    let mut violations = Vec::new();
    let mut rows = Vec::new();
    for n in 1..=n_max {
        let facts = sweep(field, n, false, |m| (m.rank(), basis_weight(m)))?;
        checked += facts.len() as u64;
        // tally[k][w]: matrices of rank k whose heavier lightest basis weighs w
        let mut tally = vec![vec![0u64; n * n + 1]; n + 1];
        for &(k, w) in &facts {
            tally[k][w] += 1;
        }
        for (k, by_weight) in tally.iter().enumerate() {
            let ells = if k == 0 { 0..=0 } else { 1..=n * k };
            let rank_total: u64 = by_weight.iter().sum();
            for ell in ells {
                let count: u64 = by_weight[..=ell].iter().sum();
                let bound = BigUint::from(n * p).pow(6 * ell as u32);
                if BigUint::from(count) > bound {
                    violations.push(Violation {
                        instance: format!("n={n} k={k} ell={ell}"),
                        detail: format!("count {count} exceeds {bound}"),
                    });
                }
                rows.push(json!({
                    "n": n, "k": k, "ell": ell, "count": count,
                    "rank_total": rank_total, "bound": bound.to_string(),
                }));
            }
        }
    }
    Ok(report(
        "count",
        json!({"n_max": n_max, "p": field.modulus()}),
        checked,
        violations,
        Value::Array(rows),
        started,
    ))
}

/// Rank, sparsity and basis weight of every principal submatrix, indexed by
/// the nonempty vertex-subset mask.
fn principal_facts(m: &FieldMatrix) -> Vec<(u32, usize, usize, usize)> {
    let n = m.rows();
    (1u32..1 << n)
        .map(|mask| {
            let idx: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
            let sub = m.principal(&idx);
            (mask, sub.rank(), sub.sparsity(), basis_weight(&sub))
        })
        .collect()
}

/// Is the `n' x n'` matrix with the given facts in the collection for
/// `(n, k)`: rank `k' <= k`, `k'/n' <= k/n`, and column and row bases of
/// weight at most `2 s' k'/n'` (a rational threshold, not floored)?
fn in_collection(n: usize, k: usize, n_sub: usize, k_sub: usize, s_sub: usize, w_sub: usize) -> bool {
    k_sub <= k && k_sub * n <= k * n_sub && w_sub * n_sub <= 2 * s_sub * k_sub
}

/// Every `n x n` matrix (`n <= n_max`) with nonzero diagonal and rank at
/// most `k` has a principal submatrix in the sparse-basis collection for
/// `(n, k)`. Checked for every `k` from the matrix's rank up to `n`.
pub fn verify_principal_submatrix_decomposition(n_max: usize, field: PrimeField) -> Result<VerificationReport> {
    let started = Instant::now();
    let mut checked = 0;
    let mut violations = Vec::new();
    let mut rows = Vec::new();
    for n in 1..=n_max {
        let outcomes = sweep(field, n, true, |m| {
            let r = m.rank();
            let facts = principal_facts(m);
            let found: Vec<(usize, Option<u32>)> = (r..=n)
                .map(|k| {
                    let hit = facts.iter().find(|&&(mask, k_sub, s_sub, w_sub)| {
                        in_collection(n, k, mask.count_ones() as usize, k_sub, s_sub, w_sub)
                    });
                    (k, hit.map(|h| h.0))
                })
                .collect();
            (show(m), found)
        })?;
        let mut pairs = vec![0u64; n + 1];
        for (text, found) in &outcomes {
            for &(k, hit) in found {
                checked += 1;
                pairs[k] += 1;
                if hit.is_none() {
                    violations.push(Violation {
                        instance: text.clone(),
                        detail: format!("no principal submatrix qualifies for k={k}"),
                    });
                }
            }
        }
        for (k, &count) in pairs.iter().enumerate().skip(1) {
            rows.push(json!({"n": n, "k": k, "matrices": count}));
        }
    }
    Ok(report(
        "submatrix",
        json!({"n_max": n_max, "p": field.modulus(), "k": "all"}),
        checked,
        violations,
        Value::Array(rows),
        started,
    ))
}

/// For every `n <= n_max`, `k` and `s'`, the number of pairs `(M, R)` with
/// `R` an `n'`-subset of the `n` vertices and `M` an `n' x n'` member of the
/// sparse-basis collection for `(n, k)` of sparsity `s'` is at most
/// `(n p)^(24 s' k / n)`.
pub fn verify_collection_size(n_max: usize, field: PrimeField) -> Result<VerificationReport> {
    let started = Instant::now();
    let p = field.modulus() as usize;
    let mut checked = 0;
    // facts[n'] = (rank, sparsity, basis weight) of every n' x n' matrix
    // with nonzero diagonal
    let mut facts = vec![Vec::new()];
    for n_sub in 1..=n_max {
        facts.push(sweep(field, n_sub, true, |m| {
            (m.rank(), m.sparsity(), basis_weight(m))
        })?);
        checked += facts[n_sub].len() as u64;
    }
    let mut violations = Vec::new();
    let mut rows = Vec::new();
    for n in 1..=n_max {
        for k in 1..=n {
            for s in 1..=n * n {
                let mut size = BigUint::from(0u32);
                for (n_sub, list) in facts.iter().enumerate().take(n + 1).skip(1) {
                    let members = list
                        .iter()
                        .filter(|&&(k_sub, s_sub, w)| s_sub == s && in_collection(n, k, n_sub, k_sub, s_sub, w))
                        .count();
                    size += binomial(n as u64, n_sub as u64) * BigUint::from(members);
                }
                // size <= (n p)^(24 s k / n)  <=>  size^n <= (n p)^(24 s k)
                let bound_pow = BigUint::from(n * p).pow((24 * s * k) as u32);
                if size.pow(n as u32) > bound_pow {
                    violations.push(Violation {
                        instance: format!("n={n} k={k} s={s}"),
                        detail: format!("collection size {size} exceeds (n p)^(24 s k/n)"),
                    });
                }
                rows.push(json!({"n": n, "k": k, "s": s, "size": size.to_string()}));
            }
        }
    }
    Ok(report(
        "collection",
        json!({"n_max": n_max, "p": field.modulus()}),
        checked,
        violations,
        Value::Array(rows),
        started,
    ))
}

/// One graph per isomorphism class on `n` vertices, each the first of its
/// class in enumeration order. Classes are bucketed by sorted degree
/// sequence and compared by brute force within a bucket.
pub fn isomorphism_classes(n: usize) -> Result<Vec<Graph>> {
    check_sweep_size(n)?;
    let mut buckets: HashMap<Vec<usize>, Vec<usize>> = HashMap::new();
    let mut reps: Vec<Graph> = Vec::new();
    for g in Graph::all_graphs(n) {
        let mut degrees: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
        degrees.sort_unstable();
        let bucket = buckets.entry(degrees).or_default();
        if !bucket.iter().any(|&i| brute_force_isomorphic(&reps[i], &g)) {
            bucket.push(reps.len());
            reps.push(g);
        }
    }
    Ok(reps)
}

fn check_sweep_size(n: usize) -> Result<()> {
    if n > GRAPH_SWEEP_MAX_N {
        return Err(Error::BudgetExceeded {
            what: "exhaustive graph sweep",
            needed: format!("all graphs on {n} vertices"),
            limit: format!("{GRAPH_SWEEP_MAX_N} vertices"),
        });
    }
    Ok(())
}

/// Graphs covered by an exhaustive sweep: every labeled graph up to five
/// vertices, one per isomorphism class at six.
pub fn sweep_graphs(n: usize) -> Result<Vec<Graph>> {
    check_sweep_size(n)?;
    if n <= 5 {
        Ok(Graph::all_graphs(n).collect())
    } else {
        isomorphism_classes(n)
    }
}

/// Exact `g(n, H, F)` over a sweep.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GExhaustive {
    pub n: usize,
    pub field: u32,
    pub value: usize,
    /// First swept graph attaining the value, in graph6.
    #[serde(serialize_with = "graph6_string")]
    pub witness: Graph,
    pub graphs_checked: u64,
    pub accepted: u64,
}

pub fn exhaustive_g(n: usize, h: &Graph, field: PrimeField, budget: &Budget) -> Result<GExhaustive> {
    let graphs = sweep_graphs(n)?;
    let accepted: Vec<&Graph> = graphs
        .iter()
        .filter(|g| !contains_subgraph(&g.complement(), h))
        .collect();
    let values = accepted
        .par_iter()
        .map(|g| minrank_exact(*g, field, budget).map(|r| r.value))
        .collect::<Result<Vec<_>>>()?;
    let (best, value) = values
        .iter()
        .enumerate()
        .fold(None, |acc: Option<(usize, usize)>, (i, &v)| match acc {
            Some((_, b)) if b >= v => acc,
            _ => Some((i, v)),
        })
        .ok_or_else(|| Error::invalid(format!("no graph on {n} vertices has an H-free complement")))?;
    Ok(GExhaustive {
        n,
        field: field.modulus(),
        value,
        witness: accepted[best].clone(),
        graphs_checked: graphs.len() as u64,
        accepted: accepted.len() as u64,
    })
}

/// Complete multipartite graph on `n` vertices with parts of size `part`
/// (the last one possibly smaller).
fn balanced_multipartite(n: usize, part: usize) -> Result<Graph> {
    let mut sizes = vec![part; n / part];
    if n % part != 0 {
        sizes.push(n % part);
    }
    Graph::complete_multipartite(&sizes)
}

/// For a tree `H` on `h` vertices: every `n`-vertex graph with `H`-free
/// complement has minrank at most `h - 1`, with equality for some graph
/// when `n >= h - 1`, attained by the complete multipartite graph with parts
/// of size `h - 1`.
pub fn verify_forest_bound(n: usize, h_tree: &Graph, field: PrimeField, budget: &Budget) -> Result<VerificationReport> {
    let started = Instant::now();
    if !h_tree.is_tree() {
        return Err(Error::invalid("H must be a tree"));
    }
    let h = h_tree.n();
    if h < 2 {
        return Err(Error::invalid("H must have at least one edge"));
    }
    let g = exhaustive_g(n, h_tree, field, budget)?;
    let mut violations = Vec::new();
    if g.value > h - 1 || (n >= h - 1 && g.value != h - 1) {
        violations.push(Violation {
            instance: write_graph6(&g.witness),
            detail: format!("maximum minrank {} but h - 1 = {}", g.value, h - 1),
        });
    }
    let mut witness_value = Value::Null;
    if n >= h - 1 && n >= 1 {
        let w = balanced_multipartite(n, h - 1)?;
        if contains_subgraph(&w.complement(), h_tree) {
            violations.push(Violation {
                instance: write_graph6(&w),
                detail: "multipartite witness has H in its complement".into(),
            });
        }
        let r = minrank_exact(&w, field, budget)?.value;
        if r != h - 1 {
            violations.push(Violation {
                instance: write_graph6(&w),
                detail: format!("multipartite witness has minrank {r}, expected {}", h - 1),
            });
        }
        witness_value = json!({"graph6": write_graph6(&w), "minrank": r});
    }
    Ok(report(
        "forest",
        json!({"n": n, "h_graph6": write_graph6(h_tree), "p": field.modulus()}),
        g.graphs_checked,
        violations,
        json!({
            "h": h,
            "max_minrank": g.value,
            "max_witness": write_graph6(&g.witness),
            "accepted": g.accepted,
            "multipartite": witness_value,
        }),
        started,
    ))
}

/// Arc probability for the sampling estimate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum EdgeProbability {
    Fixed(f64),
    /// `1 - c2 n^-gamma(H)` with `c2` from [`find_constants`].
    Theorem,
}

/// Sampled lower bound on `g(n, H, F)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GEstimate {
    pub n: usize,
    pub field: u32,
    pub samples: u64,
    pub seed: u64,
    pub edge_prob: f64,
    pub accepted: u64,
    pub acceptance_rate: f64,
    pub distinct_accepted: usize,
    pub best: usize,
    /// First accepted sample attaining `best`, in graph6.
    #[serde(serialize_with = "graph6_string")]
    pub witness: Graph,
    pub witness_sample: u64,
}

/// Sample `samples` random digraphs with the given arc probability, keep the
/// graph of 2-cycles of each, discard those whose complement contains `h`,
/// and report the largest exact minrank among the rest. One ChaCha8 stream
/// seeded from `seed` drives all samples, so the result depends only on the
/// arguments.
pub fn estimate_g(
    n: usize,
    h: &Graph,
    field: PrimeField,
    samples: u64,
    edge_prob: EdgeProbability,
    seed: u64,
    budget: &Budget,
) -> Result<GEstimate> {
    let prob = match edge_prob {
        EdgeProbability::Fixed(p) => p,
        EdgeProbability::Theorem => {
            let inst = find_constants(&gamma_stats(h)?, field.modulus() as u64)?;
            let gamma = num_traits::ToPrimitive::to_f64(&inst.stats.gamma).expect("finite");
            let c2 = num_traits::ToPrimitive::to_f64(&inst.c2).expect("finite");
            (1.0 - c2 * (n as f64).powf(-gamma)).clamp(0.0, 1.0)
        }
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut index: HashMap<Graph, usize> = HashMap::new();
    let mut distinct: Vec<Graph> = Vec::new();
    // (sample number, distinct-graph index) for every accepted sample
    let mut accepted: Vec<(u64, usize)> = Vec::new();
    for i in 0..samples {
        let g = underlying_graph(&sample_digraph_with(n, prob, &mut rng)?);
        if let Some(&j) = index.get(&g) {
            accepted.push((i, j));
            continue;
        }
        if contains_subgraph(&g.complement(), h) {
            continue;
        }
        index.insert(g.clone(), distinct.len());
        accepted.push((i, distinct.len()));
        distinct.push(g);
    }
    if accepted.is_empty() {
        return Err(Error::NoAcceptedSamples { samples });
    }
    let values = distinct
        .par_iter()
        .map(|g| minrank_exact(g, field, budget).map(|r| r.value))
        .collect::<Result<Vec<_>>>()?;
    let mut best: Option<(u64, usize)> = None;
    for &(i, j) in &accepted {
        if best.is_none_or(|(_, b)| values[j] > values[b]) {
            best = Some((i, j));
        }
    }
    let (witness_sample, j) = best.expect("nonempty");
    Ok(GEstimate {
        n,
        field: field.modulus(),
        samples,
        seed,
        edge_prob: prob,
        accepted: accepted.len() as u64,
        acceptance_rate: accepted.len() as f64 / samples as f64,
        distinct_accepted: distinct.len(),
        best: values[j],
        witness: distinct[j].clone(),
        witness_sample,
    })
}
