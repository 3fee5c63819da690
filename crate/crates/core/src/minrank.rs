//! Representation checks and exact minrank over prime fields.
//!
//! The exact solver works on row spaces instead of matrices. A graph has
//! minrank at most `k` over `GF(p)` iff some `k`-dimensional subspace `W` of
//! `GF(p)^n` contains, for every vertex `i`, a vector that is nonzero at `i`
//! and zero at every `j != i` with `(i, j)` not an arc. Writing the columns
//! of a basis matrix of `W` as `b_0..b_{n-1}`, that is the case iff `b_i` is
//! not in the span of `{b_j : j in Z_i}`, where `Z_i` is the set of
//! non-out-neighbours of `i`. Subspaces are enumerated through their reduced
//! row echelon bases, pivot pattern by pivot pattern, for increasing `k`
//! starting at the independence number.

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{Echelon, FieldMatrix, PrimeField, ZeroPattern};
use crate::combinatorics::combinations;
use crate::error::{Error, Result};
use crate::graph::{
    chromatic_number, degeneracy, greedy_coloring, greedy_independent_set, independence_number, ArcRelation, Digraph,
    Graph,
};

/// Largest vertex count for which the independence number is computed exactly.
pub const EXACT_ALPHA_LIMIT: usize = 40;
/// Largest vertex count for which the chromatic number is computed exactly.
pub const EXACT_CHI_LIMIT: usize = 20;

/// Enumeration limits for the exact solver.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Budget {
    /// Maximum number of candidate subspaces, summed over every rank tried.
    pub max_subspaces: u128,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_subspaces: 5_000_000,
        }
    }
}

/// Exact minrank together with a representing matrix attaining it.
#[derive(Debug, Clone, PartialEq)]
pub struct MinrankResult {
    pub value: usize,
    pub witness: FieldMatrix,
    /// Independence number (of the underlying graph keeping any arc).
    pub lower: usize,
    /// Chromatic number of the complement (of the graph keeping 2-cycles).
    pub upper: usize,
}

/// Field-independent sandwich bounds `alpha(G) <= minrk(G) <= chi(complement G)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct MinrankBounds {
    pub lower: usize,
    pub upper: usize,
    /// False when the lower bound came from a greedy independent set.
    pub lower_exact: bool,
    /// False when the upper bound is degeneracy + 1 instead of `chi`.
    pub upper_exact: bool,
}

/// Does `m` represent `g`: nonzero diagonal and zeros at every off-diagonal
/// position `(i, j)` that is not an arc? Undirected graphs count each edge in
/// both directions.
pub fn represents<M: ZeroPattern, G: ArcRelation>(m: &M, g: &G) -> Result<bool> {
    let n = g.vertex_count();
    if m.shape() != (n, n) {
        return Err(Error::DimensionMismatch {
            expected: format!("{n}x{n} matrix"),
            found: format!("{}x{}", m.shape().0, m.shape().1),
        });
    }
    for i in 0..n {
        if !m.is_nonzero(i, i) {
            return Ok(false);
        }
        for j in 0..n {
            if i != j && !g.arc(i, j) && m.is_nonzero(i, j) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Sandwich bounds for an undirected graph. Exact below
/// [`EXACT_ALPHA_LIMIT`] / [`EXACT_CHI_LIMIT`] vertices, greedy above.
pub fn minrank_bounds(g: &Graph) -> MinrankBounds {
    bounds_of(g, g)
}

/// Sandwich bounds for a digraph: independence number of the graph joining
/// any two vertices with an arc between them, chromatic number of the
/// complement of the graph of 2-cycles.
pub fn digraph_minrank_bounds(d: &Digraph) -> MinrankBounds {
    bounds_of(&d.weak_graph(), &d.strong_graph())
}

/// `weak` keeps a pair joined by an arc in either direction, `strong` only
/// pairs joined in both directions.
fn bounds_of(weak: &Graph, strong: &Graph) -> MinrankBounds {
    let n = weak.n();
    let (lower, lower_exact) = if n <= EXACT_ALPHA_LIMIT {
        (independence_number(weak), true)
    } else {
        (greedy_independent_set(weak).len(), false)
    };
    let comp = strong.complement();
    let (upper, upper_exact) = if n <= EXACT_CHI_LIMIT {
        (chromatic_number(&comp), true)
    } else {
        let mut order = degeneracy(&comp).order;
        order.reverse();
        let colors = greedy_coloring(&comp, &order);
        (colors.iter().max().map_or(0, |c| c + 1), false)
    };
    MinrankBounds {
        lower,
        upper,
        lower_exact,
        upper_exact,
    }
}

/// Number of `k`-dimensional subspaces of `GF(p)^n` (Gaussian binomial),
/// saturating at `u128::MAX`.
pub fn subspace_count(n: usize, k: usize, p: u32) -> u128 {
    if k > n {
        return 0;
    }
    let pow = |e: usize| -> Option<u128> { (p as u128).checked_pow(e as u32) };
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..k {
        let (Some(a), Some(b)) = (pow(n - i), pow(i + 1)) else {
            return u128::MAX;
        };
        let Some(x) = num.checked_mul(a - 1) else {
            return u128::MAX;
        };
        num = x;
        den *= b - 1;
        let g = gcd(num, den);
        num /= g;
        den /= g;
    }
    num / den
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// The positions of non-out-neighbours of each vertex.
fn non_neighbors<G: ArcRelation>(g: &G) -> Vec<Vec<usize>> {
    let n = g.vertex_count();
    (0..n)
        .map(|i| (0..n).filter(|&j| j != i && !g.arc(i, j)).collect())
        .collect()
}

/// Free positions `(row, col)` of a reduced row echelon form with the given
/// pivot columns: to the right of the row's pivot, outside pivot columns.
fn free_positions(pivots: &[usize], n: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for (r, &pc) in pivots.iter().enumerate() {
        for c in pc + 1..n {
            if !pivots.contains(&c) {
                out.push((r, c));
            }
        }
    }
    out
}

/// Column-wise view of a basis matrix, for the span tests.
trait Columns: Sync {
    fn feasible(&self, basis: &[Vec<u32>], zsets: &[Vec<usize>]) -> bool;
}

struct Gf2;
struct Gfp(PrimeField);

impl Columns for Gf2 {
    fn feasible(&self, basis: &[Vec<u32>], zsets: &[Vec<usize>]) -> bool {
        let k = basis.len();
        let n = zsets.len();
        let cols: Vec<u64> = (0..n)
            .map(|j| (0..k).fold(0u64, |acc, r| acc | (basis[r][j] as u64) << r))
            .collect();
        zsets.iter().enumerate().all(|(i, z)| {
            // xor basis indexed by leading bit
            let mut xb = [0u64; 64];
            for &j in z {
                let mut v = cols[j];
                while v != 0 {
                    let top = 63 - v.leading_zeros() as usize;
                    if xb[top] == 0 {
                        xb[top] = v;
                        break;
                    }
                    v ^= xb[top];
                }
            }
            let mut v = cols[i];
            while v != 0 {
                let top = 63 - v.leading_zeros() as usize;
                if xb[top] == 0 {
                    return true;
                }
                v ^= xb[top];
            }
            false
        })
    }
}

impl Columns for Gfp {
    fn feasible(&self, basis: &[Vec<u32>], zsets: &[Vec<usize>]) -> bool {
        let col = |j: usize| basis.iter().map(|row| row[j]).collect::<Vec<u32>>();
        zsets.iter().enumerate().all(|(i, z)| {
            let mut e = Echelon::new(self.0);
            for &j in z {
                e.insert(col(j));
                if e.rank() == basis.len() {
                    return false;
                }
            }
            !e.contains(&col(i))
        })
    }
}

/// First feasible basis (in canonical order) for one pivot pattern.
fn search_pattern(
    cols: &dyn Columns,
    p: u32,
    n: usize,
    pivots: &[usize],
    zsets: &[Vec<usize>],
) -> Option<Vec<Vec<u32>>> {
    let k = pivots.len();
    let free = free_positions(pivots, n);
    let mut basis = vec![vec![0u32; n]; k];
    for (r, &pc) in pivots.iter().enumerate() {
        basis[r][pc] = 1;
    }
    // mixed-radix counter over the free entries, last position fastest
    let mut digits = vec![0u32; free.len()];
    loop {
        if cols.feasible(&basis, zsets) {
            return Some(basis);
        }
        let mut pos = free.len();
        loop {
            if pos == 0 {
                return None;
            }
            pos -= 1;
            digits[pos] += 1;
            if digits[pos] < p {
                break;
            }
            digits[pos] = 0;
        }
        for (d, &(r, c)) in digits.iter().zip(&free) {
            basis[r][c] = *d;
        }
    }
}

/// Basis of `{c in GF(p)^k : c . v = 0 for all v in vs}`.
fn annihilator(field: PrimeField, k: usize, vs: &[Vec<u32>]) -> Vec<Vec<u32>> {
    // reduced row echelon form of the constraint rows
    let mut m: Vec<Vec<u32>> = vs.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..k {
        let Some(piv) = (r..m.len()).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(piv, r);
        let inv = field.inv(m[r][c]);
        for x in m[r].iter_mut() {
            *x = field.mul(*x, inv);
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            let f = row[c];
            if i != r && f != 0 {
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x = field.sub(*x, field.mul(f, *y));
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (0..k)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut x = vec![0u32; k];
            x[free] = 1;
            for (row, &pc) in m.iter().zip(&pivots) {
                x[pc] = field.sub(0, row[free]);
            }
            x
        })
        .collect()
}

fn dot(field: PrimeField, a: &[u32], b: &[u32]) -> u32 {
    a.iter().zip(b).fold(0, |acc, (&x, &y)| field.add(acc, field.mul(x, y)))
}

/// Build the representing matrix whose rows lie in the span of `basis`.
fn witness_from_basis(field: PrimeField, basis: &[Vec<u32>], zsets: &[Vec<usize>]) -> Result<FieldMatrix> {
    let k = basis.len();
    let n = zsets.len();
    let col = |j: usize| basis.iter().map(|row| row[j]).collect::<Vec<u32>>();
    let mut m = FieldMatrix::zeros(field, n, n);
    for (i, z) in zsets.iter().enumerate() {
        let constraints: Vec<Vec<u32>> = z.iter().map(|&j| col(j)).collect();
        let bi = col(i);
        let c = annihilator(field, k, &constraints)
            .into_iter()
            .find(|c| dot(field, c, &bi) != 0)
            .ok_or_else(|| Error::Internal(format!("no row vector for vertex {i}")))?;
        for j in 0..n {
            m.set(i, j, dot(field, &c, &col(j)));
        }
    }
    Ok(m)
}

/// Exact minrank of `g` over `GF(p)` with a witness matrix.
///
/// Refuses with [`Error::BudgetExceeded`] when the number of candidate
/// subspaces between the sandwich bounds exceeds `budget`. The witness is the
/// one built from the first feasible subspace in canonical order (pivot
/// patterns lexicographically, then free entries as a counter), independent
/// of how many worker threads rayon uses.
pub fn minrank_exact<G: ArcRelation>(g: &G, field: PrimeField, budget: &Budget) -> Result<MinrankResult> {
    let n = g.vertex_count();
    let p = field.modulus();
    let mut weak = Graph::empty(n);
    let mut strong = Graph::empty(n);
    for i in 0..n {
        for j in i + 1..n {
            let (a, b) = (g.arc(i, j), g.arc(j, i));
            if a || b {
                weak.add_edge(i, j);
            }
            if a && b {
                strong.add_edge(i, j);
            }
        }
    }
    let bounds = bounds_of(&weak, &strong);
    let (lower, upper) = (bounds.lower, bounds.upper);
    if n == 0 {
        return Ok(MinrankResult {
            value: 0,
            witness: FieldMatrix::zeros(field, 0, 0),
            lower,
            upper,
        });
    }
    let needed = (lower..=upper).fold(0u128, |acc, k| acc.saturating_add(subspace_count(n, k, p)));
    if needed > budget.max_subspaces || n > 64 {
        return Err(Error::BudgetExceeded {
            what: "candidate subspaces",
            needed: needed.to_string(),
            limit: budget.max_subspaces.to_string(),
        });
    }
    let zsets = non_neighbors(g);
    let cols: Box<dyn Columns> = if p == 2 { Box::new(Gf2) } else { Box::new(Gfp(field)) };
    for k in lower.max(1)..=upper {
        let patterns = combinations(n, k);
        let found = patterns
            .par_iter()
            .find_map_first(|piv| search_pattern(cols.as_ref(), p, n, piv, &zsets));
        if let Some(basis) = found {
            let witness = witness_from_basis(field, &basis, &zsets)?;
            if !represents(&witness, g)? || witness.rank() != k {
                return Err(Error::Internal(format!(
                    "witness for rank {k} failed verification (rank {})",
                    witness.rank()
                )));
            }
            return Ok(MinrankResult {
                value: k,
                witness,
                lower,
                upper,
            });
        }
    }
    Err(Error::Internal(format!(
        "no feasible subspace up to the clique-cover bound {upper}"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    #[test]
    fn gaussian_binomials() {
        assert_eq!(subspace_count(4, 2, 2), 35);
        assert_eq!(subspace_count(6, 3, 3), 33880);
        assert_eq!(subspace_count(8, 4, 2), 200787);
        assert_eq!(subspace_count(5, 0, 7), 1);
        assert_eq!(subspace_count(5, 5, 7), 1);
        assert_eq!(subspace_count(3, 4, 2), 0);
        assert_eq!(subspace_count(200, 100, 3), u128::MAX);
    }

    #[test]
    fn representation_examples() {
        let f = gf(2);
        assert!(represents(&FieldMatrix::identity(f, 4), &Graph::empty(4)).unwrap());
        assert!(represents(&FieldMatrix::ones(f, 4, 4), &Graph::complete(4)).unwrap());
        let mut m = FieldMatrix::identity(f, 3);
        m.set(0, 2, 1);
        let g = Graph::from_edges(3, &[(0, 1)]).unwrap();
        assert!(!represents(&m, &g).unwrap());
        assert!(represents(&FieldMatrix::identity(f, 3), &g).unwrap());
        assert!(represents(&FieldMatrix::identity(f, 2), &g).is_err());
        // zero diagonal entry
        let mut z = FieldMatrix::ones(f, 3, 3);
        z.set(1, 1, 0);
        assert!(!represents(&z, &Graph::complete(3)).unwrap());
    }

    #[test]
    fn directed_representation_uses_out_arcs() {
        let d = Digraph::from_arcs(2, &[(0, 1)]).unwrap();
        let mut m = FieldMatrix::identity(gf(3), 2);
        m.set(0, 1, 2);
        assert!(represents(&m, &d).unwrap());
        assert!(!represents(&m.transpose(), &d).unwrap());
    }

    #[test]
    fn anchor_values() {
        let b = Budget::default();
        assert_eq!(minrank_exact(&Graph::complete(5), gf(2), &b).unwrap().value, 1);
        assert_eq!(minrank_exact(&Graph::empty(5), gf(2), &b).unwrap().value, 5);
        let c5 = minrank_exact(&Graph::cycle(5).unwrap(), gf(2), &b).unwrap();
        assert_eq!((c5.lower, c5.value, c5.upper), (2, 3, 3));
        assert!(represents(&c5.witness, &Graph::cycle(5).unwrap()).unwrap());
        assert_eq!(c5.witness.rank(), 3);
    }

    #[test]
    fn bounds_examples() {
        let k222 = Graph::complete_multipartite(&[2, 2, 2]).unwrap();
        let b = minrank_bounds(&k222);
        assert_eq!((b.lower, b.upper), (2, 2));
        let b = minrank_bounds(&Graph::cycle(5).unwrap());
        assert_eq!((b.lower, b.upper), (2, 3));
        let b = minrank_bounds(&Graph::complete(7));
        assert_eq!((b.lower, b.upper), (1, 1));
        assert!(b.lower_exact && b.upper_exact);
        let big = minrank_bounds(&Graph::empty(45));
        assert!(!big.lower_exact && !big.upper_exact);
        assert_eq!((big.lower, big.upper), (45, 45));
    }

    #[test]
    fn refuses_over_budget() {
        let tiny = Budget { max_subspaces: 10 };
        let err = minrank_exact(&Graph::cycle(7).unwrap(), gf(3), &tiny).unwrap_err();
        assert!(err.is_budget());
    }

    #[test]
    fn directed_triangle() {
        // a directed 3-cycle: lower bound 1 from the weak graph, upper bound
        // 3 since it has no 2-cycles; over GF(2) the minrank is 2
        let d = Digraph::from_arcs(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        let r = minrank_exact(&d, gf(2), &Budget::default()).unwrap();
        assert_eq!((r.lower, r.upper), (1, 3));
        assert_eq!(r.value, 2);
        assert!(represents(&r.witness, &d).unwrap());
    }
}
