//! Generalized Kneser graphs `K(d, s, m)` and their low-rank real
//! representations.
//!
//! Vertices are the `s`-subsets of `{0, .., d-1}`, stored as bitmasks and
//! listed in lexicographic order of their sorted elements. Two distinct
//! subsets are adjacent when they share fewer than `m` elements.
//!
//! The representation comes from the polynomial
//! `P(t) = (t - m)(t - m - 1)...(t - s + 1)` evaluated at intersection sizes:
//! `P(|A ∩ B|)` vanishes exactly when `m <= |A ∩ B| <= s - 1`, which covers
//! every non-adjacent distinct pair, and equals `(s - m)!` on the diagonal.
//! Writing `P(sum_i x_i y_i)` as a multilinear form in the products `x_i y_i`
//! gives a factorization through the subsets of size at most `s - m`.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::RationalMatrix;
use crate::combinatorics::{binomial, binomial_u64, ln_big, subset_masks};
use crate::error::{Error, Result};
use crate::graph::{min_odd_cycle_at_most, Graph};
use crate::minrank::represents;

/// Largest vertex count for which a Kneser graph is materialized.
pub const GRAPH_VERTEX_LIMIT: u64 = 20_000;
/// Largest vertex count for which the dense representation matrix is built.
pub const MATRIX_VERTEX_LIMIT: u64 = 2_000;
/// Largest `|V| * R` for the factor matrices.
pub const FACTOR_ENTRY_LIMIT: u64 = 4_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct KneserParams {
    pub d: usize,
    pub s: usize,
    pub m: usize,
}

impl KneserParams {
    pub fn new(d: usize, s: usize, m: usize) -> Result<Self> {
        if m > s || s > d {
            return Err(Error::invalid(format!("need m <= s <= d, got d={d}, s={s}, m={m}")));
        }
        if d > 64 {
            return Err(Error::invalid(format!("d={d} exceeds 64")));
        }
        Ok(KneserParams { d, s, m })
    }

    /// `C(d, s)`.
    pub fn vertex_count(&self) -> BigUint {
        binomial(self.d as u64, self.s as u64)
    }

    /// `R = sum_{i <= s - m} C(d, i)`, the number of factor columns.
    pub fn rank_bound(&self) -> BigUint {
        partial_binomial_sum(self.d as u64, (self.s - self.m) as u64)
    }

    fn checked_vertex_count(&self, limit: u64, what: &'static str) -> Result<u64> {
        match binomial_u64(self.d as u64, self.s as u64) {
            Some(v) if v <= limit => Ok(v),
            _ => Err(Error::BudgetExceeded {
                what,
                needed: format!("{} vertices", self.vertex_count()),
                limit: format!("{limit} vertices"),
            }),
        }
    }

    /// The vertex subsets as bitmasks, in lexicographic order.
    pub fn vertices(&self) -> Result<Vec<u64>> {
        self.checked_vertex_count(GRAPH_VERTEX_LIMIT, "Kneser graph")?;
        Ok(subset_masks(self.d, self.s))
    }
}

/// `sum_{i=0}^{top} C(d, i)`.
pub fn partial_binomial_sum(d: u64, top: u64) -> BigUint {
    (0..=top.min(d)).map(|i| binomial(d, i)).sum()
}

/// Elements of a subset mask, ascending.
pub fn subset_elements(mask: u64) -> Vec<usize> {
    (0..64).filter(|&i| mask >> i & 1 == 1).collect()
}

/// The generalized Kneser graph `K(d, s, m)`.
pub fn kneser_graph(params: KneserParams) -> Result<Graph> {
    let vs = params.vertices()?;
    let mut g = Graph::empty(vs.len());
    for (i, &a) in vs.iter().enumerate() {
        for (j, &b) in vs.iter().enumerate().skip(i + 1) {
            if ((a & b).count_ones() as usize) < params.m {
                g.add_edge(i, j);
            }
        }
    }
    Ok(g)
}

/// `P(t) = prod_{j=m}^{s-1} (t - j)`.
pub fn pattern_polynomial(s: usize, m: usize, t: i64) -> BigInt {
    (m..s).map(|j| BigInt::from(t - j as i64)).product()
}

/// Coefficients `c_0, .., c_{s-m}` of `P(sum_i z_i)` written as a
/// multilinear polynomial: the coefficient of `prod_{i in S} z_i` is
/// `c_{|S|}`. They are the forward differences of `P` at zero,
/// `c_u = sum_t (-1)^(u-t) C(u, t) P(t)`.
pub fn pattern_polynomial_coefficients(s: usize, m: usize) -> Result<Vec<BigInt>> {
    if m > s {
        return Err(Error::invalid(format!("need m <= s, got s={s}, m={m}")));
    }
    let values: Vec<BigInt> = (0..=s - m).map(|t| pattern_polynomial(s, m, t as i64)).collect();
    Ok((0..=s - m)
        .map(|u| {
            (0..=u)
                .map(|t| {
                    let term = BigInt::from(binomial(u as u64, t as u64)) * &values[t];
                    if (u - t) % 2 == 0 {
                        term
                    } else {
                        -term
                    }
                })
                .sum()
        })
        .collect())
}

/// A rational matrix representing `K(d, s, m)` together with its factorization.
#[derive(Debug, Clone)]
pub struct KneserWitness {
    pub params: KneserParams,
    /// Row/column labels of `matrix`, lexicographic.
    pub vertices: Vec<u64>,
    /// Column labels of the factors: subsets of size at most `s - m`,
    /// ordered by size, then lexicographically.
    pub factor_subsets: Vec<u64>,
    pub coefficients: Vec<BigInt>,
    /// `M[A][B] = P(|A ∩ B|)`.
    pub matrix: RationalMatrix,
    /// `L[A][S] = [S ⊆ A]`.
    pub factor_left: RationalMatrix,
    /// `R[B][S] = c_{|S|} [S ⊆ B]`.
    pub factor_right: RationalMatrix,
    pub rank_bound: BigUint,
}

impl KneserWitness {
    /// Exact rank of `matrix` by fraction-free elimination.
    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    /// Exact rank, failing if it exceeds the number of factor columns.
    pub fn checked_rank(&self) -> Result<usize> {
        let r = self.rank();
        if BigUint::from(r) > self.rank_bound {
            return Err(Error::Internal(format!(
                "rank {r} exceeds the factorization bound {}",
                self.rank_bound
            )));
        }
        Ok(r)
    }
}

/// Build the representation matrix of `K(d, s, m)` and its factorization.
///
/// Before returning, checks that the factors multiply back to the matrix
/// and that the matrix represents the graph. The rank bound then follows
/// from the inner dimension; [`KneserWitness::checked_rank`] confirms it by
/// elimination.
pub fn representation_matrix(params: KneserParams) -> Result<KneserWitness> {
    let n = params.checked_vertex_count(MATRIX_VERTEX_LIMIT, "Kneser representation matrix")?;
    let rank_bound = params.rank_bound();
    let entries = BigUint::from(n) * &rank_bound;
    if entries > BigUint::from(FACTOR_ENTRY_LIMIT) {
        return Err(Error::BudgetExceeded {
            what: "Kneser factor matrices",
            needed: format!("{entries} entries"),
            limit: format!("{FACTOR_ENTRY_LIMIT} entries"),
        });
    }
    let KneserParams { d, s, m } = params;
    let vertices = subset_masks(d, s);
    let coefficients = pattern_polynomial_coefficients(s, m)?;
    let factor_subsets: Vec<u64> = (0..=s - m).flat_map(|k| subset_masks(d, k)).collect();

    let values: Vec<BigRational> = (0..=s)
        .map(|t| BigRational::from_integer(pattern_polynomial(s, m, t as i64)))
        .collect();
    let matrix_data: Vec<BigRational> = vertices
        .par_iter()
        .flat_map_iter(|&a| {
            let values = &values;
            vertices
                .iter()
                .map(move |&b| values[(a & b).count_ones() as usize].clone())
        })
        .collect();
    let matrix = RationalMatrix::from_entries(vertices.len(), vertices.len(), matrix_data)?;

    let scaled: Vec<BigRational> = coefficients.iter().cloned().map(BigRational::from_integer).collect();
    let factor = |scale: bool| -> Result<RationalMatrix> {
        let data: Vec<BigRational> = vertices
            .par_iter()
            .flat_map_iter(|&a| {
                let scaled = &scaled;
                factor_subsets.iter().map(move |&sub| {
                    if sub & a != sub {
                        BigRational::zero()
                    } else if scale {
                        scaled[sub.count_ones() as usize].clone()
                    } else {
                        BigRational::one()
                    }
                })
            })
            .collect();
        RationalMatrix::from_entries(vertices.len(), factor_subsets.len(), data)
    };
    let factor_left = factor(false)?;
    let factor_right = factor(true)?;

    let witness = KneserWitness {
        params,
        vertices,
        factor_subsets,
        coefficients,
        matrix,
        factor_left,
        factor_right,
        rank_bound,
    };
    if witness.factor_left.mul_transpose(&witness.factor_right)? != witness.matrix {
        return Err(Error::Internal(format!("factorization mismatch for {params:?}")));
    }
    let graph = kneser_graph(params)?;
    if !represents(&witness.matrix, &graph)? {
        return Err(Error::Internal(format!("matrix does not represent K{params:?}")));
    }
    Ok(witness)
}

fn check_odd_girth_args(d: usize, ell: usize) -> Result<()> {
    if ell < 3 || ell % 2 == 0 {
        return Err(Error::invalid(format!(
            "cycle length bound must be odd and at least 3, got {ell}"
        )));
    }
    if d % 2 == 1 {
        return Err(Error::invalid(format!("d must be even, got {d}")));
    }
    Ok(())
}

/// Whether `K(d, d/2, m)` is guaranteed to have no odd cycle of length at
/// most `ell`: true iff `2 * ell * m <= d`. False means no claim is made.
pub fn odd_girth_guarantee(d: usize, m: usize, ell: usize) -> Result<bool> {
    check_odd_girth_args(d, ell)?;
    Ok(2 * ell * m <= d)
}

/// Outcome of searching `K(d, d/2, m)` for short odd cycles.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OddGirthCheck {
    pub d: usize,
    pub m: usize,
    pub ell: usize,
    /// The guarantee's hypothesis `2 * ell * m <= d`.
    pub guaranteed: bool,
    /// Length of the shortest odd cycle of length at most `ell`, if any.
    pub shortest_odd_cycle: Option<usize>,
}

impl OddGirthCheck {
    /// False only when the hypothesis holds and a short odd cycle exists.
    pub fn consistent(&self) -> bool {
        !(self.guaranteed && self.shortest_odd_cycle.is_some())
    }
}

/// Build `K(d, d/2, m)` and search it for odd cycles of length at most `ell`.
pub fn verify_odd_girth(d: usize, m: usize, ell: usize) -> Result<OddGirthCheck> {
    let guaranteed = odd_girth_guarantee(d, m, ell)?;
    let g = kneser_graph(KneserParams::new(d, d / 2, m)?)?;
    Ok(OddGirthCheck {
        d,
        m,
        ell,
        guaranteed,
        shortest_odd_cycle: min_odd_cycle_at_most(&g, ell)?,
    })
}

/// `H(x) = -x log2 x - (1 - x) log2 (1 - x)`, with `H(0) = H(1) = 0`.
pub fn binary_entropy(x: f64) -> f64 {
    let term = |p: f64| if p <= 0.0 { 0.0 } else { -p * p.log2() };
    term(x) + term(1.0 - x)
}

/// The limit `1 - H(1/2 - 1/(2 ell))` approached by `delta_star`.
pub fn entropy_limit(ell: usize) -> f64 {
    1.0 - binary_entropy(0.5 - 0.5 / ell as f64)
}

/// Numbers behind the odd-girth construction at one `(ell, d)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TheoremInstance {
    pub ell: usize,
    /// Requested vertex count, when `d` was derived from it.
    pub n: Option<u64>,
    pub d: usize,
    pub m: usize,
    /// `sum_{i <= d/2 - m} C(d, i)`.
    #[serde(serialize_with = "crate::display_string")]
    pub rank_bound: BigUint,
    /// `C(d, d/2)`.
    #[serde(serialize_with = "crate::display_string")]
    pub vertex_count: BigUint,
    /// `1 - ln(rank_bound) / ln(vertex_count)`, rounded to 6 decimals.
    pub delta_star: f64,
    /// `1 - H(1/2 - 1/(2 ell))`, rounded to 6 decimals.
    pub entropy_limit: f64,
}

fn round6(x: f64) -> f64 {
    (x * 1e6).round() / 1e6
}

fn check_ell(ell: usize) -> Result<()> {
    if ell < 3 || ell % 2 == 0 {
        return Err(Error::invalid(format!("ell must be odd and at least 3, got {ell}")));
    }
    Ok(())
}

/// Evaluate the construction at a given `d` (a positive multiple of `2 ell`).
pub fn instantiate_at_d(ell: usize, d: usize) -> Result<TheoremInstance> {
    check_ell(ell)?;
    if d == 0 || d % (2 * ell) != 0 {
        return Err(Error::invalid(format!(
            "d={d} must be a positive multiple of {}",
            2 * ell
        )));
    }
    let m = d / (2 * ell);
    let rank_bound = partial_binomial_sum(d as u64, (d / 2 - m) as u64);
    let vertex_count = binomial(d as u64, d as u64 / 2);
    let delta_star = 1.0 - ln_big(&rank_bound) / ln_big(&vertex_count);
    Ok(TheoremInstance {
        ell,
        n: None,
        d,
        m,
        rank_bound,
        vertex_count,
        delta_star: round6(delta_star),
        entropy_limit: round6(entropy_limit(ell)),
    })
}

/// Evaluate the construction at the smallest multiple `d` of `2 ell` with
/// `C(d, d/2) >= n`.
pub fn instantiate_theorem(ell: usize, n: u64) -> Result<TheoremInstance> {
    check_ell(ell)?;
    if n == 0 {
        return Err(Error::invalid("n must be positive"));
    }
    let target = BigUint::from(n);
    let d = (1..)
        .map(|j| 2 * ell * j)
        .find(|&d| binomial(d as u64, d as u64 / 2) >= target)
        .expect("central binomials are unbounded");
    let mut inst = instantiate_at_d(ell, d)?;
    inst.n = Some(n);
    Ok(inst)
}

/// The induced subgraph of `K(d, d/2, m)` on its first `n` vertices in
/// lexicographic order, for the `d` and `m` chosen by [`instantiate_theorem`].
pub fn theorem_subgraph(ell: usize, n: u64) -> Result<Graph> {
    let inst = instantiate_theorem(ell, n)?;
    let g = kneser_graph(KneserParams::new(inst.d, inst.d / 2, inst.m)?)?;
    let prefix: Vec<usize> = (0..n as usize).collect();
    Ok(g.induced(&prefix))
}
