//! Constants and inequality checks for the local-lemma lower bound on the
//! minrank of graphs whose complement avoids a fixed graph `H`.
//!
//! For `H` with `h` vertices and `f >= 3` edges, `gamma = (h - 2)/(f - 1)`.
//! The argument samples a random digraph with arc probability `1 - q` and
//! needs constants `c1..c4` with
//!
//! 1. `c2 > 2 (2 c3 + c4)`,
//! 2. `c3 >= h! (2 c2)^f e^3`,
//! 3. `c4 >= 32 c1`,
//!
//! after which two local-lemma conditions hold for large `n`, with
//! `q = c2 n^-gamma`, `x = c3 n^(-gamma f)` and
//! `x_s = exp(-c4 s n^-gamma)`. [`find_constants`] produces exact rational
//! constants; [`check_lll_inequalities`] evaluates both conditions at a
//! concrete `n`, in log space, with the counts `N_s` replaced by their upper
//! bounds `exp(24 c1 s n^-gamma)`.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Largest edge count for which every edge subset is enumerated.
pub const MAX_H_EDGES: usize = 24;
/// The threshold search looks at `n = 2^j` for `j` in `1..=GRID_TOP`.
pub const GRID_TOP: u32 = 40;

/// Size statistics of the forbidden graph `H`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HStats {
    pub h: usize,
    pub f: usize,
    /// `(h - 2)/(f - 1)`.
    #[serde(serialize_with = "crate::display_string")]
    pub gamma: BigRational,
    /// Minimum of `gamma` over subgraphs with at least 3 edges.
    #[serde(serialize_with = "crate::display_string")]
    pub gamma0: BigRational,
    pub is_forest: bool,
}

fn ratio(a: usize, b: usize) -> BigRational {
    BigRational::new(BigInt::from(a), BigInt::from(b))
}

/// `gamma` and `gamma0` of `h_graph`.
///
/// `gamma0` is minimized over edge subsets of size at least 3, each taken
/// with the vertices it touches: isolated vertices only raise `gamma`.
pub fn gamma_stats(h_graph: &Graph) -> Result<HStats> {
    let edges = h_graph.edges();
    let f = edges.len();
    if f < 3 {
        return Err(Error::invalid(format!("H needs at least 3 edges, has {f}")));
    }
    if f > MAX_H_EDGES {
        return Err(Error::BudgetExceeded {
            what: "edge subsets of H",
            needed: format!("2^{f}"),
            limit: format!("2^{MAX_H_EDGES}"),
        });
    }
    let h = h_graph.n();
    let mut gamma0 = ratio(h - 2, f - 1);
    for subset in 0u64..1 << f {
        let size = subset.count_ones() as usize;
        if size < 3 {
            continue;
        }
        let mut support = 0u128;
        for (i, &(u, v)) in edges.iter().enumerate() {
            if subset >> i & 1 == 1 {
                support |= 1 << u | 1 << v;
            }
        }
        let g = ratio(support.count_ones() as usize - 2, size - 1);
        if g < gamma0 {
            gamma0 = g;
        }
    }
    Ok(HStats {
        h,
        f,
        gamma: ratio(h - 2, f - 1),
        gamma0,
        is_forest: h_graph.is_forest(),
    })
}

fn factorial(n: usize) -> BigUint {
    (1..=n as u64).product()
}

/// A certified rational upper bound on `e^3`: the Taylor polynomial of
/// degree 30 plus a bound on the tail, rounded up to a multiple of `2^-40`.
pub fn e_cubed_upper() -> BigRational {
    const DEGREE: u64 = 30;
    let three = BigRational::from_integer(3.into());
    let mut term = BigRational::one();
    let mut sum = BigRational::zero();
    for k in 0..=DEGREE {
        sum += &term;
        term = term * &three / BigRational::from_integer(BigInt::from(k + 1));
    }
    // tail <= 3^(N+1)/(N+1)! * e^3 < 21 * 3^(N+1)/(N+1)!
    sum += term * BigRational::from_integer(21.into());
    let scale: BigInt = BigInt::one() << 40u32;
    let scaled = sum * BigRational::from_integer(scale.clone());
    BigRational::new(scaled.ceil().to_integer(), scale)
}

/// Rational constants for one `H` and field size.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LllInstance {
    pub stats: HStats,
    pub field_size: u64,
    /// `c2 = 2^-c2_exponent`.
    pub c2_exponent: u32,
    #[serde(serialize_with = "crate::display_string")]
    pub c1: BigRational,
    #[serde(serialize_with = "crate::display_string")]
    pub c2: BigRational,
    #[serde(serialize_with = "crate::display_string")]
    pub c3: BigRational,
    #[serde(serialize_with = "crate::display_string")]
    pub c4: BigRational,
    /// The rational upper bound on `e^3` used for `c3`.
    #[serde(serialize_with = "crate::display_string")]
    pub e3_upper: BigRational,
}

/// Which of the three constraints hold, evaluated exactly.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ConstraintCheck {
    pub item1: bool,
    pub item2: bool,
    pub item3: bool,
}

impl ConstraintCheck {
    pub fn all(&self) -> bool {
        self.item1 && self.item2 && self.item3
    }
}

impl LllInstance {
    /// Re-evaluate the three constraints in exact arithmetic. Item 2 is
    /// checked against the certified bound `e3_upper >= e^3`.
    pub fn constraints(&self) -> ConstraintCheck {
        let two = BigRational::from_integer(2.into());
        let hf = BigRational::from_integer(factorial(self.stats.h).into());
        let base = (&two * &self.c2).pow(self.stats.f as i32);
        ConstraintCheck {
            item1: self.c2 > &two * (&two * &self.c3 + &self.c4),
            item2: self.c3 >= hf * base * &self.e3_upper,
            item3: self.c4 >= BigRational::from_integer(32.into()) * &self.c1,
        }
    }

    pub fn c1_f64(&self) -> f64 {
        self.c1.to_f64().expect("finite")
    }
}

fn constants_for(stats: &HStats, field_size: u64, j: u32, e3: &BigRational) -> Option<LllInstance> {
    let two = BigRational::from_integer(2.into());
    let c2 = BigRational::new(BigInt::one(), BigInt::one() << j as usize);
    let c3 = BigRational::from_integer(factorial(stats.h).into()) * (&two * &c2).pow(stats.f as i32) * e3;
    let slack = &c2 / &two - &two * &c3;
    if slack <= BigRational::zero() {
        return None;
    }
    let c4 = slack / &two;
    let c1 = &c4 / BigRational::from_integer(32.into());
    Some(LllInstance {
        stats: stats.clone(),
        field_size,
        c2_exponent: j,
        c1,
        c2,
        c3,
        c4,
        e3_upper: e3.clone(),
    })
}

/// Search `c2 = 1, 1/2, 1/4, ...` for the first value leaving room for a
/// positive `c4`; take `c3` with equality in Item 2 (against the rational
/// bound on `e^3`), `c4 = (c2/2 - 2 c3)/2` and `c1 = c4/32`.
pub fn find_constants(stats: &HStats, field_size: u64) -> Result<LllInstance> {
    if stats.f < 3 {
        return Err(Error::invalid(format!("H needs at least 3 edges, has {}", stats.f)));
    }
    if field_size < 2 {
        return Err(Error::invalid(format!(
            "field size must be at least 2, got {field_size}"
        )));
    }
    let e3 = e_cubed_upper();
    // c3 / c2 shrinks like c2^(f-1) with f >= 3, so this terminates quickly.
    let inst = (0u32..)
        .find_map(|j| constants_for(stats, field_size, j, &e3))
        .expect("c2 search terminates");
    if !inst.constraints().all() {
        return Err(Error::Internal(format!(
            "constants violate a constraint: {:?}",
            inst.constraints()
        )));
    }
    Ok(inst)
}

/// Which side conditions of the argument hold at one `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Conditions {
    /// `ceil(s_min) <= n^2`.
    pub s_range_nonempty: bool,
    pub q_below_one: bool,
    pub x_at_most_half: bool,
    /// `x_s <= 1/2` at the smallest `s`, hence for all of them.
    pub x_s_at_most_half: bool,
    /// `s_min >= 2`, so that `s >= 2 n'` for single-vertex blocks.
    pub s_min_at_least_two: bool,
    /// `sum_s x_s N_s <= 1`.
    pub sum_at_most_one: bool,
    pub ineq_a: bool,
    pub ineq_b: bool,
}

impl Conditions {
    pub fn all(&self) -> bool {
        self.s_range_nonempty
            && self.q_below_one
            && self.x_at_most_half
            && self.x_s_at_most_half
            && self.s_min_at_least_two
            && self.sum_at_most_one
            && self.ineq_a
            && self.ineq_b
    }

    fn named(&self) -> [(&'static str, bool); 8] {
        [
            ("s_range_nonempty", self.s_range_nonempty),
            ("q_below_one", self.q_below_one),
            ("x_at_most_half", self.x_at_most_half),
            ("x_s_at_most_half", self.x_s_at_most_half),
            ("s_min_at_least_two", self.s_min_at_least_two),
            ("sum_at_most_one", self.sum_at_most_one),
            ("ineq_a", self.ineq_a),
            ("ineq_b", self.ineq_b),
        ]
    }
}

/// Evaluation of the local-lemma conditions at one `n`. Margins are
/// `ln(right side) - ln(left side)`; nonnegative means the inequality holds.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LllCheck {
    pub n: u64,
    /// The rank threshold `c1 n^(1-gamma) / ln(n |F|)`.
    pub k: f64,
    pub q: f64,
    pub x: f64,
    pub s_min: f64,
    pub s_max: f64,
    /// `ln sum_s x_s N_s`; `None` when the range of `s` is empty.
    pub log_sum_xn: Option<f64>,
    pub margin_a: f64,
    /// Margin of the second inequality at the two ends of the `s` range.
    /// It is linear in `s`, so the ends bound it everywhere.
    pub margin_b: Option<[f64; 2]>,
    pub conditions: Conditions,
    pub holds: bool,
}

/// `-count * ln(1 - x)` computed without forming `count` when it is huge.
fn neg_log_power(ln_count: f64, x: f64) -> f64 {
    (ln_count + (-(-x).ln_1p()).ln()).exp()
}

/// Evaluate both local-lemma conditions at `n`, using `gamma(H)`.
pub fn check_lll_inequalities(inst: &LllInstance, n: u64) -> Result<LllCheck> {
    if n < 2 {
        return Err(Error::invalid(format!("n must be at least 2, got {n}")));
    }
    let h = inst.stats.h as f64;
    let f = inst.stats.f as f64;
    let gamma = inst.stats.gamma.to_f64().expect("finite");
    let c1 = inst.c1_f64();
    let c2 = inst.c2.to_f64().expect("finite");
    let c3 = inst.c3.to_f64().expect("finite");
    let c4 = inst.c4.to_f64().expect("finite");

    let nf = n as f64;
    let ln_n = nf.ln();
    let ln_nf = (nf * inst.field_size as f64).ln();
    let n_gamma = (-gamma * ln_n).exp();
    let k = c1 * (nf.ln() * (1.0 - gamma)).exp() / ln_nf;
    let q = c2 * n_gamma;
    let x = c3 * (-gamma * f * ln_n).exp();
    let s_min = (gamma * ln_n).exp() * ln_nf / (4.0 * c1);
    let s_max = nf * nf;
    let s_lo = s_min.ceil();
    let nonempty = s_lo <= s_max;

    // sum_{s = s_lo}^{s_max} exp(-r s) with r = (c4 - 24 c1) n^-gamma
    let r = (c4 - 24.0 * c1) * n_gamma;
    let log_sum_xn = nonempty.then(|| {
        let terms = s_max - s_lo + 1.0;
        -r * s_lo + (-(-r * terms).exp_m1()).ln() - (-(-r).exp_m1()).ln()
    });
    let sum_xn = log_sum_xn.map_or(0.0, f64::exp);

    let ln_pairs = (h * (h - 1.0) / 2.0).ln();
    let ln_h2 = (h - 2.0) * ln_n;
    let ln_hfact = (1..=inst.stats.h).map(|i| (i as f64).ln()).sum::<f64>();
    let margin_a = x.ln() - neg_log_power(ln_pairs + ln_h2, x) - 2.0 * sum_xn - ln_hfact - f * (2.0 * q).ln();
    let slope = q / 2.0 - c4 * n_gamma - neg_log_power(ln_h2, x);
    let margin_b = nonempty.then_some([s_lo * slope - 2.0 * sum_xn, s_max * slope - 2.0 * sum_xn]);

    let x_smin = (-c4 * s_lo * n_gamma).exp();
    let conditions = Conditions {
        s_range_nonempty: nonempty,
        q_below_one: q < 1.0,
        x_at_most_half: x <= 0.5,
        x_s_at_most_half: x_smin <= 0.5,
        s_min_at_least_two: s_min >= 2.0,
        sum_at_most_one: nonempty && sum_xn <= 1.0,
        ineq_a: margin_a >= 0.0,
        ineq_b: margin_b.is_some_and(|m| m[0] >= 0.0 && m[1] >= 0.0),
    };
    Ok(LllCheck {
        n,
        k,
        q,
        x,
        s_min,
        s_max,
        log_sum_xn,
        margin_a,
        margin_b,
        holds: conditions.all(),
        conditions,
    })
}

/// Result of scanning `n = 2^j`, `j = 1..=GRID_TOP`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Threshold {
    /// Smallest grid point from which every condition holds at every larger
    /// grid point; `None` if the last grid point fails.
    pub n0: Option<u64>,
    /// The same, per condition.
    pub per_condition: BTreeMap<&'static str, Option<u64>>,
    pub at_n0: Option<LllCheck>,
}

fn grid() -> impl Iterator<Item = u64> {
    (1..=GRID_TOP).map(|j| 1u64 << j)
}

/// The first grid point of the final run where `ok` holds.
fn stable_from(points: &[(u64, bool)]) -> Option<u64> {
    let mut first = None;
    for &(n, ok) in points {
        match (ok, first) {
            (true, None) => first = Some(n),
            (false, _) => first = None,
            _ => {}
        }
    }
    first
}

pub fn find_threshold(inst: &LllInstance) -> Result<Threshold> {
    let checks = grid()
        .map(|n| check_lll_inequalities(inst, n))
        .collect::<Result<Vec<_>>>()?;
    let holds: Vec<(u64, bool)> = checks.iter().map(|c| (c.n, c.holds)).collect();
    let n0 = stable_from(&holds);
    let mut per_condition = BTreeMap::new();
    for (idx, (name, _)) in checks[0].conditions.named().iter().enumerate() {
        let points: Vec<(u64, bool)> = checks.iter().map(|c| (c.n, c.conditions.named()[idx].1)).collect();
        per_condition.insert(*name, stable_from(&points));
    }
    let at_n0 = n0.and_then(|n| checks.iter().find(|c| c.n == n).cloned());
    Ok(Threshold {
        n0,
        per_condition,
        at_n0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named_graph;

    fn stats(name: &str) -> HStats {
        gamma_stats(&named_graph(name).unwrap()).unwrap()
    }

    #[test]
    fn gamma_values() {
        let k3 = stats("K3");
        assert_eq!((k3.gamma.clone(), k3.gamma0.clone()), (ratio(1, 2), ratio(1, 2)));
        assert_eq!(stats("K4").gamma0, ratio(2, 5));
        let c5 = stats("C5");
        assert_eq!((c5.gamma, c5.gamma0), (ratio(3, 4), ratio(3, 4)));
        let p4 = stats("P4");
        assert!(p4.is_forest && p4.gamma0 == ratio(1, 1));
        assert!(gamma_stats(&named_graph("P3").unwrap()).is_err());
    }

    #[test]
    fn e_cubed_bound_is_tight_and_above() {
        let e3 = e_cubed_upper().to_f64().unwrap();
        assert!(e3 >= 3f64.exp());
        assert!(e3 - 3f64.exp() < 1e-9);
    }

    #[test]
    fn constants_for_triangle() {
        let inst = find_constants(&stats("K3"), 2).unwrap();
        assert!(inst.constraints().all());
        assert_eq!(inst.c2_exponent, 6);
        assert_eq!(&inst.c1 * BigRational::from_integer(32.into()), inst.c4);
    }

    #[test]
    fn triangle_threshold() {
        let inst = find_constants(&stats("K3"), 2).unwrap();
        assert!(!check_lll_inequalities(&inst, 2).unwrap().holds);
        let t = find_threshold(&inst).unwrap();
        let at = t.at_n0.unwrap();
        assert!(at.holds && at.k > 0.0 && at.k < at.n as f64);
        assert!(at.log_sum_xn.unwrap() <= 0.0);
    }

    #[test]
    fn stable_runs() {
        assert_eq!(stable_from(&[(2, true), (4, false), (8, true), (16, true)]), Some(8));
        assert_eq!(stable_from(&[(2, true), (4, false)]), None);
    }
}
