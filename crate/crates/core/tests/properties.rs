use minranklab::algebra::{min_basis_weight, Axis};
use minranklab::graph::{
    chromatic_number, independence_number, parse_edge_list, read_graph6, write_edge_list, write_graph6,
};
use minranklab::kneser::{kneser_graph, pattern_polynomial, representation_matrix, KneserParams};
use minranklab::lll::{check_lll_inequalities, find_constants, find_threshold, gamma_stats};
use minranklab::verify::{estimate_g, exhaustive_g, EdgeProbability};
use minranklab::{
    minrank_bounds, minrank_exact, named_graph, represents, Budget, FieldMatrix, Graph, LllInstance, PrimeField,
    RationalMatrix,
};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

fn gf(p: u64) -> PrimeField {
    PrimeField::new(p).unwrap()
}

fn small_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs = n * (n - 1) / 2;
        (Just(n), 0u64..1 << pairs).prop_map(|(n, code)| Graph::from_pair_code(n, code))
    })
}

fn field() -> impl Strategy<Value = PrimeField> {
    prop_oneof![Just(gf(2)), Just(gf(3))]
}

fn minrk(g: &Graph, f: PrimeField) -> usize {
    minrank_exact(g, f, &Budget::default()).unwrap().value
}

fn matrix(p: u64, max_dim: usize) -> impl Strategy<Value = FieldMatrix> {
    (1..=max_dim, 1..=max_dim).prop_flat_map(move |(r, c)| {
        proptest::collection::vec(0..p as i64, r * c)
            .prop_map(move |e| FieldMatrix::from_entries(gf(p), r, c, &e).unwrap())
    })
}

/// Independent rank of a list of rows over GF(p).
#[allow(clippy::needless_range_loop)]
fn rank_rows(mut rows: Vec<Vec<u32>>, p: u32) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..rows.len()).find(|&r| rows[r][c] != 0) else {
            continue;
        };
        rows.swap(rank, piv);
        let inv = (1..p).find(|&x| x * rows[rank][c] % p == 1).unwrap();
        for r in 0..rows.len() {
            if r != rank && rows[r][c] != 0 {
                let f = rows[r][c] * inv % p;
                for j in 0..cols {
                    rows[r][j] = (rows[r][j] + p * p - f * rows[rank][j]) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn sandwich_and_witness(g in small_graph(6), f in field()) {
        let r = minrank_exact(&g, f, &Budget::default()).unwrap();
        prop_assert!(independence_number(&g) <= r.value);
        prop_assert!(r.value <= chromatic_number(&g.complement()));
        prop_assert!(represents(&r.witness, &g).unwrap());
        prop_assert_eq!(r.witness.rank(), r.value);
        let b = minrank_bounds(&g);
        prop_assert!(b.lower <= r.value && r.value <= b.upper);
    }

    #[test]
    fn complement_product(g in small_graph(6), f in field()) {
        let n = g.n();
        prop_assert!(minrk(&g, f) * minrk(&g.complement(), f) >= n);
    }

    #[test]
    fn adding_an_edge_never_raises_minrank(g in small_graph(6), f in field(), pick in any::<prop::sample::Index>()) {
        let n = g.n();
        let missing: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .filter(|&(u, v)| !g.has_edge(u, v))
            .collect();
        prop_assume!(!missing.is_empty());
        let (u, v) = missing[pick.index(missing.len())];
        let mut h = g.clone();
        h.add_edge(u, v);
        prop_assert!(minrk(&h, f) <= minrk(&g, f));
    }

    #[test]
    fn induced_subgraphs_do_not_exceed(g in small_graph(6), f in field(), keep in any::<u8>()) {
        let vs: Vec<usize> = (0..g.n()).filter(|&v| keep >> v & 1 == 1).collect();
        prop_assert!(minrk(&g.induced(&vs), f) <= minrk(&g, f));
    }

    #[test]
    fn relabeling_preserves_minrank(g in small_graph(6), f in field(), seed in any::<u64>()) {
        let mut perm: Vec<usize> = (0..g.n()).collect();
        let mut s = seed;
        for i in (1..perm.len()).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            perm.swap(i, (s >> 33) as usize % (i + 1));
        }
        prop_assert_eq!(minrk(&g.permuted(&perm), f), minrk(&g, f));
    }

    #[test]
    fn rank_invariances(m in matrix(5, 6)) {
        let r = m.rank();
        prop_assert_eq!(m.transpose().rank(), r);
        prop_assert!(r <= m.rows().min(m.cols()));
        prop_assert_eq!(rank_rows(m.rows_vec(), 5), r);
        let mut rev = m.rows_vec();
        rev.reverse();
        prop_assert_eq!(rank_rows(rev, 5), r);
    }

    #[test]
    fn rank_of_product_is_bounded(a in matrix(3, 5), seed in proptest::collection::vec(0..3i64, 25)) {
        let b = FieldMatrix::from_entries(gf(3), a.cols(), 5, &seed[..a.cols() * 5]).unwrap();
        let ab = a.mul(&b).unwrap();
        prop_assert!(ab.rank() <= a.rank().min(b.rank()));
    }

    #[test]
    fn modular_rank_at_most_rational_rank(e in proptest::collection::vec(-3i64..=3, 16), p in prop_oneof![Just(2u64), Just(3), Just(5)]) {
        let q = RationalMatrix::from_integers(4, 4, &e).unwrap();
        let m = FieldMatrix::from_entries(gf(p), 4, 4, &e).unwrap();
        prop_assert!(m.rank() <= q.rank());
    }

    #[test]
    fn rational_rank_matches_field_of_large_prime(e in proptest::collection::vec(-3i64..=3, 20)) {
        // entries are tiny, so the rank over GF(1000003) agrees with the rank over Q
        let q = RationalMatrix::from_integers(4, 5, &e).unwrap();
        let m = FieldMatrix::from_entries(gf(1_000_003), 4, 5, &e).unwrap();
        prop_assert_eq!(q.rank(), m.rank());
    }

    #[test]
    fn lightest_basis_matches_subset_search(m in matrix(2, 5)) {
        let r = m.rank();
        let rows = m.rows_vec();
        let weight = |v: &Vec<u32>| v.iter().filter(|&&x| x != 0).count();
        let mut best = usize::MAX;
        for mask in 0u32..1 << rows.len() {
            if mask.count_ones() as usize != r {
                continue;
            }
            let pick: Vec<Vec<u32>> = (0..rows.len()).filter(|i| mask >> i & 1 == 1).map(|i| rows[i].clone()).collect();
            if rank_rows(pick.clone(), 2) == r {
                best = best.min(pick.iter().map(weight).sum());
            }
        }
        prop_assert_eq!(min_basis_weight(&m, Axis::Rows), best);
        prop_assert!(min_basis_weight(&m, Axis::Rows) >= r);
    }

    #[test]
    fn graph6_roundtrip(n in 0usize..80, seed in any::<u64>()) {
        let mut g = Graph::empty(n);
        let mut s = seed;
        for u in 0..n {
            for v in u + 1..n {
                s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                if s >> 62 == 0 {
                    g.add_edge(u, v);
                }
            }
        }
        prop_assert_eq!(read_graph6(&write_graph6(&g)).unwrap(), g);
    }

    #[test]
    fn edge_list_roundtrip(g in small_graph(9)) {
        let arcs: Vec<(usize, usize)> = g.to_digraph().arcs();
        let (n, parsed) = parse_edge_list(&write_edge_list(g.n(), &arcs)).unwrap();
        prop_assert_eq!(n, g.n());
        prop_assert_eq!(parsed, arcs);
    }

    #[test]
    fn complement_is_involution(g in small_graph(9)) {
        let c = g.complement();
        prop_assert_eq!(c.edge_count() + g.edge_count(), g.n() * (g.n().saturating_sub(1)) / 2);
        prop_assert_eq!(c.complement(), g);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn kneser_invariants((d, s, m) in (1usize..=7).prop_flat_map(|d| (Just(d), 0..=d)).prop_flat_map(|(d, s)| (Just(d), Just(s), 0..=s))) {
        let params = KneserParams::new(d, s, m).unwrap();
        let w = representation_matrix(params).unwrap();
        let g = kneser_graph(params).unwrap();
        prop_assert!(represents(&w.matrix, &g).unwrap());
        prop_assert_eq!(w.factor_left.mul_transpose(&w.factor_right).unwrap(), w.matrix.clone());
        prop_assert_eq!(w.factor_subsets.len(), w.factor_left.cols());
        prop_assert!(num_bigint::BigUint::from(w.rank()) <= w.rank_bound);
        prop_assert_eq!(w.coefficients.len(), s - m + 1);
        for t in 0..m {
            prop_assert!(!pattern_polynomial(s, m, t as i64).is_zero());
        }
        for t in m..s {
            prop_assert!(pattern_polynomial(s, m, t as i64).is_zero());
        }
        let factorial: BigInt = (1..=(s - m) as u64).map(BigInt::from).product();
        prop_assert_eq!(pattern_polynomial(s, m, s as i64), factorial);
    }
}

/// Rebuild the constants with `c2` halved, following the same recipe.
fn halved(inst: &LllInstance) -> LllInstance {
    let two = BigRational::from_integer(2.into());
    let h_fact: BigInt = (1..=inst.stats.h as u64).map(BigInt::from).product();
    let c2 = &inst.c2 / &two;
    let c3 = BigRational::from_integer(h_fact) * (&two * &c2).pow(inst.stats.f as i32) * &inst.e3_upper;
    let c4 = (&c2 / &two - &two * &c3) / &two;
    let c1 = &c4 / BigRational::from_integer(32.into());
    LllInstance {
        c2_exponent: inst.c2_exponent + 1,
        c1,
        c2,
        c3,
        c4,
        ..inst.clone()
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn lll_constants_are_downward_closed(
        name in prop_oneof![Just("K3"), Just("K4"), Just("C4"), Just("C5"), Just("P4"), Just("K1,3")],
        q in prop_oneof![Just(2u64), Just(3), Just(7)],
    ) {
        let inst = find_constants(&gamma_stats(&named_graph(name).unwrap()).unwrap(), q).unwrap();
        prop_assert!(inst.constraints().all());
        prop_assert!(inst.c1 > BigRational::zero() && inst.c2 <= BigRational::one());
        let mut h = inst.clone();
        for _ in 0..3 {
            h = halved(&h);
            prop_assert!(h.constraints().all());
        }
    }

    #[test]
    fn lll_holds_is_monotone_past_threshold(
        name in prop_oneof![Just("K3"), Just("K4"), Just("C5")],
        q in prop_oneof![Just(2u64), Just(3)],
    ) {
        let inst = find_constants(&gamma_stats(&named_graph(name).unwrap()).unwrap(), q).unwrap();
        let t = find_threshold(&inst).unwrap();
        let n0 = t.n0.unwrap();
        let mut n = n0;
        while n <= 1 << 40 {
            prop_assert!(check_lll_inequalities(&inst, n).unwrap().holds, "n={}", n);
            n *= 2;
        }
        prop_assert!(!check_lll_inequalities(&inst, n0 / 2).unwrap().holds);
    }

    #[test]
    fn sampling_never_beats_the_sweep(n in 3usize..=5, seed in any::<u64>(), f in field()) {
        let k3 = Graph::complete(3);
        let budget = Budget::default();
        let exact = exhaustive_g(n, &k3, f, &budget).unwrap();
        let est = estimate_g(n, &k3, f, 200, EdgeProbability::Fixed(0.8), seed, &budget).unwrap();
        prop_assert!(est.best <= exact.value);
        prop_assert_eq!(minrk(&est.witness, f), est.best);
    }
}

#[test]
fn gamma_of_cliques() {
    for t in 3..=5u64 {
        let s = gamma_stats(&Graph::complete(t as usize)).unwrap();
        assert_eq!(s.gamma0, BigRational::new(2.into(), (t + 1).into()));
    }
}
