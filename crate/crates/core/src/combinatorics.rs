//! Subset enumeration and exact binomials shared by several modules.

use num_bigint::BigUint;
use num_traits::One;

/// All `k`-subsets of `0..n` as sorted index lists, in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        let Some(i) = (0..k).rev().find(|&i| cur[i] < n - k + i) else {
            return out;
        };
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

/// `k`-subsets of `0..n` as bitmasks, lexicographic on the sorted elements.
pub fn subset_masks(n: usize, k: usize) -> Vec<u64> {
    assert!(n <= 64, "ground set too large for u64 masks");
    combinations(n, k)
        .into_iter()
        .map(|c| c.iter().fold(0u64, |m, &i| m | 1 << i))
        .collect()
}

pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::from(0u32);
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// `C(n, k)` if it fits in `u64`.
pub fn binomial_u64(n: u64, k: u64) -> Option<u64> {
    u64::try_from(binomial(n, k)).ok()
}

/// Natural logarithm of a positive big integer.
pub fn ln_big(x: &BigUint) -> f64 {
    let bits = x.bits();
    if bits <= 64 {
        let v: u64 = x.try_into().expect("fits");
        return (v as f64).ln();
    }
    let shift = bits - 64;
    let top: u64 = (x >> shift).try_into().expect("fits");
    (top as f64).ln() + shift as f64 * std::f64::consts::LN_2
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials() {
        assert_eq!(binomial(6, 3), BigUint::from(20u32));
        assert_eq!(binomial(10, 0), BigUint::one());
        assert_eq!(binomial(3, 4), BigUint::from(0u32));
        assert_eq!(binomial_u64(64, 32), Some(1_832_624_140_942_590_534));
        assert_eq!(binomial(100, 50).to_string(), "100891344545564193334812497256");
    }

    #[test]
    fn combos_are_lexicographic() {
        assert_eq!(
            combinations(4, 2),
            vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3], vec![2, 3]]
        );
        assert_eq!(combinations(3, 0), vec![Vec::<usize>::new()]);
        assert!(combinations(2, 3).is_empty());
    }

    #[test]
    fn masks_in_lex_order() {
        assert_eq!(subset_masks(4, 2), vec![0b0011, 0b0101, 0b1001, 0b0110, 0b1010, 0b1100]);
        assert_eq!(subset_masks(3, 0), vec![0]);
    }

    #[test]
    fn big_logs() {
        let x = binomial(800, 400);
        let approx = ln_big(&x);
        // ln C(800,400) = 800 ln 2 - 0.5 ln(400 pi) + O(1/800)
        let stirling = 800.0 * std::f64::consts::LN_2 - 0.5 * (400.0 * std::f64::consts::PI).ln();
        assert!((approx - stirling).abs() < 1e-3);
        assert!((ln_big(&BigUint::from(1000u32)) - 1000f64.ln()).abs() < 1e-12);
    }
}
