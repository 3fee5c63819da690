//! Dense matrices of exact rationals.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::ZeroPattern;
use crate::error::{Error, Result};

/// Dense `rows x cols` matrix of arbitrary-precision rationals. `BigRational`
/// keeps every entry in lowest terms with a positive denominator.
#[derive(Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigRational>,
}

impl std::fmt::Debug for RationalMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "RationalMatrix {}x{}", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RationalMatrix {
            rows,
            cols,
            data: vec![BigRational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigRational::one();
        }
        m
    }

    pub fn from_entries(rows: usize, cols: usize, data: Vec<BigRational>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: format!("{} entries", rows * cols),
                found: format!("{}", data.len()),
            });
        }
        Ok(RationalMatrix { rows, cols, data })
    }

    pub fn from_integers(rows: usize, cols: usize, entries: &[i64]) -> Result<Self> {
        Self::from_entries(
            rows,
            cols,
            entries.iter().map(|&x| BigRational::from_integer(x.into())).collect(),
        )
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &BigRational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigRational) {
        self.data[i * self.cols + j] = v;
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        t
    }

    pub fn sparsity(&self) -> usize {
        self.data.iter().filter(|x| !x.is_zero()).count()
    }

    /// `self * other^T`, skipping zero entries of `self`.
    pub fn mul_transpose(&self, other: &RationalMatrix) -> Result<RationalMatrix> {
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch {
                expected: format!("{} columns", self.cols),
                found: format!("{} columns", other.cols),
            });
        }
        let mut out = Self::zeros(self.rows, other.rows);
        for i in 0..self.rows {
            let support: Vec<usize> = (0..self.cols).filter(|&k| !self.get(i, k).is_zero()).collect();
            for j in 0..other.rows {
                let mut acc = BigRational::zero();
                for &k in &support {
                    let b = other.get(j, k);
                    if !b.is_zero() {
                        acc += self.get(i, k) * b;
                    }
                }
                out.data[i * other.rows + j] = acc;
            }
        }
        Ok(out)
    }

    /// Row `i` scaled by the lcm of its denominators, as integers.
    fn integer_row(&self, i: usize) -> Vec<BigInt> {
        let row = &self.data[i * self.cols..(i + 1) * self.cols];
        let lcm = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        row.iter().map(|x| x.numer() * (&lcm / x.denom())).collect()
    }

    /// Exact rank by fraction-free (Bareiss) elimination.
    ///
    /// Each row is first cleared of denominators, which does not change the
    /// rank. Every division performed afterwards is exact; this is asserted.
    pub fn rank(&self) -> usize {
        let mut a: Vec<Vec<BigInt>> = (0..self.rows).map(|i| self.integer_row(i)).collect();
        bareiss_rank(&mut a, self.cols)
    }
}

pub(crate) fn bareiss_rank(a: &mut [Vec<BigInt>], cols: usize) -> usize {
    let rows = a.len();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(piv) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(piv, r);
        let (top, rest) = a.split_at_mut(r + 1);
        let pivot_row = &top[r];
        let pivot = &pivot_row[c];
        for row in rest.iter_mut() {
            let lead = std::mem::take(&mut row[c]);
            for j in c + 1..cols {
                let mut v = pivot * &row[j];
                if !lead.is_zero() && !pivot_row[j].is_zero() {
                    v -= &lead * &pivot_row[j];
                }
                let (q, rem) = v.div_rem(&prev);
                assert!(rem.is_zero(), "inexact division in fraction-free elimination");
                row[j] = q;
            }
        }
        prev = pivot.clone();
        r += 1;
    }
    r
}

impl ZeroPattern for RationalMatrix {
    fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }
    fn is_nonzero(&self, i: usize, j: usize) -> bool {
        !self.get(i, j).is_zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn lowest_terms() {
        let x = q(4, -6);
        assert_eq!(x.numer(), &BigInt::from(-2));
        assert_eq!(x.denom(), &BigInt::from(3));
    }

    #[test]
    fn rank_examples() {
        assert_eq!(RationalMatrix::identity(4).rank(), 4);
        let ones = RationalMatrix::from_integers(3, 3, &[1; 9]).unwrap();
        assert_eq!(ones.rank(), 1);
        // singular only in characteristic 2
        let h = RationalMatrix::from_integers(2, 2, &[1, 1, 1, -1]).unwrap();
        assert_eq!(h.rank(), 2);
        let m = RationalMatrix::from_entries(2, 3, vec![q(1, 2), q(1, 3), q(0, 1), q(3, 2), q(1, 1), q(0, 1)]).unwrap();
        assert_eq!(m.rank(), 1);
        assert_eq!(RationalMatrix::zeros(3, 4).rank(), 0);
    }

    #[test]
    fn rank_with_skipped_columns() {
        // pivot columns 0 and 2; column 1 is dependent
        let m = RationalMatrix::from_integers(3, 3, &[1, 2, 3, 2, 4, 7, 3, 6, 10]).unwrap();
        assert_eq!(m.rank(), 2);
        let hilbert: Vec<BigRational> = (0..5).flat_map(|i| (0..5).map(move |j| q(1, i + j + 1))).collect();
        assert_eq!(RationalMatrix::from_entries(5, 5, hilbert).unwrap().rank(), 5);
    }

    #[test]
    fn product() {
        let a = RationalMatrix::from_integers(2, 2, &[1, 2, 3, 4]).unwrap();
        let p = a.mul_transpose(&RationalMatrix::identity(2)).unwrap();
        assert_eq!(p, a);
        let aat = a.mul_transpose(&a).unwrap();
        assert_eq!(aat.get(0, 1), &q(11, 1));
        assert_eq!(a.transpose().get(0, 1), &q(3, 1));
    }
}
