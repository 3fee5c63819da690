//! Sparse column and row bases.
//!
//! A matrix of rank `k` has an `l`-sparse column (row) basis when some `k`
//! linearly independent columns (rows) carry at most `l` nonzero entries in
//! total.

use super::prime::{Echelon, FieldMatrix};

/// Which side of the matrix a basis is taken from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    Columns,
    Rows,
}

/// Smallest total number of nonzeros over all bases drawn from the columns
/// (or rows) of `m`. Zero for the zero matrix.
///
/// Subsets are enumerated in lexicographic order; a branch is abandoned as
/// soon as its partial nonzero count reaches the best weight found so far or
/// its vectors become dependent.
pub fn min_basis_weight(m: &FieldMatrix, axis: Axis) -> usize {
    let vectors: Vec<Vec<u32>> = match axis {
        Axis::Columns => (0..m.cols()).map(|j| m.column(j)).collect(),
        Axis::Rows => m.rows_vec(),
    };
    let k = m.rank();
    if k == 0 {
        return 0;
    }
    let weights: Vec<usize> = vectors.iter().map(|v| v.iter().filter(|&&x| x != 0).count()).collect();
    let mut best = usize::MAX;
    search(&vectors, &weights, k, 0, Echelon::new(m.field()), 0, &mut best);
    best
}

#[allow(clippy::too_many_arguments)]
fn search(
    vectors: &[Vec<u32>],
    weights: &[usize],
    k: usize,
    start: usize,
    basis: Echelon,
    weight: usize,
    best: &mut usize,
) {
    if basis.rank() == k {
        *best = (*best).min(weight);
        return;
    }
    let need = k - basis.rank();
    for i in start..vectors.len() {
        if vectors.len() - i < need {
            break;
        }
        let w = weight + weights[i];
        if w >= *best {
            continue;
        }
        let mut next = basis.clone();
        if next.insert(vectors[i].clone()) {
            search(vectors, weights, k, i + 1, next, w, best);
        }
    }
}

/// True iff `m` has both a column basis and a row basis of total weight at
/// most `ell`.
pub fn has_sparse_bases(m: &FieldMatrix, ell: usize) -> bool {
    min_basis_weight(m, Axis::Columns) <= ell && min_basis_weight(m, Axis::Rows) <= ell
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::PrimeField;

    fn gf2() -> PrimeField {
        PrimeField::new(2).unwrap()
    }

    #[test]
    fn examples() {
        for n in 1..5 {
            assert!(has_sparse_bases(&FieldMatrix::identity(gf2(), n), n));
            assert!(!has_sparse_bases(&FieldMatrix::identity(gf2(), n), n - 1));
        }
        let ones = FieldMatrix::ones(gf2(), 3, 3);
        assert!(has_sparse_bases(&ones, 3));
        assert!(!has_sparse_bases(&ones, 2));
        assert!(has_sparse_bases(&FieldMatrix::zeros(gf2(), 3, 3), 0));
    }

    #[test]
    fn picks_lightest_independent_set() {
        // columns: (1,1,1), (1,0,0), (0,1,0), (1,1,0); rank 3
        let m = FieldMatrix::from_rows(gf2(), &[vec![1, 1, 0, 1], vec![1, 0, 1, 1], vec![1, 0, 0, 0]]).unwrap();
        assert_eq!(min_basis_weight(&m, Axis::Columns), 3 + 1 + 1);
        // rows: weights 3, 3, 1; all three are needed
        assert_eq!(min_basis_weight(&m, Axis::Rows), 7);
    }

    #[test]
    fn row_and_column_weights_can_differ() {
        let m = FieldMatrix::from_rows(gf2(), &[vec![1, 1, 1], vec![0, 0, 0], vec![0, 0, 0]]).unwrap();
        assert_eq!(min_basis_weight(&m, Axis::Columns), 1);
        assert_eq!(min_basis_weight(&m, Axis::Rows), 3);
        assert!(!has_sparse_bases(&m, 2));
    }
}
