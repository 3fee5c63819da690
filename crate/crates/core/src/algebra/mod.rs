//! Exact linear algebra over prime fields and the rationals.
//!
//! Text format shared by both matrix kinds: a header line
//! `rows cols modulus` (modulus `0` means rationals) followed by the entries
//! in row-major order, whitespace separated. Rational entries are written as
//! `a/b` or `a`.

mod prime;
mod rational;
mod sparse;

pub use prime::{is_prime, Echelon, FieldMatrix, PrimeField};
pub use rational::RationalMatrix;
pub use sparse::{has_sparse_bases, min_basis_weight, Axis};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};

/// Read access to the zero/nonzero pattern of a matrix.
pub trait ZeroPattern {
    fn shape(&self) -> (usize, usize);
    fn is_nonzero(&self, i: usize, j: usize) -> bool;

    fn nonzero_count(&self) -> usize {
        let (r, c) = self.shape();
        (0..r).map(|i| (0..c).filter(|&j| self.is_nonzero(i, j)).count()).sum()
    }
}

/// A matrix read from text: either over `GF(p)` or over the rationals.
#[derive(Debug, Clone, PartialEq)]
pub enum Matrix {
    Field(FieldMatrix),
    Rational(RationalMatrix),
}

impl Matrix {
    pub fn rank(&self) -> usize {
        match self {
            Matrix::Field(m) => m.rank(),
            Matrix::Rational(m) => m.rank(),
        }
    }

    pub fn sparsity(&self) -> usize {
        match self {
            Matrix::Field(m) => m.sparsity(),
            Matrix::Rational(m) => m.sparsity(),
        }
    }
}

impl ZeroPattern for Matrix {
    fn shape(&self) -> (usize, usize) {
        match self {
            Matrix::Field(m) => m.shape(),
            Matrix::Rational(m) => m.shape(),
        }
    }
    fn is_nonzero(&self, i: usize, j: usize) -> bool {
        match self {
            Matrix::Field(m) => m.is_nonzero(i, j),
            Matrix::Rational(m) => m.is_nonzero(i, j),
        }
    }
}

fn parse_rational(tok: &str, line: usize) -> Result<BigRational> {
    let bad = || Error::parse(line, format!("bad rational entry {tok:?}"));
    match tok.split_once('/') {
        Some((a, b)) => {
            let a: BigInt = a.parse().map_err(|_| bad())?;
            let b: BigInt = b.parse().map_err(|_| bad())?;
            if b.is_zero() {
                return Err(Error::parse(line, "zero denominator"));
            }
            Ok(BigRational::new(a, b))
        }
        None => Ok(BigRational::from_integer(tok.parse().map_err(|_| bad())?)),
    }
}

/// Parse the matrix text format.
pub fn parse_matrix(text: &str) -> Result<Matrix> {
    let mut tokens = text
        .lines()
        .enumerate()
        .flat_map(|(i, l)| l.split_whitespace().map(move |t| (i + 1, t)));
    let mut header = |what: &str| -> Result<u64> {
        let (line, tok) = tokens
            .next()
            .ok_or_else(|| Error::parse(1, format!("missing {what} in header")))?;
        tok.parse()
            .map_err(|_| Error::parse(line, format!("bad {what} {tok:?}")))
    };
    let rows = header("row count")? as usize;
    let cols = header("column count")? as usize;
    let modulus = header("modulus")?;
    let entries: Vec<(usize, &str)> = tokens.collect();
    if entries.len() != rows * cols {
        return Err(Error::parse(
            entries.last().map_or(1, |e| e.0),
            format!("expected {} entries, found {}", rows * cols, entries.len()),
        ));
    }
    if modulus == 0 {
        let data = entries
            .iter()
            .map(|&(line, t)| parse_rational(t, line))
            .collect::<Result<Vec<_>>>()?;
        Ok(Matrix::Rational(RationalMatrix::from_entries(rows, cols, data)?))
    } else {
        let field = PrimeField::new(modulus)?;
        let data = entries
            .iter()
            .map(|&(line, t)| {
                t.parse::<i64>()
                    .map_err(|_| Error::parse(line, format!("bad integer entry {t:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Matrix::Field(FieldMatrix::from_entries(field, rows, cols, &data)?))
    }
}

/// Write a prime-field matrix in the text format, one row per line.
pub fn write_field_matrix(m: &FieldMatrix) -> String {
    let mut out = format!("{} {} {}\n", m.rows(), m.cols(), m.modulus());
    for i in 0..m.rows() {
        let row: Vec<String> = m.row(i).iter().map(u32::to_string).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

/// Write a rational matrix in the text format, one row per line.
pub fn write_rational_matrix(m: &RationalMatrix) -> String {
    let mut out = format!("{} {} 0\n", m.rows(), m.cols());
    for i in 0..m.rows() {
        let row: Vec<String> = (0..m.cols()).map(|j| m.get(i, j).to_string()).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_roundtrip_field() {
        let f = PrimeField::new(3).unwrap();
        let m = FieldMatrix::from_rows(f, &[vec![1, 2, 0], vec![-1, 4, 5]]).unwrap();
        let text = write_field_matrix(&m);
        assert_eq!(text, "2 3 3\n1 2 0\n2 1 2\n");
        assert_eq!(parse_matrix(&text).unwrap(), Matrix::Field(m));
    }

    #[test]
    fn text_roundtrip_rational() {
        let text = "2 2 0\n1/2 -3\n0 4/6\n";
        let Matrix::Rational(m) = parse_matrix(text).unwrap() else {
            panic!("expected rational matrix")
        };
        assert_eq!(m.get(1, 1).to_string(), "2/3");
        assert_eq!(write_rational_matrix(&m), "2 2 0\n1/2 -3\n0 2/3\n");
    }

    #[test]
    fn text_errors() {
        assert!(parse_matrix("").is_err());
        assert!(parse_matrix("2 2 4\n1 0 0 1").is_err()); // not prime
        assert!(parse_matrix("2 2 2\n1 0 0").is_err());
        assert!(parse_matrix("1 1 0\n1/0").is_err());
        assert!(parse_matrix("1 1 5\nx").is_err());
    }
}
