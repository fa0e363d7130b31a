//! Exact dense linear algebra over the rationals.
//!
//! All elimination is fraction-free (Bareiss) on integer matrices obtained by
//! clearing denominators row by row, which changes neither rank nor kernel.

use super::LinalgError;
use crate::par;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigRational>,
}

/// Fraction-free row echelon form of an integer matrix.
pub(crate) struct BareissEchelon {
    pub rows: Vec<Vec<BigInt>>,
    pub pivots: Vec<usize>,
    pub swaps: usize,
}

const PARALLEL_ROW_THRESHOLD: usize = 32;

/// Runs Bareiss elimination with first-nonzero pivoting in column order.
pub(crate) fn bareiss(mut m: Vec<Vec<BigInt>>, cols: usize) -> BareissEchelon {
    let rows = m.len();
    let mut prev = BigInt::one();
    let mut pivots = Vec::new();
    let mut swaps = 0;
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(pr) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        if pr != r {
            m.swap(pr, r);
            swaps += 1;
        }
        let (head, tail) = m.split_at_mut(r + 1);
        let pivot_row = &head[r];
        let pivot = &pivot_row[c];
        let update = |row: &mut Vec<BigInt>| {
            let factor = std::mem::take(&mut row[c]);
            for j in c + 1..cols {
                let v = pivot * &row[j] - &factor * &pivot_row[j];
                row[j] = if prev.is_one() { v } else { v.div_floor(&prev) };
            }
        };
        if tail.len() >= PARALLEL_ROW_THRESHOLD {
            par::for_each_mut(tail, update);
        } else {
            tail.iter_mut().for_each(update);
        }
        prev = m[r][c].clone();
        pivots.push(c);
        r += 1;
    }
    BareissEchelon {
        rows: m,
        pivots,
        swaps,
    }
}

/// Multiplies a rational row by the lcm of its denominators.
pub(crate) fn clear_denominators(row: &[BigRational]) -> (Vec<BigInt>, BigInt) {
    let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints = row.iter().map(|x| x.numer() * (&l / x.denom())).collect();
    (ints, l)
}

impl ExactMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<BigRational>) -> Result<Self, LinalgError> {
        if data.len() != rows * cols {
            return Err(LinalgError::Shape(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(ExactMatrix { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix {
            rows,
            cols,
            data: vec![BigRational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigRational::one());
        }
        m
    }

    pub fn from_integers(rows: usize, cols: usize, data: Vec<BigInt>) -> Result<Self, LinalgError> {
        Self::new(
            rows,
            cols,
            data.into_iter().map(BigRational::from_integer).collect(),
        )
    }

    pub fn from_i64(rows: usize, cols: usize, data: &[i64]) -> Result<Self, LinalgError> {
        Self::from_integers(rows, cols, data.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigRational {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: BigRational) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[BigRational] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|r| (r + 1..self.cols).all(|c| self.get(r, c) == self.get(c, r)))
    }

    pub fn mul_vec(&self, v: &[BigRational]) -> Vec<BigRational> {
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(BigRational::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }

    /// Integer rows with denominators cleared.
    pub(crate) fn integer_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows)
            .map(|r| clear_denominators(self.row(r)).0)
            .collect()
    }

    /// All entries are integers.
    pub fn is_integral(&self) -> bool {
        self.data.iter().all(|x| x.is_integer())
    }

    pub fn rank(&self) -> usize {
        bareiss(self.integer_rows(), self.cols).pivots.len()
    }

    pub fn determinant(&self) -> Result<BigRational, LinalgError> {
        if self.rows != self.cols {
            return Err(LinalgError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(BigRational::one());
        }
        let mut scale = BigInt::one();
        let mut rows = Vec::with_capacity(n);
        for r in 0..n {
            let (ints, l) = clear_denominators(self.row(r));
            scale *= l;
            rows.push(ints);
        }
        let ech = bareiss(rows, n);
        if ech.pivots.len() < n {
            return Ok(BigRational::zero());
        }
        let mut det = ech.rows[n - 1][n - 1].clone();
        if ech.swaps % 2 == 1 {
            det = -det;
        }
        Ok(BigRational::new(det, scale))
    }

    /// Basis of the right null space; one vector per free column, with a 1 there.
    pub fn kernel_basis(&self) -> Vec<Vec<BigRational>> {
        let cols = self.cols;
        let ech = bareiss(self.integer_rows(), cols);
        let mut is_pivot = vec![false; cols];
        for &c in &ech.pivots {
            is_pivot[c] = true;
        }
        let mut basis = Vec::new();
        for free in (0..cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![BigRational::zero(); cols];
            v[free] = BigRational::one();
            for (i, &pc) in ech.pivots.iter().enumerate().rev() {
                let row = &ech.rows[i];
                let mut s = BigRational::zero();
                for j in pc + 1..cols {
                    if !row[j].is_zero() && !v[j].is_zero() {
                        s += &v[j] * BigRational::from_integer(row[j].clone());
                    }
                }
                v[pc] = -s / BigRational::from_integer(row[pc].clone());
            }
            basis.push(v);
        }
        basis
    }

    pub fn nullity(&self) -> usize {
        self.cols - self.rank()
    }

    /// Largest absolute numerator, for sizing multimodular work.
    pub(crate) fn max_abs_numerator(&self) -> BigInt {
        self.data
            .iter()
            .map(|x| x.numer().abs())
            .max()
            .unwrap_or_default()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn identity_and_zero() {
        assert_eq!(ExactMatrix::identity(3).rank(), 3);
        assert_eq!(ExactMatrix::zeros(3, 4).rank(), 0);
        assert_eq!(ExactMatrix::identity(3).determinant().unwrap(), q(1, 1));
    }

    #[test]
    fn diagonal_determinant() {
        let m = ExactMatrix::from_i64(2, 2, &[2, 0, 0, 3]).unwrap();
        assert_eq!(m.determinant().unwrap(), q(6, 1));
    }

    #[test]
    fn determinant_with_swaps_and_fractions() {
        let m = ExactMatrix::new(2, 2, vec![q(0, 1), q(1, 2), q(3, 1), q(1, 1)]).unwrap();
        assert_eq!(m.determinant().unwrap(), q(-3, 2));
        let n = ExactMatrix::from_i64(3, 3, &[2, -1, 0, -1, 2, -1, 0, -1, 2]).unwrap();
        assert_eq!(n.determinant().unwrap(), q(4, 1));
    }

    #[test]
    fn non_square_determinant_is_an_error() {
        let m = ExactMatrix::zeros(2, 3);
        assert!(matches!(
            m.determinant(),
            Err(LinalgError::NotSquare { .. })
        ));
    }

    #[test]
    fn kernel_of_difference_row() {
        let m = ExactMatrix::from_i64(1, 2, &[1, -1]).unwrap();
        assert_eq!(m.kernel_basis(), vec![vec![q(1, 1), q(1, 1)]]);
        assert!(ExactMatrix::identity(4).kernel_basis().is_empty());
    }

    #[test]
    fn kernel_vectors_annihilate() {
        let m =
            ExactMatrix::from_i64(3, 5, &[1, 2, 0, 3, 1, 2, 4, 1, 0, 0, 3, 6, 1, 3, 1]).unwrap();
        let ker = m.kernel_basis();
        assert_eq!(ker.len(), 5 - m.rank());
        for v in &ker {
            assert!(m.mul_vec(v).iter().all(|x| x.is_zero()));
        }
    }
}
