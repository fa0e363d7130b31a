//! Dense matrices over a word-sized prime field.

use super::field::PrimeField;

/// Dense row-major matrix with entries in Montgomery form over `field`.
#[derive(Clone, Debug)]
pub struct ModMatrix {
    field: PrimeField,
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

/// Row echelon form: pivot rows are scaled to 1 at their pivot column.
struct Echelon {
    data: Vec<u64>,
    pivots: Vec<usize>,
}

impl ModMatrix {
    pub fn zeros(field: PrimeField, rows: usize, cols: usize) -> Self {
        ModMatrix {
            field,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    /// Builds from entries already in Montgomery form.
    pub fn from_montgomery(field: PrimeField, rows: usize, cols: usize, data: Vec<u64>) -> Self {
        assert_eq!(data.len(), rows * cols);
        ModMatrix {
            field,
            rows,
            cols,
            data,
        }
    }

    /// Builds from signed integers.
    pub fn from_i64(field: PrimeField, rows: usize, cols: usize, entries: &[i64]) -> Self {
        assert_eq!(entries.len(), rows * cols);
        let data = entries.iter().map(|&x| field.from_i64(x)).collect();
        ModMatrix {
            field,
            rows,
            cols,
            data,
        }
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Entry in Montgomery form.
    pub fn get(&self, r: usize, c: usize) -> u64 {
        self.data[r * self.cols + c]
    }

    /// Sets an entry given in Montgomery form.
    pub fn set(&mut self, r: usize, c: usize, v: u64) {
        self.data[r * self.cols + c] = v;
    }

    fn echelon(&self) -> Echelon {
        let f = self.field;
        let (rows, cols) = (self.rows, self.cols);
        let mut a = self.data.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(pr) = (r..rows).find(|&i| a[i * cols + c] != 0) else {
                continue;
            };
            if pr != r {
                for j in c..cols {
                    a.swap(pr * cols + j, r * cols + j);
                }
            }
            let inv = f.inv(a[r * cols + c]).unwrap();
            for j in c..cols {
                a[r * cols + j] = f.mul(a[r * cols + j], inv);
            }
            let (head, tail) = a.split_at_mut((r + 1) * cols);
            let pivot_row = &head[r * cols..];
            for row in tail.chunks_exact_mut(cols) {
                let factor = row[c];
                if factor == 0 {
                    continue;
                }
                for j in c..cols {
                    row[j] = f.sub(row[j], f.mul(factor, pivot_row[j]));
                }
            }
            pivots.push(c);
            r += 1;
        }
        Echelon { data: a, pivots }
    }

    pub fn rank_mod_p(&self) -> usize {
        self.echelon().pivots.len()
    }

    pub fn nullity(&self) -> usize {
        self.cols - self.rank_mod_p()
    }

    /// Basis of the right null space, entries in Montgomery form. One vector per
    /// free column, with a 1 at that column.
    pub fn kernel_montgomery(&self) -> Vec<Vec<u64>> {
        let f = self.field;
        let cols = self.cols;
        let ech = self.echelon();
        let mut is_pivot = vec![false; cols];
        for &c in &ech.pivots {
            is_pivot[c] = true;
        }
        let one = f.one();
        let mut basis = Vec::new();
        for free in (0..cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![0u64; cols];
            v[free] = one;
            for (i, &pc) in ech.pivots.iter().enumerate().rev() {
                let row = &ech.data[i * cols..(i + 1) * cols];
                let mut s = 0u64;
                for j in pc + 1..cols {
                    if v[j] != 0 && row[j] != 0 {
                        s = f.add(s, f.mul(row[j], v[j]));
                    }
                }
                v[pc] = f.neg(s);
            }
            basis.push(v);
        }
        basis
    }

    /// Kernel basis as plain residues in `[0, p)`.
    pub fn kernel_mod_p(&self) -> Vec<Vec<u64>> {
        let f = self.field;
        self.kernel_montgomery()
            .into_iter()
            .map(|v| v.into_iter().map(|x| f.to_u64(x)).collect())
            .collect()
    }

    /// `self * v` for a Montgomery-form vector.
    pub fn mul_vec(&self, v: &[u64]) -> Vec<u64> {
        let f = self.field;
        (0..self.rows)
            .map(|r| {
                let row = &self.data[r * self.cols..(r + 1) * self.cols];
                row.iter()
                    .zip(v)
                    .fold(0, |acc, (&a, &b)| f.add(acc, f.mul(a, b)))
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::field::{PRIME_A, PRIME_B};

    #[test]
    fn identity_has_full_rank() {
        let f = PrimeField::new(PRIME_A);
        let mut m = ModMatrix::zeros(f, 4, 4);
        for i in 0..4 {
            m.set(i, i, f.one());
        }
        assert_eq!(m.rank_mod_p(), 4);
        assert!(m.kernel_mod_p().is_empty());
    }

    #[test]
    fn multiple_of_the_prime_vanishes() {
        // Nonzero over Q, zero mod PRIME_A; the second prime disagrees.
        let p = PRIME_A as i64;
        let entries = [p, p, p, -p];
        let fa = PrimeField::new(PRIME_A);
        let fb = PrimeField::new(PRIME_B);
        assert_eq!(ModMatrix::from_i64(fa, 2, 2, &entries).rank_mod_p(), 0);
        assert_eq!(ModMatrix::from_i64(fb, 2, 2, &entries).rank_mod_p(), 2);
    }

    #[test]
    fn kernel_vectors_are_annihilated() {
        let f = PrimeField::new(PRIME_B);
        let m = ModMatrix::from_i64(f, 2, 4, &[1, 2, 3, 4, 2, 4, 7, 9]);
        let ker = m.kernel_montgomery();
        assert_eq!(ker.len(), 2);
        for v in &ker {
            assert!(m.mul_vec(v).iter().all(|&x| x == 0));
        }
        let plain = ModMatrix::from_i64(f, 1, 2, &[1, -1]).kernel_mod_p();
        assert_eq!(plain, vec![vec![1, 1]]);
    }
}
