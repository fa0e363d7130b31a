//! Degree-by-degree counts of minimal generators of `Ann(f)`.

use super::{build_catalecticant, socle_degree, ApolarityError};
use crate::linalg::{primes, ExactMatrix, ModMatrix, PrimeField};
use crate::poly::{DiffMonomial, SparsePoly};
use num_rational::BigRational;
use num_traits::{One, Zero};

pub const DEFAULT_GENERATOR_BUDGET: usize = 20_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum GeneratorMethod {
    /// Ranks mod two word-sized primes that must agree.
    #[default]
    Modular,
    /// Exact rational elimination.
    Exact,
}

/// Number of minimal generators of `Ann(f)` in each degree `0..=max_degree`.
///
/// The count in degree `j` is `dim Ann_j - dim(Q_1 Ann_{j-1})`. Every matrix
/// dimension is checked against `budget` first; an oversized degree is an error.
pub fn minimal_generator_counts(
    f: &SparsePoly,
    max_degree: usize,
    method: GeneratorMethod,
    budget: usize,
) -> Result<Vec<(usize, usize)>, ApolarityError> {
    let d = socle_degree(f)?;
    if max_degree > d + 1 {
        return Err(ApolarityError::DegreeOutOfRange {
            k: max_degree,
            d: d + 1,
        });
    }
    let n = f.nvars();
    let mut ops_prev: Vec<DiffMonomial> = Vec::new();
    let mut dims = Vec::new();
    for j in 0..=max_degree {
        let ops = DiffMonomial::all_of_degree(n, j, false);
        if ops.len() > budget {
            return Err(ApolarityError::TooLarge {
                what: "operator space",
                size: ops.len(),
                budget,
            });
        }
        let products = n * ops_prev.len();
        if products > budget {
            return Err(ApolarityError::TooLarge {
                what: "product spanning set",
                size: products,
                budget,
            });
        }
        dims.push(ops.len());
        ops_prev = ops;
    }
    match method {
        GeneratorMethod::Exact => exact_counts(f, max_degree),
        GeneratorMethod::Modular => {
            let mut agreed: Option<Vec<(usize, usize)>> = None;
            for p in primes().take(4) {
                let c = modular_counts(f, max_degree, PrimeField::new(p))?;
                match &agreed {
                    Some(a) if *a == c => return Ok(c),
                    _ => agreed = Some(c),
                }
            }
            Err(ApolarityError::Unstable)
        }
    }
}

/// Coordinates of `x_i * a` in the degree-`j` operator list.
fn shift(a_ops: &[DiffMonomial], ops: &[DiffMonomial], i: usize) -> Vec<usize> {
    let xi = DiffMonomial::new([i]).expect("valid index");
    a_ops
        .iter()
        .map(|m| ops.binary_search(&m.mul(&xi)).expect("degree j operator"))
        .collect()
}

fn exact_counts(f: &SparsePoly, max_degree: usize) -> Result<Vec<(usize, usize)>, ApolarityError> {
    let n = f.nvars();
    let mut out = Vec::new();
    let mut prev_ops: Vec<DiffMonomial> = Vec::new();
    let mut prev_ann: Vec<Vec<BigRational>> = Vec::new();
    for j in 0..=max_degree {
        let ops = DiffMonomial::all_of_degree(n, j, false);
        let cat = build_catalecticant(f, ops.clone())?;
        let ann = cat.to_matrix().transpose().kernel_basis();
        let ann = if cat.monomials.is_empty() {
            // Past the socle degree every operator annihilates.
            (0..ops.len())
                .map(|r| {
                    let mut v = vec![BigRational::zero(); ops.len()];
                    v[r] = BigRational::one();
                    v
                })
                .collect()
        } else {
            ann
        };
        let mut data = Vec::new();
        let mut rows = 0;
        for i in 1..=n {
            let pos = shift(&prev_ops, &ops, i);
            for a in &prev_ann {
                let mut row = vec![BigRational::zero(); ops.len()];
                for (c, x) in a.iter().enumerate() {
                    row[pos[c]] = x.clone();
                }
                data.extend(row);
                rows += 1;
            }
        }
        let span = if rows == 0 {
            0
        } else {
            ExactMatrix::new(rows, ops.len(), data)
                .expect("shape")
                .rank()
        };
        out.push((j, ann.len() - span));
        prev_ops = ops;
        prev_ann = ann;
    }
    Ok(out)
}

fn modular_counts(
    f: &SparsePoly,
    max_degree: usize,
    field: PrimeField,
) -> Result<Vec<(usize, usize)>, ApolarityError> {
    let n = f.nvars();
    let mut out = Vec::new();
    let mut prev_ops: Vec<DiffMonomial> = Vec::new();
    let mut prev_ann: Vec<Vec<u64>> = Vec::new();
    for j in 0..=max_degree {
        let ops = DiffMonomial::all_of_degree(n, j, false);
        let cat = build_catalecticant(f, ops.clone())?;
        let ann = if cat.monomials.is_empty() {
            (0..ops.len())
                .map(|r| {
                    let mut v = vec![0; ops.len()];
                    v[r] = field.one();
                    v
                })
                .collect()
        } else {
            let (rows, cols) = (cat.monomials.len(), ops.len());
            let mut m = ModMatrix::zeros(field, rows, cols);
            for (c, row) in cat.rows.iter().enumerate() {
                for (r, x) in row.iter().enumerate() {
                    if !x.is_zero() {
                        m.set(r, c, field.from_bigint(x));
                    }
                }
            }
            m.kernel_montgomery()
        };
        let rows = n * prev_ann.len();
        let span = if rows == 0 {
            0
        } else {
            let mut m = ModMatrix::zeros(field, rows, ops.len());
            let mut r = 0;
            for i in 1..=n {
                let pos = shift(&prev_ops, &ops, i);
                for a in &prev_ann {
                    for (c, &x) in a.iter().enumerate() {
                        if x != 0 {
                            m.set(r, pos[c], x);
                        }
                    }
                    r += 1;
                }
            }
            m.rank_mod_p()
        };
        out.push((j, ann.len() - span));
        prev_ops = ops;
        prev_ann = ann;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn principal_case() {
        let f: SparsePoly = "x1^4".parse().unwrap();
        for m in [GeneratorMethod::Exact, GeneratorMethod::Modular] {
            let c = minimal_generator_counts(&f, 5, m, DEFAULT_GENERATOR_BUDGET).unwrap();
            assert_eq!(c, vec![(0, 0), (1, 0), (2, 0), (3, 0), (4, 0), (5, 1)]);
        }
    }

    #[test]
    fn budget_is_enforced() {
        let f: SparsePoly = "x1*x2*x3".parse().unwrap();
        let e = minimal_generator_counts(&f, 4, GeneratorMethod::Modular, 10).unwrap_err();
        assert!(matches!(e, ApolarityError::TooLarge { .. }));
    }
}
