//! Multilinear polynomials keyed by variable bitmasks.

use super::{DiffMonomial, PolyError, SparsePoly};
use crate::linalg::PrimeField;
use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::collections::BTreeMap;

/// Square-free polynomial in at most 64 variables; bit `i-1` of a key is `x_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquareFreePoly {
    nvars: usize,
    terms: BTreeMap<u64, BigInt>,
}

impl SquareFreePoly {
    pub fn zero(nvars: usize) -> Self {
        assert!(nvars <= 64);
        SquareFreePoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    /// Sum of the given monomials, each with coefficient 1.
    pub fn from_masks<I: IntoIterator<Item = u64>>(nvars: usize, masks: I) -> Self {
        let mut p = Self::zero(nvars);
        for m in masks {
            *p.terms.entry(m).or_insert_with(BigInt::zero) += 1;
        }
        p
    }

    pub fn from_sparse(f: &SparsePoly) -> Result<Self, PolyError> {
        if f.nvars() > 64 {
            return Err(PolyError::TooManyVariables(f.nvars()));
        }
        let mut p = Self::zero(f.nvars());
        for (e, c) in f.terms() {
            let mut m = 0u64;
            for (i, &x) in e.iter().enumerate() {
                match x {
                    0 => {}
                    1 => m |= 1 << i,
                    _ => return Err(PolyError::NotSquareFree),
                }
            }
            p.terms.insert(m, c.clone());
        }
        Ok(p)
    }

    pub fn to_sparse(&self) -> SparsePoly {
        SparsePoly::from_terms(
            self.nvars,
            self.terms.iter().map(|(&m, c)| {
                let e = (0..self.nvars).map(|i| (m >> i & 1) as u16).collect();
                (e, c.clone())
            }),
        )
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (u64, &BigInt)> {
        self.terms.iter().map(|(&m, c)| (m, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `∂_S f` for a set `S` given as a mask.
    pub fn diff_mask(&self, s: u64) -> SquareFreePoly {
        SquareFreePoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(&m, _)| m & s == s)
                .map(|(&m, c)| (m ^ s, c.clone()))
                .collect(),
        }
    }

    /// Repeated indices annihilate a multilinear polynomial.
    pub fn diff(&self, alpha: &DiffMonomial) -> SquareFreePoly {
        match alpha.mask() {
            Some(s) => self.diff_mask(s),
            None => SquareFreePoly::zero(self.nvars),
        }
    }

    /// Value over `F_p`; point and result in Montgomery form.
    pub fn evaluate_mod(&self, field: PrimeField, point: &[u64]) -> u64 {
        let mut total = 0;
        for (&m, c) in &self.terms {
            let mut t = if c.is_one() {
                field.one()
            } else {
                field.from_bigint(c)
            };
            let mut mm = m;
            while mm != 0 {
                t = field.mul(t, point[mm.trailing_zeros() as usize]);
                mm &= mm - 1;
            }
            total = field.add(total, t);
        }
        total
    }

    pub fn evaluate(&self, point: &[BigInt]) -> BigInt {
        let mut total = BigInt::zero();
        for (&m, c) in &self.terms {
            let mut t = c.clone();
            let mut mm = m;
            while mm != 0 {
                t *= &point[mm.trailing_zeros() as usize];
                mm &= mm - 1;
            }
            total += t;
        }
        total
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matches_the_general_path() {
        let f: SparsePoly = "x1*x2 + x1*x3 + 3*x2*x3".parse().unwrap();
        let s = SquareFreePoly::from_sparse(&f).unwrap();
        assert_eq!(s.to_sparse(), f);
        assert_eq!(s.diff_mask(0b001).to_sparse(), f.diff_var(1));
        assert!(s.diff(&"(1,1)".parse().unwrap()).is_zero());
        let sq: SparsePoly = "x1^2".parse().unwrap();
        assert_eq!(
            SquareFreePoly::from_sparse(&sq),
            Err(PolyError::NotSquareFree)
        );
    }
}
