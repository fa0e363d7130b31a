//! Differential monomials `∂_{i1}···∂_{ik}`.

use super::PolyError;
use std::fmt;
use std::str::FromStr;

/// A product of partial derivatives, stored as a sorted multiset of 1-based
/// variable indices. Operators killing square-free polynomials (repeated
/// indices) are representable because general `f` need them; see
/// [`DiffMonomial::is_square_free`].
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DiffMonomial {
    idx: Vec<u16>,
}

impl DiffMonomial {
    pub fn new<I: IntoIterator<Item = usize>>(indices: I) -> Result<Self, PolyError> {
        let mut idx = Vec::new();
        for i in indices {
            if i == 0 || i > u16::MAX as usize {
                return Err(PolyError::VariableIndex(i));
            }
            idx.push(i as u16);
        }
        idx.sort_unstable();
        Ok(DiffMonomial { idx })
    }

    /// The identity operator.
    pub fn one() -> Self {
        DiffMonomial::default()
    }

    pub fn indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.idx.iter().map(|&i| i as usize)
    }

    pub fn degree(&self) -> usize {
        self.idx.len()
    }

    pub fn is_square_free(&self) -> bool {
        self.idx.windows(2).all(|w| w[0] != w[1])
    }

    /// Largest index used, 0 for the identity.
    pub fn max_index(&self) -> usize {
        self.idx.last().map_or(0, |&i| i as usize)
    }

    /// Bitmask of the indices (bit `i-1` for `∂_i`); `None` if an index repeats
    /// or exceeds 64.
    pub fn mask(&self) -> Option<u64> {
        if !self.is_square_free() || self.max_index() > 64 {
            return None;
        }
        Some(self.idx.iter().fold(0, |m, &i| m | 1 << (i - 1)))
    }

    pub fn from_mask(mask: u64) -> Self {
        let mut idx = Vec::new();
        let mut m = mask;
        while m != 0 {
            idx.push(m.trailing_zeros() as u16 + 1);
            m &= m - 1;
        }
        DiffMonomial { idx }
    }

    /// Operator product (multiset union).
    pub fn mul(&self, other: &DiffMonomial) -> DiffMonomial {
        let mut idx = Vec::with_capacity(self.idx.len() + other.idx.len());
        idx.extend_from_slice(&self.idx);
        idx.extend_from_slice(&other.idx);
        idx.sort_unstable();
        DiffMonomial { idx }
    }

    /// Exponent vector of length `nvars`.
    pub fn exponents(&self, nvars: usize) -> Vec<u16> {
        let mut e = vec![0u16; nvars];
        for &i in &self.idx {
            e[i as usize - 1] += 1;
        }
        e
    }

    pub fn from_exponents(exps: &[u16]) -> Self {
        let mut idx = Vec::new();
        for (i, &e) in exps.iter().enumerate() {
            idx.extend(std::iter::repeat_n(i as u16 + 1, e as usize));
        }
        DiffMonomial { idx }
    }

    /// All operators of degree `k` in `nvars` variables, in lexicographic order
    /// of their index tuples; multisets unless `square_free`.
    pub fn all_of_degree(nvars: usize, k: usize, square_free: bool) -> Vec<DiffMonomial> {
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(k);
        fn rec(
            start: usize,
            nvars: usize,
            k: usize,
            sf: bool,
            cur: &mut Vec<u16>,
            out: &mut Vec<DiffMonomial>,
        ) {
            if cur.len() == k {
                out.push(DiffMonomial { idx: cur.clone() });
                return;
            }
            for i in start..=nvars {
                cur.push(i as u16);
                rec(if sf { i + 1 } else { i }, nvars, k, sf, cur, out);
                cur.pop();
            }
        }
        rec(1, nvars, k, square_free, &mut cur, &mut out);
        out
    }
}

impl fmt::Display for DiffMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.idx.iter().map(|i| i.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl FromStr for DiffMonomial {
    type Err = PolyError;

    /// Parses `(1,2,3)`; `()` is the identity.
    fn from_str(s: &str) -> Result<Self, PolyError> {
        let bad = || PolyError::Parse {
            offset: 0,
            msg: format!("expected an index tuple like (1,2,3), got {s:?}"),
        };
        let inner = s
            .trim()
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(bad)?;
        if inner.trim().is_empty() {
            return Ok(DiffMonomial::one());
        }
        let idx: Result<Vec<usize>, _> = inner
            .split(',')
            .map(|t| t.trim().parse::<usize>())
            .collect();
        DiffMonomial::new(idx.map_err(|_| bad())?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ordering_and_text() {
        let a: DiffMonomial = "(3,1,2)".parse().unwrap();
        assert_eq!(a.to_string(), "(1,2,3)");
        assert_eq!(a.mask(), Some(0b111));
        assert_eq!(DiffMonomial::from_mask(0b101).to_string(), "(1,3)");
        let sq: DiffMonomial = "(1,1)".parse().unwrap();
        assert!(!sq.is_square_free() && sq.mask().is_none());
        assert_eq!(sq.exponents(3), vec![2, 0, 0]);
        assert!("(0,1)".parse::<DiffMonomial>().is_err());
        assert_eq!("()".parse::<DiffMonomial>().unwrap(), DiffMonomial::one());
    }

    #[test]
    fn enumeration_is_lexicographic() {
        let all = DiffMonomial::all_of_degree(4, 2, false);
        assert_eq!(all.len(), 10);
        assert_eq!(all[0].to_string(), "(1,1)");
        assert_eq!(all[4].to_string(), "(2,2)");
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(DiffMonomial::all_of_degree(13, 3, true).len(), 286);
    }
}
