use super::{DiffMonomial, PolyError};
use crate::linalg::PrimeField;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

/// Sparse polynomial in `x_1..x_n` with big-integer coefficients. Terms are
/// keyed by exponent vectors; zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SparsePoly {
    nvars: usize,
    terms: BTreeMap<Vec<u16>, BigInt>,
}

impl SparsePoly {
    pub fn zero(nvars: usize) -> Self {
        SparsePoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: impl Into<BigInt>) -> Self {
        Self::monomial(nvars, vec![0; nvars], c)
    }

    /// `x_i`, 1-based.
    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(
            (1..=nvars).contains(&i),
            "variable x{i} outside 1..={nvars}"
        );
        let mut e = vec![0; nvars];
        e[i - 1] = 1;
        Self::monomial(nvars, e, 1)
    }

    pub fn monomial(nvars: usize, exps: Vec<u16>, c: impl Into<BigInt>) -> Self {
        assert_eq!(exps.len(), nvars);
        let mut p = Self::zero(nvars);
        p.add_term(exps, c.into());
        p
    }

    /// Sums the given terms; repeated exponent vectors are combined.
    pub fn from_terms<I>(nvars: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Vec<u16>, BigInt)>,
    {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            assert_eq!(e.len(), nvars);
            p.add_term(e, c);
        }
        p
    }

    pub(crate) fn add_term(&mut self, exps: Vec<u16>, c: BigInt) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(exps) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in increasing lexicographic order of exponent vectors.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Vec<u16>, &BigInt)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exps: &[u16]) -> BigInt {
        self.terms.get(exps).cloned().unwrap_or_default()
    }

    /// Largest total degree, `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<usize> {
        self.terms
            .keys()
            .map(|e| e.iter().map(|&x| x as usize).sum())
            .max()
    }

    /// All terms share one total degree (true for zero).
    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self
            .terms
            .keys()
            .map(|e| e.iter().map(|&x| x as usize).sum::<usize>());
        match degs.next() {
            None => true,
            Some(d) => degs.all(|x| x == d),
        }
    }

    pub fn is_square_free(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&x| x <= 1))
    }

    /// Largest exponent of each variable.
    pub fn degree_vector(&self) -> Vec<u16> {
        let mut d = vec![0u16; self.nvars];
        for e in self.terms.keys() {
            for (a, &b) in d.iter_mut().zip(e) {
                *a = (*a).max(b);
            }
        }
        d
    }

    /// Gcd of the coefficients (zero for the zero polynomial).
    pub fn content(&self) -> BigInt {
        self.terms.values().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    fn check(&self, other: &SparsePoly) -> Result<(), PolyError> {
        if self.nvars != other.nvars {
            return Err(PolyError::VariableCount(self.nvars, other.nvars));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &SparsePoly) -> Result<SparsePoly, PolyError> {
        self.check(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &SparsePoly) -> Result<SparsePoly, PolyError> {
        self.check(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c);
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &SparsePoly) -> Result<SparsePoly, PolyError> {
        self.check(other)?;
        let mut acc: std::collections::HashMap<Vec<u16>, BigInt> = std::collections::HashMap::new();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Vec<u16> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                *acc.entry(e).or_default() += c1 * c2;
            }
        }
        Ok(SparsePoly::from_terms(self.nvars, acc))
    }

    pub fn scale(&self, c: &BigInt) -> SparsePoly {
        if c.is_zero() {
            return SparsePoly::zero(self.nvars);
        }
        SparsePoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect(),
        }
    }

    /// Exact division of every coefficient by `c`; panics if `c` does not divide.
    pub fn div_exact(&self, c: &BigInt) -> SparsePoly {
        SparsePoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, x)| {
                    let (q, r) = x.div_rem(c);
                    assert!(r.is_zero(), "{c} does not divide {x}");
                    (e.clone(), q)
                })
                .collect(),
        }
    }

    /// Applies the differential operator `alpha`, with falling-factorial
    /// coefficients for repeated variables.
    pub fn diff(&self, alpha: &DiffMonomial) -> SparsePoly {
        let a = alpha.exponents(self.nvars.max(alpha.max_index()));
        if a.len() > self.nvars && a[self.nvars..].iter().any(|&x| x > 0) {
            return SparsePoly::zero(self.nvars);
        }
        let mut out = SparsePoly::zero(self.nvars);
        'terms: for (e, c) in &self.terms {
            let mut ne = e.clone();
            let mut coef = c.clone();
            for (i, &ai) in a.iter().take(self.nvars).enumerate() {
                if ai == 0 {
                    continue;
                }
                if e[i] < ai {
                    continue 'terms;
                }
                for t in 0..ai {
                    coef *= e[i] - t;
                }
                ne[i] -= ai;
            }
            out.add_term(ne, coef);
        }
        out
    }

    /// `∂f/∂x_i`.
    pub fn diff_var(&self, i: usize) -> SparsePoly {
        self.diff(&DiffMonomial::new([i]).expect("positive index"))
    }

    pub fn evaluate(&self, point: &[BigInt]) -> Result<BigInt, PolyError> {
        if point.len() != self.nvars {
            return Err(PolyError::VariableCount(self.nvars, point.len()));
        }
        let mut total = BigInt::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(e) {
                if k > 0 {
                    t *= num_traits::pow(x.clone(), k as usize);
                }
            }
            total += t;
        }
        Ok(total)
    }

    pub fn evaluate_i64(&self, point: &[i64]) -> Result<BigInt, PolyError> {
        let p: Vec<BigInt> = point.iter().map(|&x| BigInt::from(x)).collect();
        self.evaluate(&p)
    }

    /// Value over `F_p`; point and result in Montgomery form.
    pub fn evaluate_mod(&self, field: PrimeField, point: &[u64]) -> u64 {
        assert_eq!(point.len(), self.nvars);
        let mut total = 0;
        for (e, c) in &self.terms {
            let mut t = field.from_bigint(c);
            for (&x, &k) in point.iter().zip(e) {
                if k > 0 {
                    t = field.mul(t, field.pow(x, k as u64));
                }
            }
            total = field.add(total, t);
        }
        total
    }

    /// Coefficients (constant term first) of the univariate polynomial in `x_i`
    /// obtained by setting every other variable to 1.
    pub fn restrict_to_line(&self, i: usize) -> Result<Vec<BigInt>, PolyError> {
        if i == 0 || i > self.nvars {
            return Err(PolyError::VariableIndex(i));
        }
        let mut coeffs: Vec<BigInt> = Vec::new();
        for (e, c) in &self.terms {
            let k = e[i - 1] as usize;
            if coeffs.len() <= k {
                coeffs.resize(k + 1, BigInt::zero());
            }
            coeffs[k] += c;
        }
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(BigInt::zero());
        }
        Ok(coeffs)
    }

    /// Coefficient of the lexicographically largest term.
    pub fn leading_coeff(&self) -> Option<&BigInt> {
        self.terms.values().next_back()
    }

    /// Same polynomial viewed in `nvars` variables (must not drop a used one).
    pub fn with_nvars(&self, nvars: usize) -> Result<SparsePoly, PolyError> {
        let mut out = SparsePoly::zero(nvars);
        for (e, c) in &self.terms {
            if e.iter().skip(nvars).any(|&x| x > 0) {
                return Err(PolyError::VariableCount(self.nvars, nvars));
            }
            let mut ne = e.clone();
            ne.resize(nvars, 0);
            out.terms.insert(ne, c.clone());
        }
        Ok(out)
    }

    pub fn is_positive_leading(&self) -> bool {
        self.leading_coeff().is_some_and(|c| c.is_positive())
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .next()
                .is_some_and(|(e, c)| c.is_one() && e.iter().all(|&x| x == 0))
    }
}

impl Add for &SparsePoly {
    type Output = SparsePoly;
    fn add(self, rhs: &SparsePoly) -> SparsePoly {
        self.try_add(rhs).expect("variable counts must agree")
    }
}

impl Sub for &SparsePoly {
    type Output = SparsePoly;
    fn sub(self, rhs: &SparsePoly) -> SparsePoly {
        self.try_sub(rhs).expect("variable counts must agree")
    }
}

impl Mul for &SparsePoly {
    type Output = SparsePoly;
    fn mul(self, rhs: &SparsePoly) -> SparsePoly {
        self.try_mul(rhs).expect("variable counts must agree")
    }
}

impl Neg for &SparsePoly {
    type Output = SparsePoly;
    fn neg(self) -> SparsePoly {
        self.scale(&BigInt::from(-1))
    }
}
