//! Graded pieces of `A = Q/Ann(f)`: catalecticant matrices, Hilbert functions,
//! greedy lexicographic bases and the Poincaré pairing.

mod generators;
mod modular;

pub use generators::{minimal_generator_counts, GeneratorMethod, DEFAULT_GENERATOR_BUDGET};
pub use modular::{graph_bases_mod_p, graph_basis_mod_p, graph_hilbert_mod_p};
pub(crate) use modular::{graph_socle_degree, mirrored};

use crate::linalg::{bareiss, ExactMatrix};
use crate::poly::{DiffMonomial, PolyError, SparsePoly, SquareFreePoly};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ApolarityError {
    #[error("polynomial is not homogeneous")]
    NotHomogeneous,
    #[error("polynomial is zero")]
    ZeroPolynomial,
    #[error("degree {k} out of range 0..={d}")]
    DegreeOutOfRange { k: usize, d: usize },
    #[error("pairing needs complementary degrees, got {i} + {j} != {d}")]
    DegreeMismatch { i: usize, j: usize, d: usize },
    #[error("{what} has size {size}, over the budget of {budget}")]
    TooLarge {
        what: &'static str,
        size: usize,
        budget: usize,
    },
    #[error("modular rank did not stabilize across primes")]
    Unstable,
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Chosen basis of `A_k`, in lexicographic order, plus the monomials the
/// greedy pass rejected.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedBasis {
    pub degree: usize,
    pub elements: Vec<DiffMonomial>,
    pub rejected: Vec<DiffMonomial>,
}

impl GradedBasis {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// One tuple per line, e.g. `(1,2,3)`.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for e in &self.elements {
            s.push_str(&e.to_string());
            s.push('\n');
        }
        s
    }

    /// Position of an element, if it belongs to the basis.
    pub fn index_of(&self, alpha: &DiffMonomial) -> Option<usize> {
        self.elements.binary_search(alpha).ok()
    }
}

/// `h_0, ..., h_d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertFunction(pub Vec<usize>);

impl HilbertFunction {
    pub fn socle_degree(&self) -> usize {
        self.0.len() - 1
    }

    pub fn values(&self) -> &[usize] {
        &self.0
    }
}

impl fmt::Display for HilbertFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|h| h.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Matrix of `α ↦ αf` in degree `k`, with its labels.
#[derive(Clone, Debug)]
pub struct Catalecticant {
    /// Row labels, lexicographic.
    pub operators: Vec<DiffMonomial>,
    /// Column labels: exponent vectors of the monomials met, lexicographic.
    pub monomials: Vec<Vec<u16>>,
    pub rows: Vec<Vec<BigInt>>,
}

impl Catalecticant {
    pub fn to_matrix(&self) -> ExactMatrix {
        let data = self
            .rows
            .iter()
            .flatten()
            .map(|x| BigRational::from_integer(x.clone()))
            .collect();
        ExactMatrix::new(self.operators.len(), self.monomials.len(), data)
            .expect("rectangular by construction")
    }

    /// Transposed integer rows: one per monomial, columns follow the operators.
    fn transposed(&self) -> Vec<Vec<BigInt>> {
        let mut t = vec![vec![BigInt::zero(); self.operators.len()]; self.monomials.len()];
        for (r, row) in self.rows.iter().enumerate() {
            for (c, x) in row.iter().enumerate() {
                if !x.is_zero() {
                    t[c][r] = x.clone();
                }
            }
        }
        t
    }
}

/// Socle degree of a nonzero homogeneous polynomial.
pub fn socle_degree(f: &SparsePoly) -> Result<usize, ApolarityError> {
    if f.is_zero() {
        return Err(ApolarityError::ZeroPolynomial);
    }
    if !f.is_homogeneous() {
        return Err(ApolarityError::NotHomogeneous);
    }
    Ok(f.total_degree().unwrap_or(0))
}

/// Operators of degree `k` that can act nontrivially: square-free ones for a
/// multilinear `f`, all of them otherwise.
pub fn candidate_operators(f: &SparsePoly, k: usize) -> Vec<DiffMonomial> {
    DiffMonomial::all_of_degree(f.nvars(), k, f.is_square_free())
}

/// Catalecticant in degree `k`; columns are the monomials that actually occur.
pub fn catalecticant_matrix(f: &SparsePoly, k: usize) -> Result<Catalecticant, ApolarityError> {
    let d = socle_degree(f)?;
    if k > d {
        return Err(ApolarityError::DegreeOutOfRange { k, d });
    }
    build_catalecticant(f, candidate_operators(f, k))
}

/// Catalecticant rows for an explicit operator list.
pub(crate) fn build_catalecticant(
    f: &SparsePoly,
    operators: Vec<DiffMonomial>,
) -> Result<Catalecticant, ApolarityError> {
    let images: Vec<Vec<(Vec<u16>, BigInt)>> = if f.is_square_free() && f.nvars() <= 64 {
        let sf = SquareFreePoly::from_sparse(f)?;
        let n = f.nvars();
        crate::par::map(&operators, |a| {
            sf.diff(a)
                .terms()
                .map(|(m, c)| ((0..n).map(|i| (m >> i & 1) as u16).collect(), c.clone()))
                .collect()
        })
    } else {
        crate::par::map(&operators, |a| {
            f.diff(a)
                .terms()
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect()
        })
    };
    let mut index: BTreeMap<Vec<u16>, usize> = BTreeMap::new();
    for img in &images {
        for (e, _) in img {
            index.entry(e.clone()).or_insert(0);
        }
    }
    for (i, v) in index.values_mut().enumerate() {
        *v = i;
    }
    let cols = index.len();
    let rows = images
        .into_iter()
        .map(|img| {
            let mut row = vec![BigInt::zero(); cols];
            for (e, c) in img {
                row[index[&e]] = c;
            }
            row
        })
        .collect();
    Ok(Catalecticant {
        operators,
        monomials: index.into_keys().collect(),
        rows,
    })
}

/// Greedy lexicographic basis of `A_k`, exact.
///
/// Bareiss elimination on the transposed catalecticant, whose columns are the
/// operators in lex order, puts its pivots exactly on the operators that are
/// independent of all earlier ones.
pub fn select_basis(f: &SparsePoly, k: usize) -> Result<GradedBasis, ApolarityError> {
    let cat = catalecticant_matrix(f, k)?;
    let n_ops = cat.operators.len();
    let pivots = bareiss(cat.transposed(), n_ops).pivots;
    let mut accepted = vec![false; n_ops];
    for p in pivots {
        accepted[p] = true;
    }
    let (mut elements, mut rejected) = (Vec::new(), Vec::new());
    for (op, ok) in cat.operators.into_iter().zip(accepted) {
        if ok {
            elements.push(op);
        } else {
            rejected.push(op);
        }
    }
    Ok(GradedBasis {
        degree: k,
        elements,
        rejected,
    })
}

/// Exact `h_k`.
pub fn hilbert_value(f: &SparsePoly, k: usize) -> Result<usize, ApolarityError> {
    let cat = catalecticant_matrix(f, k)?;
    // Bareiss cost grows with the row count, so eliminate the shorter side.
    Ok(if cat.operators.len() <= cat.monomials.len() {
        bareiss(cat.rows, cat.monomials.len()).pivots.len()
    } else {
        let n_ops = cat.operators.len();
        bareiss(cat.transposed(), n_ops).pivots.len()
    })
}

/// Exact Hilbert function.
///
/// The catalecticants in degrees `k` and `d-k` are transposes of each other up
/// to nonzero diagonal scalings, so only `k <= d/2` is eliminated.
pub fn hilbert_function(f: &SparsePoly) -> Result<HilbertFunction, ApolarityError> {
    let d = socle_degree(f)?;
    let half: Vec<usize> = (0..=d / 2)
        .map(|k| hilbert_value(f, k))
        .collect::<Result<_, _>>()?;
    Ok(HilbertFunction(
        (0..=d).map(|k| half[k.min(d - k)]).collect(),
    ))
}

/// Pairing `(α_a, β_b) ↦ (α_a β_b) f` between `A_i` and `A_{d-i}`.
pub fn pairing_matrix(
    f: &SparsePoly,
    bi: &GradedBasis,
    bj: &GradedBasis,
) -> Result<ExactMatrix, ApolarityError> {
    let d = socle_degree(f)?;
    let (i, j) = (bi.degree, bj.degree);
    if i + j != d {
        return Err(ApolarityError::DegreeMismatch { i, j, d });
    }
    let mut m = ExactMatrix::zeros(bi.len(), bj.len());
    for (a, alpha) in bi.elements.iter().enumerate() {
        let g = f.diff(alpha);
        for (b, beta) in bj.elements.iter().enumerate() {
            let v = g.diff(beta).coeff(&vec![0; f.nvars()]);
            if !v.is_zero() {
                m.set(a, b, BigRational::from_integer(v));
            }
        }
    }
    Ok(m)
}
