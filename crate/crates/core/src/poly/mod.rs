//! Exact sparse multivariate polynomials over the integers.

mod monomial;
mod sparse;
mod squarefree;
mod text;

pub use monomial::DiffMonomial;
pub use sparse::SparsePoly;
pub use squarefree::SquareFreePoly;

use crate::graphs::{enumerate_spanning_trees, Graph};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("variable count mismatch: {0} vs {1}")]
    VariableCount(usize, usize),
    #[error("variable index {0} out of range")]
    VariableIndex(usize),
    #[error("parse error at byte {offset}: {msg}")]
    Parse { offset: usize, msg: String },
    #[error("graph is disconnected")]
    Disconnected,
    #[error("too many variables for a bitmask polynomial: {0}")]
    TooManyVariables(usize),
    #[error("polynomial is not square-free")]
    NotSquareFree,
}

/// `f_G`: the sum over spanning trees of `G` of the product of their edge
/// variables, in `edge_count` variables.
pub fn basis_generating_poly(g: &Graph) -> Result<SparsePoly, PolyError> {
    basis_generating_squarefree(g).map(|f| f.to_sparse())
}

/// [`basis_generating_poly`] in bitmask form.
pub fn basis_generating_squarefree(g: &Graph) -> Result<SquareFreePoly, PolyError> {
    if g.edge_count() > 64 {
        return Err(PolyError::TooManyVariables(g.edge_count()));
    }
    if !g.is_connected() {
        return Err(PolyError::Disconnected);
    }
    let trees = enumerate_spanning_trees(g);
    Ok(SquareFreePoly::from_masks(
        g.edge_count(),
        trees.into_iter().map(|t| t.mask()),
    ))
}
