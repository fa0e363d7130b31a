//! Exact tests of the strong Lefschetz property for Artinian Gorenstein algebras
//! defined by spanning-tree generating polynomials of graphs.
//!
//! The crate is layered bottom-up: [`linalg`] and [`poly`] provide exact
//! arithmetic, [`graphs`] the combinatorics, [`apolarity`] the graded pieces of
//! `Q/Ann(f)`, and [`lefschetz`] higher Hessians, randomized screening and
//! kernel certificates.

pub mod apolarity;
pub mod fixtures;
pub mod graphs;
pub mod lefschetz;
pub mod linalg;
pub mod par;
pub mod poly;
