//! Higher Hessians, SLP checks, randomized screening, and kernel certificates.
//!
//! `A = Q/Ann(f)` has `SLP_k` at `ℓ = Σ a_i ∂_i` iff the `k`-th Hessian
//! evaluated at `a` is nonsingular. A nonzero polynomial vector `F` with
//! `H·F = 0` shows the determinant vanishes identically, so `SLP_k` fails for
//! every `ℓ`.

mod certificate;
mod check;
mod hessian;
pub mod interp;
mod reconstruct;
mod screen;

pub use certificate::{
    normalize_components, verify_certificate, KernelCertificate, VerificationReport,
};
pub use check::{
    graph_hessian, poly_hessian, slp_check_at_point, slp_full_check, FullCheck, SlpOutcome, Target,
};
pub use hessian::{hessian_symbolic, GraphHessian, HessianSource, HessianSymbolic};
pub use reconstruct::{
    default_i0, detect_max_degrees, generic_nullity, interpolate_kernel, kernel_shape,
    reconstruct_kernel, KernelShape, ReconstructMode, ReconstructOptions, Reconstruction,
};
pub use screen::{
    graph_seed, prob_bound_exp10, sz_screen, sz_screen_degrees, ScreenParams, ScreenReport,
};

use crate::apolarity::ApolarityError;
use crate::graphs::GraphError;
use crate::linalg::LinalgError;
use crate::poly::PolyError;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LefschetzError {
    #[error("k = {k} is above half the socle degree {d}")]
    DegreeTooHigh { k: usize, d: usize },
    #[error("the fast Hessian needs a square-free basis")]
    NotSquareFree,
    #[error("kernel has dimension {nullity} at {at}; reconstruction needs dimension 1")]
    KernelDimension { nullity: usize, at: String },
    #[error("normalization failed: {0}")]
    Normalization(String),
    #[error("reconstruction failed: {0}")]
    Reconstruction(String),
    #[error("certificate line {line}: {msg}")]
    CertificateParse { line: usize, msg: String },
    #[error("certificate basis differs from the computed basis at position {0}")]
    BasisMismatch(usize),
    #[error(transparent)]
    Apolarity(#[from] ApolarityError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}
