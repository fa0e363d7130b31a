//! Named example inputs: the graphs and polynomial used throughout the tests,
//! and the two shipped kernel certificates.

use crate::graphs::{parse_edge_bits, Graph};
use crate::lefschetz::KernelCertificate;
use crate::poly::SparsePoly;

/// 13-edge graph on 8 vertices whose `A_3` fails `SLP_3`.
pub const FIG1_EDGE_BITS: &str = "0001111001 1110010100 11001000";
/// Planar 17-edge graph on 8 vertices, also failing `SLP_3`.
pub const FIG3_EDGE_BITS: &str = "0001110001 1010101101 11011111";
/// 11-edge graph failing `SLP_2` at `ℓ = ∂_1 + ... + ∂_n` only.
pub const FIG7_EDGE_BITS: &str = "0000110000 1100010100 11011010";
pub const IKEDA: &str = "x1^3*x2*x3 + x1*x2^3*x4 + x3^3*x4^2";

pub const FIG1_CERT: &str = include_str!("../fixtures/fig1_k3.cert");
pub const FIG7_CERT: &str = include_str!("../fixtures/fig7_k2_ones.cert");

pub fn fig1() -> Graph {
    parse_edge_bits(FIG1_EDGE_BITS, 8).expect("valid fixture")
}

pub fn fig3() -> Graph {
    parse_edge_bits(FIG3_EDGE_BITS, 8).expect("valid fixture")
}

pub fn fig7() -> Graph {
    parse_edge_bits(FIG7_EDGE_BITS, 8).expect("valid fixture")
}

pub fn triangle() -> Graph {
    Graph::complete(3)
}

pub fn ikeda() -> SparsePoly {
    IKEDA.parse().expect("valid fixture")
}

/// `B_3` and the polynomial kernel vector for [`fig1`].
pub fn fig1_certificate() -> KernelCertificate {
    KernelCertificate::parse(FIG1_CERT).expect("valid fixture")
}

/// `B_2` and the kernel vector of `H_{B_2}(f)(1, ..., 1)` for [`fig7`].
pub fn fig7_certificate() -> KernelCertificate {
    KernelCertificate::parse(FIG7_CERT).expect("valid fixture")
}

/// A graph fixture by name.
pub fn graph(name: &str) -> Option<Graph> {
    match name {
        "fig1" => Some(fig1()),
        "fig3" => Some(fig3()),
        "fig7" => Some(fig7()),
        "triangle" => Some(triangle()),
        _ => None,
    }
}
