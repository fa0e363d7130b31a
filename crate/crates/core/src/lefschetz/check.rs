//! `SLP_k` at a point, and the one-point check over every `k`.

use super::hessian::{hessian_symbolic, GraphHessian, HessianSource, HessianSymbolic};
use super::screen::{graph_seed, sz_screen, ScreenParams, ScreenReport};
use super::LefschetzError;
use crate::apolarity::{graph_basis_mod_p, select_basis, socle_degree};
use crate::graphs::Graph;
use crate::linalg::certified_nullity;
use crate::poly::{basis_generating_poly, SparsePoly};
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum SlpOutcome {
    Holds,
    Fails { nullity: usize },
}

impl SlpOutcome {
    pub fn holds(&self) -> bool {
        matches!(self, SlpOutcome::Holds)
    }
}

/// Exact nullity of the evaluated Hessian decides `SLP_k` at the point.
pub fn slp_check_at_point(src: &dyn HessianSource, point: &[BigInt]) -> SlpOutcome {
    match certified_nullity(&src.eval_exact(point)) {
        0 => SlpOutcome::Holds,
        nullity => SlpOutcome::Fails { nullity },
    }
}

/// `H_{B_k}(f)` over the lex-greedy basis.
pub fn poly_hessian(f: &SparsePoly, k: usize) -> Result<HessianSymbolic, LefschetzError> {
    let basis = select_basis(f, k)?;
    hessian_symbolic(f, &basis)
}

/// Fast Hessian of `f_G`. With `exact_basis` the basis comes from exact
/// elimination, otherwise from the modular greedy pass.
pub fn graph_hessian(
    g: &Graph,
    k: usize,
    exact_basis: bool,
    seed: u64,
) -> Result<GraphHessian, LefschetzError> {
    let basis = if exact_basis {
        select_basis(&basis_generating_poly(g)?, k)?
    } else {
        graph_basis_mod_p(g, k, seed)?
    };
    GraphHessian::new(g, &basis)
}

/// What to check: a graph, or a bare homogeneous polynomial.
#[derive(Clone, Debug)]
pub enum Target {
    Graph { id: String, graph: Graph },
    Poly(SparsePoly),
}

impl Target {
    pub fn socle_degree(&self) -> Result<usize, LefschetzError> {
        match self {
            Target::Graph { graph, .. } => {
                if !graph.is_connected() {
                    return Err(crate::poly::PolyError::Disconnected.into());
                }
                Ok(graph.vertex_count() - 1)
            }
            Target::Poly(f) => Ok(socle_degree(f)?),
        }
    }

    pub fn nvars(&self) -> usize {
        match self {
            Target::Graph { graph, .. } => graph.edge_count(),
            Target::Poly(f) => f.nvars(),
        }
    }

    /// Exact-basis Hessian for degree `k`.
    pub fn hessian(&self, k: usize) -> Result<Box<dyn HessianSource>, LefschetzError> {
        Ok(match self {
            Target::Graph { graph, .. } => Box::new(graph_hessian(graph, k, true, 0)?),
            Target::Poly(f) => Box::new(poly_hessian(f, k)?),
        })
    }
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum FullCheck {
    /// `SLP_k` holds at `point` for every `k`, so `Σ point_i ∂_i` is a
    /// Lefschetz element.
    Witness { point: Vec<String> },
    /// The first `k` that failed at the sampled point, with the screen run on
    /// it when the target is a graph.
    Escalated {
        k: usize,
        nullity: usize,
        point: Vec<String>,
        screen: Option<ScreenReport>,
    },
}

/// Samples one point with entries in `[1, s_max]` and checks every
/// `k <= d/2` there; a failing `k` goes on to [`sz_screen`].
pub fn slp_full_check(target: &Target, params: &ScreenParams) -> Result<FullCheck, LefschetzError> {
    let d = target.socle_degree()?;
    let id = match target {
        Target::Graph { id, .. } => id.as_str(),
        Target::Poly(_) => "poly",
    };
    let mut rng = ChaCha8Rng::seed_from_u64(graph_seed(id, params.seed));
    let point: Vec<BigInt> = (0..target.nvars())
        .map(|_| BigInt::from(rng.gen_range(1..=params.s_max)))
        .collect();
    let text: Vec<String> = point.iter().map(|x| x.to_string()).collect();
    for k in 0..=d / 2 {
        let h = target.hessian(k)?;
        if let SlpOutcome::Fails { nullity } = slp_check_at_point(h.as_ref(), &point) {
            let screen = match target {
                Target::Graph { id, graph } => {
                    Some(sz_screen(graph, id, &ScreenParams { k, ..*params })?)
                }
                Target::Poly(_) => None,
            };
            return Ok(FullCheck::Escalated {
                k,
                nullity,
                point: text,
                screen,
            });
        }
    }
    Ok(FullCheck::Witness { point: text })
}
