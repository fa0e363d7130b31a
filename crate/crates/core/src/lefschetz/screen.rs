//! Schwartz–Zippel screening of `det H_{B_k}(f_G)`.
//!
//! The determinant has degree at most `h_k (d - 2k)`. If it is not identically
//! zero, a uniform point of `[1, s]^n` is a root with probability at most
//! `h_k (d - 2k) / s`, so `reps` deficient repetitions in a row happen with
//! probability at most that to the power `reps`.

use super::hessian::{GraphHessian, HessianSource};
use super::LefschetzError;
use crate::apolarity::{graph_bases_mod_p, graph_socle_degree, mirrored};
use crate::graphs::{emit_edge_bits, Graph};
use crate::linalg::{certified_nullity, PrimeField, PRIME_A, PRIME_B};
use num_bigint::BigInt;
use num_traits::Pow;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Serialize, Serializer};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ScreenParams {
    pub k: usize,
    pub reps: usize,
    pub s_max: u64,
    pub seed: u64,
}

impl Default for ScreenParams {
    fn default() -> Self {
        ScreenParams {
            k: 1,
            reps: 100,
            s_max: 1_000_000_000,
            seed: 0,
        }
    }
}

fn as_string<S: Serializer>(x: &u64, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScreenReport {
    pub graph_id: String,
    pub edge_bits: Option<String>,
    pub n_edges: usize,
    pub hilbert: Vec<usize>,
    pub k: usize,
    pub reps: usize,
    #[serde(serialize_with = "as_string")]
    pub s_max: u64,
    pub seed: u64,
    pub nullity_min: usize,
    pub candidate: bool,
    /// Least `e` with `(h_k (d-2k) / s_max)^reps <= 10^e`, for candidates.
    pub prob_bound_exp10: Option<i64>,
    pub reps_run: usize,
    /// Nullity per repetition run, modular upper bounds confirmed at a second prime.
    pub nullities: Vec<usize>,
    /// Exact nullity at the first point, for candidates.
    pub exact_nullity: Option<usize>,
}

fn fnv1a(bytes: &[u8]) -> u64 {
    bytes.iter().fold(0xcbf2_9ce4_8422_2325, |h, &b| {
        (h ^ b as u64).wrapping_mul(0x0100_0000_01b3)
    })
}

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    x ^ (x >> 31)
}

/// Per-graph seed, independent of the order graphs are processed in.
pub fn graph_seed(graph_id: &str, seed: u64) -> u64 {
    splitmix64(fnv1a(graph_id.as_bytes()) ^ splitmix64(seed))
}

/// Least integer `e` with `(deg / s)^reps <= 10^e`, or `None` when `deg = 0`.
pub fn prob_bound_exp10(deg: u64, s: u64, reps: usize) -> Option<i64> {
    if deg == 0 || s == 0 {
        return None;
    }
    let num = BigInt::from(deg).pow(reps);
    let den = BigInt::from(s).pow(reps);
    let ten = BigInt::from(10);
    // num <= 10^e den, split by the sign of e.
    let holds = |e: i64| {
        if e >= 0 {
            num <= &den * Pow::pow(&ten, e as u64)
        } else {
            &num * Pow::pow(&ten, (-e) as u64) <= den
        }
    };
    let mut e = num.to_string().len() as i64 - den.to_string().len() as i64 + 1;
    while !holds(e) {
        e += 1;
    }
    while holds(e - 1) {
        e -= 1;
    }
    Some(e)
}

/// Runs up to `reps` repetitions, stopping at the first nonsingular one.
pub fn sz_screen(
    g: &Graph,
    graph_id: &str,
    params: &ScreenParams,
) -> Result<ScreenReport, LefschetzError> {
    let mut r = sz_screen_degrees(g, graph_id, &[params.k], params)?;
    Ok(r.pop().expect("one degree"))
}

/// [`sz_screen`] at each `k` in `ks` (ignoring `params.k`), sharing the
/// modular bases between degrees.
pub fn sz_screen_degrees(
    g: &Graph,
    graph_id: &str,
    ks: &[usize],
    params: &ScreenParams,
) -> Result<Vec<ScreenReport>, LefschetzError> {
    let d = graph_socle_degree(g)?;
    if let Some(&k) = ks.iter().find(|&&k| 2 * k > d) {
        return Err(LefschetzError::DegreeTooHigh { k, d });
    }
    let bases = graph_bases_mod_p(g, d / 2, params.seed)?;
    let hilbert = mirrored(&bases, d);
    ks.iter()
        .map(|&k| {
            let basis = &bases[k];
            let h = GraphHessian::new(g, basis)?;
            let (nullities, exact_nullity) = repetitions(g, &h, graph_id, params);
            let all_deficient = nullities.len() == params.reps && nullities.iter().all(|&n| n > 0);
            let candidate = all_deficient && exact_nullity.is_some_and(|n| n > 0);
            let deg = (basis.len() * (d - 2 * k)) as u64;
            Ok(ScreenReport {
                graph_id: graph_id.to_string(),
                edge_bits: emit_edge_bits(g).ok(),
                n_edges: g.edge_count(),
                hilbert: hilbert.values().to_vec(),
                k,
                reps: params.reps,
                s_max: params.s_max,
                seed: params.seed,
                nullity_min: nullities.iter().copied().min().unwrap_or(0),
                candidate,
                prob_bound_exp10: if candidate {
                    prob_bound_exp10(deg, params.s_max, params.reps)
                } else {
                    None
                },
                reps_run: nullities.len(),
                nullities,
                exact_nullity,
            })
        })
        .collect()
}

/// Modular nullity per repetition, and the exact nullity at the first point
/// when every repetition was deficient.
fn repetitions(
    g: &Graph,
    h: &GraphHessian,
    graph_id: &str,
    params: &ScreenParams,
) -> (Vec<usize>, Option<usize>) {
    let (fa, fb) = (PrimeField::new(PRIME_A), PrimeField::new(PRIME_B));
    let mut rng = ChaCha8Rng::seed_from_u64(graph_seed(graph_id, params.seed));
    let mut nullities = Vec::new();
    let mut first_point = None;
    for _ in 0..params.reps {
        let pt: Vec<u64> = (0..g.edge_count())
            .map(|_| rng.gen_range(1..=params.s_max))
            .collect();
        let mont = |f: PrimeField| pt.iter().map(|&x| f.from_u64(x)).collect::<Vec<_>>();
        let mut nullity = h.eval_mod(fa, &mont(fa)).nullity();
        if nullity > 0 {
            nullity = nullity.min(h.eval_mod(fb, &mont(fb)).nullity());
        }
        first_point.get_or_insert_with(|| pt.clone());
        nullities.push(nullity);
        if nullity == 0 {
            break;
        }
    }
    let all_deficient = nullities.len() == params.reps && nullities.iter().all(|&n| n > 0);
    let exact_nullity = match (&first_point, all_deficient) {
        (Some(pt), true) => {
            let big: Vec<BigInt> = pt.iter().map(|&x| BigInt::from(x)).collect();
            Some(certified_nullity(&h.eval_exact(&big)))
        }
        _ => None,
    };
    (nullities, exact_nullity)
}
