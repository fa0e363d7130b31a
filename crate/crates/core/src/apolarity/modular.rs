//! Evaluation-based bases for graph polynomials over word-sized primes.
//!
//! For an acyclic edge set `S`, `∂^S f_G` is the tree polynomial of `G/S`, so
//! its values come from small Laplacian determinants. A set of operators whose
//! evaluation rows are independent mod `p` is independent over the rationals.

use super::{ApolarityError, GradedBasis, HilbertFunction};
use crate::graphs::{contract_edges, is_acyclic, weighted_tree_value_mod, EdgeSet, Graph};
use crate::linalg::{primes, PrimeField};
use crate::poly::DiffMonomial;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Acyclic `k`-subsets of edges in lex order, with their contractions.
pub(crate) fn acyclic_operators(g: &Graph, k: usize) -> Vec<(DiffMonomial, Graph)> {
    DiffMonomial::all_of_degree(g.edge_count(), k, true)
        .into_iter()
        .filter_map(|a| {
            let s = EdgeSet::from_indices(a.indices());
            is_acyclic(g, s).then(|| {
                let c = contract_edges(g, s).expect("acyclic set contracts");
                (a, c)
            })
        })
        .collect()
}

/// Incremental echelon form over `F_p`: accepts a row iff it is independent of
/// the rows accepted so far.
pub(crate) struct Echelon {
    field: PrimeField,
    rows: Vec<(usize, Vec<u64>)>,
}

impl Echelon {
    pub(crate) fn new(field: PrimeField) -> Self {
        Echelon {
            field,
            rows: Vec::new(),
        }
    }

    pub(crate) fn rank(&self) -> usize {
        self.rows.len()
    }

    pub(crate) fn insert(&mut self, mut v: Vec<u64>) -> bool {
        let f = self.field;
        for (pc, row) in &self.rows {
            let x = v[*pc];
            if x != 0 {
                for (a, &b) in v[*pc..].iter_mut().zip(&row[*pc..]) {
                    *a = f.sub(*a, f.mul(x, b));
                }
            }
        }
        let Some(pc) = v.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = f.inv(v[pc]).expect("nonzero");
        v.iter_mut().for_each(|x| *x = f.mul(*x, inv));
        self.rows.push((pc, v));
        true
    }
}

fn random_points(rng: &mut ChaCha8Rng, field: PrimeField, count: usize, n: usize) -> Vec<Vec<u64>> {
    let p = field.modulus();
    (0..count)
        .map(|_| {
            (0..n)
                .map(|_| field.from_u64(rng.gen_range(1..p)))
                .collect()
        })
        .collect()
}

fn greedy_mod_p(ops: &[(DiffMonomial, Graph)], n: usize, p: u64, seed: u64) -> Vec<bool> {
    let field = PrimeField::new(p);
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ p);
    let mut rows: Vec<Vec<u64>> = vec![Vec::new(); ops.len()];
    let mut count = 16usize;
    loop {
        // Earlier points are kept; only the new ones are evaluated.
        let pts = random_points(&mut rng, field, count - rows.first().map_or(0, Vec::len), n);
        let fresh = crate::par::map(ops, |(_, c)| {
            pts.iter()
                .map(|x| weighted_tree_value_mod(c, field, x))
                .collect::<Vec<u64>>()
        });
        for (r, f) in rows.iter_mut().zip(fresh) {
            r.extend(f);
        }
        let mut ech = Echelon::new(field);
        let accepted: Vec<bool> = rows.iter().map(|r| ech.insert(r.clone())).collect();
        // Leave slack so the sample cannot be what caps the rank.
        if ech.rank() + 8 <= count {
            return accepted;
        }
        count = (count * 2).min(ops.len() + 8);
    }
}

/// Lex-greedy basis of `A_k` for `f_G`, computed mod word-sized primes.
///
/// The result is always independent over the rationals. Its size is taken once
/// two primes reach the same largest rank, so it equals `h_k` with high
/// probability; exact callers use [`super::select_basis`].
pub fn graph_basis_mod_p(g: &Graph, k: usize, seed: u64) -> Result<GradedBasis, ApolarityError> {
    let d = graph_socle_degree(g)?;
    if k > d {
        return Err(ApolarityError::DegreeOutOfRange { k, d });
    }
    let ops = acyclic_operators(g, k);
    let mut best: Option<Vec<bool>> = None;
    let mut hits = 0;
    for p in primes().take(6) {
        let acc = greedy_mod_p(&ops, g.edge_count(), p, seed);
        let size = acc.iter().filter(|&&a| a).count();
        let best_size = best
            .as_ref()
            .map_or(0, |b| b.iter().filter(|&&a| a).count());
        if best.is_none() || size > best_size {
            best = Some(acc);
            hits = 1;
        } else if size == best_size {
            hits += 1;
        }
        if hits == 2 {
            let acc = best.expect("set above");
            let mut elements = Vec::new();
            let mut rejected = Vec::new();
            let accepted: Vec<&DiffMonomial> = ops
                .iter()
                .zip(&acc)
                .filter(|(_, &a)| a)
                .map(|(o, _)| &o.0)
                .collect();
            for a in DiffMonomial::all_of_degree(g.edge_count(), k, true) {
                if accepted.binary_search(&&a).is_ok() {
                    elements.push(a);
                } else {
                    rejected.push(a);
                }
            }
            return Ok(GradedBasis {
                degree: k,
                elements,
                rejected,
            });
        }
    }
    Err(ApolarityError::Unstable)
}

/// [`graph_basis_mod_p`] for every `k` in `0..=max_k`.
pub fn graph_bases_mod_p(
    g: &Graph,
    max_k: usize,
    seed: u64,
) -> Result<Vec<GradedBasis>, ApolarityError> {
    (0..=max_k).map(|k| graph_basis_mod_p(g, k, seed)).collect()
}

/// Hilbert function from basis sizes in degrees `0..=d/2`, mirrored.
pub(crate) fn mirrored(half: &[GradedBasis], d: usize) -> HilbertFunction {
    HilbertFunction((0..=d).map(|k| half[k.min(d - k)].len()).collect())
}

/// Hilbert function of `f_G` from [`graph_basis_mod_p`] sizes.
pub fn graph_hilbert_mod_p(g: &Graph, seed: u64) -> Result<HilbertFunction, ApolarityError> {
    let d = graph_socle_degree(g)?;
    Ok(mirrored(&graph_bases_mod_p(g, d / 2, seed)?, d))
}

/// `|V| - 1` for a connected graph.
pub(crate) fn graph_socle_degree(g: &Graph) -> Result<usize, ApolarityError> {
    if !g.is_connected() {
        return Err(crate::poly::PolyError::Disconnected.into());
    }
    Ok(g.vertex_count() - 1)
}
