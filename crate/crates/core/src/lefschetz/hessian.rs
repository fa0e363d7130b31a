//! Higher Hessians `H_{ij} = (α_i α_j) f`, symbolic and evaluated.

use super::LefschetzError;
use crate::apolarity::{socle_degree, GradedBasis};
use crate::graphs::{determinant_mod, weighted_tree_value, Graph, UnionFind};
use crate::linalg::{ExactMatrix, ModMatrix, PrimeField};
use crate::poly::{SparsePoly, SquareFreePoly};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

/// Anything that can produce the evaluated `k`-th Hessian at a point.
pub trait HessianSource: Sync {
    /// Number of basis elements.
    fn size(&self) -> usize;
    /// Number of variables of the point.
    fn nvars(&self) -> usize;
    /// Degree of every nonzero entry.
    fn entry_degree(&self) -> usize;
    /// Evaluation over `F_p`; point and entries in Montgomery form.
    fn eval_mod(&self, field: PrimeField, point: &[u64]) -> ModMatrix;
    fn eval_exact(&self, point: &[BigInt]) -> ExactMatrix;
}

/// The matrix of polynomials `(α_i α_j) f` over a basis of `A_k`.
#[derive(Clone, Debug)]
pub struct HessianSymbolic {
    pub basis: GradedBasis,
    entries: Vec<SparsePoly>,
    nvars: usize,
    entry_degree: usize,
}

fn check_degree(f: &SparsePoly, k: usize) -> Result<usize, LefschetzError> {
    let d = socle_degree(f)?;
    if 2 * k > d {
        return Err(LefschetzError::DegreeTooHigh { k, d });
    }
    Ok(d)
}

/// Builds the symbolic Hessian; entries are computed once per unordered pair.
pub fn hessian_symbolic(
    f: &SparsePoly,
    basis: &GradedBasis,
) -> Result<HessianSymbolic, LefschetzError> {
    let d = check_degree(f, basis.degree)?;
    let m = basis.len();
    let sf = if f.is_square_free() {
        SquareFreePoly::from_sparse(f).ok()
    } else {
        None
    };
    let upper: Vec<Vec<SparsePoly>> = crate::par::map_range(m, |i| {
        (i..m)
            .map(|j| {
                let op = basis.elements[i].mul(&basis.elements[j]);
                match &sf {
                    Some(s) => s.diff(&op).to_sparse(),
                    None => f.diff(&op),
                }
            })
            .collect()
    });
    let mut entries = vec![SparsePoly::zero(f.nvars()); m * m];
    for (i, row) in upper.into_iter().enumerate() {
        for (off, p) in row.into_iter().enumerate() {
            let j = i + off;
            entries[j * m + i] = p.clone();
            entries[i * m + j] = p;
        }
    }
    Ok(HessianSymbolic {
        basis: basis.clone(),
        entries,
        nvars: f.nvars(),
        entry_degree: d - 2 * basis.degree,
    })
}

impl HessianSymbolic {
    pub fn size(&self) -> usize {
        self.basis.len()
    }

    /// Entry at 0-based `(i, j)`.
    pub fn entry(&self, i: usize, j: usize) -> &SparsePoly {
        &self.entries[i * self.size() + j]
    }

    pub fn nonzero_count(&self) -> usize {
        self.entries.iter().filter(|p| !p.is_zero()).count()
    }

    pub fn is_symmetric(&self) -> bool {
        let m = self.size();
        (0..m).all(|i| (i + 1..m).all(|j| self.entry(i, j) == self.entry(j, i)))
    }

    pub fn entries(&self) -> &[SparsePoly] {
        &self.entries
    }
}

impl HessianSource for HessianSymbolic {
    fn size(&self) -> usize {
        self.basis.len()
    }

    fn nvars(&self) -> usize {
        self.nvars
    }

    fn entry_degree(&self) -> usize {
        self.entry_degree
    }

    fn eval_mod(&self, field: PrimeField, point: &[u64]) -> ModMatrix {
        let m = self.size();
        let data = crate::par::map(&self.entries, |p| p.evaluate_mod(field, point));
        ModMatrix::from_montgomery(field, m, m, data)
    }

    fn eval_exact(&self, point: &[BigInt]) -> ExactMatrix {
        let m = self.size();
        let data = crate::par::map(&self.entries, |p| {
            BigRational::from_integer(p.evaluate(point).expect("point length checked by caller"))
        });
        ExactMatrix::new(m, m, data).expect("square")
    }
}

/// Contracted multigraph behind one Hessian entry.
#[derive(Clone, Debug)]
struct Contracted {
    vertices: u8,
    edges: Vec<(u8, u8, u16)>,
}

/// `G / (α_i ∪ α_j)` with loops dropped, or `None` when the entry vanishes.
fn contract_pair(g: &Graph, a: u64, b: u64) -> Option<Contracted> {
    if a & b != 0 {
        return None;
    }
    let n = g.vertex_count();
    let mut uf = UnionFind::new(n);
    let mut u = a | b;
    while u != 0 {
        let e = u.trailing_zeros() as usize;
        let (x, y) = g.edges()[e];
        if !uf.union(x - 1, y - 1) {
            return None;
        }
        u &= u - 1;
    }
    let mut label = vec![u8::MAX; n];
    let mut next = 0u8;
    for v in 0..n {
        let r = uf.find(v);
        if label[r] == u8::MAX {
            label[r] = next;
            next += 1;
        }
        label[v] = label[r];
    }
    let edges = g
        .edges()
        .iter()
        .enumerate()
        .filter_map(|(e, &(x, y))| {
            let (lx, ly) = (label[x - 1], label[y - 1]);
            (lx != ly).then_some((lx, ly, e as u16))
        })
        .collect();
    Some(Contracted {
        vertices: next,
        edges,
    })
}

impl Contracted {
    fn value_mod(&self, field: PrimeField, point: &[u64]) -> u64 {
        match self.vertices {
            1 => field.one(),
            2 => self
                .edges
                .iter()
                .fold(0, |acc, &(_, _, e)| field.add(acc, point[e as usize])),
            v => {
                let m = v as usize - 1;
                let mut lap = vec![vec![0u64; m]; m];
                for &(a, b, e) in &self.edges {
                    let w = point[e as usize];
                    let (a, b) = (a as usize, b as usize);
                    if a < m {
                        lap[a][a] = field.add(lap[a][a], w);
                    }
                    if b < m {
                        lap[b][b] = field.add(lap[b][b], w);
                    }
                    if a < m && b < m {
                        lap[a][b] = field.sub(lap[a][b], w);
                        lap[b][a] = field.sub(lap[b][a], w);
                    }
                }
                determinant_mod(lap, field)
            }
        }
    }

    fn value_exact(&self, point: &[BigInt]) -> BigInt {
        let edges = self
            .edges
            .iter()
            .map(|&(a, b, _)| (a as usize + 1, b as usize + 1))
            .collect();
        let g = Graph::new(self.vertices as usize, edges).expect("valid contraction");
        let w: Vec<BigInt> = self
            .edges
            .iter()
            .map(|&(_, _, e)| point[e as usize].clone())
            .collect();
        weighted_tree_value(&g, &w)
    }
}

/// Pair count times edge count above which entries are contracted on demand.
const PRECOMPUTE_LIMIT: usize = 1 << 24;

/// Evaluated Hessian of `f_G` straight from the graph: entry `(i, j)` is the
/// weighted tree value of `G / (α_i ∪ α_j)`, and zero when the union repeats
/// an edge or holds a cycle.
#[derive(Clone, Debug)]
pub struct GraphHessian {
    graph: Graph,
    masks: Vec<u64>,
    entry_degree: usize,
    /// Upper triangle, row by row, when small enough to keep.
    pairs: Option<Vec<Option<Contracted>>>,
}

impl GraphHessian {
    pub fn new(g: &Graph, basis: &GradedBasis) -> Result<Self, LefschetzError> {
        if !g.is_connected() {
            return Err(crate::poly::PolyError::Disconnected.into());
        }
        let d = g.vertex_count() - 1;
        let k = basis.degree;
        if 2 * k > d {
            return Err(LefschetzError::DegreeTooHigh { k, d });
        }
        if g.edge_count() > 64 {
            return Err(crate::poly::PolyError::TooManyVariables(g.edge_count()).into());
        }
        let masks: Vec<u64> = basis
            .elements
            .iter()
            .map(|a| a.mask().ok_or(LefschetzError::NotSquareFree))
            .collect::<Result<_, _>>()?;
        let m = masks.len();
        let pairs = (m * (m + 1) / 2 * g.edge_count().max(1) <= PRECOMPUTE_LIMIT).then(|| {
            crate::par::map_range(m, |i| {
                (i..m)
                    .map(|j| contract_pair(g, masks[i], masks[j]))
                    .collect::<Vec<_>>()
            })
            .into_iter()
            .flatten()
            .collect()
        });
        Ok(GraphHessian {
            graph: g.clone(),
            masks,
            entry_degree: d - 2 * k,
            pairs,
        })
    }

    fn fill<T: Clone + Send + Sync>(
        &self,
        zero: T,
        value: impl Fn(&Contracted) -> T + Sync,
    ) -> Vec<T> {
        let m = self.masks.len();
        let rows: Vec<Vec<T>> = crate::par::map_range(m, |i| {
            (i..m)
                .map(|j| {
                    let eval = |c: Option<&Contracted>| c.map_or_else(|| zero.clone(), &value);
                    match &self.pairs {
                        Some(p) => eval(p[tri_index(m, i, j)].as_ref()),
                        None => {
                            eval(contract_pair(&self.graph, self.masks[i], self.masks[j]).as_ref())
                        }
                    }
                })
                .collect()
        });
        let mut out = vec![zero; m * m];
        for (i, row) in rows.into_iter().enumerate() {
            for (off, v) in row.into_iter().enumerate() {
                let j = i + off;
                out[j * m + i] = v.clone();
                out[i * m + j] = v;
            }
        }
        out
    }
}

/// Index of `(i, j)`, `i <= j`, in a row-major upper triangle of order `m`.
fn tri_index(m: usize, i: usize, j: usize) -> usize {
    i * m - i * i.saturating_sub(1) / 2 + (j - i)
}

impl HessianSource for GraphHessian {
    fn size(&self) -> usize {
        self.masks.len()
    }

    fn nvars(&self) -> usize {
        self.graph.edge_count()
    }

    fn entry_degree(&self) -> usize {
        self.entry_degree
    }

    fn eval_mod(&self, field: PrimeField, point: &[u64]) -> ModMatrix {
        let m = self.masks.len();
        let data = self.fill(0u64, |c| c.value_mod(field, point));
        ModMatrix::from_montgomery(field, m, m, data)
    }

    fn eval_exact(&self, point: &[BigInt]) -> ExactMatrix {
        let m = self.masks.len();
        let data = self.fill(BigInt::zero(), |c| c.value_exact(point));
        ExactMatrix::from_integers(m, m, data).expect("square")
    }
}
