//! Seeded randomized property checks, shared by the proptest suite and the
//! acceptance harness. Each function runs `cases` cases and reports the first
//! (shrunk) counterexample.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_traits::{One, Zero};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngSeed, TestCaseError, TestRunner};
use slp_core::apolarity::{pairing_matrix, select_basis};
use slp_core::graphs::{
    biconnected_components, emit_edge_bits, emit_graph6, enumerate_nonisomorphic,
    enumerate_spanning_trees, parse_edge_bits, parse_graph6, spanning_tree_count,
    weighted_tree_value, Graph, GraphFilter,
};
use slp_core::lefschetz::{hessian_symbolic, normalize_components, GraphHessian, HessianSource};
use slp_core::poly::{basis_generating_poly, DiffMonomial, SparsePoly};

pub const CASES: u32 = 100;

fn runner(cases: u32, seed: u64) -> TestRunner {
    TestRunner::new(Config {
        cases,
        rng_seed: RngSeed::Fixed(seed),
        failure_persistence: None,
        ..Config::default()
    })
}

fn run<S: Strategy>(
    cases: u32,
    seed: u64,
    strategy: S,
    test: impl Fn(S::Value) -> Result<(), TestCaseError>,
) -> Result<(), String>
where
    S::Value: std::fmt::Debug,
{
    runner(cases, seed)
        .run(&strategy, test)
        .map_err(|e| e.to_string())
}

/// Multigraph on `1..=max_n` vertices with up to `max_e` edges, loops allowed.
pub fn multigraph(max_n: usize, max_e: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(move |n| {
        prop::collection::vec((1..=n, 1..=n), 0..=max_e)
            .prop_map(move |edges| Graph::new(n, edges).unwrap())
    })
}

/// Connected graph: a random spanning tree plus extra edges. Simple graphs
/// drop duplicate and loop edges.
pub fn connected(
    min_n: usize,
    max_n: usize,
    max_extra: usize,
    simple: bool,
) -> impl Strategy<Value = Graph> {
    (min_n..=max_n).prop_flat_map(move |n| {
        let parents: Vec<BoxedStrategy<usize>> = (2..=n).map(|v| (1..v).boxed()).collect();
        (
            parents,
            prop::collection::vec((1..=n, 1..=n), 0..=max_extra),
        )
            .prop_map(move |(parents, extra)| {
                let mut edges: Vec<(usize, usize)> = parents
                    .iter()
                    .enumerate()
                    .map(|(i, &p)| (p, i + 2))
                    .collect();
                edges.extend(extra);
                if simple {
                    edges.retain(|&(u, v)| u != v);
                    let mut seen = std::collections::HashSet::new();
                    edges.retain(|&(u, v)| seen.insert((u.min(v), u.max(v))));
                }
                Graph::new(n, edges).unwrap()
            })
    })
}

fn ints(len: usize, lo: i64, hi: i64) -> impl Strategy<Value = Vec<BigInt>> {
    prop::collection::vec(lo..=hi, len).prop_map(|v| v.into_iter().map(BigInt::from).collect())
}

/// Matrix-tree determinant agrees with brute-force spanning-tree enumeration,
/// both unweighted and with random integer weights.
pub fn matrix_tree(cases: u32, seed: u64) -> Result<(), String> {
    let s = multigraph(6, 10).prop_flat_map(|g| {
        let m = g.edge_count();
        (Just(g), ints(m, -5, 9))
    });
    run(cases, seed, s, |(g, w)| {
        let trees = enumerate_spanning_trees(&g);
        prop_assert_eq!(spanning_tree_count(&g), BigInt::from(trees.len()));
        let brute: BigInt = trees
            .iter()
            .map(|t| t.iter().map(|e| w[e - 1].clone()).product::<BigInt>())
            .sum();
        prop_assert_eq!(weighted_tree_value(&g, &w), brute);
        Ok(())
    })
}

/// Contraction-based Hessian equals the symbolic one at a random point.
pub fn fast_vs_symbolic_hessian(cases: u32, seed: u64) -> Result<(), String> {
    let s = connected(2, 6, 5, true).prop_flat_map(|g| {
        let d = g.vertex_count() - 1;
        let m = g.edge_count();
        (Just(g), 0..=d / 2, ints(m, -20, 20))
    });
    run(cases, seed, s, |(g, k, pt)| {
        let f = basis_generating_poly(&g).unwrap();
        let basis = select_basis(&f, k).unwrap();
        let sym = hessian_symbolic(&f, &basis).unwrap();
        let fast = GraphHessian::new(&g, &basis).unwrap();
        prop_assert_eq!(fast.size(), sym.size());
        prop_assert!(fast.eval_exact(&pt) == sym.eval_exact(&pt));
        Ok(())
    })
}

/// The pairing `A_i × A_{d-i} → A_d` is nonsingular for every `i`. Cases
/// sample the connected graphs on at most 6 vertices under a random edge
/// order, which changes the chosen bases.
pub fn poincare_pairing(cases: u32, seed: u64) -> Result<(), String> {
    let graphs: Vec<Graph> = (1..=6)
        .flat_map(|n| enumerate_nonisomorphic(n, GraphFilter::Connected).unwrap())
        .collect();
    let s = (0..graphs.len()).prop_flat_map(move |i| {
        let g = graphs[i].clone();
        let order: Vec<usize> = (0..g.edge_count()).collect();
        (Just(g), Just(order).prop_shuffle())
    });
    run(cases, seed, s, |(g, order)| {
        let edges: Vec<_> = order.iter().map(|&i| g.edges()[i]).collect();
        let g = Graph::new(g.vertex_count(), edges).unwrap();
        let f = basis_generating_poly(&g).unwrap();
        let d = g.vertex_count() - 1;
        let bases: Vec<_> = (0..=d).map(|i| select_basis(&f, i).unwrap()).collect();
        for i in 0..=d {
            let p = pairing_matrix(&f, &bases[i], &bases[d - i]).unwrap();
            prop_assert_eq!(p.rows(), p.cols());
            prop_assert_eq!(p.rank(), p.rows(), "i = {}", i);
        }
        Ok(())
    })
}

fn lift(p: &SparsePoly, edge_map: &[usize], nvars: usize) -> SparsePoly {
    SparsePoly::from_terms(
        nvars,
        p.terms().map(|(e, c)| {
            let mut x = vec![0u16; nvars];
            for (i, &k) in e.iter().enumerate() {
                x[edge_map[i] - 1] = k;
            }
            (x, c.clone())
        }),
    )
}

/// `f_G` is the product of `f_B` over its biconnected components `B`.
pub fn block_multiplicativity(cases: u32, seed: u64) -> Result<(), String> {
    run(cases, seed, connected(1, 7, 4, false), |g| {
        let f = basis_generating_poly(&g).unwrap();
        let m = g.edge_count();
        let mut prod = SparsePoly::constant(m, 1);
        let mut covered = vec![false; m];
        for c in biconnected_components(&g).unwrap() {
            for &e in &c.edge_map {
                prop_assert!(!covered[e - 1], "edge {} in two blocks", e);
                covered[e - 1] = true;
            }
            let fb = basis_generating_poly(&c.graph).unwrap();
            prod = prod.try_mul(&lift(&fb, &c.edge_map, m)).unwrap();
        }
        prop_assert!(covered.iter().all(|&c| c));
        prop_assert_eq!(prod, f);
        Ok(())
    })
}

/// Loops are annihilated by `∂_e`, parallel pairs by `∂_e ∂_e'`, and every
/// square `∂_e^2` annihilates.
pub fn annihilator_relations(cases: u32, seed: u64) -> Result<(), String> {
    run(cases, seed, connected(1, 5, 5, false), |g| {
        let f = basis_generating_poly(&g).unwrap();
        let edges = g.edges();
        for (i, &(u, v)) in edges.iter().enumerate() {
            let e = i + 1;
            prop_assert!(f.diff(&DiffMonomial::new([e, e]).unwrap()).is_zero());
            if u == v {
                prop_assert!(f.diff(&DiffMonomial::new([e]).unwrap()).is_zero());
            }
            for (j, &(a, b)) in edges.iter().enumerate().skip(i + 1) {
                if u != v && (a.min(b), a.max(b)) == (u.min(v), u.max(v)) {
                    prop_assert!(f.diff(&DiffMonomial::new([e, j + 1]).unwrap()).is_zero());
                }
            }
        }
        Ok(())
    })
}

/// `Σ x_i ∂_i f = d f` for `f_G` and for every derivative `α f_G`.
pub fn euler_identity(cases: u32, seed: u64) -> Result<(), String> {
    let s = connected(1, 6, 5, false).prop_flat_map(|g| {
        let m = g.edge_count().max(1);
        (Just(g), prop::collection::vec(1..=m, 0..3))
    });
    run(cases, seed, s, |(g, alpha)| {
        let f = basis_generating_poly(&g).unwrap();
        let n = f.nvars();
        let h = if n == 0 {
            f
        } else {
            f.diff(&DiffMonomial::new(alpha).unwrap())
        };
        let d = h.total_degree().unwrap_or(0);
        let mut lhs = SparsePoly::zero(h.nvars());
        for i in 1..=h.nvars() {
            lhs = lhs
                .try_add(
                    &SparsePoly::var(h.nvars(), i)
                        .try_mul(&h.diff_var(i))
                        .unwrap(),
                )
                .unwrap();
        }
        prop_assert_eq!(lhs, h.scale(&BigInt::from(d)));
        Ok(())
    })
}

fn small_poly(nvars: usize) -> impl Strategy<Value = SparsePoly> {
    prop::collection::vec((prop::collection::vec(0u16..3, nvars), -6i64..=6), 0..4).prop_map(
        move |t| SparsePoly::from_terms(nvars, t.into_iter().map(|(e, c)| (e, BigInt::from(c)))),
    )
}

/// Normalizing `c·F` gives the same vector for every nonzero integer `c`.
pub fn normalization_uniqueness(cases: u32, seed: u64) -> Result<(), String> {
    let s = (1usize..4, 1usize..6).prop_flat_map(|(n, len)| {
        (
            prop::collection::vec(small_poly(n), len),
            0..len,
            small_poly(n).prop_filter("nonzero", |p| !p.is_zero()),
            (-30i64..=30).prop_filter("nonzero", |c| *c != 0),
        )
    });
    run(cases, seed, s, |(mut f, i0, pivot, c)| {
        f[i0] = pivot;
        let mut a = f.clone();
        normalize_components(&mut a, i0);
        let mut b: Vec<SparsePoly> = f.iter().map(|p| p.scale(&BigInt::from(c))).collect();
        normalize_components(&mut b, i0);
        prop_assert_eq!(&a, &b);
        let content = a.iter().fold(BigInt::zero(), |g, p| {
            num_integer::Integer::gcd(&g, &p.content())
        });
        prop_assert!(content.is_one());
        Ok(())
    })
}

/// graph6 and edge-bit text round-trip every simple graph.
pub fn format_round_trips(cases: u32, seed: u64) -> Result<(), String> {
    let s = (1usize..=11).prop_flat_map(|n| {
        (
            Just(n),
            prop::collection::vec(any::<bool>(), n * (n - 1) / 2),
        )
    });
    run(cases, seed, s, |(n, bits)| {
        let mut edges = Vec::new();
        let mut it = bits.iter();
        for j in 2..=n {
            for i in 1..j {
                if *it.next().unwrap() {
                    edges.push((i, j));
                }
            }
        }
        let g = Graph::new(n, edges).unwrap().sorted_edges();
        let g6 = emit_graph6(&g).unwrap();
        prop_assert_eq!(parse_graph6(&g6).unwrap().sorted_edges(), g.clone());
        if n >= 2 {
            let eb = emit_edge_bits(&g).unwrap();
            prop_assert_eq!(eb.chars().filter(|c| *c != ' ').count(), n * (n - 1) / 2);
            prop_assert_eq!(parse_edge_bits(&eb, n).unwrap().sorted_edges(), g);
        }
        Ok(())
    })
}

/// All suites, by name.
pub const SUITES: [(&str, fn(u32, u64) -> Result<(), String>); 8] = [
    ("matrix-tree", matrix_tree),
    ("fast vs symbolic Hessian", fast_vs_symbolic_hessian),
    ("Poincaré pairing", poincare_pairing),
    ("block multiplicativity", block_multiplicativity),
    ("annihilator relations", annihilator_relations),
    ("Euler identity", euler_identity),
    ("normalization uniqueness", normalization_uniqueness),
    ("format round trips", format_round_trips),
];
