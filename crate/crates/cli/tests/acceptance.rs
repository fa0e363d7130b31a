//! Acceptance run: one `criterion N: PASS|FAIL|SKIP` line per criterion.
//!
//! Criterion 8 (the full 8-vertex screen) runs only with `SLP_FULL_SCREEN=1`.

#[path = "../../core/tests/props/mod.rs"]
mod props;

use clap::Parser;
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use slp_cli::{run, Cli};
use slp_core::apolarity::{hilbert_function, select_basis};
use slp_core::fixtures;
use slp_core::graphs::{canonical_form, emit_graph6, enumerate_nonisomorphic, Graph, GraphFilter};
use slp_core::lefschetz::{
    graph_hessian, hessian_symbolic, reconstruct_kernel, slp_check_at_point, sz_screen_degrees,
    verify_certificate, HessianSource, KernelCertificate, ReconstructOptions, ScreenParams,
};
use slp_core::linalg::{certified_nullity, exact_kernel_vector};
use slp_core::par;
use slp_core::poly::{basis_generating_poly, DiffMonomial, SparsePoly};
use std::time::{Duration, Instant};

type Check = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn ok<T, E: std::fmt::Display>(r: Result<T, E>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn poly(text: &str, n: usize) -> SparsePoly {
    SparsePoly::parse(text, n).expect("valid polynomial")
}

fn random_point(rng: &mut ChaCha8Rng, n: usize, s: u64) -> Vec<BigInt> {
    (0..n).map(|_| BigInt::from(rng.gen_range(1..=s))).collect()
}

/// `a` and `b` are proportional polynomial vectors.
fn proportional(a: &[SparsePoly], b: &[SparsePoly]) -> bool {
    let Some(j) = a.iter().position(|p| !p.is_zero()) else {
        return false;
    };
    a.len() == b.len()
        && a.iter()
            .zip(b)
            .all(|(ai, bi)| ai.try_mul(&b[j]).ok() == bi.try_mul(&a[j]).ok())
}

fn criterion1() -> Check {
    let f = fixtures::ikeda();
    let basis = ok(select_basis(&f, 2))?;
    let expected_basis: Vec<DiffMonomial> = [
        "(1,1)", "(1,2)", "(1,3)", "(1,4)", "(2,2)", "(2,3)", "(2,4)", "(3,3)", "(3,4)", "(4,4)",
    ]
    .iter()
    .map(|t| t.parse().unwrap())
    .collect();
    ensure!(
        basis.elements == expected_basis,
        "B_2 = {}",
        basis.to_text()
    );
    let expected = [
        ["0", "6*x3", "6*x2", "0", "0", "6*x1", "0", "0", "0", "0"],
        ["6*x3", "0", "6*x1", "0", "6*x4", "0", "6*x2", "0", "0", "0"],
        ["6*x2", "6*x1", "0", "0", "0", "0", "0", "0", "0", "0"],
        ["0", "0", "0", "0", "6*x2", "0", "0", "0", "0", "0"],
        ["0", "6*x4", "0", "6*x2", "0", "0", "6*x1", "0", "0", "0"],
        ["6*x1", "0", "0", "0", "0", "0", "0", "0", "0", "0"],
        ["0", "6*x2", "0", "0", "6*x1", "0", "0", "0", "0", "0"],
        ["0", "0", "0", "0", "0", "0", "0", "0", "12*x4", "12*x3"],
        ["0", "0", "0", "0", "0", "0", "0", "12*x4", "12*x3", "0"],
        ["0", "0", "0", "0", "0", "0", "0", "12*x3", "0", "0"],
    ];
    let h = ok(hessian_symbolic(&f, &basis))?;
    for (i, row) in expected.iter().enumerate() {
        for (j, e) in row.iter().enumerate() {
            ensure!(
                *h.entry(i, j) == poly(e, 4),
                "entry ({},{}) = {}",
                i + 1,
                j + 1,
                h.entry(i, j)
            );
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..2 {
        let pt = random_point(&mut rng, 4, 1_000_000);
        ensure!(
            num_traits::Zero::is_zero(&ok(h.eval_exact(&pt).determinant())?),
            "det nonzero at {pt:?}"
        );
    }
    let kernel: Vec<SparsePoly> = [
        "0", "0", "x1*x2^2", "x1^3", "0", "-x2^3", "-x1^2*x2", "0", "0", "0",
    ]
    .iter()
    .map(|t| poly(t, 4))
    .collect();
    let cert = KernelCertificate {
        k: 2,
        nvars: 4,
        i0: 3,
        basis: basis.elements.clone(),
        components: kernel.clone(),
        degrees: None,
        point: None,
    };
    let report = ok(verify_certificate(&f, &cert, 1))?;
    ensure!(
        report.passed(),
        "explicit kernel: {:?}",
        report.first_failure
    );
    let r = ok(reconstruct_kernel(
        &f,
        &h,
        &basis.elements,
        2,
        &ReconstructOptions::default(),
    ))?;
    ensure!(
        proportional(&r.certificate.components, &kernel),
        "reconstructed {}",
        r.certificate.to_text()
    );
    let hf = ok(hilbert_function(&f))?;
    ensure!(hf.values() == [1, 4, 10, 10, 4, 1], "Hilbert function {hf}");
    Ok(format!(
        "B_2 and H_B2 match the reference matrix; kernel rebuilt; {hf}"
    ))
}

fn criterion2() -> Check {
    let g = fixtures::fig1();
    let f = ok(basis_generating_poly(&g))?;
    let hf = ok(hilbert_function(&f))?;
    ensure!(
        hf.values() == [1, 13, 70, 166, 166, 70, 13, 1],
        "Hilbert function {hf}"
    );
    let b3 = ok(select_basis(&f, 3))?;
    let (first, last) = (
        b3.elements[0].to_string(),
        b3.elements[b3.len() - 1].to_string(),
    );
    ensure!(
        b3.len() == 166 && first == "(1,2,3)" && last == "(11,12,13)",
        "|B_3| = {}, {first}..{last}",
        b3.len()
    );
    let h = ok(hessian_symbolic(&f, &b3))?;
    ensure!(
        h.nonzero_count() == 8450,
        "{} nonzero entries",
        h.nonzero_count()
    );
    let fast = ok(graph_hessian(&g, 3, true, 0))?;
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..5 {
        let pt = random_point(&mut rng, 13, 1_000_000_000);
        let nullity = certified_nullity(&fast.eval_exact(&pt));
        ensure!(nullity == 1, "nullity {nullity} at {pt:?}");
    }
    Ok(format!(
        "{hf}; |B_3| = 166 ({first}..{last}); 8450 nonzero entries; nullity 1 at 5 points"
    ))
}

fn criterion3() -> Check {
    let f = ok(basis_generating_poly(&fixtures::fig1()))?;
    let cert = fixtures::fig1_certificate();
    let report = ok(verify_certificate(&f, &cert, 3))?;
    ensure!(report.passed(), "verification: {:?}", report.first_failure);
    ensure!(
        report.symbolic_kernel == Some(true)
            && report.pairing_identity == Some(true)
            && report.random_points == Some(true),
        "{report:?}"
    );
    let zeros = cert.zero_count();
    let deg6 = cert
        .components
        .iter()
        .filter(|p| !p.is_zero() && p.total_degree() == Some(6))
        .count();
    ensure!(
        zeros == 90 && deg6 == 76,
        "{zeros} zero and {deg6} degree-6 components"
    );
    let f2 = [
        poly("2", 13),
        poly("x1 + x5 + x13", 13),
        poly("x2 + x6", 13),
        poly("x10^2*x11*x12", 13),
    ]
    .iter()
    .try_fold(SparsePoly::constant(13, 1), |acc, p| acc.try_mul(p))
    .map_err(|e| e.to_string())?;
    ensure!(cert.components[1] == f2, "F_2 = {}", cert.components[1]);
    ensure!(f2.num_terms() == 6, "F_2 has {} terms", f2.num_terms());
    Ok("H·F = 0, pairing identity, random points; 90 zero / 76 degree-6; F_2 closed form".into())
}

fn criterion4() -> Check {
    let out = std::env::temp_dir().join(format!("slp-acceptance-{}.cert", std::process::id()));
    let out_str = out.display().to_string();
    let cli = ok(Cli::try_parse_from([
        "slp",
        "reconstruct",
        "fig1",
        "--k",
        "3",
        "--out",
        &out_str,
    ]))?;
    let mut buf = Vec::new();
    let code = run(&cli, &mut buf).map_err(|e| format!("exit {}: {:#}", e.code, e.error))?;
    ensure!(code == 0, "exit code {code}");
    let report: serde_json::Value = ok(serde_json::from_slice(&buf))?;
    let text = ok(std::fs::read_to_string(&out))?;
    let _ = std::fs::remove_file(&out);
    let degrees = report["degrees"].clone();
    ensure!(
        degrees == serde_json::json!([1, 1, 1, 0, 1, 1, 1, 0, 2, 2, 2, 2, 1]),
        "degrees {degrees}"
    );
    ensure!(report["i0"] == 2, "i0 {}", report["i0"]);
    ensure!(
        text == fixtures::FIG1_CERT,
        "certificate text differs from the fixture"
    );
    Ok(format!(
        "D = {degrees}; certificate identical to the fixture"
    ))
}

fn criterion5() -> Check {
    let g = fixtures::fig7();
    let f = ok(basis_generating_poly(&g))?;
    let hf = ok(hilbert_function(&f))?;
    ensure!(
        hf.values() == [1, 11, 51, 112, 112, 51, 11, 1],
        "Hilbert function {hf}"
    );
    let h2 = ok(graph_hessian(&g, 2, true, 0))?;
    let ones = vec![BigInt::from(1); 11];
    let m = h2.eval_exact(&ones);
    let nullity = certified_nullity(&m);
    ensure!(nullity == 1, "nullity {nullity} at ones");
    let v = exact_kernel_vector(&m).ok_or("no kernel vector")?;
    let cert = fixtures::fig7_certificate();
    let b2 = ok(select_basis(&f, 2))?;
    ensure!(cert.basis == b2.elements, "fixture basis differs from B_2");
    for t in ["(2,4)", "(5,11)", "(6,11)", "(8,10)"] {
        let a: DiffMonomial = t.parse().unwrap();
        ensure!(!b2.elements.contains(&a), "{t} is in B_2");
    }
    let table: Vec<BigInt> = cert
        .components
        .iter()
        .map(|p| p.coeff(&vec![0; 11]))
        .collect();
    ensure!(
        cert.components
            .iter()
            .all(|p| p.total_degree().unwrap_or(0) == 0),
        "non-constant entries"
    );
    let nonzero: Vec<&BigInt> = table.iter().filter(|c| **c != 0.into()).collect();
    ensure!(nonzero.len() == 16, "{} nonzero entries", nonzero.len());
    ensure!(
        nonzero
            .iter()
            .all(|c| [3u32, 4, 10].iter().any(|&x| *c.magnitude() == x.into())),
        "values outside {{±3, ±4, ±10}}"
    );
    let j = table.iter().position(|c| *c != 0.into()).unwrap();
    ensure!(
        v.iter()
            .zip(&table)
            .all(|(vi, ti)| vi * &table[j] == ti * &v[j]),
        "kernel vector at ones differs from the table"
    );
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let pt = random_point(&mut rng, 11, 1_000_000_000);
    for k in [2, 3] {
        let h = ok(graph_hessian(&g, k, true, 0))?;
        ensure!(
            slp_check_at_point(&h, &pt).holds(),
            "SLP_{k} fails at {pt:?}"
        );
    }
    Ok(format!(
        "{hf}; nullity 1 at ones; 16 entries match; SLP_2, SLP_3 hold at a random point"
    ))
}

fn criterion6() -> Check {
    let c = ok(enumerate_nonisomorphic(8, GraphFilter::Connected))?;
    let b = c.iter().filter(|g| g.is_biconnected()).count();
    ensure!(
        c.len() == 11117 && b == 7123,
        "{} connected, {b} biconnected",
        c.len()
    );
    Ok("11117 connected, 7123 biconnected".into())
}

fn screen_all(
    graphs: &[Graph],
    ks: impl Fn(usize) -> Vec<usize> + Sync,
    reps: usize,
) -> Result<Vec<(Graph, usize)>, String> {
    let found = par::map(graphs, |g| -> Result<Vec<(Graph, usize)>, String> {
        let id = emit_graph6(g).map_err(|e| e.to_string())?;
        let reports = sz_screen_degrees(
            g,
            &id,
            &ks(g.vertex_count() - 1),
            &ScreenParams {
                reps,
                ..Default::default()
            },
        )
        .map_err(|e| format!("{id}: {e}"))?;
        let hits: Vec<(Graph, usize)> = reports
            .iter()
            .filter(|r| r.candidate)
            .map(|r| (g.clone(), r.k))
            .collect();
        Ok(hits)
    });
    found.into_iter().try_fold(Vec::new(), |mut acc, r| {
        acc.extend(r?);
        Ok(acc)
    })
}

fn criterion7() -> Check {
    let mut graphs = Vec::new();
    for n in 1..=7 {
        graphs.extend(ok(enumerate_nonisomorphic(n, GraphFilter::Biconnected))?);
    }
    let hits = screen_all(&graphs, |d| (1..=d / 2).collect(), 3)?;
    ensure!(
        hits.is_empty(),
        "{} candidates, first {}",
        hits.len(),
        hits[0].0
    );
    Ok(format!("{} biconnected graphs, 0 candidates", graphs.len()))
}

fn criterion8() -> Check {
    let graphs = ok(enumerate_nonisomorphic(8, GraphFilter::Biconnected))?;
    let hits = screen_all(&graphs, |_| vec![3], 100)?;
    let canon = |g: &Graph| {
        canonical_form(g)
            .map(|c| c.code())
            .map_err(|e| e.to_string())
    };
    let codes: Vec<u128> = hits
        .iter()
        .map(|(g, _)| canon(g))
        .collect::<Result<_, _>>()?;
    let fig1 = canon(&fixtures::fig1())?;
    let fig3 = canon(&fixtures::fig3())?;
    let min_edges = hits.iter().map(|(g, _)| g.edge_count()).min().unwrap_or(0);
    ensure!(hits.len() == 152, "{} candidates", hits.len());
    ensure!(
        codes.contains(&fig1) && codes.contains(&fig3),
        "figure graphs missing"
    );
    ensure!(min_edges == 13, "fewest edges {min_edges}");
    Ok("152 candidates, including both figure graphs; fewest edges 13".into())
}

fn criterion9() -> Check {
    for (i, (name, suite)) in props::SUITES.iter().enumerate() {
        suite(props::CASES, i as u64 + 1).map_err(|e| format!("{name}: {e}"))?;
    }
    Ok(format!(
        "{} suites × {} cases",
        props::SUITES.len(),
        props::CASES
    ))
}

fn main() {
    // libtest flags such as --nocapture are accepted and ignored.
    let criteria: [(u32, fn() -> Check, Duration); 9] = [
        (1, criterion1, Duration::from_secs(1)),
        (2, criterion2, Duration::from_secs(60)),
        (3, criterion3, Duration::from_secs(60)),
        (4, criterion4, Duration::from_secs(2 * 3600)),
        (5, criterion5, Duration::from_secs(60)),
        (6, criterion6, Duration::from_secs(600)),
        (7, criterion7, Duration::from_secs(1800)),
        (8, criterion8, Duration::from_secs(24 * 3600)),
        (9, criterion9, Duration::from_secs(1800)),
    ];
    let full = std::env::var("SLP_FULL_SCREEN").is_ok_and(|v| v == "1");
    let mut failed = 0;
    for (n, check, budget) in criteria {
        if n == 8 && !full {
            println!("criterion 8: SKIP (set SLP_FULL_SCREEN=1 to run the full 8-vertex screen)");
            continue;
        }
        let start = Instant::now();
        let result = std::panic::catch_unwind(check).unwrap_or_else(|_| Err("panicked".into()));
        let took = start.elapsed();
        let result = match result {
            Ok(_) if took > budget => Err(format!("took {took:.1?}, budget {budget:?}")),
            r => r,
        };
        match result {
            Ok(msg) => println!("criterion {n}: PASS ({took:.1?}) {msg}"),
            Err(msg) => {
                failed += 1;
                println!("criterion {n}: FAIL ({took:.1?}) {msg}");
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
