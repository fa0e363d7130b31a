//! Command implementations behind the `slp` binary.
//!
//! Each command writes its report to the given writer and returns the process
//! exit code: 0 success or property holds, 1 property fails as computed,
//! 2 usage or parse error, 3 internal guard (budget, kernel dimension).

use anyhow::anyhow;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;
use slp_core::apolarity::{graph_hilbert_mod_p, hilbert_function, select_basis, ApolarityError};
use slp_core::fixtures;
use slp_core::graphs::{
    emit_graph6, enumerate_nonisomorphic, parse_edge_bits, parse_graph6, read_records, Graph,
    GraphFilter,
};
use slp_core::lefschetz::{
    graph_hessian, poly_hessian, reconstruct_kernel, slp_check_at_point, slp_full_check, sz_screen,
    sz_screen_degrees, verify_certificate, FullCheck, HessianSource, KernelCertificate,
    LefschetzError, ReconstructMode, ReconstructOptions, ScreenParams, ScreenReport, Target,
};
use slp_core::par;
use slp_core::poly::{basis_generating_poly, SparsePoly};
use std::io::Write;
use std::path::PathBuf;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILS: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_GUARD: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "slp",
    version,
    about = "Strong Lefschetz checks for spanning-tree generating polynomials"
)]
pub struct Cli {
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Worker threads; 1 runs everything sequentially.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Hilbert function of A = Q/Ann(f).
    Hilbert(HilbertArgs),
    /// SLP at one random point for every k, or at a given point.
    Check(CheckArgs),
    /// Schwartz–Zippel screening of a corpus.
    Screen(ScreenArgs),
    /// Verify a kernel certificate.
    Verify(VerifyArgs),
    /// Rebuild the polynomial kernel vector of a singular Hessian.
    Reconstruct(ReconstructArgs),
}

#[derive(Args, Debug, Clone)]
pub struct InputArgs {
    /// Fixture name (fig1, fig3, fig7, triangle, ikeda) or a file with one record.
    pub input: String,
    /// How to read the record.
    #[arg(long, value_enum, default_value_t = Format::Auto)]
    pub format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Auto,
    Graph6,
    Bits,
    Poly,
}

#[derive(Args, Debug)]
pub struct HilbertArgs {
    #[command(flatten)]
    pub input: InputArgs,
    /// Compute basis sizes mod word-sized primes (graphs only).
    #[arg(long)]
    pub modular: bool,
}

#[derive(Args, Debug)]
pub struct CheckArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(long)]
    pub k: Option<usize>,
    /// Comma-separated integers, or `ones`.
    #[arg(long)]
    pub point: Option<String>,
    #[arg(long, default_value_t = 100)]
    pub reps: usize,
    #[arg(long, default_value_t = 1_000_000_000)]
    pub s_max: u64,
}

#[derive(Args, Debug)]
pub struct ScreenArgs {
    /// File of graph6 or edge-bit records.
    #[arg(long, conflicts_with = "enumerate")]
    pub corpus: Option<PathBuf>,
    /// Screen every simple connected graph on this many vertices.
    #[arg(long)]
    pub enumerate: Option<usize>,
    /// Degree to screen; every admissible k when omitted.
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long, default_value_t = 100)]
    pub reps: usize,
    #[arg(long, default_value_t = 1_000_000_000)]
    pub s_max: u64,
    #[arg(long)]
    pub biconnected_only: bool,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub input: InputArgs,
    /// Certificate file, or the fixture name of a shipped certificate (fig1, fig7).
    #[arg(long)]
    pub cert: String,
}

#[derive(Args, Debug)]
pub struct ReconstructArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(long)]
    pub k: usize,
    /// 1-based normalizing index.
    #[arg(long)]
    pub i0: Option<usize>,
    /// Write the certificate here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Mode::Anchored)]
    pub mode: Mode,
    #[arg(long, default_value_t = 8)]
    pub samples_per_var: usize,
    #[arg(long, default_value_t = 7)]
    pub max_degree: usize,
    #[arg(long, default_value_t = 0)]
    pub grid_offset: u64,
    #[arg(long)]
    pub prime_power_grid: bool,
    #[arg(long, default_value_t = 6)]
    pub max_primes: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Anchored,
    Pointwise,
}

/// An error with its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub error: anyhow::Error,
}

impl<E: Into<anyhow::Error>> From<E> for Failure {
    fn from(e: E) -> Self {
        let error = e.into();
        let code = match error.downcast_ref::<LefschetzError>() {
            Some(LefschetzError::KernelDimension { .. } | LefschetzError::Reconstruction(_)) => {
                EXIT_GUARD
            }
            Some(LefschetzError::Apolarity(a)) if guard(a) => EXIT_GUARD,
            _ => match error.downcast_ref::<ApolarityError>() {
                Some(a) if guard(a) => EXIT_GUARD,
                _ => EXIT_USAGE,
            },
        };
        Failure { code, error }
    }
}

fn guard(a: &ApolarityError) -> bool {
    matches!(
        a,
        ApolarityError::TooLarge { .. } | ApolarityError::Unstable
    )
}

fn usage(msg: impl std::fmt::Display) -> Failure {
    Failure {
        code: EXIT_USAGE,
        error: anyhow!("{msg}"),
    }
}

/// A resolved input: a graph with an id, or a polynomial.
#[derive(Clone, Debug)]
pub struct Input {
    pub name: String,
    pub target: Target,
}

impl Input {
    fn poly(&self) -> Result<SparsePoly, Failure> {
        Ok(match &self.target {
            Target::Graph { graph, .. } => basis_generating_poly(graph)?,
            Target::Poly(f) => f.clone(),
        })
    }
}

fn vertices_for_bits(digits: usize) -> Option<usize> {
    (1..=64).find(|n| n * (n - 1) / 2 == digits)
}

/// Reads one record as a graph or polynomial.
pub fn parse_record(text: &str, format: Format) -> Result<Target, Failure> {
    let text = text.trim();
    let looks_bits = !text.is_empty() && text.chars().all(|c| c == '0' || c == '1' || c == ' ');
    let format = match format {
        Format::Auto if text.contains('x') => Format::Poly,
        Format::Auto if looks_bits => Format::Bits,
        Format::Auto => Format::Graph6,
        f => f,
    };
    Ok(match format {
        Format::Poly => Target::Poly(text.parse()?),
        Format::Bits => {
            let digits = text.chars().filter(|c| *c != ' ').count();
            let n = vertices_for_bits(digits)
                .ok_or_else(|| usage(format!("{digits} edge digits is not C(n,2) for any n")))?;
            Target::Graph {
                id: text.to_string(),
                graph: parse_edge_bits(text, n)?,
            }
        }
        Format::Graph6 | Format::Auto => Target::Graph {
            id: text.to_string(),
            graph: parse_graph6(text)?,
        },
    })
}

/// Resolves a fixture name or the first record of a file.
pub fn resolve_input(args: &InputArgs) -> Result<Input, Failure> {
    let name = args.input.clone();
    if let Some(graph) = fixtures::graph(&name) {
        return Ok(Input {
            target: Target::Graph {
                id: name.clone(),
                graph,
            },
            name,
        });
    }
    if name == "ikeda" {
        return Ok(Input {
            target: Target::Poly(fixtures::ikeda()),
            name,
        });
    }
    let text = std::fs::read_to_string(&name).map_err(|e| usage(format!("{name}: {e}")))?;
    let records = read_records(&text);
    let (_, first) = records
        .first()
        .ok_or_else(|| usage(format!("{name}: no records")))?;
    Ok(Input {
        target: parse_record(first, args.format)?,
        name,
    })
}

fn parse_point(text: &str, n: usize) -> Result<Vec<num_bigint::BigInt>, Failure> {
    if text == "ones" {
        return Ok(vec![1.into(); n]);
    }
    let pt: Vec<num_bigint::BigInt> = text
        .split(',')
        .map(|t| {
            t.trim()
                .parse()
                .map_err(|_| usage(format!("bad point entry {t:?}")))
        })
        .collect::<Result<_, _>>()?;
    if pt.len() != n {
        return Err(usage(format!(
            "point has {} entries, expected {n}",
            pt.len()
        )));
    }
    Ok(pt)
}

fn emit(out: &mut dyn Write, value: &serde_json::Value) -> Result<(), Failure> {
    writeln!(out, "{}", serde_json::to_string(value)?)?;
    Ok(())
}

pub fn cmd_hilbert(cli_seed: u64, args: &HilbertArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let input = resolve_input(&args.input)?;
    let h = match (&input.target, args.modular) {
        (Target::Graph { graph, .. }, true) => graph_hilbert_mod_p(graph, cli_seed)?,
        _ => hilbert_function(&input.poly()?)?,
    };
    emit(
        out,
        &json!({
            "input": input.name,
            "hilbert": h.values(),
            "socle_degree": h.socle_degree(),
            "text": h.to_string(),
        }),
    )?;
    Ok(EXIT_OK)
}

pub fn cmd_check(seed: u64, args: &CheckArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let input = resolve_input(&args.input)?;
    let target = &input.target;
    let d = target.socle_degree()?;
    let params = ScreenParams {
        k: args.k.unwrap_or(1),
        reps: args.reps,
        s_max: args.s_max,
        seed,
    };
    if let Some(k) = args.k {
        if 2 * k > d {
            return Err(LefschetzError::DegreeTooHigh { k, d }.into());
        }
    }
    if let Some(text) = &args.point {
        let point = parse_point(text, target.nvars())?;
        let ks: Vec<usize> = args.k.map_or_else(|| (0..=d / 2).collect(), |k| vec![k]);
        let mut all_hold = true;
        let mut results = Vec::new();
        for k in ks {
            let h = target.hessian(k)?;
            let outcome = slp_check_at_point(h.as_ref(), &point);
            all_hold &= outcome.holds();
            let mut v = serde_json::to_value(outcome)?;
            v["k"] = json!(k);
            v["size"] = json!(h.size());
            results.push(v);
        }
        emit(
            out,
            &json!({ "input": input.name, "point": text, "checks": results }),
        )?;
        return Ok(if all_hold { EXIT_OK } else { EXIT_FAILS });
    }
    let report = match (args.k, target) {
        (Some(k), Target::Graph { id, graph }) => {
            let r = sz_screen(graph, id, &ScreenParams { k, ..params })?;
            let code = if r.candidate { EXIT_FAILS } else { EXIT_OK };
            emit(out, &serde_json::to_value(&r)?)?;
            return Ok(code);
        }
        _ => slp_full_check(target, &params)?,
    };
    let code = match &report {
        FullCheck::Witness { .. } => EXIT_OK,
        FullCheck::Escalated {
            screen: Some(s), ..
        } if !s.candidate => EXIT_OK,
        FullCheck::Escalated { .. } => EXIT_FAILS,
    };
    let mut v = serde_json::to_value(&report)?;
    v["input"] = json!(input.name);
    emit(out, &v)?;
    Ok(code)
}

/// Graphs to screen, with their ids.
fn screen_corpus(args: &ScreenArgs) -> Result<Vec<(String, Graph)>, Failure> {
    let mut graphs = match (&args.corpus, args.enumerate) {
        (Some(path), _) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| usage(format!("{}: {e}", path.display())))?;
            read_records(&text)
                .into_iter()
                .map(|(line, rec)| match parse_record(rec, Format::Auto) {
                    Ok(Target::Graph { id, graph }) => Ok((id, graph)),
                    Ok(Target::Poly(_)) => Err(usage(format!("line {line}: expected a graph"))),
                    Err(e) => Err(usage(format!("line {line}: {}", e.error))),
                })
                .collect::<Result<Vec<_>, _>>()?
        }
        (None, Some(n)) => enumerate_nonisomorphic(n, GraphFilter::Connected)?
            .into_iter()
            .map(|g| Ok((emit_graph6(&g)?, g)))
            .collect::<Result<Vec<_>, Failure>>()?,
        (None, None) => return Err(usage("screen needs --corpus or --enumerate")),
    };
    if args.biconnected_only {
        graphs.retain(|(_, g)| g.is_biconnected());
    }
    Ok(graphs)
}

/// Screens one graph at the requested k, or at every admissible k.
fn screen_one(
    id: &str,
    g: &Graph,
    args: &ScreenArgs,
    seed: u64,
) -> Result<Vec<ScreenReport>, String> {
    if !g.is_connected() {
        return Err(format!("{id}: graph is disconnected"));
    }
    let d = g.vertex_count() - 1;
    let ks: Vec<usize> = match args.k {
        Some(k) => vec![k],
        None => (1..=d / 2).collect(),
    };
    let ks: Vec<usize> = ks.into_iter().filter(|&k| 2 * k <= d).collect();
    let params = ScreenParams {
        k: 1,
        reps: args.reps,
        s_max: args.s_max,
        seed,
    };
    sz_screen_degrees(g, id, &ks, &params).map_err(|e| format!("{id}: {e}"))
}

pub fn cmd_screen(seed: u64, args: &ScreenArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let graphs = screen_corpus(args)?;
    let mut candidates = 0usize;
    let mut screened = 0usize;
    let mut errors = 0usize;
    // Graphs run in parallel and are written in input order, one chunk at a time.
    for chunk in graphs.chunks(256) {
        for r in par::map(chunk, |(id, g)| screen_one(id, g, args, seed)) {
            match r {
                Ok(rs) => {
                    for rep in rs {
                        screened += 1;
                        candidates += rep.candidate as usize;
                        emit(out, &serde_json::to_value(&rep)?)?;
                    }
                }
                Err(msg) => {
                    errors += 1;
                    emit(out, &json!({ "error": msg }))?;
                }
            }
        }
    }
    emit(
        out,
        &json!({
            "summary": true,
            "graphs": graphs.len(),
            "reports": screened,
            "candidates": candidates,
            "errors": errors,
            "k": args.k,
            "reps": args.reps,
            "s_max": args.s_max.to_string(),
            "seed": seed,
        }),
    )?;
    Ok(if errors > 0 {
        EXIT_USAGE
    } else if graphs.len() == 1 && candidates > 0 {
        EXIT_FAILS
    } else {
        EXIT_OK
    })
}

fn load_certificate(spec: &str) -> Result<KernelCertificate, Failure> {
    match spec {
        "fig1" => Ok(fixtures::fig1_certificate()),
        "fig7" => Ok(fixtures::fig7_certificate()),
        path => {
            let text = std::fs::read_to_string(path).map_err(|e| usage(format!("{path}: {e}")))?;
            Ok(KernelCertificate::parse(&text)?)
        }
    }
}

pub fn cmd_verify(seed: u64, args: &VerifyArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let input = resolve_input(&args.input)?;
    let f = input.poly()?;
    let cert = load_certificate(&args.cert)?;
    if cert.nvars != f.nvars() {
        return Err(usage(format!(
            "certificate has n = {}, input has {} variables",
            cert.nvars,
            f.nvars()
        )));
    }
    let basis = select_basis(&f, cert.k)?;
    if let Some(pos) =
        (0..cert.basis.len().max(basis.len())).find(|&i| cert.basis.get(i) != basis.elements.get(i))
    {
        return Err(LefschetzError::BasisMismatch(pos + 1).into());
    }
    let report = verify_certificate(&f, &cert, seed)?;
    let mut v = serde_json::to_value(&report)?;
    v["input"] = json!(input.name);
    v["passed"] = json!(report.passed());
    v["zero_components"] = json!(cert.zero_count());
    v["degree"] = json!(cert.common_degree());
    emit(out, &v)?;
    Ok(if report.passed() { EXIT_OK } else { EXIT_FAILS })
}

pub fn cmd_reconstruct(
    seed: u64,
    args: &ReconstructArgs,
    out: &mut dyn Write,
) -> Result<i32, Failure> {
    let input = resolve_input(&args.input)?;
    let f = input.poly()?;
    let k = args.k;
    let i0 = match (args.i0, input.name.as_str()) {
        (Some(0), _) => return Err(usage("--i0 is 1-based")),
        (Some(i), _) => Some(i - 1),
        (None, "fig1") => Some(1),
        (None, _) => None,
    };
    let opts = ReconstructOptions {
        i0,
        seed,
        samples_per_var: args.samples_per_var,
        max_degree: args.max_degree,
        grid_offset: args.grid_offset,
        prime_power_grid: args.prime_power_grid,
        mode: match args.mode {
            Mode::Anchored => ReconstructMode::Anchored,
            Mode::Pointwise => ReconstructMode::Pointwise,
        },
        max_primes: args.max_primes,
    };
    let src: Box<dyn HessianSource> = match &input.target {
        Target::Graph { graph, .. } => Box::new(graph_hessian(graph, k, true, seed)?),
        Target::Poly(p) => Box::new(poly_hessian(p, k)?),
    };
    let basis = select_basis(&f, k)?;
    let r = reconstruct_kernel(&f, src.as_ref(), &basis.elements, k, &opts)?;
    let text = r.certificate.to_text();
    match &args.out {
        Some(path) => {
            std::fs::write(path, &text).map_err(|e| usage(format!("{}: {e}", path.display())))?;
            emit(
                out,
                &json!({
                    "input": input.name,
                    "k": k,
                    "i0": r.certificate.i0 + 1,
                    "degrees": r.degrees,
                    "total_degree": r.total_degree,
                    "components": r.certificate.components.len(),
                    "zero_components": r.certificate.zero_count(),
                    "verified": true,
                    "out": path.display().to_string(),
                }),
            )?;
        }
        None => write!(out, "{text}")?,
    }
    Ok(EXIT_OK)
}

/// Runs a parsed command line.
pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<i32, Failure> {
    match cli.jobs {
        Some(1) => par::set_mode(par::Exec::Sequential),
        Some(_) | None => par::set_mode(par::Exec::Parallel),
    }
    #[cfg(feature = "parallel")]
    if let Some(n) = cli.jobs.filter(|&n| n > 1) {
        // Only the first call can size the global pool.
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global();
    }
    match &cli.command {
        Command::Hilbert(a) => cmd_hilbert(cli.seed, a, out),
        Command::Check(a) => cmd_check(cli.seed, a, out),
        Command::Screen(a) => cmd_screen(cli.seed, a, out),
        Command::Verify(a) => cmd_verify(cli.seed, a, out),
        Command::Reconstruct(a) => cmd_reconstruct(cli.seed, a, out),
    }
}
