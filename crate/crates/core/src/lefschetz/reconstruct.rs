//! Rebuilding the polynomial kernel vector `F` of a singular Hessian from
//! kernel vectors at points.
//!
//! A kernel vector at a point is known only up to scale. The default mode
//! fixes the scale with the polynomial `u = F_{i0} / F_{i0}(a*)` for a fixed
//! small anchor `a*`: scaling the kernel vector at `a` so its `i0` entry is
//! `u(a)` yields `F(a) / F_{i0}(a*)` exactly, the same rational vector for
//! every prime. `u` itself comes from one linear solve mod `p`. The pointwise
//! mode instead normalizes every exact kernel vector to a primitive integer
//! vector and interpolates over the rationals.

use super::certificate::{normalize_components, verify_certificate, KernelCertificate};
use super::hessian::HessianSource;
use super::interp::{self, reconstruct_rational, tensor_interpolate};
use super::LefschetzError;
use crate::linalg::{
    exact_kernel_vector, normalize_integer_vector, primes, rational_reconstruct, CrtVector,
    ModMatrix, PrimeField, Rationals, PRIME_A,
};
use crate::poly::{DiffMonomial, SparsePoly};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum ReconstructMode {
    /// Anchor-scaled values mod several primes, CRT and rational reconstruction.
    #[default]
    Anchored,
    /// Exact kernel vectors normalized pointwise, interpolated over the rationals.
    Pointwise,
}

#[derive(Clone, Debug)]
pub struct ReconstructOptions {
    /// 0-based normalizing index; `None` picks the largest entry at all-ones.
    pub i0: Option<usize>,
    pub seed: u64,
    pub samples_per_var: usize,
    /// Bound on the degree of `F`.
    pub max_degree: usize,
    /// Grid nodes for `x_i` are `offset+1, ..., offset+D_i+1`.
    pub grid_offset: u64,
    /// Use prime powers `2, 3, 4, 5, 7, 8, 9, ...` as grid nodes instead.
    pub prime_power_grid: bool,
    pub mode: ReconstructMode,
    pub max_primes: usize,
}

impl Default for ReconstructOptions {
    fn default() -> Self {
        ReconstructOptions {
            i0: None,
            seed: 0,
            samples_per_var: 8,
            max_degree: 7,
            grid_offset: 0,
            prime_power_grid: false,
            mode: ReconstructMode::Anchored,
            max_primes: 6,
        }
    }
}

/// Kernel vectors of one Hessian over one prime field.
struct Probe<'a> {
    src: &'a dyn HessianSource,
    field: PrimeField,
    i0: usize,
}

impl Probe<'_> {
    /// Kernel vector at a Montgomery point, scaled so entry `i0` is 1.
    /// `None` when the nullity is not 1 or entry `i0` vanishes.
    fn rho(&self, point: &[u64]) -> Option<Vec<u64>> {
        let ker = self.src.eval_mod(self.field, point).kernel_montgomery();
        if ker.len() != 1 {
            return None;
        }
        let v = &ker[0];
        let inv = self.field.inv(v[self.i0])?;
        Some(v.iter().map(|&x| self.field.mul(x, inv)).collect())
    }

    fn mont(&self, plain: &[u64]) -> Vec<u64> {
        plain.iter().map(|&x| self.field.from_u64(x)).collect()
    }

    /// `a + t (b - a)` in Montgomery form.
    fn on_line(&self, a: &[u64], b: &[u64], t: u64) -> Vec<u64> {
        let f = self.field;
        let t = f.from_u64(t);
        a.iter()
            .zip(b)
            .map(|(&x, &y)| f.add(x, f.mul(t, f.sub(y, x))))
            .collect()
    }

    /// Samples `ρ` along the line through `a` (t = 0) and `b` (t = 1) at
    /// `count` parameters, skipping degenerate ones.
    fn line_samples(
        &self,
        a: &[u64],
        b: &[u64],
        count: usize,
        skip: &[u64],
    ) -> Result<(Vec<u64>, Vec<Vec<u64>>), LefschetzError> {
        let mut ts = Vec::new();
        let mut vals = Vec::new();
        let mut t = 0u64;
        while ts.len() < count {
            if t > 4 * count as u64 + 64 {
                return Err(LefschetzError::Reconstruction(
                    "too many degenerate points on a line".into(),
                ));
            }
            if !skip.contains(&t) {
                if let Some(r) = self.rho(&self.on_line(a, b, t)) {
                    ts.push(self.field.from_u64(t));
                    vals.push(r);
                }
            }
            t += 1;
        }
        Ok((ts, vals))
    }

    /// `F(ℓ(t)) / F_{i0}(ℓ(0))` as polynomials in `t`, from samples of `ρ` on
    /// a generic line `ℓ` with `ℓ(0)` nondegenerate. Degrees are at most `deg`.
    fn scaled_along_line(
        &self,
        ts: &[u64],
        vals: &[Vec<u64>],
        deg: usize,
    ) -> Result<Vec<Vec<u64>>, LefschetzError> {
        let f = &self.field;
        let m = vals[0].len();
        let mut fracs = Vec::with_capacity(m);
        let mut lambda = vec![f.one()];
        for j in 0..m {
            let ys: Vec<u64> = vals.iter().map(|v| v[j]).collect();
            let (num, den) = reconstruct_rational(f, ts, &ys, deg, deg).ok_or_else(|| {
                LefschetzError::Reconstruction(format!(
                    "component {} exceeds the degree bound {deg}",
                    j + 1
                ))
            })?;
            lambda = interp::lcm(f, &lambda, &den);
            fracs.push((num, den));
        }
        let at_zero = interp::evaluate(f, &lambda, &0);
        let inv0 = f.inv(at_zero).ok_or_else(|| {
            LefschetzError::Reconstruction("denominator vanishes at the anchor".into())
        })?;
        Ok(fracs
            .into_iter()
            .map(|(num, den)| {
                let p = interp::mul(f, &num, &interp::div(f, &lambda, &den));
                p.into_iter().map(|c| f.mul(c, inv0)).collect()
            })
            .collect())
    }
}

fn random_point(rng: &mut ChaCha8Rng, field: PrimeField, n: usize) -> Vec<u64> {
    let p = field.modulus();
    (0..n)
        .map(|_| field.from_u64(rng.gen_range(1..p)))
        .collect()
}

/// Exact kernel vector at an integer point when the nullity there is one.
fn exact_kernel_at(src: &dyn HessianSource, point: &[BigInt]) -> Option<Vec<BigInt>> {
    let m = src.eval_exact(point);
    let p = PrimeField::new(PRIME_A);
    let mm = crate::linalg::reduce_mod(&m, p)?;
    if mm.nullity() != 1 {
        return None;
    }
    exact_kernel_vector(&m)
}

/// Default normalizing index: the largest entry of the kernel vector at
/// all-ones, first one on ties.
pub fn default_i0(src: &dyn HessianSource) -> Result<usize, LefschetzError> {
    let ones = vec![BigInt::one(); src.nvars()];
    let v = exact_kernel_at(src, &ones).ok_or_else(|| LefschetzError::KernelDimension {
        nullity: crate::linalg::certified_nullity(&src.eval_exact(&ones)),
        at: "all-ones".into(),
    })?;
    let best = v.iter().map(|x| x.abs()).max().unwrap_or_default();
    Ok(v.iter().position(|x| x.abs() == best).expect("nonempty"))
}

/// Nullity of the Hessian at generic points: the smaller of the modular
/// nullities at two random points, which is exact with high probability.
pub fn generic_nullity(src: &dyn HessianSource, seed: u64) -> usize {
    let field = PrimeField::new(PRIME_A);
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x6e75_6c6c);
    (0..2)
        .map(|_| {
            src.eval_mod(field, &random_point(&mut rng, field, src.nvars()))
                .nullity()
        })
        .min()
        .expect("two samples")
}

/// Shared state for degree detection and interpolation: normalizing index,
/// anchor, and the total degree of `F`.
pub struct KernelShape {
    pub i0: usize,
    pub anchor: Vec<u64>,
    pub degree: usize,
}

/// Finds an anchor with small entries where the kernel is a line not
/// orthogonal to `e_{i0}`, and the total degree of `F` from one generic line.
pub fn kernel_shape(
    src: &dyn HessianSource,
    i0: usize,
    max_degree: usize,
    seed: u64,
) -> Result<KernelShape, LefschetzError> {
    let n = src.nvars();
    let probe = Probe {
        src,
        field: PrimeField::new(PRIME_A),
        i0,
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed_a11c);
    let mut anchor = None;
    for attempt in 0..64 {
        let hi = 3 + attempt / 8;
        let cand: Vec<u64> = (0..n).map(|_| rng.gen_range(1..=hi)).collect();
        if probe.rho(&probe.mont(&cand)).is_some() {
            anchor = Some(cand);
            break;
        }
    }
    let anchor = anchor.ok_or_else(|| {
        LefschetzError::Reconstruction("no small anchor with a one-dimensional kernel".into())
    })?;
    let a = probe.mont(&anchor);
    let b = random_point(&mut rng, probe.field, n);
    let (ts, vals) = probe.line_samples(&a, &b, 2 * max_degree + 2, &[])?;
    let polys = probe.scaled_along_line(&ts, &vals, max_degree)?;
    let degree = polys
        .iter()
        .filter_map(|p| interp::degree(&probe.field, p))
        .max()
        .unwrap_or(0);
    Ok(KernelShape { i0, anchor, degree })
}

/// Largest degree of each variable over the components of `F`, read off the
/// axis-parallel lines through `base` (usually all-ones).
pub fn detect_max_degrees(
    src: &dyn HessianSource,
    shape: &KernelShape,
    base: &[u64],
    samples_per_var: usize,
) -> Result<Vec<usize>, LefschetzError> {
    let n = src.nvars();
    let probe = Probe {
        src,
        field: PrimeField::new(PRIME_A),
        i0: shape.i0,
    };
    let f = probe.field;
    let a = probe.mont(&shape.anchor);
    let deg = shape.degree;
    // F(x) / F_{i0}(a*) at x, via the line from the anchor through x.
    let scaled_at = |x: &[u64]| -> Result<Vec<u64>, LefschetzError> {
        let xm = probe.mont(x);
        let (ts, vals) = probe.line_samples(&a, &xm, 2 * deg + 2, &[1])?;
        let polys = probe.scaled_along_line(&ts, &vals, deg)?;
        Ok(polys
            .iter()
            .map(|p| interp::evaluate(&f, p, &f.one()))
            .collect())
    };
    let per_var: Vec<Result<usize, LefschetzError>> = crate::par::map_range(n, |i| {
        let ss: Vec<u64> = (1..=samples_per_var as u64 + 1).collect();
        let mut samples = Vec::new();
        for &s in &ss {
            let mut x = base.to_vec();
            x[i] = s;
            samples.push(scaled_at(&x)?);
        }
        let xs: Vec<u64> = ss.iter().map(|&s| f.from_u64(s)).collect();
        let m = samples[0].len();
        let mut d_i = 0;
        for j in 0..m {
            let ys: Vec<u64> = samples.iter().map(|v| v[j]).collect();
            let p = interp::interpolate(&f, &xs[..samples_per_var], &ys[..samples_per_var]);
            if interp::evaluate(&f, &p, &xs[samples_per_var]) != ys[samples_per_var] {
                return Err(LefschetzError::Reconstruction(format!(
                    "component {} has degree above {} in x{}",
                    j + 1,
                    samples_per_var - 1,
                    i + 1
                )));
            }
            d_i = d_i.max(interp::degree(&f, &p).unwrap_or(0));
        }
        Ok(d_i)
    });
    per_var.into_iter().collect()
}

/// Exponent vectors of total degree `deg` below the per-variable bounds, in
/// increasing lex order.
fn bounded_monomials(bounds: &[usize], deg: usize) -> Vec<Vec<u16>> {
    fn rec(i: usize, left: usize, bounds: &[usize], cur: &mut Vec<u16>, out: &mut Vec<Vec<u16>>) {
        if i == bounds.len() {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let rest: usize = bounds[i + 1..].iter().sum();
        for e in 0..=bounds[i].min(left) {
            if left - e > rest {
                continue;
            }
            cur.push(e as u16);
            rec(i + 1, left - e, bounds, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, deg, bounds, &mut Vec::new(), &mut out);
    out
}

fn monomial_values(f: &PrimeField, monos: &[Vec<u16>], x: &[u64], max_exp: usize) -> Vec<u64> {
    let pows: Vec<Vec<u64>> = x
        .iter()
        .map(|&v| {
            let mut p = vec![f.one(); max_exp + 1];
            for e in 1..=max_exp {
                p[e] = f.mul(p[e - 1], v);
            }
            p
        })
        .collect();
    monos
        .iter()
        .map(|e| {
            e.iter().enumerate().fold(f.one(), |acc, (i, &k)| {
                if k == 0 {
                    acc
                } else {
                    f.mul(acc, pows[i][k as usize])
                }
            })
        })
        .collect()
}

/// `F_{i0} / F_{i0}(a*)` mod p as coefficients on `monos`.
///
/// Unknowns are the coefficients of `W = Σ c_j F_j` and `U = F_{i0}`, tied by
/// `W(b) = ρ_mix(b) U(b)` at random points. For random `c` the two are coprime,
/// so the solution space is one line.
fn recover_normalizer(
    probe: &Probe,
    monos: &[Vec<u16>],
    anchor: &[u64],
    rng: &mut ChaCha8Rng,
) -> Result<Vec<u64>, LefschetzError> {
    let f = probe.field;
    let n = probe.src.nvars();
    let m = probe.src.size();
    let k = monos.len();
    let max_exp = monos.iter().flatten().copied().max().unwrap_or(0) as usize;
    let c: Vec<u64> = random_point(rng, f, m);
    let rows_needed = 2 * k + 8;
    let pts: Vec<Vec<u64>> = (0..rows_needed + rows_needed / 8 + 8)
        .map(|_| random_point(rng, f, n))
        .collect();
    let rows: Vec<Option<Vec<u64>>> = crate::par::map(&pts, |b| {
        let rho = probe.rho(b)?;
        let mix = rho
            .iter()
            .zip(&c)
            .fold(0, |acc, (&r, &cj)| f.add(acc, f.mul(r, cj)));
        let mv = monomial_values(&f, monos, b, max_exp);
        let mut row = mv.clone();
        row.extend(mv.iter().map(|&x| f.neg(f.mul(mix, x))));
        Some(row)
    });
    let rows: Vec<Vec<u64>> = rows.into_iter().flatten().take(rows_needed).collect();
    if rows.len() < rows_needed {
        return Err(LefschetzError::Reconstruction(
            "too many degenerate random points".into(),
        ));
    }
    let mut mat = ModMatrix::zeros(f, rows.len(), 2 * k);
    for (r, row) in rows.iter().enumerate() {
        for (cidx, &x) in row.iter().enumerate() {
            mat.set(r, cidx, x);
        }
    }
    let ker = mat.kernel_montgomery();
    if ker.len() != 1 {
        return Err(LefschetzError::Reconstruction(format!(
            "normalizer system has a {}-dimensional solution space",
            ker.len()
        )));
    }
    let u: Vec<u64> = ker[0][k..].to_vec();
    let at = monomial_values(&f, monos, &probe.mont(anchor), max_exp)
        .iter()
        .zip(&u)
        .fold(0, |acc, (&a, &b)| f.add(acc, f.mul(a, b)));
    let inv = f.inv(at).ok_or_else(|| {
        LefschetzError::Reconstruction("normalizer vanishes at the anchor".into())
    })?;
    Ok(u.into_iter().map(|x| f.mul(x, inv)).collect())
}

/// Grid nodes per variable, as plain integers.
fn grid_nodes(degrees: &[usize], opts: &ReconstructOptions) -> Vec<Vec<u64>> {
    let pp = prime_powers(degrees.iter().max().map_or(1, |d| d + 1) + opts.grid_offset as usize);
    degrees
        .iter()
        .map(|&d| {
            (0..=d as u64)
                .map(|t| {
                    if opts.prime_power_grid {
                        pp[(opts.grid_offset + t) as usize]
                    } else {
                        opts.grid_offset + 1 + t
                    }
                })
                .collect()
        })
        .collect()
}

fn prime_powers(count: usize) -> Vec<u64> {
    let mut out = Vec::new();
    let mut x = 2u64;
    while out.len() < count {
        let p = (2..=x).find(|d| x % d == 0).expect("x >= 2");
        let mut y = x;
        while y % p == 0 {
            y /= p;
        }
        if y == 1 {
            out.push(x);
        }
        x += 1;
    }
    out
}

fn grid_points(nodes: &[Vec<u64>]) -> Vec<Vec<u64>> {
    let mut pts = vec![Vec::new()];
    for axis in nodes {
        pts = pts
            .into_iter()
            .flat_map(|p| {
                axis.iter().map(move |&x| {
                    let mut q = p.clone();
                    q.push(x);
                    q
                })
            })
            .collect();
    }
    pts
}

/// Coefficients (on `monos`) of every component of `F / F_{i0}(a*)` mod p.
fn interpolate_mod_p(
    src: &dyn HessianSource,
    shape: &KernelShape,
    degrees: &[usize],
    monos: &[Vec<u16>],
    nodes: &[Vec<u64>],
    p: u64,
    rng: &mut ChaCha8Rng,
) -> Result<Vec<Vec<u64>>, LefschetzError> {
    let probe = Probe {
        src,
        field: PrimeField::new(p),
        i0: shape.i0,
    };
    let f = probe.field;
    let n = src.nvars();
    let deg = shape.degree;
    let u = recover_normalizer(&probe, monos, &shape.anchor, rng)?;
    let max_exp = degrees.iter().copied().max().unwrap_or(0);
    let u_at = |x: &[u64]| {
        monomial_values(&f, monos, x, max_exp)
            .iter()
            .zip(&u)
            .fold(0, |acc, (&a, &b)| f.add(acc, f.mul(a, b)))
    };
    let pts = grid_points(nodes);
    let seeds: Vec<u64> = (0..pts.len()).map(|_| rng.gen()).collect();
    let values: Vec<Result<Vec<u64>, LefschetzError>> = crate::par::map_range(pts.len(), |idx| {
        let x = probe.mont(&pts[idx]);
        if let Some(r) = probe.rho(&x) {
            let s = u_at(&x);
            return Ok(r.into_iter().map(|v| f.mul(v, s)).collect());
        }
        // Degenerate node: interpolate F along a line through it instead.
        let mut lr = ChaCha8Rng::seed_from_u64(seeds[idx]);
        let b = random_point(&mut lr, f, n);
        let (ts, vals) = probe.line_samples(&x, &b, deg + 2, &[0])?;
        let scaled: Vec<Vec<u64>> = ts
            .iter()
            .zip(vals)
            .map(|(t, r)| {
                let s = u_at(&probe.on_line(&x, &b, f.to_u64(*t)));
                r.into_iter().map(|v| f.mul(v, s)).collect()
            })
            .collect();
        let m = scaled[0].len();
        (0..m)
            .map(|j| {
                let ys: Vec<u64> = scaled.iter().map(|v| v[j]).collect();
                let poly = interp::interpolate(&f, &ts[..deg + 1], &ys[..deg + 1]);
                if interp::evaluate(&f, &poly, &ts[deg + 1]) != ys[deg + 1] {
                    return Err(LefschetzError::Reconstruction(
                        "inconsistent values on a repair line".into(),
                    ));
                }
                Ok(interp::evaluate(&f, &poly, &0))
            })
            .collect()
    });
    let values: Vec<Vec<u64>> = values.into_iter().collect::<Result<_, _>>()?;
    let m = src.size();
    let node_m: Vec<Vec<u64>> = nodes
        .iter()
        .map(|ax| ax.iter().map(|&x| f.from_u64(x)).collect())
        .collect();
    let shape_len: Vec<usize> = nodes.iter().map(Vec::len).collect();
    let comps: Vec<Result<Vec<u64>, LefschetzError>> = crate::par::map_range(m, |j| {
        let ys: Vec<u64> = values.iter().map(|v| v[j]).collect();
        let coeffs = tensor_interpolate(&f, &node_m, &ys);
        // Everything off total degree `deg` must vanish.
        let mut on = vec![0u64; monos.len()];
        let mut idx = vec![0usize; shape_len.len()];
        for c in coeffs {
            if c != 0 {
                let total: usize = idx.iter().sum();
                if total != deg {
                    return Err(LefschetzError::Reconstruction(format!(
                        "component {} is not homogeneous of degree {deg}",
                        j + 1
                    )));
                }
                let e: Vec<u16> = idx.iter().map(|&x| x as u16).collect();
                let pos = monos.binary_search(&e).expect("bounded monomial");
                on[pos] = f.to_u64(c);
            }
            for a in (0..idx.len()).rev() {
                idx[a] += 1;
                if idx[a] < shape_len[a] {
                    break;
                }
                idx[a] = 0;
            }
        }
        Ok(on)
    });
    comps.into_iter().collect()
}

fn assemble(nvars: usize, monos: &[Vec<u16>], coeffs: &[Vec<BigInt>]) -> Vec<SparsePoly> {
    coeffs
        .iter()
        .map(|cs| {
            SparsePoly::from_terms(
                nvars,
                monos
                    .iter()
                    .zip(cs)
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(e, c)| (e.clone(), c.clone())),
            )
        })
        .collect()
}

/// Interpolates `F` on the grid `X_1 × ... × X_n`, `|X_i| = D_i + 1`, and
/// returns the normalized certificate once it verifies against `f`.
pub fn interpolate_kernel(
    f: &SparsePoly,
    src: &dyn HessianSource,
    basis: &[DiffMonomial],
    k: usize,
    degrees: &[usize],
    shape: &KernelShape,
    opts: &ReconstructOptions,
) -> Result<KernelCertificate, LefschetzError> {
    let n = src.nvars();
    let nodes = grid_nodes(degrees, opts);
    let monos = bounded_monomials(degrees, shape.degree);
    let make = |components: Vec<SparsePoly>| KernelCertificate {
        k,
        nvars: n,
        i0: shape.i0,
        basis: basis.to_vec(),
        components,
        degrees: Some(degrees.to_vec()),
        point: None,
    };
    match opts.mode {
        ReconstructMode::Anchored => {
            let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ 0x9e37_79b9);
            let m = src.size();
            let mut crt = CrtVector::new(m * monos.len());
            for p in primes().take(opts.max_primes) {
                let comps =
                    match interpolate_mod_p(src, shape, degrees, &monos, &nodes, p, &mut rng) {
                        Ok(c) => c,
                        Err(_) => continue,
                    };
                let flat: Vec<u64> = comps.into_iter().flatten().collect();
                crt.push(p, &flat);
                let Some(mut comps) = lift(&crt, m, monos.len()).map(|c| assemble(n, &monos, &c))
                else {
                    continue;
                };
                normalize_components(&mut comps, shape.i0);
                let cert = make(comps);
                if verify_certificate(f, &cert, opts.seed)?.passed() {
                    return Ok(cert);
                }
            }
            Err(LefschetzError::Reconstruction(format!(
                "no verified certificate within {} primes",
                opts.max_primes
            )))
        }
        ReconstructMode::Pointwise => {
            let pts = grid_points(&nodes);
            let q = Rationals;
            let vals: Vec<Option<Vec<BigInt>>> = crate::par::map(&pts, |x| {
                let xb: Vec<BigInt> = x.iter().map(|&v| BigInt::from(v)).collect();
                let v = exact_kernel_at(src, &xb)?;
                let r: Vec<BigRational> = v.into_iter().map(BigRational::from_integer).collect();
                normalize_integer_vector(&r, shape.i0).ok()
            });
            let vals: Vec<Vec<BigInt>> =
                vals.into_iter().collect::<Option<_>>().ok_or_else(|| {
                    LefschetzError::Reconstruction(
                        "a grid point is degenerate; shift the grid".into(),
                    )
                })?;
            let node_q: Vec<Vec<BigRational>> = nodes
                .iter()
                .map(|ax| {
                    ax.iter()
                        .map(|&x| BigRational::from_integer(x.into()))
                        .collect()
                })
                .collect();
            let shape_len: Vec<usize> = nodes.iter().map(Vec::len).collect();
            let mut comps = Vec::new();
            for j in 0..src.size() {
                let ys: Vec<BigRational> = vals
                    .iter()
                    .map(|v| BigRational::from_integer(v[j].clone()))
                    .collect();
                let coeffs = tensor_interpolate(&q, &node_q, &ys);
                let mut terms = Vec::new();
                let mut idx = vec![0usize; shape_len.len()];
                for c in coeffs {
                    if !c.is_zero() {
                        terms.push((idx.iter().map(|&x| x as u16).collect::<Vec<u16>>(), c));
                    }
                    for a in (0..idx.len()).rev() {
                        idx[a] += 1;
                        if idx[a] < shape_len[a] {
                            break;
                        }
                        idx[a] = 0;
                    }
                }
                comps.push(terms);
            }
            let l = comps
                .iter()
                .flatten()
                .fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()));
            let mut polys: Vec<SparsePoly> = comps
                .into_iter()
                .map(|terms| {
                    SparsePoly::from_terms(
                        n,
                        terms
                            .into_iter()
                            .map(|(e, c)| (e, c.numer() * (&l / c.denom()))),
                    )
                })
                .collect();
            normalize_components(&mut polys, shape.i0);
            let cert = make(polys);
            let report = verify_certificate(f, &cert, opts.seed)?;
            if report.passed() {
                Ok(cert)
            } else {
                Err(LefschetzError::Reconstruction(format!(
                    "pointwise interpolation did not verify: {}",
                    report.first_failure.unwrap_or_default()
                )))
            }
        }
    }
}

/// Rational reconstruction of every CRT value; `None` until the modulus suffices.
fn lift(crt: &CrtVector, m: usize, per: usize) -> Option<Vec<Vec<BigInt>>> {
    let q: Vec<BigRational> = crt
        .values()
        .iter()
        .map(|x| rational_reconstruct(x, crt.modulus()).ok())
        .collect::<Option<_>>()?;
    let l = q.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = q.iter().map(|x| x.numer() * (&l / x.denom())).collect();
    Some(ints.chunks(per).take(m).map(|c| c.to_vec()).collect())
}

/// Everything behind a reconstruction run, for reporting.
pub struct Reconstruction {
    pub certificate: KernelCertificate,
    pub degrees: Vec<usize>,
    pub total_degree: usize,
}

/// Degree detection followed by interpolation and verification.
pub fn reconstruct_kernel(
    f: &SparsePoly,
    src: &dyn HessianSource,
    basis: &[DiffMonomial],
    k: usize,
    opts: &ReconstructOptions,
) -> Result<Reconstruction, LefschetzError> {
    let nullity = generic_nullity(src, opts.seed);
    if nullity != 1 {
        return Err(LefschetzError::KernelDimension {
            nullity,
            at: "random points".into(),
        });
    }
    let i0 = match opts.i0 {
        Some(i) if i < src.size() => i,
        Some(i) => {
            return Err(LefschetzError::Normalization(format!(
                "i0 {} out of range",
                i + 1
            )))
        }
        None => default_i0(src)?,
    };
    let shape = kernel_shape(src, i0, opts.max_degree, opts.seed)?;
    let base = vec![1u64; src.nvars()];
    let degrees = detect_max_degrees(src, &shape, &base, opts.samples_per_var)?;
    let certificate = interpolate_kernel(f, src, basis, k, &degrees, &shape, opts)?;
    Ok(Reconstruction {
        certificate,
        degrees,
        total_degree: shape.degree,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::apolarity::select_basis;
    use crate::lefschetz::hessian::hessian_symbolic;

    #[test]
    fn bounded_monomials_are_lex_sorted() {
        let m = bounded_monomials(&[1, 2, 1], 2);
        assert!(m.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(m.len(), 4);
        assert_eq!(prime_powers(8), vec![2, 3, 4, 5, 7, 8, 9, 11]);
    }

    #[test]
    fn ikeda_kernel_is_rebuilt() {
        let f: SparsePoly = "x1^3*x2*x3 + x1*x2^3*x4 + x3^3*x4^2".parse().unwrap();
        let basis = select_basis(&f, 2).unwrap();
        let h = hessian_symbolic(&f, &basis).unwrap();
        let opts = ReconstructOptions {
            i0: Some(2),
            ..Default::default()
        };
        let r = reconstruct_kernel(&f, &h, &basis.elements, 2, &opts).unwrap();
        assert_eq!(r.total_degree, 3);
        assert_eq!(r.degrees, vec![3, 3, 0, 0]);
        let text: Vec<String> = r
            .certificate
            .components
            .iter()
            .map(|p| p.to_string())
            .collect();
        assert_eq!(
            text,
            ["0", "0", "x1*x2^2", "x1^3", "0", "-x2^3", "-x1^2*x2", "0", "0", "0"]
        );
    }

    #[test]
    fn pointwise_mode_depends_on_unit_content() {
        // At x = (2, 2, *, *) the primitive kernel vector is F(x) / 8, so
        // pointwise normalization breaks interpolation here.
        let f: SparsePoly = "x1^3*x2*x3 + x1*x2^3*x4 + x3^3*x4^2".parse().unwrap();
        let basis = select_basis(&f, 2).unwrap();
        let h = hessian_symbolic(&f, &basis).unwrap();
        let opts = ReconstructOptions {
            i0: Some(2),
            mode: ReconstructMode::Pointwise,
            ..Default::default()
        };
        let err = reconstruct_kernel(&f, &h, &basis.elements, 2, &opts)
            .err()
            .unwrap();
        assert!(matches!(err, LefschetzError::Reconstruction(_)));
    }
}
