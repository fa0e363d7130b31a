//! Kernel certificates: a polynomial (or constant) vector `F` with `H·F = 0`.
//!
//! Text form, one item per line, `#` comments allowed:
//!
//! ```text
//! k 3
//! n 13
//! i0 2
//! degrees 1 1 1 0 1 1 1 0 2 2 2 2 1
//! (1,2,3) = x1*x2 - x3^2
//! ...
//! ```
//!
//! `i0` is 1-based here. A `point a1 ... an` line turns the file into a point
//! certificate whose entries are integers and whose claim is `H(point)·F = 0`.

use super::hessian::{hessian_symbolic, HessianSource};
use super::LefschetzError;
use crate::apolarity::{select_basis, socle_degree};
use crate::linalg::ExactMatrix;
use crate::poly::{DiffMonomial, SparsePoly, SquareFreePoly};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::collections::HashMap;
use std::fmt::Write as _;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelCertificate {
    pub k: usize,
    pub nvars: usize,
    /// 0-based index of the normalizing component.
    pub i0: usize,
    pub basis: Vec<DiffMonomial>,
    pub components: Vec<SparsePoly>,
    pub degrees: Option<Vec<usize>>,
    pub point: Option<Vec<BigInt>>,
}

impl KernelCertificate {
    pub fn zero_count(&self) -> usize {
        self.components.iter().filter(|p| p.is_zero()).count()
    }

    /// Common degree of the nonzero components, if they share one.
    pub fn common_degree(&self) -> Option<usize> {
        let mut degs = self
            .components
            .iter()
            .filter(|p| !p.is_zero())
            .map(|p| p.is_homogeneous().then(|| p.total_degree()).flatten());
        let first = degs.next()??;
        degs.all(|d| d == Some(first)).then_some(first)
    }

    /// Component for a basis element.
    pub fn component(&self, alpha: &DiffMonomial) -> Option<&SparsePoly> {
        self.basis
            .iter()
            .position(|b| b == alpha)
            .map(|i| &self.components[i])
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        writeln!(s, "k {}", self.k).unwrap();
        writeln!(s, "n {}", self.nvars).unwrap();
        writeln!(s, "i0 {}", self.i0 + 1).unwrap();
        if let Some(d) = &self.degrees {
            let parts: Vec<String> = d.iter().map(|x| x.to_string()).collect();
            writeln!(s, "degrees {}", parts.join(" ")).unwrap();
        }
        if let Some(p) = &self.point {
            let parts: Vec<String> = p.iter().map(|x| x.to_string()).collect();
            writeln!(s, "point {}", parts.join(" ")).unwrap();
        }
        for (a, p) in self.basis.iter().zip(&self.components) {
            writeln!(s, "{a} = {p}").unwrap();
        }
        s
    }

    pub fn parse(text: &str) -> Result<Self, LefschetzError> {
        let err = |line: usize, msg: String| LefschetzError::CertificateParse { line, msg };
        let mut k = None;
        let mut n = None;
        let mut i0 = None;
        let mut degrees = None;
        let mut point = None;
        let mut basis = Vec::new();
        let mut raw = Vec::new();
        for (no, line) in text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())) {
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            if let Some((lhs, rhs)) = line.split_once('=') {
                let a: DiffMonomial = lhs.parse().map_err(|e| err(no, format!("{e}")))?;
                basis.push(a);
                raw.push((no, rhs.trim().to_string()));
                continue;
            }
            let mut words = line.split_whitespace();
            let key = words.next().unwrap_or_default();
            let nums = |w: std::str::SplitWhitespace| -> Result<Vec<BigInt>, LefschetzError> {
                w.map(|t| {
                    t.parse::<BigInt>()
                        .map_err(|_| err(no, format!("bad number {t:?}")))
                })
                .collect()
            };
            let small = |v: Vec<BigInt>| -> Result<usize, LefschetzError> {
                match v.as_slice() {
                    [x] => x
                        .try_into()
                        .map_err(|_| err(no, "value out of range".into())),
                    _ => Err(err(no, format!("{key} takes one value"))),
                }
            };
            match key {
                "k" => k = Some(small(nums(words)?)?),
                "n" => n = Some(small(nums(words)?)?),
                "i0" => i0 = Some(small(nums(words)?)?),
                "degrees" => {
                    let v: Result<Vec<usize>, _> = nums(words)?
                        .iter()
                        .map(|x| x.try_into().map_err(|_| err(no, "negative degree".into())))
                        .collect();
                    degrees = Some(v?);
                }
                "point" => point = Some(nums(words)?),
                _ => return Err(err(no, format!("unknown line {line:?}"))),
            }
        }
        let k = k.ok_or_else(|| err(0, "missing k".into()))?;
        let nvars = n.ok_or_else(|| err(0, "missing n".into()))?;
        let i0 = i0.ok_or_else(|| err(0, "missing i0".into()))?;
        if i0 == 0 || i0 > basis.len() {
            return Err(err(0, format!("i0 {i0} out of range 1..={}", basis.len())));
        }
        if point
            .as_ref()
            .is_some_and(|p: &Vec<BigInt>| p.len() != nvars)
        {
            return Err(err(0, "point length differs from n".into()));
        }
        if degrees
            .as_ref()
            .is_some_and(|d: &Vec<usize>| d.len() != nvars)
        {
            return Err(err(0, "degree vector length differs from n".into()));
        }
        let components = raw
            .into_iter()
            .map(|(no, r)| SparsePoly::parse(&r, nvars).map_err(|e| err(no, format!("{e}"))))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(KernelCertificate {
            k,
            nvars,
            i0: i0 - 1,
            basis,
            components,
            degrees,
            point,
        })
    }
}

/// Outcome of [`verify_certificate`]. `None` marks a check that does not apply.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub basis_matches: bool,
    pub nonzero: bool,
    pub homogeneous: Option<bool>,
    pub symbolic_kernel: Option<bool>,
    pub pairing_identity: Option<bool>,
    pub random_points: Option<bool>,
    pub point_kernel: Option<bool>,
    pub first_failure: Option<String>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.basis_matches
            && self.nonzero
            && [
                self.homogeneous,
                self.symbolic_kernel,
                self.pairing_identity,
                self.random_points,
                self.point_kernel,
            ]
            .iter()
            .all(|c| c.unwrap_or(true))
    }
}

/// Packs an exponent vector into a hash key; exponents below 256.
fn key(e: &[u16]) -> Vec<u8> {
    e.iter().map(|&x| x as u8).collect()
}

/// Adds `a * b` into `acc` where `a` is multilinear.
fn accumulate(acc: &mut HashMap<Vec<u8>, BigInt>, a: &SquareFreePoly, b: &SparsePoly) {
    for (mask, ca) in a.terms() {
        for (e, cb) in b.terms() {
            let mut k = key(e);
            let mut m = mask;
            while m != 0 {
                k[m.trailing_zeros() as usize] += 1;
                m &= m - 1;
            }
            *acc.entry(k).or_insert_with(BigInt::zero) += ca * cb;
        }
    }
}

fn accumulate_general(acc: &mut HashMap<Vec<u8>, BigInt>, a: &SparsePoly, b: &SparsePoly) {
    for (ea, ca) in a.terms() {
        for (eb, cb) in b.terms() {
            let k: Vec<u8> = ea.iter().zip(eb).map(|(x, y)| (x + y) as u8).collect();
            *acc.entry(k).or_insert_with(BigInt::zero) += ca * cb;
        }
    }
}

/// `Σ_j a_j · F_j == 0`, with the products formed term by term.
fn combination_vanishes(
    a: &[SparsePoly],
    sf: &[Option<SquareFreePoly>],
    comps: &[SparsePoly],
) -> bool {
    let mut acc = HashMap::new();
    for ((p, s), c) in a.iter().zip(sf).zip(comps) {
        if p.is_zero() || c.is_zero() {
            continue;
        }
        match s {
            Some(s) => accumulate(&mut acc, s, c),
            None => accumulate_general(&mut acc, p, c),
        }
    }
    acc.values().all(|c| c.is_zero())
}

fn as_square_free(p: &SparsePoly) -> Option<SquareFreePoly> {
    if p.is_square_free() {
        SquareFreePoly::from_sparse(p).ok()
    } else {
        None
    }
}

/// Exact checks of a certificate against `f`.
///
/// Polynomial certificates get (a) `H·F = 0` symbolically, (b)
/// `Σ F_i·(α_i f) = 0`, and (c) `H(a)·F(a) = 0` at five seeded random points.
/// Point certificates get `H(point)·F = 0`. The basis must equal the greedy
/// lexicographic basis of `A_k`.
pub fn verify_certificate(
    f: &SparsePoly,
    cert: &KernelCertificate,
    seed: u64,
) -> Result<VerificationReport, LefschetzError> {
    let d = socle_degree(f)?;
    if cert.nvars != f.nvars() {
        return Err(crate::poly::PolyError::VariableCount(cert.nvars, f.nvars()).into());
    }
    if 2 * cert.k > d {
        return Err(LefschetzError::DegreeTooHigh { k: cert.k, d });
    }
    let basis = select_basis(f, cert.k)?;
    let mut report = VerificationReport {
        basis_matches: basis.elements == cert.basis,
        nonzero: cert.components.iter().any(|p| !p.is_zero()),
        homogeneous: None,
        symbolic_kernel: None,
        pairing_identity: None,
        random_points: None,
        point_kernel: None,
        first_failure: None,
    };
    if !report.basis_matches {
        report.first_failure = Some("basis differs from the greedy lexicographic basis".into());
        return Ok(report);
    }
    if !report.nonzero {
        report.first_failure = Some("all components are zero".into());
        return Ok(report);
    }
    let h = hessian_symbolic(f, &basis)?;
    let m = basis.len();
    let fail = |r: &mut VerificationReport, msg: String| {
        if r.first_failure.is_none() {
            r.first_failure = Some(msg);
        }
    };

    if let Some(point) = &cert.point {
        let hm = h.eval_exact(point);
        let v: Vec<BigRational> = cert
            .components
            .iter()
            .map(|p| {
                BigRational::from_integer(
                    p.evaluate(&vec![BigInt::zero(); f.nvars()])
                        .unwrap_or_default(),
                )
            })
            .collect();
        let constant = cert
            .components
            .iter()
            .all(|p| p.total_degree().unwrap_or(0) == 0);
        let prod = hm.mul_vec(&v);
        let bad = prod.iter().position(|x| !x.is_zero());
        report.point_kernel = Some(constant && bad.is_none());
        if !constant {
            fail(
                &mut report,
                "point certificate has non-constant entries".into(),
            );
        } else if let Some(i) = bad {
            fail(
                &mut report,
                format!("row {} of H(point)·F is nonzero", basis.elements[i]),
            );
        }
        return Ok(report);
    }

    let homogeneous = cert.common_degree().is_some();
    report.homogeneous = Some(homogeneous);
    if !homogeneous {
        fail(
            &mut report,
            "nonzero components are not homogeneous of one degree".into(),
        );
    }

    // (a) H·F = 0 row by row.
    let entries = h.entries();
    let sf_entries: Vec<Option<SquareFreePoly>> = entries.iter().map(as_square_free).collect();
    let rows_ok = crate::par::map_range(m, |i| {
        combination_vanishes(
            &entries[i * m..(i + 1) * m],
            &sf_entries[i * m..(i + 1) * m],
            &cert.components,
        )
    });
    let bad_row = rows_ok.iter().position(|ok| !ok);
    report.symbolic_kernel = Some(bad_row.is_none());
    if let Some(i) = bad_row {
        fail(
            &mut report,
            format!(
                "row {} of H·F is not the zero polynomial",
                basis.elements[i]
            ),
        );
    }

    // (b) Σ F_i (α_i f) = 0.
    let images: Vec<SparsePoly> = basis.elements.iter().map(|a| f.diff(a)).collect();
    let sf_images: Vec<Option<SquareFreePoly>> = images.iter().map(as_square_free).collect();
    let pairing = combination_vanishes(&images, &sf_images, &cert.components);
    report.pairing_identity = Some(pairing);
    if !pairing {
        fail(&mut report, "Σ F_i·(α_i f) is not zero".into());
    }

    // (c) kernel membership at random points.
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut all = true;
    let mut seen_nonzero = false;
    for _ in 0..5 {
        let point: Vec<BigInt> = (0..f.nvars())
            .map(|_| BigInt::from(rng.gen_range(1..=1_000_000u64)))
            .collect();
        let hm: ExactMatrix = h.eval_exact(&point);
        let v: Vec<BigRational> = cert
            .components
            .iter()
            .map(|p| BigRational::from_integer(p.evaluate(&point).expect("length checked")))
            .collect();
        seen_nonzero |= v.iter().any(|x| !x.is_zero());
        if let Some(i) = hm.mul_vec(&v).iter().position(|x| !x.is_zero()) {
            all = false;
            fail(
                &mut report,
                format!(
                    "H(a)·F(a) nonzero in row {} at a random point",
                    basis.elements[i]
                ),
            );
            break;
        }
    }
    report.random_points = Some(all && seen_nonzero);
    if !seen_nonzero {
        fail(&mut report, "F vanished at every random point".into());
    }
    Ok(report)
}

/// Content 1 and a positive sign convention: `F_{i0}(1,...,1) > 0`, falling
/// back to a positive lexicographically leading coefficient of `F_{i0}`.
pub fn normalize_components(components: &mut [SparsePoly], i0: usize) {
    let g = components.iter().fold(BigInt::zero(), |acc, p| {
        num_integer::Integer::gcd(&acc, &p.content())
    });
    if g.is_zero() {
        return;
    }
    let n = components[i0].nvars();
    let at_ones = components[i0]
        .evaluate(&vec![BigInt::one(); n])
        .unwrap_or_default();
    let negative = if at_ones.is_zero() {
        components[i0]
            .leading_coeff()
            .is_some_and(|c| c.is_negative())
    } else {
        at_ones.is_negative()
    };
    let scale = if negative { -g } else { g };
    for p in components.iter_mut() {
        *p = p.div_exact(&scale);
    }
}
