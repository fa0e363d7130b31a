//! Chinese remaindering, rational reconstruction, integer normalization of
//! kernel vectors, and certified nullity via multimodular kernels.

use super::exact::{clear_denominators, ExactMatrix};
use super::field::{primes, PrimeField};
use super::modular::ModMatrix;
use super::LinalgError;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Incremental CRT accumulator for a vector of residues.
#[derive(Clone, Debug)]
pub struct CrtVector {
    modulus: BigInt,
    values: Vec<BigInt>,
}

impl CrtVector {
    pub fn new(len: usize) -> Self {
        CrtVector {
            modulus: BigInt::one(),
            values: vec![BigInt::zero(); len],
        }
    }

    pub fn modulus(&self) -> &BigInt {
        &self.modulus
    }

    pub fn values(&self) -> &[BigInt] {
        &self.values
    }

    /// Folds in residues (plain, not Montgomery) modulo a new prime `p`.
    pub fn push(&mut self, p: u64, residues: &[u64]) {
        assert_eq!(residues.len(), self.values.len());
        let pb = BigInt::from(p);
        let m_mod_p = (&self.modulus % &pb)
            .to_u64_digits()
            .1
            .first()
            .copied()
            .unwrap_or(0);
        let f = PrimeField::new(p);
        let inv = f.inv(f.from_u64(m_mod_p)).expect("moduli must be coprime");
        for (x, &r) in self.values.iter_mut().zip(residues) {
            let x_mod_p = super::field::residue(x, p);
            let diff = f.sub(f.from_u64(r), f.from_u64(x_mod_p));
            let t = f.to_u64(f.mul(diff, inv));
            *x += &self.modulus * BigInt::from(t);
        }
        self.modulus *= pb;
    }
}

/// Recovers `a/b` from `residue ≡ a·b⁻¹ (mod modulus)` with `|a|, b ≤ √(modulus/2)`.
pub fn rational_reconstruct(
    residue: &BigInt,
    modulus: &BigInt,
) -> Result<BigRational, LinalgError> {
    let u = residue.mod_floor(modulus);
    if u.is_zero() {
        return Ok(BigRational::zero());
    }
    let bound = (modulus / 2u32).sqrt();
    let (mut r0, mut r1) = (modulus.clone(), u);
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        r0 = std::mem::replace(&mut r1, r2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if t1.is_zero() || t1.abs() > bound || !t1.gcd(modulus).is_one() {
        return Err(LinalgError::Reconstruction);
    }
    Ok(BigRational::new(r1, t1))
}

/// Scales a nonzero rational vector to the primitive integer vector on the same
/// ray whose entry at `i0` is positive.
pub fn normalize_integer_vector(v: &[BigRational], i0: usize) -> Result<Vec<BigInt>, LinalgError> {
    if i0 >= v.len() {
        return Err(LinalgError::Normalization(format!(
            "index {i0} outside a vector of length {}",
            v.len()
        )));
    }
    if v[i0].is_zero() {
        return Err(LinalgError::Normalization(format!("entry {i0} is zero")));
    }
    let (mut ints, _) = clear_denominators(v);
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    let negate = ints[i0].is_negative();
    for x in ints.iter_mut() {
        *x /= &g;
        if negate {
            *x = -std::mem::take(x);
        }
    }
    Ok(ints)
}

/// Divides an integer vector by its content; the sign is left alone.
pub fn primitive_part(v: &mut [BigInt]) {
    let g = v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if !g.is_zero() && !g.is_one() {
        v.iter_mut().for_each(|x| *x /= &g);
    }
}

/// Modular image of a rational matrix; `None` if a denominator vanishes mod p.
pub fn reduce_mod(m: &ExactMatrix, field: PrimeField) -> Option<ModMatrix> {
    let mut data = Vec::with_capacity(m.rows() * m.cols());
    for r in 0..m.rows() {
        for x in m.row(r) {
            data.push(field.from_rational(x)?);
        }
    }
    Some(ModMatrix::from_montgomery(field, m.rows(), m.cols(), data))
}

/// Nullity of a rational matrix, exact.
///
/// Modular nullity is an upper bound on the true nullity. When two primes agree
/// on nullity 1, a rational kernel vector is rebuilt by CRT and checked exactly,
/// which pins the nullity at 1; other positive cases fall back to Bareiss.
pub fn certified_nullity(m: &ExactMatrix) -> usize {
    let mut upper = usize::MAX;
    for p in primes().take(2) {
        if let Some(mm) = reduce_mod(m, PrimeField::new(p)) {
            upper = upper.min(mm.nullity());
        }
        if upper == 0 {
            return 0;
        }
    }
    if upper == 1 && exact_kernel_vector(m).is_some() {
        return 1;
    }
    m.nullity()
}

/// A nonzero exact kernel vector of a matrix whose modular nullity is one,
/// as a primitive integer vector. `None` if reconstruction does not settle
/// within the prime budget.
pub fn exact_kernel_vector(m: &ExactMatrix) -> Option<Vec<BigInt>> {
    let cols = m.cols();
    let rows = m.integer_rows();
    let mut anchor: Option<usize> = None;
    let mut crt = CrtVector::new(cols);
    let mut used = 0usize;
    let mut next_check = 2usize;
    // Hadamard-style size estimate keeps the budget proportional to the work.
    let entry_bits = m.max_abs_numerator().bits().max(1) as usize;
    let budget = 8 + (cols * (entry_bits + (cols.max(2) as f64).log2() as usize + 1)) / 30;
    for p in primes().take(budget) {
        let field = PrimeField::new(p);
        let Some(mm) = reduce_mod(m, field) else {
            continue;
        };
        let ker = mm.kernel_montgomery();
        if ker.len() != 1 {
            continue;
        }
        let v = &ker[0];
        let a = *anchor.get_or_insert_with(|| v.iter().position(|&x| x != 0).unwrap());
        let Some(inv) = field.inv(v[a]) else { continue };
        let scaled: Vec<u64> = v.iter().map(|&x| field.to_u64(field.mul(x, inv))).collect();
        crt.push(p, &scaled);
        used += 1;
        if used >= next_check {
            next_check = used * 2;
            if let Some(w) = try_lift(&crt, &rows) {
                return Some(w);
            }
        }
    }
    try_lift(&crt, &rows)
}

fn try_lift(crt: &CrtVector, rows: &[Vec<BigInt>]) -> Option<Vec<BigInt>> {
    let q: Option<Vec<BigRational>> = crt
        .values()
        .iter()
        .map(|x| rational_reconstruct(x, crt.modulus()).ok())
        .collect();
    let (mut w, _) = clear_denominators(&q?);
    primitive_part(&mut w);
    if w.iter().all(|x| x.is_zero()) {
        return None;
    }
    let annihilated = rows.iter().all(|row| {
        row.iter()
            .zip(&w)
            .filter(|(a, b)| !a.is_zero() && !b.is_zero())
            .fold(BigInt::zero(), |acc, (a, b)| acc + a * b)
            .is_zero()
    });
    annihilated.then_some(w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::field::PRIME_A;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn reconstructs_small_fractions() {
        let m = BigInt::from(101);
        assert_eq!(
            rational_reconstruct(&BigInt::from(51), &m).unwrap(),
            q(1, 2)
        );
        assert_eq!(rational_reconstruct(&BigInt::zero(), &m).unwrap(), q(0, 1));
        let p = BigInt::from(PRIME_A);
        let f = PrimeField::new(PRIME_A);
        let r = f.to_u64(f.mul(f.from_i64(-3), f.inv(f.from_u64(7)).unwrap()));
        assert_eq!(
            rational_reconstruct(&BigInt::from(r), &p).unwrap(),
            q(-3, 7)
        );
    }

    #[test]
    fn reconstruction_fails_without_enough_modulus() {
        // 9 mod 143 has no preimage a/b with |a|, b <= 8.
        assert!(rational_reconstruct(&BigInt::from(9), &BigInt::from(11 * 13)).is_err());
    }

    #[test]
    fn normalization_examples() {
        let v = [q(-2, 3), q(4, 3), q(0, 1)];
        let n = normalize_integer_vector(&v, 0).unwrap();
        assert_eq!(n, vec![BigInt::from(1), BigInt::from(-2), BigInt::from(0)]);
        assert_eq!(
            normalize_integer_vector(&[q(5, 1)], 0).unwrap(),
            vec![BigInt::from(1)]
        );
        let w = normalize_integer_vector(&[q(0, 1), q(-7, 1), q(14, 1)], 1).unwrap();
        assert_eq!(w, vec![BigInt::from(0), BigInt::from(1), BigInt::from(-2)]);
        assert!(normalize_integer_vector(&[q(0, 1), q(1, 1)], 0).is_err());
    }

    #[test]
    fn crt_combines_two_primes() {
        let mut c = CrtVector::new(1);
        let x = BigInt::from(10).pow(30) + 7;
        for p in primes().take(2) {
            c.push(p, &[crate::linalg::field::residue(&x, p)]);
        }
        assert_eq!(c.values()[0], x);
    }

    #[test]
    fn certified_nullity_of_rank_deficient_matrices() {
        let m = ExactMatrix::from_i64(3, 3, &[1, 2, 3, 4, 5, 6, 7, 8, 9]).unwrap();
        assert_eq!(certified_nullity(&m), 1);
        let w = exact_kernel_vector(&m).unwrap();
        assert_eq!(w, vec![BigInt::from(1), BigInt::from(-2), BigInt::from(1)]);
        assert_eq!(certified_nullity(&ExactMatrix::identity(3)), 0);
        assert_eq!(certified_nullity(&ExactMatrix::zeros(2, 2)), 2);
    }
}
