//! Prime fields in Montgomery form, plus a small `Field` abstraction shared with
//! the rationals so interpolation code can run over either.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use std::fmt::Debug;

/// Largest prime below 2^62; the primary modulus of the modular engine.
pub const PRIME_A: u64 = 4_611_686_018_427_387_847;
/// Second prime below 2^62; used to confirm anything observed at [`PRIME_A`].
pub const PRIME_B: u64 = 4_611_686_018_427_387_817;

/// Minimal field interface for generic elimination and interpolation.
pub trait Field: Sync {
    type Elem: Clone + PartialEq + Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, v: i64) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn is_zero(&self, a: &Self::Elem) -> bool;
}

/// The field of rational numbers.
#[derive(Clone, Copy, Debug, Default)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        (!a.is_zero()).then(|| a.recip())
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
}

/// Arithmetic modulo an odd prime `p < 2^62`.
///
/// Elements handed out by this type are in Montgomery form (`x * 2^64 mod p`);
/// convert with [`PrimeField::from_u64`] / [`PrimeField::to_u64`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
    neg_inv: u64,
    r2: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Self {
        assert!(
            p % 2 == 1 && p < (1 << 62),
            "modulus must be an odd prime below 2^62"
        );
        let mut inv: u64 = 1;
        for _ in 0..7 {
            inv = inv.wrapping_mul(2u64.wrapping_sub(p.wrapping_mul(inv)));
        }
        let r = ((1u128 << 64) % p as u128) as u64;
        let r2 = ((r as u128 * r as u128) % p as u128) as u64;
        PrimeField {
            p,
            neg_inv: inv.wrapping_neg(),
            r2,
        }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    #[inline(always)]
    fn redc(&self, t: u128) -> u64 {
        let m = (t as u64).wrapping_mul(self.neg_inv);
        let u = ((t + m as u128 * self.p as u128) >> 64) as u64;
        if u >= self.p {
            u - self.p
        } else {
            u
        }
    }

    #[inline(always)]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        self.redc(a as u128 * b as u128)
    }

    #[inline(always)]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline(always)]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline(always)]
    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    pub fn from_u64(&self, x: u64) -> u64 {
        self.mul(x % self.p, self.r2)
    }

    pub fn from_i64(&self, x: i64) -> u64 {
        let v = self.from_u64(x.unsigned_abs());
        if x < 0 {
            self.neg(v)
        } else {
            v
        }
    }

    pub fn from_bigint(&self, x: &BigInt) -> u64 {
        let r = x.mod_floor(&BigInt::from(self.p));
        self.from_u64(r.to_u64().expect("residue fits in u64"))
    }

    /// Reduces a rational; `None` when the denominator vanishes mod p.
    pub fn from_rational(&self, x: &BigRational) -> Option<u64> {
        let d = self.from_bigint(x.denom());
        self.inv(d)
            .map(|di| self.mul(self.from_bigint(x.numer()), di))
    }

    pub fn to_u64(&self, a: u64) -> u64 {
        self.redc(a as u128)
    }

    /// Symmetric representative in `(-p/2, p/2]`.
    pub fn to_i128_symmetric(&self, a: u64) -> i128 {
        let v = self.to_u64(a);
        if v > self.p / 2 {
            v as i128 - self.p as i128
        } else {
            v as i128
        }
    }

    pub fn one(&self) -> u64 {
        self.from_u64(1)
    }

    pub fn pow(&self, mut base: u64, mut e: u64) -> u64 {
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: u64) -> Option<u64> {
        (a != 0).then(|| self.pow(a, self.p - 2))
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        PrimeField::one(self)
    }
    fn from_i64(&self, v: i64) -> u64 {
        PrimeField::from_i64(self, v)
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        PrimeField::add(self, *a, *b)
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        PrimeField::sub(self, *a, *b)
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        PrimeField::mul(self, *a, *b)
    }
    fn neg(&self, a: &u64) -> u64 {
        PrimeField::neg(self, *a)
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        PrimeField::inv(self, *a)
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    (a as u128 * b as u128 % m as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const SMALL: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &q in &SMALL {
        if n % q == 0 {
            return n == q;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &SMALL {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Primes below 2^62 in decreasing order, starting with [`PRIME_A`], [`PRIME_B`].
pub fn primes() -> impl Iterator<Item = u64> {
    let mut next = 1u64 << 62;
    std::iter::from_fn(move || loop {
        next -= 1;
        if is_prime_u64(next) {
            return Some(next);
        }
    })
}

/// `x mod p` for a signed big integer, as a plain residue.
pub fn residue(x: &BigInt, p: u64) -> u64 {
    let r = x.mod_floor(&BigInt::from(p));
    match r.sign() {
        Sign::NoSign => 0,
        _ => r.to_u64().unwrap(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn published_primes_are_prime() {
        let first: Vec<u64> = primes().take(3).collect();
        assert_eq!(first[0], PRIME_A);
        assert_eq!(first[1], PRIME_B);
        assert!(first.iter().all(|&p| is_prime_u64(p)));
        assert!(!is_prime_u64(PRIME_A - 2));
    }

    #[test]
    fn montgomery_matches_u128_arithmetic() {
        let f = PrimeField::new(PRIME_A);
        let xs = [0u64, 1, 2, 12345, PRIME_A - 1, 1 << 61, 987_654_321_012_345];
        for &a in &xs {
            for &b in &xs {
                let ma = f.from_u64(a);
                let mb = f.from_u64(b);
                assert_eq!(f.to_u64(f.mul(ma, mb)), mul_mod(a, b, PRIME_A));
                assert_eq!(
                    f.to_u64(f.add(ma, mb)),
                    ((a as u128 + b as u128) % PRIME_A as u128) as u64
                );
                assert_eq!(
                    f.to_u64(f.sub(ma, mb)),
                    ((a as i128 - b as i128).rem_euclid(PRIME_A as i128)) as u64
                );
            }
            if a != 0 {
                assert_eq!(
                    f.to_u64(f.mul(f.inv(f.from_u64(a)).unwrap(), f.from_u64(a))),
                    1
                );
            }
        }
        assert_eq!(f.to_i128_symmetric(f.from_i64(-5)), -5);
        assert_eq!(f.to_u64(f.from_bigint(&BigInt::from(-1))), PRIME_A - 1);
    }
}
