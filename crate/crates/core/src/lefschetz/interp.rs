//! Univariate and tensor-product interpolation over any [`Field`], plus rational
//! function reconstruction over a prime field.

use crate::linalg::{Field, PrimeField};

/// Coefficients, lowest degree first, of the polynomial of degree `< xs.len()`
/// through `(xs[i], ys[i])`. Nodes must be distinct.
pub fn interpolate<F: Field>(f: &F, xs: &[F::Elem], ys: &[F::Elem]) -> Vec<F::Elem> {
    let n = xs.len();
    // Divided differences in place.
    let mut c = ys.to_vec();
    for j in 1..n {
        for i in (j..n).rev() {
            let num = f.sub(&c[i], &c[i - 1]);
            let den = f.sub(&xs[i], &xs[i - j]);
            c[i] = f.mul(&num, &f.inv(&den).expect("distinct nodes"));
        }
    }
    // Horner expansion of the Newton form.
    let mut p = vec![f.zero(); n];
    for i in (0..n).rev() {
        // p = p * (x - xs[i]) + c[i]
        let mut next = vec![f.zero(); n];
        for d in 0..n {
            if f.is_zero(&p[d]) {
                continue;
            }
            if d + 1 < n {
                next[d + 1] = f.add(&next[d + 1], &p[d]);
            }
            let t = f.mul(&p[d], &xs[i]);
            next[d] = f.sub(&next[d], &t);
        }
        next[0] = f.add(&next[0], &c[i]);
        p = next;
    }
    p
}

pub fn evaluate<F: Field>(f: &F, p: &[F::Elem], x: &F::Elem) -> F::Elem {
    p.iter()
        .rev()
        .fold(f.zero(), |acc, c| f.add(&f.mul(&acc, x), c))
}

/// Degree, or `None` for the zero polynomial.
pub fn degree<F: Field>(f: &F, p: &[F::Elem]) -> Option<usize> {
    p.iter().rposition(|c| !f.is_zero(c))
}

/// Interpolates on a tensor grid. `values` is row-major with the last axis
/// fastest; the result uses the same layout for exponents `0..nodes[i].len()`.
pub fn tensor_interpolate<F: Field>(
    f: &F,
    nodes: &[Vec<F::Elem>],
    values: &[F::Elem],
) -> Vec<F::Elem> {
    let shape: Vec<usize> = nodes.iter().map(Vec::len).collect();
    assert_eq!(values.len(), shape.iter().product::<usize>());
    let mut data = values.to_vec();
    let mut stride = 1;
    for axis in (0..shape.len()).rev() {
        let len = shape[axis];
        if len > 1 {
            let block = stride * len;
            for start in (0..data.len()).step_by(block) {
                for off in 0..stride {
                    let idx: Vec<usize> = (0..len).map(|t| start + off + t * stride).collect();
                    let ys: Vec<F::Elem> = idx.iter().map(|&i| data[i].clone()).collect();
                    let cs = interpolate(f, &nodes[axis], &ys);
                    for (&i, c) in idx.iter().zip(cs) {
                        data[i] = c;
                    }
                }
            }
        }
        stride *= len;
    }
    data
}

fn trim(p: &mut Vec<u64>) {
    while p.last() == Some(&0) {
        p.pop();
    }
}

fn divrem(f: &PrimeField, a: &[u64], b: &[u64]) -> (Vec<u64>, Vec<u64>) {
    let mut r = a.to_vec();
    trim(&mut r);
    let db = b.len() - 1;
    let inv = f.inv(b[db]).expect("nonzero leading coefficient");
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let mut q = vec![0u64; r.len() - db];
    for i in (0..q.len()).rev() {
        let c = f.mul(r[i + db], inv);
        q[i] = c;
        if c != 0 {
            for (j, &bj) in b.iter().enumerate() {
                r[i + j] = f.sub(r[i + j], f.mul(c, bj));
            }
        }
    }
    trim(&mut r);
    (q, r)
}

fn sub_mul(f: &PrimeField, a: &[u64], q: &[u64], b: &[u64]) -> Vec<u64> {
    let mut out = a.to_vec();
    let len = if q.is_empty() || b.is_empty() {
        0
    } else {
        q.len() + b.len() - 1
    };
    if out.len() < len {
        out.resize(len, 0);
    }
    for (i, &qi) in q.iter().enumerate() {
        if qi == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            out[i + j] = f.sub(out[i + j], f.mul(qi, bj));
        }
    }
    trim(&mut out);
    out
}

/// `n / d` with `deg n <= num_deg`, `deg d <= den_deg`, `d` monic and nonzero at
/// every node, agreeing with the samples. Needs `num_deg + den_deg < xs.len()`.
pub fn reconstruct_rational(
    f: &PrimeField,
    xs: &[u64],
    ys: &[u64],
    num_deg: usize,
    den_deg: usize,
) -> Option<(Vec<u64>, Vec<u64>)> {
    assert!(num_deg + den_deg < xs.len());
    let mut modulus = vec![f.one()];
    for &x in xs {
        let mut next = vec![0u64; modulus.len() + 1];
        for (i, &c) in modulus.iter().enumerate() {
            next[i + 1] = f.add(next[i + 1], c);
            next[i] = f.sub(next[i], f.mul(c, x));
        }
        modulus = next;
    }
    let mut interp = interpolate(f, xs, ys);
    trim(&mut interp);
    // Extended Euclid on (modulus, interp), tracking the cofactor of interp.
    let (mut r0, mut r1) = (modulus, interp);
    let (mut t0, mut t1): (Vec<u64>, Vec<u64>) = (Vec::new(), vec![f.one()]);
    while r1.len() > num_deg + 1 {
        let (q, r) = divrem(f, &r0, &r1);
        let t = sub_mul(f, &t0, &q, &t1);
        r0 = std::mem::replace(&mut r1, r);
        t0 = std::mem::replace(&mut t1, t);
    }
    let (mut num, mut den) = (r1, t1);
    trim(&mut den);
    if den.is_empty() || den.len() > den_deg + 1 {
        return None;
    }
    let lead = f.inv(*den.last().unwrap())?;
    num.iter_mut().for_each(|c| *c = f.mul(*c, lead));
    den.iter_mut().for_each(|c| *c = f.mul(*c, lead));
    for (&x, &y) in xs.iter().zip(ys) {
        let dv = evaluate(f, &den, &x);
        if dv == 0 || evaluate(f, &num, &x) != f.mul(y, dv) {
            return None;
        }
    }
    Some((num, den))
}

/// Monic least common multiple.
pub fn lcm(f: &PrimeField, a: &[u64], b: &[u64]) -> Vec<u64> {
    let g = gcd(f, a, b);
    let (q, _) = divrem(f, a, &g);
    let mut prod = vec![0u64; q.len() + b.len() - 1];
    for (i, &x) in q.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = f.add(prod[i + j], f.mul(x, y));
        }
    }
    make_monic(f, prod)
}

fn make_monic(f: &PrimeField, mut p: Vec<u64>) -> Vec<u64> {
    trim(&mut p);
    if let Some(&l) = p.last() {
        let inv = f.inv(l).expect("nonzero");
        p.iter_mut().for_each(|c| *c = f.mul(*c, inv));
    }
    p
}

pub fn gcd(f: &PrimeField, a: &[u64], b: &[u64]) -> Vec<u64> {
    let (mut x, mut y) = (a.to_vec(), b.to_vec());
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let (_, r) = divrem(f, &x, &y);
        x = std::mem::replace(&mut y, r);
    }
    make_monic(f, x)
}

/// Product of two polynomials.
pub fn mul(f: &PrimeField, a: &[u64], b: &[u64]) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = f.add(out[i + j], f.mul(x, y));
        }
    }
    trim(&mut out);
    out
}

/// Exact quotient `a / b`.
pub fn div(f: &PrimeField, a: &[u64], b: &[u64]) -> Vec<u64> {
    divrem(f, a, b).0
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{Rationals, PRIME_A};
    use num_rational::BigRational;

    #[test]
    fn interpolation_recovers_a_cubic_over_both_fields() {
        let q = Rationals;
        let xs: Vec<BigRational> = (0..4).map(|i| q.from_i64(i * 2 + 1)).collect();
        // 3 - x + 2x^3
        let poly = [q.from_i64(3), q.from_i64(-1), q.from_i64(0), q.from_i64(2)];
        let ys: Vec<BigRational> = xs.iter().map(|x| evaluate(&q, &poly, x)).collect();
        assert_eq!(interpolate(&q, &xs, &ys), poly.to_vec());

        let f = PrimeField::new(PRIME_A);
        let xs: Vec<u64> = (1..=4).map(|i| f.from_u64(i)).collect();
        let poly: Vec<u64> = [3i64, -1, 0, 2].iter().map(|&c| f.from_i64(c)).collect();
        let ys: Vec<u64> = xs.iter().map(|x| evaluate(&f, &poly, x)).collect();
        assert_eq!(interpolate(&f, &xs, &ys), poly);
    }

    #[test]
    fn tensor_grid() {
        let q = Rationals;
        // p(x, y) = 1 + 2y + 3x*y^2 on {0,1} x {0,1,2}
        let nodes = vec![
            vec![q.from_i64(0), q.from_i64(1)],
            (0..3).map(|i| q.from_i64(i)).collect(),
        ];
        let p = |x: i64, y: i64| q.from_i64(1 + 2 * y + 3 * x * y * y);
        let vals: Vec<BigRational> = (0..2)
            .flat_map(|x| (0..3).map(move |y| (x, y)))
            .map(|(x, y)| p(x, y))
            .collect();
        let c = tensor_interpolate(&q, &nodes, &vals);
        let want: Vec<BigRational> = [1, 2, 0, 0, 0, 3].iter().map(|&v| q.from_i64(v)).collect();
        assert_eq!(c, want);
    }

    #[test]
    fn rational_function() {
        let f = PrimeField::new(PRIME_A);
        // (x^2 + 1) / (x + 5)
        let xs: Vec<u64> = (1..=6).map(|i| f.from_u64(i)).collect();
        let ys: Vec<u64> = xs
            .iter()
            .map(|&x| {
                let n = f.add(f.mul(x, x), f.one());
                let d = f.add(x, f.from_u64(5));
                f.mul(n, f.inv(d).unwrap())
            })
            .collect();
        let (n, d) = reconstruct_rational(&f, &xs, &ys, 3, 2).unwrap();
        assert_eq!(n, vec![f.one(), 0, f.one()]);
        assert_eq!(d, vec![f.from_u64(5), f.one()]);
        let l = lcm(&f, &d, &[f.from_u64(2), f.one()]);
        assert_eq!(l, vec![f.from_u64(10), f.from_u64(7), f.one()]);
    }
}
