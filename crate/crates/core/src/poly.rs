//! Dense univariate polynomials over Q, little-endian, and exact determinants.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub(crate) type Q = BigRational;

pub(crate) fn trim(mut p: Vec<Q>) -> Vec<Q> {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn sub(a: &[Q], b: &[Q]) -> Vec<Q> {
    let n = a.len().max(b.len());
    let z = Q::zero();
    trim(
        (0..n)
            .map(|i| a.get(i).unwrap_or(&z) - b.get(i).unwrap_or(&z))
            .collect(),
    )
}

pub(crate) fn mul(a: &[Q], b: &[Q]) -> Vec<Q> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Q::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

/// Quotient and remainder; `b` must be nonzero.
pub(crate) fn divrem(a: &[Q], b: &[Q]) -> (Vec<Q>, Vec<Q>) {
    let b = trim(b.to_vec());
    assert!(!b.is_empty(), "polynomial division by zero");
    let mut r = trim(a.to_vec());
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let lead = b.last().unwrap().clone();
    let mut quo = vec![Q::zero(); r.len() - b.len() + 1];
    while r.len() >= b.len() {
        let shift = r.len() - b.len();
        let c = r.last().unwrap() / &lead;
        for (i, bi) in b.iter().enumerate() {
            r[shift + i] -= &c * bi;
        }
        quo[shift] = c;
        r.pop();
        r = trim(r);
    }
    (trim(quo), r)
}

/// Inverse of `a` modulo `m`, or `None` when they share a factor (or `a == 0`).
pub(crate) fn inverse_mod(a: &[Q], m: &[Q]) -> Option<Vec<Q>> {
    let (_, a) = divrem(a, m);
    if a.is_empty() {
        return None;
    }
    // invariant: s0 * a == r0 (mod m), s1 * a == r1 (mod m)
    let (mut r0, mut r1) = (trim(m.to_vec()), a);
    let (mut s0, mut s1): (Vec<Q>, Vec<Q>) = (Vec::new(), vec![Q::one()]);
    while !r1.is_empty() {
        let (q, r) = divrem(&r0, &r1);
        let s = sub(&s0, &mul(&q, &s1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
    }
    if r0.len() != 1 {
        return None;
    }
    let c = r0[0].clone();
    Some(s0.into_iter().map(|x| x / &c).collect())
}

/// Determinant of a square rational matrix, by clearing denominators row-wise
/// and running fraction-free (Bareiss) elimination over the integers.
pub(crate) fn det(m: &[Vec<Q>]) -> Q {
    let n = m.len();
    if n == 0 {
        return Q::one();
    }
    let mut scale = BigInt::one();
    let mut a: Vec<Vec<BigInt>> = m
        .iter()
        .map(|row| {
            assert_eq!(row.len(), n, "non-square matrix");
            let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            scale *= &l;
            row.iter().map(|x| x.numer() * (&l / x.denom())).collect()
        })
        .collect();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    sign = -sign;
                }
                None => return Q::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    Q::new(sign * &a[n - 1][n - 1], scale)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qv(xs: &[i64]) -> Vec<Q> {
        xs.iter().map(|&x| Q::from_integer(x.into())).collect()
    }

    #[test]
    fn division_identity() {
        let a = qv(&[5, 0, -3, 1, 7]);
        let b = qv(&[1, 2, 3]);
        let (q, r) = divrem(&a, &b);
        assert!(r.len() < b.len());
        let back = trim(
            mul(&q, &b)
                .iter()
                .zip(r.iter().chain(std::iter::repeat(&Q::zero())))
                .map(|(x, y)| x + y)
                .collect(),
        );
        assert_eq!(back, a);
    }

    #[test]
    fn inverse_modulo_cubic() {
        // x * (x^2 - x - 1) = x^3 - x^2 - x == 1 mod (x^3 - x^2 - x - 1)
        let f = qv(&[-1, -1, -1, 1]);
        assert_eq!(inverse_mod(&qv(&[0, 1]), &f).unwrap(), qv(&[-1, -1, 1]));
        assert!(inverse_mod(&qv(&[0]), &f).is_none());
        assert!(inverse_mod(&qv(&[1, 1]), &qv(&[1, 0, -1])).is_none());
    }

    #[test]
    fn determinants() {
        let m = vec![qv(&[2, 0, 1]), qv(&[1, 3, 2]), qv(&[1, 1, 2])];
        assert_eq!(det(&m), Q::from_integer(6.into()));
        let half = Q::new(1.into(), 2.into());
        let m = vec![vec![half.clone(), Q::zero()], vec![Q::zero(), half]];
        assert_eq!(det(&m), Q::new(1.into(), 4.into()));
        let singular = vec![qv(&[1, 2]), qv(&[2, 4])];
        assert!(det(&singular).is_zero());
        let needs_pivot = vec![qv(&[0, 1]), qv(&[1, 0])];
        assert_eq!(det(&needs_pivot), Q::from_integer((-1).into()));
    }
}
