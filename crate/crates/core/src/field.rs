//! The splitting field `K = Q(alpha, beta)` of `x^3 - x^2 - x - 1`, realized as
//! `Q[x]/(p)` with `p = x^6 - x^5 + 2x^4 - 3x^3 + 2x^2 - x + 1`.
//!
//! `p` is palindromic, so `e -> 1/e` is an automorphism whose fixed field is
//! `Q(alpha)` with `alpha = e + 1/e`. Its six roots are `(t +- sqrt(t^2 - 4))/2`
//! for `t` running over `alpha, beta, gamma`. The distinguished generator `e`
//! is `(alpha + i sqrt(4 - alpha^2))/2`, the root on the unit circle above the
//! real axis, so that `alpha` embeds as the real root of the cubic.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::interval::ComplexEnclosure;
use crate::poly::{self, Q};
use crate::real::constants;

/// Low coefficients of `p`; `p = x^6 + sum P_LOW[i] x^i`.
pub const P_LOW: [i64; 6] = [1, -1, 2, -3, 2, -1];

/// Coordinates of alpha in the basis `1, e, ..., e^5`.
pub const ALPHA_COORDS: [i64; 6] = [1, -1, 3, -2, 1, -1];

fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

fn p_poly() -> Vec<Q> {
    let mut p: Vec<Q> = P_LOW.iter().map(|&c| q(c)).collect();
    p.push(Q::one());
    p
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FieldElement {
    coords: [Q; 6],
}

impl FieldElement {
    pub fn new(coords: [Q; 6]) -> Self {
        Self { coords }
    }

    pub fn from_ints(c: [i64; 6]) -> Self {
        Self::new(c.map(q))
    }

    /// `c / den` coordinatewise.
    pub fn from_ints_over(c: [i64; 6], den: i64) -> Self {
        Self::new(c.map(|x| Q::new(x.into(), den.into())))
    }

    pub fn from_rational(x: Q) -> Self {
        let mut c: [Q; 6] = std::array::from_fn(|_| Q::zero());
        c[0] = x;
        Self::new(c)
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(q(n))
    }

    pub fn zero() -> Self {
        Self::from_int(0)
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    /// The generator `e`.
    pub fn epsilon() -> Self {
        Self::from_ints([0, 1, 0, 0, 0, 0])
    }

    /// `alpha = -e^5 + e^4 - 2e^3 + 3e^2 - e + 1`.
    pub fn alpha() -> Self {
        Self::from_ints(ALPHA_COORDS)
    }

    pub fn coords(&self) -> &[Q; 6] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    /// The rational value when the element lies in Q.
    pub fn as_rational(&self) -> Option<&Q> {
        self.coords[1..]
            .iter()
            .all(Zero::is_zero)
            .then(|| &self.coords[0])
    }

    pub fn scale(&self, k: &Q) -> Self {
        Self::new(self.coords.clone().map(|c| c * k))
    }

    fn from_poly(mut c: Vec<Q>) -> Self {
        // e^6 = -(P_LOW . (1, e, ..., e^5))
        while c.len() > 6 {
            let top = c.pop().unwrap();
            let base = c.len() - 6;
            for (i, &pc) in P_LOW.iter().enumerate() {
                c[base + i] -= &top * q(pc);
            }
        }
        c.resize(6, Q::zero());
        Self::new(std::array::from_fn(|i| c[i].clone()))
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        poly::inverse_mod(&self.coords, &p_poly())
            .map(Self::from_poly)
            .ok_or(Error::DivisionByZero)
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        let mut b = if e < 0 { self.inv()? } else { self.clone() };
        let mut result = Self::one();
        let mut k = e.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                result = &result * &b;
            }
            k >>= 1;
            if k > 0 {
                b = &b * &b;
            }
        }
        Ok(result)
    }

    /// Matrix of multiplication by `self`; column `j` holds `self * e^j`.
    pub fn multiplication_matrix(&self) -> Vec<Vec<Q>> {
        let e = Self::epsilon();
        let mut cols = Vec::with_capacity(6);
        let mut cur = self.clone();
        for _ in 0..6 {
            let next = &cur * &e;
            cols.push(cur);
            cur = next;
        }
        (0..6)
            .map(|i| (0..6).map(|j| cols[j].coords[i].clone()).collect())
            .collect()
    }

    /// Field norm from K to Q.
    pub fn norm(&self) -> Q {
        poly::det(&self.multiplication_matrix())
    }

    /// Value under the embedding sending `e` to `root`.
    pub fn eval(&self, root: &ComplexEnclosure) -> ComplexEnclosure {
        let prec = root.prec();
        let mut acc = ComplexEnclosure::from_rational(&self.coords[5], prec);
        for c in self.coords[..5].iter().rev() {
            acc = &(&acc * root) + &ComplexEnclosure::from_rational(c, prec);
        }
        acc
    }

    /// The six complex embeddings, in the order of [`p_roots`].
    pub fn embeddings(&self, bits: u32) -> Result<[ComplexEnclosure; 6]> {
        let roots = p_roots(bits)?;
        Ok(roots.map(|r| self.eval(&r)))
    }
}

/// Norm from K to Q.
pub fn norm6(u: &FieldElement) -> Q {
    u.norm()
}

/// Enclosures of the six roots of `p`, ordered
/// `[e_a+, e_a-, e_b+, e_b-, e_g+, e_g-]` where `e_t+- = (t +- sqrt(t^2 - 4))/2`
/// (principal square root) and `t` runs over `alpha, beta, gamma`. Entry 0 is
/// the distinguished generator; entries 0 and 1 are the embeddings fixing alpha.
pub fn p_roots(bits: u32) -> Result<[ComplexEnclosure; 6]> {
    let k = constants(bits)?;
    let prec = k.precision_bits + 16;
    let two = ComplexEnclosure::from_int(2, prec);
    let four = ComplexEnclosure::from_int(4, prec);
    let mut out = Vec::with_capacity(6);
    for t in k.roots() {
        let d = (&t.square() - &four).sqrt()?;
        out.push((&t + &d).div(&two)?);
        out.push((&t - &d).div(&two)?);
    }
    Ok(out.try_into().expect("six roots"))
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

impl Add for &FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: &FieldElement) -> FieldElement {
        FieldElement::new(std::array::from_fn(|i| &self.coords[i] + &rhs.coords[i]))
    }
}

impl Sub for &FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: &FieldElement) -> FieldElement {
        FieldElement::new(std::array::from_fn(|i| &self.coords[i] - &rhs.coords[i]))
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement::new(self.coords.clone().map(|c| -c))
    }
}

impl Mul for &FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: &FieldElement) -> FieldElement {
        FieldElement::from_poly(poly::mul(&self.coords, &rhs.coords))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dyadic::Dyadic;

    #[test]
    fn reduction_of_e_to_the_sixth() {
        let e = FieldElement::epsilon();
        let e5 = e.pow(5).unwrap();
        assert_eq!(&e * &e5, FieldElement::from_ints([-1, 1, -2, 3, -2, 1]));
    }

    #[test]
    fn alpha_is_e_plus_inverse() {
        let e = FieldElement::epsilon();
        assert_eq!(&e + &e.inv().unwrap(), FieldElement::alpha());
    }

    #[test]
    fn alpha_is_a_root_of_the_cubic() {
        let a = FieldElement::alpha();
        let a2 = &a * &a;
        let f = &(&(&(&a2 * &a) - &a2) - &a) - &FieldElement::one();
        assert!(f.is_zero());
    }

    #[test]
    fn inverses() {
        let a = FieldElement::alpha();
        let expected = &(&(&a * &a) - &a) - &FieldElement::one();
        assert_eq!(a.inv().unwrap(), expected);
        assert_eq!(
            FieldElement::from_int(2).inv().unwrap(),
            FieldElement::from_rational(Q::new(1.into(), 2.into()))
        );
        assert_eq!(FieldElement::zero().inv(), Err(Error::DivisionByZero));
        let u = FieldElement::from_ints([3, -1, 0, 2, 0, 5]);
        assert_eq!(&u * &u.inv().unwrap(), FieldElement::one());
    }

    #[test]
    fn norms() {
        assert_eq!(FieldElement::from_int(2).norm(), q(64));
        assert_eq!(FieldElement::alpha().norm(), q(1));
        assert_eq!(FieldElement::epsilon().norm(), q(1));
    }

    #[test]
    fn distinguished_root_sends_alpha_to_the_real_root() {
        let roots = p_roots(96).unwrap();
        let k = constants(96).unwrap();
        assert!(roots[0].im.is_positive());
        let a = FieldElement::alpha();
        for (j, r) in roots.iter().enumerate() {
            let img = a.eval(r);
            let tau = &k.roots()[j / 2];
            assert!(img.intersects(tau), "root {j}");
        }
        assert!(a.eval(&roots[0]).im.contains(&Dyadic::zero()));
    }

    #[test]
    fn product_of_embeddings_contains_norm() {
        let u = FieldElement::from_ints([1, 2, -1, 0, 3, -2]);
        let emb = u.embeddings(128).unwrap();
        let prod = emb.iter().skip(1).fold(emb[0].clone(), |acc, z| &acc * z);
        assert!(prod.re.contains_rational(&u.norm()));
        assert!(prod.im.contains_zero());
    }
}
