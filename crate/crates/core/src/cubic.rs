//! Exact arithmetic in the cubic field `Q(alpha)`, basis `{1, alpha, alpha^2}`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::field::FieldElement;
use crate::interval::{ComplexEnclosure, Enclosure};
use crate::poly::{self, Q};

/// `x^3 - x^2 - x - 1`, little-endian.
pub const CUBIC: [i64; 4] = [-1, -1, -1, 1];

/// Discriminant of the monic cubic `x^3 + b x^2 + c x + d`.
pub const fn cubic_discriminant(b: i64, c: i64, d: i64) -> i64 {
    b * b * c * c - 4 * c * c * c - 4 * b * b * b * d - 27 * d * d + 18 * b * c * d
}

pub const DISCRIMINANT: i64 = cubic_discriminant(CUBIC[2], CUBIC[1], CUBIC[0]);
const _: () = assert!(DISCRIMINANT == -44);

fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CubicElement {
    coords: [Q; 3],
}

impl CubicElement {
    pub fn new(coords: [Q; 3]) -> Self {
        Self { coords }
    }

    pub fn from_ints(c: [i64; 3]) -> Self {
        Self::new(c.map(q))
    }

    pub fn from_bigints(c: [BigInt; 3]) -> Self {
        Self::new(c.map(Q::from_integer))
    }

    pub fn from_rational(x: Q) -> Self {
        Self::new([x, Q::zero(), Q::zero()])
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_ints([n, 0, 0])
    }

    pub fn zero() -> Self {
        Self::from_int(0)
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn alpha() -> Self {
        Self::from_ints([0, 1, 0])
    }

    pub fn coords(&self) -> &[Q; 3] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn is_integral(&self) -> bool {
        self.coords.iter().all(|c| c.is_integer())
    }

    pub fn scale(&self, k: &Q) -> Self {
        Self::new(self.coords.clone().map(|c| c * k))
    }

    /// Multiplication by alpha: `(c0, c1, c2) -> (c2, c0 + c2, c1 + c2)`.
    pub fn mul_alpha(&self) -> Self {
        let [c0, c1, c2] = &self.coords;
        Self::new([c2.clone(), c0 + c2, c1 + c2])
    }

    /// `alpha^n` with integer coordinates, by iterating [`Self::mul_alpha`].
    pub fn alpha_pow(n: u64) -> [BigInt; 3] {
        let mut c = [BigInt::one(), BigInt::zero(), BigInt::zero()];
        for _ in 0..n {
            let [c0, c1, c2] = c;
            c = [c2.clone(), c0 + &c2, c1 + c2];
        }
        c
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let m = CUBIC.map(q);
        let inv = poly::inverse_mod(&self.coords, &m).ok_or(Error::DivisionByZero)?;
        Ok(Self::from_poly(inv))
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut result = Self::one();
        let mut b = base;
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

    fn from_poly(mut p: Vec<Q>) -> Self {
        // reduce with alpha^3 = alpha^2 + alpha + 1
        while p.len() > 3 {
            let top = p.pop().unwrap();
            let n = p.len();
            p[n - 1] += &top;
            p[n - 2] += &top;
            p[n - 3] += &top;
        }
        p.resize(3, Q::zero());
        Self::new([p[0].clone(), p[1].clone(), p[2].clone()])
    }

    /// Multiplication-by-self matrix; column `j` holds `self * alpha^j`.
    pub fn multiplication_matrix(&self) -> Vec<Vec<Q>> {
        let c0 = self.clone();
        let c1 = c0.mul_alpha();
        let c2 = c1.mul_alpha();
        let cols = [c0, c1, c2];
        (0..3)
            .map(|i| (0..3).map(|j| cols[j].coords[i].clone()).collect())
            .collect()
    }

    /// Field norm to Q.
    pub fn norm(&self) -> Q {
        poly::det(&self.multiplication_matrix())
    }

    pub fn eval_real(&self, x: &Enclosure) -> Enclosure {
        let prec = x.prec();
        let [c0, c1, c2] = &self.coords;
        let e = |c: &Q| Enclosure::from_rational(c, prec);
        &(&(&e(c2) * x) + &e(c1)) * x + e(c0)
    }

    pub fn eval_complex(&self, z: &ComplexEnclosure) -> ComplexEnclosure {
        let prec = z.prec();
        let [c0, c1, c2] = &self.coords;
        let e = |c: &Q| ComplexEnclosure::from_rational(c, prec);
        let acc = &(&e(c2) * z) + &e(c1);
        &(&acc * z) + &e(c0)
    }

    /// Image in the sextic field via `alpha -> -e^5 + e^4 - 2e^3 + 3e^2 - e + 1`.
    pub fn embed(&self) -> FieldElement {
        let a = FieldElement::alpha();
        let [c0, c1, c2] = &self.coords;
        &(&FieldElement::from_rational(c0.clone()) + &a.scale(c1)) + &(&a * &a).scale(c2)
    }
}

/// Norm from `Q(alpha)` to Q.
pub fn norm3(t: &CubicElement) -> BigRational {
    t.norm()
}

impl fmt::Display for CubicElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [c0, c1, c2] = &self.coords;
        write!(f, "({c0}) + ({c1})a + ({c2})a^2")
    }
}

impl Add for &CubicElement {
    type Output = CubicElement;
    fn add(self, rhs: &CubicElement) -> CubicElement {
        CubicElement::new(std::array::from_fn(|i| &self.coords[i] + &rhs.coords[i]))
    }
}

impl Sub for &CubicElement {
    type Output = CubicElement;
    fn sub(self, rhs: &CubicElement) -> CubicElement {
        CubicElement::new(std::array::from_fn(|i| &self.coords[i] - &rhs.coords[i]))
    }
}

impl Neg for &CubicElement {
    type Output = CubicElement;
    fn neg(self) -> CubicElement {
        CubicElement::new(self.coords.clone().map(|c| -c))
    }
}

impl Mul for &CubicElement {
    type Output = CubicElement;
    fn mul(self, rhs: &CubicElement) -> CubicElement {
        CubicElement::from_poly(poly::mul(&self.coords, &rhs.coords))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn alpha_satisfies_cubic() {
        let a = CubicElement::alpha();
        let a3 = a.pow(3).unwrap();
        let f = &(&(&a3 - &a.pow(2).unwrap()) - &a) - &CubicElement::one();
        assert!(f.is_zero());
    }

    #[test]
    fn inverse_of_alpha() {
        let inv = CubicElement::alpha().inv().unwrap();
        assert_eq!(inv, CubicElement::from_ints([-1, -1, 1]));
        assert_eq!(CubicElement::zero().inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn norms() {
        let n = |c: [i64; 3]| CubicElement::from_ints(c).norm();
        assert_eq!(n([-2, 1, 0]), q(-1));
        assert_eq!(n([2, 1, 0]), q(11));
        assert_eq!(n([0, 1, 0]), q(1));
        assert_eq!(n([3, 0, 0]), q(27));
        assert_eq!(n([-12, 0, 3]), q(-297));
    }

    #[test]
    fn alpha_pow_matches_repeated_multiplication() {
        let mut acc = CubicElement::one();
        for n in 0..40u64 {
            assert_eq!(CubicElement::from_bigints(CubicElement::alpha_pow(n)), acc);
            acc = &acc * &CubicElement::alpha();
        }
    }

    #[test]
    fn discriminant_is_minus_44() {
        assert_eq!(DISCRIMINANT, -44);
    }
}
