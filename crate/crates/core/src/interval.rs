//! Guaranteed enclosures with exact dyadic endpoints and outward rounding.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::dyadic::{Dyadic, Round};
use crate::error::{Error, Result};

/// A real number known to lie in `[lo, hi]`. Every operation rounds its
/// endpoints outward to `prec` significant bits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Enclosure {
    lo: Dyadic,
    hi: Dyadic,
    prec: u32,
}

fn straddle(what: &str, prec: u32) -> Error {
    Error::Precision {
        bits: prec,
        what: format!("{what}: enclosure straddles zero"),
    }
}

impl Enclosure {
    pub fn new(lo: Dyadic, hi: Dyadic, prec: u32) -> Self {
        assert!(lo <= hi, "enclosure with lo > hi");
        Self { lo, hi, prec }
    }

    pub fn point(x: Dyadic, prec: u32) -> Self {
        Self::new(x.clone(), x, prec)
    }

    pub fn from_int(n: impl Into<BigInt>, prec: u32) -> Self {
        let d = Dyadic::from_int(n.into());
        Self::new(
            d.round(prec, Round::Floor),
            d.round(prec, Round::Ceil),
            prec,
        )
    }

    pub fn from_rational(q: &BigRational, prec: u32) -> Self {
        Self::new(
            Dyadic::from_rational(q, prec, Round::Floor),
            Dyadic::from_rational(q, prec, Round::Ceil),
            prec,
        )
    }

    pub fn lo(&self) -> &Dyadic {
        &self.lo
    }

    pub fn hi(&self) -> &Dyadic {
        &self.hi
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn with_prec(mut self, prec: u32) -> Self {
        self.prec = prec;
        self
    }

    pub fn width(&self) -> Dyadic {
        self.hi.sub(&self.lo)
    }

    /// True when `width <= 2^-bits`.
    pub fn width_at_most_pow2(&self, bits: u32) -> bool {
        self.width() <= Dyadic::pow2(-(bits as i64))
    }

    pub fn mid(&self) -> Dyadic {
        self.lo.add(&self.hi).shl(-1)
    }

    pub fn contains(&self, x: &Dyadic) -> bool {
        self.lo <= *x && *x <= self.hi
    }

    pub fn contains_rational(&self, q: &BigRational) -> bool {
        self.lo.to_rational() <= *q && *q <= self.hi.to_rational()
    }

    pub fn contains_zero(&self) -> bool {
        self.lo.signum() <= 0 && self.hi.signum() >= 0
    }

    /// `other` lies inside `self`.
    pub fn encloses(&self, other: &Enclosure) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn intersects(&self, other: &Enclosure) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    pub fn is_positive(&self) -> bool {
        self.lo.signum() > 0
    }

    pub fn is_negative(&self) -> bool {
        self.hi.signum() < 0
    }

    /// Certain order against a point: `Some` only when the whole enclosure is on one side.
    pub fn cmp_point(&self, x: &Dyadic) -> Option<Ordering> {
        if self.hi < *x {
            Some(Ordering::Less)
        } else if self.lo > *x {
            Some(Ordering::Greater)
        } else if self.lo == self.hi {
            Some(Ordering::Equal)
        } else {
            None
        }
    }

    /// Certain order between two enclosures.
    pub fn cmp_certain(&self, other: &Enclosure) -> Option<Ordering> {
        if self.hi < other.lo {
            Some(Ordering::Less)
        } else if self.lo > other.hi {
            Some(Ordering::Greater)
        } else {
            None
        }
    }

    pub fn abs(&self) -> Enclosure {
        if self.lo.signum() >= 0 {
            self.clone()
        } else if self.hi.signum() <= 0 {
            -self
        } else {
            let hi = self.hi.clone().max(self.lo.neg());
            Enclosure::new(Dyadic::zero(), hi, self.prec)
        }
    }

    pub fn square(&self) -> Enclosure {
        let a = self.abs();
        Enclosure::new(
            a.lo.mul(&a.lo).round(self.prec, Round::Floor),
            a.hi.mul(&a.hi).round(self.prec, Round::Ceil),
            self.prec,
        )
    }

    pub fn recip(&self) -> Result<Enclosure> {
        if self.contains_zero() {
            return Err(straddle("reciprocal", self.prec));
        }
        let one = Dyadic::one();
        Ok(Enclosure::new(
            one.div_round(&self.hi, self.prec, Round::Floor),
            one.div_round(&self.lo, self.prec, Round::Ceil),
            self.prec,
        ))
    }

    pub fn div(&self, other: &Enclosure) -> Result<Enclosure> {
        Ok(self * &other.recip()?)
    }

    /// Square root; the enclosure must not reach below zero.
    pub fn sqrt(&self) -> Result<Enclosure> {
        self.root(2)
    }

    pub fn root(&self, k: u32) -> Result<Enclosure> {
        if self.lo.signum() < 0 {
            return Err(Error::Precision {
                bits: self.prec,
                what: "root of an enclosure reaching below zero".into(),
            });
        }
        Ok(Enclosure::new(
            self.lo.root_round(k, self.prec, Round::Floor),
            self.hi.root_round(k, self.prec, Round::Ceil),
            self.prec,
        ))
    }

    pub fn powu(&self, mut e: u64) -> Enclosure {
        let mut result = Enclosure::from_int(1, self.prec);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = base.square();
            }
        }
        result
    }

    pub fn powi(&self, e: i64) -> Result<Enclosure> {
        if e >= 0 {
            Ok(self.powu(e as u64))
        } else {
            self.recip().map(|r| r.powu(e.unsigned_abs()))
        }
    }

    /// Smallest enclosure containing both.
    pub fn hull(&self, other: &Enclosure) -> Enclosure {
        Enclosure::new(
            self.lo.clone().min(other.lo.clone()),
            self.hi.clone().max(other.hi.clone()),
            self.prec.max(other.prec),
        )
    }

    pub fn to_f64(&self) -> f64 {
        self.mid().to_f64()
    }
}

impl fmt::Display for Enclosure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:.17e}, {:.17e}]", self.lo.to_f64(), self.hi.to_f64())
    }
}

impl Add for &Enclosure {
    type Output = Enclosure;
    fn add(self, rhs: &Enclosure) -> Enclosure {
        let prec = self.prec.max(rhs.prec);
        Enclosure::new(
            self.lo.add(&rhs.lo).round(prec, Round::Floor),
            self.hi.add(&rhs.hi).round(prec, Round::Ceil),
            prec,
        )
    }
}

impl Sub for &Enclosure {
    type Output = Enclosure;
    fn sub(self, rhs: &Enclosure) -> Enclosure {
        let prec = self.prec.max(rhs.prec);
        Enclosure::new(
            self.lo.sub(&rhs.hi).round(prec, Round::Floor),
            self.hi.sub(&rhs.lo).round(prec, Round::Ceil),
            prec,
        )
    }
}

impl Neg for &Enclosure {
    type Output = Enclosure;
    fn neg(self) -> Enclosure {
        Enclosure::new(self.hi.neg(), self.lo.neg(), self.prec)
    }
}

impl Mul for &Enclosure {
    type Output = Enclosure;
    fn mul(self, rhs: &Enclosure) -> Enclosure {
        let prec = self.prec.max(rhs.prec);
        let products = [
            self.lo.mul(&rhs.lo),
            self.lo.mul(&rhs.hi),
            self.hi.mul(&rhs.lo),
            self.hi.mul(&rhs.hi),
        ];
        let lo = products.iter().min().unwrap().round(prec, Round::Floor);
        let hi = products.iter().max().unwrap().round(prec, Round::Ceil);
        Enclosure::new(lo, hi, prec)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Enclosure {
            type Output = Enclosure;
            fn $m(self, rhs: Enclosure) -> Enclosure {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Enclosure {
    type Output = Enclosure;
    fn neg(self) -> Enclosure {
        -&self
    }
}

/// Rectangle enclosure of a complex number.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexEnclosure {
    pub re: Enclosure,
    pub im: Enclosure,
}

impl ComplexEnclosure {
    pub fn new(re: Enclosure, im: Enclosure) -> Self {
        Self { re, im }
    }

    pub fn from_real(re: Enclosure) -> Self {
        let prec = re.prec();
        Self {
            re,
            im: Enclosure::from_int(0, prec),
        }
    }

    pub fn from_int(n: i64, prec: u32) -> Self {
        Self::from_real(Enclosure::from_int(n, prec))
    }

    pub fn from_rational(q: &BigRational, prec: u32) -> Self {
        Self::from_real(Enclosure::from_rational(q, prec))
    }

    pub fn prec(&self) -> u32 {
        self.re.prec().max(self.im.prec())
    }

    pub fn conj(&self) -> Self {
        Self {
            re: self.re.clone(),
            im: -&self.im,
        }
    }

    pub fn scale(&self, k: &Enclosure) -> Self {
        Self {
            re: &self.re * k,
            im: &self.im * k,
        }
    }

    pub fn norm_sqr(&self) -> Enclosure {
        &self.re.square() + &self.im.square()
    }

    pub fn abs(&self) -> Result<Enclosure> {
        self.norm_sqr().sqrt()
    }

    pub fn recip(&self) -> Result<Self> {
        let n = self.norm_sqr().recip()?;
        Ok(self.conj().scale(&n))
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self * &other.recip()?)
    }

    pub fn square(&self) -> Self {
        let re = &self.re.square() - &self.im.square();
        let im = &self.re * &self.im;
        Self { re, im: &im + &im }
    }

    pub fn powu(&self, mut e: u64) -> Self {
        let mut result = Self::from_int(1, self.prec());
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = base.square();
            }
        }
        result
    }

    pub fn powi(&self, e: i64) -> Result<Self> {
        if e >= 0 {
            Ok(self.powu(e as u64))
        } else {
            self.recip().map(|r| r.powu(e.unsigned_abs()))
        }
    }

    /// Principal square root. A strictly negative real axis argument (the
    /// imaginary part is exactly zero) maps to the positive imaginary axis.
    pub fn sqrt(&self) -> Result<Self> {
        let prec = self.prec();
        let zero = Dyadic::zero();
        if self.im.lo() == &zero && self.im.hi() == &zero {
            if self.re.lo().signum() >= 0 {
                return Ok(Self::from_real(self.re.sqrt()?));
            }
            if self.re.is_negative() {
                return Ok(Self::new(Enclosure::from_int(0, prec), (-&self.re).sqrt()?));
            }
        }
        if self.im.contains_zero() && !self.re.is_positive() {
            return Err(Error::Precision {
                bits: prec,
                what: "complex sqrt near the branch cut".into(),
            });
        }
        let r = self.abs()?;
        let two = Enclosure::from_int(2, prec);
        let clamp = |e: Enclosure| {
            if e.lo().signum() < 0 {
                Enclosure::new(Dyadic::zero(), e.hi().clone().max(Dyadic::zero()), e.prec())
            } else {
                e
            }
        };
        let re = clamp((&r + &self.re).div(&two)?).sqrt()?;
        let im_mag = clamp((&r - &self.re).div(&two)?).sqrt()?;
        let im = if self.im.is_negative() {
            -im_mag
        } else if self.im.is_positive() {
            im_mag
        } else {
            // re > 0 and im straddles 0: the root is near the positive real axis
            Enclosure::new(im_mag.hi().neg(), im_mag.hi().clone(), prec)
        };
        Ok(Self { re, im })
    }

    pub fn intersects(&self, other: &Self) -> bool {
        self.re.intersects(&other.re) && self.im.intersects(&other.im)
    }

    pub fn contains_zero(&self) -> bool {
        self.re.contains_zero() && self.im.contains_zero()
    }

    /// Width of the wider component.
    pub fn width(&self) -> Dyadic {
        self.re.width().max(self.im.width())
    }
}

impl fmt::Display for ComplexEnclosure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}i", self.re, self.im)
    }
}

impl Add for &ComplexEnclosure {
    type Output = ComplexEnclosure;
    fn add(self, rhs: &ComplexEnclosure) -> ComplexEnclosure {
        ComplexEnclosure {
            re: &self.re + &rhs.re,
            im: &self.im + &rhs.im,
        }
    }
}

impl Sub for &ComplexEnclosure {
    type Output = ComplexEnclosure;
    fn sub(self, rhs: &ComplexEnclosure) -> ComplexEnclosure {
        ComplexEnclosure {
            re: &self.re - &rhs.re,
            im: &self.im - &rhs.im,
        }
    }
}

impl Neg for &ComplexEnclosure {
    type Output = ComplexEnclosure;
    fn neg(self) -> ComplexEnclosure {
        ComplexEnclosure {
            re: -&self.re,
            im: -&self.im,
        }
    }
}

impl Mul for &ComplexEnclosure {
    type Output = ComplexEnclosure;
    fn mul(self, rhs: &ComplexEnclosure) -> ComplexEnclosure {
        let re = &(&self.re * &rhs.re) - &(&self.im * &rhs.im);
        let im = &(&self.re * &rhs.im) + &(&self.im * &rhs.re);
        ComplexEnclosure { re, im }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn sqrt_two_brackets() {
        let two = Enclosure::from_int(2, 80);
        let r = two.sqrt().unwrap();
        let sq = r.square();
        assert!(sq.contains(&Dyadic::from_i64(2)));
        assert!(r.width_at_most_pow2(70));
    }

    #[test]
    fn recip_of_straddling_fails() {
        let e = Enclosure::new(Dyadic::from_i64(-1), Dyadic::from_i64(1), 32);
        assert!(e.recip().is_err());
    }

    #[test]
    fn complex_sqrt_of_negative_real() {
        let minus_four = ComplexEnclosure::from_int(-4, 64);
        let r = minus_four.sqrt().unwrap();
        assert!(r.re.contains(&Dyadic::zero()));
        assert!(r.im.contains(&Dyadic::from_i64(2)));
    }

    #[test]
    fn complex_sqrt_squares_back() {
        let z = ComplexEnclosure::new(
            Enclosure::from_rational(&q(-3, 7), 96),
            Enclosure::from_rational(&q(5, 11), 96),
        );
        let r = z.sqrt().unwrap();
        assert!(r.re.is_positive());
        assert!(r.square().intersects(&z));
    }

    proptest! {
        #[test]
        fn field_ops_contain_exact_results(
            an in -1000i64..1000, ad in 1i64..1000,
            bn in -1000i64..1000, bd in 1i64..1000,
            prec in 8u32..96,
        ) {
            let (a, b) = (q(an, ad), q(bn, bd));
            let (ea, eb) = (Enclosure::from_rational(&a, prec), Enclosure::from_rational(&b, prec));
            prop_assert!((&ea + &eb).contains_rational(&(&a + &b)));
            prop_assert!((&ea - &eb).contains_rational(&(&a - &b)));
            prop_assert!((&ea * &eb).contains_rational(&(&a * &b)));
            prop_assert!(ea.square().contains_rational(&(&a * &a)));
            if bn != 0 {
                prop_assert!(ea.div(&eb).unwrap().contains_rational(&(&a / &b)));
            }
        }
    }
}
