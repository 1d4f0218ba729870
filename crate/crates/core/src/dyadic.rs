//! Exact dyadic rationals `mant * 2^exp` with directed rounding to a given
//! number of significant bits.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Round {
    Floor,
    Ceil,
}

/// `mant * 2^exp`, normalized so that `mant` is odd (or zero with `exp == 0`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Dyadic {
    mant: BigInt,
    exp: i64,
}

fn floor_shr(m: &BigInt, s: u64) -> BigInt {
    if s == 0 {
        return m.clone();
    }
    if m.sign() == Sign::Minus {
        let mag = m.magnitude();
        let q = (mag + ((BigUint::one() << s) - 1u32)) >> s;
        -BigInt::from(q)
    } else {
        m >> s
    }
}

fn shr_round(m: &BigInt, s: u64, dir: Round) -> BigInt {
    match dir {
        Round::Floor => floor_shr(m, s),
        Round::Ceil => -floor_shr(&-m, s),
    }
}

impl Dyadic {
    pub fn new(mant: BigInt, exp: i64) -> Self {
        if mant.is_zero() {
            return Self::zero();
        }
        let tz = mant.trailing_zeros().unwrap_or(0);
        Self {
            mant: mant >> tz,
            exp: exp + tz as i64,
        }
    }

    pub fn zero() -> Self {
        Self {
            mant: BigInt::zero(),
            exp: 0,
        }
    }

    pub fn one() -> Self {
        Self::from_int(BigInt::one())
    }

    pub fn from_int(n: BigInt) -> Self {
        Self::new(n, 0)
    }

    pub fn from_i64(n: i64) -> Self {
        Self::from_int(BigInt::from(n))
    }

    /// `2^e`.
    pub fn pow2(e: i64) -> Self {
        Self {
            mant: BigInt::one(),
            exp: e,
        }
    }

    /// Exact value of a finite double.
    pub fn from_f64(x: f64) -> Self {
        assert!(x.is_finite(), "non-finite double");
        if x == 0.0 {
            return Self::zero();
        }
        let bits = x.to_bits();
        let sign = if bits >> 63 == 1 { -1 } else { 1 };
        let raw_exp = ((bits >> 52) & 0x7ff) as i64;
        let frac = bits & ((1u64 << 52) - 1);
        let (m, e) = if raw_exp == 0 {
            (frac, -1074)
        } else {
            (frac | (1u64 << 52), raw_exp - 1075)
        };
        Self::new(BigInt::from(m) * sign, e)
    }

    /// Rounds a rational to `prec` significant bits in direction `dir`.
    pub fn from_rational(q: &BigRational, prec: u32, dir: Round) -> Self {
        let num = Self::from_int(q.numer().clone());
        let den = Self::from_int(q.denom().clone());
        num.div_round(&den, prec, dir)
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.mant
    }

    pub fn exponent(&self) -> i64 {
        self.exp
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn signum(&self) -> i32 {
        match self.mant.sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }

    pub fn abs(&self) -> Self {
        Self {
            mant: self.mant.abs(),
            exp: self.exp,
        }
    }

    /// Bit length of the mantissa magnitude.
    pub fn bits(&self) -> u64 {
        self.mant.bits()
    }

    /// `floor(log2 |x|)`, or `None` for zero.
    pub fn log2_floor(&self) -> Option<i64> {
        if self.is_zero() {
            None
        } else {
            Some(self.exp + self.bits() as i64 - 1)
        }
    }

    fn align(&self, other: &Self) -> (BigInt, BigInt, i64) {
        let e = self.exp.min(other.exp);
        let a = &self.mant << (self.exp - e) as u64;
        let b = &other.mant << (other.exp - e) as u64;
        (a, b, e)
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let (a, b, e) = self.align(other);
        Self::new(a + b, e)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::new(&self.mant * &other.mant, self.exp + other.exp)
    }

    pub fn neg(&self) -> Self {
        Self {
            mant: -&self.mant,
            exp: self.exp,
        }
    }

    /// `self * 2^k`.
    pub fn shl(&self, k: i64) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        Self {
            mant: self.mant.clone(),
            exp: self.exp + k,
        }
    }

    /// Rounds to at most `prec` significant bits.
    pub fn round(&self, prec: u32, dir: Round) -> Self {
        let bits = self.bits();
        if bits <= prec as u64 {
            return self.clone();
        }
        let s = bits - prec as u64;
        Self::new(shr_round(&self.mant, s, dir), self.exp + s as i64)
    }

    /// `self / other` rounded to `prec` significant bits.
    pub fn div_round(&self, other: &Self, prec: u32, dir: Round) -> Self {
        assert!(!other.is_zero(), "dyadic division by zero");
        if self.is_zero() {
            return Self::zero();
        }
        let s = (prec as i64 + other.bits() as i64 - self.bits() as i64 + 2).max(0) as u64;
        let num = &self.mant << s;
        let q = match dir {
            Round::Floor => num.div_floor(&other.mant),
            Round::Ceil => -((-num).div_floor(&other.mant)),
        };
        Self::new(q, self.exp - other.exp - s as i64).round(prec, dir)
    }

    /// `k`-th root of a nonnegative value, rounded to `prec` significant bits.
    pub fn root_round(&self, k: u32, prec: u32, dir: Round) -> Self {
        assert!(k >= 1);
        assert!(self.signum() >= 0, "root of a negative dyadic");
        if self.is_zero() || k == 1 {
            return self.round(prec, dir);
        }
        let mag = self.mant.magnitude();
        let want = (k as u64) * (prec as u64 + 2);
        let mut s = want.saturating_sub(mag.bits());
        let kk = k as i64;
        while (self.exp - s as i64).rem_euclid(kk) != 0 {
            s += 1;
        }
        let scaled = mag << s;
        let mut r = scaled.nth_root(k);
        if dir == Round::Ceil && r.pow(k) != scaled {
            r += 1u32;
        }
        Self::new(BigInt::from(r), (self.exp - s as i64) / kk).round(prec, dir)
    }

    pub fn to_rational(&self) -> BigRational {
        if self.exp >= 0 {
            BigRational::from_integer(&self.mant << self.exp as u64)
        } else {
            BigRational::new(self.mant.clone(), BigInt::one() << (-self.exp) as u64)
        }
    }

    /// Nearest-ish double; for display and seeding only.
    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let bits = self.bits();
        let shift = bits.saturating_sub(60);
        let m = (&self.mant >> shift).to_f64().unwrap_or(0.0);
        m * 2f64.powi((self.exp + shift as i64).clamp(-2000, 2000) as i32)
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        let (sa, sb) = (self.signum(), other.signum());
        if sa != sb {
            return sa.cmp(&sb);
        }
        if sa == 0 {
            return Ordering::Equal;
        }
        // same nonzero sign: compare magnitudes by leading bit position first
        let (la, lb) = (self.log2_floor().unwrap(), other.log2_floor().unwrap());
        if la != lb {
            let mag = la.cmp(&lb);
            return if sa > 0 { mag } else { mag.reverse() };
        }
        let (a, b, _) = self.align(other);
        a.cmp(&b)
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_rational())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn normalization_and_equality() {
        let a = Dyadic::new(BigInt::from(12), 0);
        let b = Dyadic::new(BigInt::from(3), 2);
        assert_eq!(a, b);
        assert_eq!(a.to_rational(), q(12, 1));
        assert_eq!(Dyadic::from_f64(0.375).to_rational(), q(3, 8));
        assert_eq!(Dyadic::from_f64(-2.5).to_rational(), q(-5, 2));
    }

    #[test]
    fn directed_rounding() {
        let third = q(1, 3);
        let lo = Dyadic::from_rational(&third, 20, Round::Floor);
        let hi = Dyadic::from_rational(&third, 20, Round::Ceil);
        assert!(lo.to_rational() < third && third < hi.to_rational());
        assert!(lo.bits() <= 20 && hi.bits() <= 20);
        let neg = q(-1, 3);
        let nlo = Dyadic::from_rational(&neg, 20, Round::Floor);
        let nhi = Dyadic::from_rational(&neg, 20, Round::Ceil);
        assert!(nlo.to_rational() < neg && neg < nhi.to_rational());
        assert_eq!(nlo, hi.neg());
    }

    #[test]
    fn roots_bracket() {
        let two = Dyadic::from_i64(2);
        let lo = two.root_round(2, 64, Round::Floor);
        let hi = two.root_round(2, 64, Round::Ceil);
        assert!(lo.mul(&lo) < two && two < hi.mul(&hi));
        let eight = Dyadic::from_i64(8);
        assert_eq!(eight.root_round(3, 10, Round::Floor), two);
        assert_eq!(eight.root_round(3, 10, Round::Ceil), two);
        let small = Dyadic::pow2(-7);
        let r = small.root_round(3, 40, Round::Floor);
        assert!(r.mul(&r).mul(&r) <= small);
    }

    #[test]
    fn ordering() {
        let xs = [-3.5, -1.0, -0.25, 0.0, 1e-9, 0.5, 7.0, 1e20];
        for a in xs {
            for b in xs {
                assert_eq!(
                    Dyadic::from_f64(a).cmp(&Dyadic::from_f64(b)),
                    a.partial_cmp(&b).unwrap(),
                    "{a} vs {b}"
                );
            }
        }
    }
}
