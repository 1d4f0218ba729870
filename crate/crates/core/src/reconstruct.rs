//! Rational reconstruction: the simplest fraction inside an interval, found by
//! walking the continued-fraction expansions of both endpoints together.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// The fraction with smallest denominator in `[lo, hi]` (ties: smallest |numerator|).
pub fn simplest_in(lo: &BigRational, hi: &BigRational) -> BigRational {
    assert!(lo <= hi, "empty interval");
    if lo.is_positive() {
        simplest_positive(lo.clone(), hi.clone())
    } else if hi.is_negative() {
        -simplest_positive(-hi.clone(), -lo.clone())
    } else {
        BigRational::zero()
    }
}

fn simplest_positive(lo: BigRational, hi: BigRational) -> BigRational {
    // continued fraction terms shared by lo and hi, then the smallest admissible next term
    let mut terms: Vec<BigInt> = Vec::new();
    let (mut lo, mut hi) = (lo, hi);
    loop {
        let fl = lo.floor();
        if lo == fl {
            terms.push(fl.to_integer());
            break;
        }
        let ceil_lo: BigInt = fl.to_integer() + 1;
        if BigRational::from_integer(ceil_lo.clone()) <= hi {
            terms.push(ceil_lo);
            break;
        }
        // lo and hi share the integer part; recurse on reciprocals of the fractional parts
        terms.push(fl.to_integer());
        let new_lo = (&hi - &fl).recip();
        let new_hi = (&lo - &fl).recip();
        lo = new_lo;
        hi = new_hi;
    }
    terms
        .into_iter()
        .rev()
        .fold(None::<BigRational>, |acc, t| {
            let t = BigRational::from_integer(t);
            Some(match acc {
                None => t,
                Some(x) => t + x.recip(),
            })
        })
        .expect("at least one term")
}

/// Convergents `p/q` of `x` with `q <= max_den`.
pub fn convergents(x: &BigRational, max_den: &BigInt) -> Vec<BigRational> {
    let (mut p0, mut q0) = (BigInt::one(), BigInt::zero());
    let (mut p1, mut q1) = (x.floor().to_integer(), BigInt::one());
    let mut out = vec![BigRational::new(p1.clone(), q1.clone())];
    let mut frac = x - x.floor();
    while !frac.is_zero() {
        let y = frac.recip();
        let a = y.floor().to_integer();
        frac = &y - y.floor();
        let (p2, q2) = (&a * &p1 + &p0, &a * &q1 + &q0);
        if &q2 > max_den {
            break;
        }
        out.push(BigRational::new(p2.clone(), q2.clone()));
        (p0, q0, p1, q1) = (p1, q1, p2, q2);
    }
    out
}

/// Simplest fraction in `[lo, hi]` if its denominator is at most `max_den`.
pub fn reconstruct(lo: &BigRational, hi: &BigRational, max_den: &BigInt) -> Option<BigRational> {
    let r = simplest_in(lo, hi);
    (r.denom() <= max_den).then_some(r)
}

/// Least common multiple of a set of denominators.
pub fn denominator_lcm<'a>(xs: impl IntoIterator<Item = &'a BigRational>) -> BigInt {
    xs.into_iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn simplest_examples() {
        assert_eq!(simplest_in(&q(3, 10), &q(4, 10)), q(1, 3));
        assert_eq!(simplest_in(&q(1, 2), &q(1, 2)), q(1, 2));
        assert_eq!(simplest_in(&q(-7, 3), &q(-2, 1)), q(-2, 1));
        assert_eq!(simplest_in(&q(-1, 5), &q(1, 5)), q(0, 1));
        assert_eq!(simplest_in(&q(31415, 10000), &q(31416, 10000)), q(333, 106));
    }

    #[test]
    fn convergents_of_pi_approximation() {
        let x = q(3_141_592_653, 1_000_000_000);
        let c = convergents(&x, &BigInt::from(1000));
        assert_eq!(c[..4], [q(3, 1), q(22, 7), q(333, 106), q(355, 113)]);
    }

    proptest! {
        #[test]
        fn recovers_small_fractions_from_tight_intervals(n in -10_000i64..10_000, d in 1i64..10_000) {
            let x = q(n, d);
            let eps = q(1, 1_000_000_000_000);
            let r = reconstruct(&(&x - &eps), &(&x + &eps), &BigInt::from(10_000)).unwrap();
            prop_assert_eq!(r, x);
        }

        #[test]
        fn simplest_lies_inside(a in -1000i64..1000, b in 1i64..1000, w in 0i64..1000) {
            let lo = q(a, b);
            let hi = &lo + q(w, 997);
            let r = simplest_in(&lo, &hi);
            prop_assert!(lo <= r && r <= hi);
            prop_assert!(r.denom() <= lo.denom() && r.denom() <= hi.denom());
        }
    }
}
