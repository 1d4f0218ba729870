//! Enclosures of the real and complex constants attached to `x^3 - x^2 - x - 1`
//! and exact order decisions between powers of its real root and integers.
//!
//! The real root is isolated by Newton iteration and certified by a sign
//! change of the cubic (which is increasing on `x > 1`). The complex pair
//! comes from deflating the cubic by that root; the nested-radical closed
//! form is only used once as a consistency check.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::dyadic::{Dyadic, Round};
use crate::error::{Error, Result};
use crate::interval::{ComplexEnclosure, Enclosure};
use crate::trib::{trib, TribIndex};

/// Adaptive precision ladder: start at `start_bits`, double until `max_bits`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Precision {
    pub start_bits: u32,
    pub max_bits: u32,
}

impl Default for Precision {
    fn default() -> Self {
        Self {
            start_bits: 192,
            max_bits: 65536,
        }
    }
}

impl Precision {
    pub fn new(start_bits: u32, max_bits: u32) -> Result<Self> {
        if start_bits == 0 || start_bits > max_bits {
            return Err(Error::precondition(format!(
                "precision ladder needs 0 < start ({start_bits}) <= max ({max_bits})"
            )));
        }
        Ok(Self {
            start_bits,
            max_bits,
        })
    }

    /// The ladder `start, 2 start, 4 start, ...` capped at `max`.
    pub fn ladder(&self) -> impl Iterator<Item = u32> {
        let max = self.max_bits;
        let mut next = Some(self.start_bits.min(max));
        std::iter::from_fn(move || {
            let cur = next?;
            next = if cur >= max {
                None
            } else {
                Some(cur.saturating_mul(2).min(max))
            };
            Some(cur)
        })
    }
}

fn cubic_at(x: &Dyadic) -> Dyadic {
    // ((x - 1) x - 1) x - 1
    let one = Dyadic::one();
    x.sub(&one).mul(x).sub(&one).mul(x).sub(&one)
}

fn cubic_derivative_at(x: &Dyadic) -> Dyadic {
    let three_x = x.mul(&Dyadic::from_i64(3));
    three_x.sub(&Dyadic::from_i64(2)).mul(x).sub(&Dyadic::one())
}

fn compute_alpha(bits: u32) -> Enclosure {
    let mut x = Dyadic::from_f64(1.839_286_755_214_161_2);
    let mut w = 48u32;
    let target = bits + 8;
    loop {
        w = (w * 2).min(target + 16);
        let step = cubic_at(&x).div_round(&cubic_derivative_at(&x), w, Round::Floor);
        x = x.sub(&step).round(w, Round::Floor);
        if w < target + 16 {
            continue;
        }
        let eps = Dyadic::pow2(-(bits as i64) - 1);
        let lo = x.sub(&eps);
        let hi = x.add(&eps);
        if cubic_at(&lo).signum() < 0 && cubic_at(&hi).signum() > 0 {
            return Enclosure::new(lo, hi, bits + 8);
        }
    }
}

/// Enclosure of the real root of `x^3 - x^2 - x - 1` with width `<= 2^-bits`.
pub fn alpha_enclosure(bits: u32) -> Enclosure {
    static CACHE: OnceLock<Mutex<HashMap<u32, Enclosure>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(e) = cache.lock().expect("alpha cache poisoned").get(&bits) {
        return e.clone();
    }
    let e = compute_alpha(bits);
    cache
        .lock()
        .expect("alpha cache poisoned")
        .insert(bits, e.clone());
    e
}

/// The three roots of the cubic and the Binet coefficients, each enclosed to
/// width `<= 2^-precision_bits` (componentwise for complex values).
#[derive(Clone, Debug)]
pub struct RealConstants {
    pub alpha: Enclosure,
    pub beta: ComplexEnclosure,
    pub gamma: ComplexEnclosure,
    pub a: Enclosure,
    pub b: ComplexEnclosure,
    pub c: ComplexEnclosure,
    pub precision_bits: u32,
}

impl RealConstants {
    fn widths_ok(&self, bits: u32) -> bool {
        let bound = Dyadic::pow2(-(bits as i64));
        [&self.alpha, &self.a].iter().all(|e| e.width() <= bound)
            && [&self.beta, &self.gamma, &self.b, &self.c]
                .iter()
                .all(|z| z.width() <= bound)
    }

    /// The roots in the order `alpha, beta, gamma`.
    pub fn roots(&self) -> [ComplexEnclosure; 3] {
        [
            ComplexEnclosure::from_real(self.alpha.clone()),
            self.beta.clone(),
            self.gamma.clone(),
        ]
    }
}

fn build_constants(work: u32) -> Result<RealConstants> {
    let alpha = alpha_enclosure(work).with_prec(work);
    let one = Enclosure::from_int(1, work);
    let two = Enclosure::from_int(2, work);
    let four = Enclosure::from_int(4, work);
    // x^2 + (alpha - 1) x + 1/alpha is the cofactor of (x - alpha)
    let re = (&one - &alpha).div(&two)?;
    let disc = &four.div(&alpha)? - &(&alpha - &one).square();
    let im = disc.sqrt()?.div(&two)?;
    let beta = ComplexEnclosure::new(re, im);
    let gamma = beta.conj();
    let ca = ComplexEnclosure::from_real(alpha.clone());
    let a_c = (&(&ca - &beta) * &(&ca - &gamma)).recip()?;
    if !a_c.im.contains_zero() {
        return Err(Error::integrity(
            "coefficient a has a nonzero imaginary part",
        ));
    }
    let b = (&(&beta - &ca) * &(&beta - &gamma)).recip()?;
    let c = (&(&gamma - &ca) * &(&gamma - &beta)).recip()?;
    if !c.intersects(&b.conj()) {
        return Err(Error::integrity("c is not the conjugate of b"));
    }
    Ok(RealConstants {
        alpha,
        beta,
        gamma,
        a: a_c.re,
        b,
        c,
        precision_bits: work,
    })
}

/// `(1 + w1 + w2) / 3` with `w1, w2 = cbrt(19 +- 3 sqrt 33)`.
pub fn alpha_from_radicals(bits: u32) -> Result<Enclosure> {
    let three = Enclosure::from_int(3, bits);
    let s = &three * &Enclosure::from_int(33, bits).sqrt()?;
    let nineteen = Enclosure::from_int(19, bits);
    let w1 = (&nineteen + &s).root(3)?;
    let w2 = (&nineteen - &s).root(3)?;
    (&(&Enclosure::from_int(1, bits) + &w1) + &w2).div(&three)
}

/// Enclosures of `alpha, beta, gamma, a, b, c` of width `<= 2^-precision_bits`.
pub fn constants(precision_bits: u32) -> Result<RealConstants> {
    constants_with(precision_bits, &Precision::default())
}

pub fn constants_with(precision_bits: u32, precision: &Precision) -> Result<RealConstants> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<RealConstants>>>> = OnceLock::new();
    if precision_bits < 16 {
        return Err(Error::precondition("constants need at least 16 bits"));
    }
    let cache = CACHE.get_or_init(Default::default);
    if let Some(c) = cache
        .lock()
        .expect("constants cache poisoned")
        .get(&precision_bits)
    {
        return Ok((**c).clone());
    }
    let mut guard = 32u32;
    let consts = loop {
        let work = precision_bits + guard;
        if work > precision.max_bits.max(precision_bits + 32) {
            return Err(Error::Precision {
                bits: work,
                what: "constants refinement stalled".into(),
            });
        }
        let mut c = build_constants(work)?;
        if c.widths_ok(precision_bits) {
            c.precision_bits = precision_bits;
            break c;
        }
        guard *= 2;
    };
    let radical = alpha_from_radicals(precision_bits + guard)?;
    if !radical.intersects(&consts.alpha) {
        return Err(Error::integrity(
            "radical form of alpha disagrees with the isolated root",
        ));
    }
    cache
        .lock()
        .expect("constants cache poisoned")
        .insert(precision_bits, Arc::new(consts.clone()));
    Ok(consts)
}

/// Exact order of `alpha^(p/q)` against `n`, decided as `alpha^p` vs `n^q`.
pub fn cmp_alpha_power(p: i64, q: u32, n: &BigUint) -> Result<Ordering> {
    cmp_alpha_power_with(p, q, n, &Precision::default())
}

pub fn cmp_alpha_power_with(
    p: i64,
    q: u32,
    n: &BigUint,
    precision: &Precision,
) -> Result<Ordering> {
    if q == 0 || n.is_zero() {
        return Err(Error::precondition(
            "cmp_alpha_power needs q >= 1 and n >= 1",
        ));
    }
    if p == 0 {
        return Ok(if n.is_one() {
            Ordering::Equal
        } else {
            Ordering::Less
        });
    }
    if p < 0 {
        // alpha^p < 1 <= n^q
        return Ok(Ordering::Less);
    }
    if n.is_one() {
        return Ok(Ordering::Greater);
    }
    let target = Dyadic::from_int(BigInt::from(n.pow(q)));
    let log_p = 64 - (p as u64).leading_zeros();
    let mut last = precision.start_bits;
    for bits in precision.ladder() {
        last = bits;
        let work = bits + log_p + 16;
        let power = alpha_enclosure(work).with_prec(work).powu(p as u64);
        if let Some(ord) = power.cmp_point(&target) {
            return Ok(ord);
        }
    }
    Err(Error::Precision {
        bits: last,
        what: format!("alpha^{p} vs {n}^{q}"),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fact {
    pub name: String,
    pub pass: bool,
}

impl Fact {
    pub(crate) fn new(name: &str, pass: bool) -> Self {
        Self {
            name: name.to_string(),
            pass,
        }
    }
}

#[derive(Clone, Debug)]
pub struct NumericReport {
    /// The five numeric windows.
    pub facts: Vec<Fact>,
    /// Auxiliary consistency checks between the constants.
    pub consistency: Vec<Fact>,
}

impl NumericReport {
    pub fn all_pass(&self) -> bool {
        self.facts.iter().chain(&self.consistency).all(|f| f.pass)
    }
}

fn strictly_between(e: &Enclosure, lo: (i64, i64), hi: (i64, i64)) -> bool {
    let lo = num_rational::BigRational::new(lo.0.into(), lo.1.into());
    let hi = num_rational::BigRational::new(hi.0.into(), hi.1.into());
    e.lo().to_rational() > lo && e.hi().to_rational() < hi
}

/// Checks the numeric windows for `alpha, |beta|, a, |b|` and the identity
/// `|beta| = alpha^(-1/2)`, all with enclosures of width `<= 2^-64`.
pub fn verify_numeric_window() -> Result<NumericReport> {
    const BITS: u32 = 64;
    let k = constants(BITS + 16)?;
    let abs_beta = k.beta.abs()?;
    let abs_gamma = k.gamma.abs()?;
    let abs_b = k.b.abs()?;
    let abs_c = k.c.abs()?;
    let inv_sqrt_alpha = k.alpha.sqrt()?.recip()?;
    let narrow = |e: &Enclosure| e.width_at_most_pow2(BITS);

    let facts = vec![
        Fact::new(
            "1.83 < alpha < 1.84",
            narrow(&k.alpha) && strictly_between(&k.alpha, (183, 100), (184, 100)),
        ),
        Fact::new(
            "0.73 < |beta| = |gamma| < 0.74",
            narrow(&abs_beta)
                && abs_beta.intersects(&abs_gamma)
                && strictly_between(&abs_beta, (73, 100), (74, 100))
                && strictly_between(&abs_gamma, (73, 100), (74, 100)),
        ),
        Fact::new(
            "|beta| = alpha^(-1/2)",
            narrow(&abs_beta) && narrow(&inv_sqrt_alpha) && abs_beta.intersects(&inv_sqrt_alpha),
        ),
        Fact::new(
            "0.18 < a < 0.19",
            narrow(&k.a) && strictly_between(&k.a, (18, 100), (19, 100)),
        ),
        Fact::new(
            "0.35 < |b| = |c| < 0.36",
            narrow(&abs_b)
                && abs_b.intersects(&abs_c)
                && strictly_between(&abs_b, (35, 100), (36, 100))
                && strictly_between(&abs_c, (35, 100), (36, 100)),
        ),
    ];
    let radical = alpha_from_radicals(BITS + 16)?;
    let consistency = vec![
        Fact::new(
            "|beta|^2 = 1/alpha",
            k.beta.norm_sqr().intersects(&k.alpha.recip()?),
        ),
        Fact::new("gamma = conj(beta)", k.gamma.intersects(&k.beta.conj())),
        Fact::new("alpha = (1 + w1 + w2)/3", radical.intersects(&k.alpha)),
    ];
    Ok(NumericReport { facts, consistency })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GrowthReport {
    pub n_max: TribIndex,
    pub checked: usize,
    pub first_violation: Option<TribIndex>,
}

/// Checks `alpha^(n-3) <= T_n <= alpha^(n-2)` for `2 <= n <= n_max`.
pub fn verify_growth(n_max: TribIndex, precision: &Precision) -> Result<GrowthReport> {
    if n_max < 2 {
        return Err(Error::precondition("verify_growth needs n_max >= 2"));
    }
    let mut first_violation = None;
    for n in 2..=n_max {
        let t = trib(n);
        let lower = cmp_alpha_power_with(n as i64 - 3, 1, &t, precision)?;
        let upper = cmp_alpha_power_with(n as i64 - 2, 1, &t, precision)?;
        if lower == Ordering::Greater || upper == Ordering::Less {
            first_violation = Some(n);
            break;
        }
    }
    Ok(GrowthReport {
        n_max,
        checked: n_max - 1,
        first_violation,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn alpha_window_and_width() {
        let k = constants(32).unwrap();
        assert!(k.alpha.lo().to_rational() > q(183, 100));
        assert!(k.alpha.hi().to_rational() < q(184, 100));
        assert!(k.a.lo().to_rational() > q(18, 100) && k.a.hi().to_rational() < q(19, 100));
        let abs_b = k.b.abs().unwrap();
        assert!(abs_b.lo().to_rational() > q(35, 100) && abs_b.hi().to_rational() < q(36, 100));
        assert!(constants(64).unwrap().alpha.width_at_most_pow2(64));
        assert!(constants(8).is_err());
    }

    #[test]
    fn alpha_certified_by_sign_change() {
        let e = alpha_enclosure(100);
        assert!(cubic_at(e.lo()).signum() < 0);
        assert!(cubic_at(e.hi()).signum() > 0);
        assert!(e.width_at_most_pow2(100));
    }

    #[test]
    fn cmp_examples() {
        let n = |v: u64| BigUint::from(v);
        assert_eq!(cmp_alpha_power(21, 4, &n(6)).unwrap(), Ordering::Greater);
        assert_eq!(cmp_alpha_power(0, 1, &n(1)).unwrap(), Ordering::Equal);
        assert_eq!(cmp_alpha_power(4, 1, &n(12)).unwrap(), Ordering::Less);
        assert_eq!(cmp_alpha_power(4, 1, &n(11)).unwrap(), Ordering::Greater);
        assert_eq!(cmp_alpha_power(-3, 1, &n(1)).unwrap(), Ordering::Less);
        assert_eq!(cmp_alpha_power(5, 1, &n(1)).unwrap(), Ordering::Greater);
    }

    #[test]
    fn tight_ladder_reports_precision_failure() {
        // N = floor(alpha^2000) sits within 1 of alpha^2000, far below 29-bit resolution
        let big = alpha_enclosure(4000).with_prec(4000).powu(2000);
        let floor = big.lo().to_rational().floor().to_integer();
        let n = floor.to_biguint().unwrap();
        let tight = Precision {
            start_bits: 1,
            max_bits: 2,
        };
        let res = cmp_alpha_power_with(2000, 1, &n, &tight);
        assert!(matches!(res, Err(Error::Precision { .. })), "{res:?}");
        assert_eq!(cmp_alpha_power(2000, 1, &n).unwrap(), Ordering::Greater);
    }

    #[test]
    fn ladder_doubles_and_caps() {
        let p = Precision {
            start_bits: 100,
            max_bits: 700,
        };
        assert_eq!(p.ladder().collect::<Vec<_>>(), vec![100, 200, 400, 700]);
        assert!(Precision::new(10, 5).is_err());
    }

    #[test]
    fn numeric_window() {
        let report = verify_numeric_window().unwrap();
        assert_eq!(report.facts.len(), 5);
        assert!(report.all_pass(), "{report:?}");
    }

    #[test]
    fn growth_small() {
        let p = Precision::default();
        assert_eq!(verify_growth(8, &p).unwrap().first_violation, None);
        assert_eq!(verify_growth(2, &p).unwrap().first_violation, None);
        assert!(verify_growth(1, &p).is_err());
    }
}
