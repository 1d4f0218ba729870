//! `gcd(T_y - 1, T_z - 1)` and the machinery bounding it by `alpha^(3z/4)`.
//!
//! For `y < z` put `lambda = z - y`, `d = gcd(T_y - 1, T_z - 1)` and
//! `eta' = alpha^lambda (T_y - 1) - (T_z - 1)`, a nonzero element of
//! `Z[alpha]` divisible by `d`. Hence `d^3` divides its norm from `Q(alpha)`
//! and `d^3 <= |N(eta')|`. (The norm from `K` is the square of this one, so the
//! sextic inequality `d^6 <= |N_K(eta')|` follows; the cubic form is sharper.)
//! When `y > 3z/4 + 2` the two embeddings fixing `alpha` are small and the
//! other four at most `0.6 alpha^z`, which caps the norm and thus `d`.

use std::cmp::Ordering;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cubic::{norm3, CubicElement};
use crate::error::{Error, Result};
use crate::field::norm6;
use crate::interval::Enclosure;
use crate::real::{alpha_enclosure, cmp_alpha_power_with, Precision};
use crate::trib::{trib, TribIndex};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GcdWitness {
    pub y: TribIndex,
    pub z: TribIndex,
    pub lambda: usize,
    pub d: BigUint,
    pub eta_prime: CubicElement,
    pub norm3_value: BigInt,
    pub bound_ok: bool,
}

fn check_pair(y: TribIndex, z: TribIndex, min_y: TribIndex) -> Result<()> {
    if y < min_y || y >= z {
        return Err(Error::precondition(format!(
            "need {min_y} <= y < z, got y = {y}, z = {z}"
        )));
    }
    Ok(())
}

fn shifted(n: TribIndex) -> BigUint {
    trib(n) - 1u32
}

/// `gcd(T_y - 1, T_z - 1)`.
pub fn gcd_shifted(y: TribIndex, z: TribIndex) -> Result<BigUint> {
    check_pair(y, z, 4)?;
    Ok(shifted(y).gcd(&shifted(z)))
}

/// Whether `d^4 < alpha^(3z)`, i.e. `d < alpha^(3z/4)`.
pub fn prop1_holds(y: TribIndex, z: TribIndex) -> Result<bool> {
    prop1_holds_with(y, z, &Precision::default())
}

pub fn prop1_holds_with(y: TribIndex, z: TribIndex, precision: &Precision) -> Result<bool> {
    let d = gcd_shifted(y, z)?;
    Ok(cmp_alpha_power_with(3 * z as i64, 1, &d.pow(4), precision)? == Ordering::Greater)
}

/// `alpha^lambda (T_y - 1) - (T_z - 1)` in the basis `1, alpha, alpha^2`.
pub fn eta_prime(y: TribIndex, z: TribIndex) -> CubicElement {
    let [c0, c1, c2] = CubicElement::alpha_pow((z - y) as u64);
    let ty = BigInt::from(shifted(y));
    let tz = BigInt::from(shifted(z));
    CubicElement::from_bigints([c0 * &ty - tz, c1 * &ty, c2 * &ty])
}

/// Builds and checks the norm certificate for the pair.
pub fn norm_witness(y: TribIndex, z: TribIndex) -> Result<GcdWitness> {
    check_pair(y, z, 5)?;
    let d = shifted(y).gcd(&shifted(z));
    let eta = eta_prime(y, z);
    let fail = |m: &str| Err(Error::integrity(format!("norm witness ({y}, {z}): {m}")));
    if eta.is_zero() {
        return fail("eta' vanishes");
    }
    let n = norm3(&eta);
    if !n.is_integer() {
        return fail("norm is not an integer");
    }
    let n = n.to_integer();
    if n.is_zero() {
        return fail("norm vanishes");
    }
    let d3 = BigInt::from(d.pow(3));
    if !(&n % &d3).is_zero() {
        return fail("d^3 does not divide the norm");
    }
    if n.abs() < d3 {
        return fail("|norm| < d^3");
    }
    Ok(GcdWitness {
        y,
        z,
        lambda: z - y,
        d,
        eta_prime: eta,
        norm3_value: n,
        bound_ok: true,
    })
}

impl GcdWitness {
    /// Recomputes every field from `(y, z)` and compares, including the sextic norm.
    pub fn verify(&self) -> Result<()> {
        let fresh = norm_witness(self.y, self.z)?;
        if fresh != *self {
            return Err(Error::integrity(format!(
                "witness ({}, {}) does not recompute",
                self.y, self.z
            )));
        }
        let n6 = norm6(&self.eta_prime.embed());
        let n3 = BigRational::from_integer(self.norm3_value.clone());
        if n6 != &n3 * &n3 {
            return Err(Error::integrity(
                "sextic norm is not the square of the cubic norm",
            ));
        }
        Ok(())
    }
}

/// The pair lies in the regime `y > 3z/4 + 2`.
pub fn high_regime(y: TribIndex, z: TribIndex) -> bool {
    4 * y > 3 * z + 8
}

fn ratio(n: i64, d: i64, prec: u32) -> Enclosure {
    Enclosure::from_rational(&BigRational::new(n.into(), d.into()), prec)
}

/// Bounds on the six embeddings of `eta'`: the two fixing `alpha` have modulus
/// at most `1.3 alpha^(z/4)`, the other four at most `0.6 alpha^z`.
pub fn factor_bounds(y: TribIndex, z: TribIndex) -> Result<bool> {
    factor_bounds_with(y, z, &Precision::default())
}

pub fn factor_bounds_with(y: TribIndex, z: TribIndex, precision: &Precision) -> Result<bool> {
    check_pair(y, z, 5)?;
    if !high_regime(y, z) {
        return Err(Error::precondition(format!(
            "factor bounds need y > 3z/4 + 2, got ({y}, {z})"
        )));
    }
    let eta = eta_prime(y, z).embed();
    // coordinates are about alpha^z in size while the small embeddings are about alpha^(z/4)
    let needed = (z as u32) * 9 / 10 + 64;
    let ladder = Precision::new(
        precision.start_bits.max(needed),
        precision.max_bits.max(needed),
    )?;
    let mut last = ladder.start_bits;
    'ladder: for bits in ladder.ladder() {
        last = bits;
        let emb = eta.embeddings(bits)?;
        let prec = emb[0].prec();
        let alpha_z = alpha_enclosure(bits + 16).with_prec(prec).powu(z as u64);
        // |e|^4 <= 1.3^4 alpha^z and |e|^2 <= 0.36 alpha^(2z)
        let small = &ratio(28561, 10000, prec) * &alpha_z;
        let large = &ratio(36, 100, prec) * &alpha_z.square();
        for (i, e) in emb.iter().enumerate() {
            let m = e.norm_sqr();
            let (lhs, rhs) = if i < 2 {
                (m.square(), &small)
            } else {
                (m, &large)
            };
            match lhs.cmp_certain(rhs) {
                Some(Ordering::Less) => {}
                Some(_) => return Ok(false),
                None => continue 'ladder,
            }
        }
        return Ok(true);
    }
    Err(Error::Precision {
        bits: last,
        what: format!("embedding bounds for ({y}, {z})"),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepOptions {
    pub z_max: TribIndex,
    /// In the high regime, run the embedding bounds when `(z - y) % stride == 1`.
    pub factor_stride: usize,
    pub precision: Precision,
}

impl SweepOptions {
    pub fn new(z_max: TribIndex) -> Self {
        Self {
            z_max,
            factor_stride: 4,
            precision: Precision::default(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepFailure {
    pub y: TribIndex,
    pub z: TribIndex,
    pub reason: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepReport {
    pub z_max: TribIndex,
    pub pairs: usize,
    pub trivial_chain: usize,
    pub norm_witnesses: usize,
    pub factor_checks: usize,
    pub violations: usize,
    pub first_failure: Option<SweepFailure>,
}

impl SweepReport {
    fn fail(&mut self, y: TribIndex, z: TribIndex, reason: impl Into<String>) {
        self.violations += 1;
        if self.first_failure.is_none() {
            self.first_failure = Some(SweepFailure {
                y,
                z,
                reason: reason.into(),
            });
        }
    }

    fn absorb(&mut self, other: SweepReport) {
        self.pairs += other.pairs;
        self.trivial_chain += other.trivial_chain;
        self.norm_witnesses += other.norm_witnesses;
        self.factor_checks += other.factor_checks;
        self.violations += other.violations;
        if self.first_failure.is_none() {
            self.first_failure = other.first_failure;
        }
    }
}

/// Outcome of the bound `d < alpha^(3z/4)` for one pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Prop1Row {
    pub y: TribIndex,
    pub z: TribIndex,
    pub d: BigUint,
    pub bound_ok: bool,
}

fn sweep_z(z: TribIndex, opts: &SweepOptions) -> Result<(SweepReport, Vec<Prop1Row>)> {
    let mut rep = SweepReport::default();
    let mut rows = Vec::with_capacity(z - 4);
    let tz = shifted(z);
    // alpha^(3z), reused for every y; exact fallback when it cannot decide
    let a3z = alpha_enclosure(96).powu(3 * z as u64);
    let below = |n: &BigUint| -> Result<bool> {
        let p = crate::dyadic::Dyadic::from_int(BigInt::from(n.clone()));
        match a3z.cmp_point(&p) {
            Some(ord) => Ok(ord == Ordering::Greater),
            None => {
                Ok(cmp_alpha_power_with(3 * z as i64, 1, n, &opts.precision)? == Ordering::Greater)
            }
        }
    };
    for y in 4..z {
        rep.pairs += 1;
        let ty = shifted(y);
        let d = ty.gcd(&tz);
        let bound_ok = below(&d.pow(4))?;
        rows.push(Prop1Row {
            y,
            z,
            d: d.clone(),
            bound_ok,
        });
        if !bound_ok {
            rep.fail(y, z, "d^4 >= alpha^(3z)");
            continue;
        }
        if !high_regime(y, z) {
            rep.trivial_chain += 1;
            if d > ty || !below(&ty.pow(4))? {
                rep.fail(y, z, "trivial chain d <= T_y - 1 < alpha^(3z/4) fails");
            }
            continue;
        }
        if y < 5 {
            continue;
        }
        match norm_witness(y, z) {
            Ok(_) => rep.norm_witnesses += 1,
            Err(Error::Integrity(m)) => {
                rep.fail(y, z, m);
                continue;
            }
            Err(e) => return Err(e),
        }
        if opts.factor_stride > 0 && (z - y) % opts.factor_stride == 1 % opts.factor_stride {
            rep.factor_checks += 1;
            if !factor_bounds_with(y, z, &opts.precision)? {
                rep.fail(y, z, "embedding bound exceeded");
            }
        }
    }
    Ok((rep, rows))
}

/// Checks every pair `4 <= y < z <= z_max`. Runs in parallel over `z`; the
/// report (including which failure is first, ordered by `(z, y)`) does not
/// depend on scheduling.
pub fn sweep(opts: &SweepOptions) -> Result<SweepReport> {
    Ok(sweep_detailed(opts)?.0)
}

/// [`sweep`], also returning the per-pair outcomes ordered by `(z, y)`.
pub fn sweep_detailed(opts: &SweepOptions) -> Result<(SweepReport, Vec<Prop1Row>)> {
    if opts.z_max < 5 {
        return Err(Error::precondition("sweep needs z_max >= 5"));
    }
    crate::trib::trib(opts.z_max);
    let parts: Vec<Result<(SweepReport, Vec<Prop1Row>)>> = (5..=opts.z_max)
        .into_par_iter()
        .map(|z| sweep_z(z, opts))
        .collect();
    let mut total = SweepReport {
        z_max: opts.z_max,
        ..SweepReport::default()
    };
    let mut rows = Vec::new();
    for p in parts {
        let (rep, r) = p?;
        total.absorb(rep);
        rows.extend(r);
    }
    Ok((total, rows))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    #[test]
    fn gcd_examples() {
        assert_eq!(gcd_shifted(6, 7).unwrap(), BigUint::from(6u32));
        assert_eq!(gcd_shifted(5, 8).unwrap(), BigUint::one());
        for z in 5..40 {
            assert_eq!(gcd_shifted(4, z).unwrap(), BigUint::one());
        }
        assert!(gcd_shifted(3, 7).is_err());
        assert!(gcd_shifted(7, 7).is_err());
    }

    #[test]
    fn prop1_examples() {
        assert!(prop1_holds(6, 7).unwrap());
        assert!(prop1_holds(6, 12).unwrap());
        assert!(prop1_holds(4, 100).unwrap());
    }

    #[test]
    fn witness_examples() {
        let w = norm_witness(6, 7).unwrap();
        assert_eq!(w.d, BigUint::from(6u32));
        assert_eq!(w.eta_prime, CubicElement::from_ints([-12, 6, 0]));
        assert_eq!(w.norm3_value, BigInt::from(-216));
        w.verify().unwrap();

        let w = norm_witness(5, 7).unwrap();
        assert_eq!(w.d, BigUint::from(3u32));
        assert_eq!(w.eta_prime, CubicElement::from_ints([-12, 0, 3]));
        assert_eq!(w.norm3_value, BigInt::from(-297));

        let w = norm_witness(5, 6).unwrap();
        assert_eq!(w.eta_prime, CubicElement::from_ints([-6, 3, 0]));
        assert_eq!(w.norm3_value, BigInt::from(-27));
    }

    #[test]
    fn factor_examples() {
        assert!(factor_bounds(18, 20).unwrap());
        assert!(factor_bounds(19, 20).unwrap());
        assert!(factor_bounds(10, 20).is_err());
    }

    #[test]
    fn small_sweeps_are_clean() {
        for z_max in [20, 100] {
            let r = sweep(&SweepOptions::new(z_max)).unwrap();
            assert_eq!(r.violations, 0, "{r:?}");
            assert_eq!(r.pairs, (5..=z_max).map(|z| z - 4).sum::<usize>());
            assert!(r.norm_witnesses > 0 && r.factor_checks > 0);
        }
    }
}
