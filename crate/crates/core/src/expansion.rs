//! Truncated binomial expansion of `u = sqrt((T_x - 1)(T_y - 1)/(T_z - 1))`.
//!
//! With `T_n - 1 = a alpha^n F(n)` and
//! `F(n) = 1 + a1 alpha^-n + b1 beta^n alpha^-n + c1 gamma^n alpha^-n`
//! (`a1 = -1/a`, `b1 = b/a`, `c1 = c/a`) one has
//! `u = sqrt(a) alpha^((x+y-z)/2) F(x)^(1/2) F(y)^(1/2) F(z)^(-1/2)`.
//! Each factor is expanded as a binomial series; a term of degree `k` in the
//! series for `F(n)` carries `alpha^(-k n)`, so keeping total degree at most
//! `T` drops only terms of size `O(alpha^(-(T+1) x))`.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::interval::{ComplexEnclosure, Enclosure};
use crate::real::{constants, Precision};
use crate::trib::{trib, TribIndex};

/// Largest supported truncation order.
pub const MAX_ORDER: u32 = 8;

#[derive(Clone, Debug)]
pub struct ExpansionTerm {
    pub coeff: ComplexEnclosure,
    /// Exponents of `alpha^x, alpha^y, alpha^z`; all nonpositive.
    pub a: [i64; 3],
    /// Exponents of `beta^x, beta^y, beta^z`; all nonnegative.
    pub b: [i64; 3],
    /// Exponents of `gamma^x, gamma^y, gamma^z`; all nonnegative.
    pub c: [i64; 3],
}

#[derive(Clone, Debug)]
pub struct ExpansionParams {
    pub a1: ComplexEnclosure,
    pub b1: ComplexEnclosure,
    pub c1: ComplexEnclosure,
    pub order: u32,
    pub terms: Vec<ExpansionTerm>,
}

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// `binom(e, k)` for rational `e`.
fn binom(e: &BigRational, k: u32) -> BigRational {
    (0..k).fold(BigRational::one(), |acc, i| {
        acc * (e - q(i as i64, 1)) / q(i as i64 + 1, 1)
    })
}

fn factorial(n: u32) -> BigRational {
    (1..=n as i64).fold(BigRational::one(), |acc, i| acc * q(i, 1))
}

/// `(i, j, l)` with `i + j + l = k`, together with the multinomial coefficient.
fn compositions(k: u32) -> Vec<([u32; 3], BigRational)> {
    let mut out = Vec::new();
    for i in 0..=k {
        for j in 0..=k - i {
            let l = k - i - j;
            let m = factorial(k) / (factorial(i) * factorial(j) * factorial(l));
            out.push(([i, j, l], m));
        }
    }
    out
}

impl ExpansionParams {
    /// Builds all terms of total degree at most `order`, at `bits` of precision.
    pub fn new(order: u32, bits: u32) -> Result<Self> {
        if order > MAX_ORDER {
            return Err(Error::precondition(format!(
                "truncation order must be at most {MAX_ORDER}"
            )));
        }
        let k = constants(bits)?;
        let a = ComplexEnclosure::from_real(k.a.clone());
        let prec = k.precision_bits + 16;
        let a1 = ComplexEnclosure::from_int(-1, prec).div(&a)?;
        let b1 = k.b.div(&a)?;
        let c1 = k.c.div(&a)?;
        let exps = [q(1, 2), q(1, 2), q(-1, 2)];
        // per factor: (degree, (i, j, l), rational coefficient)
        let per_factor: Vec<Vec<(u32, [u32; 3], BigRational)>> = exps
            .iter()
            .map(|e| {
                (0..=order)
                    .flat_map(|deg| {
                        let b = binom(e, deg);
                        compositions(deg)
                            .into_iter()
                            .map(move |(ijl, m)| (deg, ijl, &b * m))
                    })
                    .collect()
            })
            .collect();
        let mut terms = Vec::new();
        for (dx, sx, rx) in &per_factor[0] {
            for (dy, sy, ry) in &per_factor[1] {
                if dx + dy > order {
                    continue;
                }
                for (dz, sz, rz) in &per_factor[2] {
                    if dx + dy + dz > order {
                        continue;
                    }
                    let r = rx * ry * rz;
                    if r.is_zero() {
                        continue;
                    }
                    let sel = [sx, sy, sz];
                    let [i, j, l]: [u64; 3] =
                        std::array::from_fn(|t| sel.iter().map(|s| s[t] as u64).sum());
                    let coeff = (&(&a1.powu(i) * &b1.powu(j)) * &c1.powu(l))
                        .scale(&Enclosure::from_rational(&r, prec));
                    terms.push(ExpansionTerm {
                        coeff,
                        a: [-(*dx as i64), -(*dy as i64), -(*dz as i64)],
                        b: [sx[1] as i64, sy[1] as i64, sz[1] as i64],
                        c: [sx[2] as i64, sy[2] as i64, sz[2] as i64],
                    });
                }
            }
        }
        Ok(Self {
            a1,
            b1,
            c1,
            order,
            terms,
        })
    }

    /// Sum of the retained terms (the constant term included) at `(x, y, z)`.
    pub fn series(&self, n: [TribIndex; 3], bits: u32) -> Result<ComplexEnclosure> {
        let k = constants(bits)?;
        let alpha = ComplexEnclosure::from_real(k.alpha.clone());
        let mut alpha_pow: HashMap<i64, ComplexEnclosure> = HashMap::new();
        let mut beta_pow: HashMap<i64, ComplexEnclosure> = HashMap::new();
        let mut gamma_pow: HashMap<i64, ComplexEnclosure> = HashMap::new();
        let dot = |v: &[i64; 3]| v.iter().zip(n).map(|(e, m)| e * m as i64).sum::<i64>();
        let mut total = ComplexEnclosure::from_int(0, self.a1.prec());
        for t in &self.terms {
            let (ea, eb, ec) = (dot(&t.a), dot(&t.b), dot(&t.c));
            let pa = match alpha_pow.get(&ea) {
                Some(p) => p.clone(),
                None => {
                    let p = alpha.powi(ea)?;
                    alpha_pow.insert(ea, p.clone());
                    p
                }
            };
            let pb = beta_pow
                .entry(eb)
                .or_insert_with(|| k.beta.powu(eb as u64))
                .clone();
            let pc = gamma_pow
                .entry(ec)
                .or_insert_with(|| k.gamma.powu(ec as u64))
                .clone();
            total = &total + &(&(&(&t.coeff * &pa) * &pb) * &pc);
        }
        Ok(total)
    }
}

fn check_indices(x: TribIndex, y: TribIndex, z: TribIndex) -> Result<()> {
    if !(5 <= x && x < y && y < z && x + y > z) {
        return Err(Error::precondition(format!(
            "expansion needs 5 <= x < y < z and x + y > z, got ({x}, {y}, {z})"
        )));
    }
    Ok(())
}

fn error_at(x: TribIndex, y: TribIndex, z: TribIndex, order: u32, bits: u32) -> Result<Enclosure> {
    let params = ExpansionParams::new(order, bits)?;
    let k = constants(bits)?;
    let prec = params.a1.prec();
    let shifted = |n| BigInt::from(trib(n)) - 1;
    let ratio = BigRational::new(shifted(x) * shifted(y), shifted(z));
    let u_real = Enclosure::from_rational(&ratio, prec).sqrt()?;
    let prefactor = (&k.a * &k.alpha.powu((x + y - z) as u64)).sqrt()?;
    let approx = params.series([x, y, z], bits)?.scale(&prefactor);
    (&ComplexEnclosure::from_real(u_real) - &approx).abs()
}

/// `|u - truncation of order T|`, enclosed tightly enough (relative width
/// below `2^-32`) to order the errors of consecutive orders.
pub fn expansion_error(x: TribIndex, y: TribIndex, z: TribIndex, order: u32) -> Result<Enclosure> {
    expansion_error_with(x, y, z, order, &Precision::new(512, 8192)?)
}

pub fn expansion_error_with(
    x: TribIndex,
    y: TribIndex,
    z: TribIndex,
    order: u32,
    precision: &Precision,
) -> Result<Enclosure> {
    check_indices(x, y, z)?;
    let mut last = precision.start_bits;
    for bits in precision.ladder() {
        last = bits;
        let e = error_at(x, y, z, order, bits)?;
        let tight = e.lo().signum() > 0 && {
            let w = e.width().to_rational();
            w * BigRational::from_integer(BigInt::one() << 32u32) < e.lo().to_rational()
        };
        if tight {
            return Ok(e);
        }
    }
    Err(Error::Precision {
        bits: last,
        what: format!("expansion error at ({x}, {y}, {z}), order {order}"),
    })
}
