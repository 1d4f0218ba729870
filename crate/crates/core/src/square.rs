//! Square roots in `K` of elements of `Q(alpha)`, with certificates.
//!
//! Because `disc(x^3 - x^2 - x - 1) = -44`, `K = Q(alpha, sqrt(-11))`. Writing
//! a square root in `K` as `x + y sqrt(-11)` with `x, y` in `Q(alpha)` shows
//! that `t` in `Q(alpha)` is a square in `K` exactly when `t` or `-11 t` is a
//! square in `Q(alpha)`. Each of those two questions is settled either by an
//! explicit root (rebuilt from high-precision embeddings and checked exactly)
//! or by a degree-one witness prime: if `q` does not divide `44` or any
//! denominator of `t`, `r` is a root of the cubic mod `q`, and `t(r)` is a
//! nonzero non-residue mod `q`, then `t` has no square root in `Q(alpha)`
//! (reduce a putative root modulo the prime `(q, alpha - r)` of `Z[alpha]`).

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::cubic::CubicElement;
use crate::error::{Error, Result};
use crate::field::FieldElement;
use crate::interval::ComplexEnclosure;
use crate::poly::Q;
use crate::real::{constants, Precision};
use crate::reconstruct::reconstruct;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquareLimits {
    /// Largest prime tried as a witness.
    pub prime_bound: u64,
    /// Largest denominator accepted during rational reconstruction.
    pub denominator_bound: BigInt,
    pub precision: Precision,
}

impl Default for SquareLimits {
    fn default() -> Self {
        Self {
            prime_bound: 1_000_000,
            denominator_bound: BigInt::from(1_000_000_000_000u64),
            precision: Precision::default(),
        }
    }
}

/// A degree-one prime refuting squareness in `Q(alpha)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub prime: u64,
    /// Root of `x^3 - x^2 - x - 1` modulo `prime`.
    pub root: u64,
    /// The reduction of the tested element at `root`; a non-residue.
    pub residue: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquareCertificate {
    pub verdict: bool,
    /// A square root in `K` when `verdict` holds.
    pub root: Option<FieldElement>,
    /// Witnesses for `t` and for `-11 t` when `verdict` fails.
    pub witnesses: Option<(Witness, Witness)>,
}

fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn powmod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, b, m);
        }
        b = mulmod(b, b, m);
        e >>= 1;
    }
    r
}

fn is_prime_trial(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Deterministic Miller-Rabin for 64-bit inputs.
fn is_prime_mr(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &p in &BASES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'outer: for &a in &BASES {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

/// Jacobi symbol `(a / n)` for odd `n`.
fn jacobi(mut a: u64, mut n: u64) -> i32 {
    debug_assert!(n % 2 == 1);
    a %= n;
    let mut result = 1;
    while a != 0 {
        while a.is_multiple_of(2) {
            a /= 2;
            if n % 8 == 3 || n % 8 == 5 {
                result = -result;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            result = -result;
        }
        a %= n;
    }
    if n == 1 {
        result
    } else {
        0
    }
}

// Polynomials over F_q, little-endian, always trimmed.
type ModPoly = Vec<u64>;

fn mp_trim(mut p: ModPoly) -> ModPoly {
    while p.last() == Some(&0) {
        p.pop();
    }
    p
}

fn mp_mul(a: &[u64], b: &[u64], q: u64) -> ModPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + mulmod(x, y, q)) % q;
        }
    }
    mp_trim(out)
}

fn mp_divrem(a: &[u64], b: &[u64], q: u64) -> (ModPoly, ModPoly) {
    let b = mp_trim(b.to_vec());
    let mut r = mp_trim(a.to_vec());
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let lead_inv = powmod(*b.last().unwrap(), q - 2, q);
    let mut quo = vec![0u64; r.len() - b.len() + 1];
    while !r.is_empty() && r.len() >= b.len() {
        let shift = r.len() - b.len();
        let c = mulmod(*r.last().unwrap(), lead_inv, q);
        for (i, &bi) in b.iter().enumerate() {
            r[shift + i] = (r[shift + i] + q - mulmod(c, bi, q)) % q;
        }
        quo[shift] = c;
        r = mp_trim(r);
    }
    (mp_trim(quo), r)
}

fn mp_gcd(a: &[u64], b: &[u64], q: u64) -> ModPoly {
    let (mut x, mut y) = (mp_trim(a.to_vec()), mp_trim(b.to_vec()));
    while !y.is_empty() {
        let (_, r) = mp_divrem(&x, &y, q);
        x = std::mem::replace(&mut y, r);
    }
    if let Some(&lead) = x.last() {
        let inv = powmod(lead, q - 2, q);
        x = x.into_iter().map(|c| mulmod(c, inv, q)).collect();
    }
    x
}

fn mp_powmod(base: &[u64], mut e: u64, m: &[u64], q: u64) -> ModPoly {
    let mut result = vec![1u64];
    let mut b = mp_divrem(base, m, q).1;
    while e > 0 {
        if e & 1 == 1 {
            result = mp_divrem(&mp_mul(&result, &b, q), m, q).1;
        }
        b = mp_divrem(&mp_mul(&b, &b, q), m, q).1;
        e >>= 1;
    }
    result
}

/// Roots of a squarefree product of distinct linear factors over F_q.
fn split_linear(g: ModPoly, q: u64, out: &mut Vec<u64>) {
    match g.len() {
        0 | 1 => {}
        2 => out.push(mulmod(q - g[0], powmod(g[1], q - 2, q), q)),
        _ => {
            if q < 64 {
                out.extend((0..q).filter(|&r| mp_eval(&g, r, q) == 0));
                return;
            }
            for delta in 0..q {
                let h = mp_powmod(&[delta, 1], (q - 1) / 2, &g, q);
                let mut h1 = h;
                if h1.is_empty() {
                    h1.push(q - 1);
                } else {
                    h1[0] = (h1[0] + q - 1) % q;
                }
                let d = mp_gcd(&mp_trim(h1), &g, q);
                if d.len() > 1 && d.len() < g.len() {
                    let (rest, _) = mp_divrem(&g, &d, q);
                    split_linear(d, q, out);
                    split_linear(rest, q, out);
                    return;
                }
            }
            unreachable!("equal-degree splitting failed over F_{q}");
        }
    }
}

fn mp_eval(p: &[u64], x: u64, q: u64) -> u64 {
    p.iter()
        .rev()
        .fold(0, |acc, &c| (mulmod(acc, x, q) + c) % q)
}

/// Roots of `x^3 - x^2 - x - 1` modulo the odd prime `q`, ascending.
pub fn cubic_roots_mod(q: u64) -> Vec<u64> {
    let f: ModPoly = vec![q - 1, q - 1, q - 1, 1];
    let xq = mp_powmod(&[0, 1], q, &f, q);
    let mut xq_minus_x = xq;
    xq_minus_x.resize(2.max(xq_minus_x.len()), 0);
    xq_minus_x[1] = (xq_minus_x[1] + q - 1) % q;
    let g = mp_gcd(&mp_trim(xq_minus_x), &f, q);
    let mut roots = Vec::new();
    split_linear(g, q, &mut roots);
    roots.sort_unstable();
    roots
}

fn rational_mod(x: &Q, q: u64) -> Option<u64> {
    let qq = BigInt::from(q);
    let den = x.denom().mod_floor(&qq).to_u64()?;
    if den == 0 {
        return None;
    }
    let num = x.numer().mod_floor(&qq).to_u64()?;
    Some(mulmod(num, powmod(den, q - 2, q), q))
}

/// `t(r) mod q`, or `None` when a denominator of `t` vanishes mod `q`.
pub fn eval_mod(t: &CubicElement, r: u64, q: u64) -> Option<u64> {
    let c: Vec<u64> = t
        .coords()
        .iter()
        .map(|x| rational_mod(x, q))
        .collect::<Option<_>>()?;
    Some(mp_eval(&c, r % q, q))
}

/// First degree-one witness (ascending primes from 3, skipping 11 and primes
/// meeting a denominator; ascending roots) showing `t` is not a square in `Q(alpha)`.
pub fn find_witness(t: &CubicElement, prime_bound: u64) -> Option<Witness> {
    (3..=prime_bound)
        .step_by(2)
        .filter(|&q| q != 11 && is_prime_trial(q))
        .find_map(|q| {
            if t.coords().iter().any(|c| (c.denom() % q).is_zero()) {
                return None;
            }
            cubic_roots_mod(q).into_iter().find_map(|r| {
                let v = eval_mod(t, r, q)?;
                (v != 0 && jacobi(v, q) == -1).then_some(Witness {
                    prime: q,
                    root: r,
                    residue: v,
                })
            })
        })
}

/// Re-checks a witness from scratch with arithmetic independent of the search.
pub fn verify_witness(t: &CubicElement, w: &Witness) -> Result<()> {
    let q = w.prime;
    let fail = |m: &str| {
        Err(Error::integrity(format!(
            "witness ({q}, {}) for {t}: {m}",
            w.root
        )))
    };
    if !is_prime_mr(q) {
        return fail("modulus is not prime");
    }
    if 44 % q == 0 {
        return fail("modulus divides 44");
    }
    let qb = BigInt::from(q);
    let r = BigInt::from(w.root);
    let f_r: BigInt = &r * &r * &r - &r * &r - &r - 1;
    if !f_r.mod_floor(&qb).is_zero() {
        return fail("root is not a root of the cubic");
    }
    let mut acc = BigInt::zero();
    let mut rp = BigInt::one();
    let mut den = BigInt::one();
    for c in t.coords() {
        // accumulate as a single fraction num/den with den = product of denominators
        acc = acc * c.denom() + c.numer() * &rp * &den;
        den *= c.denom();
        rp *= &r;
    }
    if den.mod_floor(&qb).is_zero() {
        return fail("a denominator vanishes");
    }
    // residue * den == acc (mod q)
    let lhs = (BigInt::from(w.residue) * &den - &acc).mod_floor(&qb);
    if !lhs.is_zero() {
        return fail("residue does not match the reduction");
    }
    if w.residue.is_multiple_of(q) {
        return fail("reduction vanishes");
    }
    if powmod(w.residue, (q - 1) / 2, q) != q - 1 {
        return fail("reduction is a quadratic residue");
    }
    Ok(())
}

fn f_prime(z: &ComplexEnclosure) -> ComplexEnclosure {
    let prec = z.prec();
    let three = ComplexEnclosure::from_int(3, prec);
    let two = ComplexEnclosure::from_int(2, prec);
    let one = ComplexEnclosure::from_int(1, prec);
    &(&(&three * &z.square()) - &(&two * z)) - &one
}

/// Attempts to rebuild a square root of `t` in `Q(alpha)` from its embeddings
/// at `bits` of precision. Every candidate is checked exactly.
pub fn reconstruct_cubic_sqrt(
    t: &CubicElement,
    bits: u32,
    max_den: &BigInt,
) -> Result<Option<CubicElement>> {
    let k = constants(bits)?;
    let t_alpha = t.eval_real(&k.alpha);
    if !t_alpha.is_positive() {
        return Ok(None);
    }
    let real_root = ComplexEnclosure::from_real(t_alpha.sqrt()?);
    let Ok(cplx_root) = t.eval_complex(&k.beta).sqrt() else {
        return Ok(None);
    };
    let nodes = k.roots();
    let weights: Vec<ComplexEnclosure> = nodes
        .iter()
        .map(|n| f_prime(n).recip())
        .collect::<Result<_>>()?;
    for sign in [1i64, -1] {
        let s = cplx_root.scale(&crate::interval::Enclosure::from_int(
            sign,
            cplx_root.prec(),
        ));
        let values = [real_root.clone(), s.clone(), s.conj()];
        let prec = k.precision_bits + 16;
        let mut coeffs: [ComplexEnclosure; 3] =
            std::array::from_fn(|_| ComplexEnclosure::from_int(0, prec));
        for j in 0..3 {
            let (a, b) = (&nodes[(j + 1) % 3], &nodes[(j + 2) % 3]);
            let lag = [a * b, -&(a + b), ComplexEnclosure::from_int(1, prec)];
            let w = &values[j] * &weights[j];
            for i in 0..3 {
                coeffs[i] = &coeffs[i] + &(&w * &lag[i]);
            }
        }
        let candidate: Option<Vec<Q>> = coeffs
            .iter()
            .map(|c| reconstruct(&c.re.lo().to_rational(), &c.re.hi().to_rational(), max_den))
            .collect();
        if let Some(c) = candidate {
            let r = CubicElement::new([c[0].clone(), c[1].clone(), c[2].clone()]);
            if &r * &r == *t {
                return Ok(Some(r));
            }
        }
    }
    Ok(None)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CubicSqrt {
    Root(CubicElement),
    NonSquare(Witness),
}

/// Decides whether `t` is a square in `Q(alpha)`.
pub fn cubic_sqrt(t: &CubicElement, limits: &SquareLimits) -> Result<CubicSqrt> {
    if t.is_zero() {
        return Ok(CubicSqrt::Root(CubicElement::zero()));
    }
    let mut ladder = limits.precision.ladder();
    if let Some(bits) = ladder.next() {
        if let Some(r) = reconstruct_cubic_sqrt(t, bits, &limits.denominator_bound)? {
            return Ok(CubicSqrt::Root(r));
        }
    }
    if let Some(w) = find_witness(t, limits.prime_bound) {
        return Ok(CubicSqrt::NonSquare(w));
    }
    for bits in ladder {
        if let Some(r) = reconstruct_cubic_sqrt(t, bits, &limits.denominator_bound)? {
            return Ok(CubicSqrt::Root(r));
        }
    }
    Err(Error::Inconclusive(format!(
        "no square root and no witness prime <= {} for {t}",
        limits.prime_bound
    )))
}

fn compute_sqrt_minus_11() -> Result<FieldElement> {
    // s = 2e - alpha satisfies s^2 = alpha^2 - 4, and -11 (alpha^2 - 4) is a square in Q(alpha)
    let alpha = FieldElement::alpha();
    let s = &(&FieldElement::epsilon() * &FieldElement::from_int(2)) - &alpha;
    let a2_minus_4 = CubicElement::from_ints([-4, 0, 1]);
    if &s * &s != a2_minus_4.embed() {
        return Err(Error::integrity("(2e - alpha)^2 != alpha^2 - 4"));
    }
    let target = a2_minus_4.scale(&Q::from_integer((-11).into()));
    let r = match cubic_sqrt(&target, &SquareLimits::default())? {
        CubicSqrt::Root(r) => r,
        CubicSqrt::NonSquare(_) => {
            return Err(Error::integrity("-11(alpha^2 - 4) is not a square"))
        }
    };
    let root = &r.embed() * &s.inv()?;
    if &root * &root != FieldElement::from_int(-11) {
        return Err(Error::integrity("sqrt(-11) fails to square to -11"));
    }
    Ok(root)
}

/// A fixed square root of `-11` in `K`.
pub fn sqrt_minus_11() -> Result<FieldElement> {
    static ROOT: OnceLock<Result<FieldElement>> = OnceLock::new();
    ROOT.get_or_init(compute_sqrt_minus_11).clone()
}

/// Decides whether `t` (an element of `Q(alpha)`) is a square in `K`.
pub fn is_square_in_k(t: &CubicElement, limits: &SquareLimits) -> Result<SquareCertificate> {
    if t.is_zero() {
        return Err(Error::precondition("square test needs a nonzero element"));
    }
    let w_t = match cubic_sqrt(t, limits)? {
        CubicSqrt::Root(r) => {
            return Ok(SquareCertificate {
                verdict: true,
                root: Some(r.embed()),
                witnesses: None,
            });
        }
        CubicSqrt::NonSquare(w) => w,
    };
    let scaled = t.scale(&Q::from_integer((-11).into()));
    match cubic_sqrt(&scaled, limits)? {
        CubicSqrt::Root(r) => {
            let root = &r.embed() * &sqrt_minus_11()?.inv()?;
            Ok(SquareCertificate {
                verdict: true,
                root: Some(root),
                witnesses: None,
            })
        }
        CubicSqrt::NonSquare(w) => Ok(SquareCertificate {
            verdict: false,
            root: None,
            witnesses: Some((w_t, w)),
        }),
    }
}

impl SquareCertificate {
    /// Independent re-check against the element it certifies.
    pub fn verify(&self, theta: &CubicElement) -> Result<()> {
        match (self.verdict, &self.root, &self.witnesses) {
            (true, Some(root), None) => {
                if root * root == theta.embed() {
                    Ok(())
                } else {
                    Err(Error::integrity(
                        "certified root does not square to the element",
                    ))
                }
            }
            (false, None, Some((w_t, w_scaled))) => {
                verify_witness(theta, w_t)?;
                verify_witness(&theta.scale(&Q::from_integer((-11).into())), w_scaled)
            }
            _ => Err(Error::integrity("malformed square certificate")),
        }
    }
}
