//! Diophantine triples `u < v < w` with `uv + 1`, `uw + 1`, `vw + 1` all
//! Tribonacci numbers: an index-space search and an independent value-space
//! brute force.

use num_bigint::BigUint;
use num_traits::{One, Zero};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::trib::{is_tribonacci, trib, TribIndex};

/// An increasing integer sequence with a membership test. The searches are
/// generic over it so they can be exercised on sequences that do contain triples.
pub trait Sequence: Sync {
    fn term(&self, n: TribIndex) -> BigUint;
    /// Smallest index holding `value`, if any.
    fn index_of(&self, value: &BigUint) -> Result<Option<TribIndex>>;
}

#[derive(Clone, Copy, Debug, Default)]
pub struct Tribonacci;

impl Sequence for Tribonacci {
    fn term(&self, n: TribIndex) -> BigUint {
        trib(n)
    }

    fn index_of(&self, value: &BigUint) -> Result<Option<TribIndex>> {
        is_tribonacci(value)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct TripleCandidate {
    pub x: TribIndex,
    pub y: TribIndex,
    pub z: TribIndex,
    pub u: Option<BigUint>,
    pub v: Option<BigUint>,
    pub w: Option<BigUint>,
}

impl TripleCandidate {
    fn sort_key(&self) -> (TribIndex, TribIndex, TribIndex) {
        (self.z, self.y, self.x)
    }
}

fn exact_sqrt(n: &BigUint) -> Option<BigUint> {
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

/// `sqrt(p q / r)` when that is an integer.
fn sqrt_quotient(p: &BigUint, q: &BigUint, r: &BigUint) -> Option<BigUint> {
    if r.is_zero() {
        return None;
    }
    let num = p * q;
    if !(&num % r).is_zero() {
        return None;
    }
    exact_sqrt(&(num / r))
}

/// Recovers `(u, v, w)` from the indices, if the three quotients are perfect squares.
pub fn uvw_from_xyz(
    x: TribIndex,
    y: TribIndex,
    z: TribIndex,
) -> Option<(BigUint, BigUint, BigUint)> {
    uvw_from_xyz_with(&Tribonacci, x, y, z)
}

pub fn uvw_from_xyz_with<S: Sequence + ?Sized>(
    seq: &S,
    x: TribIndex,
    y: TribIndex,
    z: TribIndex,
) -> Option<(BigUint, BigUint, BigUint)> {
    if !(5 <= x && x < y && y < z) {
        return None;
    }
    let [tx, ty, tz] = [x, y, z].map(|n| seq.term(n));
    if tx.is_zero() || ty.is_zero() || tz.is_zero() {
        return None;
    }
    let [a, b, c] = [&tx, &ty, &tz].map(|t| t - 1u32);
    let u = sqrt_quotient(&a, &b, &c)?;
    let v = sqrt_quotient(&a, &c, &b)?;
    let w = sqrt_quotient(&b, &c, &a)?;
    let ok = u >= BigUint::one()
        && u < v
        && v < w
        && &u * &v + 1u32 == tx
        && &u * &w + 1u32 == ty
        && &v * &w + 1u32 == tz;
    ok.then_some((u, v, w))
}

/// Unconditional filters, plus (optionally) `x >= ceil(z/4) - 2` for `z >= 12`.
pub fn admissible(x: TribIndex, y: TribIndex, z: TribIndex, use_gcd_prune: bool) -> bool {
    if !(5 <= x && x < y && y < z && x + y > z) {
        return false;
    }
    !(use_gcd_prune && z >= 12 && x + 2 < z.div_ceil(4))
}

/// All triples with `z <= z_max`, sorted by `(z, y, x)`.
pub fn search(z_max: TribIndex, use_gcd_prune: bool) -> Result<Vec<TripleCandidate>> {
    search_with(&Tribonacci, z_max, use_gcd_prune)
}

pub fn search_with<S: Sequence>(
    seq: &S,
    z_max: TribIndex,
    use_gcd_prune: bool,
) -> Result<Vec<TripleCandidate>> {
    if z_max < 7 {
        return Err(Error::precondition("search needs z_max >= 7"));
    }
    let shifted: Vec<BigUint> = (0..=z_max)
        .map(|n| {
            let t = seq.term(n);
            if t.is_zero() {
                t
            } else {
                t - 1u32
            }
        })
        .collect();
    let mut found: Vec<TripleCandidate> = (7..=z_max)
        .into_par_iter()
        .flat_map_iter(|z| {
            let mut hits = Vec::new();
            let c = &shifted[z];
            for y in 6..z {
                for x in 5..y {
                    if !admissible(x, y, z, use_gcd_prune) || c.is_zero() {
                        continue;
                    }
                    if !((&shifted[x] * &shifted[y]) % c).is_zero() {
                        continue;
                    }
                    if let Some((u, v, w)) = uvw_from_xyz_with(seq, x, y, z) {
                        hits.push(TripleCandidate {
                            x,
                            y,
                            z,
                            u: Some(u),
                            v: Some(v),
                            w: Some(w),
                        });
                    }
                }
            }
            hits
        })
        .collect();
    found.sort_by_key(TripleCandidate::sort_key);
    Ok(found)
}

/// Triples with `w <= w_max`, found by walking values rather than indices.
pub fn brute_force(w_max: u64) -> Result<Vec<TripleCandidate>> {
    brute_force_with(&Tribonacci, w_max)
}

pub fn brute_force_with<S: Sequence>(seq: &S, w_max: u64) -> Result<Vec<TripleCandidate>> {
    if w_max < 3 {
        return Err(Error::precondition("brute force needs w_max >= 3"));
    }
    let w_max_big = BigUint::from(w_max);
    let limit = &w_max_big * &w_max_big + 1u32;
    let mut values = Vec::new();
    let mut n = 0;
    loop {
        let t = seq.term(n);
        if t > limit {
            break;
        }
        values.push(t);
        n += 1;
    }
    values.sort();
    values.dedup();
    let mut out = Vec::new();
    for u in 1..=w_max.saturating_sub(2) {
        let ub = BigUint::from(u);
        let cap = &ub * &w_max_big + 1u32;
        // partners p > u with u p + 1 in the sequence and p <= w_max
        let partners: Vec<BigUint> = values
            .iter()
            .take_while(|t| **t <= cap)
            .filter(|t| !t.is_zero())
            .filter_map(|t| {
                let m = (*t).clone() - 1u32;
                ((&m % &ub).is_zero()).then(|| m / &ub)
            })
            .filter(|p| *p > ub && *p <= w_max_big)
            .collect();
        for (i, v) in partners.iter().enumerate() {
            for w in &partners[i + 1..] {
                if let Some((x, y, z)) = verify_triple_with(seq, &ub, v, w)? {
                    out.push(TripleCandidate {
                        x,
                        y,
                        z,
                        u: Some(ub.clone()),
                        v: Some(v.clone()),
                        w: Some(w.clone()),
                    });
                }
            }
        }
    }
    out.sort_by_key(TripleCandidate::sort_key);
    Ok(out)
}

/// Indices `(x, y, z)` of `uv + 1`, `uw + 1`, `vw + 1` when all three are Tribonacci numbers.
pub fn verify_triple(
    u: &BigUint,
    v: &BigUint,
    w: &BigUint,
) -> Result<Option<(TribIndex, TribIndex, TribIndex)>> {
    verify_triple_with(&Tribonacci, u, v, w)
}

pub fn verify_triple_with<S: Sequence + ?Sized>(
    seq: &S,
    u: &BigUint,
    v: &BigUint,
    w: &BigUint,
) -> Result<Option<(TribIndex, TribIndex, TribIndex)>> {
    if u.is_zero() || u >= v || v >= w {
        return Err(Error::precondition("verify_triple needs 1 <= u < v < w"));
    }
    let Some(x) = seq.index_of(&(u * v + 1u32))? else {
        return Ok(None);
    };
    let Some(y) = seq.index_of(&(u * w + 1u32))? else {
        return Ok(None);
    };
    let Some(z) = seq.index_of(&(v * w + 1u32))? else {
        return Ok(None);
    };
    Ok(Some((x, y, z)))
}

/// Largest index whose term is at most `value`.
pub fn index_bound<S: Sequence + ?Sized>(seq: &S, value: &BigUint) -> TribIndex {
    let mut n = 0;
    while seq.term(n + 1) <= *value {
        n += 1;
    }
    n
}
