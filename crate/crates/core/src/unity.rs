//! Roots of unity in `K`.
//!
//! Lemma: the only roots of unity in `K` are `1` and `-1`.
//!
//! Proof sketch. `K` has degree 6 and Galois group `S3` (the cubic has
//! discriminant `-44`, not a square). A primitive `m`-th root of unity in `K`
//! generates an abelian subfield of degree `phi(m)`, which must divide 6, so
//! `phi(m)` is 1, 2 or 6. An abelian subfield of an `S3` extension has degree
//! at most 2 (the abelianization of `S3` has order 2), which rules out 6.
//! `phi(m) = 2` means `m` is 3, 4 or 6, giving `Q(sqrt(-3))` or `Q(i)`. The
//! unique quadratic subfield of `K` is `Q(sqrt(-11))`, so neither occurs and
//! `m` is 1 or 2.

use crate::binet::binet_constants;
use crate::error::{Error, Result};
use crate::field::FieldElement;

/// Default bound on each exponent of [`monomial`].
pub const MONOMIAL_BOUND: i64 = 64;

/// `alpha^ma beta^mb gamma^mg`, exactly.
pub fn monomial(ma: i64, mb: i64, mg: i64) -> Result<FieldElement> {
    monomial_bounded(ma, mb, mg, MONOMIAL_BOUND)
}

pub fn monomial_bounded(ma: i64, mb: i64, mg: i64, bound: i64) -> Result<FieldElement> {
    if [ma, mb, mg].iter().any(|m| m.abs() > bound) {
        return Err(Error::precondition(format!(
            "monomial exponents must lie in [-{bound}, {bound}]"
        )));
    }
    let k = binet_constants()?;
    Ok(&(&k.alpha.pow(ma)? * &k.beta.pow(mb)?) * &k.gamma.pow(mg)?)
}

/// True iff `u` is a root of unity, which by the lemma above means `u = +-1`.
pub fn is_root_of_unity(u: &FieldElement) -> Result<bool> {
    if u.is_zero() {
        return Err(Error::precondition("zero is not a unit"));
    }
    Ok(*u == FieldElement::one() || *u == FieldElement::from_int(-1))
}

/// Shortcut for `alpha^ma beta^mb gamma^mg` with `ma < 0 < mb, mg`: since
/// `|beta| = |gamma| = alpha^(-1/2)`, the modulus of the image under the
/// embedding fixing `alpha` is `alpha^(ma - (mb + mg)/2)`, so a negative
/// `2 ma - mb - mg` means the monomial is not a root of unity. `None` when the
/// shortcut does not apply.
pub fn fast_path_excludes(ma: i64, mb: i64, mg: i64) -> Option<bool> {
    (ma < 0 && mb > 0 && mg > 0).then_some(2 * ma - mb - mg < 0)
}

/// Index of an embedding at which `|u|` is certainly not 1, which rules out
/// `u` being a root of unity. `None` when every modulus is compatible with 1
/// at `bits` of precision.
pub fn modulus_witness(u: &FieldElement, bits: u32) -> Result<Option<usize>> {
    let emb = u.embeddings(bits)?;
    let one = crate::interval::Enclosure::from_int(1, emb[0].prec());
    for (i, z) in emb.iter().enumerate() {
        if !z.norm_sqr().intersects(&one) {
            return Ok(Some(i));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cubic::CubicElement;

    #[test]
    fn small_monomials() {
        assert_eq!(monomial(0, 0, 0).unwrap(), FieldElement::one());
        assert_eq!(monomial(-1, -1, -1).unwrap(), FieldElement::one());
        let inv_alpha_sq = CubicElement::alpha().pow(-2).unwrap().embed();
        assert_eq!(monomial(-1, 1, 1).unwrap(), inv_alpha_sq);
        assert!(monomial(65, 0, 0).is_err());
    }

    #[test]
    fn signs_are_roots_of_unity() {
        assert!(is_root_of_unity(&FieldElement::one()).unwrap());
        assert!(is_root_of_unity(&FieldElement::from_int(-1)).unwrap());
        assert!(is_root_of_unity(&FieldElement::zero()).is_err());
        assert!(!is_root_of_unity(&monomial(-1, 1, 1).unwrap()).unwrap());
    }

    #[test]
    fn fast_path_agrees_on_grid() {
        for ma in -6..0 {
            for mb in 1..=6 {
                for mg in 1..=6 {
                    let u = monomial(ma, mb, mg).unwrap();
                    assert_eq!(fast_path_excludes(ma, mb, mg), Some(true));
                    assert!(!is_root_of_unity(&u).unwrap());
                    assert!(modulus_witness(&u, 64).unwrap().is_some());
                }
            }
        }
    }

    #[test]
    fn minus_two_three_one() {
        assert_eq!(fast_path_excludes(-2, 3, 1), Some(true));
        assert!(!is_root_of_unity(&monomial(-2, 3, 1).unwrap()).unwrap());
        assert_eq!(fast_path_excludes(1, 1, 1), None);
    }
}
