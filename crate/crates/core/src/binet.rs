//! Exact roots `alpha, beta, gamma` of `x^3 - x^2 - x - 1` inside `K` and the
//! coefficients `a, b, c` of `T_n = a alpha^n + b beta^n + c gamma^n`.

use std::sync::OnceLock;

use crate::cubic::CubicElement;
use crate::error::{Error, Result};
use crate::field::{p_roots, FieldElement};
use crate::poly::Q;
use crate::real::Fact;
use crate::square::{is_square_in_k, SquareLimits};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinetConstants {
    pub alpha: FieldElement,
    pub beta: FieldElement,
    pub gamma: FieldElement,
    pub a: FieldElement,
    pub b: FieldElement,
    pub c: FieldElement,
}

/// `a` in the basis `1, e, ..., e^5`.
pub fn a_coords() -> FieldElement {
    FieldElement::from_ints_over([6, -13, 19, -14, 9, -5], 22)
}

/// `a = alpha / (alpha^2 + 2 alpha + 3)` as an element of `Q(alpha)`.
pub fn a_cubic() -> CubicElement {
    let den = CubicElement::from_ints([3, 2, 1]);
    &CubicElement::alpha() * &den.inv().expect("nonzero")
}

fn int(n: i64) -> FieldElement {
    FieldElement::from_int(n)
}

fn build() -> Result<BinetConstants> {
    let alpha = FieldElement::alpha();
    let one = int(1);

    let a = a_coords();
    if a != a_cubic().embed() {
        return Err(Error::integrity(
            "a disagrees with alpha / (alpha^2 + 2 alpha + 3)",
        ));
    }
    if &a * &CubicElement::from_ints([-1, -2, 3]).embed() != one {
        return Err(Error::integrity("a (3 alpha^2 - 2 alpha - 1) != 1"));
    }

    // synthetic division of x^3 - x^2 - x - 1 by (x - alpha)
    let lin = &alpha - &one;
    let konst = &(&lin * &alpha) - &one;
    let rem = &(&konst * &alpha) - &one;
    if !rem.is_zero() {
        return Err(Error::integrity("alpha is not a root of the cubic"));
    }
    // x^2 + lin x + konst, discriminant lin^2 - 4 konst
    let disc = &(&lin * &lin) - &konst.scale(&Q::from_integer(4.into()));
    let disc_cubic = CubicElement::from_ints([5, 2, -3]);
    if disc != disc_cubic.embed() {
        return Err(Error::integrity(
            "quadratic discriminant is not -3 alpha^2 + 2 alpha + 5",
        ));
    }
    let cert = is_square_in_k(&disc_cubic, &SquareLimits::default())?;
    let root = match (cert.verdict, cert.root) {
        (true, Some(r)) => r,
        _ => {
            return Err(Error::integrity(
                "the quadratic discriminant has no square root in K",
            ))
        }
    };
    let half = Q::new(1.into(), 2.into());
    let roots = p_roots(96)?;
    let mut beta = None;
    for r in [root.clone(), -&root] {
        let cand = (&(&one - &alpha) + &r).scale(&half);
        if cand.eval(&roots[0]).im.is_positive() {
            beta = Some(cand);
            break;
        }
    }
    let beta = beta
        .ok_or_else(|| Error::integrity("no root of the quadratic has positive imaginary part"))?;
    let gamma = &(&one - &alpha) - &beta;
    let b = (&(&beta - &alpha) * &(&beta - &gamma)).inv()?;
    let c = (&(&gamma - &alpha) * &(&gamma - &beta)).inv()?;
    let k = BinetConstants {
        alpha,
        beta,
        gamma,
        a,
        b,
        c,
    };
    if let Some(f) = k.identities().into_iter().find(|f| !f.pass) {
        return Err(Error::integrity(format!("identity failed: {}", f.name)));
    }
    Ok(k)
}

/// The exact constants, computed once.
pub fn binet_constants() -> Result<&'static BinetConstants> {
    static K: OnceLock<Result<BinetConstants>> = OnceLock::new();
    K.get_or_init(build).as_ref().map_err(Clone::clone)
}

impl BinetConstants {
    /// `a alpha^n + b beta^n + c gamma^n`, exactly.
    pub fn term(&self, n: u32) -> FieldElement {
        let p = |x: &FieldElement| x.pow(n as i64).expect("nonnegative power");
        &(&(&self.a * &p(&self.alpha)) + &(&self.b * &p(&self.beta))) + &(&self.c * &p(&self.gamma))
    }

    /// Every defining identity, evaluated exactly.
    pub fn identities(&self) -> Vec<Fact> {
        let (al, be, ga) = (&self.alpha, &self.beta, &self.gamma);
        let (one, zero) = (int(1), FieldElement::zero());
        let f_alpha = &(&(&(&(al * al) * al) - &(al * al)) - al) - &one;
        let sq = |x: &FieldElement| x * x;
        vec![
            Fact::new("f(alpha) = 0", f_alpha.is_zero()),
            Fact::new("alpha + beta + gamma = 1", &(al + be) + ga == one),
            Fact::new(
                "alpha beta + alpha gamma + beta gamma = -1",
                &(&(al * be) + &(al * ga)) + &(be * ga) == int(-1),
            ),
            Fact::new("alpha beta gamma = 1", &(al * be) * ga == one),
            Fact::new("beta gamma alpha = 1", &(be * ga) * al == one),
            Fact::new("beta + gamma = 1 - alpha", be + ga == &one - al),
            Fact::new(
                "a (3 alpha^2 - 2 alpha - 1) = 1",
                &self.a * &CubicElement::from_ints([-1, -2, 3]).embed() == one,
            ),
            Fact::new("a + b + c = 0", &(&self.a + &self.b) + &self.c == zero),
            Fact::new("a alpha + b beta + c gamma = 0", self.term(1) == zero),
            Fact::new("a alpha^2 + b beta^2 + c gamma^2 = 1", self.term(2) == one),
            Fact::new("beta^2 - (1 - alpha) beta + 1/alpha = 0", {
                let lin = al - &one;
                let konst = &(&lin * al) - &one;
                (&(&sq(be) + &(&lin * be)) + &konst).is_zero()
            }),
        ]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::trib::trib;
    use num_bigint::BigInt;

    #[test]
    fn constants_build_and_pass_identities() {
        let k = binet_constants().unwrap();
        assert!(k.identities().iter().all(|f| f.pass));
    }

    #[test]
    fn alpha_a_coords() {
        let k = binet_constants().unwrap();
        assert_eq!(
            &k.alpha * &k.a,
            FieldElement::from_ints_over([-2, 8, 1, 1, -3, -2], 22)
        );
    }

    #[test]
    fn beta_gamma_is_inverse_alpha() {
        let k = binet_constants().unwrap();
        let inv_alpha = CubicElement::from_ints([-1, -1, 1]).embed();
        assert_eq!(&k.beta * &k.gamma, inv_alpha);
    }

    #[test]
    fn binet_reproduces_sequence() {
        let k = binet_constants().unwrap();
        for n in 0..30u32 {
            let t = k.term(n);
            let expected = Q::from_integer(BigInt::from(trib(n as usize)));
            assert_eq!(t.as_rational(), Some(&expected), "n = {n}");
        }
    }

    #[test]
    fn beta_embedding_in_upper_half_plane() {
        let k = binet_constants().unwrap();
        let roots = p_roots(96).unwrap();
        let b = k.beta.eval(&roots[0]);
        assert!(b.im.is_positive());
        let a = k.alpha.eval(&roots[0]);
        assert!(a.im.contains_zero());
        assert!((a.re.to_f64() - 1.839_286_755_214_161).abs() < 1e-12);
    }
}
