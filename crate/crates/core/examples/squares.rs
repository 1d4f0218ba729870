//! Square tests in the splitting field, with certificates.
use triboverify::binet::a_cubic;
use triboverify::cubic::CubicElement;
use triboverify::square::{is_square_in_k, sqrt_minus_11, SquareLimits};

fn main() -> triboverify::Result<()> {
    let limits = SquareLimits::default();
    let a = a_cubic();
    let cases = [
        ("a", a.clone()),
        ("alpha a", &CubicElement::alpha() * &a),
        ("alpha^2", CubicElement::from_ints([0, 0, 1])),
        ("-11", CubicElement::from_int(-11)),
        ("alpha^2 - 4", CubicElement::from_ints([-4, 0, 1])),
    ];
    for (name, t) in cases {
        let cert = is_square_in_k(&t, &limits)?;
        cert.verify(&t)?;
        match (&cert.root, &cert.witnesses) {
            (Some(r), _) => println!("{name}: square, root {r}"),
            (_, Some((w, ws))) => println!("{name}: not a square; {w:?}, {ws:?}"),
            _ => unreachable!(),
        }
    }
    println!("sqrt(-11) = {}", sqrt_minus_11()?);
    Ok(())
}
