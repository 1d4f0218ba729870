//! Exact arithmetic in the degree-6 splitting field.
use triboverify::binet::binet_constants;
use triboverify::cubic::{norm3, CubicElement};
use triboverify::field::{norm6, FieldElement};

fn main() -> triboverify::Result<()> {
    let k = binet_constants()?;
    println!("alpha = {}", k.alpha);
    println!("beta  = {}", k.beta);
    println!("a     = {}", k.a);
    for f in k.identities() {
        println!("  {:<44} {}", f.name, f.pass);
    }

    let e = FieldElement::epsilon();
    println!("e + 1/e == alpha: {}", &e + &e.inv()? == k.alpha);

    let t = CubicElement::from_ints([-12, 0, 3]);
    println!(
        "N(3 alpha^2 - 12) = {}, sextic norm = {}",
        norm3(&t),
        norm6(&t.embed())
    );
    Ok(())
}
