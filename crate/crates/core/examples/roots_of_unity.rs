//! alpha^ma beta^mb gamma^mg is never a root of unity on the small grid.
use triboverify::unity::{fast_path_excludes, is_root_of_unity, modulus_witness, monomial};

fn main() -> triboverify::Result<()> {
    let mut n = 0;
    for ma in -6..0 {
        for mb in 1..=6 {
            for mg in 1..=6 {
                let u = monomial(ma, mb, mg)?;
                assert!(!is_root_of_unity(&u)?);
                assert_eq!(fast_path_excludes(ma, mb, mg), Some(true));
                n += 1;
            }
        }
    }
    println!("{n} monomials checked");

    let u = monomial(-1, 1, 1)?;
    println!("alpha^-1 beta gamma = {u}");
    println!("embedding with |u| != 1: {:?}", modulus_witness(&u, 64)?);
    Ok(())
}
