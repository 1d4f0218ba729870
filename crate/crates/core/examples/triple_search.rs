//! Both triple searches, plus the small cases eliminated by integrality.
use num_bigint::BigUint;
use triboverify::search::{brute_force, search, uvw_from_xyz, verify_triple};

fn main() -> triboverify::Result<()> {
    println!("(5, 6, 7) -> {:?}", uvw_from_xyz(5, 6, 7));
    let found = search(60, false)?;
    assert_eq!(found, search(60, true)?);
    println!("index search up to z = 60: {found:?}");
    println!("value search up to w = 2000: {:?}", brute_force(2000)?);

    let b = |n: u32| BigUint::from(n);
    println!("(1, 3, 6) -> {:?}", verify_triple(&b(1), &b(3), &b(6))?);
    Ok(())
}
