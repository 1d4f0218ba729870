//! Terms, membership and index windows.
use num_bigint::BigUint;
use triboverify::trib::{index_window, is_tribonacci, trib, trib_fast};

fn main() -> triboverify::Result<()> {
    for n in 0..=20 {
        print!("{} ", trib(n));
    }
    println!();

    let big = trib(1000);
    assert_eq!(big, trib_fast(1000));
    println!("T_1000 has {} digits", big.to_string().len());

    for v in [24u32, 25, 927, 1705] {
        let v = BigUint::from(v);
        let (lo, hi) = index_window(&v)?;
        println!("{v}: window [{lo}, {hi}], index {:?}", is_tribonacci(&v)?);
    }
    Ok(())
}
