//! alpha^(n-3) <= T_n <= alpha^(n-2), decided exactly with enclosures.
use std::cmp::Ordering;

use triboverify::real::{cmp_alpha_power, verify_growth, Precision};
use triboverify::trib::trib;

fn main() -> triboverify::Result<()> {
    let rep = verify_growth(2000, &Precision::default())?;
    println!(
        "checked {} indices, first violation: {:?}",
        rep.checked, rep.first_violation
    );

    // the upper bound is never far from tight
    let n = 300;
    let ord = cmp_alpha_power(n as i64 - 2, 1, &trib(n))?;
    assert_eq!(ord, Ordering::Greater);
    println!("alpha^{} vs T_{n}: {ord:?}", n - 2);
    Ok(())
}
