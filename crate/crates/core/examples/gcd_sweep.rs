//! gcd(T_y - 1, T_z - 1) < alpha^(3z/4) over all pairs up to a bound.
use std::time::Instant;

use triboverify::gcd::{sweep, SweepOptions};

fn main() -> triboverify::Result<()> {
    let z_max = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(200);
    let start = Instant::now();
    let rep = sweep(&SweepOptions::new(z_max))?;
    println!("{rep:#?}");
    println!("{:.2?}", start.elapsed());
    Ok(())
}
