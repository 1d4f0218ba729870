//! Norm certificates d^3 | N(eta') and the embedding bounds behind them.
use triboverify::gcd::{factor_bounds, high_regime, norm_witness};

fn main() -> triboverify::Result<()> {
    for (y, z) in [(6, 7), (5, 7), (5, 6), (18, 20), (40, 45)] {
        let w = norm_witness(y, z)?;
        w.verify()?;
        let bounds = if high_regime(y, z) {
            format!("{}", factor_bounds(y, z)?)
        } else {
            "-".into()
        };
        println!(
            "({y:>2}, {z:>2}) d = {:<4} N = {:<24} bounds: {bounds}",
            w.d, w.norm3_value
        );
    }
    Ok(())
}
