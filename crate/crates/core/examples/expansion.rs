//! Error of the truncated expansion of u at (20, 25, 30).
use triboverify::expansion::{expansion_error, ExpansionParams};

fn main() -> triboverify::Result<()> {
    let (x, y, z) = (20, 25, 30);
    let mut prev: Option<f64> = None;
    for t in 0..=6 {
        let e = expansion_error(x, y, z, t)?.to_f64();
        let ratio = prev.map(|p| format!("{:.3e}", e / p)).unwrap_or_default();
        println!("T = {t}: {e:.6e} {ratio}");
        prev = Some(e);
    }
    println!(
        "terms at order 6: {}",
        ExpansionParams::new(6, 256)?.terms.len()
    );
    Ok(())
}
