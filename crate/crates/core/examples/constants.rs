//! Enclosures of the roots and Binet coefficients.
use triboverify::real::{constants, verify_numeric_window};

fn main() -> triboverify::Result<()> {
    let k = constants(128)?;
    println!(
        "alpha in [{}, {}]",
        k.alpha.lo().to_f64(),
        k.alpha.hi().to_f64()
    );
    println!("beta  ~ {} + {}i", k.beta.re.to_f64(), k.beta.im.to_f64());
    println!("a     ~ {}", k.a.to_f64());
    println!("|b|   ~ {}", k.b.abs()?.to_f64());

    let rep = verify_numeric_window()?;
    for f in rep.facts.iter().chain(&rep.consistency) {
        println!("{:<36} {}", f.name, if f.pass { "ok" } else { "FAIL" });
    }
    Ok(())
}
