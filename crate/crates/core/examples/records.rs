//! Writing verification records and checking them back.
use triboverify::gcd::norm_witness;
use triboverify::real::Precision;
use triboverify::records::{emit_records, read_records, revalidate, Record};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut records = Vec::new();
    for (y, z) in [(6, 7), (5, 7), (12, 15)] {
        let w = norm_witness(y, z)?;
        records.push(Record::Norm {
            y,
            z,
            d: w.d.to_string(),
            norm3: w.norm3_value.to_string(),
            divides: true,
            tight: w.norm3_value.magnitude() == &w.d.pow(3),
            factor_ok: None,
        });
    }
    let path = std::env::temp_dir().join("triboverify-example.jsonl");
    emit_records(&path, &records)?;
    print!("{}", std::fs::read_to_string(&path)?);
    for r in read_records(&path)? {
        println!(
            "{} reproduces: {}",
            r.kind(),
            revalidate(&r, &Precision::default())?
        );
    }
    Ok(())
}
