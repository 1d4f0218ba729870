//! Line-delimited JSON verification records.
//!
//! Every line is one object whose keys come in a fixed order: `schema`
//! (currently 1), `kind`, then the kind-specific fields listed on [`Record`].
//! Big integers and rationals are decimal strings (`"-216"`, `"9/22"`).

use std::io::{self, BufRead, Write};
use std::path::Path;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::binet::binet_constants;
use crate::cubic::CubicElement;
use crate::error::{Error, Result};
use crate::expansion::expansion_error_with;
use crate::field::FieldElement;
use crate::gcd::{factor_bounds_with, gcd_shifted, norm_witness, prop1_holds_with};
use crate::real::{verify_growth, verify_numeric_window, Precision};
use crate::search::{brute_force, search, verify_triple, Sequence, Tribonacci};
use crate::square::{SquareCertificate, Witness};
use crate::trib::TribIndex;

pub const SCHEMA: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessRecord {
    pub q: u64,
    pub r: u64,
    pub residue: u64,
}

impl From<Witness> for WitnessRecord {
    fn from(w: Witness) -> Self {
        Self {
            q: w.prime,
            r: w.root,
            residue: w.residue,
        }
    }
}

impl From<&WitnessRecord> for Witness {
    fn from(w: &WitnessRecord) -> Self {
        Witness {
            prime: w.q,
            root: w.r,
            residue: w.residue,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Record {
    /// `x, y, z` are the indices of `uv + 1`, `uw + 1`, `vw + 1` (null when not a term).
    Triple {
        u: String,
        v: String,
        w: String,
        x: Option<TribIndex>,
        y: Option<TribIndex>,
        z: Option<TribIndex>,
        ok: bool,
    },
    Prop1 {
        y: TribIndex,
        z: TribIndex,
        gcd: String,
        bound_ok: bool,
    },
    Norm {
        y: TribIndex,
        z: TribIndex,
        d: String,
        norm3: String,
        divides: bool,
        tight: bool,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        factor_ok: Option<bool>,
    },
    Lemma2 {
        element: String,
        coords: Vec<String>,
        verdict: bool,
        root: Option<Vec<String>>,
        witness: Option<WitnessRecord>,
        witness_scaled: Option<WitnessRecord>,
    },
    Constants {
        name: String,
        pass: bool,
    },
    Growth {
        n_max: TribIndex,
        checked: usize,
        first_violation: Option<TribIndex>,
    },
    Field {
        identity: String,
        pass: bool,
    },
    Expansion {
        x: TribIndex,
        y: TribIndex,
        z: TribIndex,
        order: u32,
        /// Midpoint of the error enclosure, in scientific notation.
        error: String,
        /// `error(order) / error(order - 1) <= 2 alpha^(-x/12)`; absent for orders 0 and 1.
        #[serde(default, skip_serializing_if = "Option::is_none")]
        ratio_ok: Option<bool>,
    },
    SearchSummary {
        mode: String,
        bound: u64,
        prune: bool,
        count: usize,
    },
}

#[derive(Serialize, Deserialize)]
struct Line {
    schema: u32,
    #[serde(flatten)]
    record: Record,
}

impl Record {
    pub fn to_json(&self) -> String {
        serde_json::to_string(&Line {
            schema: SCHEMA,
            record: self.clone(),
        })
        .expect("records serialize")
    }

    pub fn from_json(line: &str) -> Result<Self> {
        let parsed: Line = serde_json::from_str(line)
            .map_err(|e| Error::precondition(format!("malformed record: {e}")))?;
        if parsed.schema != SCHEMA {
            return Err(Error::precondition(format!(
                "unsupported record schema {}",
                parsed.schema
            )));
        }
        Ok(parsed.record)
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Record::Triple { .. } => "triple",
            Record::Prop1 { .. } => "prop1",
            Record::Norm { .. } => "norm",
            Record::Lemma2 { .. } => "lemma2",
            Record::Constants { .. } => "constants",
            Record::Growth { .. } => "growth",
            Record::Field { .. } => "field",
            Record::Expansion { .. } => "expansion",
            Record::SearchSummary { .. } => "search-summary",
        }
    }

    pub fn triple(u: &BigUint, v: &BigUint, w: &BigUint) -> Result<Self> {
        let idx = |n: BigUint| Tribonacci.index_of(&n);
        let (x, y, z) = (idx(u * v + 1u32)?, idx(u * w + 1u32)?, idx(v * w + 1u32)?);
        Ok(Record::Triple {
            u: u.to_string(),
            v: v.to_string(),
            w: w.to_string(),
            x,
            y,
            z,
            ok: x.is_some() && y.is_some() && z.is_some(),
        })
    }

    pub fn lemma2(element: &str, theta: &CubicElement, cert: &SquareCertificate) -> Self {
        let (witness, witness_scaled) = match cert.witnesses {
            Some((a, b)) => (Some(a.into()), Some(b.into())),
            None => (None, None),
        };
        Record::Lemma2 {
            element: element.to_string(),
            coords: theta.coords().iter().map(|c| c.to_string()).collect(),
            verdict: cert.verdict,
            root: cert
                .root
                .as_ref()
                .map(|r| r.coords().iter().map(|c| c.to_string()).collect()),
            witness,
            witness_scaled,
        }
    }

    /// Whether the record is the outcome of a passing check.
    pub fn passes(&self) -> bool {
        match self {
            Record::Triple { ok, .. } => !ok,
            Record::Prop1 { bound_ok, .. } => *bound_ok,
            Record::Norm {
                divides, factor_ok, ..
            } => *divides && factor_ok.unwrap_or(true),
            Record::Lemma2 { .. } => true,
            Record::Constants { pass, .. } | Record::Field { pass, .. } => *pass,
            Record::Growth {
                first_violation, ..
            } => first_violation.is_none(),
            Record::Expansion { ratio_ok, .. } => ratio_ok.unwrap_or(true),
            Record::SearchSummary { count, .. } => *count == 0,
        }
    }
}

/// Writes one record per line.
pub fn emit_records(path: &Path, records: &[Record]) -> io::Result<()> {
    let mut out = io::BufWriter::new(std::fs::File::create(path)?);
    for r in records {
        writeln!(out, "{}", r.to_json())?;
    }
    out.flush()
}

pub fn read_records(path: &Path) -> Result<Vec<Record>> {
    let file = std::fs::File::open(path)
        .map_err(|e| Error::precondition(format!("{}: {e}", path.display())))?;
    io::BufReader::new(file)
        .lines()
        .filter(|l| l.as_ref().map_or(true, |s| !s.trim().is_empty()))
        .map(|l| Record::from_json(&l.map_err(|e| Error::precondition(e.to_string()))?))
        .collect()
}

fn big(s: &str) -> Result<BigUint> {
    BigUint::from_str(s)
        .map_err(|_| Error::precondition(format!("not a nonnegative integer: {s:?}")))
}

fn rational(s: &str) -> Result<BigRational> {
    BigRational::from_str(s).map_err(|_| Error::precondition(format!("not a rational: {s:?}")))
}

/// Scientific notation used by expansion records.
pub fn format_error(x: f64) -> String {
    format!("{x:.12e}")
}

/// Recomputes a record from its inputs and compares. `Ok(false)` means the
/// record disagrees with a fresh computation.
pub fn revalidate(record: &Record, precision: &Precision) -> Result<bool> {
    Ok(match record {
        Record::Triple { u, v, w, .. } => {
            let fresh = Record::triple(&big(u)?, &big(v)?, &big(w)?)?;
            verify_triple(&big(u)?, &big(v)?, &big(w)?)?.is_some()
                == matches!(fresh, Record::Triple { ok: true, .. })
                && fresh == *record
        }
        Record::Prop1 {
            y,
            z,
            gcd,
            bound_ok,
        } => gcd_shifted(*y, *z)? == big(gcd)? && prop1_holds_with(*y, *z, precision)? == *bound_ok,
        Record::Norm {
            y,
            z,
            d,
            norm3,
            divides,
            tight,
            factor_ok,
        } => {
            let w = norm_witness(*y, *z)?;
            w.verify()?;
            let d3 = BigInt::from(w.d.pow(3));
            let fresh_factor = match factor_ok {
                Some(_) => Some(factor_bounds_with(*y, *z, precision)?),
                None => None,
            };
            w.d == big(d)?
                && w.norm3_value.to_string() == *norm3
                && *divides
                && *tight == (num_traits::Signed::abs(&w.norm3_value) == d3)
                && fresh_factor == *factor_ok
        }
        Record::Lemma2 {
            coords,
            verdict,
            root,
            witness,
            witness_scaled,
            ..
        } => {
            if coords.len() != 3 {
                return Ok(false);
            }
            let c: Vec<BigRational> = coords.iter().map(|s| rational(s)).collect::<Result<_>>()?;
            let theta = CubicElement::new([c[0].clone(), c[1].clone(), c[2].clone()]);
            let root = match root {
                Some(r) if r.len() == 6 => {
                    let c: Vec<BigRational> =
                        r.iter().map(|s| rational(s)).collect::<Result<_>>()?;
                    Some(FieldElement::new(c.try_into().expect("six coordinates")))
                }
                Some(_) => return Ok(false),
                None => None,
            };
            let witnesses = match (witness, witness_scaled) {
                (Some(a), Some(b)) => Some((a.into(), b.into())),
                (None, None) => None,
                _ => return Ok(false),
            };
            let cert = SquareCertificate {
                verdict: *verdict,
                root,
                witnesses,
            };
            cert.verify(&theta).is_ok()
        }
        Record::Constants { name, pass } => {
            let rep = verify_numeric_window()?;
            rep.facts
                .iter()
                .chain(&rep.consistency)
                .any(|f| f.name == *name && f.pass == *pass)
        }
        Record::Growth {
            n_max,
            checked,
            first_violation,
        } => {
            let rep = verify_growth(*n_max, precision)?;
            rep.checked == *checked && rep.first_violation == *first_violation
        }
        Record::Field { identity, pass } => field_facts()?
            .iter()
            .any(|(n, p)| n == identity && p == pass),
        Record::Expansion {
            x,
            y,
            z,
            order,
            error,
            ratio_ok,
        } => {
            let e = expansion_error_with(*x, *y, *z, *order, precision)?;
            let same_error = format_error(e.to_f64()) == *error;
            let same_ratio = match ratio_ok {
                None => true,
                Some(r) => expansion_ratio_ok(*x, *y, *z, *order, precision)? == *r,
            };
            same_error && same_ratio
        }
        Record::SearchSummary {
            mode,
            bound,
            prune,
            count,
        } => match mode.as_str() {
            "search" => search(*bound as TribIndex, *prune)?.len() == *count,
            "brute" => brute_force(*bound)?.len() == *count,
            _ => false,
        },
    })
}

/// `error(order) / error(order - 1) <= 2 alpha^(-x/12)`, decided as
/// `(error(order) / error(order - 1))^12 alpha^x <= 2^12` on enclosures.
pub fn expansion_ratio_ok(
    x: TribIndex,
    y: TribIndex,
    z: TribIndex,
    order: u32,
    precision: &Precision,
) -> Result<bool> {
    if order < 1 {
        return Err(Error::precondition("the decay ratio needs order >= 1"));
    }
    let cur = expansion_error_with(x, y, z, order, precision)?;
    let prev = expansion_error_with(x, y, z, order - 1, precision)?;
    let prec = cur.prec();
    let ratio = cur.div(&prev)?;
    let lhs = &ratio.powu(12) * &crate::real::alpha_enclosure(prec).powu(x as u64);
    let rhs = crate::interval::Enclosure::from_int(4096, prec);
    Ok(cur.cmp_certain(&prev) == Some(std::cmp::Ordering::Less)
        && lhs.cmp_certain(&rhs) == Some(std::cmp::Ordering::Less))
}

/// Names and outcomes of the exact field checks.
pub fn field_facts() -> Result<Vec<(String, bool)>> {
    let k = binet_constants()?;
    let mut out: Vec<(String, bool)> = k
        .identities()
        .into_iter()
        .map(|f| (f.name, f.pass))
        .collect();
    let a_alpha = &k.alpha * &k.a;
    out.push((
        "a in e-coordinates".into(),
        k.a == FieldElement::from_ints_over([6, -13, 19, -14, 9, -5], 22),
    ));
    out.push((
        "alpha a in e-coordinates".into(),
        a_alpha == FieldElement::from_ints_over([-2, 8, 1, 1, -3, -2], 22),
    ));
    out.push((
        "alpha = e + 1/e".into(),
        k.alpha == &FieldElement::epsilon() + &FieldElement::epsilon().inv()?,
    ));
    let s = crate::square::sqrt_minus_11()?;
    out.push((
        "sqrt(-11)^2 = -11".into(),
        &s * &s == FieldElement::from_int(-11),
    ));
    let mut grid = true;
    for ma in -6..0 {
        for mb in 1..=6 {
            for mg in 1..=6 {
                let u = crate::unity::monomial(ma, mb, mg)?;
                let exact = crate::unity::is_root_of_unity(&u)?;
                let fast = crate::unity::fast_path_excludes(ma, mb, mg) == Some(true);
                grid &= !exact && fast;
            }
        }
    }
    out.push(("no roots of unity on the exponent grid".into(), grid));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn key_order_and_shapes() {
        let r = Record::triple(
            &BigUint::from(1u32),
            &BigUint::from(3u32),
            &BigUint::from(6u32),
        )
        .unwrap();
        assert_eq!(
            r.to_json(),
            r#"{"schema":1,"kind":"triple","u":"1","v":"3","w":"6","x":5,"y":6,"z":null,"ok":false}"#
        );
        let p = Record::Prop1 {
            y: 6,
            z: 7,
            gcd: "6".into(),
            bound_ok: true,
        };
        assert_eq!(
            p.to_json(),
            r#"{"schema":1,"kind":"prop1","y":6,"z":7,"gcd":"6","bound_ok":true}"#
        );
        let n = Record::Norm {
            y: 6,
            z: 7,
            d: "6".into(),
            norm3: "-216".into(),
            divides: true,
            tight: true,
            factor_ok: None,
        };
        assert_eq!(
            n.to_json(),
            r#"{"schema":1,"kind":"norm","y":6,"z":7,"d":"6","norm3":"-216","divides":true,"tight":true}"#
        );
        for rec in [r, p, n] {
            assert_eq!(Record::from_json(&rec.to_json()).unwrap(), rec);
        }
    }

    #[test]
    fn schema_is_checked() {
        assert!(
            Record::from_json(r#"{"schema":2,"kind":"constants","name":"x","pass":true}"#).is_err()
        );
        assert!(Record::from_json("not json").is_err());
    }

    #[test]
    fn revalidation_catches_edits() {
        let p = Precision::default();
        let good = Record::Prop1 {
            y: 6,
            z: 7,
            gcd: "6".into(),
            bound_ok: true,
        };
        assert!(revalidate(&good, &p).unwrap());
        let bad = Record::Prop1 {
            y: 6,
            z: 7,
            gcd: "3".into(),
            bound_ok: true,
        };
        assert!(!revalidate(&bad, &p).unwrap());
    }

    #[test]
    fn field_facts_hold() {
        assert!(field_facts().unwrap().iter().all(|(_, p)| *p));
    }
}
