//! Acceptance suite: one line per criterion, nonzero exit if any fails.

use std::panic::{self, AssertUnwindSafe};
use std::time::{Duration, Instant};

use num_bigint::{BigInt, BigUint};
use triboverify::binet::{a_cubic, binet_constants};
use triboverify::cubic::CubicElement;
use triboverify::field::FieldElement;
use triboverify::gcd::{factor_bounds, high_regime, norm_witness, sweep, SweepOptions};
use triboverify::real::{verify_growth, verify_numeric_window, Precision};
use triboverify::records::{expansion_ratio_ok, field_facts};
use triboverify::search::{brute_force, search, uvw_from_xyz};
use triboverify::square::{is_square_in_k, SquareLimits};
use triboverify::trib::{trib, trib_fast};
use triboverify::unity::{fast_path_excludes, is_root_of_unity, monomial};

type Check = fn() -> Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn e<T: std::fmt::Display>(err: T) -> String {
    err.to_string()
}

fn sequence_engine() -> Result<String, String> {
    for n in 0..=10_000 {
        if n >= 3 {
            ensure(
                trib(n) == trib(n - 1) + trib(n - 2) + trib(n - 3),
                format!("recurrence fails at {n}"),
            )?;
        }
    }
    ensure(
        trib(0) == BigUint::from(0u32)
            && trib(1) == BigUint::from(0u32)
            && trib(2) == BigUint::from(1u32),
        "initial values",
    )?;
    for n in 0..=2000 {
        ensure(trib_fast(n) == trib(n), format!("fast path differs at {n}"))?;
    }
    Ok("recurrence to 10000, fast path to 2000".into())
}

fn growth() -> Result<String, String> {
    let rep = verify_growth(2000, &Precision::default()).map_err(e)?;
    ensure(
        rep.first_violation.is_none(),
        format!("violation at {:?}", rep.first_violation),
    )?;
    Ok(format!("{} indices", rep.checked))
}

fn numeric_windows() -> Result<String, String> {
    let rep = verify_numeric_window().map_err(e)?;
    ensure(rep.facts.len() == 5, "expected five windows")?;
    for f in rep.facts.iter().chain(&rep.consistency) {
        ensure(f.pass, format!("{} fails", f.name))?;
    }
    Ok(format!(
        "{} windows, {} consistency checks",
        rep.facts.len(),
        rep.consistency.len()
    ))
}

fn prop1_sweep() -> Result<String, String> {
    let rep = sweep(&SweepOptions::new(500)).map_err(e)?;
    ensure(rep.violations == 0, format!("{:?}", rep.first_failure))?;
    ensure(
        rep.pairs == (5..=500).map(|z| z - 4).sum::<usize>(),
        "pair count",
    )?;
    Ok(format!("{} pairs, 0 violations", rep.pairs))
}

fn norm_certificates() -> Result<String, String> {
    let mut n = 0;
    for z in 6..=120 {
        for y in 5..z {
            let w = norm_witness(y, z).map_err(e)?;
            ensure(!w.eta_prime.is_zero() && w.bound_ok, format!("({y}, {z})"))?;
            n += 1;
        }
    }
    let tight = norm_witness(6, 7).map_err(e)?;
    ensure(
        tight.norm3_value == BigInt::from(-216) && tight.d == BigUint::from(6u32),
        "tight case (6, 7)",
    )?;
    tight.verify().map_err(e)?;
    Ok(format!("{n} certificates, |N| = d^3 = 216 at (6, 7)"))
}

fn factor_bounds_all() -> Result<String, String> {
    let mut n = 0;
    for z in 6..=200 {
        for y in 5..z {
            if high_regime(y, z) {
                ensure(
                    factor_bounds(y, z).map_err(e)?,
                    format!("bound fails at ({y}, {z})"),
                )?;
                n += 1;
            }
        }
    }
    Ok(format!("{n} pairs"))
}

fn field_identities() -> Result<String, String> {
    let k = binet_constants().map_err(e)?;
    let al = FieldElement::from_ints([1, -1, 3, -2, 1, -1]);
    ensure(k.alpha == al, "alpha coordinates")?;
    let f_alpha = &(&(&(&(&al * &al) * &al) - &(&al * &al)) - &al) - &FieldElement::one();
    ensure(f_alpha.is_zero(), "f(alpha) != 0")?;
    ensure(
        k.a == FieldElement::from_ints_over([6, -13, 19, -14, 9, -5], 22),
        "a coordinates",
    )?;
    ensure(
        &k.alpha * &k.a == FieldElement::from_ints_over([-2, 8, 1, 1, -3, -2], 22),
        "alpha a coordinates",
    )?;
    let facts = field_facts().map_err(e)?;
    for (name, pass) in &facts {
        ensure(*pass, format!("{name} fails"))?;
    }
    Ok(format!("{} identities", facts.len()))
}

fn lemma2() -> Result<String, String> {
    let limits = SquareLimits::default();
    let a = a_cubic();
    let alpha_a = &CubicElement::alpha() * &a;
    for (name, t) in [("a", &a), ("alpha a", &alpha_a)] {
        let cert = is_square_in_k(t, &limits).map_err(e)?;
        ensure(!cert.verdict, format!("{name} reported square"))?;
        cert.verify(t).map_err(e)?;
    }
    let alpha_sq = CubicElement::from_ints([0, 0, 1]);
    let cert = is_square_in_k(&alpha_sq, &limits).map_err(e)?;
    cert.verify(&alpha_sq).map_err(e)?;
    let root = cert.root.ok_or("no root for alpha^2")?;
    ensure(
        root == FieldElement::alpha() || root == -&FieldElement::alpha(),
        "root of alpha^2 is not alpha",
    )?;
    let m11 = CubicElement::from_int(-11);
    let cert = is_square_in_k(&m11, &limits).map_err(e)?;
    ensure(cert.verdict, "-11 reported non-square")?;
    cert.verify(&m11).map_err(e)?;
    Ok("a, alpha a refuted; alpha^2, -11 confirmed".into())
}

fn search_all() -> Result<String, String> {
    let pruned = search(60, true).map_err(e)?;
    let plain = search(60, false).map_err(e)?;
    ensure(
        pruned.is_empty() && plain.is_empty(),
        "search found triples",
    )?;
    ensure(
        brute_force(2000).map_err(e)?.is_empty(),
        "brute force found triples",
    )?;
    ensure(uvw_from_xyz(5, 6, 7).is_none(), "(5, 6, 7) not eliminated")?;
    Ok("search(60) both modes, brute(2000), z = 7 eliminated".into())
}

fn roots_of_unity() -> Result<String, String> {
    let mut n = 0;
    for ma in -6..=-1 {
        for mb in 1..=6 {
            for mg in 1..=6 {
                let u = monomial(ma, mb, mg).map_err(e)?;
                let exact = is_root_of_unity(&u).map_err(e)?;
                ensure(!exact, format!("monomial ({ma}, {mb}, {mg}) is +-1"))?;
                ensure(
                    fast_path_excludes(ma, mb, mg) == Some(!exact),
                    format!("fast path disagrees at ({ma}, {mb}, {mg})"),
                )?;
                n += 1;
            }
        }
    }
    Ok(format!("{n} monomials"))
}

fn expansion_decay() -> Result<String, String> {
    let p = Precision::new(512, 8192).map_err(e)?;
    for t in 2..=6 {
        ensure(
            expansion_ratio_ok(20, 25, 30, t, &p).map_err(e)?,
            format!("decay fails between T = {} and {t}", t - 1),
        )?;
    }
    Ok("T = 1..6 decreasing, ratios below 2 alpha^(-20/12)".into())
}

fn main() {
    let criteria: [(&str, Check, Option<Duration>); 11] = [
        (
            "sequence engine",
            sequence_engine,
            Some(Duration::from_secs(5)),
        ),
        ("growth bounds", growth, Some(Duration::from_secs(10))),
        ("numeric windows", numeric_windows, None),
        (
            "gcd sweep to z = 500",
            prop1_sweep,
            Some(Duration::from_secs(60)),
        ),
        ("norm certificates to z = 120", norm_certificates, None),
        ("embedding bounds to z = 200", factor_bounds_all, None),
        ("exact field identities", field_identities, None),
        ("square certificates", lemma2, Some(Duration::from_secs(5))),
        ("triple searches", search_all, Some(Duration::from_secs(60))),
        ("root-of-unity grid", roots_of_unity, None),
        ("expansion decay", expansion_decay, None),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, check, budget)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into()))
        });
        let took = start.elapsed();
        let outcome = match (outcome, budget) {
            (Ok(_), Some(b)) if took > *b => Err(format!("took {took:.2?}, budget {b:?}")),
            (o, _) => o,
        };
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail} [{took:.2?}]", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {why} [{took:.2?}]", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
