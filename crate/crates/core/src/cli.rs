//! Command-line front end.
//!
//! Exit status: 0 when every check passes (or a search comes back empty),
//! 1 when a check fails or a triple is found, 2 for usage, configuration and
//! I/O problems, 3 when a computation runs out of precision or a certificate
//! is inconclusive within the configured caps.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use num_bigint::{BigInt, BigUint};
use rayon::prelude::*;

use crate::binet::a_cubic;
use crate::cubic::CubicElement;
use crate::error::{Error, Result};
use crate::gcd::{factor_bounds_with, high_regime, norm_witness, sweep_detailed, SweepOptions};
use crate::real::{verify_growth, verify_numeric_window, Precision};
use crate::records::{
    emit_records, expansion_ratio_ok, field_facts, format_error, read_records, revalidate, Record,
};
use crate::search::{brute_force, search};
use crate::square::{is_square_in_k, SquareLimits};
use crate::trib::{is_tribonacci_with, with_table, TribIndex};

/// Prefix of the environment variables mirroring the global flags.
pub const ENV_PREFIX: &str = "TRIBOVERIFY_";

#[derive(Parser, Debug)]
#[command(
    name = "triboverify",
    version,
    about = "Tribonacci Diophantine triple verification"
)]
pub struct Cli {
    #[command(flatten)]
    pub config: ConfigArgs,
    #[command(subcommand)]
    pub command: Command,
}

/// Global settings. Each may also come from `TRIBOVERIFY_<NAME>`.
#[derive(Args, Debug, Default, Clone)]
pub struct ConfigArgs {
    /// Starting precision of adaptive computations, in bits [default: 192]
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub precision_bits: Option<String>,
    /// Precision cap, in bits [default: 65536]
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub max_precision_bits: Option<String>,
    /// Largest witness prime tried by square tests [default: 1000000]
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub witness_prime_bound: Option<String>,
    /// Largest denominator accepted in rational reconstruction [default: 1000000000000]
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub denominator_bound: Option<String>,
    /// Worker threads [default: 1]
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub jobs: Option<String>,
    /// Write records here as JSON lines
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print T_0 ..= T_N
    Gen {
        #[arg(long)]
        max_index: TribIndex,
    },
    /// Report whether each value is a Tribonacci number
    Member {
        #[arg(required = true)]
        values: Vec<String>,
    },
    /// Search index triples (x, y, z) with z <= Z
    Search {
        #[arg(long)]
        z_max: TribIndex,
        #[arg(long)]
        use_gcd_prune: bool,
    },
    /// Search value triples u < v < w <= W
    Brute {
        #[arg(long)]
        w_max: u64,
    },
    #[command(subcommand)]
    Verify(Verify),
    /// Recompute every record in a file and compare
    CheckRecords { path: PathBuf },
}

#[derive(Subcommand, Debug)]
pub enum Verify {
    /// gcd(T_y - 1, T_z - 1) < alpha^(3z/4) for 4 <= y < z <= Z
    Prop1 {
        #[arg(long)]
        z_max: TribIndex,
    },
    /// Norm certificates for 5 <= y < z <= Z, embedding bounds on a sample
    Norms {
        #[arg(long)]
        z_max: TribIndex,
        /// High-regime pairs receiving the embedding bounds
        #[arg(long, default_value_t = 64)]
        samples: usize,
    },
    /// Numeric windows for the roots and coefficients
    Constants,
    /// alpha^(n-3) <= T_n <= alpha^(n-2) for 2 <= n <= N
    Growth {
        #[arg(long)]
        n_max: TribIndex,
    },
    /// Exact identities in the splitting field
    Field,
    /// a and alpha a are not squares in the splitting field
    Lemma2,
    /// Decay of the truncated expansion of u
    Expansion {
        #[arg(long)]
        x: TribIndex,
        #[arg(long)]
        y: TribIndex,
        #[arg(long)]
        z: TribIndex,
        #[arg(long)]
        t_max: u32,
    },
    /// Everything above
    All {
        /// Smaller sweeps (z <= 100, n <= 500)
        #[arg(long)]
        quick: bool,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub precision_bits: u32,
    pub max_precision_bits: u32,
    pub witness_prime_bound: u64,
    pub denominator_bound: u64,
    pub jobs: usize,
    pub out: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            precision_bits: 192,
            max_precision_bits: 65536,
            witness_prime_bound: 1_000_000,
            denominator_bound: 1_000_000_000_000,
            jobs: 1,
            out: None,
        }
    }
}

impl RunConfig {
    pub fn precision(&self) -> Precision {
        Precision {
            start_bits: self.precision_bits,
            max_bits: self.max_precision_bits,
        }
    }

    pub fn square_limits(&self) -> SquareLimits {
        SquareLimits {
            prime_bound: self.witness_prime_bound,
            denominator_bound: BigInt::from(self.denominator_bound),
            precision: self.precision(),
        }
    }
}

fn positive<T: FromStr + PartialOrd + Default>(name: &str, raw: &str) -> Result<T, String> {
    match raw.trim().parse::<T>() {
        Ok(v) if v > T::default() => Ok(v),
        _ => Err(format!(
            "--{name}: expected a positive integer, got {raw:?}"
        )),
    }
}

/// Flags override the environment, which overrides the defaults.
pub fn load_config(
    flags: &ConfigArgs,
    env: impl Fn(&str) -> Option<String>,
) -> Result<RunConfig, String> {
    let pick = |flag: &Option<String>, name: &str| -> Option<String> {
        flag.clone().or_else(|| {
            env(&format!(
                "{ENV_PREFIX}{}",
                name.to_uppercase().replace('-', "_")
            ))
        })
    };
    let mut cfg = RunConfig::default();
    if let Some(v) = pick(&flags.precision_bits, "precision-bits") {
        cfg.precision_bits = positive("precision-bits", &v)?;
    }
    if let Some(v) = pick(&flags.max_precision_bits, "max-precision-bits") {
        cfg.max_precision_bits = positive("max-precision-bits", &v)?;
    }
    if let Some(v) = pick(&flags.witness_prime_bound, "witness-prime-bound") {
        cfg.witness_prime_bound = positive("witness-prime-bound", &v)?;
    }
    if let Some(v) = pick(&flags.denominator_bound, "denominator-bound") {
        cfg.denominator_bound = positive("denominator-bound", &v)?;
    }
    if let Some(v) = pick(&flags.jobs, "jobs") {
        cfg.jobs = positive("jobs", &v)?;
    }
    cfg.out = flags
        .out
        .clone()
        .or_else(|| env(&format!("{ENV_PREFIX}OUT")).map(PathBuf::from));
    if cfg.precision_bits > cfg.max_precision_bits {
        return Err(format!(
            "precision-bits ({}) exceeds max-precision-bits ({})",
            cfg.precision_bits, cfg.max_precision_bits
        ));
    }
    Ok(cfg)
}

/// What a command produced.
struct Outcome {
    records: Vec<Record>,
    passed: bool,
    summary: Vec<String>,
}

impl Outcome {
    fn merge(&mut self, other: Outcome) {
        self.records.extend(other.records);
        self.passed &= other.passed;
        self.summary.extend(other.summary);
    }
}

fn from_records(records: Vec<Record>, summary: String) -> Outcome {
    let passed = records.iter().all(Record::passes);
    Outcome {
        records,
        passed,
        summary: vec![summary],
    }
}

fn verify_prop1(z_max: TribIndex, cfg: &RunConfig) -> Result<Outcome> {
    if z_max < 5 {
        return Err(Error::Precondition(
            "verify prop1 needs --z-max >= 5".into(),
        ));
    }
    let opts = SweepOptions {
        z_max,
        factor_stride: 4,
        precision: cfg.precision(),
    };
    let (rep, rows) = sweep_detailed(&opts)?;
    let records = rows
        .into_iter()
        .map(|r| Record::Prop1 {
            y: r.y,
            z: r.z,
            gcd: r.d.to_string(),
            bound_ok: r.bound_ok,
        })
        .collect();
    let mut out = from_records(
        records,
        format!(
            "prop1: {} pairs up to z = {z_max} ({} via the trivial chain, {} norm certificates, {} embedding bounds), {} violations",
            rep.pairs, rep.trivial_chain, rep.norm_witnesses, rep.factor_checks, rep.violations
        ),
    );
    if let Some(f) = rep.first_failure {
        out.summary.push(format!(
            "first failure at (y, z) = ({}, {}): {}",
            f.y, f.z, f.reason
        ));
    }
    out.passed &= rep.violations == 0;
    Ok(out)
}

fn verify_norms(z_max: TribIndex, samples: usize, cfg: &RunConfig) -> Result<Outcome> {
    if z_max < 6 {
        return Err(Error::Precondition(
            "verify norms needs --z-max >= 6".into(),
        ));
    }
    let pairs: Vec<(TribIndex, TribIndex)> = (6..=z_max)
        .flat_map(|z| (5..z).map(move |y| (y, z)))
        .collect();
    let high: Vec<usize> = (0..pairs.len())
        .filter(|&i| high_regime(pairs[i].0, pairs[i].1))
        .collect();
    let mut sampled = vec![false; pairs.len()];
    if samples > 0 && !high.is_empty() {
        let take = samples.min(high.len());
        for k in 0..take {
            sampled[high[k * high.len() / take]] = true;
        }
    }
    let precision = cfg.precision();
    with_table(z_max, |_| ());
    let records: Vec<Record> = pairs
        .par_iter()
        .zip(sampled.par_iter())
        .map(|(&(y, z), &sample)| {
            let w = match norm_witness(y, z) {
                Ok(w) => w,
                Err(Error::Integrity(_)) => {
                    return Ok(Record::Norm {
                        y,
                        z,
                        d: crate::gcd::gcd_shifted(y, z)?.to_string(),
                        norm3: crate::cubic::norm3(&crate::gcd::eta_prime(y, z)).to_string(),
                        divides: false,
                        tight: false,
                        factor_ok: None,
                    })
                }
                Err(e) => return Err(e),
            };
            let d3 = BigInt::from(w.d.pow(3));
            let factor_ok = if sample {
                Some(factor_bounds_with(y, z, &precision)?)
            } else {
                None
            };
            Ok(Record::Norm {
                y,
                z,
                d: w.d.to_string(),
                norm3: w.norm3_value.to_string(),
                divides: true,
                tight: num_traits::Signed::abs(&w.norm3_value) == d3,
                factor_ok,
            })
        })
        .collect::<Result<_>>()?;
    let tight = records
        .iter()
        .filter(|r| matches!(r, Record::Norm { tight: true, .. }))
        .count();
    let checked = records
        .iter()
        .filter(|r| {
            matches!(
                r,
                Record::Norm {
                    factor_ok: Some(_),
                    ..
                }
            )
        })
        .count();
    let summary = format!(
        "norms: {} certificates up to z = {z_max} ({tight} tight), embedding bounds on {checked} pairs",
        records.len()
    );
    Ok(from_records(records, summary))
}

fn verify_constants() -> Result<Outcome> {
    let rep = verify_numeric_window()?;
    let records: Vec<Record> = rep
        .facts
        .iter()
        .chain(&rep.consistency)
        .map(|f| Record::Constants {
            name: f.name.clone(),
            pass: f.pass,
        })
        .collect();
    let ok = records.iter().filter(|r| r.passes()).count();
    let summary = format!(
        "constants: {ok}/{} windows and consistency checks hold",
        records.len()
    );
    Ok(from_records(records, summary))
}

fn verify_growth_cmd(n_max: TribIndex, cfg: &RunConfig) -> Result<Outcome> {
    let rep = verify_growth(n_max, &cfg.precision())?;
    let summary = match rep.first_violation {
        None => format!(
            "growth: {} indices up to n = {n_max}, no violations",
            rep.checked
        ),
        Some(n) => format!("growth: violated at n = {n}"),
    };
    let rec = Record::Growth {
        n_max,
        checked: rep.checked,
        first_violation: rep.first_violation,
    };
    Ok(from_records(vec![rec], summary))
}

fn verify_field() -> Result<Outcome> {
    let records: Vec<Record> = field_facts()?
        .into_iter()
        .map(|(identity, pass)| Record::Field { identity, pass })
        .collect();
    let ok = records.iter().filter(|r| r.passes()).count();
    let summary = format!("field: {ok}/{} exact identities hold", records.len());
    Ok(from_records(records, summary))
}

fn verify_lemma2(cfg: &RunConfig) -> Result<Outcome> {
    let a = a_cubic();
    let alpha_a = &CubicElement::alpha() * &a;
    let cases = [
        ("a", a, false),
        ("alpha a", alpha_a, false),
        ("alpha^2", CubicElement::from_ints([0, 0, 1]), true),
        ("-11", CubicElement::from_int(-11), true),
    ];
    let limits = cfg.square_limits();
    let mut records = Vec::new();
    let mut passed = true;
    let mut summary = Vec::new();
    for (name, theta, expected) in cases {
        let cert = is_square_in_k(&theta, &limits)?;
        cert.verify(&theta)?;
        passed &= cert.verdict == expected;
        let detail = match cert.witnesses {
            Some((w, ws)) => format!(
                "not a square (witnesses q = {} and q = {})",
                w.prime, ws.prime
            ),
            None => "a square".to_string(),
        };
        summary.push(format!("lemma2: {name} is {detail}"));
        records.push(Record::lemma2(name, &theta, &cert));
    }
    Ok(Outcome {
        records,
        passed,
        summary,
    })
}

fn verify_expansion(
    x: TribIndex,
    y: TribIndex,
    z: TribIndex,
    t_max: u32,
    cfg: &RunConfig,
) -> Result<Outcome> {
    let precision = Precision {
        start_bits: cfg.precision_bits.max(512),
        max_bits: cfg.max_precision_bits.max(512),
    };
    let mut records = Vec::new();
    for order in 0..=t_max {
        let e = crate::expansion::expansion_error_with(x, y, z, order, &precision)?;
        let ratio_ok = if order >= 2 {
            Some(expansion_ratio_ok(x, y, z, order, &precision)?)
        } else {
            None
        };
        records.push(Record::Expansion {
            x,
            y,
            z,
            order,
            error: format_error(e.to_f64()),
            ratio_ok,
        });
    }
    let lines: Vec<String> = records
        .iter()
        .map(|r| match r {
            Record::Expansion {
                order,
                error,
                ratio_ok,
                ..
            } => format!(
                "expansion ({x}, {y}, {z}) T = {order}: error {error}{}",
                match ratio_ok {
                    Some(true) => ", decay ok",
                    Some(false) => ", DECAY FAILS",
                    None => "",
                }
            ),
            _ => unreachable!(),
        })
        .collect();
    let passed = records.iter().all(Record::passes);
    Ok(Outcome {
        records,
        passed,
        summary: lines,
    })
}

fn triple_records(found: &[crate::search::TripleCandidate]) -> Result<Vec<Record>> {
    found
        .iter()
        .map(|t| {
            Record::triple(
                t.u.as_ref().expect("u"),
                t.v.as_ref().expect("v"),
                t.w.as_ref().expect("w"),
            )
        })
        .collect()
}

fn run_search(z_max: TribIndex, prune: bool) -> Result<Outcome> {
    let found = search(z_max, prune)?;
    let mut records = vec![Record::SearchSummary {
        mode: "search".into(),
        bound: z_max as u64,
        prune,
        count: found.len(),
    }];
    records.extend(triple_records(&found)?);
    let summary = format!(
        "search: {} triples with z <= {z_max}{}",
        found.len(),
        if prune { " (gcd prune on)" } else { "" }
    );
    Ok(Outcome {
        passed: found.is_empty(),
        records,
        summary: vec![summary],
    })
}

fn run_brute(w_max: u64) -> Result<Outcome> {
    let found = brute_force(w_max)?;
    let mut records = vec![Record::SearchSummary {
        mode: "brute".into(),
        bound: w_max,
        prune: false,
        count: found.len(),
    }];
    records.extend(triple_records(&found)?);
    let summary = format!("brute: {} triples with w <= {w_max}", found.len());
    Ok(Outcome {
        passed: found.is_empty(),
        records,
        summary: vec![summary],
    })
}

fn verify_all(quick: bool, cfg: &RunConfig) -> Result<Outcome> {
    let (z_prop1, z_norms, n_growth) = if quick {
        (100, 100, 500)
    } else {
        (500, 120, 2000)
    };
    let mut out = verify_constants()?;
    out.merge(verify_field()?);
    out.merge(verify_lemma2(cfg)?);
    out.merge(verify_growth_cmd(n_growth, cfg)?);
    out.merge(verify_prop1(z_prop1, cfg)?);
    out.merge(verify_norms(z_norms, 64, cfg)?);
    out.merge(run_search(60, false)?);
    out.merge(run_search(60, true)?);
    out.merge(run_brute(2000)?);
    out.merge(verify_expansion(20, 25, 30, 6, cfg)?);
    Ok(out)
}

fn check_records(path: &Path, cfg: &RunConfig) -> Result<Outcome> {
    let records = read_records(path)?;
    let precision = cfg.precision();
    let verdicts: Vec<bool> = records
        .par_iter()
        .map(|r| revalidate(r, &precision))
        .collect::<Result<_>>()?;
    let bad: Vec<usize> = verdicts
        .iter()
        .enumerate()
        .filter(|(_, ok)| !**ok)
        .map(|(i, _)| i + 1)
        .collect();
    let mut summary = vec![format!(
        "check-records: {}/{} records reproduce",
        records.len() - bad.len(),
        records.len()
    )];
    if let Some(first) = bad.first() {
        summary.push(format!("first mismatch on line {first}"));
    }
    Ok(Outcome {
        records: Vec::new(),
        passed: bad.is_empty(),
        summary,
    })
}

fn gen(max_index: TribIndex, out: &mut impl Write) -> std::io::Result<()> {
    with_table(max_index, |table| {
        for (n, t) in table.iter().enumerate().take(max_index + 1) {
            writeln!(out, "{n} {t}")?;
        }
        Ok(())
    })
}

fn member(values: &[String], cfg: &RunConfig, out: &mut impl Write) -> Result<()> {
    let parsed: Vec<BigUint> = values
        .iter()
        .map(|v| {
            BigUint::from_str(v)
                .map_err(|_| Error::Precondition(format!("not a nonnegative integer: {v:?}")))
        })
        .collect::<Result<_>>()?;
    for (raw, v) in values.iter().zip(&parsed) {
        let line = match is_tribonacci_with(v, &cfg.precision())? {
            Some(n) => format!("{raw}: T_{n}"),
            None => format!("{raw}: not a Tribonacci number"),
        };
        writeln!(out, "{line}").map_err(|e| Error::Precondition(e.to_string()))?;
    }
    Ok(())
}

fn dispatch(command: &Command, cfg: &RunConfig) -> Result<Option<Outcome>> {
    let mut stdout = std::io::stdout().lock();
    Ok(Some(match command {
        Command::Gen { max_index } => {
            gen(*max_index, &mut stdout).map_err(|e| Error::Precondition(e.to_string()))?;
            return Ok(None);
        }
        Command::Member { values } => {
            member(values, cfg, &mut stdout)?;
            return Ok(None);
        }
        Command::Search {
            z_max,
            use_gcd_prune,
        } => run_search(*z_max, *use_gcd_prune)?,
        Command::Brute { w_max } => run_brute(*w_max)?,
        Command::CheckRecords { path } => check_records(path, cfg)?,
        Command::Verify(v) => match v {
            Verify::Prop1 { z_max } => verify_prop1(*z_max, cfg)?,
            Verify::Norms { z_max, samples } => verify_norms(*z_max, *samples, cfg)?,
            Verify::Constants => verify_constants()?,
            Verify::Growth { n_max } => verify_growth_cmd(*n_max, cfg)?,
            Verify::Field => verify_field()?,
            Verify::Lemma2 => verify_lemma2(cfg)?,
            Verify::Expansion { x, y, z, t_max } => verify_expansion(*x, *y, *z, *t_max, cfg)?,
            Verify::All { quick } => verify_all(*quick, cfg)?,
        },
    }))
}

/// Runs the command line `argv` (program name first) and returns the exit status.
pub fn run(argv: Vec<String>) -> i32 {
    run_with_env(argv, |k| std::env::var(k).ok())
}

pub fn run_with_env(argv: Vec<String>, env: impl Fn(&str) -> Option<String>) -> i32 {
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let cfg = match load_config(&cli.config, env) {
        Ok(cfg) => cfg,
        Err(msg) => {
            eprintln!("error: {msg}");
            return 2;
        }
    };
    let pool = match rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.jobs)
        .build()
    {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: {e}");
            return 2;
        }
    };
    let outcome = match pool.install(|| dispatch(&cli.command, &cfg)) {
        Ok(Some(o)) => o,
        Ok(None) => return 0,
        Err(e) => {
            eprintln!("error: {e}");
            return e.exit_code();
        }
    };
    for line in &outcome.summary {
        println!("{line}");
    }
    for r in outcome
        .records
        .iter()
        .filter(|r| matches!(r, Record::Triple { ok: true, .. }))
    {
        println!("{}", r.to_json());
    }
    if let Some(path) = &cfg.out {
        if matches!(cli.command, Command::CheckRecords { .. }) {
            eprintln!("note: check-records writes no records");
        } else if let Err(e) = emit_records(path, &outcome.records) {
            eprintln!("error: {}: {e}", path.display());
            return 2;
        }
    }
    if outcome.passed {
        0
    } else {
        1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn flags(args: &[&str]) -> ConfigArgs {
        let mut argv = vec!["triboverify"];
        argv.extend_from_slice(args);
        argv.push("verify");
        argv.push("field");
        Cli::try_parse_from(argv).unwrap().config
    }

    #[test]
    fn config_precedence() {
        let none = |_: &str| None;
        assert_eq!(
            load_config(&flags(&[]), none).unwrap(),
            RunConfig::default()
        );
        assert_eq!(
            load_config(&flags(&["--precision-bits", "64"]), none)
                .unwrap()
                .precision_bits,
            64
        );
        assert!(load_config(&flags(&["--precision-bits", "-1"]), none).is_err());
        assert!(load_config(&flags(&["--precision-bits", "70000"]), none).is_err());
        let env = |k: &str| (k == "TRIBOVERIFY_PRECISION_BITS").then(|| "96".to_string());
        assert_eq!(load_config(&flags(&[]), env).unwrap().precision_bits, 96);
        assert_eq!(
            load_config(&flags(&["--precision-bits", "128"]), env)
                .unwrap()
                .precision_bits,
            128
        );
        let bad_env = |k: &str| (k == "TRIBOVERIFY_JOBS").then(|| "zero".to_string());
        assert!(load_config(&flags(&[]), bad_env).is_err());
    }

    #[test]
    fn usage_errors_exit_two() {
        let argv = |s: &str| s.split_whitespace().map(String::from).collect::<Vec<_>>();
        assert_eq!(
            run_with_env(argv("triboverify verify prop1 --z-max 0"), |_| None),
            2
        );
        assert_eq!(
            run_with_env(argv("triboverify --precision-bits -1 verify field"), |_| {
                None
            }),
            2
        );
    }
}
