//! Command implementations behind the `halfsum` binary.

use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use halfsum_core::arith::{legendre_euler, legendre_reciprocity, OddPrime};
use halfsum_core::charsum::{half_sum, half_sum_direct, half_sum_sieve, HalfSumRecord};
use halfsum_core::classnum::{
    class_number_character_sum, default_l_tolerance, identity_check, l_value_estimate_with_tolerance,
    reduced_forms_count,
};
use halfsum_core::construction::{construct, Verdict};
use halfsum_core::floorlemma::{floor_half_series, ExactNonNegRational};
use halfsum_core::primes::{PrimeStream, ResidueFilter};
use halfsum_core::sweep::{verify_range, SweepOptions};

pub mod report;

use report::{versioned, ConstructionJson, HalfSumJson, IdentityJson, LValueJson, LemmaJson, RangeJson};

#[derive(Debug, Parser)]
#[command(name = "halfsum", version, about = "Legendre half-sums over primes p = 3 mod 4")]
pub struct Cli {
    /// Write output to FILE instead of stdout.
    #[arg(long, global = true, value_name = "FILE")]
    pub out: Option<std::path::PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Legendre symbol (a/p), computed two ways.
    Symbol {
        #[arg(allow_hyphen_values = true)]
        a: i64,
        p: u64,
    },
    /// Residues minus non-residues in [1, (p-1)/2] for an odd prime p.
    Asum {
        p: u64,
        #[arg(long, value_enum)]
        method: Option<AsumMethod>,
        #[arg(long)]
        json: bool,
    },
    /// Audit the pairing construction for one prime.
    Construct {
        p: u64,
        #[arg(long)]
        json: bool,
    },
    /// Check A(p) > 0 and audit the construction over a range.
    Verify {
        #[arg(long)]
        from: u64,
        #[arg(long)]
        to: u64,
        /// Worker threads (0 = one per core).
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        /// Treat unexpected duplicate residues as violations.
        #[arg(long)]
        strict: bool,
        /// Only audit the construction for p <= BOUND.
        #[arg(long, value_name = "BOUND")]
        fast: Option<u64>,
        /// Include wall-clock time in JSON output.
        #[arg(long)]
        timing: bool,
    },
    /// Class number h(-p) by reduced forms and by character sum.
    Classnum {
        p: u64,
        #[arg(long, value_enum, default_value_t = ClassMethod::Both)]
        method: ClassMethod,
        #[arg(long)]
        json: bool,
    },
    /// Check A(p) = (2 - (2/p)) h(-p) over a range.
    Identity {
        #[arg(long)]
        from: u64,
        #[arg(long)]
        to: u64,
        #[arg(long)]
        json: bool,
    },
    /// Check the floor-series lemma on integers and random rationals.
    Lemma {
        #[arg(long, value_name = "N")]
        check_up_to: u64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
    /// Partial-sum estimate of L(1, chi) against pi h / sqrt(p).
    Lvalue {
        p: u64,
        /// Number of series terms (default 100p).
        #[arg(long)]
        terms: Option<u64>,
        /// Allowed |partial - exact| (default 5 / sqrt(terms)).
        #[arg(long)]
        tolerance: Option<f64>,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum AsumMethod {
    Direct,
    Sieve,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ClassMethod {
    Forms,
    Charsum,
    Both,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] halfsum_core::Error),
    #[error("{0}")]
    Usage(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

impl CliError {
    /// 2 for bad input, 1 for failed internal checks.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(halfsum_core::Error::InternalConsistency(_))
            | CliError::Core(halfsum_core::Error::IdentityMismatch { .. }) => 1,
            _ => 2,
        }
    }
}

/// Whether the checked property held; maps to exit 0 or 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Holds,
    Fails,
}

impl Status {
    fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Holds
        } else {
            Status::Fails
        }
    }

    pub fn exit_code(self) -> u8 {
        match self {
            Status::Holds => 0,
            Status::Fails => 1,
        }
    }
}

type CmdResult = Result<Status, CliError>;

fn odd_prime(p: u64) -> Result<OddPrime, CliError> {
    Ok(OddPrime::new(p)?)
}

fn prime_3_mod_4(p: u64) -> Result<OddPrime, CliError> {
    let p = odd_prime(p)?;
    if !p.is_3_mod_4() {
        return Err(CliError::Usage(format!(
            "{p} = 1 mod 4; this command needs p = 3 mod 4"
        )));
    }
    Ok(p)
}

fn range(from: u64, to: u64) -> Result<(), CliError> {
    if from > to {
        return Err(CliError::Usage(format!("empty range: --from {from} > --to {to}")));
    }
    Ok(())
}

fn write_json<T: Serialize>(out: &mut dyn Write, body: T) -> Result<(), CliError> {
    serde_json::to_writer_pretty(&mut *out, &versioned(body))?;
    writeln!(out)?;
    Ok(())
}

/// Runs one parsed command, writing its output to `out`.
pub fn run(command: &Command, out: &mut dyn Write) -> CmdResult {
    match *command {
        Command::Symbol { a, p } => symbol(a, p, out),
        Command::Asum { p, method, json } => asum(p, method, json, out),
        Command::Construct { p, json } => construct_cmd(p, json, out),
        Command::Verify {
            from,
            to,
            jobs,
            format,
            strict,
            fast,
            timing,
        } => verify(
            from,
            to,
            SweepOptions {
                jobs,
                strict,
                audit_limit: fast,
            },
            format,
            timing,
            out,
        ),
        Command::Classnum { p, method, json } => classnum(p, method, json, out),
        Command::Identity { from, to, json } => identity(from, to, json, out),
        Command::Lemma {
            check_up_to,
            seed,
            json,
        } => lemma(check_up_to, seed, json, out),
        Command::Lvalue {
            p,
            terms,
            tolerance,
            json,
        } => lvalue(p, terms, tolerance, json, out),
    }
}

fn symbol(a: i64, p: u64, out: &mut dyn Write) -> CmdResult {
    let p = odd_prime(p)?;
    let by_reciprocity = legendre_reciprocity(a, p);
    let by_euler = legendre_euler(a, p);
    if by_reciprocity != by_euler {
        writeln!(out, "disagreement: reciprocity {by_reciprocity}, Euler {by_euler}")?;
        return Ok(Status::Fails);
    }
    writeln!(out, "{by_reciprocity}")?;
    Ok(Status::Holds)
}

fn asum(p: u64, method: Option<AsumMethod>, json: bool, out: &mut dyn Write) -> CmdResult {
    let p = odd_prime(p)?;
    let rec: HalfSumRecord = match method {
        Some(AsumMethod::Direct) => half_sum_direct(p),
        Some(AsumMethod::Sieve) => half_sum_sieve(p)?,
        None => half_sum(p)?,
    };
    if json {
        write_json(out, HalfSumJson::from(&rec))?;
    } else {
        writeln!(out, "A({}) = {}", p, rec.a_value)?;
    }
    // positive for p = 3 mod 4, zero for p = 1 mod 4
    let expected = if p.is_3_mod_4() {
        rec.a_value > 0
    } else {
        rec.a_value == 0
    };
    Ok(Status::from_bool(expected))
}

fn construct_cmd(p: u64, json: bool, out: &mut dyn Write) -> CmdResult {
    let p = prime_3_mod_4(p)?;
    let r = construct(p)?;
    if json {
        write_json(out, ConstructionJson::from(&r))?;
    } else {
        writeln!(out, "p = {}  case = {}", p, r.case)?;
        for f in &r.families {
            writeln!(
                out,
                "  {:<14} bound {:>6}  contributed {:>6}",
                f.id.to_string(),
                f.lower_bound,
                f.distinct_contribution
            )?;
        }
        if let Some(claimed) = r.claimed_total {
            writeln!(out, "claimed total   {claimed}")?;
        }
        writeln!(out, "distinct total  {}", r.distinct_qr_total)?;
        writeln!(out, "threshold       {}", r.required_threshold)?;
        if !r.pair_failures.is_empty() {
            writeln!(out, "pairs with no residue in range: {}", r.pair_failures.len())?;
        }
        for c in r.claims.iter().filter(|c| !c.holds) {
            writeln!(out, "failed {:?}: {}", c.claim, c.detail)?;
        }
        writeln!(out, "verdict: {}", r.verdict)?;
    }
    Ok(Status::from_bool(r.verdict == Verdict::Verified))
}

fn verify(from: u64, to: u64, opts: SweepOptions, format: Format, timing: bool, out: &mut dyn Write) -> CmdResult {
    range(from, to)?;
    let summary = verify_range(from, to, opts)?;
    match format {
        Format::Json => write_json(out, RangeJson::new(&summary, timing))?,
        Format::Csv => report::write_csv(&summary.rows, &mut *out)?,
    }
    Ok(Status::from_bool(summary.passed()))
}

fn classnum(p: u64, method: ClassMethod, json: bool, out: &mut dyn Write) -> CmdResult {
    let p = prime_3_mod_4(p)?;
    let status = match method {
        ClassMethod::Forms | ClassMethod::Charsum => {
            let h = if method == ClassMethod::Forms {
                reduced_forms_count(p)?
            } else {
                class_number_character_sum(p)?
            };
            if json {
                #[derive(Serialize)]
                struct Single {
                    p: u64,
                    method: &'static str,
                    h: u64,
                }
                let name = if method == ClassMethod::Forms {
                    "forms"
                } else {
                    "charsum"
                };
                write_json(
                    out,
                    Single {
                        p: p.value(),
                        method: name,
                        h,
                    },
                )?;
            } else {
                writeln!(out, "h(-{p}) = {h}")?;
            }
            Status::Holds
        }
        ClassMethod::Both => {
            let h_forms = reduced_forms_count(p)?;
            let h_charsum = class_number_character_sum(p)?;
            let agree = h_forms == h_charsum;
            if json {
                #[derive(Serialize)]
                struct Both {
                    p: u64,
                    h_forms: u64,
                    h_charsum: u64,
                    agree: bool,
                }
                write_json(
                    out,
                    Both {
                        p: p.value(),
                        h_forms,
                        h_charsum,
                        agree,
                    },
                )?;
            } else if agree {
                writeln!(out, "h(-{p}) = {h_forms}")?;
            } else {
                writeln!(out, "h(-{p}): forms give {h_forms}, character sum gives {h_charsum}")?;
            }
            Status::from_bool(agree)
        }
    };
    Ok(status)
}

fn identity(from: u64, to: u64, json: bool, out: &mut dyn Write) -> CmdResult {
    range(from, to)?;
    let mut records = Vec::new();
    let mut mismatches = Vec::new();
    // p = 3 has extra units and is outside the identity
    for q in PrimeStream::new(from.max(5), to, Some(ResidueFilter::new(3, 4))) {
        match identity_check(OddPrime::new(q)?) {
            Ok(r) => records.push(r),
            Err(e @ halfsum_core::Error::IdentityMismatch { .. }) => mismatches.push(e.to_string()),
            Err(e) => return Err(e.into()),
        }
    }
    let checked = (records.len() + mismatches.len()) as u64;
    let status = Status::from_bool(mismatches.is_empty());
    if json {
        write_json(
            out,
            IdentityJson {
                from,
                to,
                checked,
                records,
                mismatches,
            },
        )?;
    } else {
        for m in &mismatches {
            writeln!(out, "{m}")?;
        }
        writeln!(out, "{checked} primes checked, {} mismatches", mismatches.len())?;
    }
    Ok(status)
}

/// Numerators and denominators of the random rationals are drawn from `1..=RATIONAL_RANGE`.
const RATIONAL_RANGE: u64 = 1_000_000_000;

fn lemma(n: u64, seed: u64, json: bool, out: &mut dyn Write) -> CmdResult {
    let mut failures = Vec::new();
    for i in 0..=n {
        let x = ExactNonNegRational::integer(i);
        if floor_half_series(x) != i {
            failures.push(x.to_string());
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..n {
        let x = ExactNonNegRational::new(rng.gen_range(0..=RATIONAL_RANGE), rng.gen_range(1..=RATIONAL_RANGE))?;
        if floor_half_series(x) != x.floor() {
            failures.push(x.to_string());
        }
    }
    let status = Status::from_bool(failures.is_empty());
    if json {
        write_json(
            out,
            LemmaJson {
                integers_checked: n + 1,
                rationals_checked: n,
                seed,
                failures,
            },
        )?;
    } else {
        for f in &failures {
            writeln!(out, "fails at x = {f}")?;
        }
        writeln!(
            out,
            "{} integers and {n} rationals checked, {} failures",
            n + 1,
            failures.len()
        )?;
    }
    Ok(status)
}

fn lvalue(p: u64, terms: Option<u64>, tolerance: Option<f64>, json: bool, out: &mut dyn Write) -> CmdResult {
    let p = prime_3_mod_4(p)?;
    let terms = terms.unwrap_or_else(|| p.value().saturating_mul(100));
    let tolerance = tolerance.unwrap_or_else(|| default_l_tolerance(terms));
    if !(tolerance.is_finite() && tolerance > 0.0) {
        return Err(CliError::Usage(format!("tolerance must be positive, got {tolerance}")));
    }
    let r = l_value_estimate_with_tolerance(p, terms, tolerance)?;
    let wiring_ok = r.wiring_error < 1e-9;
    if json {
        write_json(out, LValueJson { record: r })?;
    } else {
        writeln!(out, "L(1) exact   {:.12}  (pi h / sqrt p, h = {})", r.l_exact, r.h)?;
        writeln!(out, "L(1) partial {:.12}  ({} terms)", r.l_partial, r.terms)?;
        writeln!(
            out,
            "|difference| {:.3e}  tolerance {:.3e}  wiring error {:.1e}",
            (r.l_partial - r.l_exact).abs(),
            r.tolerance,
            r.wiring_error
        )?;
    }
    Ok(Status::from_bool(r.within_tolerance && wiring_ok))
}
