//! Range verification over all primes `p = 3 (mod 4)` in `[lo, hi]`.
//!
//! The range is cut into contiguous chunks; each worker runs its own
//! [`PrimeStream`] over a chunk and the per-prime outcomes are merged in
//! order of `p`, so the result does not depend on the worker count.

use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::arith::OddPrime;
use crate::charsum::{half_sum_direct, half_sum_sieve};
use crate::construction::{construct, Case, ConstructionReport, DedupEntry, Verdict, SMALL_REGIME_MAX};
use crate::error::{Error, Result};
use crate::primes::{PrimeStream, ResidueFilter};

/// Ledger entries kept per prime in [`RangeSummary::dedup_anomalies`].
pub const LEDGER_EXCERPT: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SweepOptions {
    /// Worker threads; 0 means one per core.
    pub jobs: usize,
    /// Count `DedupAnomaly` verdicts as violations.
    pub strict: bool,
    /// Skip construction audits for `p` above this bound (the `A(p) > 0` check always runs).
    pub audit_limit: Option<u64>,
}

/// One line of the per-prime table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PrimeRow {
    pub p: u64,
    pub case: Case,
    #[serde(rename = "A")]
    pub a_value: i64,
    pub claimed: Option<u64>,
    pub distinct: Option<u64>,
    /// `None` when the construction audit was skipped.
    pub verdict: Option<Verdict>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub p: u64,
    pub verdict: Verdict,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DedupAnomaly {
    pub p: u64,
    pub unexpected: usize,
    pub ledger_excerpt: Vec<DedupEntry>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RangeSummary {
    pub lo: u64,
    pub hi: u64,
    pub primes_checked: u64,
    pub case1_count: u64,
    pub case2_count: u64,
    pub small_count: u64,
    pub audited: u64,
    /// Primes with `A(p) <= 0`.
    pub theorem_failures: u64,
    pub violations: Vec<Violation>,
    pub dedup_anomalies: Vec<DedupAnomaly>,
    #[serde(skip)]
    pub rows: Vec<PrimeRow>,
    pub wall_time_seconds: f64,
}

impl RangeSummary {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

struct Outcome {
    row: PrimeRow,
    theorem_ok: bool,
    violation: Option<Violation>,
    anomaly: Option<DedupAnomaly>,
}

fn failing_claims(report: &ConstructionReport) -> String {
    let broken: Vec<String> = report
        .claims
        .iter()
        .filter(|c| !c.holds)
        .map(|c| format!("{}: {}", claim_name(c.claim), c.detail))
        .collect();
    broken.join("; ")
}

fn claim_name(claim: crate::construction::Claim) -> String {
    format!("{claim:?}")
}

fn check_prime(p: OddPrime, opts: &SweepOptions) -> Result<Outcome> {
    let half = match half_sum_sieve(p) {
        Ok(r) => r,
        Err(Error::Resource(_)) => half_sum_direct(p),
        Err(e) => return Err(e),
    };
    let theorem_ok = half.a_value > 0;
    let case = crate::construction::classify_case(p)?;

    let audit = p.value() <= SMALL_REGIME_MAX || opts.audit_limit.is_none_or(|lim| p.value() <= lim);
    let report = if audit { Some(construct(p)?) } else { None };

    let mut violation = None;
    if !theorem_ok {
        violation = Some(Violation {
            p: p.value(),
            verdict: Verdict::BoundViolation,
            detail: format!("A({p}) = {} is not positive", half.a_value),
        });
    }
    let mut anomaly = None;
    if let Some(r) = &report {
        let unexpected: Vec<DedupEntry> = r.unexpected_duplicates().cloned().collect();
        if !unexpected.is_empty() {
            anomaly = Some(DedupAnomaly {
                p: p.value(),
                unexpected: unexpected.len(),
                ledger_excerpt: unexpected.into_iter().take(LEDGER_EXCERPT).collect(),
            });
        }
        let counts = match r.verdict {
            Verdict::Verified => false,
            Verdict::BoundViolation => true,
            Verdict::DedupAnomaly => opts.strict,
        };
        if counts && violation.is_none() {
            violation = Some(Violation {
                p: p.value(),
                verdict: r.verdict,
                detail: failing_claims(r),
            });
        }
    }

    Ok(Outcome {
        row: PrimeRow {
            p: p.value(),
            case,
            a_value: half.a_value,
            claimed: report.as_ref().and_then(|r| r.claimed_total),
            distinct: report.as_ref().map(|r| r.distinct_qr_total),
            verdict: report.as_ref().map(|r| r.verdict),
        },
        theorem_ok,
        violation,
        anomaly,
    })
}

fn check_chunk(lo: u64, hi: u64, opts: &SweepOptions) -> Result<Vec<Outcome>> {
    PrimeStream::new(lo, hi, Some(ResidueFilter::new(3, 4)))
        .map(|n| check_prime(OddPrime::new(n)?, opts))
        .collect()
}

fn chunks(lo: u64, hi: u64, jobs: usize) -> Vec<(u64, u64)> {
    let span = hi - lo + 1;
    let width = (span / (jobs as u64 * 8)).clamp(1 << 12, 1 << 22);
    let mut out = Vec::new();
    let mut start = lo;
    loop {
        let end = start.saturating_add(width - 1).min(hi);
        out.push((start, end));
        if end == hi {
            break;
        }
        start = end + 1;
    }
    out
}

/// Checks `A(p) > 0` for every prime `p = 3 (mod 4)` in `[lo, hi]` and audits the construction.
pub fn verify_range(lo: u64, hi: u64, opts: SweepOptions) -> Result<RangeSummary> {
    if lo > hi {
        return Err(Error::domain(format!("empty range: from {lo} > to {hi}")));
    }
    let started = Instant::now();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.jobs)
        .build()
        .map_err(|e| Error::Resource(format!("cannot start worker pool: {e}")))?;
    let jobs = pool.current_num_threads();

    let per_chunk: Vec<Vec<Outcome>> = pool.install(|| {
        chunks(lo, hi, jobs)
            .into_par_iter()
            .map(|(a, b)| check_chunk(a, b, &opts))
            .collect::<Result<_>>()
    })?;
    let mut outcomes: Vec<Outcome> = per_chunk.into_iter().flatten().collect();
    outcomes.sort_by_key(|o| o.row.p);

    let mut summary = RangeSummary {
        lo,
        hi,
        primes_checked: 0,
        case1_count: 0,
        case2_count: 0,
        small_count: 0,
        audited: 0,
        theorem_failures: 0,
        violations: Vec::new(),
        dedup_anomalies: Vec::new(),
        rows: Vec::with_capacity(outcomes.len()),
        wall_time_seconds: 0.0,
    };
    for o in outcomes {
        summary.primes_checked += 1;
        match o.row.case {
            Case::Case1 => summary.case1_count += 1,
            Case::Case2 => summary.case2_count += 1,
            Case::SmallRegime => summary.small_count += 1,
        }
        summary.audited += o.row.verdict.is_some() as u64;
        summary.theorem_failures += !o.theorem_ok as u64;
        summary.violations.extend(o.violation);
        summary.dedup_anomalies.extend(o.anomaly);
        summary.rows.push(o.row);
    }
    summary.wall_time_seconds = started.elapsed().as_secs_f64();
    Ok(summary)
}
