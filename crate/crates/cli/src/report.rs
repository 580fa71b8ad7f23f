//! Versioned JSON and CSV shapes for everything the CLI prints.

use serde::Serialize;

use halfsum_core::charsum::HalfSumRecord;
use halfsum_core::classnum::{ClassNumberRecord, LFunctionRecord};
use halfsum_core::construction::{ClaimCheck, ConstructionReport, DedupEntry, PairFailure, PairWitness};
use halfsum_core::sweep::{DedupAnomaly, PrimeRow, RangeSummary, Violation};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Serialize)]
pub struct Versioned<T: Serialize> {
    pub schema: u32,
    #[serde(flatten)]
    pub body: T,
}

pub fn versioned<T: Serialize>(body: T) -> Versioned<T> {
    Versioned {
        schema: SCHEMA_VERSION,
        body,
    }
}

#[derive(Serialize)]
pub struct FamilyJson<'a> {
    pub id: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub j: Option<u32>,
    pub bound: u64,
    pub contributed: u64,
    pub witnesses: &'a [PairWitness],
}

#[derive(Serialize)]
pub struct ConstructionJson<'a> {
    pub p: u64,
    pub case: String,
    pub claimed_total: Option<u64>,
    pub threshold: u64,
    pub distinct_total: u64,
    pub threshold_met: bool,
    pub families: Vec<FamilyJson<'a>>,
    pub dedup: &'a [DedupEntry],
    pub pair_failures: &'a [PairFailure],
    pub claims: &'a [ClaimCheck],
    #[serde(skip_serializing_if = "Option::is_none")]
    pub direct_sum: Option<i64>,
    pub verdict: String,
}

impl<'a> From<&'a ConstructionReport> for ConstructionJson<'a> {
    fn from(r: &'a ConstructionReport) -> Self {
        ConstructionJson {
            p: r.p.value(),
            case: r.case.to_string(),
            claimed_total: r.claimed_total,
            threshold: r.required_threshold,
            distinct_total: r.distinct_qr_total,
            threshold_met: r.threshold_met(),
            families: r
                .families
                .iter()
                .map(|f| FamilyJson {
                    id: f.id.code(),
                    j: f.id.j(),
                    bound: f.lower_bound,
                    contributed: f.distinct_contribution,
                    witnesses: &f.witnesses,
                })
                .collect(),
            dedup: &r.dedup_ledger,
            pair_failures: &r.pair_failures,
            claims: &r.claims,
            direct_sum: r.direct_sum,
            verdict: r.verdict.to_string(),
        }
    }
}

#[derive(Serialize)]
pub struct HalfSumJson {
    pub p: u64,
    #[serde(rename = "A")]
    pub a_value: i64,
    pub qr_count: u64,
    pub nqr_count: u64,
    pub method: halfsum_core::charsum::SumMethod,
}

impl From<&HalfSumRecord> for HalfSumJson {
    fn from(r: &HalfSumRecord) -> Self {
        HalfSumJson {
            p: r.p.value(),
            a_value: r.a_value,
            qr_count: r.qr_count,
            nqr_count: r.nqr_count,
            method: r.method,
        }
    }
}

#[derive(Serialize)]
pub struct IdentityJson {
    pub from: u64,
    pub to: u64,
    pub checked: u64,
    pub records: Vec<ClassNumberRecord>,
    pub mismatches: Vec<String>,
}

#[derive(Serialize)]
pub struct LValueJson {
    #[serde(flatten)]
    pub record: LFunctionRecord,
}

#[derive(Serialize)]
pub struct LemmaJson {
    pub integers_checked: u64,
    pub rationals_checked: u64,
    pub seed: u64,
    pub failures: Vec<String>,
}

#[derive(Serialize)]
pub struct RangeJson<'a> {
    pub lo: u64,
    pub hi: u64,
    pub primes_checked: u64,
    pub case1_count: u64,
    pub case2_count: u64,
    pub small_count: u64,
    pub audited: u64,
    pub theorem_failures: u64,
    pub violations: &'a [Violation],
    pub dedup_anomalies: &'a [DedupAnomaly],
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_time_seconds: Option<f64>,
}

impl<'a> RangeJson<'a> {
    pub fn new(s: &'a RangeSummary, timing: bool) -> Self {
        RangeJson {
            lo: s.lo,
            hi: s.hi,
            primes_checked: s.primes_checked,
            case1_count: s.case1_count,
            case2_count: s.case2_count,
            small_count: s.small_count,
            audited: s.audited,
            theorem_failures: s.theorem_failures,
            violations: &s.violations,
            dedup_anomalies: &s.dedup_anomalies,
            wall_time_seconds: timing.then_some(s.wall_time_seconds),
        }
    }
}

/// `p,case,A,claimed,distinct,verdict`, one row per prime.
pub fn write_csv<W: std::io::Write>(rows: &[PrimeRow], out: W) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["p", "case", "A", "claimed", "distinct", "verdict"])?;
    for r in rows {
        w.write_record([
            r.p.to_string(),
            r.case.to_string(),
            r.a_value.to_string(),
            r.claimed.map(|c| c.to_string()).unwrap_or_default(),
            r.distinct.map(|d| d.to_string()).unwrap_or_default(),
            r.verdict
                .map(|v| v.to_string())
                .unwrap_or_else(|| "Skipped".to_string()),
        ])?;
    }
    w.flush()?;
    Ok(())
}
