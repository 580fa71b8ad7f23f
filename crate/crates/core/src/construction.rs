//! Replays the pair-based residue construction for `p = 3 (mod 4)` and audits it.
//!
//! For `p = 8k + 3` (where `(2/p) = -1`) and `p = 8k + 7` (where `(2/p) = +1`)
//! the construction walks a fixed list of residue families inside the half
//! interval `A = [1, (p-1)/2]`. Each family member comes with a partner, and
//! exactly one of the two should be a quadratic residue lying in `A`. Counting
//! one residue per pair, plus a few singleton residues, is meant to reach
//! `(p+1)/4` distinct residues in `A`, which forces `A(p) > 0`.
//!
//! Nothing here takes a family claim on trust. Every witness is chosen by
//! evaluating Legendre symbols, duplicates across and within families are
//! recorded in a ledger, and each counting claim (per-family floor bounds,
//! their totals, the lone overlap at 4, the distinctness of the singletons)
//! is checked separately so a failing report says which step broke.
//!
//! Primes `p <= 31` are checked directly, one at a time.

use std::collections::BTreeMap;
use std::fmt;

use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::arith::{legendre_reciprocity_u64, OddPrime};
use crate::charsum::half_sum_direct;
use crate::error::{Error, Result};
use crate::floorlemma::{floor_half_series, series_term, ExactNonNegRational};

/// Primes up to this bound are verified directly instead of by construction.
pub const SMALL_REGIME_MAX: u64 = 31;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Case {
    /// `p = 8k + 3`, `p > 31`.
    Case1,
    /// `p = 8k + 7`, `p > 31`.
    Case2,
    /// `p = 3 (mod 4)`, `p <= 31`.
    SmallRegime,
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Case::Case1 => "Case1",
            Case::Case2 => "Case2",
            Case::SmallRegime => "SmallRegime",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FamilyId {
    /// `6h + 2` paired with `3h + 1`.
    C1F1,
    /// `6(2h+1) + 4` paired with `3(2h+1) + 2`.
    C1F2,
    /// `12h + 4` paired with `2(12h+4)` or `p - 4(12h+4)`.
    C1F3,
    /// `2^j 3 (2h+1)` paired with `2^(j-1) 3 (2h+1)`.
    C1F4 { j: u32 },
    /// `(p-1)/2 = 4k+1` and `(p-9)/2 = 4k-3`.
    C1Specials,
    /// `8h + 3` paired with `(p - a)/2 = 4(k-h) + 2`.
    C2F3Mod8,
    /// `8h + 7` paired with `4(k-h)`.
    C2F7Mod8,
    /// `8h + 1` paired with `4(k-h) + 3`.
    C2F1Mod8,
    /// `8h + 5` paired with `4(k-h) + 1`.
    C2F5Mod8,
    /// The residue 2.
    C2Two,
}

impl FamilyId {
    pub fn code(self) -> &'static str {
        match self {
            FamilyId::C1F1 => "C1_F1",
            FamilyId::C1F2 => "C1_F2",
            FamilyId::C1F3 => "C1_F3",
            FamilyId::C1F4 { .. } => "C1_F4",
            FamilyId::C1Specials => "C1_SPECIALS",
            FamilyId::C2F3Mod8 => "C2_F3MOD8",
            FamilyId::C2F7Mod8 => "C2_F7MOD8",
            FamilyId::C2F1Mod8 => "C2_F1MOD8",
            FamilyId::C2F5Mod8 => "C2_F5MOD8",
            FamilyId::C2Two => "C2_TWO",
        }
    }

    pub fn j(self) -> Option<u32> {
        match self {
            FamilyId::C1F4 { j } => Some(j),
            _ => None,
        }
    }
}

impl fmt::Display for FamilyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.j() {
            Some(j) => write!(f, "{}[j={j}]", self.code()),
            None => f.write_str(self.code()),
        }
    }
}

impl Serialize for FamilyId {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// One pair (or singleton) and the residue it contributes.
///
/// Serializes as `[candidate, partner, chosen]`, with `partner = null` for singletons.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PairWitness {
    pub candidate: u64,
    pub partner: Option<u64>,
    pub chosen_qr: u64,
}

impl Serialize for PairWitness {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(3))?;
        seq.serialize_element(&self.candidate)?;
        seq.serialize_element(&self.partner)?;
        seq.serialize_element(&self.chosen_qr)?;
        seq.end()
    }
}

/// A pair for which the construction does not deliver a residue in `A`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairFailure {
    pub family: FamilyId,
    pub candidate: u64,
    /// Partner alternatives, reduced modulo `p`.
    pub partners: Vec<u64>,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FamilyReport {
    pub id: FamilyId,
    pub witnesses: Vec<PairWitness>,
    /// The closed-form floor expression the construction claims for this family.
    pub lower_bound: u64,
    /// Chosen residues not already produced by an earlier witness.
    pub distinct_contribution: u64,
}

/// A residue chosen by more than one witness.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DedupEntry {
    pub element: u64,
    /// Producing families, once per witness, in construction order.
    pub families: Vec<FamilyId>,
    /// The overlap at 4 between `C1_F1` and `C1_F3` is the one the construction subtracts.
    pub expected: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Claim {
    /// Every pair has exactly one residue and it lies in `A`.
    PairsSound,
    /// `min{2(12h+4), p - 4(12h+4)}` lies in `A` for every `h` of `C1_F3`.
    F3PartnerInRange,
    /// The only value repeated among `C1_F1`, `C1_F2`, `C1_F3` is 4.
    OnlyOverlapIsFour,
    /// `4k+1` and `4k-3` are not produced by any other family.
    SpecialsDistinct,
    /// No residue is produced twice in case 2.
    NoRepeats,
    /// The `B_j` bounds sum to `[(4k+1)/6]`, evaluated through the floor-series lemma.
    LemmaCount,
    /// Every family's distinct contribution reaches its floor bound.
    FamilyBounds,
    /// The family bounds add up to the claimed total.
    BoundsTotal,
    /// The distinct residues reach `(p+1)/4`.
    Threshold,
    /// `A(p) > 0` by direct summation (small regime only).
    DirectSum,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClaimCheck {
    pub claim: Claim,
    pub holds: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Verdict {
    Verified,
    BoundViolation,
    DedupAnomaly,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Verified => "Verified",
            Verdict::BoundViolation => "BoundViolation",
            Verdict::DedupAnomaly => "DedupAnomaly",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConstructionReport {
    pub p: OddPrime,
    pub case: Case,
    pub families: Vec<FamilyReport>,
    pub distinct_qr_total: u64,
    /// `(p+1)/4`, the residue count in `A` that forces `A(p) > 0`.
    pub required_threshold: u64,
    /// `2k+1` in case 1, `2k+3` in case 2, absent in the small regime.
    pub claimed_total: Option<u64>,
    pub dedup_ledger: Vec<DedupEntry>,
    pub pair_failures: Vec<PairFailure>,
    pub claims: Vec<ClaimCheck>,
    /// `A(p)`, filled in by the small regime.
    pub direct_sum: Option<i64>,
    pub verdict: Verdict,
}

impl ConstructionReport {
    pub fn threshold_met(&self) -> bool {
        self.distinct_qr_total >= self.required_threshold
    }

    pub fn claim(&self, claim: Claim) -> Option<&ClaimCheck> {
        self.claims.iter().find(|c| c.claim == claim)
    }

    pub fn unexpected_duplicates(&self) -> impl Iterator<Item = &DedupEntry> {
        self.dedup_ledger.iter().filter(|e| !e.expected)
    }

    pub fn witnesses(&self) -> impl Iterator<Item = (FamilyId, &PairWitness)> {
        self.families
            .iter()
            .flat_map(|f| f.witnesses.iter().map(move |w| (f.id, w)))
    }
}

/// Closed-form family bounds. Entries may be negative for tiny `k`; the total
/// identity holds for every `k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Bounds(pub [i64; 5]);

impl Bounds {
    pub fn total(&self) -> i64 {
        self.0.iter().sum()
    }
}

#[inline]
fn floor_div(a: i64, b: i64) -> i64 {
    a.div_euclid(b)
}

/// `([(4k+5)/6], [(4k+3)/12], [(4k-3)/12], [(4k+1)/6], 2)`, summing to `2k+1`.
pub fn case1_bounds(k: u64) -> Bounds {
    let k = k as i64;
    Bounds([
        floor_div(4 * k + 5, 6),
        floor_div(4 * k + 3, 12),
        floor_div(4 * k - 3, 12),
        floor_div(4 * k + 1, 6),
        2,
    ])
}

/// `([(k+2)/2], [(k+1)/2], [(2k+5)/4], [(2k+3)/4], 1)`, summing to `2k+3`.
pub fn case2_bounds(k: u64) -> Bounds {
    let k = k as i64;
    Bounds([
        floor_div(k + 2, 2),
        floor_div(k + 1, 2),
        floor_div(2 * k + 5, 4),
        floor_div(2 * k + 3, 4),
        1,
    ])
}

pub fn classify_case(p: OddPrime) -> Result<Case> {
    if !p.is_3_mod_4() {
        return Err(Error::domain("construction applies only to p = 3 mod 4"));
    }
    Ok(if p.value() <= SMALL_REGIME_MAX {
        Case::SmallRegime
    } else if p.residue_mod_8() == 3 {
        Case::Case1
    } else {
        Case::Case2
    })
}

/// Runs whichever of the three procedures applies to `p`.
pub fn construct(p: OddPrime) -> Result<ConstructionReport> {
    match classify_case(p)? {
        Case::Case1 => construct_case1(p),
        Case::Case2 => construct_case2(p),
        Case::SmallRegime => verify_small_regime(p),
    }
}

/// One family member and the values its residue status is tied to.
struct Member {
    candidate: u64,
    /// Empty for singletons. Several entries are alternatives with the same symbol.
    partners: Vec<i128>,
}

impl Member {
    fn pair(candidate: u64, partner: i128) -> Self {
        Member {
            candidate,
            partners: vec![partner],
        }
    }

    fn single(candidate: u64) -> Self {
        Member {
            candidate,
            partners: Vec::new(),
        }
    }
}

struct Engine {
    p: OddPrime,
    top: u64,
    families: Vec<FamilyReport>,
    produced: BTreeMap<u64, Vec<FamilyId>>,
    failures: Vec<PairFailure>,
    partner_out_of_range: Vec<u64>,
}

impl Engine {
    fn new(p: OddPrime) -> Self {
        Engine {
            p,
            top: p.half(),
            families: Vec::new(),
            produced: BTreeMap::new(),
            failures: Vec::new(),
            partner_out_of_range: Vec::new(),
        }
    }

    fn in_a(&self, v: u64) -> bool {
        (1..=self.top).contains(&v)
    }

    fn is_qr(&self, v: u64) -> bool {
        legendre_reciprocity_u64(v, self.p).is_residue()
    }

    fn family(&mut self, id: FamilyId, bound: u64, members: impl IntoIterator<Item = Member>) {
        let mut witnesses = Vec::new();
        let mut distinct = 0;
        for m in members {
            let Some(w) = self.witness(id, m) else { continue };
            let producers = self.produced.entry(w.chosen_qr).or_default();
            if producers.is_empty() {
                distinct += 1;
            }
            producers.push(id);
            witnesses.push(w);
        }
        self.families.push(FamilyReport {
            id,
            witnesses,
            lower_bound: bound,
            distinct_contribution: distinct,
        });
    }

    fn witness(&mut self, id: FamilyId, m: Member) -> Option<PairWitness> {
        let p = self.p.value();
        let candidate = m.candidate;
        let fail = |engine: &mut Engine, partners: Vec<u64>, reason: String| {
            engine.failures.push(PairFailure {
                family: id,
                candidate,
                partners,
                reason,
            });
            None
        };

        if !self.in_a(candidate) {
            return fail(
                self,
                Vec::new(),
                format!("candidate {candidate} lies outside [1, {}]", self.top),
            );
        }
        let candidate_qr = self.is_qr(candidate);

        if m.partners.is_empty() {
            if !candidate_qr {
                return fail(self, Vec::new(), format!("{candidate} is not a residue"));
            }
            return Some(PairWitness {
                candidate,
                partner: None,
                chosen_qr: candidate,
            });
        }

        let mut reduced: Vec<u64> = m.partners.iter().map(|&v| v.rem_euclid(p as i128) as u64).collect();
        reduced.sort_unstable();
        reduced.dedup();
        let in_range = reduced.iter().copied().find(|&v| self.in_a(v));
        if in_range.is_none() {
            self.partner_out_of_range.push(candidate);
        }
        let partner = in_range.unwrap_or(reduced[0]);
        let partner_qr = self.is_qr(partner);

        match (candidate_qr, partner_qr) {
            (true, true) => fail(self, reduced, format!("both {candidate} and {partner} are residues")),
            (false, false) => fail(self, reduced, format!("neither {candidate} nor {partner} is a residue")),
            (true, false) => Some(PairWitness {
                candidate,
                partner: Some(partner),
                chosen_qr: candidate,
            }),
            (false, true) if in_range.is_some() => Some(PairWitness {
                candidate,
                partner: Some(partner),
                chosen_qr: partner,
            }),
            (false, true) => fail(
                self,
                reduced,
                format!("the residue of the pair is {partner}, outside [1, {}]", self.top),
            ),
        }
    }

    fn ledger(&self, expected: impl Fn(u64, &[FamilyId]) -> bool) -> Vec<DedupEntry> {
        self.produced
            .iter()
            .filter(|(_, fams)| fams.len() > 1)
            .map(|(&element, fams)| DedupEntry {
                element,
                families: fams.clone(),
                expected: expected(element, fams),
            })
            .collect()
    }

    fn distinct_total(&self) -> u64 {
        self.produced.len() as u64
    }
}

fn claim(claim: Claim, holds: bool, detail: impl Into<String>) -> ClaimCheck {
    ClaimCheck {
        claim,
        holds,
        detail: detail.into(),
    }
}

fn join<T: fmt::Display>(items: impl IntoIterator<Item = T>) -> String {
    items.into_iter().map(|v| v.to_string()).collect::<Vec<_>>().join(", ")
}

fn common_claims(engine: &Engine, threshold: u64, claimed: u64, bounds_total: i64, claims: &mut Vec<ClaimCheck>) {
    let failures = &engine.failures;
    claims.push(claim(
        Claim::PairsSound,
        failures.is_empty(),
        if failures.is_empty() {
            "every pair yields one residue in A".to_string()
        } else {
            format!("{} pair(s) fail, first: {}", failures.len(), failures[0].reason)
        },
    ));

    let short: Vec<String> = engine
        .families
        .iter()
        .filter(|f| f.distinct_contribution < f.lower_bound)
        .map(|f| format!("{} {}<{}", f.id, f.distinct_contribution, f.lower_bound))
        .collect();
    claims.push(claim(
        Claim::FamilyBounds,
        short.is_empty(),
        if short.is_empty() {
            "all families reach their bounds".to_string()
        } else {
            format!("short: {}", short.join(", "))
        },
    ));

    claims.push(claim(
        Claim::BoundsTotal,
        bounds_total == claimed as i64,
        format!("bounds sum to {bounds_total}, claimed total {claimed}"),
    ));

    let total = engine.distinct_total();
    claims.push(claim(
        Claim::Threshold,
        total >= threshold,
        format!("{total} distinct residues, {threshold} required"),
    ));
}

fn verdict(claims: &[ClaimCheck], ledger: &[DedupEntry]) -> Verdict {
    let broken = claims.iter().any(|c| {
        !c.holds
            && matches!(
                c.claim,
                Claim::PairsSound
                    | Claim::FamilyBounds
                    | Claim::BoundsTotal
                    | Claim::Threshold
                    | Claim::LemmaCount
                    | Claim::DirectSum
            )
    });
    if broken {
        Verdict::BoundViolation
    } else if ledger.iter().any(|e| !e.expected) || claims.iter().any(|c| !c.holds) {
        Verdict::DedupAnomaly
    } else {
        Verdict::Verified
    }
}

fn range(last: i64) -> impl Iterator<Item = u64> {
    0..(last + 1).max(0) as u64
}

fn require_case(p: OddPrime, expected: Case) -> Result<()> {
    let case = classify_case(p)?;
    if case != expected {
        return Err(Error::domain(format!("p = {p} is in {case}, not {expected}")));
    }
    Ok(())
}

/// The construction for `p = 8k + 3 > 31` on `A = [1, 4k+1]`.
pub fn construct_case1(p: OddPrime) -> Result<ConstructionReport> {
    require_case(p, Case::Case1)?;
    if legendre_reciprocity_u64(2, p).is_residue() {
        return Err(Error::InternalConsistency(format!("(2/{p}) = +1 for p = 3 mod 8")));
    }
    let k = p.k();
    let ki = k as i64;
    let pv = p.value() as i128;
    let top = 4 * k + 1;
    let bounds = case1_bounds(k);
    let b = |i: usize| bounds.0[i].max(0) as u64;

    let mut engine = Engine::new(p);
    debug_assert_eq!(engine.top, top);

    engine.family(
        FamilyId::C1F1,
        b(0),
        range(floor_div(4 * ki - 1, 6)).map(|h| Member::pair(6 * h + 2, (3 * h + 1) as i128)),
    );
    engine.family(
        FamilyId::C1F2,
        b(1),
        range(floor_div(4 * ki - 9, 12)).map(|h| Member::pair(6 * (2 * h + 1) + 4, (3 * (2 * h + 1) + 2) as i128)),
    );
    // the overlap at 4 with C1_F1 is already subtracted from this bound
    engine.family(
        FamilyId::C1F3,
        b(2),
        range(floor_div(4 * ki - 3, 12)).map(|h| {
            let x = 12 * h + 4;
            Member {
                candidate: x,
                partners: vec![2 * x as i128, pv - 4 * x as i128],
            }
        }),
    );
    let f3_out_of_range = std::mem::take(&mut engine.partner_out_of_range);

    let lemma_x = ExactNonNegRational::new(4 * k + 1, 6)?;
    let j_max = 64 - top.leading_zeros();
    let mut bj_bounds = Vec::new();
    for j in 1..=j_max {
        let bound = series_term(lemma_x, j);
        bj_bounds.push(bound);
        let unit = 3u64 << j;
        let last = if top >= unit {
            floor_div((top - unit) as i64, 2 * unit as i64)
        } else {
            -1
        };
        engine.family(
            FamilyId::C1F4 { j },
            bound,
            range(last).map(|h| Member::pair(unit * (2 * h + 1), ((unit / 2) * (2 * h + 1)) as i128)),
        );
    }

    // (p-1)/2 and (p-9)/2 carry the symbols of 1 and 9 times (-2)^-1, both residues
    engine.family(
        FamilyId::C1Specials,
        b(4),
        [Member::single(4 * k + 1), Member::single(4 * k - 3)],
    );

    let ledger = engine.ledger(|element, fams| element == 4 && fams == [FamilyId::C1F1, FamilyId::C1F3]);
    let threshold = (p.value() + 1) / 4;
    let claimed = 2 * k + 1;
    let mut claims = Vec::new();

    claims.push(claim(
        Claim::F3PartnerInRange,
        f3_out_of_range.is_empty(),
        if f3_out_of_range.is_empty() {
            format!("every C1_F3 member has a partner in [1, {top}]")
        } else {
            format!("no partner in [1, {top}] for 12h+4 = {}", join(&f3_out_of_range))
        },
    ));

    let low_families = [FamilyId::C1F1, FamilyId::C1F2, FamilyId::C1F3];
    let low_repeats: Vec<u64> = ledger
        .iter()
        .filter(|e| e.families.iter().all(|f| low_families.contains(f)))
        .map(|e| e.element)
        .collect();
    claims.push(claim(
        Claim::OnlyOverlapIsFour,
        low_repeats == [4],
        format!("repeated among C1_F1..C1_F3: [{}]", join(&low_repeats)),
    ));

    let special_dups: Vec<u64> = ledger
        .iter()
        .filter(|e| e.families.contains(&FamilyId::C1Specials))
        .map(|e| e.element)
        .collect();
    claims.push(claim(
        Claim::SpecialsDistinct,
        special_dups.is_empty(),
        if special_dups.is_empty() {
            format!("{} and {} are new", 4 * k + 1, 4 * k - 3)
        } else {
            format!("already produced: {}", join(&special_dups))
        },
    ));

    let bj_total: u64 = bj_bounds.iter().sum();
    let lemma_value = floor_half_series(lemma_x);
    let lemma_ok = bj_total == lemma_value && lemma_value == b(3);
    claims.push(claim(
        Claim::LemmaCount,
        lemma_ok,
        format!(
            "B_j bounds [{}] sum to {bj_total}; series gives {lemma_value}; [(4k+1)/6] = {}",
            join(&bj_bounds),
            b(3)
        ),
    ));

    let family_bound_total: i64 = engine.families.iter().map(|f| f.lower_bound as i64).sum();
    common_claims(&engine, threshold, claimed, family_bound_total, &mut claims);
    debug_assert_eq!(bounds.total(), claimed as i64);

    let verdict = verdict(&claims, &ledger);
    Ok(ConstructionReport {
        p,
        case: Case::Case1,
        distinct_qr_total: engine.distinct_total(),
        families: engine.families,
        required_threshold: threshold,
        claimed_total: Some(claimed),
        dedup_ledger: ledger,
        pair_failures: engine.failures,
        claims,
        direct_sum: None,
        verdict,
    })
}

/// The construction for `p = 8k + 7 > 31` on `A = [1, 4k+3]`.
///
/// Since `(2/p) = +1` and `(-1/p) = -1`, `((p-a)/2 / p) = -(a/p)`, so each
/// odd `a` is paired with `(p-a)/2`.
pub fn construct_case2(p: OddPrime) -> Result<ConstructionReport> {
    require_case(p, Case::Case2)?;
    if !legendre_reciprocity_u64(2, p).is_residue() {
        return Err(Error::InternalConsistency(format!("(2/{p}) = -1 for p = 7 mod 8")));
    }
    let k = p.k();
    let ki = k as i64;
    let bounds = case2_bounds(k);
    let b = |i: usize| bounds.0[i].max(0) as u64;
    let partner = |h: u64, offset: u64| (4 * (k - h) + offset) as i128;

    let mut engine = Engine::new(p);
    engine.family(
        FamilyId::C2F3Mod8,
        b(0),
        range(floor_div(ki, 2)).map(|h| Member::pair(8 * h + 3, partner(h, 2))),
    );
    engine.family(
        FamilyId::C2F7Mod8,
        b(1),
        range(floor_div(ki - 1, 2)).map(|h| Member::pair(8 * h + 7, partner(h, 0))),
    );
    engine.family(
        FamilyId::C2F1Mod8,
        b(2),
        range(floor_div(2 * ki + 1, 4)).map(|h| Member::pair(8 * h + 1, partner(h, 3))),
    );
    engine.family(
        FamilyId::C2F5Mod8,
        b(3),
        range(floor_div(2 * ki - 1, 4)).map(|h| Member::pair(8 * h + 5, partner(h, 1))),
    );
    engine.family(FamilyId::C2Two, b(4), [Member::single(2)]);

    let ledger = engine.ledger(|_, _| false);
    let threshold = (p.value() + 1) / 4;
    let claimed = 2 * k + 3;
    let mut claims = vec![claim(
        Claim::NoRepeats,
        ledger.is_empty(),
        if ledger.is_empty() {
            "no residue is produced twice".to_string()
        } else {
            format!(
                "{} repeated residue(s), first {} from {}",
                ledger.len(),
                ledger[0].element,
                join(&ledger[0].families)
            )
        },
    )];
    let family_bound_total: i64 = engine.families.iter().map(|f| f.lower_bound as i64).sum();
    common_claims(&engine, threshold, claimed, family_bound_total, &mut claims);

    let verdict = verdict(&claims, &ledger);
    Ok(ConstructionReport {
        p,
        case: Case::Case2,
        distinct_qr_total: engine.distinct_total(),
        families: engine.families,
        required_threshold: threshold,
        claimed_total: Some(claimed),
        dedup_ledger: ledger,
        pair_failures: engine.failures,
        claims,
        direct_sum: None,
        verdict,
    })
}

/// Direct check of `A(p) > 0` for `p = 3 (mod 4)`, `p <= 31`.
pub fn verify_small_regime(p: OddPrime) -> Result<ConstructionReport> {
    require_case(p, Case::SmallRegime)?;
    let record = half_sum_direct(p);
    let threshold = (p.value() + 1) / 4;
    let claims = vec![claim(
        Claim::DirectSum,
        record.a_value > 0,
        format!(
            "A({p}) = {} ({} residues, {} non-residues)",
            record.a_value, record.qr_count, record.nqr_count
        ),
    )];
    let verdict = verdict(&claims, &[]);
    Ok(ConstructionReport {
        p,
        case: Case::SmallRegime,
        families: Vec::new(),
        distinct_qr_total: record.qr_count,
        required_threshold: threshold,
        claimed_total: None,
        dedup_ledger: Vec::new(),
        pair_failures: Vec::new(),
        claims,
        direct_sum: Some(record.a_value),
        verdict,
    })
}
