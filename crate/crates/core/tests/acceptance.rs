//! Acceptance suite: one line per criterion, non-zero exit if any fails.
//!
//! Run with `cargo test -p halfsum-core --test acceptance`.

use std::process::ExitCode;
use std::time::Instant;

use halfsum_core::arith::{is_prime, legendre_euler, legendre_reciprocity, OddPrime};
use halfsum_core::charsum::{full_sum, half_sum, half_sum_sieve};
use halfsum_core::classnum::{class_number_character_sum, identity_check, l_value_estimate, reduced_forms_count};
use halfsum_core::construction::{case1_bounds, case2_bounds, construct, Claim, SMALL_REGIME_MAX};
use halfsum_core::floorlemma::{floor_half_series, ExactNonNegRational};
use halfsum_core::primes::{PrimeStream, ResidueFilter};
use halfsum_core::sweep::{verify_range, SweepOptions};
use rand::{Rng, SeedableRng};
use rayon::prelude::*;

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn odd_prime(n: u64) -> OddPrime {
    OddPrime::new(n).expect("stream yields primes")
}

fn primes_3_mod_4(lo: u64, hi: u64) -> impl Iterator<Item = OddPrime> {
    PrimeStream::new(lo, hi, Some(ResidueFilter::new(3, 4))).map(odd_prime)
}

/// A(p) > 0 for every p = 3 (mod 4), p <= 10^6, by the sieve method.
fn theorem_sweep() -> Outcome {
    const HI: u64 = 1_000_000;
    let opts = SweepOptions {
        audit_limit: Some(SMALL_REGIME_MAX),
        ..SweepOptions::default()
    };
    let summary = match verify_range(3, HI, opts) {
        Ok(s) => s,
        Err(e) => return outcome(false, e.to_string()),
    };
    let expected = (3..=HI).filter(|&n| n % 4 == 3 && is_prime(n)).count() as u64;
    let positive = summary.rows.iter().all(|r| r.a_value > 0);
    // spot-check that the rows carry sieve values
    let spot = odd_prime(999_983);
    let spot_ok = summary.rows.last().map(|r| r.p) == Some(spot.value())
        && half_sum_sieve(spot).map(|r| r.a_value).ok() == summary.rows.last().map(|r| r.a_value);
    outcome(
        summary.theorem_failures == 0 && positive && summary.primes_checked == expected && spot_ok,
        format!(
            "{} primes checked (expected {expected}), {} with A(p) <= 0, {:.1}s",
            summary.primes_checked, summary.theorem_failures, summary.wall_time_seconds
        ),
    )
}

/// Construction audit for 31 < p <= 10^5.
fn construction_audit() -> Outcome {
    let primes: Vec<OddPrime> = primes_3_mod_4(SMALL_REGIME_MAX + 1, 100_000).collect();
    let stats: Vec<(bool, bool, bool, usize, usize)> = primes
        .par_iter()
        .map(|&p| {
            let r = construct(p).expect("p = 3 mod 4");
            let witnesses_ok = r.witnesses().all(|(_, w)| {
                let chosen = legendre_euler(w.chosen_qr as i64, p).is_residue() && w.chosen_qr <= p.half();
                let pair = w.partner.is_none_or(|q| {
                    legendre_euler(w.candidate as i64, p).as_i8() * legendre_euler(q as i64, p).as_i8() == -1
                });
                chosen && pair
            });
            let bounds_ok = r.claim(Claim::FamilyBounds).is_some_and(|c| c.holds);
            (
                r.threshold_met(),
                bounds_ok,
                witnesses_ok,
                r.pair_failures.len(),
                r.unexpected_duplicates().count(),
            )
        })
        .collect();

    let n = primes.len();
    let below_threshold = stats.iter().filter(|s| !s.0).count();
    let short_family = stats.iter().filter(|s| !s.1).count();
    let bad_witness = stats.iter().filter(|s| !s.2).count();
    let with_pair_failures = stats.iter().filter(|s| s.3 > 0).count();
    let with_anomalies = stats.iter().filter(|s| s.4 > 0).count();
    let anomalies: usize = stats.iter().map(|s| s.4).sum();
    let first_below = primes.iter().zip(&stats).find(|(_, s)| !s.0).map(|(p, _)| p.value());
    outcome(
        below_threshold == 0 && short_family == 0 && bad_witness == 0,
        format!(
            "{n} primes: {below_threshold} below (p+1)/4 (first p = {}), {short_family} with a family short of \
             its bound, {bad_witness} with an unsound witness, {with_pair_failures} with pairs yielding no residue \
             in A; dedup anomalies for p > 31: {anomalies} across {with_anomalies} primes",
            first_below.map_or("none".to_string(), |p| p.to_string())
        ),
    )
}

/// Floor-bound totals 2k+1 and 2k+3 for k <= 10^6.
fn bound_identities() -> Outcome {
    let bad1 = (0..=1_000_000u64).find(|&k| case1_bounds(k).total() != 2 * k as i64 + 1);
    let bad2 = (0..=1_000_000u64).find(|&k| case2_bounds(k).total() != 2 * k as i64 + 3);
    outcome(
        bad1.is_none() && bad2.is_none(),
        format!("first case-1 mismatch {bad1:?}, first case-2 mismatch {bad2:?}"),
    )
}

/// Floor-series lemma on integers and random rationals.
fn lemma_suite() -> Outcome {
    let int_bad = (0..=1_000_000u64).find(|&n| floor_half_series(ExactNonNegRational::integer(n)) != n);
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(20_240_501);
    let mut rat_bad = None;
    for _ in 0..100_000 {
        let x = ExactNonNegRational::new(rng.gen_range(0..=1_000_000_000), rng.gen_range(1..=1_000_000_000))
            .expect("nonzero denominator");
        if floor_half_series(x) != x.floor() {
            rat_bad = Some(x);
            break;
        }
    }
    outcome(
        int_bad.is_none() && rat_bad.is_none(),
        format!(
            "integers 0..=10^6: {}, 10^5 random rationals: {}",
            int_bad.map_or("ok".into(), |n| format!("fails at {n}")),
            rat_bad.map_or("ok".into(), |x| format!("fails at {x}"))
        ),
    )
}

/// A(p) = (2 - (2/p)) h(p) with both class numbers, 3 < p <= 10^4.
fn class_number_identity() -> Outcome {
    let mut checked = 0;
    let mut failures = Vec::new();
    for p in primes_3_mod_4(5, 10_000) {
        checked += 1;
        if let Err(e) = identity_check(p) {
            failures.push(e.to_string());
        }
    }
    let spots = [(7u64, 1u64), (23, 3), (47, 5), (163, 1)];
    let spot_ok = spots.iter().all(|&(p, h)| {
        let p = odd_prime(p);
        reduced_forms_count(p) == Ok(h) && class_number_character_sum(p) == Ok(h)
    });
    outcome(
        failures.is_empty() && spot_ok,
        format!(
            "{checked} primes, {} mismatches{}; h(-7), h(-23), h(-47), h(-163) = 1, 3, 5, 1: {}",
            failures.len(),
            failures.first().map_or(String::new(), |f| format!(" (first: {f})")),
            if spot_ok { "ok" } else { "wrong" }
        ),
    )
}

/// Euler = reciprocity = exhaustive squares for all a, all odd p <= 2000.
fn symbol_equivalence() -> Outcome {
    let mut pairs = 0u64;
    let mut first_bad = None;
    for q in PrimeStream::new(3, 2_000, None) {
        let p = odd_prime(q);
        let mut is_square = vec![false; q as usize];
        for x in 1..q {
            is_square[(x * x % q) as usize] = true;
        }
        for a in 0..q {
            let brute = if a == 0 {
                0
            } else if is_square[a as usize] {
                1
            } else {
                -1
            };
            let e = legendre_euler(a as i64, p).as_i8();
            let r = legendre_reciprocity(a as i64, p).as_i8();
            pairs += 1;
            if e != brute || r != brute {
                first_bad.get_or_insert((a, q));
            }
        }
    }
    outcome(
        first_bad.is_none(),
        format!("{pairs} (a, p) pairs, first disagreement {first_bad:?}"),
    )
}

/// A(p) = 0 for p = 1 (mod 4) and the full sum vanishes, p <= 10^5.
fn one_mod_four_control() -> Outcome {
    let primes: Vec<OddPrime> = PrimeStream::new(3, 100_000, None).map(odd_prime).collect();
    let bad_half: Vec<u64> = primes
        .par_iter()
        .filter(|p| p.value() % 4 == 1)
        .filter(|&&p| half_sum(p).map(|r| r.a_value).ok() != Some(0))
        .map(|p| p.value())
        .collect();
    let bad_full: Vec<u64> = primes
        .par_iter()
        .filter(|&&p| full_sum(p).ok() != Some(0))
        .map(|p| p.value())
        .collect();
    let ones = primes.iter().filter(|p| p.value() % 4 == 1).count();
    outcome(
        bad_half.is_empty() && bad_full.is_empty(),
        format!(
            "{ones} primes = 1 mod 4 with A(p) != 0: {}; {} odd primes with nonzero full sum: {}",
            bad_half.len(),
            primes.len(),
            bad_full.len()
        ),
    )
}

/// L-value wiring and partial-sum tolerance at terms = 100p.
fn l_value_wiring() -> Outcome {
    let mut pass = true;
    let mut parts = Vec::new();
    for q in [7u64, 11, 23, 43, 47] {
        let p = odd_prime(q);
        match l_value_estimate(p, 100 * q) {
            Ok(r) => {
                let tol = 5.0 / ((100 * q) as f64).sqrt();
                let err = (r.l_partial - r.l_exact).abs();
                let ok = r.wiring_error < 1e-9 && err <= tol;
                pass &= ok;
                parts.push(format!(
                    "p={q}: |dL|={err:.2e} (tol {tol:.2e}), wiring {:.1e}",
                    r.wiring_error
                ));
            }
            Err(e) => {
                pass = false;
                parts.push(format!("p={q}: {e}"));
            }
        }
    }
    outcome(pass, parts.join("; "))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("1 theorem sweep to 10^6", theorem_sweep),
        ("2 construction audit 31 < p <= 10^5", construction_audit),
        ("3 bound identities k <= 10^6", bound_identities),
        ("4 floor-series lemma", lemma_suite),
        ("5 class number identity p <= 10^4", class_number_identity),
        ("6 symbol oracle equivalence p <= 2000", symbol_equivalence),
        ("7 p = 1 mod 4 control p <= 10^5", one_mod_four_control),
        ("8 L-value wiring", l_value_wiring),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        let started = Instant::now();
        let o = run();
        let tag = if o.pass { "PASS" } else { "FAIL" };
        println!(
            "[{tag}] criterion {name} ({:.1}s): {}",
            started.elapsed().as_secs_f64(),
            o.detail
        );
        failed += !o.pass as usize;
    }
    println!("acceptance: {} of 8 criteria passed", 8 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
