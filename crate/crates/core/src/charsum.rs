//! The half-interval sum `A(p) = sum_{a=1}^{(p-1)/2} (a/p)` and the full-period sum.

use serde::Serialize;

use crate::arith::{legendre_reciprocity_u64, OddPrime};
use crate::error::{Error, Result};

/// Largest prime accepted by the table-based methods; the half-interval bitmap is then 512 MiB.
pub const MAX_SIEVE_PRIME: u64 = 1 << 33;

/// Above this bound [`half_sum`] uses the sieve.
pub const SIEVE_THRESHOLD: u64 = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SumMethod {
    Direct,
    Sieve,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct HalfSumRecord {
    pub p: OddPrime,
    /// `A(p)`, residues minus non-residues in `[1, (p-1)/2]`.
    pub a_value: i64,
    pub qr_count: u64,
    pub nqr_count: u64,
    pub method: SumMethod,
}

impl HalfSumRecord {
    fn from_counts(p: OddPrime, qr_count: u64, method: SumMethod) -> Self {
        let nqr_count = p.half() - qr_count;
        HalfSumRecord {
            p,
            a_value: qr_count as i64 - nqr_count as i64,
            qr_count,
            nqr_count,
            method,
        }
    }
}

/// Sums Legendre symbols over `a = 1..=(p-1)/2`.
pub fn half_sum_direct(p: OddPrime) -> HalfSumRecord {
    let qr_count = (1..=p.half())
        .filter(|&a| legendre_reciprocity_u64(a, p).is_residue())
        .count() as u64;
    HalfSumRecord::from_counts(p, qr_count, SumMethod::Direct)
}

/// Marks `x^2 mod p` for `x = 1..=(p-1)/2` and counts marks inside the half interval.
pub fn half_sum_sieve(p: OddPrime) -> Result<HalfSumRecord> {
    check_size(p)?;
    let half = p.half();
    let mut marks = Bitmap::new(half);
    for_each_square(p.value(), half, |sq| {
        if sq <= half {
            marks.set(sq - 1);
        }
    });
    Ok(HalfSumRecord::from_counts(p, marks.count_ones(), SumMethod::Sieve))
}

/// [`half_sum_direct`] up to [`SIEVE_THRESHOLD`], [`half_sum_sieve`] above.
pub fn half_sum(p: OddPrime) -> Result<HalfSumRecord> {
    if p.value() > SIEVE_THRESHOLD {
        half_sum_sieve(p)
    } else {
        Ok(half_sum_direct(p))
    }
}

/// `sum_{a=1}^{p-1} (a/p)`, read off the table from [`character_table`].
pub fn full_sum(p: OddPrime) -> Result<i64> {
    Ok(character_table(p)?.iter().map(|&c| c as i64).sum())
}

/// `table[a] = (a/p)` for `0 <= a < p`, built from the set of squares.
pub fn character_table(p: OddPrime) -> Result<Vec<i8>> {
    check_size(p)?;
    let mut table = vec![-1i8; p.value() as usize];
    table[0] = 0;
    for_each_square(p.value(), p.half(), |sq| table[sq as usize] = 1);
    Ok(table)
}

fn check_size(p: OddPrime) -> Result<()> {
    if p.value() > MAX_SIEVE_PRIME {
        return Err(Error::Resource(format!(
            "p = {p} exceeds the table limit {MAX_SIEVE_PRIME}; use half_sum_direct instead"
        )));
    }
    Ok(())
}

/// Calls `f(x^2 mod p)` for `x = 1..=count`, using `(x+1)^2 = x^2 + 2x + 1`.
#[inline]
fn for_each_square(p: u64, count: u64, mut f: impl FnMut(u64)) {
    let mut sq = 0u64;
    for x in 0..count {
        // 2x + 1 < p and sq < p, and p <= MAX_SIEVE_PRIME keeps the sum in range
        sq += 2 * x + 1;
        if sq >= p {
            sq -= p;
        }
        f(sq);
    }
}

struct Bitmap {
    words: Vec<u64>,
}

impl Bitmap {
    fn new(bits: u64) -> Self {
        Bitmap {
            words: vec![0; bits.div_ceil(64) as usize],
        }
    }

    #[inline]
    fn set(&mut self, i: u64) {
        self.words[(i >> 6) as usize] |= 1 << (i & 63);
    }

    fn count_ones(&self) -> u64 {
        self.words.iter().map(|w| w.count_ones() as u64).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::is_prime;

    fn p(v: u64) -> OddPrime {
        OddPrime::new(v).unwrap()
    }

    /// Residues in `[1, (p-1)/2]` by squaring every nonzero class.
    fn squares_oracle(q: u64) -> Vec<u64> {
        let mut qrs: Vec<u64> = (1..q).map(|x| x * x % q).filter(|&r| r <= (q - 1) / 2).collect();
        qrs.sort_unstable();
        qrs.dedup();
        qrs
    }

    #[test]
    fn direct_examples() {
        assert_eq!(squares_oracle(7), vec![1, 2]);
        assert_eq!(half_sum_direct(p(7)).a_value, 1);
        assert_eq!(half_sum_direct(p(13)).a_value, 0);
        assert_eq!(squares_oracle(11), vec![1, 3, 4, 5]);
        let r = half_sum_direct(p(11));
        assert_eq!((r.a_value, r.qr_count, r.nqr_count), (3, 4, 1));
        assert_eq!(r.method, SumMethod::Direct);
    }

    #[test]
    fn sieve_examples() {
        let r = half_sum_sieve(p(7)).unwrap();
        assert_eq!((r.qr_count, r.a_value), (2, 1));
        assert_eq!(half_sum_sieve(p(3)).unwrap().a_value, 1);
        assert_eq!(squares_oracle(23), vec![1, 2, 3, 4, 6, 8, 9]);
        assert_eq!(half_sum_sieve(p(23)).unwrap().a_value, 3);
        assert_eq!(half_sum_sieve(p(23)).unwrap().method, SumMethod::Sieve);
    }

    #[test]
    fn full_sum_examples() {
        assert_eq!(full_sum(p(7)).unwrap(), 0);
        assert_eq!(full_sum(p(3)).unwrap(), 0);
        assert_eq!(full_sum(p(101)).unwrap(), 0);
    }

    #[test]
    fn sieve_rejects_oversized_prime() {
        let big = (MAX_SIEVE_PRIME + 1..).find(|&n| is_prime(n)).unwrap();
        let err = half_sum_sieve(p(big)).unwrap_err();
        assert!(matches!(err, Error::Resource(ref m) if m.contains("exceeds")), "{err}");
        assert!(character_table(p(big)).is_err());
    }

    #[test]
    fn methods_agree_and_records_are_consistent() {
        for q in (3..=10_000u64).filter(|&n| is_prime(n)) {
            let op = p(q);
            let d = half_sum_direct(op);
            let s = half_sum_sieve(op).unwrap();
            assert_eq!(
                (d.a_value, d.qr_count, d.nqr_count),
                (s.a_value, s.qr_count, s.nqr_count),
                "p = {q}"
            );
            assert_eq!(d.qr_count + d.nqr_count, op.half());
            if q % 4 == 1 {
                assert_eq!(d.a_value, 0, "p = {q}");
            } else {
                assert_eq!(d.a_value.rem_euclid(2), 1, "p = {q}");
                assert!(d.a_value > 0, "p = {q}");
            }
        }
    }

    #[test]
    fn character_table_matches_symbols() {
        for q in [3u64, 5, 7, 97, 1009] {
            let op = p(q);
            let table = character_table(op).unwrap();
            for a in 0..q {
                assert_eq!(table[a as usize], legendre_reciprocity_u64(a, op).as_i8());
            }
        }
    }

    #[test]
    fn dispatch_threshold() {
        assert_eq!(half_sum(p(9_973)).unwrap().method, SumMethod::Direct);
        assert_eq!(half_sum(p(10_007)).unwrap().method, SumMethod::Sieve);
    }
}
