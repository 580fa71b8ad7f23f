//! Segmented sieve of Eratosthenes over `[lo, hi]`.
//!
//! A [`PrimeStream`] keeps base primes up to `sqrt(hi)` plus one segment of
//! odd-number flags. Streams are independent values, so parallel workers can
//! each own a disjoint subrange.

/// Restricts a stream to primes `p` with `p = residue (mod modulus)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ResidueFilter {
    pub residue: u64,
    pub modulus: u64,
}

impl ResidueFilter {
    /// # Panics
    ///
    /// If `modulus` is zero.
    pub fn new(residue: u64, modulus: u64) -> Self {
        assert!(modulus > 0, "residue filter modulus must be positive");
        ResidueFilter {
            residue: residue % modulus,
            modulus,
        }
    }

    #[inline]
    pub fn accepts(&self, n: u64) -> bool {
        n % self.modulus == self.residue
    }
}

/// Odd flags per segment (one byte each, 256 KiB).
const SEGMENT_FLAGS: usize = 1 << 18;

#[derive(Debug, Clone)]
pub struct PrimeStream {
    hi: u64,
    filter: Option<ResidueFilter>,
    base: Vec<u64>,
    pending_two: bool,
    flags: Vec<bool>,
    /// Odd number represented by `flags[0]`.
    seg_lo: u64,
    cursor: usize,
    /// Next odd number to sieve, `None` once the range is exhausted.
    next_lo: Option<u64>,
}

impl PrimeStream {
    pub fn new(lo: u64, hi: u64, filter: Option<ResidueFilter>) -> Self {
        let empty = lo > hi;
        let first_odd = lo.max(3) | 1;
        let next_lo = (!empty && first_odd <= hi).then_some(first_odd);
        let base = if next_lo.is_some() {
            small_odd_primes(isqrt(hi))
        } else {
            Vec::new()
        };
        PrimeStream {
            hi,
            filter,
            base,
            pending_two: !empty && lo <= 2 && 2 <= hi,
            flags: Vec::new(),
            seg_lo: 0,
            cursor: 0,
            next_lo,
        }
    }

    fn accepts(&self, n: u64) -> bool {
        self.filter.is_none_or(|f| f.accepts(n))
    }

    fn fill_segment(&mut self) -> bool {
        let Some(lo) = self.next_lo else {
            return false;
        };
        let count = (((self.hi - lo) / 2) as usize + 1).min(SEGMENT_FLAGS);
        let last = lo + 2 * (count as u64 - 1);

        self.flags.clear();
        self.flags.resize(count, true);
        for &q in &self.base {
            let Some(sq) = q.checked_mul(q) else { break };
            if sq > last {
                break;
            }
            // first odd multiple of q that is >= max(q^2, lo)
            let mut start = if sq >= lo { sq } else { lo.div_ceil(q) * q };
            if start & 1 == 0 {
                start += q;
            }
            let mut idx = ((start - lo) / 2) as usize;
            let step = q as usize;
            while idx < count {
                self.flags[idx] = false;
                idx += step;
            }
        }

        self.seg_lo = lo;
        self.cursor = 0;
        self.next_lo = last.checked_add(2).filter(|&n| n <= self.hi);
        true
    }
}

impl Iterator for PrimeStream {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        if self.pending_two {
            self.pending_two = false;
            if self.accepts(2) {
                return Some(2);
            }
        }
        loop {
            while self.cursor < self.flags.len() {
                let idx = self.cursor;
                self.cursor += 1;
                if self.flags[idx] {
                    let n = self.seg_lo + 2 * idx as u64;
                    if self.accepts(n) {
                        return Some(n);
                    }
                }
            }
            if !self.fill_segment() {
                return None;
            }
        }
    }
}

/// Primes in `[lo, hi]` matching `filter`, ascending. Empty when `lo > hi`.
pub fn primes_in_range(lo: u64, hi: u64, filter: Option<ResidueFilter>) -> Vec<u64> {
    PrimeStream::new(lo, hi, filter).collect()
}

pub(crate) fn isqrt(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r.checked_mul(r).is_none_or(|sq| sq > n) {
        r -= 1;
    }
    while (r + 1).checked_mul(r + 1).is_some_and(|sq| sq <= n) {
        r += 1;
    }
    r
}

/// Odd primes up to `limit` by a plain sieve.
fn small_odd_primes(limit: u64) -> Vec<u64> {
    if limit < 3 {
        return Vec::new();
    }
    let limit = limit as usize;
    let mut composite = vec![false; limit + 1];
    let mut out = Vec::new();
    let mut i = 3;
    while i <= limit {
        if !composite[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j <= limit {
                composite[j] = true;
                j += 2 * i;
            }
        }
        i += 2;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn trial_division(n: u64) -> bool {
        n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
    }

    #[test]
    fn examples() {
        assert_eq!(
            primes_in_range(1, 20, Some(ResidueFilter::new(3, 4))),
            vec![3, 7, 11, 19]
        );
        assert_eq!(primes_in_range(1, 2, None), vec![2]);
        assert!(primes_in_range(24, 28, None).is_empty());
        assert!(primes_in_range(30, 10, None).is_empty());
        assert!(primes_in_range(0, 1, None).is_empty());
        assert_eq!(primes_in_range(3, 3, None), vec![3]);
        assert_eq!(primes_in_range(2, 2, Some(ResidueFilter::new(1, 2))), Vec::<u64>::new());
    }

    #[test]
    fn matches_trial_division() {
        let expected: Vec<u64> = (0..=10_000).filter(|&n| trial_division(n)).collect();
        assert_eq!(primes_in_range(0, 10_000, None), expected);
    }

    #[test]
    fn prime_count_to_one_million() {
        assert_eq!(PrimeStream::new(1, 1_000_000, None).count(), 78_498);
    }

    #[test]
    fn spans_several_segments() {
        let lo = 10_000_000_000;
        let hi = lo + 3 * 2 * SEGMENT_FLAGS as u64 + 17;
        let got = primes_in_range(lo, hi, None);
        assert!(got.windows(2).all(|w| w[0] < w[1]));
        assert!(got.iter().all(|&n| crate::arith::is_prime(n)));
        let spot: Vec<u64> = (lo..lo + 2_000).filter(|&n| crate::arith::is_prime(n)).collect();
        assert_eq!(&got[..spot.len()], &spot[..]);
        let total = (lo..=hi).filter(|&n| crate::arith::is_prime(n)).count();
        assert_eq!(got.len(), total);
    }

    #[test]
    fn window_near_two_pow_40() {
        let hi = 1u64 << 40;
        let got = primes_in_range(hi - 500, hi, None);
        let oracle: Vec<u64> = (hi - 500..=hi).filter(|&n| crate::arith::is_prime(n)).collect();
        assert_eq!(got, oracle);
    }

    #[test]
    fn isqrt_exact() {
        for n in [0u64, 1, 2, 3, 4, 15, 16, 17, 1 << 52, (1 << 52) + 1, u64::MAX] {
            let r = isqrt(n);
            assert!(r * r <= n);
            assert!((r + 1).checked_mul(r + 1).is_none_or(|sq| sq > n));
        }
    }

    proptest! {
        #[test]
        fn split_ranges_partition(a in 0u64..50_000, len1 in 0u64..50_000, len2 in 0u64..50_000, r in 0u64..8) {
            let b = a + len1;
            let c = b + len2;
            let filter = (r > 0).then(|| ResidueFilter::new(r, 8));
            let mut joined = primes_in_range(a, b, filter);
            joined.extend(primes_in_range(b + 1, c, filter));
            prop_assert_eq!(joined, primes_in_range(a, c, filter));
        }
    }
}
