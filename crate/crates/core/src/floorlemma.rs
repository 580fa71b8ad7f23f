//! Exact evaluation of `sum_{r>=1} floor(x / 2^r + 1/2)` for rational `x >= 0`.
//!
//! The series equals `floor(x)`. Terms are computed as
//! `floor((2n + d 2^r) / (d 2^(r+1)))` in `u128`, so no rounding ever enters.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// `numerator / denominator` in lowest terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct ExactNonNegRational {
    numerator: u64,
    denominator: u64,
}

impl ExactNonNegRational {
    pub fn new(numerator: u64, denominator: u64) -> Result<Self> {
        if denominator == 0 {
            return Err(Error::domain("rational with zero denominator"));
        }
        let g = gcd(numerator, denominator);
        Ok(ExactNonNegRational {
            numerator: numerator / g,
            denominator: denominator / g,
        })
    }

    pub fn integer(n: u64) -> Self {
        ExactNonNegRational {
            numerator: n,
            denominator: 1,
        }
    }

    pub fn numerator(self) -> u64 {
        self.numerator
    }

    pub fn denominator(self) -> u64 {
        self.denominator
    }

    pub fn floor(self) -> u64 {
        self.numerator / self.denominator
    }
}

impl fmt::Display for ExactNonNegRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denominator == 1 {
            write!(f, "{}", self.numerator)
        } else {
            write!(f, "{}/{}", self.numerator, self.denominator)
        }
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a.max(1)
}

/// The `r`-th term `floor(x / 2^r + 1/2)`, `r >= 1`.
pub fn series_term(x: ExactNonNegRational, r: u32) -> u64 {
    assert!(r >= 1, "series starts at r = 1");
    let n = x.numerator as u128;
    let d = x.denominator as u128;
    let d_bits = 128 - d.leading_zeros();
    if d_bits + r + 1 > 127 {
        // d 2^r >= 2^126 > 2n, so x / 2^r < 1/2
        return 0;
    }
    let scaled = d << r;
    ((2 * n + scaled) / (scaled << 1)) as u64
}

/// Smallest `R >= 1` with `x < 2^(R-1)`; every term with `r >= R` is zero.
pub fn truncation_index(x: ExactNonNegRational) -> u32 {
    let n = x.numerator as u128;
    let d = x.denominator as u128;
    let mut r = 1;
    while n >= d << (r - 1) {
        r += 1;
    }
    r
}

/// The finite sum of the nonzero terms.
pub fn floor_half_series(x: ExactNonNegRational) -> u64 {
    (1..truncation_index(x)).map(|r| series_term(x, r)).sum()
}
