//! Exact modular arithmetic, primality and Legendre symbols.
//!
//! All arithmetic is on `u64` with `u128` intermediates, so nothing here
//! allocates and every function is safe to call from any thread.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// A validated odd prime together with its class modulo 8.
///
/// `value = 8 * k + residue_mod_8`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OddPrime {
    value: u64,
    residue_mod_8: u8,
    k: u64,
}

impl OddPrime {
    pub fn new(value: u64) -> Result<Self> {
        if value < 3 || !is_prime(value) {
            return Err(Error::domain(format!("{value} is not an odd prime")));
        }
        let residue_mod_8 = (value % 8) as u8;
        Ok(OddPrime {
            value,
            residue_mod_8,
            k: value / 8,
        })
    }

    #[inline]
    pub fn value(self) -> u64 {
        self.value
    }

    #[inline]
    pub fn residue_mod_8(self) -> u8 {
        self.residue_mod_8
    }

    /// The quotient `k` in `value = 8k + r`.
    #[inline]
    pub fn k(self) -> u64 {
        self.k
    }

    #[inline]
    pub fn is_3_mod_4(self) -> bool {
        self.residue_mod_8 & 3 == 3
    }

    /// `m` with `value = 4m + 3`, when `value = 3 (mod 4)`.
    pub fn m(self) -> Option<u64> {
        self.is_3_mod_4().then(|| (self.value - 3) / 4)
    }

    /// `(p - 1) / 2`, the length of the half interval.
    #[inline]
    pub fn half(self) -> u64 {
        (self.value - 1) / 2
    }
}

impl fmt::Display for OddPrime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Serialize for OddPrime {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_u64(self.value)
    }
}

impl TryFrom<u64> for OddPrime {
    type Error = Error;

    fn try_from(value: u64) -> Result<Self> {
        OddPrime::new(value)
    }
}

/// Outcome of a Legendre symbol: -1, 0 or +1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SymbolValue {
    MinusOne,
    Zero,
    PlusOne,
}

impl SymbolValue {
    #[inline]
    pub fn as_i8(self) -> i8 {
        match self {
            SymbolValue::MinusOne => -1,
            SymbolValue::Zero => 0,
            SymbolValue::PlusOne => 1,
        }
    }

    #[inline]
    pub fn is_residue(self) -> bool {
        self == SymbolValue::PlusOne
    }

    fn from_sign(sign: i8) -> Self {
        match sign {
            1 => SymbolValue::PlusOne,
            -1 => SymbolValue::MinusOne,
            _ => SymbolValue::Zero,
        }
    }
}

impl fmt::Display for SymbolValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SymbolValue::MinusOne => "-1",
            SymbolValue::Zero => "0",
            SymbolValue::PlusOne => "+1",
        })
    }
}

impl Serialize for SymbolValue {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_i8(self.as_i8())
    }
}

#[inline]
fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

/// `base^exponent mod modulus` by square-and-multiply.
pub fn mod_pow(base: u64, exponent: u64, modulus: u64) -> Result<u64> {
    if modulus < 2 {
        return Err(Error::domain(format!("modulus must be at least 2, got {modulus}")));
    }
    Ok(pow_unchecked(base, exponent, modulus))
}

fn pow_unchecked(base: u64, mut exponent: u64, modulus: u64) -> u64 {
    let mut acc = 1 % modulus;
    let mut base = base % modulus;
    while exponent > 0 {
        if exponent & 1 == 1 {
            acc = mul_mod(acc, base, modulus);
        }
        base = mul_mod(base, base, modulus);
        exponent >>= 1;
    }
    acc
}

// Deterministic for every n < 3.3 * 10^24, which covers u64.
const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

/// Deterministic Miller-Rabin for the full `u64` range.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &q in &WITNESSES {
        if n.is_multiple_of(q) {
            return n == q;
        }
    }
    if n < 41 * 41 {
        return true;
    }

    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &WITNESSES {
        let mut x = pow_unchecked(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

#[inline]
fn reduce(a: i64, p: OddPrime) -> u64 {
    (a as i128).rem_euclid(p.value as i128) as u64
}

/// Legendre symbol by Euler's criterion, `a^((p-1)/2) mod p`.
pub fn legendre_euler(a: i64, p: OddPrime) -> SymbolValue {
    legendre_euler_u64(reduce(a, p), p)
}

pub(crate) fn legendre_euler_u64(a: u64, p: OddPrime) -> SymbolValue {
    let a = a % p.value;
    if a == 0 {
        return SymbolValue::Zero;
    }
    match pow_unchecked(a, (p.value - 1) / 2, p.value) {
        1 => SymbolValue::PlusOne,
        r if r == p.value - 1 => SymbolValue::MinusOne,
        r => unreachable!("Euler criterion gave {r} modulo the validated prime {p}"),
    }
}

/// Legendre symbol by the binary Jacobi algorithm (supplement for 2, then reciprocity).
pub fn legendre_reciprocity(a: i64, p: OddPrime) -> SymbolValue {
    legendre_reciprocity_u64(reduce(a, p), p)
}

pub(crate) fn legendre_reciprocity_u64(a: u64, p: OddPrime) -> SymbolValue {
    SymbolValue::from_sign(jacobi(a, p.value))
}

/// Jacobi symbol `(a/n)` for odd `n`.
fn jacobi(a: u64, n: u64) -> i8 {
    debug_assert!(n & 1 == 1);
    let mut a = a % n;
    let mut n = n;
    let mut sign = 1i8;
    while a != 0 {
        let twos = a.trailing_zeros();
        a >>= twos;
        // (2/n) = -1 iff n = 3, 5 (mod 8)
        if twos & 1 == 1 && matches!(n & 7, 3 | 5) {
            sign = -sign;
        }
        if a & 3 == 3 && n & 3 == 3 {
            sign = -sign;
        }
        std::mem::swap(&mut a, &mut n);
        a %= n;
    }
    if n == 1 {
        sign
    } else {
        0
    }
}
