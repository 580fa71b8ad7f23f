//! Class numbers of `Q(sqrt(-p))` for primes `p = 3 (mod 4)`, `p > 3`, and the
//! identity `A(p) = (2 - (2/p)) h(p)`.
//!
//! `h` is obtained twice: by counting reduced forms of discriminant `-p`, and
//! from the finite closed form `h = -(1/p) sum_{a=1}^{p-1} a (a/p)` of the
//! analytic class number formula.

use std::f64::consts::PI;

use serde::Serialize;

use crate::arith::{legendre_reciprocity_u64, OddPrime};
use crate::charsum::{character_table, half_sum};
use crate::error::{Error, Result};
use crate::primes::isqrt;

/// A reduced positive definite form `a x^2 + b xy + c y^2` of discriminant `-p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct ReducedForm {
    pub a: u64,
    pub b: i64,
    pub c: u64,
}

impl ReducedForm {
    pub fn discriminant(&self) -> i128 {
        let b = self.b as i128;
        b * b - 4 * self.a as i128 * self.c as i128
    }

    /// `|b| <= a <= c`, with `b >= 0` when `|b| = a` or `a = c`.
    pub fn is_reduced(&self) -> bool {
        let (a, c) = (self.a as i128, self.c as i128);
        let b = self.b as i128;
        let bounds = -a < b && b <= a && a <= c;
        bounds && !(b < 0 && a == c)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ClassNumberRecord {
    pub p: OddPrime,
    pub h_forms: u64,
    pub h_charsum: u64,
    /// `A(p)`.
    pub identity_lhs: i64,
    /// `(2 - (2/p)) h_forms`.
    pub identity_rhs: i64,
}

impl ClassNumberRecord {
    pub fn holds(&self) -> bool {
        self.h_forms == self.h_charsum && self.identity_lhs == self.identity_rhs
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LFunctionRecord {
    pub p: OddPrime,
    pub terms: u64,
    pub h: u64,
    /// `pi h / sqrt(p)`.
    pub l_exact: f64,
    /// `sum_{n=1}^{terms} (n/p) / n`.
    pub l_partial: f64,
    /// `|tau(chi)| = sqrt(p)`.
    pub tau_magnitude: f64,
    pub tolerance: f64,
    pub within_tolerance: bool,
    /// `|A(p) - (sqrt(p)/pi)(2 - (2/p)) l_exact|`.
    pub wiring_error: f64,
}

/// Tolerance used by [`l_value_estimate`]: `5 / sqrt(terms)`.
pub fn default_l_tolerance(terms: u64) -> f64 {
    5.0 / (terms as f64).sqrt()
}

fn check_domain(p: OddPrime) -> Result<()> {
    if !p.is_3_mod_4() {
        return Err(Error::domain(format!(
            "class number identity needs p = 3 mod 4, got {p}"
        )));
    }
    if p.value() == 3 {
        return Err(Error::domain(
            "p = 3 is excluded: Q(sqrt(-3)) has six units and the identity does not apply",
        ));
    }
    Ok(())
}

/// Every reduced form of discriminant `-p`, sorted by `(a, b)`.
pub fn reduced_forms(p: OddPrime) -> Result<Vec<ReducedForm>> {
    check_domain(p)?;
    let pv = p.value() as u128;
    let mut forms = Vec::new();
    // a <= c and 4ac = b^2 + p <= a^2 + p give 3a^2 <= p
    let a_max = isqrt(p.value() / 3);
    for a in 1..=a_max {
        let four_a = 4 * a as u128;
        // b must be odd since b^2 = -p = 1 (mod 4)
        let mut b = -(a as i64) + 1;
        if b & 1 == 0 {
            b += 1;
        }
        while b <= a as i64 {
            let b_sq = (b as i128 * b as i128) as u128;
            if (b_sq + pv).is_multiple_of(four_a) {
                let c = ((b_sq + pv) / four_a) as u64;
                let form = ReducedForm { a, b, c };
                if form.is_reduced() {
                    forms.push(form);
                }
            }
            b += 2;
        }
    }
    Ok(forms)
}

/// `h(-p)` as the number of reduced forms.
pub fn reduced_forms_count(p: OddPrime) -> Result<u64> {
    Ok(reduced_forms(p)?.len() as u64)
}

/// `h(-p) = -(1/p) sum_{a=1}^{p-1} a (a/p)`, accumulated exactly.
pub fn class_number_character_sum(p: OddPrime) -> Result<u64> {
    check_domain(p)?;
    let weighted: i128 = match character_table(p) {
        Ok(table) => table.iter().enumerate().map(|(a, &chi)| a as i128 * chi as i128).sum(),
        Err(Error::Resource(_)) => (1..p.value())
            .map(|a| a as i128 * legendre_reciprocity_u64(a, p).as_i8() as i128)
            .sum(),
        Err(e) => return Err(e),
    };
    let pv = p.value() as i128;
    if weighted % pv != 0 || weighted >= 0 {
        return Err(Error::InternalConsistency(format!(
            "sum a (a/{p}) = {weighted} is not a negative multiple of {p}"
        )));
    }
    Ok((-weighted / pv) as u64)
}

/// Both class numbers and both sides of `A(p) = (2 - (2/p)) h(p)`.
///
/// Returns [`Error::IdentityMismatch`] carrying both sides if anything disagrees.
pub fn identity_check(p: OddPrime) -> Result<ClassNumberRecord> {
    check_domain(p)?;
    let h_forms = reduced_forms_count(p)?;
    let h_charsum = class_number_character_sum(p)?;
    let lhs = half_sum(p)?.a_value;
    let two = legendre_reciprocity_u64(2, p).as_i8() as i64;
    let record = ClassNumberRecord {
        p,
        h_forms,
        h_charsum,
        identity_lhs: lhs,
        identity_rhs: (2 - two) * h_forms as i64,
    };
    if !record.holds() {
        return Err(Error::IdentityMismatch {
            p: p.value(),
            lhs: record.identity_lhs,
            rhs: record.identity_rhs,
            h_forms,
            h_charsum,
        });
    }
    Ok(record)
}

/// Compares the truncated series for `L(1, (./p))` with `pi h / sqrt(p)`.
pub fn l_value_estimate(p: OddPrime, terms: u64) -> Result<LFunctionRecord> {
    l_value_estimate_with_tolerance(p, terms, default_l_tolerance(terms))
}

pub fn l_value_estimate_with_tolerance(p: OddPrime, terms: u64, tolerance: f64) -> Result<LFunctionRecord> {
    check_domain(p)?;
    if terms < p.value() {
        return Err(Error::domain(format!(
            "need at least one full period of terms ({p}), got {terms}"
        )));
    }
    let table = character_table(p)?;
    let period = table.len() as u64;
    let mut l_partial = 0.0f64;
    let mut residue = 0usize;
    for n in 1..=terms {
        residue += 1;
        if residue as u64 == period {
            residue = 0;
        }
        let chi = table[residue];
        if chi != 0 {
            l_partial += chi as f64 / n as f64;
        }
    }

    let h = reduced_forms_count(p)?;
    let sqrt_p = (p.value() as f64).sqrt();
    let l_exact = PI * h as f64 / sqrt_p;
    let two = legendre_reciprocity_u64(2, p).as_i8() as f64;
    let a_value = half_sum(p)?.a_value as f64;
    let wiring_error = (a_value - sqrt_p / PI * (2.0 - two) * l_exact).abs();
    Ok(LFunctionRecord {
        p,
        terms,
        h,
        l_exact,
        l_partial,
        tau_magnitude: sqrt_p,
        tolerance,
        within_tolerance: (l_partial - l_exact).abs() <= tolerance,
        wiring_error,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::is_prime;

    fn p(v: u64) -> OddPrime {
        OddPrime::new(v).unwrap()
    }

    /// Every reduced form with `a, c <= p` by exhaustive search.
    fn exhaustive_forms(q: u64) -> Vec<ReducedForm> {
        let q = q as i64;
        let mut out = Vec::new();
        for a in 1..=q {
            for c in a..=q {
                for b in -a + 1..=a {
                    let f = ReducedForm {
                        a: a as u64,
                        b,
                        c: c as u64,
                    };
                    if f.discriminant() == -(q as i128) && f.is_reduced() {
                        out.push(f);
                    }
                }
            }
        }
        out.sort();
        out
    }

    #[test]
    fn forms_examples() {
        assert_eq!(exhaustive_forms(7), vec![ReducedForm { a: 1, b: 1, c: 2 }]);
        assert_eq!(reduced_forms(p(7)).unwrap(), exhaustive_forms(7));
        assert_eq!(
            reduced_forms(p(23)).unwrap(),
            vec![
                ReducedForm { a: 1, b: 1, c: 6 },
                ReducedForm { a: 2, b: -1, c: 3 },
                ReducedForm { a: 2, b: 1, c: 3 },
            ]
        );
        assert_eq!(exhaustive_forms(163).len(), 1);
        assert_eq!(reduced_forms_count(p(163)).unwrap(), 1);
    }

    #[test]
    fn forms_match_exhaustive_search() {
        for q in (7..200u64).filter(|&n| n % 4 == 3 && is_prime(n)) {
            assert_eq!(reduced_forms(p(q)).unwrap(), exhaustive_forms(q), "p = {q}");
        }
    }

    #[test]
    fn tie_rules() {
        assert!(!ReducedForm { a: 2, b: -2, c: 3 }.is_reduced());
        assert!(ReducedForm { a: 2, b: 2, c: 3 }.is_reduced());
        assert!(!ReducedForm { a: 3, b: -1, c: 3 }.is_reduced());
        assert!(ReducedForm { a: 3, b: 1, c: 3 }.is_reduced());
        assert!(!ReducedForm { a: 4, b: 1, c: 3 }.is_reduced());
    }

    #[test]
    fn character_sum_examples() {
        // 1 + 2 - 3 + 4 - 5 - 6 = -7
        assert_eq!(class_number_character_sum(p(7)).unwrap(), 1);
        assert_eq!(class_number_character_sum(p(11)).unwrap(), 1);
        assert_eq!(class_number_character_sum(p(47)).unwrap(), 5);
        assert_eq!(reduced_forms_count(p(47)).unwrap(), 5);
    }

    #[test]
    fn excluded_inputs() {
        assert!(matches!(reduced_forms_count(p(3)), Err(Error::Domain(_))));
        assert!(matches!(class_number_character_sum(p(13)), Err(Error::Domain(_))));
        assert!(matches!(identity_check(p(5)), Err(Error::Domain(_))));
        assert!(matches!(l_value_estimate(p(3), 100_000), Err(Error::Domain(_))));
        assert!(matches!(l_value_estimate(p(11), 10), Err(Error::Domain(_))));
    }

    #[test]
    fn identity_examples() {
        let r = identity_check(p(11)).unwrap();
        assert_eq!((r.identity_lhs, r.h_forms, r.identity_rhs), (3, 1, 3));
        let r = identity_check(p(23)).unwrap();
        assert_eq!((r.identity_lhs, r.h_forms, r.identity_rhs), (3, 3, 3));
        let r = identity_check(p(47)).unwrap();
        assert_eq!((r.identity_lhs, r.h_forms, r.identity_rhs), (5, 5, 5));
    }

    #[test]
    fn identity_and_positivity_up_to_two_thousand() {
        for q in (7..2_000u64).filter(|&n| n % 4 == 3 && is_prime(n)) {
            let r = identity_check(p(q)).unwrap();
            let factor = 2 - legendre_reciprocity_u64(2, p(q)).as_i8() as i64;
            assert!(factor == 1 || factor == 3);
            assert!(r.h_forms >= 1);
            assert!(r.identity_rhs > 0);
        }
    }

    #[test]
    fn l_value_examples() {
        let r = l_value_estimate(p(7), 100_000).unwrap();
        assert!((r.l_exact - PI / 7f64.sqrt()).abs() < 1e-15);
        assert!((r.l_exact - 1.1874).abs() < 1e-4);
        assert!(r.within_tolerance);
        let r = l_value_estimate(p(11), 100_000).unwrap();
        assert!((r.l_exact - 0.9472).abs() < 1e-4);
        assert!(r.wiring_error < 1e-9);
        assert!((r.tau_magnitude - 11f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn l_partial_error_shrinks_with_more_terms() {
        let primes = [7u64, 11, 19, 23, 31, 43, 47, 59, 67, 71, 79, 83];
        let mean = |mult: u64| {
            primes
                .iter()
                .map(|&q| {
                    let r = l_value_estimate(p(q), mult * q).unwrap();
                    (r.l_partial - r.l_exact).abs()
                })
                .sum::<f64>()
                / primes.len() as f64
        };
        assert!(mean(100) < mean(1));
    }
}
