//! Exact tools for studying the sign of the half-interval Legendre sum
//!
//! ```text
//! A(p) = sum_{a=1}^{(p-1)/2} (a/p)
//! ```
//!
//! for odd primes `p`. The crate evaluates Legendre symbols two ways, computes
//! `A(p)` two ways, replays a pair-based residue construction that claims
//! `A(p) > 0` for `p = 3 (mod 4)` while auditing every step of it, checks a
//! floor-series identity exactly, and cross-checks `A(p)` against class numbers
//! of `Q(sqrt(-p))` obtained from reduced binary quadratic forms.

pub mod arith;
pub mod charsum;
pub mod classnum;
pub mod construction;
mod error;
pub mod floorlemma;
pub mod primes;
pub mod sweep;

pub use arith::{is_prime, legendre_euler, legendre_reciprocity, mod_pow, OddPrime, SymbolValue};
pub use charsum::{full_sum, half_sum, half_sum_direct, half_sum_sieve, HalfSumRecord, SumMethod};
pub use classnum::{
    class_number_character_sum, identity_check, l_value_estimate, reduced_forms, reduced_forms_count,
    ClassNumberRecord, LFunctionRecord, ReducedForm,
};
pub use construction::{construct, Case, ConstructionReport, FamilyId, FamilyReport, PairWitness, Verdict};
pub use error::{Error, Result};
pub use floorlemma::{floor_half_series, truncation_index, ExactNonNegRational};
pub use primes::{primes_in_range, PrimeStream, ResidueFilter};
pub use sweep::{verify_range, RangeSummary, SweepOptions};
