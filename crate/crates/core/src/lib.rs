//! Square roots in `F_p` and `Z_{p^k}^*` by top-down exponent descent.
//!
//! The descent starts from `alpha^((p-1)/2) = 1` and halves the exponent of
//! `alpha` one level at a time. Whenever the running product evaluates to `-1`
//! it is multiplied by a witness power that is also `-1`, so the product stays
//! `1` until the exponent of `alpha` becomes odd and the root can be read off.
//! A strict quadratic non-residue always works as the witness; so does any
//! element whose [`FValue`] exceeds that of `alpha` (a relative non-residue).
//!
//! Tonelli-Shanks, the direct `p = 3 (mod 4)` formula and a brute-force
//! scanner are provided alongside for comparison and cross-checking.
//!
//! The crate is `no_std` and only needs `alloc`.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod modmath;
pub mod residue;
pub mod sqrt;

use num_bigint::BigUint;

pub use modmath::{
    decompose_two_adic, euler_classify, euler_classify_pk, is_probable_prime, mod_pow,
    reduce_signed, OddPrimeField, PrimePowerGroup, Residuosity, UnitGroup,
};
pub use residue::{
    exhaustive_relative_witness_ratio, f_census, f_value, find_relative_witness,
    find_strict_witness, relative_witness_probability, FCensus, FValue, RelativeWitness,
    SearchStrategy, Witness, WitnessKind, WitnessSearch,
};
pub use sqrt::{
    brute_sqrt, enumerate_solution_set, sqrt_direct_3mod4, sqrt_mod_two, sqrt_proposed,
    sqrt_proposed_pk, sqrt_proposed_with, sqrt_tonelli_shanks, Descent, FixedWitness,
    LazyRelativeWitness, PowerTable, SolutionSet, SqrtOutcome, SquareTable, WitnessProvider,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("{0} is not an odd prime")]
    NotOddPrime(BigUint),
    #[error("{0} is not a positive even integer")]
    NotPositiveEven(BigUint),
    #[error("prime power exponent must be at least 1")]
    ZeroExponent,
    #[error("{element} is not a unit modulo {modulus}")]
    NotAUnit { element: BigUint, modulus: BigUint },
    #[error("f-value is undefined for 0")]
    ZeroElement,
    #[error("Euler's criterion gave neither 1 nor -1: {0} is composite")]
    CompositeModulus(BigUint),
    #[error("no witness found after {0} attempts")]
    WitnessNotFound(u32),
    #[error("{what} {value} exceeds guard {limit}")]
    GuardExceeded {
        what: &'static str,
        value: BigUint,
        limit: u64,
    },
    #[error("witness {witness} has f-value {witness_f}, not above f(alpha) = {target_f}")]
    WitnessNotRelative {
        witness: BigUint,
        witness_f: FValue,
        target_f: FValue,
    },
    #[error("{0} is not a strict quadratic non-residue")]
    NotStrictWitness(BigUint),
    #[error("{0} is not a quadratic residue")]
    NotAResidue(BigUint),
    #[error("direct formula needs p = 3 (mod 4), got {0}")]
    WrongPrimeClass(BigUint),
    #[error("Tonelli-Shanks stalled at M = {0}")]
    TonelliStall(u32),
    #[error("descent certificate failed: {0}")]
    CertificateFailed(&'static str),
}
