//! Indices `[Gamma_K : Gamma_K(a)]` of principal congruence subgroups.
//!
//! The global index is the product of local indices over the prime
//! factorization of `a`. For a prime power `P^n` over `p` the local index is
//! `p^eps (1 - p^-2)(1 - chi_D(p) p^-3)` with `eps = 8n` when `p` is
//! unramified, and `eps = 4n` (n even) or `4n - 1` (n odd) when ramified.
//! No formula is available when 2 is inert or ramified.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::ideals::{FactoredIdeal, PrimeIdeal};
use crate::quadfield::{QuadraticField, SplittingType};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalIndex {
    pub p: u64,
    pub splitting: SplittingType,
    pub e: u32,
    pub epsilon: u32,
    pub value: BigUint,
}

pub fn epsilon(splitting: SplittingType, n: u32) -> u32 {
    match splitting {
        SplittingType::Split | SplittingType::Inert => 8 * n,
        SplittingType::Ramified if n.is_multiple_of(2) => 4 * n,
        SplittingType::Ramified => 4 * n - 1,
    }
}

fn chi_of(splitting: SplittingType) -> i64 {
    match splitting {
        SplittingType::Split => 1,
        SplittingType::Inert => -1,
        SplittingType::Ramified => 0,
    }
}

/// The closed form evaluated as an exact rational, without the prime-2
/// restriction. Returns the rational so callers can observe that it clears
/// its denominators.
pub fn local_index_rational(p: u64, splitting: SplittingType, n: u32) -> BigRational {
    let p_big = BigInt::from(p);
    let one = BigRational::one();
    let inv = |k: usize| BigRational::new(BigInt::one(), num_traits::pow(p_big.clone(), k));
    let eps = epsilon(splitting, n) as usize;
    BigRational::from_integer(num_traits::pow(p_big.clone(), eps))
        * (&one - inv(2))
        * (&one - inv(3) * BigInt::from(chi_of(splitting)))
}

/// Unchecked closed form as an integer. Used directly by the enumeration
/// cross-checks, which also cover inert 2.
pub fn local_index_formula(p: u64, splitting: SplittingType, n: u32) -> BigUint {
    let q = local_index_rational(p, splitting, n);
    assert!(
        q.is_integer() && q.is_positive(),
        "local index {q} not a positive integer"
    );
    q.to_integer().to_biguint().expect("positive")
}

/// Local index `[G(Z_p) : G(Z_p)(P^n)]`.
pub fn local_index(field: &QuadraticField, prime: &PrimeIdeal, n: u32) -> Result<LocalIndex> {
    let p = prime.p();
    let splitting = prime.splitting();
    if p == 2 && splitting != SplittingType::Split {
        return Err(Error::Prime2NonDecomposed { disc: field.disc() });
    }
    Ok(LocalIndex {
        p,
        splitting,
        e: n,
        epsilon: epsilon(splitting, n),
        value: local_index_formula(p, splitting, n),
    })
}

/// `[Gamma_K : Gamma_K(a)]` as a product of local indices.
pub fn global_index(field: &QuadraticField, ideal: &FactoredIdeal) -> Result<BigUint> {
    ideal
        .factors()
        .iter()
        .try_fold(BigUint::one(), |acc, (prime, e)| {
            Ok(acc * local_index(field, prime, *e)?.value)
        })
}
