//! Chern numbers, classification and cusp form dimensions of the smooth
//! compactification of `Y(a) = Gamma_K(a) \ B`.
//!
//! With `I = [Gamma_K : Gamma_K(a)]`:
//!
//! * `c2  = I * delta_K * B_{3,chi_D} / 48`
//! * `tt  = -I * h_K * eta_K / theta^2` (self-intersection of the cusp divisor)
//! * `c1^2 = 3 c2 + tt`
//!
//! All of these are exact; `pi` cancels through the functional equation.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::arith::{format_rational, rational_to_f64};
use crate::bernoulli::{b3, class_number};
use crate::congruence::global_index;
use crate::error::{Error, Result};
use crate::ideals::{FactoredIdeal, NeatStatus};
use crate::quadfield::QuadraticField;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ClassificationVerdict {
    GeneralType,
    /// `D = -7` with a ramified factor, where `c1^2 <= 9`.
    PossibleException,
    NotCertifiedNeat,
    Undetermined,
}

impl ClassificationVerdict {
    pub fn as_str(self) -> &'static str {
        match self {
            ClassificationVerdict::GeneralType => "GeneralType",
            ClassificationVerdict::PossibleException => "PossibleException",
            ClassificationVerdict::NotCertifiedNeat => "NotCertifiedNeat",
            ClassificationVerdict::Undetermined => "Undetermined",
        }
    }
}

impl fmt::Display for ClassificationVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SurfaceInvariants {
    pub field: QuadraticField,
    pub ideal: FactoredIdeal,
    pub norm: u64,
    pub index: BigUint,
    /// Euler number of the compactification.
    pub c2: BigRational,
    /// Self-intersection of the compactification divisor.
    pub tt: BigRational,
    pub c1sq: BigRational,
    /// `(c1^2 + c2) / 12`.
    pub chi_holo: BigRational,
    pub ratio: f64,
    pub theta: u64,
    pub neat: NeatStatus,
    pub verdict: ClassificationVerdict,
}

fn big(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// `c2(Y(1)) = delta_K * B_{3,chi_D} / 48`.
pub fn euler_number_full_group(field: &QuadraticField) -> BigRational {
    field.delta() * b3(field) / big(48)
}

/// `h_K * eta_K / theta^2`, the cusp contribution per unit of index.
fn cusp_term(field: &QuadraticField, theta: u64) -> Result<BigRational> {
    let h = class_number(field)?;
    Ok(field.eta() * big(h as i64) / BigRational::from_integer(BigInt::from(theta).pow(2)))
}

pub fn compute_invariants(
    field: &QuadraticField,
    ideal: &FactoredIdeal,
) -> Result<SurfaceInvariants> {
    if ideal.field() != field {
        return Err(Error::FieldMismatch(field.disc(), ideal.field().disc()));
    }
    let index = global_index(field, ideal)?;
    let hnf = ideal.reconstruct()?;
    let theta = hnf.theta();
    let neat = hnf.neat_status();

    let index_q = BigRational::from_integer(BigInt::from(index.clone()));
    let c2 = &index_q * euler_number_full_group(field);
    let tt = -(&index_q * cusp_term(field, theta)?);
    let c1sq = &c2 * big(3) + &tt;
    let chi_holo = (&c1sq + &c2) / big(12);
    let ratio = rational_to_f64(&(&c1sq / &c2));

    let mut inv = SurfaceInvariants {
        field: *field,
        ideal: ideal.clone(),
        norm: hnf.norm(),
        index,
        c2,
        tt,
        c1sq,
        chi_holo,
        ratio,
        theta,
        neat,
        verdict: ClassificationVerdict::Undetermined,
    };
    inv.verdict = classify(&inv);
    Ok(inv)
}

pub fn classify(inv: &SurfaceInvariants) -> ClassificationVerdict {
    if inv.neat != NeatStatus::NeatCertified {
        return ClassificationVerdict::NotCertifiedNeat;
    }
    if inv.c1sq > big(9) {
        ClassificationVerdict::GeneralType
    } else if inv.field.disc() == -7 && inv.ideal.has_ramified_factor() {
        ClassificationVerdict::PossibleException
    } else {
        ClassificationVerdict::Undetermined
    }
}

/// `3 delta_K B_{3,chi_D} / 48 - h_K eta_K / theta_P^2 >= 1` for a prime power `P^e`.
pub fn general_type_inequality(field: &QuadraticField, ideal: &FactoredIdeal) -> Result<bool> {
    if ideal.factors().len() != 1 {
        return Err(Error::NotPrimePower(ideal.factors().len()));
    }
    let theta = ideal.reconstruct()?.theta();
    let lhs = euler_number_full_group(field) * big(3) - cusp_term(field, theta)?;
    Ok(lhs >= big(1))
}

/// `|D|^{5/2} > (16 pi^4 / (3 sqrt 6)) (2 + |D|)`, compared in double
/// precision with relative tolerance `1e-12`.
pub fn discriminant_bound_check(abs_disc: u64) -> bool {
    let d = abs_disc as f64;
    let lhs = d.powf(2.5);
    let rhs = 16.0 * std::f64::consts::PI.powi(4) / (3.0 * 6f64.sqrt()) * (2.0 + d);
    lhs - rhs > 1e-12 * rhs
}

pub fn chern_ratio(inv: &SurfaceInvariants) -> Result<f64> {
    if inv.c2.is_zero() {
        return Err(Error::DivisionByZero("c2 = 0"));
    }
    Ok(rational_to_f64(&(&inv.c1sq / &inv.c2)))
}

fn check_weight(k: i64) -> Result<()> {
    if k < 2 {
        return Err(Error::WeightTooSmall(k));
    }
    Ok(())
}

fn as_dimension(k: i64, q: BigRational) -> Result<BigUint> {
    if !q.is_integer() || q.is_negative() {
        return Err(Error::NonIntegralDimension {
            k,
            value: format_rational(&q),
        });
    }
    Ok(q.to_integer().to_biguint().expect("nonnegative"))
}

/// `dim S_k(Gamma_K(a)) = (I/6) { (9k(k-1)+2) delta_K B_{3,chi_D}/48 - h_K eta_K / (2 theta^2) }`.
///
/// Requires a neat-certified ideal and `k >= 2`. A non-integral value is
/// reported, never rounded.
pub fn cusp_form_dimension(
    field: &QuadraticField,
    ideal: &FactoredIdeal,
    k: i64,
) -> Result<BigUint> {
    check_weight(k)?;
    let hnf = ideal.reconstruct()?;
    if hnf.neat_status() != NeatStatus::NeatCertified {
        return Err(Error::NotNeat);
    }
    let index = BigRational::from_integer(BigInt::from(global_index(field, ideal)?));
    let weight = big(9 * k * (k - 1) + 2);
    let bracket = weight * euler_number_full_group(field) - cusp_term(field, hnf.theta())? / big(2);
    as_dimension(k, index / big(6) * bracket)
}

/// The same dimension assembled from the surface's Chern data:
/// `(9k(k-1)+2)/6 * c2 + tt/12`.
pub fn cusp_form_dimension_from_chern(inv: &SurfaceInvariants, k: i64) -> Result<BigUint> {
    check_weight(k)?;
    if inv.neat != NeatStatus::NeatCertified {
        return Err(Error::NotNeat);
    }
    let q = big(9 * k * (k - 1) + 2) / big(6) * &inv.c2 + &inv.tt / big(12);
    as_dimension(k, q)
}
