//! Bernoulli numbers and polynomials, generalized Bernoulli numbers
//! `B_{n,chi_D}`, class numbers and `L(3, chi_D)`.
//!
//! Everything here is exact except [`LValue::float_value`].

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::binomial;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::{format_rational, rational_to_f64};
use crate::error::{Error, Result};
use crate::quadfield::QuadraticField;

/// Largest index served by [`bernoulli_number`].
pub const MAX_BERNOULLI_INDEX: usize = 64;
/// Largest degree served by [`bernoulli_poly`] and [`generalized_bernoulli`].
pub const MAX_POLY_DEGREE: usize = 16;

/// `zeta(3)`, used only for the float bound on `L(3, chi_D)`.
pub const ZETA_3: f64 = 1.202_056_903_159_594_3;

fn bernoulli_table() -> &'static [BigRational] {
    static TABLE: OnceLock<Vec<BigRational>> = OnceLock::new();
    TABLE.get_or_init(|| {
        // sum_{j=0}^{m} C(m+1, j) B_j = 0 for m >= 1
        let mut b: Vec<BigRational> = Vec::with_capacity(MAX_BERNOULLI_INDEX + 1);
        b.push(BigRational::one());
        for m in 1..=MAX_BERNOULLI_INDEX {
            let s = (0..m).fold(BigRational::zero(), |acc, j| {
                acc + &b[j] * BigInt::from(binomial(m as u64 + 1, j as u64))
            });
            b.push(-s / BigInt::from(m + 1));
        }
        b
    })
}

/// `B_k` with the convention `B_1 = -1/2`.
///
/// Panics if `k > MAX_BERNOULLI_INDEX`.
pub fn bernoulli_number(k: usize) -> BigRational {
    assert!(
        k <= MAX_BERNOULLI_INDEX,
        "Bernoulli index {k} above {MAX_BERNOULLI_INDEX}"
    );
    bernoulli_table()[k].clone()
}

/// `B_n(X) = sum_k C(n,k) B_k X^{n-k}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BernoulliPolynomial {
    n: usize,
    /// `coefficients[i]` multiplies `X^i`.
    coefficients: Vec<BigRational>,
}

impl BernoulliPolynomial {
    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn coefficients(&self) -> &[BigRational] {
        &self.coefficients
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coefficients
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + c)
    }
}

pub fn bernoulli_poly(n: usize) -> BernoulliPolynomial {
    assert!(
        n <= MAX_POLY_DEGREE,
        "Bernoulli polynomial degree {n} above {MAX_POLY_DEGREE}"
    );
    let mut coefficients = vec![BigRational::zero(); n + 1];
    for k in 0..=n {
        coefficients[n - k] = bernoulli_number(k) * BigInt::from(binomial(n as u64, k as u64));
    }
    BernoulliPolynomial { n, coefficients }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneralizedBernoulli {
    pub n: usize,
    pub disc: i64,
    pub value: BigRational,
}

/// `B_{n,chi_D} = |D|^{n-1} sum_{k=1}^{|D|} chi_D(k) B_n(k/|D|)`.
pub fn generalized_bernoulli(field: &QuadraticField, n: usize) -> GeneralizedBernoulli {
    let poly = bernoulli_poly(n);
    let f = field.abs_disc();
    let big_f = BigInt::from(f);
    let sum = (1..=f).fold(BigRational::zero(), |acc, k| match field.chi(k as i64) {
        0 => acc,
        c => {
            let term = poly.eval(&BigRational::new(BigInt::from(k), big_f.clone()));
            if c > 0 {
                acc + term
            } else {
                acc - term
            }
        }
    });
    let scale = num_traits::pow(big_f, n - 1);
    GeneralizedBernoulli {
        n,
        disc: field.disc(),
        value: sum * scale,
    }
}

/// `B_{3,chi_D}`, memoized per discriminant.
pub fn b3(field: &QuadraticField) -> BigRational {
    static MEMO: OnceLock<Mutex<HashMap<i64, BigRational>>> = OnceLock::new();
    let memo = MEMO.get_or_init(Default::default);
    if let Some(v) = memo.lock().unwrap().get(&field.disc()) {
        return v.clone();
    }
    let v = generalized_bernoulli(field, 3).value;
    memo.lock().unwrap().insert(field.disc(), v.clone());
    v
}

/// `h_K = -(mu_K / 2) B_{1,chi_D}`, memoized per discriminant.
pub fn class_number(field: &QuadraticField) -> Result<u64> {
    static MEMO: OnceLock<Mutex<HashMap<i64, u64>>> = OnceLock::new();
    let memo = MEMO.get_or_init(Default::default);
    if let Some(&h) = memo.lock().unwrap().get(&field.disc()) {
        return Ok(h);
    }
    let b1 = generalized_bernoulli(field, 1).value;
    let h = -b1 * BigInt::from(field.mu()) / BigInt::from(2);
    let value = h
        .is_integer()
        .then(|| h.to_integer())
        .filter(|v| v.is_positive())
        .and_then(|v| v.to_u64())
        .ok_or_else(|| Error::NonIntegralClassNumber(format_rational(&h)))?;
    memo.lock().unwrap().insert(field.disc(), value);
    Ok(value)
}

/// `L(3, chi_D) = exact_part * pi^3 / |D|^{5/2}`.
#[derive(Clone, Debug, PartialEq)]
pub struct LValue {
    pub disc: i64,
    pub exact_part: BigRational,
    pub float_value: f64,
}

pub fn l_value_3(field: &QuadraticField) -> LValue {
    let exact_part = b3(field) * BigRational::new(2.into(), 3.into());
    let abs_d = field.abs_disc() as f64;
    let float_value = rational_to_f64(&exact_part) * std::f64::consts::PI.powi(3) / abs_d.powf(2.5);
    LValue {
        disc: field.disc(),
        exact_part,
        float_value,
    }
}
