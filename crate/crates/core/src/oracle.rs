//! Brute-force verifiers for the closed formulas.
//!
//! Nothing here calls into the index, Bernoulli or ideal-membership code it
//! is meant to check.

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::ideals::{Element, Ideal};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumerationBudget {
    pub max_elements: u128,
}

impl Default for EnumerationBudget {
    fn default() -> Self {
        EnumerationBudget {
            max_elements: 10_000_000,
        }
    }
}

impl EnumerationBudget {
    pub fn new(max_elements: u128) -> Self {
        EnumerationBudget { max_elements }
    }

    fn check(&self, needed: u128) -> Result<()> {
        if needed > self.max_elements {
            return Err(Error::BudgetExceeded {
                needed,
                budget: self.max_elements,
            });
        }
        Ok(())
    }
}

/// How a reference value was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Provenance {
    Enumerated,
    /// Taken from the classical order formula; not an independent check.
    FormulaReference,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupOrder {
    pub value: BigUint,
    pub provenance: Provenance,
}

/// `|SL_3(Z/p^n)|` by enumerating all `p^{9n}` matrices.
pub fn sl3_order(p: u64, n: u32, budget: EnumerationBudget, exec: Execution) -> Result<BigUint> {
    let m = p.pow(n);
    budget.check((m as u128).pow(9))?;
    let m3 = m * m * m;
    // outer: rows 2 and 3; inner: row 1 against their cofactors
    let count = exec.sum_range(m3 * m3, |idx| {
        let r2 = [idx % m, idx / m % m, idx / (m * m) % m];
        let r3 = [idx / m3 % m, idx / (m3 * m) % m, idx / (m3 * m * m) % m];
        let cof = |j: usize, k: usize| (r2[j] * r3[k] + m * m - r2[k] * r3[j] % m) % m;
        let c = [cof(1, 2), cof(2, 0), cof(0, 1)];
        let mut hits = 0;
        for a0 in 0..m {
            for a1 in 0..m {
                for a2 in 0..m {
                    if (a0 * c[0] + a1 * c[1] + a2 * c[2]) % m == 1 {
                        hits += 1;
                    }
                }
            }
        }
        hits
    });
    Ok(BigUint::from(count))
}

// F_4 = {0, 1, a, a+1} encoded as 2-bit integers, a^2 = a + 1.
fn f4_mul(x: u8, y: u8) -> u8 {
    let (x0, x1) = (x & 1, x >> 1);
    let (y0, y1) = (y & 1, y >> 1);
    let c0 = (x0 & y0) ^ (x1 & y1);
    let c1 = (x0 & y1) ^ (x1 & y0) ^ (x1 & y1);
    c0 | (c1 << 1)
}

fn f4_conj(x: u8) -> u8 {
    f4_mul(x, x)
}

/// `|SU_3(F_{p^2}/F_p)|` for the standard hermitian form. Enumerated for
/// `p = 2` (`4^9` matrices); for odd `p` the classical order formula is
/// returned and marked as a reference value.
pub fn su3_order_inert(p: u64, budget: EnumerationBudget, exec: Execution) -> Result<GroupOrder> {
    if p != 2 {
        let value = BigUint::from(p).pow(3)
            * (BigUint::from(p).pow(3) + 1u32)
            * (BigUint::from(p).pow(2) - 1u32);
        return Ok(GroupOrder {
            value,
            provenance: Provenance::FormulaReference,
        });
    }
    budget.check(4u128.pow(9))?;
    let count = exec.sum_range(4u64.pow(9), |idx| {
        let mut g = [[0u8; 3]; 3];
        for (k, entry) in g.iter_mut().flatten().enumerate() {
            *entry = ((idx >> (2 * k)) & 3) as u8;
        }
        // g * conj(g)^T == 1
        for i in 0..3 {
            for j in 0..3 {
                let s = (0..3).fold(0u8, |acc, k| acc ^ f4_mul(g[i][k], f4_conj(g[j][k])));
                if s != u8::from(i == j) {
                    return 0;
                }
            }
        }
        let det = f4_mul(g[0][0], f4_mul(g[1][1], g[2][2]) ^ f4_mul(g[1][2], g[2][1]))
            ^ f4_mul(g[0][1], f4_mul(g[1][0], g[2][2]) ^ f4_mul(g[1][2], g[2][0]))
            ^ f4_mul(g[0][2], f4_mul(g[1][0], g[2][1]) ^ f4_mul(g[1][1], g[2][0]));
        u64::from(det == 1)
    });
    Ok(GroupOrder {
        value: BigUint::from(count),
        provenance: Provenance::Enumerated,
    })
}

/// Number of symmetric trace-zero 3x3 matrices over `Z/p`.
pub fn symmetric_tracezero_count(
    p: u64,
    budget: EnumerationBudget,
    exec: Execution,
) -> Result<BigUint> {
    budget.check((p as u128).pow(6))?;
    let count = exec.sum_range(p.pow(6), |idx| {
        let diag = [idx % p, idx / p % p, idx / (p * p) % p];
        u64::from((diag[0] + diag[1] + diag[2]).is_multiple_of(p))
    });
    Ok(BigUint::from(count))
}

fn gcd(mut a: i64, mut b: i64) -> i64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a.abs()
}

/// Number of reduced primitive positive definite forms `(a, b, c)` with
/// `b^2 - 4ac = disc`.
pub fn class_number_forms(disc: i64) -> u64 {
    assert!(
        disc < 0 && disc.rem_euclid(4) <= 1,
        "not a negative discriminant: {disc}"
    );
    let abs = -disc;
    let mut count = 0;
    let mut a = 1i64;
    while 3 * a * a <= abs {
        for b in -a + 1..=a {
            let num = b * b - disc;
            if num % (4 * a) != 0 {
                continue;
            }
            let c = num / (4 * a);
            if c < a || (b < 0 && a == c) || gcd(gcd(a, b), c) != 1 {
                continue;
            }
            count += 1;
        }
        a += 1;
    }
    count
}

/// Whether `x = u + v*w` lies in the lattice `Z*a + Z*(b + c*w)`, by
/// exhaustive search over a box that must contain any solution.
pub fn membership_oracle(ideal: &Ideal, x: Element) -> bool {
    let (a, b, c) = ideal.hnf();
    let (u, v) = x;
    // y*c = v forces |y| <= |v|; then |x*a| <= |u| + |y*b|
    let y_max = v.abs();
    for y in -y_max..=y_max {
        if y * c != v {
            continue;
        }
        let x_max = (u.abs() + (y * b).abs()) / a + 1;
        if (-x_max..=x_max).any(|k| k * a + y * b == u) {
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadfield::QuadraticField;

    const SEQ: Execution = Execution::Sequential;

    #[test]
    fn sl3_examples() {
        let b = EnumerationBudget::default();
        assert_eq!(sl3_order(2, 1, b, SEQ).unwrap(), BigUint::from(168u32));
        assert_eq!(
            sl3_order(3, 1, b, Execution::Parallel).unwrap(),
            BigUint::from(5616u32)
        );
        assert!(matches!(
            sl3_order(3, 2, b, SEQ),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn su3_examples() {
        let b = EnumerationBudget::default();
        let g = su3_order_inert(2, b, Execution::Parallel).unwrap();
        assert_eq!(g.value, BigUint::from(216u32));
        assert_eq!(g.provenance, Provenance::Enumerated);
        let g = su3_order_inert(3, b, SEQ).unwrap();
        assert_eq!(g.value, BigUint::from(6048u32));
        assert_eq!(g.provenance, Provenance::FormulaReference);
        assert_eq!(
            su3_order_inert(5, b, SEQ).unwrap().value,
            BigUint::from(378_000u32)
        );
        assert!(su3_order_inert(2, EnumerationBudget::new(1000), SEQ).is_err());
    }

    #[test]
    fn f4_is_a_field() {
        for x in 1..4u8 {
            assert_eq!((1..4u8).filter(|&y| f4_mul(x, y) == 1).count(), 1);
            assert_eq!(f4_conj(f4_conj(x)), x);
        }
        assert_eq!(f4_mul(2, 2), 3);
    }

    #[test]
    fn symmetric_tracezero_examples() {
        let b = EnumerationBudget::default();
        assert_eq!(
            symmetric_tracezero_count(3, b, SEQ).unwrap(),
            BigUint::from(243u32)
        );
        assert_eq!(
            symmetric_tracezero_count(5, b, SEQ).unwrap(),
            BigUint::from(3125u32)
        );
        assert_eq!(
            symmetric_tracezero_count(7, b, SEQ).unwrap(),
            BigUint::from(16807u32)
        );
    }

    #[test]
    fn class_number_forms_examples() {
        assert_eq!(class_number_forms(-4), 1);
        assert_eq!(class_number_forms(-3), 1);
        assert_eq!(class_number_forms(-23), 3);
        assert_eq!(class_number_forms(-35), 2);
        assert_eq!(class_number_forms(-20), 2);
        assert_eq!(class_number_forms(-163), 1);
    }

    #[test]
    fn membership_examples() {
        let k7 = QuadraticField::new(7).unwrap();
        let s = Ideal::sqrt_minus_d(k7);
        assert!(membership_oracle(&s, (-1, 2)));
        let two = Ideal::rational(k7, 2).unwrap();
        assert!(!membership_oracle(&two, (-1, 2)));
        assert!(membership_oracle(&two, (-2, 4)));
    }
}
