//! Imaginary quadratic fields `K = Q(sqrt(-d))`, their field constants and
//! the quadratic character `chi_D`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};

use crate::arith::is_squarefree;
use crate::error::{Error, Result};

/// Shape of the integral basis `[1, w]` of `O_K`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OmegaShape {
    /// `w = sqrt(-d)`, used when `d` is 1 or 2 mod 4.
    SqrtD,
    /// `w = (1 + sqrt(-d)) / 2`, used when `d` is 3 mod 4.
    HalfOnePlusSqrtD,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SplittingType {
    Split,
    Inert,
    Ramified,
}

impl SplittingType {
    /// Residue degree of a prime ideal of this type.
    pub fn residue_degree(self) -> u32 {
        match self {
            SplittingType::Inert => 2,
            SplittingType::Split | SplittingType::Ramified => 1,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            SplittingType::Split => "split",
            SplittingType::Inert => "inert",
            SplittingType::Ramified => "ramified",
        }
    }
}

impl fmt::Display for SplittingType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// An imaginary quadratic field with its constants.
///
/// The class number is not stored here; [`crate::bernoulli::class_number`]
/// computes and memoizes it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct QuadraticField {
    d: u64,
    disc: i64,
    omega: OmegaShape,
    mu: u32,
    eta: Rational64,
    delta: Rational64,
}

impl QuadraticField {
    /// Builds `Q(sqrt(-d))`. `d` must be squarefree; it is never reduced.
    pub fn new(d: u64) -> Result<Self> {
        if d == 0 {
            return Err(Error::InvalidField(d));
        }
        if !is_squarefree(d) {
            return Err(Error::NotSquarefree(d));
        }
        let (disc, omega) = if d % 4 == 3 {
            (-(d as i64), OmegaShape::HalfOnePlusSqrtD)
        } else {
            (-4 * d as i64, OmegaShape::SqrtD)
        };
        let mu = match disc {
            -3 => 6,
            -4 => 4,
            _ => 2,
        };
        let eta = match disc {
            -4 => Rational64::from_integer(1),
            -3 => Rational64::new(1, 6),
            _ if disc.rem_euclid(4) == 0 => Rational64::from_integer(2),
            _ => Rational64::new(1, 2),
        };
        let delta = if d == 3 {
            Rational64::new(1, 3)
        } else {
            Rational64::from_integer(1)
        };
        Ok(QuadraticField {
            d,
            disc,
            omega,
            mu,
            eta,
            delta,
        })
    }

    pub fn d(&self) -> u64 {
        self.d
    }

    /// The discriminant `D < 0`.
    pub fn disc(&self) -> i64 {
        self.disc
    }

    pub fn abs_disc(&self) -> u64 {
        self.disc.unsigned_abs()
    }

    pub fn omega_shape(&self) -> OmegaShape {
        self.omega
    }

    /// Number of roots of unity in `K`.
    pub fn mu(&self) -> u32 {
        self.mu
    }

    pub fn eta(&self) -> BigRational {
        to_big(self.eta)
    }

    pub fn delta(&self) -> BigRational {
        to_big(self.delta)
    }

    /// `(t, n)` with `w^2 = t*w - n`.
    pub fn omega_poly(&self) -> (i64, i64) {
        match self.omega {
            OmegaShape::SqrtD => (0, self.d as i64),
            OmegaShape::HalfOnePlusSqrtD => (1, (1 + self.d as i64) / 4),
        }
    }

    /// `sqrt(-d)` in the basis `[1, w]`.
    pub fn sqrt_minus_d(&self) -> (i64, i64) {
        match self.omega {
            OmegaShape::SqrtD => (0, 1),
            OmegaShape::HalfOnePlusSqrtD => (-1, 2),
        }
    }

    /// The Kronecker symbol `(D/m)`.
    pub fn chi(&self, m: i64) -> i8 {
        kronecker(self.disc, m)
    }

    /// Decomposition type of the rational prime `p`, read off `chi_D(p)`.
    pub fn splitting_type(&self, p: u64) -> SplittingType {
        match self.chi(p as i64) {
            1 => SplittingType::Split,
            -1 => SplittingType::Inert,
            _ => SplittingType::Ramified,
        }
    }

    /// Roots in `[0, p)` of the minimal polynomial of `w` modulo `p`, ascending.
    pub fn omega_roots_mod(&self, p: u64) -> Vec<u64> {
        let (t, n) = self.omega_poly();
        let p128 = p as i128;
        let t = (t as i128).rem_euclid(p128);
        let n = (n as i128).rem_euclid(p128);
        (0..p)
            .filter(|&x| {
                let x = x as i128;
                (x * x - t * x + n).rem_euclid(p128) == 0
            })
            .collect()
    }
}

impl fmt::Display for QuadraticField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q(sqrt(-{}))", self.d)
    }
}

fn to_big(q: Rational64) -> BigRational {
    BigRational::new(BigInt::from(*q.numer()), BigInt::from(*q.denom()))
}

/// Kronecker symbol `(a/n)` for arbitrary integers.
///
/// At 2: `(a/2) = 0` for even `a`, `+1` for `a = +-1 mod 8`, `-1` for
/// `a = +-3 mod 8`. At -1: the sign of `a`.
pub fn kronecker(a: i64, n: i64) -> i8 {
    if n == 0 {
        return if a == 1 || a == -1 { 1 } else { 0 };
    }
    let mut result: i8 = 1;
    let mut n = n as i128;
    let a = a as i128;
    if n < 0 {
        n = -n;
        if a < 0 {
            result = -result;
        }
    }
    let twos = n.trailing_zeros();
    if twos > 0 {
        if a % 2 == 0 {
            return 0;
        }
        n >>= twos;
        if twos % 2 == 1 && matches!(a.rem_euclid(8), 3 | 5) {
            result = -result;
        }
    }
    result * jacobi(a.rem_euclid(n), n)
}

/// Jacobi symbol `(a/n)` for odd positive `n` and `0 <= a < n`.
fn jacobi(mut a: i128, mut n: i128) -> i8 {
    debug_assert!(n > 0 && n % 2 == 1);
    let mut result: i8 = 1;
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            if matches!(n % 8, 3 | 5) {
                result = -result;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            result = -result;
        }
        a %= n;
    }
    if n == 1 {
        result
    } else {
        0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{is_prime, primes_up_to, rational};

    fn field(d: u64) -> QuadraticField {
        QuadraticField::new(d).unwrap()
    }

    #[test]
    fn make_field_examples() {
        let k = field(3);
        assert_eq!(k.disc(), -3);
        assert_eq!(k.omega_shape(), OmegaShape::HalfOnePlusSqrtD);
        assert_eq!(
            (k.mu(), k.eta(), k.delta()),
            (6, rational(1, 6), rational(1, 3))
        );

        let k = field(1);
        assert_eq!(k.disc(), -4);
        assert_eq!(k.omega_shape(), OmegaShape::SqrtD);
        assert_eq!(
            (k.mu(), k.eta(), k.delta()),
            (4, rational(1, 1), rational(1, 1))
        );

        let k = field(2);
        assert_eq!(k.disc(), -8);
        assert_eq!(
            (k.mu(), k.eta(), k.delta()),
            (2, rational(2, 1), rational(1, 1))
        );

        assert_eq!(QuadraticField::new(12), Err(Error::NotSquarefree(12)));
        assert_eq!(QuadraticField::new(0), Err(Error::InvalidField(0)));
    }

    #[test]
    fn constants_table() {
        // (|D|, eta, delta, mu)
        let table = [
            (3, (1, 6), (1, 3), 6),
            (4, (1, 1), (1, 1), 4),
            (7, (1, 2), (1, 1), 2),
            (8, (2, 1), (1, 1), 2),
            (11, (1, 2), (1, 1), 2),
            (15, (1, 2), (1, 1), 2),
            (19, (1, 2), (1, 1), 2),
            (20, (2, 1), (1, 1), 2),
            (23, (1, 2), (1, 1), 2),
            (24, (2, 1), (1, 1), 2),
            (31, (1, 2), (1, 1), 2),
            (35, (1, 2), (1, 1), 2),
        ];
        for (abs_d, eta, delta, mu) in table {
            let d = if abs_d % 4 == 0 { abs_d / 4 } else { abs_d };
            let k = field(d);
            assert_eq!(k.abs_disc(), abs_d);
            assert_eq!(k.eta(), rational(eta.0, eta.1), "eta at |D|={abs_d}");
            assert_eq!(k.delta(), rational(delta.0, delta.1));
            assert_eq!(k.mu(), mu);
        }
    }

    #[test]
    fn chi_examples() {
        assert_eq!(field(1).chi(2), 0);
        assert_eq!(field(7).chi(2), 1);
        assert_eq!(field(3).chi(5), -1);
        assert_eq!(field(7).chi(-1), -1);
        assert_eq!(field(7).chi(0), 0);
    }

    #[test]
    fn splitting_examples() {
        assert_eq!(field(7).splitting_type(2), SplittingType::Split);
        assert_eq!(field(3).splitting_type(3), SplittingType::Ramified);
        assert_eq!(field(3).splitting_type(5), SplittingType::Inert);
        // x^2 - x + 2 = x(x+1) mod 2
        assert_eq!(field(7).omega_roots_mod(2), vec![0, 1]);
    }

    fn fundamental_discs_up_to(n: u64) -> Vec<QuadraticField> {
        (1..=n)
            .filter(|&d| is_squarefree(d))
            .map(field)
            .filter(|k| k.abs_disc() <= n)
            .collect()
    }

    fn pow_mod(b: i64, mut e: u64, m: i64) -> i64 {
        let mut r = 1i64;
        let mut b = b.rem_euclid(m);
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % m;
            }
            b = b * b % m;
            e >>= 1;
        }
        r
    }

    #[test]
    fn euler_criterion_oracle() {
        for k in fundamental_discs_up_to(40) {
            for p in primes_up_to(200).into_iter().filter(|&p| p > 2) {
                let p = p as i64;
                if k.disc() % p == 0 {
                    assert_eq!(k.chi(p), 0);
                    continue;
                }
                let c = k.chi(p);
                assert!(c == 1 || c == -1);
                let euler = pow_mod(k.disc(), (p as u64 - 1) / 2, p);
                let expected = if c == 1 { 1 } else { p - 1 };
                assert_eq!(euler, expected, "D={} p={p}", k.disc());
                // exhaustive squares
                let is_square = (1..p).any(|x| (x * x - k.disc()).rem_euclid(p) == 0);
                assert_eq!(is_square, c == 1);
            }
        }
    }

    #[test]
    fn chi_completely_multiplicative() {
        for k in fundamental_discs_up_to(40) {
            for m1 in -50i64..=50 {
                for m2 in -50i64..=50 {
                    assert_eq!(
                        k.chi(m1 * m2),
                        k.chi(m1) * k.chi(m2),
                        "D={} {m1} {m2}",
                        k.disc()
                    );
                }
            }
        }
    }

    #[test]
    fn chi_periodic() {
        for k in fundamental_discs_up_to(40) {
            let f = k.abs_disc() as i64;
            for m in 1..200 {
                assert_eq!(k.chi(m), k.chi(m + f));
            }
        }
    }

    #[test]
    fn ramified_exactly_at_divisors_of_disc() {
        for k in fundamental_discs_up_to(40) {
            for p in (2..=100u64).filter(|&p| is_prime(p)) {
                let ramified = k.splitting_type(p) == SplittingType::Ramified;
                assert_eq!(ramified, k.disc() % p as i64 == 0);
                let roots = k.omega_roots_mod(p).len();
                let expected = match k.splitting_type(p) {
                    SplittingType::Split => 2,
                    SplittingType::Inert => 0,
                    SplittingType::Ramified => 1,
                };
                assert_eq!(roots, expected, "D={} p={p}", k.disc());
            }
        }
    }
}
