//! Integral ideals of `O_K` in two-generator Hermite normal form.
//!
//! An ideal is stored as the lattice `Z*a + Z*(b + c*w)` over the integral
//! basis `[1, w]`, with `c | a`, `c | b` and `0 <= b < a`. This form is
//! unique, so equality of ideals is equality of the triples.

mod parse;

use std::cmp::Ordering;
use std::fmt;

use num_integer::Integer;

use crate::arith::{factor_u64, is_prime, TRIAL_DIVISION_BOUND};
use crate::error::{Error, Result};
use crate::quadfield::{QuadraticField, SplittingType};

pub use parse::parse_ideal;

/// An element `u + v*w` of `O_K`.
pub type Element = (i64, i64);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Ideal {
    field: QuadraticField,
    a: i64,
    b: i64,
    c: i64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NeatStatus {
    NeatCertified,
    NotGuaranteed,
}

impl NeatStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            NeatStatus::NeatCertified => "NeatCertified",
            NeatStatus::NotGuaranteed => "NotGuaranteed",
        }
    }
}

impl fmt::Display for NeatStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

fn elem_mul(field: &QuadraticField, x: (i128, i128), y: (i128, i128)) -> (i128, i128) {
    let (t, n) = field.omega_poly();
    let (t, n) = (t as i128, n as i128);
    (
        x.0 * y.0 - n * x.1 * y.1,
        x.0 * y.1 + x.1 * y.0 + t * x.1 * y.1,
    )
}

fn narrow(x: i128) -> Result<i64> {
    i64::try_from(x).map_err(|_| Error::Parse(format!("ideal entry {x} exceeds 64 bits")))
}

impl Ideal {
    pub fn unit(field: QuadraticField) -> Self {
        Ideal {
            field,
            a: 1,
            b: 0,
            c: 1,
        }
    }

    /// Builds an ideal from a Hermite normal form triple, checking that the
    /// lattice is closed under multiplication by `w`.
    pub fn from_hnf(field: QuadraticField, a: i64, b: i64, c: i64) -> Result<Self> {
        if a <= 0 || c <= 0 || b < 0 || b >= a || a % c != 0 || b % c != 0 {
            return Err(Error::Parse(format!(
                "({a}, {b}, {c}) is not in Hermite normal form"
            )));
        }
        let ideal = Ideal { field, a, b, c };
        let w = (0i128, 1i128);
        let closed = [(a as i128, 0), (b as i128, c as i128)]
            .into_iter()
            .all(|g| ideal.contains_wide(elem_mul(&field, g, w)));
        if !closed {
            return Err(Error::Parse(format!(
                "({a}, {b}, {c}) is not an ideal of O_K"
            )));
        }
        Ok(ideal)
    }

    /// Reduces the Z-span of `gens` to Hermite normal form. The span must
    /// already be an `O_K`-module of full rank.
    fn from_lattice(field: QuadraticField, gens: &[(i128, i128)]) -> Result<Self> {
        let mut pivot: Option<(i128, i128)> = None;
        let mut row_gcd: i128 = 0;
        for &g in gens {
            let mut w = g;
            if w.1 != 0 {
                if let Some(mut p) = pivot {
                    while w.1 != 0 {
                        let q = p.1.div_euclid(w.1);
                        p = (p.0 - q * w.0, p.1 - q * w.1);
                        std::mem::swap(&mut p, &mut w);
                    }
                    pivot = Some(p);
                } else {
                    pivot = Some(w);
                    continue;
                }
            }
            row_gcd = row_gcd.gcd(&w.0);
        }
        let Some(mut pivot) = pivot else {
            return Err(Error::ZeroIdeal);
        };
        if row_gcd == 0 {
            return Err(Error::ZeroIdeal);
        }
        if pivot.1 < 0 {
            pivot = (-pivot.0, -pivot.1);
        }
        let a = row_gcd.abs();
        let b = pivot.0.rem_euclid(a);
        let ideal = Ideal {
            field,
            a: narrow(a)?,
            b: narrow(b)?,
            c: narrow(pivot.1)?,
        };
        debug_assert!(ideal.a % ideal.c == 0 && ideal.b % ideal.c == 0);
        Ok(ideal)
    }

    /// The `O_K`-ideal generated by the given elements.
    pub fn from_generators(field: QuadraticField, gens: &[Element]) -> Result<Self> {
        let w = (0i128, 1i128);
        let span: Vec<(i128, i128)> = gens
            .iter()
            .flat_map(|&(u, v)| {
                let g = (u as i128, v as i128);
                [g, elem_mul(&field, g, w)]
            })
            .collect();
        Self::from_lattice(field, &span)
    }

    /// The principal ideal `(u + v*w)`.
    pub fn principal(field: QuadraticField, x: Element) -> Result<Self> {
        if x == (0, 0) {
            return Err(Error::ZeroIdeal);
        }
        Self::from_generators(field, &[x])
    }

    pub fn rational(field: QuadraticField, n: i64) -> Result<Self> {
        Self::principal(field, (n, 0))
    }

    /// `(sqrt(-d))`.
    pub fn sqrt_minus_d(field: QuadraticField) -> Self {
        Self::principal(field, field.sqrt_minus_d()).expect("sqrt(-d) is nonzero")
    }

    pub fn field(&self) -> &QuadraticField {
        &self.field
    }

    /// HNF entries `(a, b, c)`.
    pub fn hnf(&self) -> (i64, i64, i64) {
        (self.a, self.b, self.c)
    }

    pub fn norm(&self) -> u64 {
        (self.a as u64) * (self.c as u64)
    }

    /// Positive generator of `self ∩ Z`.
    pub fn rational_part(&self) -> u64 {
        self.a as u64
    }

    pub fn is_unit(&self) -> bool {
        self.a == 1
    }

    fn contains_wide(&self, x: (i128, i128)) -> bool {
        let (a, b, c) = (self.a as i128, self.b as i128, self.c as i128);
        if x.1 % c != 0 {
            return false;
        }
        let y = x.1 / c;
        (x.0 - y * b) % a == 0
    }

    pub fn contains(&self, x: Element) -> bool {
        self.contains_wide((x.0 as i128, x.1 as i128))
    }

    fn check_field(&self, other: &Ideal) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(self.field.disc(), other.field.disc()));
        }
        Ok(())
    }

    pub fn multiply(&self, other: &Ideal) -> Result<Ideal> {
        self.check_field(other)?;
        let g1 = [(self.a as i128, 0), (self.b as i128, self.c as i128)];
        let g2 = [(other.a as i128, 0), (other.b as i128, other.c as i128)];
        let span: Vec<_> = g1
            .iter()
            .flat_map(|&x| g2.iter().map(move |&y| (x, y)))
            .map(|(x, y)| elem_mul(&self.field, x, y))
            .collect();
        Self::from_lattice(self.field, &span)
    }

    pub fn pow(&self, e: u32) -> Result<Ideal> {
        let mut acc = Ideal::unit(self.field);
        for _ in 0..e {
            acc = acc.multiply(self)?;
        }
        Ok(acc)
    }

    /// `self | other`, i.e. `other ⊆ self`.
    pub fn divides(&self, other: &Ideal) -> Result<bool> {
        self.check_field(other)?;
        Ok(self.contains((other.a, 0)) && self.contains((other.b, other.c)))
    }

    pub fn conjugate(&self) -> Ideal {
        let (t, _) = self.field.omega_poly();
        let conj = |(x, y): Element| (x + t * y, -y);
        Self::from_generators(self.field, &[conj((self.a, 0)), conj((self.b, self.c))])
            .expect("conjugate of a nonzero ideal is nonzero")
    }

    /// Exact quotient by a rational integer dividing every element.
    fn div_integer(&self, m: i64) -> Option<Ideal> {
        (self.a % m == 0 && self.b % m == 0 && self.c % m == 0).then(|| Ideal {
            field: self.field,
            a: self.a / m,
            b: self.b / m,
            c: self.c / m,
        })
    }

    /// `self / prime`, if `prime` divides `self`.
    fn div_prime(&self, prime: &PrimeIdeal) -> Result<Option<Ideal>> {
        let pi = prime.to_ideal(self.field);
        if !pi.divides(self)? {
            return Ok(None);
        }
        let conj = prime.conjugate(&self.field).to_ideal(self.field);
        let prod = self.multiply(&conj)?;
        Ok(prod.div_integer(prime.norm() as i64))
    }

    /// `theta = min { n >= 1 : n*sqrt(-d) ∈ self }`, found by a linear scan.
    pub fn theta(&self) -> u64 {
        let (s0, s1) = self.field.sqrt_minus_d();
        (1..=self.norm())
            .find(|&n| {
                let n = n as i128;
                self.contains_wide((n * s0 as i128, n * s1 as i128))
            })
            .expect("N(a) * sqrt(-d) always lies in a")
    }

    pub fn neat_status(&self) -> NeatStatus {
        if self.norm() > 3 && self.rational_part() % 2 == 1 {
            NeatStatus::NeatCertified
        } else {
            NeatStatus::NotGuaranteed
        }
    }

    pub fn factorize(&self) -> Result<FactoredIdeal> {
        let mut rest = *self;
        let mut factors = Vec::new();
        for (q, _) in factor_u64(self.norm(), TRIAL_DIVISION_BOUND)? {
            for prime in PrimeIdeal::above(&self.field, q) {
                let mut e = 0;
                while let Some(next) = rest.div_prime(&prime)? {
                    rest = next;
                    e += 1;
                }
                if e > 0 {
                    factors.push((prime, e));
                }
            }
        }
        debug_assert!(rest.is_unit(), "factorization left {rest:?}");
        Ok(FactoredIdeal::new(self.field, factors))
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {} + {}w]", self.a, self.b, self.c)
    }
}

/// A prime ideal of `O_K`, identified by the rational prime below it and,
/// for split primes, the root `r` of the minimal polynomial of `w` with
/// `P = (p, w - r)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeIdeal {
    p: u64,
    splitting: SplittingType,
    root: Option<u64>,
}

impl PrimeIdeal {
    /// The prime above `p` selected by `root`. For split `p` a missing root
    /// selects the smaller one.
    pub fn new(field: &QuadraticField, p: u64, root: Option<u64>) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let splitting = field.splitting_type(p);
        let roots = field.omega_roots_mod(p);
        let root = match (splitting, root) {
            (SplittingType::Split, None) => Some(roots[0]),
            (SplittingType::Split, Some(r)) if roots.contains(&r) => Some(r),
            (SplittingType::Ramified, Some(r)) if roots.contains(&r) => None,
            (_, None) => None,
            (_, Some(r)) => return Err(Error::NotARoot { p, r }),
        };
        Ok(PrimeIdeal { p, splitting, root })
    }

    /// All primes above `p`, ordered by root.
    pub fn above(field: &QuadraticField, p: u64) -> Vec<PrimeIdeal> {
        let splitting = field.splitting_type(p);
        match splitting {
            SplittingType::Split => field
                .omega_roots_mod(p)
                .into_iter()
                .map(|r| PrimeIdeal {
                    p,
                    splitting,
                    root: Some(r),
                })
                .collect(),
            _ => vec![PrimeIdeal {
                p,
                splitting,
                root: None,
            }],
        }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn splitting(&self) -> SplittingType {
        self.splitting
    }

    pub fn root(&self) -> Option<u64> {
        self.root
    }

    pub fn residue_degree(&self) -> u32 {
        self.splitting.residue_degree()
    }

    pub fn norm(&self) -> u64 {
        self.p.pow(self.residue_degree())
    }

    pub fn conjugate(&self, field: &QuadraticField) -> PrimeIdeal {
        match self.root {
            Some(r) => {
                let (t, _) = field.omega_poly();
                let other = (t - r as i64).rem_euclid(self.p as i64) as u64;
                PrimeIdeal {
                    root: Some(other),
                    ..*self
                }
            }
            None => *self,
        }
    }

    pub fn to_ideal(&self, field: QuadraticField) -> Ideal {
        let p = self.p as i64;
        let (a, b, c) = match self.splitting {
            SplittingType::Inert => (p, 0, p),
            SplittingType::Split => (p, (-(self.root.unwrap() as i64)).rem_euclid(p), 1),
            SplittingType::Ramified => {
                let r = field.omega_roots_mod(self.p)[0] as i64;
                (p, (-r).rem_euclid(p), 1)
            }
        };
        Ideal { field, a, b, c }
    }
}

impl fmt::Display for PrimeIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.root {
            Some(r) => write!(f, "P({},{})", self.p, r),
            None => write!(f, "P({})", self.p),
        }
    }
}

impl PartialOrd for PrimeIdeal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for PrimeIdeal {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.p, self.root).cmp(&(other.p, other.root))
    }
}

/// Prime factorization `P1^e1 * ... * Pt^et`, sorted by `(p, root)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FactoredIdeal {
    field: QuadraticField,
    factors: Vec<(PrimeIdeal, u32)>,
}

impl FactoredIdeal {
    /// Merges repeated primes and drops zero exponents.
    pub fn new(field: QuadraticField, factors: Vec<(PrimeIdeal, u32)>) -> Self {
        let mut merged: Vec<(PrimeIdeal, u32)> = Vec::with_capacity(factors.len());
        let mut sorted = factors;
        sorted.sort_by_key(|(p, _)| *p);
        for (p, e) in sorted {
            match merged.last_mut() {
                Some((q, f)) if *q == p => *f += e,
                _ if e > 0 => merged.push((p, e)),
                _ => {}
            }
        }
        FactoredIdeal {
            field,
            factors: merged,
        }
    }

    pub fn unit(field: QuadraticField) -> Self {
        FactoredIdeal {
            field,
            factors: Vec::new(),
        }
    }

    pub fn prime_power(field: QuadraticField, prime: PrimeIdeal, e: u32) -> Self {
        Self::new(field, vec![(prime, e)])
    }

    pub fn field(&self) -> &QuadraticField {
        &self.field
    }

    pub fn factors(&self) -> &[(PrimeIdeal, u32)] {
        &self.factors
    }

    pub fn is_unit(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn norm(&self) -> u64 {
        self.factors.iter().map(|(p, e)| p.norm().pow(*e)).product()
    }

    pub fn has_ramified_factor(&self) -> bool {
        self.factors
            .iter()
            .any(|(p, _)| p.splitting() == SplittingType::Ramified)
    }

    pub fn reconstruct(&self) -> Result<Ideal> {
        self.factors
            .iter()
            .try_fold(Ideal::unit(self.field), |acc, (p, e)| {
                acc.multiply(&p.to_ideal(self.field).pow(*e)?)
            })
    }
}

impl fmt::Display for FactoredIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return f.write_str("(1)");
        }
        for (i, (p, e)) in self.factors.iter().enumerate() {
            if i > 0 {
                f.write_str("*")?;
            }
            write!(f, "{p}")?;
            if *e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}
