//! Batch evaluation over fields and ideals of bounded norm.

use crate::arith::{is_squarefree, primes_up_to};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::ideals::{FactoredIdeal, PrimeIdeal};
use crate::invariants::{compute_invariants, SurfaceInvariants};
use crate::quadfield::QuadraticField;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SweepConfig {
    pub dmax: u64,
    pub normmax: u64,
    /// Include products of distinct prime powers, not only prime powers.
    pub composite: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Skipped {
    pub d: u64,
    pub ideal: String,
    pub reason: String,
}

#[derive(Clone, Debug, Default)]
pub struct SweepOutput {
    pub rows: Vec<SurfaceInvariants>,
    pub skipped: Vec<Skipped>,
}

/// Prime powers `P^e` with `N(P^e) <= normmax`, ordered by `(p, root, e)`.
fn prime_powers(field: &QuadraticField, normmax: u64) -> Vec<(PrimeIdeal, u32)> {
    let mut out = Vec::new();
    for p in primes_up_to(normmax) {
        for prime in PrimeIdeal::above(field, p) {
            let mut e = 1;
            while prime.norm().checked_pow(e).is_some_and(|n| n <= normmax) {
                out.push((prime, e));
                e += 1;
            }
        }
    }
    out
}

/// All nontrivial ideals of norm at most `normmax`.
fn composite_ideals(field: &QuadraticField, normmax: u64) -> Vec<FactoredIdeal> {
    let powers = prime_powers(field, normmax);
    let mut out = Vec::new();
    // (next power to try, factors so far, their norm)
    type Partial = (usize, Vec<(PrimeIdeal, u32)>, u64);
    let mut stack: Vec<Partial> = vec![(0, Vec::new(), 1)];
    while let Some((start, factors, norm)) = stack.pop() {
        if !factors.is_empty() {
            out.push(FactoredIdeal::new(*field, factors.clone()));
        }
        for (i, &(prime, e)) in powers.iter().enumerate().skip(start) {
            if factors.iter().any(|(q, _)| *q == prime) {
                continue;
            }
            let Some(n) = norm
                .checked_mul(prime.norm().pow(e))
                .filter(|&n| n <= normmax)
            else {
                continue;
            };
            let mut next = factors.clone();
            next.push((prime, e));
            stack.push((i + 1, next, n));
        }
    }
    out
}

pub fn sweep(config: SweepConfig, exec: Execution) -> Result<SweepOutput> {
    if config.dmax == 0 || config.normmax == 0 {
        return Err(Error::Parse("sweep bounds must be positive".into()));
    }
    let mut jobs = Vec::new();
    for d in (1..=config.dmax).filter(|&d| is_squarefree(d)) {
        let field = QuadraticField::new(d)?;
        if config.composite {
            jobs.extend(
                composite_ideals(&field, config.normmax)
                    .into_iter()
                    .map(|i| (field, i)),
            );
        } else {
            jobs.extend(
                prime_powers(&field, config.normmax)
                    .into_iter()
                    .map(|(p, e)| (field, FactoredIdeal::prime_power(field, p, e))),
            );
        }
    }

    let results = exec.map(jobs, |(field, ideal)| {
        compute_invariants(&field, &ideal).map_err(|e| (field.d(), ideal.to_string(), e))
    });

    let mut out = SweepOutput::default();
    for r in results {
        match r {
            Ok(inv) => out.rows.push(inv),
            Err((d, ideal, e @ Error::Prime2NonDecomposed { .. })) => {
                log::info!("skipping d={d} {ideal}: {e}");
                out.skipped.push(Skipped {
                    d,
                    ideal,
                    reason: e.to_string(),
                });
            }
            Err((_, _, e)) => return Err(e),
        }
    }
    out.rows.sort_by(|a, b| {
        (a.field.d(), a.norm, a.ideal.to_string()).cmp(&(b.field.d(), b.norm, b.ideal.to_string()))
    });
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ideals::NeatStatus;

    #[test]
    fn prime_powers_respect_bound() {
        let k7 = QuadraticField::new(7).unwrap();
        let pp = prime_powers(&k7, 8);
        let names: Vec<String> = pp
            .iter()
            .map(|(p, e)| FactoredIdeal::prime_power(k7, *p, *e).to_string())
            .collect();
        assert_eq!(
            names,
            ["P(2,0)", "P(2,0)^2", "P(2,0)^3", "P(2,1)", "P(2,1)^2", "P(2,1)^3", "P(7)"]
        );
    }

    #[test]
    fn composite_enumeration_counts_ideals() {
        // number of ideals of norm n in Z[i] is sum_{m | n} chi_-4(m); the unit is excluded
        let k1 = QuadraticField::new(1).unwrap();
        let all = composite_ideals(&k1, 10);
        let mut counts = [0u32; 11];
        for i in &all {
            counts[i.norm() as usize] += 1;
        }
        assert_eq!(&counts[1..], &[0, 1, 0, 1, 2, 0, 0, 1, 1, 2]);
    }

    #[test]
    fn small_sweep_only_non_neat() {
        let out = sweep(
            SweepConfig {
                dmax: 3,
                normmax: 3,
                composite: false,
            },
            Execution::Sequential,
        )
        .unwrap();
        assert!(!out.rows.is_empty());
        assert!(out.rows.iter().all(|r| r.neat == NeatStatus::NotGuaranteed));
        assert!(!out.skipped.is_empty());
    }

    #[test]
    fn sequential_and_parallel_agree() {
        let cfg = SweepConfig {
            dmax: 11,
            normmax: 30,
            composite: true,
        };
        let a = sweep(cfg, Execution::Sequential).unwrap();
        let b = sweep(cfg, Execution::Parallel).unwrap();
        assert_eq!(a.rows, b.rows);
        assert_eq!(a.skipped.len(), b.skipped.len());
    }
}
