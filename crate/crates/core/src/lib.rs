//! Exact invariants of compactified Picard modular surfaces
//! `Gamma_K(a) \ B` for imaginary quadratic fields `K = Q(sqrt(-d))`.
//!
//! The pipeline is: build a [`QuadraticField`], describe an integral ideal
//! (see [`ideals::parse_ideal`]), factor it, and hand the factorization to
//! [`invariants::compute_invariants`]. Every quantity that feeds the Chern
//! numbers and cusp form dimensions is an exact rational.
//!
//! ```
//! use picard::{ideals::parse_ideal, invariants::compute_invariants, QuadraticField};
//!
//! let k = QuadraticField::new(7).unwrap();
//! let a = parse_ideal(k, "sqrtd").unwrap().factorize().unwrap();
//! let inv = compute_invariants(&k, &a).unwrap();
//! assert_eq!(inv.c2.to_string(), "48");
//! assert_eq!(inv.c1sq.to_string(), "-24");
//! ```

pub mod arith;
pub mod bernoulli;
pub mod cli;
pub mod congruence;
pub mod error;
pub mod exec;
pub mod ideals;
pub mod invariants;
pub mod oracle;
pub mod quadfield;

pub use error::{Error, Result};
pub use exec::Execution;
pub use ideals::{FactoredIdeal, Ideal, NeatStatus, PrimeIdeal};
pub use invariants::{ClassificationVerdict, SurfaceInvariants};
pub use quadfield::{QuadraticField, SplittingType};
