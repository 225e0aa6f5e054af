//! Exact curve-counting invariants of K3 surfaces.
//!
//! Everything here is computed with arbitrary-precision rationals over
//! truncated formal series; there is no floating point anywhere.
//!
//! Module map:
//!
//! - [`series`]: truncated Laurent series and the bivariate series ring
//! - [`arith`]: divisor sums, partitions, Bernoulli numbers, Möbius
//! - [`modular`]: Eisenstein series, normalized discriminant, `j`, `f`
//! - [`k3counts`]: Yau–Zaslow and Göttsche–Bryan–Leung series, the genus table
//! - [`singularities`]: local Euler numbers and fiber multiplicities
//! - [`combinat`]: admissible sequences and the blow-up rewriting engine
//! - [`bps`]: multiple-cover transforms, the KKV table, the MPT series
//! - [`nl_stu`]: Noether–Lefschetz numbers and the STU-model identities
//! - [`report`]: table rendering and check reports shared with the CLI
//! - [`checks`]: the named identity-check suites

pub mod arith;
pub mod bps;
pub mod checks;
pub mod combinat;
mod error;
pub mod k3counts;
pub mod modular;
pub mod nl_stu;
pub mod report;
pub mod series;
pub mod singularities;

pub use error::{Error, Result};
pub use series::{BiSeries, Rational, TruncatedSeries};

pub use num_bigint::BigInt;
