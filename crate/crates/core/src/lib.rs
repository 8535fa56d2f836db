//! Exact q-series arithmetic and the checks for the `c(n)` congruences
//! modulo powers of 5.

pub mod error;
pub mod etaq;
pub mod localring;
pub mod modeq;
pub mod poly;
pub mod scalar;
pub mod series;
pub mod specialfns;
pub mod verify;

pub use error::{Error, Result};
pub use etaq::{Cusp, EtaQuotient};
pub use localring::LocalizedElement;
pub use modeq::{ModularEquation, UEngine};
pub use verify::{CheckKind, SuiteReport, VerificationReport, VerifyConfig};

/// Truncated Laurent series over the integers.
pub type QSeries = series::Series<num_bigint::BigInt>;
/// Integer polynomial in `y`.
pub type IntPoly = poly::Poly<num_bigint::BigInt>;
