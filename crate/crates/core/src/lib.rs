//! Exact enumeration of (0,1)-matrices that avoid 2×2 submatrix pattern
//! classes up to row and column exchange.
//!
//! The crate is organized around four layers:
//!
//! - [`exactnum`]: big integers and rationals plus memoized combinatorial
//!   number families (factorials, binomials, Stirling numbers of the second
//!   kind, Bernoulli and poly-Bernoulli numbers).
//! - [`patterns`]: the seven 2×2 pattern classes, bit-packed matrices,
//!   containment tests and the exhaustive counting oracle.
//! - [`formulas`]: closed-form and piecewise counts `φ(k, n; α)`.
//! - [`series`]: truncated formal power series over exact rationals and the
//!   exponential generating functions of every counted family.
//!
//! ```
//! use matrixavoid::{formulas, patterns::AvoidanceSpec};
//!
//! let alpha: AvoidanceSpec = "J,O".parse().unwrap();
//! let r = formulas::phi(3, 3, &alpha).unwrap();
//! assert_eq!(r.value, 156u32.into());
//! ```

pub mod error;
pub mod exactnum;
pub mod formulas;
pub mod patterns;
pub mod series;

pub use error::{Error, Result};
pub use exactnum::{BigInt, BigRat};
pub use formulas::{phi, PhiResult, Provenance};
pub use patterns::{AvoidanceSpec, BitMatrix, PatternClass, Symbol};
