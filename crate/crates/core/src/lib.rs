//! Distance-constrained `L(k, k-1, ..., 2, 1)` labelings of the infinite
//! square grid.
//!
//! The crate builds the modular labeling `(a*x + b*y) mod c` for each reuse
//! parameter `k`, decides exactly whether it satisfies the distance
//! constraint, audits the no-hole property, compares the label count with a
//! closed-form lower bound, and solves small finite patches exactly.
//!
//! Arithmetic is generic over [`Scalar`]; the aliases below fix the common
//! instantiations.

pub mod bounds;
pub mod error;
pub mod lattice;
pub mod scalar;
pub mod scheme;
pub mod search;
pub mod verifier;

pub use error::{Error, Result};
pub use lattice::{Vertex, VertexSet};
pub use scalar::Scalar;
pub use scheme::{lambda_ub, scheme_params, Label, LabelingScheme, ParityCase, SchemeKind};

use num_bigint::BigInt;
use num_rational::Ratio;

/// Machine-word scheme; coefficients and labels are overflow checked.
pub type Scheme = LabelingScheme<i64>;
pub type WideScheme = LabelingScheme<i128>;
/// Arbitrary-precision scheme with no overflow ceiling.
pub type BigScheme = LabelingScheme<BigInt>;

pub type Rational = Ratio<i64>;
pub type BigRational = Ratio<BigInt>;

pub type Bounds = bounds::BoundsRecord<i64>;
pub type Verdict = verifier::VerificationVerdict<i64>;
