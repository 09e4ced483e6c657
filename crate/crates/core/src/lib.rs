//! Kakimizu complexes of prime alternating knots.
//!
//! The complex is computed from combinatorial input: a 2-bridge fraction
//! ([`twobridge`]), a special alternating Seifert graph ([`thetagraph`]), or a
//! classification record ([`pipeline`]).

pub mod complex;
pub mod error;
pub mod fibred;
pub mod pipeline;
pub mod planar;
pub mod rational;
pub mod scalar;
pub mod thetagraph;
pub mod twobridge;

pub use complex::{flag_closure, isomorphic, ComplexShape, SimplicialComplex};
pub use error::{Error, Result};
pub use rational::{evaluate_cfe, even_cfe, normalize_two_bridge, EvenCfe, Fraction};
pub use scalar::ExactInt;

/// Arbitrary-precision fraction; the default for table data.
pub type BigFraction = Fraction<num_bigint::BigInt>;
/// Fraction over machine integers, for sweeps where the values are known to be small.
pub type Fraction64 = Fraction<i64>;
pub type BigEvenCfe = EvenCfe<num_bigint::BigInt>;
pub type EvenCfe64 = EvenCfe<i64>;
