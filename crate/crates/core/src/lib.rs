//! Orbifold structure of circle quotients of Eschenburg biquotients.
//!
//! The kernel in [`lattice`] is generic over the integer scalar; everything
//! above it works on the concrete aliases below.

pub mod action;
pub mod construct;
pub mod enumerate;
pub mod error;
pub mod lattice;
pub mod perm;
pub mod render;
pub mod space;

pub use action::{ActionSpec, IsotropyProfile, SingularLocus};
pub use error::{Error, Result};
pub use perm::{Parity, Perm3};
pub use space::{CanonicalKey, Convention, DiffMatrix, FamilyTag, WeightPair};

/// Scalar for weights, actions and lattice vectors.
pub type Int = i64;
/// Intermediate width for products of two [`Int`]s.
pub type Wide = i128;
/// Exact rational coordinate.
pub type Rational = num_rational::Ratio<Int>;
