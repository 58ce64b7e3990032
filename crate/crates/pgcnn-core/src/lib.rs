//! Exact-arithmetic machinery for polynomial group convolutional networks.
//!
//! The crate builds finite groups as explicit multiplication tables, filters
//! over their group algebras, and the two parametrization maps of a
//! polynomial group convolutional network (the Kronecker-form map into a
//! power-group algebra and the Hadamard-form map into homogeneous
//! polynomials). On top of those it provides exact Jacobians, rank and
//! kernel certification for the neuromanifold dimension, and fiber
//! enumeration for parameter identifiability. All arithmetic is exact:
//! arbitrary-precision rationals, word-size prime fields, and dual numbers
//! over either.

pub mod driver;
pub mod error;
pub mod fiber;
pub mod filter;
pub mod group;
pub mod identities;
pub mod jacobian;
pub mod matrix;
pub mod network;
pub mod poly;
pub mod report;
pub mod ring;
pub mod sample;

pub use error::Error;
pub use group::Group;
pub use ring::{DualRing, PrimeField, Rationals, Ring};

/// Result alias used across the crate.
pub type Result<T> = std::result::Result<T, Error>;
