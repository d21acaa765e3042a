//! Exact and high-precision computations on both sides of the genus-zero
//! LG/CY correspondence for Gorenstein Calabi-Yau hypersurfaces in weighted
//! projective spaces: state spaces and pairings, Koszul brane calculus and
//! Euler pairings, Gamma-class framings, hypergeometric I/H-functions,
//! Picard-Fuchs transport, and the closed-form Mellin-Barnes transformations.

pub mod bernoulli;
pub mod continuation;
pub mod branes;
pub mod cycmat;
pub mod cyclotomic;
pub mod error;
pub mod gamma;
pub mod geometry;
pub mod graded;
pub mod hypergeom;
pub mod mp;
pub mod nilpotent;
pub mod rational;
pub mod ring;
pub mod state;
pub mod zlaurent;

pub use cyclotomic::Cyclotomic;
pub use error::{Error, Result};
pub use graded::GradedScalar;
pub use mp::MpComplex;
pub use nilpotent::NilpotentPoly;
pub use rational::Rational;
pub use zlaurent::ZLaurent;
