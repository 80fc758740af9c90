//! Cassels-type lattices, their simplex sets of units, and the escape of mass
//! of the associated compact diagonal orbits.

pub mod cassels;
pub mod error;
pub mod geometry;
pub mod index;
pub mod linalg;
pub mod orbit;
pub mod scalar;
pub mod simplex;

pub use error::{Error, Result};
pub use geometry::{Dimension, HyperLattice, PrecisionConfig, TraceZeroVec};
pub use scalar::{with_precision, Mpf, Real, Scalar, DEFAULT_BITS};
pub use simplex::{Perm, SimplexSet};

pub type Vec64 = TraceZeroVec<f64>;
pub type VecMp = TraceZeroVec<Mpf>;
pub type VecExact = TraceZeroVec<num_rational::BigRational>;
pub type SimplexSet64 = SimplexSet<f64>;
pub type SimplexSetMp = SimplexSet<Mpf>;
