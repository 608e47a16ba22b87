//! Exact scalar and univariate-polynomial arithmetic.

pub mod poly;
pub mod scalar;
pub mod sturm;

pub use poly::UniPoly;
pub use scalar::{frac, parse_rational, rat, Conjugate, Field, GaussianRational, Rational};
pub use sturm::{
    isolate_real_roots, sturm_count, RealRoots, RootInterval, RootRange, SturmSequence,
};
