//! Exact complex, admissible and real Waring ranks of real binary forms,
//! with label enumeration for conjugation-stable decompositions.

#![allow(clippy::needless_range_loop)]

pub mod apolarity;
pub mod cli;
pub mod error;
pub mod exact;
pub mod form;
pub mod json;
pub mod linalg;
pub mod pencil;
pub mod real_rank;
pub mod sampler;
pub mod witness;

pub use error::{Error, Result};
pub use form::{BinaryForm, HomForm, RootProfile};
