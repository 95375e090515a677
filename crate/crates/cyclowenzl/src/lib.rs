//! Cyclotomic Nazarov-Wenzl algebras at desk scale.
//!
//! Brauer diagrams, updown tableaux, admissible parameters, seminormal
//! representations, the degenerate cyclotomic Hecke algebra with its Murphy
//! basis, and a faithful matrix realization used to certify spanning sets and
//! cellular bases by rank.

pub mod combinat;
pub mod diagrams;
pub mod hecke;
pub mod numeric;
pub mod params;
pub mod rat;
pub mod seminormal;
pub mod wcell;

pub use rat::Q;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("size mismatch: {0}")]
    SizeMismatch(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("parameters not generic: {0}")]
    NotGeneric(String),
    #[error("parameter regime violated: {0}")]
    Regime(String),
    #[error("truncation exceeded: need order {needed}, have {have}")]
    Truncation { needed: usize, have: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
