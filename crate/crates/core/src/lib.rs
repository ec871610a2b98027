//! Exact computations with Steiner bundles on Grassmannians.
//!
//! A Steiner bundle on `G(k,n)` is encoded by its defining linear map
//! `phi: T* -> S* (x) V`, where `V = H^0(U^dual)` has dimension `n+1`. The
//! crate checks the fiberwise surjectivity property, enumerates jumping loci
//! over prime fields, computes tangent dimensions and Schubert-calculus rank
//! bounds, and builds the Schwarzenberger families.

pub mod chow;
pub mod cli;
pub mod error;
pub mod field;
pub mod grassmann;
pub mod groebner;
pub mod jumping;
pub mod linalg;
pub mod poly;
pub mod random;
pub mod schwarzenberger;
pub mod steiner;
pub mod suite;

pub use error::{Error, Result};
