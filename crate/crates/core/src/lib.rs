//! Exact computation of c-symplectic poset structures and depths of simply
//! connected spaces given by Sullivan models.

pub mod algebra;
pub mod analysis;
pub mod catalog;
pub mod cohomology;
pub mod lattice;
pub mod parse;
pub mod linalg;
pub mod error;
pub mod enumeration;
pub mod fixtures;
pub mod poset;

pub use error::{Error, Result};
