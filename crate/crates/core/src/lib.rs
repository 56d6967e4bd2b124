//! Exact toolkit for lattice polytopes: reflexive and Gorenstein polytopes,
//! Gorenstein cone duality, Cayley structures and special simplices,
//! nef-partitions, and the stringy polynomial stack (h*, g, S̃, B, E_st).
//!
//! All arithmetic is exact (`BigInt` / `BigRational`).

pub mod error;
pub mod cayley;
pub mod gorenstein;
pub mod lattice;
pub mod nef;
pub mod par;
pub mod polytope;
pub mod stringy;

pub use error::{Cap, Error, Result};
