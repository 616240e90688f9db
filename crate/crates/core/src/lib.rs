//! Strong parity edge-colorings: verification, canonicalization, exact search
//! at small sizes, closed-form bounds and explicit constructions.

pub mod bounds;
pub mod coloring;
pub mod constructions;
#[cfg(feature = "oracle")]
pub mod experiment;
pub mod gf2;
pub mod graph;
pub mod gray;
#[cfg(feature = "oracle")]
pub mod oracle;
pub mod solver;
