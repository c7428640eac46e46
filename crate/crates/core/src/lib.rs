//! Exact counting of dimer coverings (perfect matchings) of fabric graphs.
//!
//! A fabric graph is a stack of bipartite strands joined by vertical edges,
//! either as an open stack (rectangular) or wrapped around a cylinder.
//! The engine counts its perfect matchings as the determinant of a product
//! of strand bi-adjacency matrices; everything is exact big-rational
//! arithmetic, with floating-point product formulas used only as
//! corroboration, never as a source of values.

#![forbid(unsafe_code)]

pub mod cylindric;
pub mod engine;
pub mod exact;
pub mod factor;
pub mod formulas;
pub mod graph;
pub mod oracle;
pub mod verify;
